import json
import math

import numpy as np
import pytest

from branchpoly.exceptions import DomainError
from branchpoly.geometry import WeightedGraph
from branchpoly.verification import (
    TrialReport,
    acceptance_report,
    chi2_uniform,
    diameter_scaling,
    enumerate_spanning_trees,
    ks_two_sample,
    loglog_slope,
    radius_of_gyration,
    rejection_sample_2d,
    rejection_sample_gpolymer,
    run_batches,
    type_volume_check,
    walk_return_closed_form_n2,
    walk_return_probability,
)


def test_trial_report_arithmetic():
    r = TrialReport("x", 100, 25, 0.25)
    assert r.estimate == 0.25
    assert r.z == 0.0 and r.passed()
    assert TrialReport("x", 100, 60, 0.25).passed() is False
    m = r.merge(TrialReport("x", 300, 75, 0.25))
    assert (m.trials, m.successes) == (400, 100)
    d = json.loads(r.to_json())
    assert d["name"] == "x" and d["successes"] == 25
    assert TrialReport("y", 10, 3).z is None


def test_run_batches_is_deterministic(monkeypatch):
    f = lambda k, rng: TrialReport("coin", k, int((rng.random(k) < 0.5).sum()), 0.5)
    monkeypatch.setenv("POLYMER_THREADS", "1")
    a = run_batches(f, 10_000, seed=3, chunk=1000)
    monkeypatch.setenv("POLYMER_THREADS", "4")
    b = run_batches(f, 10_000, seed=3, chunk=1000)
    assert a.successes == b.successes and a.trials == 10_000


def test_spanning_tree_enumeration():
    assert len(enumerate_spanning_trees([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])) == 16
    assert len(enumerate_spanning_trees([1, 2, 3, 4], WeightedGraph.cycle(4).edges)) == 4
    assert enumerate_spanning_trees([1, 2, 3], [(1, 2)]) == []


def test_walk_closed_form_and_estimate():
    assert walk_return_closed_form_n2() == pytest.approx(1 / 3)
    r = walk_return_probability(2, 200_000, rng=1)
    assert r.target == pytest.approx(walk_return_closed_form_n2())
    assert abs(r.estimate - 1 / 3) < 4 * r.stderr
    with pytest.raises(DomainError):
        walk_return_probability(1, 10)


def test_ks_examples():
    a = np.linspace(0, 1, 1000)
    assert ks_two_sample(a, a).statistic == 0.0
    assert ks_two_sample(a, a + 2).statistic == 1.0
    with pytest.raises(DomainError):
        ks_two_sample([], [1.0])


def test_chi2_uniform():
    stat, p = chi2_uniform(["a"] * 50 + ["b"] * 50, ["a", "b"])
    assert stat == 0.0 and p == pytest.approx(1.0)


def test_radius_of_gyration():
    P = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert radius_of_gyration(P) == pytest.approx(1.0)
    assert radius_of_gyration(np.stack([P, 2 * P])).tolist() == pytest.approx([1.0, 2.0])


def test_loglog_slope_recovers_power():
    ns = [10, 20, 40, 80]
    slope, _ = loglog_slope(ns, [3 * k**0.5 for k in ns])
    assert slope == pytest.approx(0.5)
    assert loglog_slope(ns, [7.0] * 4)[0] == pytest.approx(0.0, abs=1e-12)


def test_diameter_scaling_small():
    fit = diameter_scaling([20, 40, 80], 200, rng=2)
    assert 0.3 < fit.slope < 0.7
    assert fit.means == sorted(fit.means)
    with pytest.raises(DomainError):
        diameter_scaling([10, 5, 20], 10)


def test_type_volume_examples():
    assert type_volume_check((0, 0.3, 0.6, 0.9)).gamma == 6
    assert type_volume_check((0, 0.8, 1.6, 2.4)).gamma == 1
    r = type_volume_check((0, 0.5, 1.2, 1.4))
    assert r.gamma == r.safe_trees == 2 and r.consistent
    r = type_volume_check((0, 0.4, 0.9), trials=200_000, rng=3)
    assert r.consistent and r.spanning_trees == 3


def test_rejection_oracles():
    b = rejection_sample_2d(3, trials=100_000, rng=4)
    assert b.positions.shape[1:] == (3, 2)
    assert b.report.passed()
    assert b.report.target == pytest.approx(2 / 3)
    g = rejection_sample_gpolymer(WeightedGraph.cycle(4), 100_000, rng=5)
    assert g.report.target == pytest.approx(3 / 4)
    assert g.report.passed()
    with pytest.raises(DomainError):
        rejection_sample_2d(8)


def test_acceptance_report_merges_chunks():
    r = acceptance_report("3d", 200_000, seed=6, n=3)
    assert r.trials == 200_000 and r.target == pytest.approx(3 / 4)
    assert r.passed()
    with pytest.raises(DomainError):
        acceptance_report("4d", 10)
