import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchpoly.exceptions import StructureError
from branchpoly.geometry import (
    GAP_TOL,
    RootedTree,
    WeightedGraph,
    constraint_gaps,
    edge_key,
    forward_positions,
    gap_tolerance,
    reroot_and_orient,
    tree_from_edges,
)


def test_single_edge_axis_aligned():
    pos = forward_positions(RootedTree(1, {2: 1}), {2: 0.0}, {(1, 2): (2.0, 0.0)}, t=0.3)
    assert np.allclose(pos[2], (2, 0))
    assert np.allclose(pos[1], (0, 0))


def test_collinear_chain():
    tree = RootedTree(1, {2: 1, 3: 2})
    pos = forward_positions(tree, {2: math.pi / 2, 3: math.pi / 2}, {(1, 2): (2.0, 0.0), (2, 3): (2.0, 0.0)})
    assert np.allclose(pos[3], (0, 4))


def test_linear_growth():
    pos = forward_positions(RootedTree(1, {2: 1}), {2: 0.0}, {(1, 2): (1.0, 1.0)}, t=0.5)
    assert np.allclose(pos[2], (1.5, 0))


def test_missing_angle_or_length():
    tree = RootedTree(1, {2: 1})
    with pytest.raises(StructureError):
        forward_positions(tree, {}, {(1, 2): (1.0, 0.0)})
    with pytest.raises(StructureError):
        forward_positions(tree, {2: 0.0}, {})


@pytest.mark.parametrize("x, gap", [(2.0, 0.0), (3.0, 1.0), (1.0, -1.0)])
def test_unit_disk_gaps(x, gap):
    g = WeightedGraph.disks([1.0, 1.0])
    out = constraint_gaps({1: (0, 0), 2: (x, 0)}, g)
    assert out[(1, 2)] == pytest.approx(gap)


def test_required_scale():
    g = WeightedGraph.disks([1.0, 1.0])
    assert constraint_gaps({1: (0, 0), 2: (3, 0)}, g, {(1, 2): 0.5})[(1, 2)] == pytest.approx(2.0)


def test_reroot_reads_angles_from_positions():
    tree, ang = reroot_and_orient([(1, 2)], 1, positions={1: (0, 0), 2: (0, 2)})
    assert tree.parent == {2: 1}
    assert ang[2] == pytest.approx(math.pi / 2)


def test_reroot_path():
    tree, _ = reroot_and_orient([(1, 2), (2, 3)], 1, positions={1: (0, 0), 2: (1, 0), 3: (2, 0)})
    assert tree.parent == {2: 1, 3: 2}


def test_reroot_star_at_leaf_flips_one_edge():
    angles = {(1, 2): 0.3, (1, 3): 2.0, (1, 4): 4.0}
    tree, ang = reroot_and_orient([(1, 2), (1, 3), (1, 4)], 2, directed_angles=angles)
    assert tree.parent == {1: 2, 3: 1, 4: 1}
    assert ang[1] == pytest.approx(0.3 + math.pi)
    assert ang[3] == pytest.approx(2.0)
    assert ang[4] == pytest.approx(4.0)


def test_reroot_rejects_cycles_and_gaps():
    with pytest.raises(StructureError):
        reroot_and_orient([(1, 2), (2, 3), (1, 3)], 1, positions={1: (0, 0), 2: (1, 0), 3: (0, 1)})
    with pytest.raises(StructureError):
        tree_from_edges([(1, 2), (3, 4)], 1)


def test_tree_and_graph_validation():
    with pytest.raises(StructureError):
        RootedTree(1, {2: 3, 3: 2})
    with pytest.raises(StructureError):
        edge_key(2, 2)
    with pytest.raises(StructureError):
        WeightedGraph((1, 2), {(1, 2): -1.0})
    with pytest.raises(StructureError):
        WeightedGraph((1, 2), {(1, 3): 1.0})


def _random_tree(n, rng):
    return RootedTree(1, {v: int(rng.integers(1, v)) for v in range(2, n + 1)})


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**31))
def test_positions_are_root_path_sums(n, seed):
    rng = np.random.default_rng(seed)
    tree = _random_tree(n, rng)
    angles = {v: rng.uniform(0, 2 * math.pi) for v in tree.parent}
    lengths = {edge_key(v, p): (rng.uniform(0.1, 2), 0.0) for v, p in tree.parent.items()}
    pos = forward_positions(tree, angles, lengths)
    for v in tree.parent:
        path = tree.path_to_root(v)
        total = np.zeros(2)
        for a in path[:-1]:
            L = lengths[edge_key(a, tree.parent[a])][0]
            total += L * np.array([math.cos(angles[a]), math.sin(angles[a])])
        assert np.allclose(pos[v], total, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**31))
def test_reroot_reproduces_positions(n, seed):
    rng = np.random.default_rng(seed)
    tree = _random_tree(n, rng)
    angles = {v: rng.uniform(0, 2 * math.pi) for v in tree.parent}
    lengths = {edge_key(v, p): (rng.uniform(0.1, 2), 0.0) for v, p in tree.parent.items()}
    pos = forward_positions(tree, angles, lengths)
    new_root = int(rng.integers(1, n + 1))
    t2, a2 = reroot_and_orient(tree.edges(), new_root, positions=pos)
    assert t2.root == new_root
    again = forward_positions(t2, a2, lengths, origin=pos[new_root])
    for v in pos:
        assert np.allclose(again[v], pos[v], atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31))
def test_gaps_symmetric_and_rigid_invariant(seed):
    rng = np.random.default_rng(seed)
    g = WeightedGraph.disks(rng.uniform(0.2, 1.5, size=5))
    pos = {v: rng.normal(size=2) * 3 for v in g.vertices}
    base = constraint_gaps(pos, g)
    phi = rng.uniform(0, 2 * math.pi)
    R = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    shift = rng.normal(size=2)
    moved = constraint_gaps({v: R @ p + shift for v, p in pos.items()}, g)
    swapped = {(i, j): constraint_gaps({1: pos[j], 2: pos[i]}, WeightedGraph((1, 2), {(1, 2): g.length(i, j)}))[(1, 2)] for i, j in g.edges}
    for e in g.edges:
        assert moved[e] == pytest.approx(base[e], abs=1e-9)
        assert swapped[e] == pytest.approx(base[e], abs=1e-12)


def test_gap_tolerance_scales():
    assert gap_tolerance(1.0) == pytest.approx(GAP_TOL, rel=1e-3)
    assert gap_tolerance(1e-6) < 1e-14 + 1e-13
    assert gap_tolerance(1.0, scale=1e9) >= 1e-4
