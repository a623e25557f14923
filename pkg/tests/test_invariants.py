import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchpoly.exceptions import CapacityError, DomainError
from branchpoly.geometry import WeightedGraph
from branchpoly.invariants import (
    gamma_product,
    interval_graph,
    mu,
    mu_bipartite,
    mu_kpartite,
    mu_safe_trees,
    mu_subgraph_sum,
    spanning_trees,
    tutte_eval,
    tutte_mu,
    tutte_polynomial,
)

BOWTIE = WeightedGraph.from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])


def connected_graphs(n):
    """Every connected labelled graph on 1..n."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1, 1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        if len(edges) < n - 1:
            continue
        g = WeightedGraph.from_edges(n, edges)
        if g.is_connected():
            yield g


def random_graph(rng, n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    while True:
        edges = [p for p in pairs if rng.random() < 0.55]
        g = WeightedGraph.from_edges(n, edges) if edges else None
        if g is not None and g.is_connected():
            return g


# -- examples ---------------------------------------------------------------


def test_tree_has_mu_one():
    g = WeightedGraph.from_edges(5, [(1, 2), (2, 3), (2, 4), (4, 5)])
    assert mu_safe_trees(g).value == 1
    assert tutte_mu(g).value == 1
    assert mu_subgraph_sum(g).value == 1


def test_cycle_and_complete_examples():
    assert mu_safe_trees(WeightedGraph.cycle(4)).value == 3
    assert mu_safe_trees(WeightedGraph.complete(4)).value == 6
    assert tutte_mu(WeightedGraph.complete(3)).value == 2
    assert tutte_mu(WeightedGraph.cycle(5)).value == 4
    assert tutte_mu(BOWTIE).value == 4


@pytest.mark.parametrize(
    "graph, signed",
    [(WeightedGraph.complete(2), -1), (WeightedGraph.complete(3), 2), (WeightedGraph.cycle(4), -3)],
)
def test_subgraph_sum_signs(graph, signed):
    r = mu_subgraph_sum(graph)
    assert r.signed_sum == signed
    assert r.value == abs(signed)
    assert r.method == "subgraph-sum"


def test_tutte_point_is_zero_external_activity():
    # on a cycle the two candidate points differ: T(1,0) = n - 1, T(0,1) = 1
    poly = tutte_polynomial(WeightedGraph.cycle(5))
    assert tutte_eval(poly, 1, 0) == 4
    assert tutte_eval(poly, 0, 1) == 1
    assert tutte_eval(poly, 1, 1) == len(spanning_trees(WeightedGraph.cycle(5)))


def test_bipartite_examples():
    assert mu_bipartite(1, 1) == 1
    assert mu_bipartite(2, 2) == 3
    assert mu_bipartite(2, 1) == 1


def test_kpartite_examples():
    assert mu_kpartite((1, 1)) == 1
    assert mu_kpartite((2, 2)) == 3
    assert mu_kpartite((1, 1, 1)) == 2


def test_gamma_product_examples():
    assert gamma_product((0, 0.2, 0.5)) == 2
    assert gamma_product((0, 0.9, 1.8)) == 1
    # 1.2 sees 0.5 only; 1.4 sees 0.5 and 1.2
    xs = (0, 0.5, 1.2, 1.4)
    assert gamma_product(xs) == 2
    assert mu_safe_trees(interval_graph(xs)).value == 2


def test_interval_graph_examples():
    g = interval_graph((0, 0.6))
    assert g.edges == [(1, 2)] and g.length(1, 2) == pytest.approx(0.8)
    g = interval_graph((0, 1.0))
    assert g.edges == [(1, 2)] and g.length(1, 2) == 0.0
    assert interval_graph((0, 0.7, 1.5)).edges == [(1, 2), (2, 3)]


def test_interval_graph_beta_scaling():
    g = interval_graph((0, 0.6), beta=4.0)
    assert g.length(1, 2) == pytest.approx(0.4)
    assert g.beta_of(1, 2) == 4.0


def test_errors():
    disconnected = WeightedGraph.from_edges(4, [(1, 2), (3, 4)])
    with pytest.raises(DomainError):
        mu_safe_trees(disconnected)
    with pytest.raises(DomainError):
        tutte_mu(disconnected)
    with pytest.raises(CapacityError):
        mu_subgraph_sum(WeightedGraph.complete(8))
    with pytest.raises(DomainError):
        gamma_product((0, 1.5))
    with pytest.raises(DomainError):
        gamma_product((0.1, 0.5))
    with pytest.raises(DomainError):
        gamma_product((0, 0.5, 0.2))
    with pytest.raises(DomainError):
        interval_graph((0, 0.5, 0.5))


# -- identities -------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_graphs(n):
    assert mu(WeightedGraph.complete(n)) == math.factorial(n - 1)
    assert tutte_mu(WeightedGraph.complete(n)).value == math.factorial(n - 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_graph_signed_sum(n):
    assert mu_subgraph_sum(WeightedGraph.complete(n)).signed_sum == (-1) ** (n - 1) * math.factorial(n - 1)


@pytest.mark.parametrize("m", range(3, 11))
def test_cycles(m):
    assert mu_safe_trees(WeightedGraph.cycle(m)).value == m - 1
    assert tutte_mu(WeightedGraph.cycle(m)).value == m - 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_exhaustive_catalog(n):
    for g in connected_graphs(n):
        a = mu_safe_trees(g).value
        assert a == mu_subgraph_sum(g).value == tutte_mu(g).value == mu(g), g.edges


def test_random_graphs_and_edge_orders():
    rng = np.random.default_rng(11)
    for _ in range(100):
        g = random_graph(rng, int(rng.integers(2, 7)))
        a = mu_safe_trees(g).value
        assert a == mu_subgraph_sum(g).value == tutte_mu(g).value == mu(g)
        for _ in range(10):
            order = list(g.edges)
            rng.shuffle(order)
            assert mu_safe_trees(g, order).value == a


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 8) for n in range(1, 8) if m + n <= 8])
def test_bipartite_matches_safe_trees(m, n):
    assert mu_bipartite(m, n) == mu_safe_trees(WeightedGraph.complete_multipartite([m, n])).value


@pytest.mark.parametrize("sizes", [(2, 1, 1), (2, 2, 1), (3, 1, 1), (2, 2, 2), (1, 1, 1, 1)])
def test_kpartite_matches_mu(sizes):
    assert mu_kpartite(sizes) == mu(WeightedGraph.complete_multipartite(sizes))


def test_kpartite_two_parts_is_bipartite():
    for m in range(1, 5):
        for n in range(1, 5):
            assert mu_kpartite((m, n)) == mu_bipartite(m, n)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**31))
def test_gamma_product_equals_safe_trees(n, seed):
    rng = np.random.default_rng(seed)
    xs = np.concatenate([[0.0], np.cumsum(rng.uniform(0.02, 1.0, size=n - 1))])
    g = gamma_product(xs)
    assert g == mu_safe_trees(interval_graph(xs)).value
    assert 1 <= g <= math.factorial(n - 1)


def test_gamma_product_extremes():
    assert gamma_product((0, 0.1, 0.3, 0.9)) == math.factorial(3)
    assert gamma_product((0, 0.6, 1.2, 1.8, 2.4)) == 1
