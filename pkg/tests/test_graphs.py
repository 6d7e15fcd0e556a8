import json

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from reflecto.catalog import ENTRIES
from reflecto.complexity import FactorSet, PrefixBudget, factor_set, profile
from reflecto.errors import GraphStructureError
from reflecto.graphs import (
    LambdaGraph, RauzyGraph, ReflectionRauzyGraph, build_gamma, build_k, build_lambda, export_dot,
    graphs_from_prefix, is_connected,
)
from reflecto.seqgen import prefix
from reflecto.words import word


def _nx(g):
    m = nx.MultiDiGraph()
    m.add_nodes_from(g.vertices)
    m.add_edges_from((a, b) for a, b, _ in g.edges)
    return m


@pytest.mark.parametrize("name", ["thue_morse", "fibonacci", "baum_sweet", "period_doubling", "chacon", "t3"])
def test_counts_and_connectivity(name):
    spec = ENTRIES[name].spec
    prof = profile(spec, PrefixBudget(4096), 16)
    p = prefix(spec, 4096)
    for n in range(15):
        gamma, lam, k = graphs_from_prefix(p, n)
        assert (len(gamma.vertices), len(gamma.edges)) == (prof.rho[n], prof.rho[n + 1])
        assert (len(lam.vertices), len(lam.edges)) == (prof.r[n], prof.rho[n + 1])
        assert (len(k.vertices), len(k.edges)) == (prof.r[n], prof.r[n + 1])
        for g in (gamma, lam, k):
            assert is_connected(g) == nx.is_weakly_connected(_nx(g))
            assert is_connected(g)


def test_fibonacci_k5():
    _, _, k = graphs_from_prefix(prefix(ENTRIES["fibonacci"].spec, 4096), 5)
    assert len(k.vertices) == 4
    dot = export_dot(k)
    assert dot.startswith("digraph k_5 {")
    assert dot.count(";") == len(k.vertices) + len(k.edges)


@given(st.lists(st.integers(0, 2), min_size=2, max_size=40).map(bytes), st.integers(0, 6))
def test_connectivity_matches_networkx(p, n):
    n = min(n, len(p) - 1)
    for g in graphs_from_prefix(p, n):
        assert is_connected(g) == nx.is_weakly_connected(_nx(g))


def test_disconnected_graph_detected():
    # factors of two unrelated words
    fs0 = FactorSet(1, frozenset({word("0"), word("1")}))
    fs1 = FactorSet(2, frozenset({word("00"), word("11")}))
    g = build_gamma(fs0, fs1)
    assert not is_connected(g)
    assert not nx.is_weakly_connected(_nx(g))


def test_missing_endpoint():
    fs0 = FactorSet(1, frozenset({word("0")}))
    fs1 = FactorSet(2, frozenset({word("01")}))
    with pytest.raises(GraphStructureError):
        build_gamma(fs0, fs1)
    with pytest.raises(ValueError):
        build_gamma(fs0, FactorSet(3, frozenset()))


def test_reflected_pair_must_be_antiparallel():
    # 001 and 100 both present but drawn between the same ordered pair of classes
    lam = LambdaGraph(2, (word("00"), word("01")), (
        (word("00"), word("01"), word("001")),
        (word("00"), word("01"), word("100")),
    ))
    with pytest.raises(GraphStructureError):
        build_k(lam)


def test_empty_graph_connectivity_undefined():
    with pytest.raises(ValueError):
        is_connected(RauzyGraph(0, (), ()))


def test_json_round_trip_and_determinism():
    p = prefix(ENTRIES["thue_morse"].spec, 2048)
    for g in graphs_from_prefix(p, 4):
        back = type(g).from_json(json.loads(g.dumps()))
        assert back == g
        assert export_dot(back) == export_dot(g)
    a = graphs_from_prefix(p, 6)[2]
    b = build_k(build_lambda(build_gamma(factor_set(p, 6), factor_set(p, 7))))
    assert isinstance(b, ReflectionRauzyGraph)
    assert export_dot(a) == export_dot(b)
