from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domsolve.errors import ContractError, OracleCapError
from domsolve.graph import SplitPartition, build_graph, split_partition
from domsolve.oracle import (
    brute_min,
    check_solution,
    efficient_dominating_sets,
    is_minimal_vertex_cover,
    max_minimal_vertex_cover,
    min_eds_exact_cover,
    mmvc_from_ids,
    normalize_split_dominating,
)
from domsolve.problem import Status, Variant, VariantSpec

from .conftest import complete, cycle, graphs, path

SPECS = [VariantSpec(v, r) for v in Variant for r in (1, 2) if r == 1 or v is Variant.THDS]


def test_check_solution_examples() -> None:
    assert check_solution(complete(3), {0}, VariantSpec(Variant.EDS))
    assert check_solution(cycle(4), {0, 2}, VariantSpec(Variant.DS))
    assert not check_solution(cycle(4), {0, 2}, VariantSpec(Variant.EDS))
    assert not check_solution(complete(2), {0}, VariantSpec(Variant.TDS))
    assert not check_solution(complete(2), {5}, VariantSpec(Variant.DS))


def test_brute_min_examples() -> None:
    assert brute_min(complete(3), VariantSpec(Variant.DS)).size == 1
    assert brute_min(cycle(4), VariantSpec(Variant.EDS)).status is Status.INFEASIBLE
    two_k2 = build_graph(4, [(0, 1), (2, 3)])
    assert brute_min(two_k2, VariantSpec(Variant.DC)).status is Status.INFEASIBLE
    assert brute_min(path(5), VariantSpec(Variant.DS)).vertices == {0, 3}


def test_brute_min_refuses_large_graphs() -> None:
    with pytest.raises(OracleCapError):
        brute_min(build_graph(21, []), VariantSpec(Variant.DS))


def _definitional_min(G, spec):
    for size in range(G.n + 1):
        for D in combinations(range(G.n), size):
            if check_solution(G, D, spec):
                return frozenset(D)
    return None


@given(graphs(max_n=7), st.sampled_from(SPECS))
@settings(max_examples=300, deadline=None)
def test_brute_min_matches_definition(G, spec) -> None:
    want = _definitional_min(G, spec)
    got = brute_min(G, spec)
    assert got.feasible == (want is not None)
    if want is not None:
        assert got.vertices == want


@given(graphs(max_n=9))
@settings(max_examples=200, deadline=None)
def test_exact_cover_search_matches_brute_force(G) -> None:
    want = brute_min(G, VariantSpec(Variant.EDS))
    got = min_eds_exact_cover(G)
    assert got.size == want.size
    if got.feasible:
        assert check_solution(G, got.vertices, VariantSpec(Variant.EDS))


@given(graphs(max_n=8))
@settings(max_examples=200, deadline=None)
def test_eds_enumeration_is_complete(G) -> None:
    spec = VariantSpec(Variant.EDS)
    want = {
        frozenset(D)
        for size in range(G.n + 1)
        for D in combinations(range(G.n), size)
        if check_solution(G, D, spec)
    }
    found = list(efficient_dominating_sets(G))
    assert len(found) == len(set(found))
    assert set(found) == want


def test_normalize_examples() -> None:
    G = build_graph(3, [(0, 1), (0, 2), (1, 2)])
    P = SplitPartition(frozenset({0, 1}), frozenset({2}))
    ds = VariantSpec(Variant.DS)
    assert normalize_split_dominating(G, P, {2}, ds) == {0}
    assert normalize_split_dominating(G, P, {1}, ds) == {1}
    with pytest.raises(ContractError):
        normalize_split_dominating(G, P, set(), ds)
    pendant = build_graph(3, [(0, 1), (0, 2)])
    with pytest.raises(ContractError):
        normalize_split_dominating(pendant, P, {2}, ds)


@st.composite
def connected_split(draw):
    c = draw(st.integers(1, 5))
    i = draw(st.integers(0, 5))
    edges = [(a, b) for a in range(c) for b in range(a + 1, c)]
    for u in range(c, c + i):
        nbrs = draw(st.lists(st.integers(0, c - 1), min_size=1, max_size=c, unique=True))
        edges += [(a, u) for a in nbrs]
    return build_graph(c + i, edges)


@given(connected_split(), st.sampled_from([Variant.DS, Variant.DC, Variant.TDS]))
@settings(max_examples=150, deadline=None)
def test_normalized_sets_stay_valid_and_small(G, variant) -> None:
    spec = VariantSpec(variant)
    P = split_partition(G, ())
    if variant is Variant.TDS and len(P.clique_side) < 2:
        return
    for size in range(1, G.n + 1):
        for D in combinations(range(G.n), size):
            if not check_solution(G, D, spec) or (variant is Variant.TDS and size < 2):
                continue
            out = normalize_split_dominating(G, P, D, spec)
            assert out <= P.clique_side
            assert check_solution(G, out, spec)
            assert len(out) <= len(D)


def test_mmvc_examples() -> None:
    P3 = path(3)
    assert mmvc_from_ids(P3, {1}) == {0, 2}
    assert check_solution(P3, {0, 2}, VariantSpec(Variant.IDS))
    assert max_minimal_vertex_cover(P3) == {0, 2}
    assert brute_min(P3, VariantSpec(Variant.IDS)).size == 3 - 2
    assert mmvc_from_ids(P3, {1}, "backward") == {0, 2}
    with pytest.raises(ContractError):
        mmvc_from_ids(P3, {0, 1, 2})


@given(graphs(max_n=7))
@settings(max_examples=150, deadline=None)
def test_minimal_cover_complements_are_ids(G) -> None:
    for size in range(G.n + 1):
        for T in combinations(range(G.n), size):
            if is_minimal_vertex_cover(G, T):
                assert check_solution(G, mmvc_from_ids(G, T), VariantSpec(Variant.IDS))
