from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domsolve.cover_dp import solve_scp
from domsolve.cvd import (
    eds_guess_preprocess,
    guesses,
    reduce_ds_to_scp,
    solve_dc_cvd,
    solve_ds_cvd,
    solve_eds_cvd,
    solve_ids_cvd,
    solve_thds_cvd,
)
from domsolve.graph import build_graph
from domsolve.instances import gen_planted
from domsolve.modulator import Kind, Modulator
from domsolve.oracle import brute_min, check_solution
from domsolve.problem import DomInstance, Status, Variant

from .conftest import complete, cycle, path

SOLVERS = {
    "ds": solve_ds_cvd,
    "eds": solve_eds_cvd,
    "ids": solve_ids_cvd,
    "dc": solve_dc_cvd,
    "tds": solve_thds_cvd,
    "thds": solve_thds_cvd,
}


def _inst(G, S, variant: str, budget=None, r: int = 1) -> DomInstance:
    return DomInstance(G, Modulator(Kind.CVD, S), variant, budget, r)


def test_guess_order() -> None:
    order = [sorted(g) for g in guesses(frozenset({7, 3, 5}))]
    assert order == [[], [3], [5], [7], [3, 5], [3, 7], [5, 7], [3, 5, 7]]


def test_reduce_ds_to_scp_uncoverable_modulator_vertex() -> None:
    G = build_graph(3, [(0, 1)])
    cover = reduce_ds_to_scp(G, frozenset({2}), frozenset())
    assert cover.universe_size == 1
    assert cover.family == (frozenset(), frozenset())
    assert cover.block_req == (1,)
    assert solve_scp(cover).status is Status.INFEASIBLE


def test_ds_examples() -> None:
    assert solve_ds_cvd(_inst(complete(3), (), "ds", 1)).size == 1
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    sol = solve_ds_cvd(_inst(star, {0}, "ds", 1))
    assert sol.vertices == {0}


def test_eds_preprocess_examples() -> None:
    two = build_graph(3, [(0, 1), (1, 2)])
    assert eds_guess_preprocess(two, frozenset({0, 1}), frozenset({0, 1})) is None
    assert eds_guess_preprocess(cycle(4), frozenset({0, 2}), frozenset({0, 2})) is None
    assert eds_guess_preprocess(path(4), frozenset({1}), frozenset({1})) is None
    res = eds_guess_preprocess(path(4), frozenset({1}), frozenset())
    assert res.universe == (1,) and res.blocks == ((0,), (2, 3))


def test_eds_examples() -> None:
    # one deleted vertex leaves a P3, so the smallest cluster modulators have two
    for S in ({0, 1}, {0, 2}, {1, 2}):
        assert solve_eds_cvd(_inst(cycle(4), S, "eds", 4)).status is Status.INFEASIBLE
    assert solve_eds_cvd(_inst(complete(3), (), "eds")).size == 1


def test_ids_examples() -> None:
    assert solve_ids_cvd(_inst(path(3), {1}, "ids", 1)).vertices == {1}


def test_dc_examples() -> None:
    two_k2 = build_graph(4, [(0, 1), (2, 3)])
    assert solve_dc_cvd(_inst(two_k2, (), "dc")).status is Status.INFEASIBLE
    assert solve_dc_cvd(_inst(complete(3), (), "dc")).size == 1


def test_thds_examples() -> None:
    assert solve_thds_cvd(_inst(complete(3), (), "thds", 2, r=1)).size == 2
    assert solve_thds_cvd(_inst(complete(2), (), "thds", r=2)).status is Status.INFEASIBLE
    assert solve_thds_cvd(_inst(complete(3), (), "tds")).size == 2


def test_budget_turns_optimum_into_decision() -> None:
    G = build_graph(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert solve_ds_cvd(_inst(G, (), "ds", 2)).size == 2
    sol = solve_ds_cvd(_inst(G, (), "ds", 1))
    assert sol.status is Status.INFEASIBLE
    assert sol.counters["over_budget_optimum"] == 2


def test_wrong_modulator_kind_is_rejected() -> None:
    inst = DomInstance(path(3), Modulator(Kind.SVD, {1}), "ds")
    with pytest.raises(ValueError):
        solve_ds_cvd(inst)


# Optimum sizes computed once with brute_min on these planted instances.
FROZEN = {
    ("ds", 0.4, (3, 2, 2), 2): [3, 3, 3, 3, 2, 3],
    ("eds", 0.4, (3, 2, 2), 2): [3, 3, 3, 3, 2, 3],
    ("ids", 0.4, (3, 2, 2), 2): [3, 3, 3, 3, 2, 3],
    ("tds", 0.4, (3, 2, 2), 2): [6, 4, 4, 5, 4, 4],
    ("thds", 0.4, (3, 2, 2), 2): [None, None, 8, None, 6, None],
    ("dc", 0.8, (3, 2), 1): [2, 2, 2, 1, 2, 2],
}


@pytest.mark.parametrize("key", sorted(FROZEN), ids=lambda k: k[0])
def test_frozen_optima(key) -> None:
    variant, p, params, r = key
    for seed, want in enumerate(FROZEN[key]):
        inst = gen_planted(seed, "cvd", list(params), 3, p=p, variant=variant, r=r)
        sol = SOLVERS[variant](inst)
        assert sol.size == want
        if sol.feasible:
            assert check_solution(inst.graph, sol.vertices, inst.spec)
            assert sol.guess_used == sol.vertices & inst.S


@given(
    st.integers(0, 10**9),
    st.sampled_from(sorted(SOLVERS)),
    st.lists(st.integers(1, 4), min_size=1, max_size=3),
    st.integers(0, 4),
    st.floats(0.2, 0.8),
    st.integers(1, 2),
)
@settings(max_examples=200, deadline=None)
def test_solvers_match_brute_force(seed, variant, params, k, p, r) -> None:
    inst = gen_planted(seed, "cvd", params, k, p=p, variant=variant, r=r)
    sol = SOLVERS[variant](inst)
    want = brute_min(inst.graph, inst.spec)
    assert sol.status is want.status and sol.size == want.size


def test_vertex_cover_modulator_is_accepted() -> None:
    inst = DomInstance(path(4), Modulator(Kind.VC, {1, 2}), "ds")
    assert solve_ds_cvd(inst).size == 2


def test_formal_block_rule_never_undershoots() -> None:
    worse = 0
    for seed in range(60):
        inst = gen_planted(seed, "cvd", [3, 2, 2], 3, p=0.5, variant="tds")
        exact, formal = solve_thds_cvd(inst), solve_thds_cvd(inst, block_rule="formal")
        assert exact.size == brute_min(inst.graph, inst.spec).size
        if formal.feasible:
            assert check_solution(inst.graph, formal.vertices, inst.spec)
            assert formal.size >= exact.size
        worse += formal.size != exact.size
    print(f"formal block rule differs from the optimum on {worse}/60 instances")
