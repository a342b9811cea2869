from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domsolve.cover_dp import (
    BlockMode,
    CoverInstance,
    CoverMode,
    cover_satisfied,
    solve_escp,
    solve_exact_one_scp,
    solve_scp,
    solve_set_cover,
    solve_wsmp,
    solve_wsmp_marked,
)
from domsolve.oracle import brute_cover
from domsolve.problem import Status

from .randgen import random_cover

SOLVERS = {
    "set_cover": solve_set_cover,
    "scp": solve_scp,
    "escp": solve_escp,
    "exact_one_scp": solve_exact_one_scp,
    "wsmp": solve_wsmp,
}


def _exactly_one(k: int, blocks, cover=CoverMode.EXACTLY_ONCE) -> CoverInstance:
    return CoverInstance.partitioned(k, blocks, block_mode=BlockMode.EXACTLY_ONE, cover_mode=cover)


def _wsmp(k: int, blocks, req, weights, r: int) -> CoverInstance:
    return CoverInstance.partitioned(
        k, blocks, block_mode=BlockMode.AT_LEAST_WEIGHT, block_req=req,
        cover_mode=CoverMode.MULTICOVER, element_weights=weights, r=r,
    )


def test_set_cover_examples() -> None:
    sol = solve_set_cover(CoverInstance(2, ({0}, {1}, {0, 1})))
    assert sol.size == 1 and sol.witness == (2,)
    assert solve_set_cover(CoverInstance(0, ())).size == 0
    assert solve_set_cover(CoverInstance(3, ({0, 1}, {1, 2}, {0, 2}))).size == 2


def test_scp_examples() -> None:
    inst = CoverInstance(2, ({0}, {1}, {0, 1}), ((0, 2), (2, 3)), block_req=(1, 0))
    sol = solve_scp(inst)
    assert sol.size == 2 and sol.witness == (0, 1)
    flat = CoverInstance(2, ({0}, {1}, {0, 1}), ((0, 2), (2, 3)), block_req=(0, 0))
    assert solve_scp(flat).size == solve_set_cover(CoverInstance(2, flat.family)).size == 1
    assert solve_scp(CoverInstance(1, (frozenset(),), block_req=(1,))).status is Status.INFEASIBLE


def test_escp_examples() -> None:
    assert solve_escp(_exactly_one(2, [[{0}], [{1}]])).size == 2
    sol = solve_escp(_exactly_one(2, [[{0}, {0, 1}], [{1}, set()]]))
    assert sol.size == 2 and sol.witness in ((0, 2), (1, 3))
    assert solve_escp(_exactly_one(1, [[{0}], [{0}]])).status is Status.INFEASIBLE


def test_exact_one_scp_examples() -> None:
    cov = CoverMode.AT_LEAST_ONCE
    sol = solve_exact_one_scp(_exactly_one(2, [[{0, 1}], [set(), {0}]], cov))
    assert sol.size == 2 and sol.witness == (0, 1)
    assert solve_exact_one_scp(_exactly_one(1, [[set()]], cov)).status is Status.INFEASIBLE
    assert solve_exact_one_scp(_exactly_one(0, [[set(), set()]], cov)).size == 1


def test_wsmp_examples() -> None:
    assert solve_wsmp(_wsmp(1, [[{0}]], (0,), (0,), 1)).size == 0
    assert solve_wsmp(_wsmp(1, [[{0}, {0}, {0}]], (0,), (2,), 2)).size == 2
    sol = solve_wsmp(_wsmp(2, [[{0}], [{1}, {0, 1}]], (1, 0), (1, 1), 1))
    assert sol.size == 2 and sol.witness == (0, 1)


def test_witnesses_are_lexicographically_smallest() -> None:
    inst = CoverInstance(2, ({0, 1}, {0}, {1}, {0, 1}))
    assert solve_set_cover(inst).witness == (0,)
    inst = CoverInstance(2, ({0}, {1}, {0}, {1}))
    assert solve_set_cover(inst).witness == (0, 1)


def test_wrong_mode_is_rejected() -> None:
    with pytest.raises(ValueError):
        solve_escp(CoverInstance(1, ({0},)))


def test_empty_flagged_block_is_infeasible() -> None:
    inst = CoverInstance(1, ({0},), ((0, 0), (0, 1)), block_req=(1, 0))
    assert solve_scp(inst).status is Status.INFEASIBLE


@pytest.mark.parametrize("mode", sorted(SOLVERS))
def test_random_instances_match_brute_force(mode: str) -> None:
    rng = random.Random(2024)
    for _ in range(150):
        inst = random_cover(rng, mode)
        got, want = SOLVERS[mode](inst), brute_cover(inst)
        assert got.status is want.status
        assert got.witness == want.witness
        if got.feasible:
            assert cover_satisfied(inst, got.witness)


@given(st.integers(0, 10**9))
@settings(max_examples=150, deadline=None)
def test_marked_wsmp_matches_brute_force(seed: int) -> None:
    rng = random.Random(seed)
    inst = random_cover(rng, "wsmp", max_u=4, max_m=9)
    marked = [rng.random() < 0.4 for _ in range(inst.m)]
    got, want = solve_wsmp_marked(inst, marked), brute_cover(inst, marked)
    assert got.status is want.status and got.witness == want.witness
    if got.feasible:
        assert cover_satisfied(inst, got.witness, marked)


@given(st.integers(0, 10**9))
@settings(max_examples=150, deadline=None)
def test_states_grow_with_universe_and_family(seed: int) -> None:
    rng = random.Random(seed)
    inst = random_cover(rng, "scp", max_u=6, max_m=8)
    sol = solve_scp(inst)
    if sol.states:
        assert sol.states == 2 * inst.m * 2**inst.universe_size
