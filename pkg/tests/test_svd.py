from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domsolve import svd
from domsolve.graph import build_graph
from domsolve.instances import gen_planted
from domsolve.modulator import Kind, Modulator
from domsolve.oracle import brute_min, check_solution
from domsolve.problem import DomInstance, Status
from domsolve.svd import eds_branch_bound, solve_eds_svd_branch, solve_eds_svd_simple, solve_ids_svd

from .conftest import complete, cycle, path


def _inst(G, S, variant: str, budget=None) -> DomInstance:
    return DomInstance(G, Modulator(Kind.SVD, S), variant, budget)


def test_ids_examples() -> None:
    pendant = build_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    assert solve_ids_svd(_inst(pendant, (), "ids")).vertices == {0}
    assert solve_ids_svd(_inst(path(3), {1}, "ids")).size == 1


@pytest.mark.parametrize("solver", [solve_eds_svd_simple, solve_eds_svd_branch])
def test_eds_examples(solver) -> None:
    for s in range(4):
        assert solver(_inst(cycle(4), {s}, "eds")).status is Status.INFEASIBLE
    assert solver(_inst(build_graph(1, []), (), "eds")).size == 1
    for t in range(1, 6):
        assert solver(_inst(complete(t), (), "eds")).size == 1


def test_branch_bound_formula() -> None:
    assert eds_branch_bound(0, 3) == 4
    assert eds_branch_bound(5, 2) == 27 * 3


# brute_min optima on planted split instances (|C|=3, |I|=4, k=3, p=0.4)
FROZEN_IDS = [5, 2, 2, 3, 2, 3]
FROZEN_EDS = [5, None, None, 3, 2, None]


def test_frozen_optima() -> None:
    for seed in range(6):
        ids = gen_planted(seed, "svd", [3, 4], 3, p=0.4, variant="ids")
        assert solve_ids_svd(ids).size == FROZEN_IDS[seed]
        eds = gen_planted(seed, "svd", [3, 4], 3, p=0.4, variant="eds")
        assert solve_eds_svd_simple(eds).size == FROZEN_EDS[seed]
        assert solve_eds_svd_branch(eds).size == FROZEN_EDS[seed]


@given(
    st.integers(0, 10**9),
    st.integers(0, 4),
    st.integers(0, 6),
    st.integers(0, 5),
    st.floats(0.1, 0.8),
)
@settings(max_examples=250, deadline=None)
def test_solvers_match_brute_force(seed, c, i, k, p) -> None:
    eds = gen_planted(seed, "svd", [c, i], k, p=p, variant="eds")
    want = brute_min(eds.graph, eds.spec)
    branch = solve_eds_svd_branch(eds)
    assert solve_eds_svd_simple(eds).size == want.size
    assert branch.size == want.size
    assert branch.counters["branch_nodes"] <= branch.counters["branch_bound"]
    ids = gen_planted(seed, "svd", [c, i], k, p=p, variant="ids")
    assert solve_ids_svd(ids).size == brute_min(ids.graph, ids.spec).size


def _split_graphs(n: int):
    # every split graph is isomorphic to one whose clique side is 0..c-1
    for c in range(n + 1):
        clique = [(a, b) for a in range(c) for b in range(a + 1, c)]
        cross = [(a, b) for a in range(c) for b in range(c, n)]
        for mask in range(1 << len(cross)):
            yield build_graph(n, clique + [e for j, e in enumerate(cross) if mask >> j & 1])


def test_branch_matches_brute_force_on_all_small_split_graphs() -> None:
    count = 0
    for n in range(1, 9):
        for G in _split_graphs(n):
            inst = _inst(G, (), "eds")
            got = solve_eds_svd_branch(inst)
            assert got.size == brute_min(G, inst.spec).size
            if got.feasible:
                assert check_solution(G, got.vertices, inst.spec)
            count += 1
    assert count == sum(2 ** (c * (n - c)) for n in range(1, 9) for c in range(n + 1))


# planted instances on which the second branching rule fires
RULE2_SEEDS = [(4992, 2, 6, 5, 0.3), (15752, 2, 6, 5, 0.3)]


@pytest.mark.parametrize("seed,c,i,k,p", RULE2_SEEDS)
def test_second_branching_rule(monkeypatch, seed, c, i, k, p) -> None:
    fired = []
    original = svd._Search.rule2

    def spy(self, st):
        out = original(self, st)
        fired.append(out is not None)
        return out

    monkeypatch.setattr(svd._Search, "rule2", spy)
    inst = gen_planted(seed, "svd", [c, i], k, p=p, variant="eds")
    got = solve_eds_svd_branch(inst)
    assert any(fired)
    assert got.size == brute_min(inst.graph, inst.spec).size


def test_vertex_cover_modulator_is_accepted() -> None:
    inst = DomInstance(path(4), Modulator(Kind.VC, {1, 2}), "eds")
    assert solve_eds_svd_branch(inst).size == 2
    assert solve_eds_svd_simple(inst).size == 2
