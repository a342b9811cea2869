"""Solvers for graphs given with a split vertex deletion set S.

``G - S`` splits into a clique C and an independent set I. A solution can
use at most one vertex of C when it has to be independent or efficient,
which is what makes guessing over S enough for IDS and EDS.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Callable

from .cvd import guesses
from .errors import InvariantViolation
from .graph import SplitPartition, bits, mask_of, n_equal_2_mask, popcount, split_partition
from .modulator import Kind
from .oracle import check_solution
from .problem import DomInstance, DomSolution, Status, Variant, apply_budget


def _partition(inst: DomInstance, variant: Variant) -> SplitPartition:
    if inst.variant is not variant:
        raise ValueError(f"solver handles {variant.name}, got {inst.variant.name}")
    if inst.kind not in (Kind.SVD, Kind.VC):
        raise ValueError(f"expected a split (or vertex cover) modulator, got {inst.kind.name}")
    return split_partition(inst.graph, inst.S)


def _finish(inst: DomInstance, best: frozenset[int] | None, counters: dict) -> DomSolution:
    if best is None:
        return apply_budget(DomSolution(Status.INFEASIBLE, counters=counters), inst.budget)
    sol = DomSolution(Status.FEASIBLE, best, best & inst.S, counters)
    return apply_budget(sol, inst.budget)


def solve_ids_svd(inst: DomInstance) -> DomSolution:
    """Minimum IDS: per independent guess, at most |C| + 1 completions."""
    P = _partition(inst, Variant.IDS)
    G = inst.graph
    counters = {"guesses": 0, "candidates": 0}
    best = None
    for guess in guesses(inst.S):
        counters["guesses"] += 1
        if not G.is_independent(guess):
            continue
        touched = 0
        for v in guess:
            touched |= G.nbr_masks[v]
        free_c = [v for v in sorted(P.clique_side) if not touched >> v & 1]
        free_i = [v for v in sorted(P.independent_side) if not touched >> v & 1]
        options = [guess | set(free_i)]
        options += [guess | {v} | {u for u in free_i if not G.has_edge(u, v)} for v in free_c]
        for cand in options:
            counters["candidates"] += 1
            if check_solution(G, cand, inst.spec) and (best is None or len(cand) < len(best)):
                best = cand
    return _finish(inst, best, counters)


def solve_eds_svd_simple(inst: DomInstance) -> DomSolution:
    """Minimum EDS: per guess, try each clique choice and force the rest of I."""
    P = _partition(inst, Variant.EDS)
    G = inst.graph
    closed = G.closed_masks
    counters = {"guesses": 0, "candidates": 0}
    best = None
    for guess in guesses(inst.S):
        counters["guesses"] += 1
        dom = 0
        for v in sorted(guess):
            if closed[v] & dom:
                break
            dom |= closed[v]
        else:
            red = n_equal_2_mask(G, mask_of(guess))
            free_i = mask_of(P.independent_side) & ~dom
            choices: list[int | None] = [None]
            choices += [v for v in sorted(P.clique_side) if not (dom | red) >> v & 1]
            for v in choices:
                left, red_now = free_i, red
                picks = set(guess)
                if v is not None:
                    picks.add(v)
                    left &= ~closed[v]
                    red_now |= n_equal_2_mask(G, 1 << v)
                if left & red_now:
                    continue  # an undominated vertex of I can no longer be dominated
                picks.update(bits(left))
                counters["candidates"] += 1
                cand = frozenset(picks)
                if check_solution(G, cand, inst.spec) and (best is None or len(cand) < len(best)):
                    best = cand
    return _finish(inst, best, counters)


# ---------------------------------------------------------------------------
# branch and reduce


@dataclass(frozen=True)
class SearchState:
    """Residual vertices, red (unpickable) vertices and the partial solution.

    A vertex leaves ``residual`` once it is dominated by ``picked``. Blue
    vertices are residual vertices that are not red.
    """

    residual: int
    red: int
    picked: int

    @property
    def blue(self) -> int:
        return self.residual & ~self.red


class _Search:
    def __init__(self, inst: DomInstance, P: SplitPartition):
        G = inst.graph
        self.G = G
        self.inst = inst
        self.nb = G.nbr_masks
        self.closed = G.closed_masks
        self.ring = [n_equal_2_mask(G, 1 << v) for v in range(G.n)]
        self.S = mask_of(inst.S)
        self.C = mask_of(P.clique_side)
        self.I = mask_of(P.independent_side)
        self.best: int | None = None
        self.counters = {"branch_nodes": 0, "leaves": 0, "accepted": 0, "reductions": 0}

    # -- primitives -------------------------------------------------------

    def mu(self, st: SearchState) -> int:
        return popcount(st.blue & self.S)

    def pick(self, st: SearchState, x: int) -> SearchState | None:
        """Add x to the solution, or ``None`` if x is no longer pickable."""
        if x < 0 or not st.blue >> x & 1:
            return None
        residual = st.residual & ~self.closed[x]
        return SearchState(residual, (st.red | self.ring[x]) & residual, st.picked | 1 << x)

    def redden(self, st: SearchState, mask: int) -> SearchState:
        return SearchState(st.residual, st.red | (mask & st.residual), st.picked)

    def only(self, mask: int) -> int | None:
        return mask.bit_length() - 1 if popcount(mask) == 1 else None

    # -- search -----------------------------------------------------------

    def close_pair(self, st: SearchState) -> tuple[int, int] | None:
        blue_s = bits(st.blue & self.S)
        for i, x in enumerate(blue_s):
            reach = self.nb[x] & st.residual
            for v in bits(reach):
                reach |= self.nb[v] & st.residual
            for y in blue_s[i + 1:]:
                if reach >> y & 1:
                    return x, y
        return None

    def branch(self, st: SearchState, children: list[list[tuple[str, int]]], phase3: bool) -> None:
        self.counters["branch_nodes"] += 1
        before = self.mu(st)
        for steps in children:
            child: SearchState | None = st
            for op, arg in steps:
                if op == "pick":
                    child = self.pick(child, arg)
                    if child is None:
                        break
                else:
                    child = self.redden(child, arg)
            if child is None:
                self.counters["leaves"] += 1
                continue
            if self.mu(child) > before - 2:
                raise InvariantViolation("branching child did not lower the measure by 2")
            if phase3:
                self.reduce(child)
            else:
                self.phase1(child)

    def phase1(self, st: SearchState) -> None:
        pair = self.close_pair(st)
        if pair is not None:
            x, y = pair
            self.branch(
                st,
                [[("pick", x)], [("pick", y)], [("red", 1 << x | 1 << y)]],
                phase3=False,
            )
            return
        for v in bits(st.blue & self.C):
            child = self.pick(st, v)
            assert child is not None
            self.reduce(child)
        self.reduce(self.redden(st, self.C))

    def reduce(self, st: SearchState) -> None:
        while True:
            before = self.mu(st)
            pair = self.close_pair(st)
            if pair is not None:
                x, y = pair
                self.branch(
                    st, [[("pick", x)], [("pick", y)], [("red", 1 << x | 1 << y)]], phase3=True
                )
                return
            if not st.residual:
                self.leaf(st)
                return
            blue = st.blue
            forced = None
            for u in bits(st.residual):
                options = blue & self.closed[u]
                if not options:
                    self.counters["leaves"] += 1
                    return  # u can no longer be dominated
                if forced is None and popcount(options) == 1:
                    forced = options.bit_length() - 1
            if forced is None:
                for x in bits(blue & self.S):
                    if popcount(self.nb[x] & blue & self.I) >= 2:
                        forced = x
                        break
            if forced is not None:
                st = self.pick(st, forced)
                self.counters["reductions"] += 1
                if self.mu(st) > before:
                    raise InvariantViolation("a reduction increased the measure")
                continue
            children = self.rule2(st)
            if children is not None:
                self.branch(st, children, phase3=True)
                return
            st = self.equal_pair_pick(st)

    def rule2(self, st: SearchState) -> list[list[tuple[str, int]]] | None:
        blue = st.blue
        red_alive = bits(st.residual & st.red)

        def s_partner(u: int) -> int | None:
            return self.only(self.nb[u] & blue & self.S)

        def i_partner(v: int) -> int | None:
            return self.only(self.nb[v] & blue & self.I)

        def picks(*vs: int | None) -> list[tuple[str, int]]:
            out = []
            for v in vs:
                # a missing partner leaves a vertex with nobody to dominate it
                out.append(("pick", -1) if v is None else ("pick", v))
            return out

        for x in red_alive:
            in_i = bits(self.nb[x] & blue & self.I)
            if len(in_i) >= 2:
                u, v = in_i[0], in_i[1]
                y, z = s_partner(u), s_partner(v)
                both = picks(y) if y == z else picks(y, z)
                return [
                    [("pick", u)] + picks(z),
                    [("pick", v)] + picks(y),
                    [("red", 1 << u | 1 << v)] + both,
                ]
        for x in red_alive:
            for u in bits(self.nb[x] & blue & self.I):
                for v in bits(self.nb[x] & blue & self.S):
                    if self.G.has_edge(u, v):
                        continue
                    y, z = s_partner(u), i_partner(v)
                    return [
                        [("pick", u), ("red", 1 << v)] + picks(z),
                        [("red", 1 << u)] + picks(v, y),
                        [("red", 1 << u | 1 << v)] + picks(z, y),
                    ]
        return None

    def equal_pair_pick(self, st: SearchState) -> SearchState:
        blue = st.blue
        w = (blue & -blue).bit_length() - 1
        p = self.only(self.nb[w] & blue)
        if p is None:
            raise InvariantViolation(f"blue vertex {w} is not in a blue pair when no rule applies")
        left = self.nb[w] & st.residual & ~(1 << p)
        right = self.nb[p] & st.residual & ~(1 << w)
        if left != right:
            raise InvariantViolation(f"blue pair ({w}, {p}) has different residual neighbourhoods")
        self.counters["reductions"] += 1
        return self.pick(st, w)

    def leaf(self, st: SearchState) -> None:
        self.counters["leaves"] += 1
        if st.picked & st.red:
            raise InvariantViolation("a red vertex entered the solution")
        if not check_solution(self.G, bits(st.picked), self.inst.spec):
            return
        self.counters["accepted"] += 1
        if self.best is None or popcount(st.picked) < popcount(self.best):
            self.best = st.picked


def eds_branch_bound(k: int, clique_size: int) -> int:
    """Allowed number of branching nodes for a modulator of size k."""
    return 3 ** ceil(k / 2) * (clique_size + 1)


def solve_eds_svd_branch(inst: DomInstance) -> DomSolution:
    """Minimum EDS by branching on the blue part of the modulator."""
    P = _partition(inst, Variant.EDS)
    search = _Search(inst, P)
    G = inst.graph
    search.phase1(SearchState(G.full_mask, 0, 0))
    counters = dict(search.counters)
    bound = eds_branch_bound(len(inst.S), len(P.clique_side))
    counters["branch_bound"] = bound
    if counters["branch_nodes"] > bound:
        raise InvariantViolation(
            f"{counters['branch_nodes']} branch nodes exceed the bound {bound}"
        )
    best = None if search.best is None else frozenset(bits(search.best))
    return _finish(inst, best, counters)


SOLVERS: dict[tuple[Variant, str], Callable[[DomInstance], DomSolution]] = {
    (Variant.IDS, "simple"): solve_ids_svd,
    (Variant.EDS, "simple"): solve_eds_svd_simple,
    (Variant.EDS, "branch"): solve_eds_svd_branch,
}


__all__ = [
    "solve_ids_svd",
    "solve_eds_svd_simple",
    "solve_eds_svd_branch",
    "eds_branch_bound",
    "SearchState",
]
