"""Solvers for graphs given with a cluster vertex deletion set S.

Every solver enumerates the part S' of the solution inside S, turns the
rest of the problem into a cover problem over (part of) S with one block
per clique of G - S, and hands that to :mod:`domsolve.cover_dp`. A vertex
cover is also a cluster deletion set, so VC modulators are accepted too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .cover_dp import (
    BlockMode,
    CoverInstance,
    CoverMode,
    CoverSolution,
    solve_escp,
    solve_exact_one_scp,
    solve_scp,
    solve_wsmp,
    solve_wsmp_marked,
)
from .errors import InvariantViolation, ModulatorMismatchError
from .graph import ClusterPartition, Graph, bits, cluster_partition, mask_of, n_equal_2_mask, popcount
from .modulator import Kind
from .oracle import check_solution
from .problem import DomInstance, DomSolution, Status, Variant, apply_budget


def guesses(S: frozenset[int]) -> Iterator[frozenset[int]]:
    """Subsets of S by ascending size, then ascending bit encoding.

    Bit i of the encoding stands for the i-th smallest vertex of S.
    """
    order = sorted(S)
    for code in sorted(range(1 << len(order)), key=lambda x: (popcount(x), x)):
        yield frozenset(order[i] for i in bits(code))


def _partition(inst: DomInstance, variants: tuple[Variant, ...]) -> ClusterPartition:
    if inst.variant not in variants:
        raise ValueError(f"solver handles {[v.name for v in variants]}, got {inst.variant.name}")
    if inst.kind not in (Kind.CVD, Kind.VC):
        raise ValueError(f"expected a cluster (or vertex cover) modulator, got {inst.kind.name}")
    if inst.kind is Kind.VC and any(
        inst.graph.nbr_masks[v] & ~mask_of(inst.S) for v in range(inst.graph.n) if v not in inst.S
    ):
        raise ModulatorMismatchError("recorded vertex cover leaves an edge uncovered")
    return cluster_partition(inst.graph, inst.S)


def _universe(S_rest: list[int]) -> dict[int, int]:
    return {s: i for i, s in enumerate(sorted(S_rest))}


def _sets(G: Graph, vertices: list[int], index: dict[int, int]) -> list[frozenset[int]]:
    return [frozenset(index[u] for u in G.adj[v] if u in index) for v in vertices]


def _lift(guess: frozenset[int], inst: CoverInstance, sol: CoverSolution) -> frozenset[int]:
    return guess | {inst.labels[j] for j in sol.witness}


class _Best:
    """Keeps the first strictly smallest candidate across guesses."""

    def __init__(self):
        self.vertices: frozenset[int] | None = None
        self.guess: frozenset[int] | None = None
        self.counters = {"guesses": 0, "dp_states": 0}

    def offer(self, vertices: frozenset[int], guess: frozenset[int]) -> None:
        if self.vertices is None or len(vertices) < len(self.vertices):
            self.vertices, self.guess = vertices, guess

    def add_states(self, sol: CoverSolution) -> None:
        self.counters["dp_states"] += sol.states

    def result(self, inst: DomInstance) -> DomSolution:
        if self.vertices is None:
            return apply_budget(DomSolution(Status.INFEASIBLE, counters=self.counters), inst.budget)
        if not check_solution(inst.graph, self.vertices, inst.spec):
            raise InvariantViolation(
                f"{inst.variant.name} solver produced an invalid set {sorted(self.vertices)}"
            )
        sol = DomSolution(Status.FEASIBLE, self.vertices, self.guess, self.counters)
        return apply_budget(sol, inst.budget)


# ---------------------------------------------------------------------------
# dominating set


def reduce_ds_to_scp(G: Graph, S: frozenset[int], guess: frozenset[int]) -> CoverInstance:
    """Cover instance whose optimum plus |guess| is the best DS extending ``guess``.

    Universe: modulator vertices not dominated by the guess. Family: one set
    per non-modulator vertex (its neighbours in the universe), blocked by
    clique; a block is flagged when its clique is not yet fully dominated.
    """
    P = cluster_partition(G, S)
    dominated = G.neighborhood_mask(mask_of(guess))
    index = _universe([s for s in S if not dominated >> s & 1])
    blocks, flags, labels = [], [], []
    for C in P.cliques:
        members = sorted(C)
        blocks.append(_sets(G, members, index))
        flags.append(int(any(not dominated >> v & 1 for v in members)))
        labels.extend(members)
    return CoverInstance.partitioned(
        len(index), blocks, block_req=tuple(flags), labels=tuple(labels)
    )


def solve_ds_cvd(inst: DomInstance) -> DomSolution:
    _partition(inst, (Variant.DS,))
    best = _Best()
    for guess in guesses(inst.S):
        best.counters["guesses"] += 1
        cover = reduce_ds_to_scp(inst.graph, inst.S, guess)
        sol = solve_scp(cover)
        best.add_states(sol)
        if sol.feasible:
            best.offer(_lift(guess, cover, sol), guess)
    return best.result(inst)


# ---------------------------------------------------------------------------
# efficient dominating set


@dataclass(frozen=True)
class EdsResidual:
    """What is left of an EDS instance once a guess has been fixed.

    ``remaining`` are the vertices that survive deleting N[guess] and the
    distance-2 ring; ``universe`` lists the modulator vertices still to be
    dominated; ``blocks`` gives, per surviving clique, the vertices that may
    still be picked.
    """

    remaining: frozenset[int]
    universe: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]


def eds_guess_preprocess(
    G: Graph, S: frozenset[int], guess: frozenset[int]
) -> EdsResidual | None:
    """Apply the EDS guess rules, or return ``None`` when the guess cannot extend."""
    gm = mask_of(guess)
    closed = G.closed_masks
    seen = 0
    for v in sorted(guess):
        if closed[v] & seen:
            return None
        seen |= closed[v]
    dominated = seen
    ring = n_equal_2_mask(G, gm)
    P = cluster_partition(G, S)
    blocks = []
    for C in P.cliques:
        rest = [v for v in sorted(C) if not dominated >> v & 1]
        if not rest:
            continue
        pickable = tuple(v for v in rest if not ring >> v & 1)
        if not pickable:
            return None
        blocks.append(pickable)
    universe = tuple(s for s in sorted(S) if not dominated >> s & 1)
    remaining = frozenset(bits(G.full_mask & ~dominated & ~ring))
    return EdsResidual(remaining, universe, tuple(blocks))


def solve_eds_cvd(inst: DomInstance) -> DomSolution:
    _partition(inst, (Variant.EDS,))
    G = inst.graph
    best = _Best()
    for guess in guesses(inst.S):
        best.counters["guesses"] += 1
        res = eds_guess_preprocess(G, inst.S, guess)
        if res is None:
            continue
        index = _universe(list(res.universe))
        cover = CoverInstance.partitioned(
            len(index),
            [_sets(G, list(block), index) for block in res.blocks],
            block_mode=BlockMode.EXACTLY_ONE,
            cover_mode=CoverMode.EXACTLY_ONCE,
            labels=tuple(v for block in res.blocks for v in block),
        )
        sol = solve_escp(cover)
        best.add_states(sol)
        if sol.feasible:
            best.offer(_lift(guess, cover, sol), guess)
    return best.result(inst)


# ---------------------------------------------------------------------------
# independent dominating set


def solve_ids_cvd(inst: DomInstance) -> DomSolution:
    _partition(inst, (Variant.IDS,))
    G = inst.graph
    P = cluster_partition(G, inst.S)
    best = _Best()
    for guess in guesses(inst.S):
        best.counters["guesses"] += 1
        if not G.is_independent(guess):
            continue
        gm = mask_of(guess)
        touched = 0
        for v in guess:
            touched |= G.nbr_masks[v]
        dominated = touched | gm
        index = _universe([s for s in inst.S if not dominated >> s & 1])
        blocks, labels = [], []
        for C in P.cliques:
            free = [v for v in sorted(C) if not touched >> v & 1]
            if not free:
                continue  # the whole clique is dominated and nothing in it may be picked
            blocks.append(_sets(G, free, index))
            labels.extend(free)
        cover = CoverInstance.partitioned(
            len(index), blocks, block_mode=BlockMode.EXACTLY_ONE, labels=tuple(labels)
        )
        sol = solve_exact_one_scp(cover)
        best.add_states(sol)
        if sol.feasible:
            best.offer(_lift(guess, cover, sol), guess)
    return best.result(inst)


# ---------------------------------------------------------------------------
# dominating clique


def solve_dc_cvd(inst: DomInstance) -> DomSolution:
    _partition(inst, (Variant.DC,))
    G = inst.graph
    P = cluster_partition(G, inst.S)
    best = _Best()
    for guess in guesses(inst.S):
        best.counters["guesses"] += 1
        if not G.is_clique(guess):
            continue
        dominated = G.neighborhood_mask(mask_of(guess))
        undominated = [C for C in P.cliques if any(not dominated >> v & 1 for v in C)]
        if len(undominated) >= 2:
            continue
        index = _universe([s for s in inst.S if not dominated >> s & 1])
        if not undominated and not index:
            best.offer(guess, guess)
        # picks from the cluster part all come from one clique and must be
        # adjacent to every guessed vertex
        for C in undominated or P.cliques:
            cands = [v for v in sorted(C) if all(G.has_edge(v, s) for s in guess)]
            cover = CoverInstance.partitioned(
                len(index), [_sets(G, cands, index)], block_req=(1,), labels=tuple(cands)
            )
            sol = solve_scp(cover)
            best.add_states(sol)
            if sol.feasible:
                best.offer(_lift(guess, cover, sol), guess)
    return best.result(inst)


# ---------------------------------------------------------------------------
# threshold and total domination


def _thds_cover(
    G: Graph, S: frozenset[int], P: ClusterPartition, guess: frozenset[int], r: int
) -> tuple[CoverInstance, list[bool]]:
    gm = mask_of(guess)
    demand = [max(0, r - popcount(G.nbr_masks[v] & gm)) for v in range(G.n)]
    index = _universe([s for s in S if demand[s] > 0])
    blocks, need, labels, marked = [], [], [], []
    for C in P.cliques:
        members = sorted(C)
        top = max(demand[v] for v in members)
        blocks.append(_sets(G, members, index))
        need.append(top)
        labels.extend(members)
        marked.extend(top > 0 and demand[v] == top for v in members)
    cover = CoverInstance.partitioned(
        len(index),
        blocks,
        block_mode=BlockMode.AT_LEAST_WEIGHT,
        block_req=tuple(need),
        cover_mode=CoverMode.MULTICOVER,
        element_weights=tuple(demand[s] for s in sorted(index)),
        r=r,
        labels=tuple(labels),
    )
    return cover, marked


def _raise_blocks(cover: CoverInstance) -> CoverInstance:
    return CoverInstance(
        cover.universe_size,
        cover.family,
        cover.blocks,
        cover.block_mode,
        tuple(x + 1 if x > 0 else 0 for x in cover.block_req),
        cover.cover_mode,
        cover.element_weights,
        cover.r + 1,
        cover.budget,
        cover.labels,
    )


def solve_thds_cvd(inst: DomInstance, block_rule: str = "exact") -> DomSolution:
    """Minimum threshold-r (or total, r = 1) dominating set.

    ``block_rule="exact"`` asks each clique block for ``max w`` picks, plus
    one more whenever a vertex of maximal residual demand is itself picked;
    this is precisely the condition for the clique's vertices to be
    satisfied. ``block_rule="formal"`` asks for ``max w`` picks only, checks
    the lifted set, and on failure retries the guess with ``max w + 1``;
    it is kept for comparison and can overshoot the optimum.
    """
    P = _partition(inst, (Variant.TDS, Variant.THDS))
    if block_rule not in ("exact", "formal"):
        raise ValueError("block_rule must be 'exact' or 'formal'")
    G, r = inst.graph, inst.r
    best = _Best()
    if block_rule == "formal":
        best.counters["fallbacks"] = 0
    for guess in guesses(inst.S):
        best.counters["guesses"] += 1
        cover, marked = _thds_cover(G, inst.S, P, guess, r)
        if block_rule == "exact":
            sol = solve_wsmp_marked(cover, marked)
            best.add_states(sol)
            if sol.feasible:
                best.offer(_lift(guess, cover, sol), guess)
            continue
        sol = solve_wsmp(cover)
        best.add_states(sol)
        if not sol.feasible:
            continue
        lifted = _lift(guess, cover, sol)
        if not check_solution(G, lifted, inst.spec):
            best.counters["fallbacks"] += 1
            cover = _raise_blocks(cover)
            sol = solve_wsmp(cover)
            best.add_states(sol)
            if not sol.feasible:
                continue
            lifted = _lift(guess, cover, sol)
            if not check_solution(G, lifted, inst.spec):
                continue
        best.offer(lifted, guess)
    return best.result(inst)


SOLVERS: dict[Variant, Callable[[DomInstance], DomSolution]] = {
    Variant.DS: solve_ds_cvd,
    Variant.EDS: solve_eds_cvd,
    Variant.IDS: solve_ids_cvd,
    Variant.DC: solve_dc_cvd,
    Variant.TDS: solve_thds_cvd,
    Variant.THDS: solve_thds_cvd,
}


def solve_cvd(inst: DomInstance) -> DomSolution:
    return SOLVERS[inst.variant](inst)


__all__ = [
    "guesses",
    "reduce_ds_to_scp",
    "solve_ds_cvd",
    "EdsResidual",
    "eds_guess_preprocess",
    "solve_eds_cvd",
    "solve_ids_cvd",
    "solve_dc_cvd",
    "solve_thds_cvd",
    "solve_cvd",
]
