"""Ground truth: definitional checkers and exhaustive minimisers.

Nothing here uses modulators or the dynamic programs; these routines are
the reference the fast solvers are tested against.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .cover_dp import BlockMode, CoverInstance, CoverMode, CoverSolution
from .errors import ContractError, InvariantViolation, OracleCapError
from .graph import Graph, SplitPartition, bits
from .problem import DomSolution, Status, Variant, VariantSpec

DEFAULT_CAP = 20
COVER_CAP = 20


def check_solution(G: Graph, D: Iterable[int], spec: VariantSpec) -> bool:
    """Whether ``D`` satisfies the variant's definition on ``G``."""
    D = set(D)
    if any(not 0 <= v < G.n for v in D):
        return False
    variant = spec.variant
    if variant in (Variant.TDS, Variant.THDS):
        r = 1 if variant is Variant.TDS else spec.r
        return all(sum(1 for u in G.adj[v] if u in D) >= r for v in G.vertices)
    hits = [sum(1 for u in G.adj[v] if u in D) + (v in D) for v in G.vertices]
    if variant is Variant.EDS:
        return all(h == 1 for h in hits)
    if any(h == 0 for h in hits):
        return False
    if variant is Variant.IDS:
        return all(not G.has_edge(u, v) for u, v in combinations(sorted(D), 2))
    if variant is Variant.DC:
        return all(G.has_edge(u, v) for u, v in combinations(sorted(D), 2))
    return True


def _lex_smallest(masks: Iterable[int]) -> int:
    return min(masks, key=lambda x: tuple(bits(int(x))))


def brute_min(G: Graph, spec: VariantSpec, cap: int = DEFAULT_CAP) -> DomSolution:
    """Exhaustive minimum over all vertex subsets.

    Ties are broken towards the lexicographically smallest sorted vertex
    tuple. Refuses graphs with more than ``cap`` vertices.
    """
    n = G.n
    if n > cap:
        raise OracleCapError(f"{n} vertices exceeds the brute-force cap of {cap}")
    subsets = np.arange(1 << n, dtype=np.uint64)
    size = np.bitwise_count(subsets)
    ok = np.ones(len(subsets), dtype=bool)
    variant = spec.variant
    r = 1 if variant is Variant.TDS else spec.r
    for v in range(n):
        inside = ((subsets >> np.uint64(v)) & np.uint64(1)).astype(bool)
        opened = np.bitwise_count(subsets & np.uint64(G.nbr_masks[v]))
        closed = opened + inside
        if variant in (Variant.TDS, Variant.THDS):
            ok &= opened >= r
        elif variant is Variant.EDS:
            ok &= closed == 1
        else:
            ok &= closed >= 1
            if variant is Variant.IDS:
                ok &= ~inside | (opened == 0)
            elif variant is Variant.DC:
                ok &= ~inside | (opened == size - 1)
    if not ok.any():
        return DomSolution(Status.INFEASIBLE)
    best = size[ok].min()
    pick = _lex_smallest(subsets[ok & (size == best)])
    return DomSolution(Status.FEASIBLE, frozenset(bits(int(pick))))


def brute_cover(inst: CoverInstance, marked: Sequence[bool] | None = None) -> CoverSolution:
    """Exhaustive optimum over all 2^m subfamilies under the instance's modes.

    ``marked`` applies the extra-pick rule of ``solve_wsmp_marked``.
    """
    m, k = inst.m, inst.universe_size
    if m > COVER_CAP:
        raise OracleCapError(f"{m} sets exceeds the brute-force cap of {COVER_CAP}")
    incidence = np.zeros((m, k), dtype=np.int32)
    for j, s in enumerate(inst.family):
        for u in s:
            incidence[j, u] = 1
    q = len(inst.blocks)
    in_block = np.zeros((m, q), dtype=np.int32)
    for i, (start, stop) in enumerate(inst.blocks):
        in_block[start:stop, i] = 1
    marks = np.array(marked if marked is not None else [False] * m, dtype=np.int32).reshape(m, 1)
    need = np.array(inst.block_req, dtype=np.int32)
    weights = np.array(inst.element_weights or (1,) * k, dtype=np.int32)

    best_size, best = None, []
    chunk = 1 << 14
    for lo in range(0, 1 << m, chunk):
        sub = np.arange(lo, min(lo + chunk, 1 << m), dtype=np.int64)
        pick = ((sub[:, None] >> np.arange(m)) & 1).astype(np.int32)
        cov = pick @ incidence
        per_block = pick @ in_block
        if inst.cover_mode is CoverMode.AT_LEAST_ONCE:
            ok = (cov >= 1).all(axis=1)
        elif inst.cover_mode is CoverMode.EXACTLY_ONCE:
            ok = (cov == 1).all(axis=1)
        else:
            ok = (cov >= weights).all(axis=1)
        if inst.block_mode is BlockMode.EXACTLY_ONE:
            ok &= (per_block == 1).all(axis=1)
        else:
            extra = (pick @ (in_block * marks)) > 0
            ok &= (per_block >= need + extra).all(axis=1)
        if not ok.any():
            continue
        sizes = pick.sum(axis=1)
        low = int(sizes[ok].min())
        cands = [int(x) for x in sub[ok & (sizes == low)]]
        if best_size is None or low < best_size:
            best_size, best = low, cands
        elif low == best_size:
            best.extend(cands)
    if best_size is None:
        return CoverSolution(Status.INFEASIBLE)
    if inst.budget is not None and best_size > inst.budget:
        return CoverSolution(Status.INFEASIBLE)
    return CoverSolution(Status.FEASIBLE, tuple(bits(_lex_smallest(best))))


def min_eds_exact_cover(G: Graph) -> DomSolution:
    """Minimum efficient dominating set by exhaustive exact-cover search.

    An EDS is a choice of closed neighbourhoods partitioning V. The search
    branches on the uncovered vertex with the fewest usable neighbourhoods
    and never prunes a branch that could still produce a smaller set, so it
    is exact on graphs far beyond the subset-enumeration cap.
    """
    closed = G.closed_masks
    full = G.full_mask
    best: list[int] | None = None

    def go(covered: int, chosen: list[int]) -> None:
        nonlocal best
        if covered == full:
            if best is None or (len(chosen), sorted(chosen)) < (len(best), sorted(best)):
                best = list(chosen)
            return
        if best is not None and len(chosen) >= len(best):
            return
        target, options = None, None
        for u in bits(full & ~covered):
            cand = [v for v in G.adj[u] + (u,) if not closed[v] & covered]
            if target is None or len(cand) < len(options):
                target, options = u, cand
                if not cand:
                    break
        for v in sorted(options):
            chosen.append(v)
            go(covered | closed[v], chosen)
            chosen.pop()

    go(0, [])
    if best is None:
        return DomSolution(Status.INFEASIBLE)
    return DomSolution(Status.FEASIBLE, frozenset(best))


def efficient_dominating_sets(G: Graph) -> Iterator[frozenset[int]]:
    """Every efficient dominating set of ``G``, each exactly once."""
    closed = G.closed_masks
    full = G.full_mask

    def go(covered: int, chosen: list[int]) -> Iterator[frozenset[int]]:
        if covered == full:
            yield frozenset(chosen)
            return
        options = None
        for u in bits(full & ~covered):
            cand = [v for v in G.adj[u] + (u,) if not closed[v] & covered]
            if options is None or len(cand) < len(options):
                options = cand
                if not cand:
                    return
        # the branching vertex is covered by exactly one pick, so branches are disjoint
        for v in options:
            chosen.append(v)
            yield from go(covered | closed[v], chosen)
            chosen.pop()

    yield from go(0, [])


def _is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        grown = 0
        for v in bits(frontier):
            grown |= G.nbr_masks[v]
        frontier = grown & ~seen
        seen |= grown
    return seen == G.full_mask


def normalize_split_dominating(
    G: Graph, P: SplitPartition, D: Iterable[int], spec: VariantSpec
) -> frozenset[int]:
    """Move a DS, DC or TDS of a connected split graph onto the clique side.

    Each member on the independent side is swapped for its smallest clique
    neighbour. A total dominating set that collapses to one vertex gets the
    smallest other clique vertex added.
    """
    D = frozenset(D)
    if spec.variant not in (Variant.DS, Variant.DC, Variant.TDS):
        raise ContractError("normalisation is defined for DS, DC and TDS only")
    C, I = P.clique_side, P.independent_side
    if C | I != frozenset(G.vertices) or C & I:
        raise ContractError("partition must cover the whole graph")
    if not G.is_clique(C) or not G.is_independent(I):
        raise ContractError("not a valid split partition")
    if not _is_connected(G):
        raise ContractError("graph must be connected")
    if not check_solution(G, D, spec):
        raise ContractError("input set does not satisfy the variant")
    if spec.variant is Variant.TDS and (len(C) < 2 or len(D) < 2):
        raise ContractError("TDS normalisation needs |C| >= 2 and |D| >= 2")
    out = set(D & C)
    for u in sorted(D & I):
        out.add(min(v for v in G.adj[u] if v in C))
    if spec.variant is Variant.TDS and len(out) == 1:
        out.add(min(C - out))
    result = frozenset(out)
    if not check_solution(G, result, spec):
        raise InvariantViolation("normalised set lost the domination property")
    return result


def is_vertex_cover(G: Graph, T: Iterable[int]) -> bool:
    T = set(T)
    return all(u in T or v in T for u, v in G.edges())


def is_minimal_vertex_cover(G: Graph, T: Iterable[int]) -> bool:
    T = set(T)
    return is_vertex_cover(G, T) and all(not is_vertex_cover(G, T - {v}) for v in T)


def mmvc_from_ids(G: Graph, X: Iterable[int], direction: str = "forward") -> frozenset[int]:
    """Complement map between minimal vertex covers and independent dominating sets.

    ``forward`` takes a minimal vertex cover and returns its complement, an
    IDS; ``backward`` takes an IDS and returns its complement, a vertex cover
    whose complement-side minimality mirrors the IDS.
    """
    X = frozenset(X)
    if direction == "forward":
        if not is_minimal_vertex_cover(G, X):
            raise ContractError("input is not a minimal vertex cover")
    elif direction == "backward":
        if not check_solution(G, X, VariantSpec(Variant.IDS)):
            raise ContractError("input is not an independent dominating set")
    else:
        raise ValueError("direction must be 'forward' or 'backward'")
    return frozenset(G.vertices) - X


def max_minimal_vertex_cover(G: Graph, cap: int = DEFAULT_CAP) -> frozenset[int]:
    """Largest minimal vertex cover by enumerating every vertex subset."""
    if G.n > cap:
        raise OracleCapError(f"{G.n} vertices exceeds the brute-force cap of {cap}")
    for size in range(G.n, -1, -1):
        for T in combinations(range(G.n), size):
            if is_minimal_vertex_cover(G, T):
                return frozenset(T)
    raise InvariantViolation("the empty graph's empty set should have matched")


__all__ = [
    "check_solution",
    "brute_min",
    "brute_cover",
    "min_eds_exact_cover",
    "normalize_split_dominating",
    "mmvc_from_ids",
    "max_minimal_vertex_cover",
    "is_vertex_cover",
    "is_minimal_vertex_cover",
]
