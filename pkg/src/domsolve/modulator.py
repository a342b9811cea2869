"""Modulators: verification and small bounded-search finders."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from .graph import (
    Graph,
    bits,
    is_cluster,
    is_edgeless,
    is_split,
    mask_of,
    smallest_induced_p3,
    smallest_split_obstruction,
)


class Kind(Enum):
    CVD = "cvd"
    SVD = "svd"
    VC = "vc"


@dataclass(frozen=True)
class Modulator:
    kind: Kind
    vertices: frozenset[int]

    def __init__(self, kind: Kind | str, vertices: Iterable[int] = ()):
        object.__setattr__(self, "kind", Kind(kind) if isinstance(kind, str) else kind)
        object.__setattr__(self, "vertices", frozenset(vertices))

    @property
    def k(self) -> int:
        return len(self.vertices)


def residual_ok(G: Graph, kind: Kind, S: Iterable[int]) -> bool:
    S = list(S)
    if kind is Kind.CVD:
        return is_cluster(G, S)
    if kind is Kind.SVD:
        return is_split(G, S)
    return is_edgeless(G, S)


def verify_modulator(G: Graph, M: Modulator) -> bool:
    if any(not 0 <= v < G.n for v in M.vertices):
        return False
    return residual_ok(G, M.kind, M.vertices)


def _branch(
    G: Graph,
    k: int,
    obstruction: Callable[[int], tuple[int, ...] | None],
) -> int | None:
    """Delete one vertex of the first obstruction per level, depth at most k."""

    def go(alive: int, budget: int) -> int | None:
        found = obstruction(alive)
        if found is None:
            return G.full_mask & ~alive
        if budget == 0:
            return None
        for v in found:
            res = go(alive & ~(1 << v), budget - 1)
            if res is not None:
                return res
        return None

    return go(G.full_mask, k)


def find_cvd(G: Graph, k: int) -> Modulator | None:
    """A cluster vertex deletion set of size at most ``k``, or ``None``."""
    if k < 0:
        raise ValueError("k must be non-negative")

    def p3(alive: int) -> tuple[int, ...] | None:
        w = smallest_induced_p3(G, alive)
        return None if w is None else tuple(sorted(w))

    res = _branch(G, k, p3)
    return None if res is None else Modulator(Kind.CVD, bits(res))


def find_svd(G: Graph, k: int) -> Modulator | None:
    """A split vertex deletion set of size at most ``k``, or ``None``."""
    if k < 0:
        raise ValueError("k must be non-negative")

    def obstruction(alive: int) -> tuple[int, ...] | None:
        if is_split(G, bits(G.full_mask & ~alive)):
            return None
        found = smallest_split_obstruction(G, alive)
        return None if found is None else found[1]

    res = _branch(G, k, obstruction)
    return None if res is None else Modulator(Kind.SVD, bits(res))


def find_vc(G: Graph, k: int) -> Modulator | None:
    """A vertex cover of size at most ``k``, or ``None`` (classic 2^k branching)."""
    if k < 0:
        raise ValueError("k must be non-negative")

    def edge(alive: int) -> tuple[int, ...] | None:
        for u in bits(alive):
            nb = G.nbr_masks[u] & alive
            if nb:
                return (u, (nb & -nb).bit_length() - 1)
        return None

    res = _branch(G, k, edge)
    return None if res is None else Modulator(Kind.VC, bits(res))


def find_modulator(G: Graph, kind: Kind, k: int) -> Modulator | None:
    finder = {Kind.CVD: find_cvd, Kind.SVD: find_svd, Kind.VC: find_vc}[kind]
    return finder(G, k)


__all__ = [
    "Kind",
    "Modulator",
    "verify_modulator",
    "find_cvd",
    "find_svd",
    "find_vc",
    "find_modulator",
    "mask_of",
]
