"""Problem statements shared by the solvers, the oracle and the file formats."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .graph import Graph
from .modulator import Kind, Modulator


class Variant(Enum):
    DS = "ds"
    EDS = "eds"
    IDS = "ids"
    DC = "dc"
    TDS = "tds"
    THDS = "thds"


class Status(Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class VariantSpec:
    """Which domination property a vertex set must satisfy.

    ``r`` is only meaningful for THDS; TDS always uses ``r = 1``.
    """

    variant: Variant
    r: int = 1

    def __post_init__(self):
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", Variant(self.variant.lower()))
        if self.variant is Variant.TDS:
            object.__setattr__(self, "r", 1)
        if self.variant is Variant.THDS and self.r < 1:
            raise ValueError("threshold r must be at least 1")

    @property
    def threshold(self) -> int:
        return self.r


@dataclass(frozen=True)
class DomInstance:
    """Graph plus modulator, target variant, budget and threshold.

    ``budget`` of ``None`` means the solver just minimises.
    """

    graph: Graph
    modulator: Modulator
    variant: Variant
    budget: int | None = None
    r: int = 1
    provenance: str | None = None

    def __post_init__(self):
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", Variant(self.variant.lower()))
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")
        if self.variant is Variant.TDS:
            object.__setattr__(self, "r", 1)
        if self.r < 1:
            raise ValueError("threshold r must be at least 1")

    @property
    def kind(self) -> Kind:
        return self.modulator.kind

    @property
    def S(self) -> frozenset[int]:
        return self.modulator.vertices

    @property
    def spec(self) -> VariantSpec:
        return VariantSpec(self.variant, self.r)


@dataclass(frozen=True)
class DomSolution:
    status: Status
    vertices: frozenset[int] = frozenset()
    guess_used: frozenset[int] | None = None
    counters: Mapping[str, int] = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int | None:
        return len(self.vertices) if self.status is Status.FEASIBLE else None

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def apply_budget(sol: DomSolution, budget: int | None) -> DomSolution:
    """Turn an optimum into the decision answer for ``budget``."""
    if budget is None or not sol.feasible or len(sol.vertices) <= budget:
        return sol
    counters = dict(sol.counters)
    counters["over_budget_optimum"] = len(sol.vertices)
    return DomSolution(Status.INFEASIBLE, frozenset(), None, counters)
