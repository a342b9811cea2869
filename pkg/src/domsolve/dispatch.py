"""Pick the right solver for an instance and algorithm name."""

from __future__ import annotations

from .cvd import solve_cvd
from .errors import UnsupportedProblemError
from .modulator import Kind
from .oracle import DEFAULT_CAP, brute_min
from .problem import DomInstance, DomSolution, Variant, apply_budget
from .svd import solve_eds_svd_branch, solve_eds_svd_simple, solve_ids_svd

ALGOS = ("dp", "branch", "simple", "oracle")

_SPLIT_HARD = (Variant.DS, Variant.DC, Variant.TDS, Variant.THDS)


def solve(inst: DomInstance, algo: str = "dp", cap: int = DEFAULT_CAP) -> DomSolution:
    """Solve ``inst`` with the named algorithm.

    ``dp`` is the guess-and-cover solver for cluster (and vertex cover)
    modulators; on split modulators it means the guessing solver for IDS and
    the branch-and-reduce solver for EDS. ``simple`` and ``branch`` select
    the split-modulator EDS algorithms explicitly. ``oracle`` enumerates all
    vertex subsets.
    """
    if algo not in ALGOS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGOS)}")
    if algo == "oracle":
        return apply_budget(brute_min(inst.graph, inst.spec, cap), inst.budget)
    if inst.kind is Kind.SVD:
        if inst.variant in _SPLIT_HARD:
            raise UnsupportedProblemError(
                f"{inst.variant.name} is para-NP-hard when parameterized by a split "
                "vertex deletion set (NP-hard already on split graphs); no exact FPT solver"
            )
        if inst.variant is Variant.IDS:
            if algo == "branch":
                raise ValueError("branch-and-reduce is only implemented for EDS")
            return solve_ids_svd(inst)
        if algo == "simple":
            return solve_eds_svd_simple(inst)
        return solve_eds_svd_branch(inst)
    if algo != "dp":
        raise ValueError(f"algorithm {algo!r} applies to split modulators only; use dp")
    return solve_cvd(inst)
