"""Dynamic programs for set cover with a block partition of the family.

All solvers share one layered table ``T[j][b][x]``: ``j`` counts how many
family members have been considered, ``b`` is a small per-block residual
(a flag, or a remaining pick count), and ``x`` encodes what is still to be
covered (a subset bitmask, or a mixed-radix vector of residual weights).
Each layer is computed from the previous one with whole-array numpy
operations, so iterating ``x`` in increasing order is implicit.

Layer 0 is a virtual "nothing considered yet" layer in which only the empty
residual costs 0. Starting from it, the first real layer follows the same
first-set-of-a-block recurrence as every other block boundary.

The table is filled over the family in reverse order. Walking it back then
visits the original indices in ascending order, and preferring "pick" on
ties yields the lexicographically smallest optimal index sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantViolation
from .problem import Status


class BlockMode(Enum):
    AT_LEAST_FLAG = "at_least_flag"
    EXACTLY_ONE = "exactly_one"
    AT_LEAST_WEIGHT = "at_least_weight"


class CoverMode(Enum):
    AT_LEAST_ONCE = "at_least_once"
    EXACTLY_ONCE = "exactly_once"
    MULTICOVER = "multicover"


@dataclass(frozen=True)
class CoverInstance:
    """Universe ``0..universe_size-1`` and a family split into contiguous blocks.

    ``blocks`` holds half-open ``(start, stop)`` index ranges that tile
    ``range(len(family))`` in order; empty ranges are allowed. ``block_req``
    gives the per-block flag (AT_LEAST_FLAG) or minimum pick count
    (AT_LEAST_WEIGHT) and is ignored for EXACTLY_ONE. ``element_weights``
    is only read in MULTICOVER mode. ``labels`` optionally names each family
    member (the solvers use it to map picks back to vertices).
    """

    universe_size: int
    family: tuple[frozenset[int], ...]
    blocks: tuple[tuple[int, int], ...] | None = None
    block_mode: BlockMode = BlockMode.AT_LEAST_FLAG
    block_req: tuple[int, ...] | None = None
    cover_mode: CoverMode = CoverMode.AT_LEAST_ONCE
    element_weights: tuple[int, ...] | None = None
    r: int = 1
    budget: int | None = None
    labels: tuple | None = None

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "family", tuple(frozenset(s) for s in self.family))
        m = len(self.family)
        k = self.universe_size
        if k < 0:
            raise ValueError("universe size must be non-negative")
        for s in self.family:
            if any(not 0 <= u < k for u in s):
                raise ValueError(f"set {sorted(s)} is not inside the universe")
        blocks = ((0, m),) if self.blocks is None else tuple(tuple(b) for b in self.blocks)
        pos = 0
        for start, stop in blocks:
            if start != pos or stop < start:
                raise ValueError("blocks must be contiguous and in order")
            pos = stop
        if pos != m:
            raise ValueError("blocks must cover the whole family")
        set_(self, "blocks", blocks)
        req = (0,) * len(blocks) if self.block_req is None else tuple(self.block_req)
        if len(req) != len(blocks):
            raise ValueError("need one requirement per block")
        top = 1 if self.block_mode is BlockMode.AT_LEAST_FLAG else self.r
        if any(not 0 <= x <= top for x in req):
            raise ValueError(f"block requirements must lie in 0..{top}")
        set_(self, "block_req", req)
        if self.cover_mode is CoverMode.MULTICOVER:
            w = (1,) * k if self.element_weights is None else tuple(self.element_weights)
            if len(w) != k or any(not 0 <= x <= self.r for x in w):
                raise ValueError(f"need one element weight in 0..{self.r} per element")
            set_(self, "element_weights", w)
        if self.labels is not None:
            if len(self.labels) != m:
                raise ValueError("need one label per family member")
            set_(self, "labels", tuple(self.labels))

    @classmethod
    def partitioned(
        cls,
        universe_size: int,
        blocks: Sequence[Sequence[Iterable[int]]],
        **kwargs,
    ) -> "CoverInstance":
        """Build an instance from a list of blocks, each a list of sets."""
        family = []
        ranges = []
        for block in blocks:
            start = len(family)
            family.extend(frozenset(s) for s in block)
            ranges.append((start, len(family)))
        return cls(universe_size, tuple(family), tuple(ranges), **kwargs)

    @property
    def m(self) -> int:
        return len(self.family)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in s) for s in self.family)

    def block_of(self) -> list[int]:
        out = [0] * self.m
        for i, (start, stop) in enumerate(self.blocks):
            for j in range(start, stop):
                out[j] = i
        return out


@dataclass(frozen=True)
class CoverSolution:
    status: Status
    witness: tuple[int, ...] = ()
    states: int = 0

    @property
    def size(self) -> int | None:
        return len(self.witness) if self.status is Status.FEASIBLE else None

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


INFEASIBLE = CoverSolution(Status.INFEASIBLE)


def cover_satisfied(
    inst: CoverInstance,
    witness: Iterable[int],
    marked: Sequence[bool] | None = None,
) -> bool:
    """Whether choosing ``witness`` meets every element and block requirement.

    ``marked`` adds the rule used by :func:`solve_wsmp_marked`: a block whose
    picks include a marked member needs one pick more than its weight.
    """
    picks = list(witness)
    if len(set(picks)) != len(picks) or any(not 0 <= j < inst.m for j in picks):
        return False
    counts = [0] * inst.universe_size
    for j in picks:
        for u in inst.family[j]:
            counts[u] += 1
    if inst.cover_mode is CoverMode.AT_LEAST_ONCE:
        if any(c < 1 for c in counts):
            return False
    elif inst.cover_mode is CoverMode.EXACTLY_ONCE:
        if any(c != 1 for c in counts):
            return False
    elif any(c < w for c, w in zip(counts, inst.element_weights)):
        return False
    chosen = set(picks)
    for (start, stop), req in zip(inst.blocks, inst.block_req):
        inside = [j for j in range(start, stop) if j in chosen]
        if inst.block_mode is BlockMode.EXACTLY_ONE:
            if len(inside) != 1:
                return False
        else:
            need = req
            if marked is not None and any(marked[j] for j in inside):
                need += 1
            if len(inside) < need:
                return False
    return True


# ---------------------------------------------------------------------------
# shared layered-table engine

# A rule maps an output residual b to a list of (previous residual, pick?)
# options. Options are listed with picks first, which is what makes the
# walk-back prefer picking the current (lowest remaining) index.
Rules = dict[int, list[tuple[int, bool]]]


@dataclass
class _Layer:
    remap: np.ndarray
    guard: np.ndarray | None
    rules: Rules


def _subset_space(k: int) -> np.ndarray:
    return np.arange(1 << k, dtype=np.int64)


def _run(
    layers: list[_Layer],
    num_flags: int,
    num_states: int,
    target: int,
    final_flags: Sequence[int],
) -> tuple[int | None, list[int], int]:
    """Fill the table and walk back from the best final flag.

    Returns ``(optimum or None, picked layer numbers (1-based), states)``.
    """
    m = len(layers)
    inf = m + 1
    dtype = np.int16 if inf < np.iinfo(np.int16).max else np.int32
    table = np.full((m + 1, num_flags, num_states), inf, dtype=dtype)
    table[0, :, 0] = 0
    states = 0
    for j, layer in enumerate(layers, start=1):
        prev = table[j - 1]
        picked = prev[:, layer.remap] + 1
        np.minimum(picked, inf, out=picked)
        if layer.guard is not None:
            picked[:, ~layer.guard] = inf
        cur = table[j]
        for b, options in layer.rules.items():
            acc = None
            for pb, pick in options:
                src = picked[pb] if pick else prev[pb]
                acc = src.copy() if acc is None else np.minimum(acc, src)
            if acc is not None:
                cur[b] = acc
        states += num_flags * num_states

    best_flag = min(final_flags, key=lambda f: int(table[m, f, target]))
    best = int(table[m, best_flag, target])
    if best >= inf:
        return None, [], states

    f, x = best_flag, target
    chosen = []
    for j in range(m, 0, -1):
        layer = layers[j - 1]
        val = int(table[j, f, x])
        for pb, pick in layer.rules.get(f, ()):
            if pick:
                if layer.guard is not None and not layer.guard[x]:
                    continue
                y = int(layer.remap[x])
                if int(table[j - 1, pb, y]) + 1 == val:
                    chosen.append(j)
                    f, x = pb, y
                    break
            elif int(table[j - 1, pb, x]) == val:
                f = pb
                break
        else:
            raise InvariantViolation(f"no parent reproduces table entry at layer {j}")
    if x != 0 or len(chosen) != best:
        raise InvariantViolation("walk-back did not end at the empty residual")
    return best, chosen, states


def _mirrored(inst: CoverInstance) -> list[tuple[int, int, list[int]]]:
    """Non-empty blocks in reverse order: ``(block number, requirement, members)``.

    Members are listed in reverse index order too.
    """
    out = []
    for i in range(len(inst.blocks) - 1, -1, -1):
        start, stop = inst.blocks[i]
        if stop > start:
            out.append((i, inst.block_req[i], list(range(stop - 1, start - 1, -1))))
    return out


def _finish(inst: CoverInstance, best: int | None, chosen: list[int], order: list[int], states: int) -> CoverSolution:
    if best is None:
        return CoverSolution(Status.INFEASIBLE, (), states)
    witness = tuple(order[j - 1] for j in chosen)
    if list(witness) != sorted(witness):
        raise InvariantViolation("witness indices should come out ascending")
    if inst.budget is not None and len(witness) > inst.budget:
        return CoverSolution(Status.INFEASIBLE, (), states)
    return CoverSolution(Status.FEASIBLE, witness, states)


def _require(inst: CoverInstance, block_mode: BlockMode, cover_mode: CoverMode) -> None:
    if inst.block_mode is not block_mode or inst.cover_mode is not cover_mode:
        raise ValueError(
            f"expected {block_mode.name}/{cover_mode.name}, "
            f"got {inst.block_mode.name}/{inst.cover_mode.name}"
        )


# ---------------------------------------------------------------------------
# the solvers


def solve_set_cover(inst: CoverInstance) -> CoverSolution:
    """Minimum subfamily covering the universe, ignoring blocks entirely."""
    _require(inst, BlockMode.AT_LEAST_FLAG, CoverMode.AT_LEAST_ONCE)
    if any(inst.block_req):
        raise ValueError("plain set cover takes no block flags")
    space = _subset_space(inst.universe_size)
    masks = inst.masks
    order = list(range(inst.m - 1, -1, -1))
    rules = {0: [(0, True), (0, False)]}
    layers = [_Layer(space & ~masks[i], None, rules) for i in order]
    best, chosen, states = _run(layers, 1, len(space), len(space) - 1, [0])
    return _finish(inst, best, chosen, order, states)


def solve_scp(inst: CoverInstance) -> CoverSolution:
    """Cover the universe, taking at least one set from every flagged block."""
    _require(inst, BlockMode.AT_LEAST_FLAG, CoverMode.AT_LEAST_ONCE)
    for (start, stop), flag in zip(inst.blocks, inst.block_req):
        if flag and start == stop:
            return INFEASIBLE
    space = _subset_space(inst.universe_size)
    masks = inst.masks
    layers, order = [], []
    prev_flag = 0
    blocks = _mirrored(inst)
    for _, flag, members in blocks:
        for pos, i in enumerate(members):
            if pos == 0:
                rules = {1: [(prev_flag, True)], 0: [(prev_flag, True), (prev_flag, False)]}
            else:
                rules = {b: [(0, True), (b, False)] for b in (0, 1)}
            layers.append(_Layer(space & ~masks[i], None, rules))
            order.append(i)
        prev_flag = flag
    best, chosen, states = _run(layers, 2, len(space), len(space) - 1, [prev_flag])
    return _finish(inst, best, chosen, order, states)


def _exactly_one(inst: CoverInstance, exact_cover: bool) -> CoverSolution:
    if any(start == stop for start, stop in inst.blocks):
        return INFEASIBLE
    space = _subset_space(inst.universe_size)
    masks = inst.masks
    layers, order = [], []
    for _, _, members in _mirrored(inst):
        for pos, i in enumerate(members):
            if pos == 0:
                rules = {1: [(1, True)], 0: [(1, False)]}
            else:
                rules = {1: [(0, True), (1, False)], 0: [(0, False)]}
            guard = (space & masks[i]) == masks[i] if exact_cover else None
            layers.append(_Layer(space & ~masks[i], guard, rules))
            order.append(i)
    best, chosen, states = _run(layers, 2, len(space), len(space) - 1, [1])
    return _finish(inst, best, chosen, order, states)


def solve_escp(inst: CoverInstance) -> CoverSolution:
    """Cover every element exactly once using exactly one set per block."""
    _require(inst, BlockMode.EXACTLY_ONE, CoverMode.EXACTLY_ONCE)
    return _exactly_one(inst, exact_cover=True)


def solve_exact_one_scp(inst: CoverInstance) -> CoverSolution:
    """Cover every element at least once using exactly one set per block."""
    _require(inst, BlockMode.EXACTLY_ONE, CoverMode.AT_LEAST_ONCE)
    return _exactly_one(inst, exact_cover=False)


def _weight_space(k: int, radix: int) -> tuple[np.ndarray, np.ndarray]:
    """Residual-weight vectors in mixed radix, element 0 least significant.

    Returns ``(codes, digits)`` where ``digits[u]`` is the digit of element
    ``u`` in every code.
    """
    codes = np.arange(radix**k, dtype=np.int64)
    digits = np.stack([(codes // radix**u) % radix for u in range(k)]) if k else np.zeros((0, 1), np.int64)
    return codes, digits


def _decrement(codes: np.ndarray, digits: np.ndarray, radix: int, members: Iterable[int]) -> np.ndarray:
    out = codes.copy()
    for u in members:
        out -= (digits[u] > 0) * radix**u
    return out


def solve_wsmp(inst: CoverInstance) -> CoverSolution:
    """Cover element u at least w(u) times with at least w(B) picks per block."""
    _require(inst, BlockMode.AT_LEAST_WEIGHT, CoverMode.MULTICOVER)
    return _wsmp(inst, None)


def solve_wsmp_marked(inst: CoverInstance, marked: Sequence[bool]) -> CoverSolution:
    """WSMP where a block containing a picked *marked* set needs w(B)+1 picks.

    This is the exact block condition for threshold domination inside a
    clique: a picked clique vertex is not its own neighbour, so the vertices
    of largest residual demand need one extra pick when they are picked
    themselves.
    """
    _require(inst, BlockMode.AT_LEAST_WEIGHT, CoverMode.MULTICOVER)
    if len(marked) != inst.m:
        raise ValueError("need one mark per family member")
    return _wsmp(inst, [bool(x) for x in marked])


def _wsmp(inst: CoverInstance, marked: list[bool] | None) -> CoverSolution:
    r = inst.r
    for (start, stop), need in zip(inst.blocks, inst.block_req):
        if need > 0 and start == stop:
            return INFEASIBLE
    radix = r + 1
    k = inst.universe_size
    codes, digits = _weight_space(k, radix)
    target = sum(w * radix**u for u, w in enumerate(inst.element_weights))

    # residual b ranges over 0..r; with marks the residual can reach r+1 and
    # each block has a "marked picks allowed" (mode 0) and a "no marked
    # picks" (mode 1) copy of the residual counter
    width = r + 2 if marked is not None else r + 1
    modes = 2 if marked is not None else 1

    def flag(mode: int, b: int) -> int:
        return mode * width + b

    def options(need: int) -> list[int]:
        if marked is not None and need > 0:
            return [flag(0, need + 1), flag(1, need)]
        return [flag(0, need)]

    layers, order = [], []
    prev_opts = [flag(0, 0)]
    for _, need, members in _mirrored(inst):
        for pos, i in enumerate(members):
            rules: Rules = {}
            for mode in range(modes):
                can_pick = not (mode == 1 and marked[i])
                for b in range(width):
                    opts: list[tuple[int, bool]] = []
                    if pos == 0:
                        if b <= 1 and can_pick:
                            opts += [(o, True) for o in prev_opts]
                        if b == 0:
                            opts += [(o, False) for o in prev_opts]
                    else:
                        if can_pick:
                            opts.append((flag(mode, max(b - 1, 0)), True))
                        opts.append((flag(mode, b), False))
                    if opts:
                        rules[flag(mode, b)] = opts
            layers.append(_Layer(_decrement(codes, digits, radix, inst.family[i]), None, rules))
            order.append(i)
        prev_opts = options(need)
    best, chosen, states = _run(layers, modes * width, len(codes), target, prev_opts)
    return _finish(inst, best, chosen, order, states)


__all__ = [
    "BlockMode",
    "CoverMode",
    "CoverInstance",
    "CoverSolution",
    "cover_satisfied",
    "solve_set_cover",
    "solve_scp",
    "solve_escp",
    "solve_exact_one_scp",
    "solve_wsmp",
    "solve_wsmp_marked",
]
