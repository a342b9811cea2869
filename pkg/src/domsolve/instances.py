"""Instance generators, hardness reductions and the text formats.

Instance files are line oriented ASCII with LF line endings and 0-based
vertex ids::

    p domvar <variant> <kind> <n> <m> <k> <l> <r>
    # provenance <free text>
    # label <v> <text>
    e <u> <v>
    m <v>

``m`` in the header is the number of edge lines, ``k`` the number of
modulator lines and ``l`` the budget (``-1`` for none). Other ``#`` lines
are comments. The provenance and label comments are optional and survive a
parse/serialize round trip.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractError, InstanceSyntaxError, MalformedInputError, ModulatorMismatchError
from .graph import build_graph
from .modulator import Kind, Modulator, verify_modulator
from .oracle import check_solution
from .problem import DomInstance, DomSolution, Status, Variant, VariantSpec

# ---------------------------------------------------------------------------
# planted instances


def gen_planted(
    seed: int,
    kind: Kind | str,
    params: Sequence[int],
    k: int,
    p: float = 0.5,
    variant: Variant | str = Variant.DS,
    r: int = 1,
    budget: int | None = None,
    p_modulator: float | None = None,
    shuffle: bool = True,
) -> DomInstance:
    """Random graph with a planted modulator of size ``k``.

    For CVD, ``params`` lists clique sizes; for SVD it is ``(|C|, |I|)`` and
    clique-to-independent edges appear with probability ``p``. Each
    modulator vertex is joined to each base vertex with probability ``p``
    and to each other modulator vertex with probability ``p_modulator``
    (default ``p``). With ``shuffle`` the vertex ids are randomly permuted.
    """
    kind = Kind(kind) if isinstance(kind, str) else kind
    if k < 0 or any(x < 0 for x in params):
        raise ValueError("sizes must be non-negative")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    if kind is Kind.CVD:
        base = 0
        for size in params:
            edges += [(base + a, base + b) for a in range(size) for b in range(a + 1, size)]
            base += size
    elif kind is Kind.SVD:
        c, i = params
        edges += [(a, b) for a in range(c) for b in range(a + 1, c)]
        edges += [(a, c + b) for a in range(c) for b in range(i) if rng.random() < p]
        base = c + i
    else:
        raise ValueError("planted generator supports CVD and SVD only")
    pm = p if p_modulator is None else p_modulator
    mod = list(range(base, base + k))
    for s in mod:
        edges += [(v, s) for v in range(base) if rng.random() < p]
    edges += [(s, t) for s in mod for t in mod if s < t and rng.random() < pm]
    n = base + k
    perm = list(range(n))
    if shuffle:
        rng.shuffle(perm)
    G = build_graph(n, [(perm[u], perm[v]) for u, v in edges])
    M = Modulator(kind, [perm[s] for s in mod])
    prov = f"planted seed={seed} kind={kind.value} params={','.join(map(str, params))} k={k} p={p}"
    if p_modulator is not None:
        prov += f" pm={p_modulator}"
    return DomInstance(G, M, variant, budget, r, prov)


# ---------------------------------------------------------------------------
# set cover -> domination on a split graph


def reduce_setcover_to_split(
    universe_size: int,
    family: Sequence[Iterable[int]],
    ell: int,
    variant: Variant | str = Variant.DS,
) -> DomInstance:
    """Element vertices form an independent set, set vertices a clique.

    Element ``u`` (vertex ``u``) is joined to set ``j`` (vertex
    ``universe_size + j``) iff ``u`` lies in that set. The element side is
    recorded as a cluster modulator. For ``ell >= 2`` the family has a cover
    of size at most ``ell`` iff the graph has a dominating set, a dominating
    clique or a total dominating set of that size.

    Every element must lie in some set: an uncovered element becomes an
    isolated vertex and the equivalence breaks for plain domination.
    """
    if ell < 2:
        raise ContractError("the construction needs a budget of at least 2")
    family = [frozenset(s) for s in family]
    if universe_size <= 0 or not family:
        raise ContractError("need a non-empty universe and a non-empty family")
    if any(not 0 <= u < universe_size for s in family for u in s):
        raise ContractError("set contains an element outside the universe")
    if set().union(*family) != set(range(universe_size)):
        raise ContractError("every element must belong to at least one set")
    m = len(family)
    edges = [(universe_size + a, universe_size + b) for a in range(m) for b in range(a + 1, m)]
    edges += [(u, universe_size + j) for j, s in enumerate(family) for u in sorted(s)]
    labels = [f"u{u}" for u in range(universe_size)] + [f"S{j}" for j in range(m)]
    G = build_graph(universe_size + m, edges, labels)
    return DomInstance(
        G, Modulator(Kind.CVD, range(universe_size)), variant, ell, 1, "setcover-to-split"
    )


# ---------------------------------------------------------------------------
# 3-CNF -> EDS with a vertex cover modulator


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are lists of non-zero signed variable indices in 1..n."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, clauses: Iterable[Iterable[int]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in clauses))
        for c in self.clauses:
            if not c:
                raise ContractError("empty clause")
            if len(c) > 3:
                raise ContractError(f"clause {c} has more than three literals")
            if any(lit == 0 or abs(lit) > n for lit in c):
                raise ContractError(f"clause {c} mentions a variable outside 1..{n}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(x) - 1] == (x > 0) for x in c) for c in self.clauses)

    def satisfiable(self) -> bool:
        """Decide by trying all 2^n assignments."""
        return any(
            self.satisfied_by([bool(a >> i & 1) for i in range(self.n)]) for a in range(1 << self.n)
        )


GADGET = ("c1", "c2", "c3", "d0", "d1", "d2", "d3", "d12", "d23", "d13")
_GADGET_EDGES = [
    ("c1", "d1"), ("c1", "d12"), ("c1", "d13"),
    ("c2", "d2"), ("c2", "d12"), ("c2", "d23"),
    ("c3", "d3"), ("c3", "d23"), ("c3", "d13"),
]  # fmt: skip
_GADGET_CLIQUE = ("d0", "d1", "d2", "d3", "d12", "d23", "d13")
_GADGET_COVER = ("d1", "d2", "d3", "d12", "d23", "d13")


def reduce_3sat_to_eds(phi: CnfFormula) -> DomInstance:
    """EDS instance that has a solution of size n + m iff ``phi`` is satisfiable.

    Variable i gets the adjacent pair ``x{i}``, ``~x{i}``. Each clause gets
    ten gadget vertices; the literal in slot j is joined to the clause's
    ``c{j}``. Clauses with fewer than three literals repeat their last
    literal. The literal vertices and the six ``d`` vertices other than
    ``d0`` of every gadget form the recorded vertex cover.
    """
    n, m = phi.n, len(phi.clauses)
    labels = []
    for i in range(1, n + 1):
        labels += [f"x{i}", f"~x{i}"]
    for j in range(m):
        labels += [f"C{j + 1}.{g}" for g in GADGET]
    at = {name: v for v, name in enumerate(labels)}

    def lit(x: int) -> int:
        return at[f"x{x}"] if x > 0 else at[f"~x{-x}"]

    edges = [(at[f"x{i}"], at[f"~x{i}"]) for i in range(1, n + 1)]
    cover = list(range(2 * n))
    for j, clause in enumerate(phi.clauses):
        slots = list(clause) + [clause[-1]] * (3 - len(clause))
        g = {name: at[f"C{j + 1}.{name}"] for name in GADGET}
        edges += [(g[a], g[b]) for a, b in _GADGET_EDGES]
        edges += [
            (g[a], g[b])
            for x, a in enumerate(_GADGET_CLIQUE)
            for b in _GADGET_CLIQUE[x + 1:]
        ]
        edges += [(lit(x), g[f"c{slot + 1}"]) for slot, x in enumerate(slots)]
        cover += [g[name] for name in _GADGET_COVER]
    G = build_graph(len(labels), edges, labels)
    return DomInstance(G, Modulator(Kind.VC, cover), Variant.EDS, n + m, 1, "3sat-to-eds")


def extract_assignment(reduced: DomInstance, D: Iterable[int]) -> tuple[bool, ...]:
    """Read a truth assignment off an EDS of size n + m of a reduced formula."""
    G = reduced.graph
    D = frozenset(D)
    if G.labels is None:
        raise ContractError("instance carries no gadget labels")
    if not check_solution(G, D, VariantSpec(Variant.EDS)):
        raise ContractError("not an efficient dominating set")
    if reduced.budget is not None and len(D) != reduced.budget:
        raise ContractError(f"expected an EDS of size {reduced.budget}, got {len(D)}")
    positive = {int(lab[1:]): v for v, lab in enumerate(G.labels) if lab.startswith("x")}
    return tuple(positive[i] in D for i in range(1, len(positive) + 1))


# ---------------------------------------------------------------------------
# text formats


def serialize_instance(inst: DomInstance) -> str:
    G = inst.graph
    edges = G.edges()
    budget = -1 if inst.budget is None else inst.budget
    lines = [
        f"p domvar {inst.variant.value} {inst.kind.value} {G.n} {len(edges)} "
        f"{len(inst.S)} {budget} {inst.r}"
    ]
    if inst.provenance is not None:
        lines.append(f"# provenance {inst.provenance}")
    if G.labels is not None:
        lines += [f"# label {v} {lab}" for v, lab in enumerate(G.labels)]
    lines += [f"e {u} {v}" for u, v in edges]
    lines += [f"m {v}" for v in sorted(inst.S)]
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceSyntaxError(lineno, f"expected an integer, got {tok!r}") from None


def parse_instance(text: str) -> DomInstance:
    """Parse and validate an instance; the modulator is checked on load."""
    header = None
    provenance = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    mod: list[int] = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith("# provenance "):
                provenance = line[len("# provenance "):]
            elif line.startswith("# label "):
                parts = line.split(" ", 3)
                if len(parts) != 4:
                    raise InstanceSyntaxError(lineno, "label line needs a vertex and a text")
                labels[_int(parts[2], lineno)] = parts[3]
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise InstanceSyntaxError(lineno, "second header line")
            if len(tok) != 9 or tok[1] != "domvar":
                raise InstanceSyntaxError(lineno, "header must be 'p domvar <variant> <kind> <n> <m> <k> <l> <r>'")
            try:
                variant, kind = Variant(tok[2]), Kind(tok[3])
            except ValueError:
                raise InstanceSyntaxError(lineno, f"unknown variant or kind {tok[2]!r} {tok[3]!r}") from None
            header = (variant, kind, *(_int(t, lineno) for t in tok[4:]))
            continue
        if header is None:
            raise InstanceSyntaxError(lineno, "data before the header")
        if tok[0] == "e" and len(tok) == 3:
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise InstanceSyntaxError(lineno, f"duplicate edge {key}")
            seen_edges.add(key)
            if not (0 <= u < header[2] and 0 <= v < header[2]) or u == v:
                raise InstanceSyntaxError(lineno, f"bad edge ({u}, {v})")
            edges.append((u, v))
        elif tok[0] == "m" and len(tok) == 2:
            v = _int(tok[1], lineno)
            if not 0 <= v < header[2] or v in mod:
                raise InstanceSyntaxError(lineno, f"bad modulator vertex {v}")
            mod.append(v)
        else:
            raise InstanceSyntaxError(lineno, f"unrecognised line {line!r}")
    last = len(lines)
    if header is None:
        raise InstanceSyntaxError(last, "missing header")
    variant, kind, n, m, k, ell, r = header
    if len(edges) != m:
        raise InstanceSyntaxError(last, f"header promises {m} edges, found {len(edges)}")
    if len(mod) != k:
        raise InstanceSyntaxError(last, f"header promises {k} modulator vertices, found {len(mod)}")
    if ell < -1 or r < 1:
        raise InstanceSyntaxError(1, "budget must be >= -1 and threshold >= 1")
    if labels and set(labels) != set(range(n)):
        raise InstanceSyntaxError(last, "labels must be given for every vertex or none")
    try:
        G = build_graph(n, edges, [labels[v] for v in range(n)] if labels else None)
    except MalformedInputError as exc:
        raise InstanceSyntaxError(last, str(exc)) from None
    M = Modulator(kind, mod)
    if not verify_modulator(G, M):
        raise ModulatorMismatchError(f"removing the listed vertices does not leave a {kind.name} residual")
    if variant is Variant.TDS and r != 1:
        raise InstanceSyntaxError(1, "TDS instances must have r = 1")
    return DomInstance(G, M, variant, None if ell == -1 else ell, r, provenance)


def format_solution(sol: DomSolution) -> str:
    if sol.feasible:
        verts = " ".join(str(v) for v in sorted(sol.vertices))
        return f"s FEASIBLE {len(sol.vertices)} : {verts}".rstrip() + "\n"
    return "s INFEASIBLE - :\n"


def parse_solution(text: str) -> DomSolution:
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        tok = head.split()
        if not sep or len(tok) != 3 or tok[0] != "s" or tok[1] not in ("FEASIBLE", "INFEASIBLE"):
            raise InstanceSyntaxError(lineno, "expected 's <status> <size> : v1 v2 ...'")
        if tok[1] == "INFEASIBLE":
            return DomSolution(Status.INFEASIBLE)
        verts = [_int(t, lineno) for t in tail.split()]
        if _int(tok[2], lineno) != len(verts) or len(set(verts)) != len(verts):
            raise InstanceSyntaxError(lineno, "size does not match the listed vertices")
        return DomSolution(Status.FEASIBLE, frozenset(verts))
    raise InstanceSyntaxError(1, "no solution line")


__all__ = [
    "gen_planted",
    "reduce_setcover_to_split",
    "CnfFormula",
    "reduce_3sat_to_eds",
    "extract_assignment",
    "serialize_instance",
    "parse_instance",
    "format_solution",
    "parse_solution",
]
