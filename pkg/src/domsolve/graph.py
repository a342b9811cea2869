"""Immutable simple graphs plus the neighbourhood and partition primitives.

Vertex sets are plain ``frozenset[int]`` objects. Internally most routines
also use Python integers as bitmasks (bit ``v`` set means vertex ``v`` is
present), which keeps the exponential-time code paths cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import MalformedInputError, NotClusterGraphError, NotSplitGraphError

VertexSet = frozenset


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    """Vertex ids present in ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    ``adj[v]`` is the strictly ascending tuple of neighbours of ``v``. Two
    graphs are equal iff their vertex counts, adjacency rows and labels are.
    Use :func:`build_graph` rather than calling the constructor directly.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None)

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(row) for row in self.adj)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.nbr_masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr_masks[u] >> v & 1)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        m = mask_of(vs)
        return all(self.closed_masks[v] & m == m for v in vs)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(not (self.nbr_masks[v] & m) for v in bits(m))

    def neighborhood_mask(self, mask: int) -> int:
        """Bitmask of N[mask] (closed neighbourhood of a vertex set)."""
        out = mask
        for v in bits(mask):
            out |= self.nbr_masks[v]
        return out


def build_graph(
    vertex_count: int,
    edges: Iterable[Sequence[int]],
    labels: Sequence[str] | None = None,
) -> Graph:
    """Build a canonical :class:`Graph`; duplicate edges are collapsed.

    Raises :class:`MalformedInputError` on self-loops or endpoints outside
    ``0 .. vertex_count-1``.
    """
    if vertex_count < 0:
        raise MalformedInputError("vertex count must be non-negative")
    rows: list[set[int]] = [set() for _ in range(vertex_count)]
    for e in edges:
        u, v = e
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise MalformedInputError(f"edge ({u}, {v}) has an endpoint out of range")
        if u == v:
            raise MalformedInputError(f"self-loop on vertex {u}")
        rows[u].add(v)
        rows[v].add(u)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != vertex_count:
            raise MalformedInputError("need exactly one label per vertex")
    return Graph(vertex_count, tuple(tuple(sorted(r)) for r in rows), labels)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, relabelled densely in ascending order.

    Returns the subgraph and the list mapping new ids to old ids.
    """
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    return build_graph(len(keep), edges), keep


def closed_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return frozenset(G.adj[v]) | {v}


def open_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return frozenset(G.adj[v])


def closed_set_neighborhood(G: Graph, S: Iterable[int]) -> frozenset[int]:
    return frozenset(bits(G.neighborhood_mask(mask_of(S))))


def n_equal_2_mask(G: Graph, smask: int) -> int:
    closed = G.neighborhood_mask(smask)
    ring = closed & ~smask
    out = 0
    for v in bits(ring):
        out |= G.nbr_masks[v]
    return out & ~closed


def n_equal_2(G: Graph, S: Iterable[int]) -> frozenset[int]:
    """Vertices at distance exactly 2 from the set ``S``."""
    return frozenset(bits(n_equal_2_mask(G, mask_of(S))))


# ---------------------------------------------------------------------------
# cluster graphs


@dataclass(frozen=True)
class ClusterPartition:
    """Cliques of ``G - S`` ordered by their smallest vertex id."""

    cliques: tuple[frozenset[int], ...]


def _components(G: Graph, alive: int) -> list[int]:
    comps = []
    rest = alive
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grown = 0
            for v in bits(frontier):
                grown |= G.nbr_masks[v]
            grown &= alive & ~comp
            comp |= grown
            frontier = grown
        comps.append(comp)
        rest &= ~comp
    return comps


def smallest_induced_p3(G: Graph, alive: int) -> tuple[int, int, int] | None:
    """Lexicographically smallest vertex triple inducing a P3 inside ``alive``.

    Returned in path order ``(end, centre, end)``.
    """
    best: tuple[tuple[int, ...], tuple[int, int, int]] | None = None
    for b in bits(alive):
        nb = bits(G.nbr_masks[b] & alive)
        for i, a in enumerate(nb):
            for c in nb[i + 1:]:
                if not G.has_edge(a, c):
                    key = tuple(sorted((a, b, c)))
                    if best is None or key < best[0]:
                        best = (key, (a, b, c))
    return None if best is None else best[1]


def cluster_partition(G: Graph, S: Iterable[int]) -> ClusterPartition:
    """Partition ``G - S`` into its cliques.

    Raises :class:`NotClusterGraphError` carrying an induced P3 when some
    component of ``G - S`` is not complete.
    """
    alive = G.full_mask & ~mask_of(S)
    cliques = []
    for comp in _components(G, alive):
        if not G.is_clique(bits(comp)):
            witness = smallest_induced_p3(G, comp)
            assert witness is not None
            raise NotClusterGraphError(witness)
        cliques.append(frozenset(bits(comp)))
    # components are discovered from their lowest bit, so this order is
    # already ascending by minimum id; sort anyway to make that explicit
    cliques.sort(key=min)
    return ClusterPartition(tuple(cliques))


def is_cluster(G: Graph, S: Iterable[int] = ()) -> bool:
    try:
        cluster_partition(G, S)
    except NotClusterGraphError:
        return False
    return True


# ---------------------------------------------------------------------------
# split graphs


@dataclass(frozen=True)
class SplitPartition:
    clique_side: frozenset[int]
    independent_side: frozenset[int]


def _induced_shape(G: Graph, vs: tuple[int, ...]) -> str | None:
    m = mask_of(vs)
    degs = [popcount(G.nbr_masks[v] & m) for v in vs]
    edges = sum(degs) // 2
    if len(vs) == 4:
        if edges == 2 and all(d == 1 for d in degs):
            return "2K2"
        if edges == 4 and all(d == 2 for d in degs):
            return "C4"
    elif len(vs) == 5 and edges == 5 and all(d == 2 for d in degs):
        return "C5"
    return None


def smallest_split_obstruction(G: Graph, alive: int) -> tuple[str, tuple[int, ...]] | None:
    """First induced 2K2/C4 (then C5) inside ``alive`` in lexicographic order."""
    vs = bits(alive)
    for size in (4, 5):
        for combo in combinations(vs, size):
            shape = _induced_shape(G, combo)
            if shape is not None:
                return shape, combo
    return None


def split_partition(G: Graph, S: Iterable[int]) -> SplitPartition:
    """A clique/independent partition of ``G - S``.

    Among all partitions whose clique side is a maximum clique, the one with
    the lexicographically smallest (sorted) clique side is returned. Raises
    :class:`NotSplitGraphError` with an induced 2K2, C4 or C5 otherwise.
    """
    alive = G.full_mask & ~mask_of(S)
    vs = bits(alive)
    if not vs:
        return SplitPartition(frozenset(), frozenset())
    deg = {v: popcount(G.nbr_masks[v] & alive) for v in vs}
    order = sorted(vs, key=lambda v: (-deg[v], v))
    top = max(i for i in range(1, len(order) + 1) if deg[order[i - 1]] >= i - 1)
    lhs = sum(deg[v] for v in order[:top])
    rhs = top * (top - 1) + sum(deg[v] for v in order[top:])
    if lhs != rhs:
        found = smallest_split_obstruction(G, alive)
        assert found is not None, "degree test and obstruction search disagree"
        raise NotSplitGraphError(*found)

    clique = order[:top]
    cmask = mask_of(clique)
    imask = alive & ~cmask
    options = [tuple(sorted(clique))]
    # any other maximum clique side swaps exactly one vertex y in C for one x in I
    for x in bits(imask):
        hit = G.nbr_masks[x] & cmask
        if popcount(hit) != top - 1:
            continue
        y = (cmask & ~hit).bit_length() - 1
        if G.nbr_masks[y] & imask & ~(1 << x):
            continue
        options.append(tuple(sorted(set(clique) - {y} | {x})))
    best = min(options)
    C = frozenset(best)
    return SplitPartition(C, frozenset(vs) - C)


def is_split(G: Graph, S: Iterable[int] = ()) -> bool:
    try:
        split_partition(G, S)
    except NotSplitGraphError:
        return False
    return True


def is_edgeless(G: Graph, S: Iterable[int] = ()) -> bool:
    alive = G.full_mask & ~mask_of(S)
    return all(not (G.nbr_masks[v] & alive) for v in bits(alive))
