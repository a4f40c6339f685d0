"""Bipartite graph and set-system substrate, expansion arithmetic, and the
problem-equivalence reductions (set systems <-> bipartite graphs, and the
union variant of small-set vertex expansion on general graphs).

Vertices are dense 0-indexed integers on each side.  All values are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CliqueTooSmallError, EmptySetError, InvalidBudgetError


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with left part of size n and right part of size n_right.

    adj_left[u] / adj_right[v] are sorted duplicate-free tuples; the two views
    always describe the same edge set.
    """

    n: int
    n_right: int
    adj_left: tuple[tuple[int, ...], ...]
    adj_right: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, n_right: int,
                   edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Build both adjacency views; duplicate edges are collapsed."""
        left: list[set[int]] = [set() for _ in range(n)]
        right: list[set[int]] = [set() for _ in range(n_right)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n_right):
                raise IndexError(f"edge ({u},{v}) out of range for {n}x{n_right}")
            left[u].add(v)
            right[v].add(u)
        return cls(
            n=n,
            n_right=n_right,
            adj_left=tuple(tuple(sorted(s)) for s in left),
            adj_right=tuple(tuple(sorted(s)) for s in right),
        )

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj_left[u]]

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj_left)

    def degree_left(self, u: int) -> int:
        return len(self.adj_left[u])

    def degree_right(self, v: int) -> int:
        return len(self.adj_right[v])

    def left_masks(self) -> list[int]:
        """Per-left-vertex neighbor bitmask (bit v set iff (u,v) is an edge)."""
        return [_mask(a) for a in self.adj_left]

    def right_masks(self) -> list[int]:
        return [_mask(a) for a in self.adj_right]

    def validate(self) -> None:
        """Check the symmetry / dedup / range invariants; raises on violation."""
        seen = set()
        for u, nbrs in enumerate(self.adj_left):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"adj_left[{u}] not sorted duplicate-free")
            for v in nbrs:
                if not 0 <= v < self.n_right:
                    raise ValueError(f"right index {v} out of range")
                seen.add((u, v))
        count = 0
        for v, nbrs in enumerate(self.adj_right):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"adj_right[{v}] not sorted duplicate-free")
            for u in nbrs:
                if (u, v) not in seen:
                    raise ValueError(f"asymmetric edge ({u},{v})")
                count += 1
        if count != len(seen):
            raise ValueError("adjacency views disagree on the edge set")


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Hypergraph:
    """Set system over a universe of n_elements; sets may repeat."""

    n_elements: int
    sets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_sets(cls, n_elements: int,
                  sets: Iterable[Iterable[int]]) -> "Hypergraph":
        normalized = []
        for s in sets:
            t = tuple(sorted(set(s)))
            for e in t:
                if not 0 <= e < n_elements:
                    raise IndexError(f"element {e} out of range")
            normalized.append(t)
        return cls(n_elements=n_elements, sets=tuple(normalized))


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph on n vertices."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int,
                   edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise IndexError(f"edge ({a},{b}) out of range")
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(n=n, adj=tuple(tuple(sorted(s)) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in self.adj[a] if a < b]

    def open_neighborhood(self, s: Iterable[int]) -> set[int]:
        """Union of neighbors of s; may intersect s, never restricted to it."""
        out: set[int] = set()
        for a in s:
            out.update(self.adj[a])
        return out


@dataclass(frozen=True)
class SsbveInstance:
    graph: BipartiteGraph
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.graph.n:
            raise InvalidBudgetError(
                f"budget k={self.k} outside [1, {self.graph.n}]")


@dataclass(frozen=True)
class Solution:
    """A chosen left set with its exact neighborhood size and expansion."""

    chosen: tuple[int, ...]
    neighborhood_size: int
    expansion: Fraction

    @classmethod
    def from_set(cls, g: BipartiteGraph, s: Iterable[int]) -> "Solution":
        chosen = tuple(sorted(set(s)))
        if not chosen:
            raise EmptySetError("solution set is empty")
        size = len(neighborhood(g, chosen))
        return cls(chosen=chosen,
                   neighborhood_size=size,
                   expansion=Fraction(size, len(chosen)))

    def sort_key(self) -> tuple:
        """Deterministic comparison key: expansion, then |N|, then lex set."""
        return (self.expansion, self.neighborhood_size, self.chosen)


def neighborhood(g: BipartiteGraph, s: Iterable[int]) -> set[int]:
    """Union of adj_left over s (the right-side neighborhood N(S))."""
    out: set[int] = set()
    for u in s:
        out.update(g.adj_left[u])
    return out


def expansion(g: BipartiteGraph, s: Sequence[int] | set[int]) -> Fraction:
    """Exact |N(s)| / |s|; raises EmptySetError on empty s."""
    s = list(s)
    if not s:
        raise EmptySetError("expansion of the empty set is undefined")
    return Fraction(len(neighborhood(g, s)), len(s))


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

def mku_to_ssbve(h: Hypergraph, k: int) -> SsbveInstance:
    """Membership bipartite graph: one left vertex per set, one right vertex
    per element, an edge for each (set, member) pair.  Unions of set
    collections become neighborhoods of the corresponding left subsets."""
    m = len(h.sets)
    if not 1 <= k <= m:
        raise InvalidBudgetError(f"k={k} outside [1, {m}]")
    edges = [(i, e) for i, s in enumerate(h.sets) for e in s]
    return SsbveInstance(
        graph=BipartiteGraph.from_edges(m, h.n_elements, edges), k=k)


def ssbve_to_mku(inst: SsbveInstance) -> tuple[Hypergraph, int]:
    """Inverse view: each left vertex's neighbor list becomes a set."""
    g = inst.graph
    return (Hypergraph(n_elements=g.n_right, sets=tuple(g.adj_left)), inst.k)


def ssveu_to_ssbve(g: UndirectedGraph, k: int) -> SsbveInstance:
    """Two copies of the vertex set; (u_left, v_right) iff {u,v} is an edge.
    Left-subset neighborhoods coincide with open neighborhoods in g."""
    edges = [(a, b) for a in range(g.n) for b in g.adj[a]]
    return SsbveInstance(
        graph=BipartiteGraph.from_edges(g.n, g.n, edges), k=k)


def ssbve_to_ssveu(inst: SsbveInstance,
                   clique_size: int | None = None) -> UndirectedGraph:
    """Disjoint U + V + clique C with the original edges plus all V-C edges.

    The clique must be strictly larger than n + n' so that touching it is
    never profitable; the default is the smallest such size.
    """
    g = inst.graph
    if clique_size is None:
        clique_size = g.n + g.n_right + 1
    if clique_size <= g.n + g.n_right:
        raise CliqueTooSmallError(
            f"clique_size={clique_size} must exceed n+n'={g.n + g.n_right}")
    n_total = g.n + g.n_right + clique_size
    v_off = g.n
    c_off = g.n + g.n_right
    edges: list[tuple[int, int]] = [(u, v_off + v) for u, v in g.edges()]
    clique = list(range(c_off, n_total))
    for i, a in enumerate(clique):
        for b in clique[i + 1:]:
            edges.append((a, b))
    for v in range(g.n_right):
        for c in clique:
            edges.append((v_off + v, c))
    return UndirectedGraph.from_edges(n_total, edges)


# ---------------------------------------------------------------------------
# Subgraph helpers shared by the solvers
# ---------------------------------------------------------------------------

def induced_left_subgraph(
        g: BipartiteGraph, left_ids: Sequence[int],
        forbidden_right: set[int] | frozenset[int] = frozenset(),
) -> tuple[BipartiteGraph, tuple[int, ...]]:
    """Subgraph on the given left vertices with edges into forbidden_right
    removed; the right side keeps its indexing.  Returns (graph, left_ids)
    where left_ids maps new left indices back to the originals."""
    left_ids = tuple(sorted(set(left_ids)))
    edges = []
    for new_u, u in enumerate(left_ids):
        for v in g.adj_left[u]:
            if v not in forbidden_right:
                edges.append((new_u, v))
    sub = BipartiteGraph.from_edges(len(left_ids), g.n_right, edges)
    return sub, left_ids
