"""Exact polynomial-time Least Expanding Set solver.

The ratio objective |N(S)|/|S| is minimized by Dinkelbach iteration over the
linearized objective |N(S)| - lambda|S|, each linearization solved exactly as
a minimum s-t cut:

    source -> u   capacity lambda   (for every left vertex u)
    u -> v        capacity +inf     (for every edge)
    v -> sink     capacity 1        (for every right vertex v)

Cutting realizes  min over S of  lambda(n - |S|) + |N(S)|, so the left
vertices on the source side of a minimum cut minimize |N(S)| - lambda|S|.
Rational lambda = a/b is handled by scaling every capacity by b, keeping the
flow problem integral.  Among minimum cuts the unique maximal source side is
returned, which is deterministic and never worse for the ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptyLeftSideError, NegativeLambdaError
from .graph import BipartiteGraph, Solution, induced_left_subgraph, neighborhood
from .maxflow import Dinic


@dataclass(frozen=True)
class CutSelection:
    lam: Fraction
    chosen: tuple[int, ...]
    objective: Fraction  # |N(chosen)| - lam * |chosen|


def min_cut_select(g: BipartiteGraph, lam: Fraction | int) -> CutSelection:
    """Left set minimizing |N(S)| - lam*|S| (maximal among minimizers)."""
    lam = Fraction(lam)
    if lam < 0:
        raise NegativeLambdaError(f"lambda={lam} must be nonnegative")
    a, b = lam.numerator, lam.denominator
    n, n_right = g.n, g.n_right
    source = n + n_right
    sink = source + 1
    ceil_lam = -(-a // b) if a else 1
    inf_cap = (n_right + 1) * max(1, ceil_lam) * b
    net = Dinic(sink + 1)
    for u in range(n):
        net.add_edge(source, u, a)
        for v in g.adj_left[u]:
            net.add_edge(u, n + v, inf_cap)
    for v in range(n_right):
        net.add_edge(n + v, sink, b)
    net.max_flow(source, sink)
    side = net.source_side_max(sink)
    chosen = tuple(sorted(u for u in range(n) if u in side))
    objective = Fraction(len(neighborhood(g, chosen))) - lam * len(chosen)
    return CutSelection(lam=lam, chosen=chosen, objective=objective)


def _isolated_left(g: BipartiteGraph) -> tuple[int, ...]:
    return tuple(u for u in range(g.n) if not g.adj_left[u])


def dinkelbach_trace(
        g: BipartiteGraph) -> tuple[Solution, list[Fraction]]:
    """least_expanding_set plus the (strictly decreasing) lambda sequence."""
    if g.n == 0:
        raise EmptyLeftSideError("graph has no left vertices")
    isolated = _isolated_left(g)
    if isolated:
        return Solution.from_set(g, isolated), [Fraction(0)]
    current = tuple(range(g.n))
    lam = Fraction(len(neighborhood(g, current)), len(current))
    trace = [lam]
    # |N(S)|/|S| takes at most n*n' distinct values and strictly decreases.
    while True:
        cut = min_cut_select(g, lam)
        if cut.objective >= 0 or not cut.chosen:
            return Solution.from_set(g, current), trace
        current = cut.chosen
        lam = Fraction(len(neighborhood(g, current)), len(current))
        trace.append(lam)


def least_expanding_set(g: BipartiteGraph) -> Solution:
    """Nonempty left set with exactly minimal expansion |N(S)|/|S|."""
    return dinkelbach_trace(g)[0]


def least_expanding_subset(
        g: BipartiteGraph,
        allowed: Iterable[int],
        forbidden_right: Iterable[int] = (),
) -> Solution:
    """Least expanding set among subsets of `allowed`, with edges into
    `forbidden_right` deleted before solving.  The returned Solution is
    expressed in the original graph's indices but its neighborhood counts
    exclude the forbidden right vertices."""
    allowed = tuple(sorted(set(allowed)))
    if not allowed:
        raise EmptyLeftSideError("allowed left set is empty")
    forbidden = frozenset(forbidden_right)
    sub, left_ids = induced_left_subgraph(g, allowed, forbidden)
    inner = least_expanding_set(sub)
    chosen = tuple(sorted(left_ids[u] for u in inner.chosen))
    return Solution(chosen=chosen,
                    neighborhood_size=inner.neighborhood_size,
                    expansion=inner.expansion)
