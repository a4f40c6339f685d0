"""Lifted-LP certificate built from cover costs.

Vertices get global ids: left vertices are 0..n-1, right vertices are
n..n+s-1.  For a subset S, write S_U = S intersect U and
S_V = (S intersect V) minus N(S_U).  A cover of S is a pair (T, S') where T
is a tree (containing at least one U vertex when nonempty), S' is a subset
of S_V, and every vertex of S_U union S_V lies in T or S'.  Its cost is
|T intersect U| + |S'|, plus 1 when the tree is nonempty; the +1 is charged
only for nonempty trees, which is the only convention consistent with the
required x_empty = 1 and with the singleton right-vertex value.

The certificate value of a subset is then

    x_S = beta^{|S_U|} * alpha^{|S_V|} * n^(-cost(S)/4)

with alpha = 1/(2(rounds+1)) and beta = alpha^(rounds+1); lifted pair values
x_{S,T} follow by inclusion-exclusion.  When n is a perfect fourth power all
values are exact rationals; otherwise they are 60-digit floats.

Verification at one round scales to large instances through exact
class-based accounting: singleton and pairwise cover costs collapse to a
fixed set of structural classes (adjacency, common-neighbor, and the rare
far-apart pairs, which are routed through the general Steiner search), so
every constraint instance is covered by a handful of exact class
inequalities plus bitset-backed counts.  If any class check fails, the
verifier falls back to explicit per-edge scans, so passing reports never
rest on an unproven shortcut.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import mpmath

from ..errors import BudgetExceededError, NoCoverError, SizeExceededError
from ..graph import BipartiteGraph
from ..rng import stream
from .report import VerifyReport

_INF = float("inf")


# ---------------------------------------------------------------------------
# Global-id graph view and the Steiner subroutine
# ---------------------------------------------------------------------------

class _View:
    """Combined adjacency over global ids with cached bitsets."""

    def __init__(self, g: BipartiteGraph) -> None:
        self.g = g
        self.n = g.n
        self.s = g.n_right
        self.total = g.n + g.n_right
        self.adj: list[tuple[int, ...]] = [
            tuple(n_ + g.n for n_ in g.adj_left[u]) for u in range(g.n)
        ] + [g.adj_right[v] for v in range(g.n_right)]
        self.adj_sets = [frozenset(a) for a in self.adj]
        self._right_masks: list[int] | None = None

    def is_u(self, w: int) -> bool:
        return w < self.n

    def weight(self, w: int) -> int:
        return 1 if w < self.n else 0

    def right_masks(self) -> list[int]:
        if self._right_masks is None:
            self._right_masks = self.g.right_masks()
        return self._right_masks


def _path_ucount(view: _View, a: int, b: int) -> int:
    """Minimum number of U vertices on a path from a to b, endpoints
    included.  Exact tiers for the common cases, 0/1-BFS otherwise."""
    if a == b:
        return view.weight(a)
    au, bu = view.is_u(a), view.is_u(b)
    if au and bu:
        if view.adj_sets[a] & view.adj_sets[b]:
            return 2
    elif au != bu:
        u, v = (a, b) if au else (b, a)
        if v in view.adj_sets[u]:
            return 1
        for mid in view.adj[v]:
            if mid != u and view.adj_sets[mid] & view.adj_sets[u]:
                return 2
    else:
        if view.adj_sets[a] & view.adj_sets[b]:
            return 1
    return _bfs01(view, a, b)


def _bfs01(view: _View, a: int, b: int) -> int:
    dist = [-1] * view.total
    dist[a] = view.weight(a)
    dq = deque([a])
    while dq:
        x = dq.popleft()
        if x == b:
            return dist[x]
        for y in view.adj[x]:
            cost = dist[x] + view.weight(y)
            if dist[y] == -1 or cost < dist[y]:
                dist[y] = cost
                if view.weight(y):
                    dq.append(y)
                else:
                    dq.appendleft(y)
    raise NoCoverError(f"vertices {a} and {b} are disconnected")


def _steiner_ucount(view: _View, terminals: tuple[int, ...]) -> int:
    """Minimum |T intersect U| over trees T containing all terminals and at
    least one U vertex.

    Two or more distinct terminals force a U vertex automatically (V-V edges
    do not exist); a lone V terminal is joined to one neighbor.
    """
    t = len(terminals)
    if t == 0:
        return 0
    if t == 1:
        w = terminals[0]
        if view.is_u(w):
            return 1
        if not view.adj[w]:
            raise NoCoverError(f"right vertex {w} is isolated")
        return 1
    if t == 2:
        return _path_ucount(view, terminals[0], terminals[1])
    return _steiner_dp(view, terminals)


def _steiner_dp(view: _View, terminals: tuple[int, ...]) -> int:
    """Dreyfus-Wagner over terminal subsets with 0/1 node weights."""
    import heapq
    t = len(terminals)
    full = (1 << t) - 1
    big = view.n + 1
    dp = [[big] * view.total for _ in range(full + 1)]
    for i, term in enumerate(terminals):
        dp[1 << i][term] = view.weight(term)
    for mask in range(1, full + 1):
        row = dp[mask]
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:  # each split once
                a, b = dp[sub], dp[other]
                for v in range(view.total):
                    cand = a[v] + b[v] - view.weight(v)
                    if cand < row[v]:
                        row[v] = cand
            sub = (sub - 1) & mask
        # Dijkstra relaxation with node costs.
        heap = [(row[v], v) for v in range(view.total) if row[v] < big]
        heapq.heapify(heap)
        while heap:
            d, x = heapq.heappop(heap)
            if d > row[x]:
                continue
            for y in view.adj[x]:
                nd = d + view.weight(y)
                if nd < row[y]:
                    row[y] = nd
                    heapq.heappush(heap, (nd, y))
    best = min(dp[full])
    if best >= big:
        raise NoCoverError(f"terminals {terminals} are disconnected")
    return best


def cover_cost(g: BipartiteGraph, subset, view: _View | None = None) -> int:
    """Minimum cover cost of a global-id vertex subset (see module docs)."""
    if view is None:
        view = _View(g)
    return _cover_cost(view, frozenset(subset))


def _cover_cost(view: _View, subset: frozenset[int]) -> int:
    s_u = tuple(sorted(w for w in subset if w < view.n))
    nbhd = set()
    for u in s_u:
        nbhd.update(view.adj[u])
    s_v = tuple(sorted(w for w in subset if w >= view.n and w not in nbhd))
    if not s_u and not s_v:
        return 0
    best: int | None = None
    for keep in range(1 << len(s_v)):
        s_prime = [s_v[i] for i in range(len(s_v)) if keep >> i & 1]
        terminals = s_u + tuple(v for v in s_v if v not in s_prime)
        if not terminals:
            cand = len(s_prime)
        else:
            try:
                cand = _steiner_ucount(view, terminals) + len(s_prime) + 1
            except NoCoverError:
                continue
        if best is None or cand < best:
            best = cand
    if best is None:
        raise NoCoverError(f"no cover exists for {sorted(subset)}")
    return best


# ---------------------------------------------------------------------------
# Certificate
# ---------------------------------------------------------------------------

@dataclass
class SaCertificate:
    graph: BipartiteGraph
    rounds: int
    sa_alpha: Fraction
    sa_beta: Fraction
    k: int
    exact: bool          # n is a perfect fourth power
    quarter_root: int    # n^(1/4) when exact
    x_table: dict = field(default_factory=dict)
    cost_table: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.view = _View(self.graph)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def s(self) -> int:
        return self.graph.n_right

    def cost(self, subset: frozenset[int]) -> int:
        got = self.cost_table.get(subset)
        if got is None:
            got = _cover_cost(self.view, subset)
            self.cost_table[subset] = got
        return got

    def split_sizes(self, subset: frozenset[int]) -> tuple[int, int]:
        s_u = [w for w in subset if w < self.n]
        nbhd = set()
        for u in s_u:
            nbhd.update(self.view.adj[u])
        s_v = [w for w in subset if w >= self.n and w not in nbhd]
        return len(s_u), len(s_v)

    def scale(self, cost: int):
        """n^(-cost/4), exact when possible."""
        if self.exact:
            return Fraction(1, self.quarter_root ** cost)
        return mpmath.mpf(self.n) ** (mpmath.mpf(-cost) / 4)

    def x_value(self, subset):
        subset = frozenset(subset)
        if len(subset) > self.rounds + 1:
            raise SizeExceededError(
                f"|S|={len(subset)} exceeds rounds+1={self.rounds + 1}")
        got = self.x_table.get(subset)
        if got is None:
            n_u, n_v = self.split_sizes(subset)
            base = self.sa_beta ** n_u * self.sa_alpha ** n_v
            scale = self.scale(self.cost(subset))
            got = base * scale if self.exact else mpmath.mpf(
                base.numerator) / base.denominator * scale
            self.x_table[subset] = got
        return got

    @property
    def tolerance(self) -> float:
        """0 in exact mode; rounding headroom for the 60-digit float mode."""
        return 0.0 if self.exact else 1e-40

    @property
    def objective(self):
        total = 0
        for v in range(self.s):
            total += self.x_value([self.n + v])
        return total


def build_sa_certificate(g: BipartiteGraph, rounds: int) -> SaCertificate:
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    n = g.n
    alpha = Fraction(1, 2 * (rounds + 1))
    beta = alpha ** (rounds + 1)
    k = max(1, round(beta * math.sqrt(n) / 4))
    root = round(n ** 0.25)
    exact = root ** 4 == n
    if not exact:
        mpmath.mp.dps = max(mpmath.mp.dps, 60)
    return SaCertificate(graph=g, rounds=rounds, sa_alpha=alpha,
                         sa_beta=beta, k=k, exact=exact,
                         quarter_root=root if exact else 0)


def sa_lift_value(cert: SaCertificate, s_set, t_set):
    """x_{S,T} = sum over J subset of T of (-1)^|J| x_{S union J}."""
    s_set = frozenset(s_set)
    t_set = tuple(sorted(set(t_set)))
    if len(s_set) + len(t_set) > cert.rounds + 1:
        raise SizeExceededError(
            f"|S|+|T| = {len(s_set) + len(t_set)} exceeds rounds+1")
    total = 0
    for r in range(len(t_set) + 1):
        for j in combinations(t_set, r):
            term = cert.x_value(s_set | frozenset(j))
            total = total + term if r % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def verify_sa_certificate(cert: SaCertificate, mode: str = "exhaustive",
                          samples: int = 10_000, seed: int = 0,
                          budget: int = 20_000) -> VerifyReport:
    """Check the lifted-LP constraints.

    exhaustive: every constraint at levels |S|+|T| <= rounds, plus sampled
    value-bound checks at level rounds+1.  One-round certificates use the
    exact class-based fast path (any instance size); deeper certificates
    enumerate naively and require sum_j C(n+s, j) <= budget.

    sampled: `samples` random (S,T) pairs across all levels.
    """
    rep = VerifyReport(tolerance=cert.tolerance)
    rep.extra = {
        "kind": "sa",
        "params": {"n": cert.n, "s": cert.s, "k": cert.k,
                   "rounds": cert.rounds,
                   "alpha": float(cert.sa_alpha),
                   "beta": float(cert.sa_beta)},
    }
    x_empty = cert.x_value(frozenset())
    rep.add("x-empty", float(x_empty), 1.0, abs(float(x_empty) - 1.0))

    if mode == "exhaustive":
        if cert.rounds == 1:
            _verify_one_round(cert, rep, samples, seed)
        else:
            total = sum(math.comb(cert.n + cert.s, j)
                        for j in range(cert.rounds + 1))
            if total > budget:
                raise BudgetExceededError(
                    f"exhaustive base-set count {total} exceeds {budget}")
            _verify_naive(cert, rep, samples, seed)
    elif mode == "sampled":
        _verify_sampled(cert, rep, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    objective = cert.objective
    lb = min(cert.k, cert.s) / 2
    rep.extra["objective"] = float(objective)
    if cert.exact:
        rep.extra["objective_exact"] = str(objective)
    rep.extra["combinatorial_lb"] = lb
    rep.extra["gap_ratio"] = lb / float(objective) if objective else _INF
    return rep


def _check_bounds(cert, rep, s_set, t_set, label) -> None:
    val = sa_lift_value(cert, s_set, t_set)
    lo_bad = max(0.0, float(-val))
    hi_bad = max(0.0, float(val) - 1.0)
    rep.add(label, float(val), 1.0, max(lo_bad, hi_bad))


def _verify_naive(cert, rep, samples, seed) -> None:
    """Straight enumeration; only for small instances."""
    everyone = range(cert.n + cert.s)
    us = range(cert.n)
    edges = [(u, cert.n + v) for u, v in cert.graph.edges()]
    k = cert.k
    for level in range(cert.rounds + 1):
        for base in combinations(everyone, level):
            for pick in range(1 << level):
                s_set = frozenset(base[i] for i in range(level)
                                  if pick >> i & 1)
                t_set = frozenset(base[i] for i in range(level)
                                  if not pick >> i & 1)
                x_st = sa_lift_value(cert, s_set, t_set)
                total = 0
                for u in us:
                    total += sa_lift_value(cert, s_set | {u}, t_set)
                rep.add(f"cardinality-{sorted(s_set)}-{sorted(t_set)}",
                        float(total), float(k * x_st),
                        max(0.0, float(k * x_st - total)))
                for u, v in edges:
                    lhs = sa_lift_value(cert, s_set | {v}, t_set)
                    rhs = sa_lift_value(cert, s_set | {u}, t_set)
                    if lhs < rhs:
                        rep.add(f"edge-{u}-{v}-{sorted(s_set)}"
                                f"-{sorted(t_set)}",
                                float(lhs), float(rhs), float(rhs - lhs))
                _check_bounds(cert, rep, s_set, t_set,
                              f"bounds-{sorted(s_set)}-{sorted(t_set)}")
    rep.add("edge-family-violations", 0, 0, 0)
    _sample_top_level_bounds(cert, rep, samples, seed)


def _verify_sampled(cert, rep, samples, seed) -> None:
    rng = stream(seed, 0x5341)
    total_v = cert.n + cert.s
    k = cert.k
    us = range(cert.n)
    for i in range(samples):
        level = rng.randrange(cert.rounds + 2)
        members = rng.sample_range(total_v, min(level, total_v))
        split = [rng.bernoulli(0.5) for _ in members]
        s_set = frozenset(m for m, inc in zip(members, split) if inc)
        t_set = frozenset(m for m, inc in zip(members, split) if not inc)
        _check_bounds(cert, rep, s_set, t_set, f"bounds-sample-{i}")
        if len(members) <= cert.rounds:
            x_st = sa_lift_value(cert, s_set, t_set)
            total = sum(sa_lift_value(cert, s_set | {u}, t_set) for u in us)
            rep.add(f"cardinality-sample-{i}", float(total), float(k * x_st),
                    max(0.0, float(k * x_st - total)))
            u = rng.randrange(cert.n)
            if cert.graph.adj_left[u]:
                v = cert.n + cert.graph.adj_left[u][
                    rng.randrange(len(cert.graph.adj_left[u]))]
                lhs = sa_lift_value(cert, s_set | {v}, t_set)
                rhs = sa_lift_value(cert, s_set | {u}, t_set)
                rep.add(f"edge-sample-{i}", float(lhs), float(rhs),
                        max(0.0, float(rhs - lhs)))


def _sample_top_level_bounds(cert, rep, samples, seed) -> None:
    """Value bounds 0 <= x_{S,T} <= 1 at the top level rounds+1, sampled."""
    rng = stream(seed, 0x544F)
    total_v = cert.n + cert.s
    level = cert.rounds + 1
    violations = 0
    worst = 0.0
    for _ in range(samples):
        members = rng.sample_range(total_v, min(level, total_v))
        split = [rng.bernoulli(0.5) for _ in members]
        s_set = frozenset(m for m, inc in zip(members, split) if inc)
        t_set = frozenset(m for m, inc in zip(members, split) if not inc)
        val = sa_lift_value(cert, s_set, t_set)
        bad = max(0.0, float(-val), float(val) - 1.0)
        if bad > 0:
            violations += 1
            worst = max(worst, bad)
    rep.add("bounds-top-level-sampled", violations, 0, worst)
    rep.extra["top_level_samples"] = samples


# ---------------------------------------------------------------------------
# One-round exact fast path
# ---------------------------------------------------------------------------

def _pair_cost_uu(cert, u1: int, u2: int) -> int:
    """cover cost of {u1, u2}: 3 with a common neighbor, else general."""
    view = cert.view
    if view.adj_sets[u1] & view.adj_sets[u2]:
        return 3
    return cert.cost(frozenset((u1, u2)))


def _verify_one_round(cert, rep, samples, seed) -> None:
    """Exact verification of every level-0/1 constraint via structural cover
    classes; falls back to explicit scans when a class inequality fails."""
    view = cert.view
    n, s, k = cert.n, cert.s, cert.k
    alpha, beta = cert.sa_alpha, cert.sa_beta
    one = Fraction(1) if cert.exact else mpmath.mpf(1)

    # Singleton values, computed per vertex through the cover machinery.
    xu = [cert.x_value([u]) for u in range(n)]
    xv = [cert.x_value([n + v]) for v in range(s)]
    xu0, xv0 = xu[0], xv[0]
    uniform = all(x == xu0 for x in xu) and all(x == xv0 for x in xv)
    rep.add_exact("singleton-uniform", uniform, 1, 1)

    q = cert.scale(1)
    # Structural pair classes (each is a theorem about covers on bipartite
    # graphs; the uu far-apart class routes through the general search).
    x_uv_adj = beta * q ** 2
    x_uv_non = beta * alpha * q ** 3
    x_vv = alpha * alpha * q ** 2
    x_uu_near = beta * beta * q ** 3

    # --- Cardinality constraints -----------------------------------------
    sum_xu = sum(xu)
    rep.add("cardinality--", float(sum_xu), float(k),
            max(0.0, float(k - sum_xu)))

    # Bitset machinery for per-left-vertex pair sums.
    right_masks = view.right_masks()
    all_u_mask = (1 << n) - 1
    pair_sums_u: list = [None] * n
    for w in range(n):
        mask = 0
        for v in cert.graph.adj_left[w]:
            mask |= right_masks[v]
        mask_others = mask & ~(1 << w)
        c_near = mask_others.bit_count()
        far = all_u_mask & ~mask_others & ~(1 << w)
        total = xu[w] + c_near * x_uu_near
        m = far
        while m:
            low = m & (-m)
            u2 = low.bit_length() - 1
            cost = _pair_cost_uu(cert, w, u2)
            total += beta * beta * cert.scale(cost)
            m ^= low
        pair_sums_u[w] = total
        lhs = total
        rhs = k * xu[w]
        rep.add(f"cardinality-u{w}", float(lhs), float(rhs),
                max(0.0, float(rhs - lhs)))

    pair_sums_v: list = [None] * s
    for w in range(s):
        deg = cert.graph.degree_right(w)
        total = deg * x_uv_adj + (n - deg) * x_uv_non
        pair_sums_v[w] = total
        rhs = k * xv[w]
        rep.add(f"cardinality-v{w}", float(total), float(rhs),
                max(0.0, float(rhs - total)))

    # (S, T) = (empty, {w}): sum_u (x_u - x_{u,w}) >= k (1 - x_w).
    for w in range(n):
        lhs = sum_xu - pair_sums_u[w]
        rhs = k * (one - xu[w])
        rep.add(f"cardinality-tu{w}", float(lhs), float(rhs),
                max(0.0, float(rhs - lhs)))
    for w in range(s):
        lhs = sum_xu - pair_sums_v[w]
        rhs = k * (one - xv[w])
        rep.add(f"cardinality-tv{w}", float(lhs), float(rhs),
                max(0.0, float(rhs - lhs)))

    # --- Edge constraints --------------------------------------------------
    # Class inequalities; each covers a family of constraint instances whose
    # left side is the class minimum and right side the class maximum.
    checks = [
        ("edges-base", xv0, xu0),
        # S = {w in V}: (v=w) alpha*q >= beta*q^2; (u in N(w)) alpha^2 q^2 >=
        # beta q^2; else alpha^2 q^2 >= alpha*beta*q^3.
        ("edges-sv-guess-at-v", xv0, x_uv_adj),
        ("edges-sv-adj", x_vv, x_uv_adj),
        ("edges-sv-non", x_vv, x_uv_non),
        # S = {w in U}: (u'=w) equality; (v in N(w)) beta q^2 >= beta^2 q^3;
        # else alpha*beta*q^3 >= beta^2 q^3.
        ("edges-su-self", x_uv_adj, x_uv_adj),
        ("edges-su-adj", x_uv_adj, x_uu_near),
        ("edges-su-non", x_uv_non, x_uu_near),
        # T = {w in V}: (v=w) 0 >= 0 by the forced equality x_{u,w} = x_u on
        # edges; else lhs >= x_v - x_vv lower bound, rhs <= x_u.
        ("edges-tv", xv0 - x_vv, xu0),
        ("edges-tv-self", x_uv_adj, xu0),
        # T = {w in U}: lhs >= min over v-classes, rhs <= x_u.
        ("edges-tu-adj", xv0 - x_uv_adj, xu0),
        ("edges-tu-non", xv0 - x_uv_non, xu0),
    ]
    class_ok = uniform
    for name, lhs, rhs in checks:
        ok = lhs >= rhs
        class_ok = class_ok and ok
        rep.add(name, float(lhs), float(rhs), 0.0 if ok else float(rhs - lhs))
    # The far-apart uu class only shrinks right-hand sides (cost >= 4), and
    # x_{u,w} <= x_u needs cost monotonicity, which holds by cover
    # restriction; so if every class check passed, all level-1 edge
    # constraints hold.  Otherwise rescan explicitly.
    if not class_ok:
        _edge_scan_explicit(cert, rep)
    rep.add("edge-family-mode", 0 if class_ok else 1, 0, 0)

    # Bounds at level <= 1 are implied by 0 <= x_w <= 1 for all w.
    bad = sum(1 for x in xu + xv if not 0 <= x <= 1)
    rep.add("bounds-level1", bad, 0, bad)

    _sample_top_level_bounds(cert, rep, samples, seed)


def _edge_scan_explicit(cert, rep) -> None:
    """Fallback: check every level-<=1 edge constraint literally."""
    n, s = cert.n, cert.s
    edges = [(u, cert.n + v) for u, v in cert.graph.edges()]
    contexts = [(frozenset(), frozenset())]
    contexts += [({w}, frozenset()) for w in range(n + s)]
    contexts += [(frozenset(), {w}) for w in range(n + s)]
    worst = 0.0
    count = 0
    for s_set, t_set in contexts:
        s_set, t_set = frozenset(s_set), frozenset(t_set)
        for u, v in edges:
            lhs = sa_lift_value(cert, s_set | {v}, t_set)
            rhs = sa_lift_value(cert, s_set | {u}, t_set)
            if lhs < rhs:
                count += 1
                worst = max(worst, float(rhs - lhs))
    rep.add("edge-family-explicit", count, 0, worst)


# ---------------------------------------------------------------------------
# Decay/saturation property samples
# ---------------------------------------------------------------------------

def sample_property_checks(cert: SaCertificate, n_samples: int,
                           seed: int = 0) -> VerifyReport:
    """Sampled checks of the certificate's structural properties: decay when
    adding non-forced vertices, saturation on forced ones, vanishing lifts
    on neighbor-hitting pairs, the two-sided lift bounds, and the
    left-vertex growth floor."""
    rep = VerifyReport(tolerance=cert.tolerance)
    tol = cert.tolerance
    rng = stream(seed, 0x434C)
    view = cert.view
    n, s, r = cert.n, cert.s, cert.rounds
    total_v = n + s
    alpha, beta = cert.sa_alpha, cert.sa_beta
    half = Fraction(1, 2) if cert.exact else mpmath.mpf("0.5")
    growth_floor = (beta * cert.scale(2) if cert.exact
                    else mpmath.mpf(beta.numerator) / beta.denominator
                    * cert.scale(2))
    counts = {"decay": 0, "saturate": 0, "lift-zero": 0, "lift-range": 0,
              "growth": 0}
    fails = dict.fromkeys(counts, 0)

    def rand_set(max_size: int) -> frozenset[int]:
        size = rng.randrange(max_size + 1)
        return frozenset(rng.sample_range(total_v, size))

    for _ in range(n_samples):
        which = rng.randrange(5)
        if which == 0:  # decay: w not in N(S_U), w not in S
            s_set = rand_set(r)
            w = rng.randrange(total_v)
            nb = set()
            for u in s_set:
                if u < n:
                    nb.update(view.adj[u])
            if w in s_set or w in nb:
                continue
            counts["decay"] += 1
            if not (cert.x_value(s_set | {w})
                    <= alpha * cert.x_value(s_set) + tol):
                fails["decay"] += 1
        elif which == 1:  # saturation: w in N(S_U)
            u = rng.randrange(n)
            if not view.adj[u]:
                continue
            s_set = rand_set(r - 1) | {u}
            if len(s_set) > r:
                continue
            w = view.adj[u][rng.randrange(len(view.adj[u]))]
            if w in s_set:
                continue
            counts["saturate"] += 1
            if abs(cert.x_value(s_set | {w})
                   - cert.x_value(s_set)) > tol:
                fails["saturate"] += 1
        elif which == 2:  # lift vanishes when T hits N(S)
            u = rng.randrange(n)
            if not view.adj[u]:
                continue
            w = view.adj[u][rng.randrange(len(view.adj[u]))]
            t_extra = rand_set(r - 1)
            t_set = frozenset({w}) | t_extra
            if len(t_set) + 1 > r + 1 or u in t_set:
                continue
            counts["lift-zero"] += 1
            if abs(sa_lift_value(cert, {u}, t_set)) > tol:
                fails["lift-zero"] += 1
        elif which == 3:  # disjoint lift range
            s_set = rand_set(r)
            t_size = rng.randrange(r + 2 - len(s_set))
            t_set = frozenset(rng.sample_range(total_v, t_size))
            nb = set()
            for u in s_set:
                if u < n:
                    nb.update(view.adj[u])
            if s_set & t_set or t_set & nb:
                continue
            counts["lift-range"] += 1
            val = sa_lift_value(cert, s_set, t_set)
            x_s = cert.x_value(s_set)
            if not (half * x_s - tol <= val <= x_s + tol):
                fails["lift-range"] += 1
        else:  # growth floor: adding a left vertex
            s_set = rand_set(r)
            u = rng.randrange(n)
            if u in s_set:
                continue
            counts["growth"] += 1
            if not (cert.x_value(s_set | {u})
                    >= growth_floor * cert.x_value(s_set) - tol):
                fails["growth"] += 1
    for name in counts:
        rep.add(f"property-{name}", fails[name], 0, fails[name])
        rep.extra[f"samples_{name}"] = counts[name]
    return rep
