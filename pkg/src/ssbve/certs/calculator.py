"""Distinguishing-gap exponent calculator for the hypergraph dense-vs-random
regimes, exact in rational arithmetic whenever the inputs permit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..errors import InvalidRegimeError


@dataclass(frozen=True)
class GapExponents:
    regime: str
    r_edge: int
    eps: object  # Fraction or float
    k_exponent: object
    gap_exponent: object

    def as_dict(self) -> dict:
        def show(x):
            return {"value": float(x),
                    "exact": str(x) if isinstance(x, Rational) else None}
        return {"regime": self.regime, "r_edge": self.r_edge,
                "eps": float(self.eps),
                "k_exponent": show(self.k_exponent),
                "gap_exponent": show(self.gap_exponent)}


def hardness_gap_calculator(r_edge: int, eps, regime: str) -> GapExponents:
    """Gap exponents as a function of the number of sets (by_m) or of the
    universe size (by_n).

    by_m: with planted density one epsilon-step below ambient, a subgraph of
    m^(1/2) hyperedges needs k = m^(1/(4-4*eps)) planted vertices versus
    k-hat = m^(1/(2-eps)-1/(2r)) random ones, so the gap exponent is
    1/(2-eps) - 1/(4-4*eps) - 1/(2r).

    by_n: with ambient density sqrt(r)-1 the same comparison at
    k = n^(1/sqrt(r)) gives gap exponent 1 - 2/sqrt(r) + 1/r - eps/r^(3/2).
    """
    if r_edge < 2:
        raise InvalidRegimeError(f"r_edge={r_edge} must be at least 2")
    exact = isinstance(eps, Rational)
    e = Fraction(eps) if exact else float(eps)
    if regime == "by_m":
        if not 0 <= e < Fraction(1, r_edge):
            raise InvalidRegimeError(
                f"by_m needs 0 <= eps < 1/r, got eps={eps}, r={r_edge}")
        one = Fraction(1) if exact else 1.0
        k_exp = one / (4 - 4 * e)
        gap = one / (2 - e) - one / (4 - 4 * e) - one / (2 * r_edge)
        return GapExponents("by_m", r_edge, e, k_exp, gap)
    if regime == "by_n":
        root = math.isqrt(r_edge)
        if exact and root * root == r_edge:
            k_exp = Fraction(1, root)
            gap = (Fraction(1) - Fraction(2, root) + Fraction(1, r_edge)
                   - e / (r_edge * root))
        else:
            sqrt_r = math.sqrt(r_edge)
            k_exp = 1.0 / sqrt_r
            gap = 1.0 - 2.0 / sqrt_r + 1.0 / r_edge - float(e) / (
                r_edge * sqrt_r)
        return GapExponents("by_n", r_edge, e, k_exp, gap)
    raise InvalidRegimeError(f"unknown regime {regime!r}")
