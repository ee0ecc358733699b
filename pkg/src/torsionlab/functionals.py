"""The scale-free perimeter-torsion functional and its bounds.

F_q = P * T^q / V^{alpha_q} with alpha_q = 1 + q + (2q-1)/d is invariant
under dilations. This module collects the exponent, the functional, and all
closed-form constants: the isoperimetric and Saint-Venant ratios, the Polya
lower bound, the convex upper/lower bound constants, the reverse-Hoelder
moment constant for concave functions, and the conjectured supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import unit_ball_volume

__all__ = [
    "ShapeMeasures",
    "BoundReport",
    "alpha_q",
    "f_q",
    "ball_measures",
    "ball_f_q",
    "polya_torsion_lower",
    "f_half_bounds",
    "f_q_bounds",
    "borell_constant",
    "ratio_checks",
]


@dataclass(frozen=True)
class ShapeMeasures:
    """The (P, T, V) triple of a shape, with the torsion error carried along."""

    d: int
    perimeter: float
    torsion: float
    volume: float
    torsion_error: float = 0.0

    def __post_init__(self):
        if min(self.perimeter, self.torsion, self.volume) <= 0:
            raise ValueError("perimeter, torsion and volume must be positive")
        if self.torsion_error < 0:
            raise ValueError("torsion_error must be nonnegative")

    def scaled(self, t: float) -> "ShapeMeasures":
        d = self.d
        return ShapeMeasures(
            d=d,
            perimeter=self.perimeter * t ** (d - 1),
            torsion=self.torsion * t ** (d + 2),
            volume=self.volume * t ** d,
            torsion_error=self.torsion_error * t ** (d + 2),
        )


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one inequality check; margin > 0 means strictly inside the bound."""

    name: str
    value: float
    bound: float
    satisfied: bool
    margin: float

    def csv_row(self) -> str:
        return (
            f"{self.name},{self.value:.12g},{self.bound:.12g},"
            f"{str(self.satisfied).lower()},{self.margin:.12g}"
        )


CSV_HEADER = "name,value,bound,satisfied,margin"


def alpha_q(q: float, d: int) -> float:
    """Dilation-neutralizing exponent 1 + q + (2q-1)/d."""
    if q <= 0 or d < 2:
        raise ValueError("need q > 0 and d >= 2")
    return 1.0 + q + (2.0 * q - 1.0) / d


def f_q(m: ShapeMeasures, q: float) -> float:
    """P * T^q / V^{alpha_q}."""
    return m.perimeter * m.torsion ** q / m.volume ** alpha_q(q, m.d)


def ball_measures(d: int, r: float = 1.0) -> ShapeMeasures:
    """Exact (P, T, V) of a d-ball of radius r."""
    w = unit_ball_volume(d)
    return ShapeMeasures(
        d=d,
        perimeter=d * w * r ** (d - 1),
        torsion=w / (d * (d + 2)) * r ** (d + 2),
        volume=w * r ** d,
    )


def ball_f_q(d: int, q: float) -> float:
    """Closed form of F_q on any ball: d * omega_d^{(1-2q)/d} * (d(d+2))^{-q}."""
    return d * unit_ball_volume(d) ** ((1.0 - 2.0 * q) / d) * (d * (d + 2)) ** (-q)


def polya_torsion_lower(m: ShapeMeasures, tol: float = 0.0) -> BoundReport:
    """Convex lower bound T >= V^3 / (3 P^2)."""
    bound = m.volume ** 3 / (3.0 * m.perimeter ** 2)
    slack = tol + m.torsion_error
    margin = m.torsion - bound
    return BoundReport(
        name="polya_torsion_lower",
        value=m.torsion,
        bound=bound,
        satisfied=margin >= -slack,
        margin=margin,
    )


def f_half_bounds(d: int):
    """(lower, upper, conjecture) for F_{1/2} on convex bodies in dimension d."""
    if d < 2:
        raise ValueError("need d >= 2")
    lower = 3.0 ** -0.5
    upper = 2.0 ** d * d ** (1.5 * d) / unit_ball_volume(d) * math.sqrt(d / (d + 2.0))
    conjecture = d * math.sqrt(2.0 / ((d + 1.0) * (d + 2.0)))
    return lower, upper, conjecture


def f_q_bounds(q: float, d: int):
    """Convex-class constants (lower for q <= 1/2, upper for q >= 1/2).

    Returns (lower, upper); the side not covered at this q is None.
    """
    if q <= 0 or d < 2:
        raise ValueError("need q > 0 and d >= 2")
    w = unit_ball_volume(d)
    lower = upper = None
    if q <= 0.5:
        lower = 3.0 ** -0.5 * (d * (d + 2.0)) ** (0.5 - q) * w ** ((1.0 - 2.0 * q) / d)
    if q >= 0.5:
        upper = (
            2.0 ** d
            * d ** (1.5 * d - q + 1.0)
            / ((d + 2.0) ** q * w ** (1.0 + (2.0 * q - 1.0) / d))
        )
    return lower, upper


def _log_binomial(n: float, k: float) -> float:
    return math.lgamma(n + 1.0) - math.lgamma(k + 1.0) - math.lgamma(n - k + 1.0)


def borell_constant(p: float, q: float, N: int) -> float:
    """Reverse-Hoelder constant binom(N+p,N)^{1/p} * binom(N+q,N)^{-1/q}.

    Binomials are generalized through the Gamma function so non-integer
    exponents are accepted; C_{p,p} = 1.
    """
    if p < 1 or q < p or N < 1:
        raise ValueError("need 1 <= p <= q and N >= 1")
    return math.exp(_log_binomial(N + p, N) / p - _log_binomial(N + q, N) / q)


def ratio_checks(m: ShapeMeasures, tol: float = 0.0):
    """Isoperimetric and Saint-Venant ratio checks against the ball constants.

    Torsion error propagates into the Saint-Venant slack; tol is an extra
    absolute allowance on both margins.
    """
    d = m.d
    w = unit_ball_volume(d)
    iso_value = m.perimeter / m.volume ** ((d - 1.0) / d)
    iso_bound = d * w ** (1.0 / d)
    iso = BoundReport(
        name="isoperimetric",
        value=iso_value,
        bound=iso_bound,
        satisfied=iso_value >= iso_bound - tol,
        margin=iso_value - iso_bound,
    )
    sv_value = m.torsion / m.volume ** ((d + 2.0) / d)
    sv_bound = w ** (-2.0 / d) / (d * (d + 2.0))
    sv_slack = tol + m.torsion_error / m.volume ** ((d + 2.0) / d)
    sv = BoundReport(
        name="saint_venant",
        value=sv_value,
        bound=sv_bound,
        satisfied=sv_value <= sv_bound + sv_slack,
        margin=sv_bound - sv_value,
    )
    return iso, sv
