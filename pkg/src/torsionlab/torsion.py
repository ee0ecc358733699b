"""Torsional rigidity evaluators: closed forms, rectangle series, radial limit solver.

The grid PDE solver for polygons lives in :mod:`torsionlab.fdsolver`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import solve_banded

from .geometry import Ellipsoid, unit_ball_volume

__all__ = [
    "torsion_ball",
    "torsion_ellipsoid",
    "torsion_rectangle_series",
    "hole_radius",
    "k_constant",
    "HomogenizedProfile",
    "torsion_homogenized_radial",
]


def torsion_ball(d: int, r: float) -> float:
    """T of a ball of radius r: r^{d+2} omega_d / (d(d+2))."""
    if d < 1 or r <= 0:
        raise ValueError("need d >= 1 and r > 0")
    return r ** (d + 2) * unit_ball_volume(d) / (d * (d + 2))


def torsion_ellipsoid(e: Ellipsoid) -> float:
    """T of an ellipsoid: omega_d/(d+2) * (sum a_i^-2)^-1 * prod a_i."""
    inv_sq = sum(1.0 / (x * x) for x in e.a)
    return unit_ball_volume(e.d) / (e.d + 2) * math.prod(e.a) / inv_sq


def torsion_rectangle_series(a: float, b: float) -> float:
    """T of an a x b rectangle by the classical separated-variables series.

    Symmetric in (a, b); the series runs over the short side so the bracket
    stays well conditioned down to extreme aspect ratios. Truncated when a
    term falls below 1e-14 of the running sum. For b << a the value
    approaches a*b^3/12 from below.
    """
    if a <= 0 or b <= 0:
        raise ValueError("rectangle sides must be positive")
    s, l = min(a, b), max(a, b)
    total = 0.0
    n = 1
    while True:
        term = math.tanh(n * math.pi * l / (2.0 * s)) / n ** 5
        total += term
        if term < 1e-14 * total:
            break
        n += 2
    # J/4 with J the classical torsion constant (stress function solves -Lap = 2)
    return s ** 3 * l / 12.0 * (1.0 - 192.0 * s / (math.pi ** 5 * l) * total)


def hole_radius(d: int, c: float, eps: float) -> float:
    """Critical hole radius for a periodic perforation of cell size eps."""
    if d < 2 or c <= 0 or not 0 < eps < 1:
        raise ValueError("need d >= 2, c > 0 and 0 < eps < 1")
    if d == 2:
        return math.exp(-1.0 / (c * eps * eps))
    return c * eps ** (d / (d - 2))


def k_constant(d: int, c: float) -> float:
    """Zeroth-order coefficient of the perforation limit problem."""
    if d < 2 or c <= 0:
        raise ValueError("need d >= 2 and c > 0")
    if d == 2:
        return c * math.pi / 2.0
    return d * (d - 2) * 2.0 ** (-d) * unit_ball_volume(d) * c ** (d - 2)


@dataclass(frozen=True)
class HomogenizedProfile:
    """Radial solution of -Lap(u) + K u = 1 on the unit ball with u = 0 on the boundary."""

    d: int
    K: float
    r: np.ndarray
    u: np.ndarray
    torsion: float

    def to_csv(self, path) -> None:
        with open(path, "w") as f:
            f.write("r,u\n")
            for ri, ui in zip(self.r, self.u):
                f.write(f"{ri:.12g},{ui:.12g}\n")


def torsion_homogenized_radial(d: int, K: float, n: int = 1024) -> HomogenizedProfile:
    """Solve -u'' - ((d-1)/r) u' + K u = 1 on (0,1), u'(0) = 0, u(1) = 0.

    Second-order finite differences on n+1 uniform nodes; the r = 0 Neumann
    condition uses a reflected node to keep second order. The torsion
    d*omega_d * int_0^1 u r^{d-1} dr is evaluated by composite Simpson.
    """
    if d < 2 or K < 0 or n < 64:
        raise ValueError("need d >= 2, K >= 0 and n >= 64")
    h = 1.0 / n
    r = np.linspace(0.0, 1.0, n + 1)
    # unknowns u_0 .. u_{n-1}; u_n = 0
    m = n
    ab = np.zeros((3, m))
    rhs = np.ones(m)
    # r = 0: limit of the radial Laplacian is d * u''(0); reflection gives
    # -2d (u_1 - u_0)/h^2 + K u_0 = 1
    ab[1, 0] = 2.0 * d / h ** 2 + K
    ab[0, 1] = -2.0 * d / h ** 2
    for i in range(1, m):
        ri = r[i]
        ab[1, i] = 2.0 / h ** 2 + K
        lower = -1.0 / h ** 2 + (d - 1) / (2.0 * h * ri)
        upper = -1.0 / h ** 2 - (d - 1) / (2.0 * h * ri)
        ab[2, i - 1] = lower  # subdiagonal entry for row i
        if i + 1 < m:
            ab[0, i + 1] = upper
    u = solve_banded((1, 1), ab, rhs)
    u_full = np.append(u, 0.0)
    torsion = d * unit_ball_volume(d) * float(simpson(u_full * r ** (d - 1), x=r))
    return HomogenizedProfile(d=d, K=K, r=r, u=u_full, torsion=torsion)
