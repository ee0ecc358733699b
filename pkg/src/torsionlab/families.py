"""Parametric extremal-family sweeps.

Each sweep returns rows of (parameters, P, T, V, F_q) together with the
theoretical reference for that row: flat slabs approach the infimum constant,
boundary wiggles drive F upward without bound, critically perforated balls
drive the torsion (and hence F) to zero, and shrinking cones approach the
conjectured supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fdsolver import torsion_fd_polygon
from .functionals import ShapeMeasures, alpha_q, f_q
from .geometry import ConvexPolygon2D, regular_polygon, unit_ball_volume
from .thin import (
    BallBase,
    slab_f_q_asymptotic,
    tent_profile,
    thin_asymptotics,
)
from .torsion import (
    k_constant,
    torsion_ball,
    torsion_homogenized_radial,
    torsion_rectangle_series,
)

__all__ = [
    "SweepRecord",
    "sweep_slab",
    "sweep_wiggle",
    "sweep_perforation",
    "sweep_cone",
    "wiggle_polygon",
    "cone_triangle",
    "records_to_csv",
    "loglog_slope",
]


@dataclass(frozen=True)
class SweepRecord:
    family: str
    parameter: float
    d: int
    q: float
    perimeter: float
    torsion: float
    volume: float
    f_q: float
    reference: float

    def measures(self) -> ShapeMeasures:
        return ShapeMeasures(
            d=self.d, perimeter=self.perimeter, torsion=self.torsion, volume=self.volume
        )


CSV_HEADER = "family,parameter,d,q,perimeter,torsion,volume,f_q,reference"


def records_to_csv(records, path) -> None:
    with open(path, "w") as f:
        f.write(CSV_HEADER + "\n")
        for r in records:
            f.write(
                f"{r.family},{r.parameter:.12g},{r.d},{r.q:.12g},{r.perimeter:.12g},"
                f"{r.torsion:.12g},{r.volume:.12g},{r.f_q:.12g},{r.reference:.12g}\n"
            )


def loglog_slope(records):
    """Least-squares slope of log f_q against log parameter, with residual.

    Uses the three smallest parameters.
    """
    rows = sorted(records, key=lambda r: r.parameter)[:3]
    if len(rows) < 2:
        raise ValueError("need at least two rows for a slope")
    x = np.log([r.parameter for r in rows])
    y = np.log([r.f_q for r in rows])
    coef, res = np.polyfit(x, y, 1, full=True)[:2]
    residual = float(res[0]) if len(res) else 0.0
    return float(coef[0]), residual


def _record(family, parameter, d, q, P, T, V, reference):
    m = ShapeMeasures(d=d, perimeter=P, torsion=T, volume=V)
    return SweepRecord(
        family=family,
        parameter=parameter,
        d=d,
        q=q,
        perimeter=P,
        torsion=T,
        volume=V,
        f_q=f_q(m, q),
        reference=reference,
    )


def sweep_slab(q: float, d: int, eps_list) -> list:
    """Flat slabs A x (-eps/2, eps/2) of unit-measure base.

    In the plane the base is the unit interval and the torsion is the exact
    rectangle series; for d >= 3 the base is the unit (d-1)-ball with the
    leading-order thin torsion and exact slab perimeter and volume.
    """
    eps_list = list(eps_list)
    if any(e <= 0 for e in eps_list) or any(
        b >= a for a, b in zip(eps_list, eps_list[1:])
    ):
        raise ValueError("eps_list must be positive and strictly decreasing")
    out = []
    for eps in eps_list:
        if d == 2:
            P = 2.0 + 2.0 * eps
            V = eps
            T = torsion_rectangle_series(1.0, eps)
            base_measure = 1.0
        else:
            n = d - 1
            base_measure = unit_ball_volume(n)
            base_surface = n * base_measure  # perimeter of the unit (d-1)-ball
            P = 2.0 * base_measure + eps * base_surface
            V = eps * base_measure
            T = eps ** 3 / 12.0 * base_measure
        ref = slab_f_q_asymptotic(q, d, base_measure, eps)
        out.append(_record("slab", eps, d, q, P, T, V, ref))
    return out


def wiggle_polygon(n: int, amplitude: float, vertices_per_period: int = 64):
    """Star-shaped boundary r = 1 + amplitude*sin(n*theta), polygonized.

    n = 0 gives a 512-gon disk. The resulting polygon is generally not
    convex, which is the point: its perimeter grows without bound in n while
    the shape stays pinched between two fixed balls.
    """
    if not 0.0 < amplitude <= 0.3 and n != 0:
        raise ValueError("amplitude must lie in (0, 0.3]")
    m = max(512, vertices_per_period * max(n, 1))
    theta = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
    r = 1.0 + amplitude * np.sin(n * theta) if n > 0 else np.ones_like(theta)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def _polygon_PV(vertices: np.ndarray):
    w = np.roll(vertices, -1, axis=0)
    area = 0.5 * float(np.sum(vertices[:, 0] * w[:, 1] - vertices[:, 1] * w[:, 0]))
    per = float(np.hypot(*(w - vertices).T).sum())
    return per, area


def sweep_wiggle(n_list, amplitude: float, q: float = 0.5, grid_divisor: int = 24) -> list:
    """Boundary-wiggle family at fixed amplitude; torsion by the FD solver.

    The grid resolves each oscillation period with grid_divisor cells.
    Reference column: the torsion lower bound T(B_{1-amplitude}) certified by
    the ball sandwich.
    """
    out = []
    for n in n_list:
        verts = wiggle_polygon(int(n), amplitude)
        P, V = _polygon_PV(verts)
        wavelength = 2.0 * math.pi / max(int(n), 4)
        h = min(wavelength / grid_divisor, 1.0 / 64.0)
        sol = torsion_fd_polygon(verts, h, refine=1)
        ref = torsion_ball(2, 1.0 - amplitude) if n else torsion_ball(2, 1.0)
        out.append(_record("wiggle", float(n), 2, q, P, sol.torsion, V, ref))
    return out


def sweep_perforation(d: int, c_list, q: float = 0.5, n_grid: int = 1024) -> list:
    """Homogenized perforation limits: ball P and V with the damped torsion.

    The reference column carries the energy bound omega_d / K_c.
    """
    c_list = list(c_list)
    if any(c <= 0 for c in c_list) or c_list != sorted(c_list):
        raise ValueError("c_list must be positive and increasing")
    w = unit_ball_volume(d)
    out = []
    for c in c_list:
        K = k_constant(d, c)
        prof = torsion_homogenized_radial(d, K, n_grid)
        out.append(_record("perforation", c, d, q, d * w, prof.torsion, w, w / K))
    return out


def cone_triangle(eps: float) -> ConvexPolygon2D:
    """The planar cone domain: tent of height eps over the base (-1, 1)."""
    return ConvexPolygon2D(np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, eps]]))


def sweep_cone(d: int, eps_list, grid_divisor: int = 64, refine: int = 0) -> list:
    """Shrinking cones over the unit ball; F_{1/2} climbs toward the conjecture.

    d = 2 rows solve the tent triangle by FD with the grid tied to the
    inradius; d >= 3 rows use the thin asymptotics of the radial tent profile.
    """
    eps_list = list(eps_list)
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps_list must be positive")
    conj = d * math.sqrt(2.0 / ((d + 1.0) * (d + 2.0)))
    out = []
    for eps in eps_list:
        if d == 2:
            tri = cone_triangle(eps)
            h = tri.inradius() / grid_divisor
            sol = torsion_fd_polygon(tri, h, refine=refine)
            P, V = tri.perimeter, tri.area
            T = sol.torsion
        else:
            prof = tent_profile(BallBase(d - 1))
            asym = thin_asymptotics(prof)
            P = asym.perimeter_limit
            V = eps * asym.volume_coeff
            T = eps ** 3 * asym.torsion_coeff
        out.append(_record("cone", eps, d, 0.5, P, T, V, conj))
    return out
