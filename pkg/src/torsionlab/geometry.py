"""Convex-geometry kernel: polygons, ellipsoids, cuboids, enclosing ellipsoids.

Polygons are restricted to the plane; higher dimensions are reached only
through the analytic ellipsoid/cuboid formulas. All shapes are immutable
value objects, safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import linprog

__all__ = [
    "InvalidShapeError",
    "DegenerateInputError",
    "ConvergenceError",
    "ConvexPolygon2D",
    "Ellipsoid",
    "Cuboid",
    "unit_ball_volume",
    "polygon_area_perimeter",
    "ellipsoid_volume",
    "ellipse_perimeter_2d",
    "cuboid_perimeter",
    "mvee",
    "random_convex_polygon",
    "regular_polygon",
    "load_shape",
]

# Minimum edge length relative to the polygon diameter.
MIN_EDGE_FRACTION = 1e-12


class InvalidShapeError(ValueError):
    """Raised when a shape violates its construction invariants."""


class DegenerateInputError(ValueError):
    """Raised for rank-deficient point sets."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative routine exceeds its iteration cap."""


def unit_ball_volume(d: int) -> float:
    """Volume of the unit ball in dimension d, via log-gamma (stable to d ~ 50)."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return math.exp(0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.0))


@dataclass(frozen=True)
class ConvexPolygon2D:
    """Planar convex region given by its vertices in counterclockwise order."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidShapeError("polygon needs an (n, 2) array with n >= 3")
        object.__setattr__(self, "vertices", v)
        edges = np.roll(v, -1, axis=0) - v
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        diam = _diameter(v)
        if np.any(lengths <= MIN_EDGE_FRACTION * diam):
            raise InvalidShapeError("coincident or nearly coincident consecutive vertices")
        cross = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
        if np.any(cross < -1e-12 * diam * diam):
            raise InvalidShapeError("vertices are not in convex counterclockwise order")
        if _shoelace_area(v) <= 0.0:
            raise InvalidShapeError("polygon has nonpositive area")

    @property
    def area(self) -> float:
        return _shoelace_area(self.vertices)

    @property
    def perimeter(self) -> float:
        edges = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(edges[:, 0], edges[:, 1]).sum())

    @property
    def centroid(self) -> np.ndarray:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        cross = v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]
        return (v + w).T @ cross / (6.0 * self.area)

    def inradius(self) -> float:
        """Radius of the largest inscribed disk (Chebyshev radius)."""
        n, b = self.edge_halfplanes()
        # maximize r subject to n.x + r <= b
        res = linprog(
            c=[0.0, 0.0, -1.0],
            A_ub=np.column_stack([n, np.ones(len(b))]),
            b_ub=b,
            bounds=[(None, None), (None, None), (0.0, None)],
            method="highs",
        )
        if not res.success:
            raise InvalidShapeError("inradius LP failed: " + res.message)
        return float(res.x[2])

    def edge_halfplanes(self):
        """Outward unit normals n and offsets b with the interior {x : n.x < b}."""
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        n = np.column_stack([e[:, 1], -e[:, 0]])
        n /= np.hypot(n[:, 0], n[:, 1])[:, None]
        return n, np.einsum("ij,ij->i", n, v)

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        n, b = self.edge_halfplanes()
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return np.all(pts @ n.T <= b + tol, axis=1)

    def scaled(self, t: float) -> "ConvexPolygon2D":
        return ConvexPolygon2D(self.vertices * t)

    def normalized(self) -> "ConvexPolygon2D":
        """Unit area, centroid at the origin."""
        v = self.vertices - self.centroid
        return ConvexPolygon2D(v / math.sqrt(self.area))


@dataclass(frozen=True)
class Ellipsoid:
    """Axis-aligned ellipsoid with semi-axes a; a 2-D rotation angle is allowed."""

    d: int
    a: tuple
    center: tuple = None
    angle: float = 0.0

    def __post_init__(self):
        if self.d < 2:
            raise InvalidShapeError("ellipsoid dimension must be >= 2")
        a = tuple(float(x) for x in self.a)
        if len(a) != self.d or any(x <= 0 for x in a):
            raise InvalidShapeError("need d strictly positive semi-axes")
        object.__setattr__(self, "a", a)
        c = self.center if self.center is not None else (0.0,) * self.d
        object.__setattr__(self, "center", tuple(float(x) for x in c))
        if self.angle != 0.0 and self.d != 2:
            raise InvalidShapeError("rotation angle is only supported in 2-D")


@dataclass(frozen=True)
class Cuboid:
    """Axis-aligned box with the given half-extents, centered at the origin."""

    d: int
    half_extents: tuple

    def __post_init__(self):
        a = tuple(float(x) for x in self.half_extents)
        if len(a) != self.d or any(x <= 0 for x in a):
            raise InvalidShapeError("need d strictly positive half-extents")
        object.__setattr__(self, "half_extents", a)


def _shoelace_area(v: np.ndarray) -> float:
    w = np.roll(v, -1, axis=0)
    return float(0.5 * np.sum(v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]))


def _diameter(v: np.ndarray) -> float:
    lo, hi = v.min(axis=0), v.max(axis=0)
    return float(np.hypot(*(hi - lo))) or 1.0


def polygon_area_perimeter(poly: ConvexPolygon2D) -> tuple:
    """Shoelace area and boundary length of a convex polygon."""
    return poly.area, poly.perimeter


def ellipsoid_volume(e: Ellipsoid) -> float:
    """omega_d times the product of the semi-axes."""
    return unit_ball_volume(e.d) * math.prod(e.a)


def ellipse_perimeter_2d(e: Ellipsoid, rtol: float = 1e-10) -> float:
    """Arc length of a 2-D ellipse by adaptive quadrature of the speed."""
    if e.d != 2:
        raise ValueError("perimeter quadrature is 2-D only")
    a, b = e.a
    val, _ = quad(
        lambda t: math.hypot(a * math.sin(t), b * math.cos(t)),
        0.0,
        2.0 * math.pi,
        epsabs=0.0,
        epsrel=rtol,
        limit=200,
    )
    return val


def cuboid_perimeter(q: Cuboid) -> float:
    """Surface measure of the box boundary: 2^d (sum 1/a_i) prod a_i."""
    a = q.half_extents
    return 2.0 ** q.d * sum(1.0 / x for x in a) * math.prod(a)


def mvee(points, tol: float = 1e-7, max_iters: int = 100_000) -> Ellipsoid:
    """Minimum-volume enclosing ellipsoid of a planar point set.

    Khachiyan's barycentric ascent; stops when the relative optimality gap
    of the dual objective drops below tol.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise DegenerateInputError("need at least 3 planar points")
    if np.linalg.matrix_rank(pts - pts.mean(axis=0)) < 2:
        raise DegenerateInputError("points are affinely dependent")
    m, d = pts.shape
    n = d + 1.0
    q = np.column_stack([pts, np.ones(m)])
    u = np.full(m, 1.0 / m)
    for _ in range(max_iters):
        v = q.T @ (q * u[:, None])
        g = np.einsum("ij,jk,ik->i", q, np.linalg.inv(v), q)
        j_add = int(np.argmax(g))
        gap = g[j_add] / n - 1.0
        if gap <= tol:
            break
        # away steps (Wolfe-Atwood) give linear convergence where the plain
        # ascent is only sublinear
        active = u > 0.0
        j_away = int(np.flatnonzero(active)[np.argmin(g[active])])
        if g[j_add] - n >= n - g[j_away]:
            j, gj = j_add, g[j_add]
            step = (gj - n) / (n * (gj - 1.0))
        else:
            j, gj = j_away, g[j_away]
            step = max((gj - n) / (n * (gj - 1.0)), -u[j] / (1.0 - u[j]))
        u *= 1.0 - step
        u[j] += step
    else:
        raise ConvergenceError(f"MVEE did not converge in {max_iters} iterations")
    center = pts.T @ u
    cov = pts.T @ (pts * u[:, None]) - np.outer(center, center)
    shape_mat = np.linalg.inv(cov) / d  # (x-c)^T M (x-c) <= 1
    eigval, eigvec = np.linalg.eigh(shape_mat)
    axes = 1.0 / np.sqrt(eigval)  # ascending eigenvalues -> descending axes
    major = eigvec[:, 0]
    return Ellipsoid(
        d=2,
        a=tuple(axes),
        center=tuple(center),
        angle=float(math.atan2(major[1], major[0])),
    )


def mvee_contains(e: Ellipsoid, points, scale: float = 1.0) -> np.ndarray:
    """Quadratic-form membership test for a (possibly rotated) 2-D ellipse."""
    pts = np.atleast_2d(np.asarray(points, dtype=float)) - np.asarray(e.center)
    c, s = math.cos(e.angle), math.sin(e.angle)
    local = pts @ np.array([[c, -s], [s, c]])
    r = (local / (scale * np.asarray(e.a))) ** 2
    return r.sum(axis=1)


def ellipse_boundary(e: Ellipsoid, n: int = 256, scale: float = 1.0) -> np.ndarray:
    """Sample points on a (scaled) 2-D ellipse boundary."""
    t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    local = np.column_stack([scale * e.a[0] * np.cos(t), scale * e.a[1] * np.sin(t)])
    c, s = math.cos(e.angle), math.sin(e.angle)
    return local @ np.array([[c, s], [-s, c]]) + np.asarray(e.center)


def random_convex_polygon(n: int, seed: int) -> ConvexPolygon2D:
    """Random convex n-gon, normalized to unit area and centroid at the origin.

    Edge vectors get random directions and lengths, are recentered to close
    the chain, and are re-sorted by angle; a chain of vectors summing to zero
    in angular order is always convex. Deterministic in the seed.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = np.random.default_rng(seed)
    for _ in range(64):
        theta = rng.uniform(0.0, 2.0 * math.pi, n)
        r = rng.uniform(0.2, 1.0, n)
        edges = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        edges -= edges.mean(axis=0)
        order = np.argsort(np.arctan2(edges[:, 1], edges[:, 0]))
        verts = np.cumsum(edges[order], axis=0)
        try:
            return ConvexPolygon2D(verts).normalized()
        except InvalidShapeError:
            continue  # collinear edge directions; resample
    raise ConvergenceError("could not generate a valid convex polygon")


def regular_polygon(n: int, radius: float = 1.0) -> ConvexPolygon2D:
    """Regular n-gon inscribed in a circle of the given radius."""
    t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    return ConvexPolygon2D(np.column_stack([radius * np.cos(t), radius * np.sin(t)]))


def load_shape(path):
    """Read a shape file: {"kind": "polygon"|"ellipsoid", ...}."""
    with open(path) as f:
        data = json.load(f)
    kind = data.get("kind")
    if kind == "polygon":
        return ConvexPolygon2D(np.asarray(data["vertices"], dtype=float))
    if kind == "ellipsoid":
        return Ellipsoid(d=int(data["d"]), a=tuple(data["a"]))
    raise InvalidShapeError(f"unknown shape kind: {kind!r}")
