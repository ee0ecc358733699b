"""Thin-domain asymptotics over thickness profiles.

A thin domain {(s, t) : s in A, 0 < t < eps*h(s)} is described by its base A
(an interval, a radial unit ball, or a convex polygon) and the thickness
profile h. As eps -> 0 the relevant quantities reduce to moments of h, and
F_{1/2} tends to a scale-free mean ratio that is bounded below by 1/sqrt(3)
and, for concave h on convex bases, above by the conjectured supremum.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .functionals import BoundReport, borell_constant
from .geometry import ConvexPolygon2D, unit_ball_volume

__all__ = [
    "DegenerateProfileError",
    "IntervalBase",
    "BallBase",
    "PolygonBase",
    "ThicknessProfile",
    "ThinAsymptotics",
    "thin_asymptotics",
    "thin_limit_f_half",
    "slab_f_q_asymptotic",
    "is_concave",
    "borell_check",
    "tent_profile",
    "constant_profile",
    "sampled_profile",
    "load_profile",
]

# Uniform sampling density for interval and radial quadrature.
N_SAMPLES = 4097


class DegenerateProfileError(ValueError):
    """Raised when the thickness vanishes identically."""


@dataclass(frozen=True)
class IntervalBase:
    a: float
    b: float

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError("need a < b")

    @property
    def dimension(self) -> int:
        return 1

    @property
    def measure(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class BallBase:
    """Unit ball in R^N; profiles on it are radial, h = h(|s|)."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("need N >= 1")

    @property
    def dimension(self) -> int:
        return self.N

    @property
    def measure(self) -> float:
        return unit_ball_volume(self.N)


@dataclass(frozen=True)
class PolygonBase:
    """Convex polygonal base in the plane (ambient dimension 3)."""

    polygon: ConvexPolygon2D

    @property
    def dimension(self) -> int:
        return 2

    @property
    def measure(self) -> float:
        return self.polygon.area


@dataclass(frozen=True)
class ThicknessProfile:
    """Nonnegative thickness function h on a base set.

    h is a callable; on interval bases it takes the coordinate, on ball
    bases the radius in [0, 1], on polygon bases an (n, 2) point array.
    """

    base: object
    h: object

    @property
    def d(self) -> int:
        """Ambient dimension of the thin domain."""
        return self.base.dimension + 1


@dataclass(frozen=True)
class ThinAsymptotics:
    """Leading coefficients of P, T, V for the thin family over a profile."""

    perimeter_limit: float
    torsion_coeff: float
    volume_coeff: float


def _moments(p: ThicknessProfile):
    """(integral of h, integral of h^3) over the base."""
    base = p.base
    if isinstance(base, IntervalBase):
        x = np.linspace(base.a, base.b, N_SAMPLES)
        hx = np.asarray([p.h(v) for v in x], dtype=float) if not callable_vec(p.h) else p.h(x)
        m1 = float(simpson(hx, x=x))
        m3 = float(simpson(hx ** 3, x=x))
    elif isinstance(base, BallBase):
        r = np.linspace(0.0, 1.0, N_SAMPLES)
        hr = np.asarray([p.h(v) for v in r], dtype=float) if not callable_vec(p.h) else p.h(r)
        n = base.N
        w = n * unit_ball_volume(n) * r ** (n - 1)
        m1 = float(simpson(hr * w, x=r))
        m3 = float(simpson(hr ** 3 * w, x=r))
    elif isinstance(base, PolygonBase):
        m1, m3 = _polygon_moments(base.polygon, p.h)
    else:
        raise TypeError(f"unsupported base: {type(base).__name__}")
    if m1 <= 0.0:
        raise DegenerateProfileError("thickness integrates to zero")
    return m1, m3


def callable_vec(h) -> bool:
    """Whether h accepts array arguments (sampled and numpy closures do)."""
    try:
        out = h(np.asarray([0.0, 0.0]))
    except Exception:
        return False
    return np.shape(out) == (2,)


def _polygon_moments(poly: ConvexPolygon2D, h, levels: int = 5):
    """Midpoint quadrature on a fan triangulation, uniformly refined.

    Refines until two consecutive levels agree to 1e-6 relative.
    """
    v = poly.vertices
    c = poly.centroid
    tris = [(c, v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def eval_level(k):
        m1 = m3 = 0.0
        for (a, b, cc) in tris:
            m1t, m3t = _triangle_midpoint(a, b, cc, h, k)
            m1 += m1t
            m3 += m3t
        return m1, m3

    prev = eval_level(2)
    for k in range(3, levels + 3):
        cur = eval_level(k)
        if abs(cur[0] - prev[0]) <= 1e-6 * abs(cur[0]) and abs(cur[1] - prev[1]) <= 1e-6 * (
            abs(cur[1]) + 1e-300
        ):
            return cur
        prev = cur
    return prev


def _triangle_midpoint(a, b, c, h, k):
    """Midpoint rule over a triangle subdivided into 4^k congruent pieces."""
    n = 2 ** k
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    keep = i + j < n
    # barycentric midpoints of the upright and inverted sub-triangles
    lam_up = np.stack([(i + 1 / 3), (j + 1 / 3)], axis=-1)[keep] / n
    keep_inv = i + j < n - 1
    lam_dn = np.stack([(i + 2 / 3), (j + 2 / 3)], axis=-1)[keep_inv] / n
    pts = np.concatenate([lam_up, lam_dn], axis=0)
    xy = np.asarray(a) + pts @ np.stack([np.asarray(b) - a, np.asarray(c) - a])
    vals = np.asarray(h(xy), dtype=float)
    area = abs(
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    ) / 2.0 / n ** 2
    return area * vals.sum(), area * (vals ** 3).sum()


def thin_asymptotics(p: ThicknessProfile) -> ThinAsymptotics:
    """Leading coefficients 2|A|, (1/12) int h^3, int h of the thin family."""
    m1, m3 = _moments(p)
    return ThinAsymptotics(
        perimeter_limit=2.0 * p.base.measure,
        torsion_coeff=m3 / 12.0,
        volume_coeff=m1,
    )


def thin_limit_f_half(p: ThicknessProfile) -> float:
    """Limit of F_{1/2}: 3^{-1/2} [mean(h^3) / mean(h)^3]^{1/2}.

    Invariant under h -> c h; >= 3^{-1/2} by the Hoelder direction.
    """
    m1, m3 = _moments(p)
    A = p.base.measure
    return 3.0 ** -0.5 * math.sqrt((m3 / A) / (m1 / A) ** 3)


def slab_f_q_asymptotic(q: float, d: int, base_measure: float, eps: float) -> float:
    """F_q of the flat slab A x (-eps/2, eps/2) to leading order."""
    if q <= 0 or d < 2 or base_measure <= 0 or eps <= 0:
        raise ValueError("all arguments must be positive (d >= 2)")
    return (
        2.0
        / (12.0 ** q * base_measure ** ((2.0 * q - 1.0) / d))
        * eps ** ((2.0 * q - 1.0) * (d - 1.0) / d)
    )


def is_concave(p: ThicknessProfile, n_checks: int = 1000, seed: int = 0) -> bool:
    """Randomized midpoint-concavity test: h((x+y)/2) >= (h(x)+h(y))/2 - 1e-9.

    A necessary-condition check only; it cannot certify concavity.
    """
    if n_checks < 100:
        raise ValueError("need n_checks >= 100")
    rng = np.random.default_rng(seed)
    base = p.base
    if isinstance(base, IntervalBase):
        x = rng.uniform(base.a, base.b, n_checks)
        y = rng.uniform(base.a, base.b, n_checks)
        pts = [x, y, 0.5 * (x + y)]
        vals = [np.asarray([p.h(v) for v in arr], float) for arr in pts]
    elif isinstance(base, BallBase):
        # radial profile: concavity on the ball reduces to concavity of
        # h(|s|) along chords; sample pairs inside the ball via radii
        x = rng.uniform(-1.0, 1.0, n_checks)
        y = rng.uniform(-1.0, 1.0, n_checks)
        pts = [np.abs(x), np.abs(y), np.abs(0.5 * (x + y))]
        vals = [np.asarray([p.h(v) for v in arr], float) for arr in pts]
    elif isinstance(base, PolygonBase):
        poly = base.polygon
        x = _sample_in_polygon(poly, n_checks, rng)
        y = _sample_in_polygon(poly, n_checks, rng)
        mid = 0.5 * (x + y)
        vals = [np.asarray(p.h(arr), float) for arr in (x, y, mid)]
    else:
        raise TypeError(f"unsupported base: {type(base).__name__}")
    hx, hy, hm = vals
    return bool(np.all(hm >= 0.5 * (hx + hy) - 1e-9))


def _sample_in_polygon(poly: ConvexPolygon2D, n: int, rng) -> np.ndarray:
    lo = poly.vertices.min(axis=0)
    hi = poly.vertices.max(axis=0)
    out = []
    while len(out) < n:
        cand = rng.uniform(lo, hi, size=(4 * n, 2))
        out.extend(cand[poly.contains(cand)][: n - len(out)])
    return np.asarray(out)


def borell_check(p: ThicknessProfile) -> BoundReport:
    """Reverse-Hoelder check mean(h^3) <= C_{1,3}^3 mean(h)^3 for concave h."""
    if not is_concave(p):
        raise ValueError("borell_check requires a concave profile")
    m1, m3 = _moments(p)
    A = p.base.measure
    value = m3 / A
    bound = borell_constant(1.0, 3.0, p.base.dimension) ** 3 * (m1 / A) ** 3
    margin = bound - value
    return BoundReport(
        name="borell_moment",
        value=value,
        bound=bound,
        satisfied=value <= bound + 1e-9 * abs(bound),
        margin=margin,
    )


def tent_profile(base) -> ThicknessProfile:
    """h = 1 - |s| (the extremal profile on symmetric bases)."""
    if isinstance(base, IntervalBase):
        mid = 0.5 * (base.a + base.b)
        half = 0.5 * (base.b - base.a)
        return ThicknessProfile(base, lambda s: np.maximum(1.0 - np.abs((s - mid) / half), 0.0))
    if isinstance(base, BallBase):
        return ThicknessProfile(base, lambda r: np.maximum(1.0 - np.abs(r), 0.0))
    raise TypeError("tent profile is defined on intervals and balls")


def constant_profile(base, c: float = 1.0) -> ThicknessProfile:
    if c <= 0:
        raise DegenerateProfileError("constant thickness must be positive")

    def h(s):
        arr = np.asarray(s, dtype=float)
        # one value per point: rows of an (n, 2) array are polygon-base points
        return np.full(arr.shape[:1] if arr.ndim else (), c)

    return ThicknessProfile(base, h)


def sampled_profile(base, x, y) -> ThicknessProfile:
    """Piecewise-linear profile from samples on an interval or radial base."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DegenerateProfileError("thickness samples must be nonnegative")
    return ThicknessProfile(base, lambda s: np.interp(np.asarray(s, dtype=float), x, y))


def load_profile(path) -> ThicknessProfile:
    """Read a profile file, see the JSON schema in the package README."""
    with open(path) as f:
        data = json.load(f)
    b = data["base"]
    kind = b.get("kind")
    if kind == "interval":
        base = IntervalBase(float(b["a"]), float(b["b"]))
    elif kind == "ball":
        base = BallBase(int(b["N"]))
    elif kind == "polygon":
        base = PolygonBase(ConvexPolygon2D(np.asarray(b["vertices"], dtype=float)))
    else:
        raise ValueError(f"unknown base kind: {kind!r}")
    spec = data["h"]
    hkind = spec.get("kind")
    if hkind == "samples":
        return sampled_profile(base, spec["x"], spec["y"])
    if hkind == "tent":
        return tent_profile(base)
    if hkind == "const":
        return constant_profile(base, float(spec.get("c", 1.0)))
    raise ValueError(f"unknown thickness kind: {hkind!r}")
