"""Derivative-free maximization of F_{1/2} over planar convex shapes.

Two probes of the conjectured supremum: a deterministic line search over
thin triangles (the known planar extremal family) and a seeded hill climb
over convex polygons with single-vertex Gaussian moves and convex-hull
repair. Neither is an optimality certificate; they record how close simple
convex shapes get to the supremum.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .fdsolver import ResolutionError, torsion_fd_polygon
from .functionals import ShapeMeasures, f_q
from .geometry import ConvexPolygon2D, InvalidShapeError, random_convex_polygon

__all__ = ["SearchConfig", "SearchResult", "search_triangles", "hillclimb_polygon"]

F_HALF_CAP = 2.0 / math.sqrt(6.0)  # proved supremum for d = 2
MIN_GRID_DIVISOR = 64


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "polygon"
    n_vertices: int = 8
    max_iters: int = 2000
    init_step: float = 0.1
    shrink: float = 0.8
    seed: int = 0
    grid_divisor: int = 32
    refine: int = 0
    max_nodes: int = 4_000_000

    def __post_init__(self):
        if self.mode not in ("triangles", "polygon"):
            raise ValueError("mode must be 'triangles' or 'polygon'")
        if self.max_iters < 1 or not 0.0 < self.shrink < 1.0 or self.init_step <= 0:
            raise ValueError("invalid search configuration")


@dataclass(frozen=True)
class SearchResult:
    best_shape: ConvexPolygon2D
    best_value: float
    history: tuple
    evaluations: int
    resolution_flag: bool = False

    def to_json(self, path=None) -> str:
        payload = {
            "best_value": self.best_value,
            "evaluations": self.evaluations,
            "history": [[int(i), v] for i, v in self.history],
            "resolution_warning": self.resolution_flag,
            "vertices": self.best_shape.vertices.tolist(),
        }
        text = json.dumps(payload, sort_keys=True, indent=2)
        if path is not None:
            with open(path, "w") as f:
                f.write(text + "\n")
        return text


def _evaluate_f_half(poly: ConvexPolygon2D, grid_divisor: int, refine: int, max_nodes: int):
    h = poly.inradius() / max(grid_divisor, 4)
    sol = torsion_fd_polygon(poly, h, refine=refine, max_nodes=max_nodes)
    m = ShapeMeasures(
        d=2,
        perimeter=poly.perimeter,
        torsion=sol.torsion,
        volume=poly.area,
        torsion_error=sol.error_estimate,
    )
    return f_q(m, 0.5)


def search_triangles(
    aspect_list, grid_divisor: int = 64, refine: int = 0, max_nodes: int = 40_000_000
) -> SearchResult:
    """F_{1/2} along isoceles triangles of base 2 and height = aspect.

    Values increase as the aspect shrinks and stay below the planar
    supremum 2/sqrt(6).
    """
    aspects = list(aspect_list)
    if any(a <= 0 for a in aspects):
        raise ValueError("aspects must be positive")
    history = []
    best_val = -math.inf
    best_shape = None
    flag = False
    for i, a in enumerate(aspects):
        tri = ConvexPolygon2D(np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, a]]))
        try:
            val = _evaluate_f_half(tri, grid_divisor, refine, max_nodes)
        except ResolutionError:
            flag = True
            break
        if val > best_val:
            best_val, best_shape = val, tri
        history.append((i, best_val))
    if best_shape is None:
        raise ResolutionError("no triangle could be evaluated at this resolution")
    return SearchResult(
        best_shape=best_shape,
        best_value=best_val,
        history=tuple(history),
        evaluations=len(history),
        resolution_flag=flag,
    )


def _hull_polygon(points: np.ndarray):
    hull = ConvexHull(points)
    return ConvexPolygon2D(points[hull.vertices]).normalized()


def hillclimb_polygon(cfg: SearchConfig) -> SearchResult:
    """Stochastic hill climb over unit-area convex polygons.

    Single-vertex Gaussian proposals, convexity repaired by taking the hull,
    area renormalized after every accepted move (F_{1/2} is scale free).
    Moves are accepted only on strict improvement; the step shrinks after
    n_vertices consecutive rejections. Deterministic in the seed.
    """
    if cfg.mode != "polygon":
        raise ValueError("hillclimb_polygon requires mode='polygon'")
    rng = np.random.default_rng(cfg.seed)
    current = random_convex_polygon(cfg.n_vertices, cfg.seed)
    flag = False

    def evaluate(poly):
        nonlocal flag
        try:
            return _evaluate_f_half(poly, cfg.grid_divisor, cfg.refine, cfg.max_nodes)
        except ResolutionError:
            flag = True
            return None

    current_val = evaluate(current)
    if current_val is None:
        raise ResolutionError("initial shape is not resolvable at this budget")
    evaluations = 1
    history = [(0, current_val)]
    step = cfg.init_step
    rejections = 0

    while evaluations < cfg.max_iters:
        pts = current.vertices.copy()
        k = int(rng.integers(len(pts)))
        pts[k] += rng.normal(0.0, step, size=2)
        try:
            candidate = _hull_polygon(pts)
        except (InvalidShapeError, QhullError, ValueError):
            candidate = None
        val = evaluate(candidate) if candidate is not None else None
        evaluations += 1
        if val is not None and val > current_val:
            current, current_val = candidate, val
            rejections = 0
        else:
            rejections += 1
            if rejections >= cfg.n_vertices:
                step *= cfg.shrink
                rejections = 0
        history.append((evaluations - 1, current_val))

    return SearchResult(
        best_shape=current,
        best_value=current_val,
        history=tuple(history),
        evaluations=evaluations,
        resolution_flag=flag,
    )
