"""Finite-difference torsion solver on polygons.

Five-point Laplacian on a uniform node grid clipped to the polygon. At cut
cells the Dirichlet condition enters through linear extrapolation across the
boundary intercept, which keeps the matrix symmetric positive definite and
the solution second-order accurate. The system is solved by conjugate
gradients with an algebraic-multigrid preconditioner; torsion is the
composite midpoint quadrature of the nodal values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pyamg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import _kernels
from .geometry import ConvexPolygon2D

__all__ = ["ResolutionError", "SolverError", "TorsionSolution", "torsion_fd_polygon"]

# Nodes closer to the boundary than this fraction of h are treated as
# boundary nodes; the 1/a cut coefficients stay bounded.
A_MIN = 1e-6

# Fixed sub-cell grid offset. Irrational so grid lines do not ride along
# axis-aligned edges, and asymmetric so boundary quadrature errors at
# successive refinements do not cancel (which would corrupt the Richardson
# estimate).
GRID_OFFSET = 1.0 / math.pi

# Direct solve below this size; the multigrid setup overhead dominates
# there (the crossover sits near 3e4 unknowns on the benchmark domains).
DIRECT_SOLVE_MAX = 30_000

CG_RTOL = 1e-10


class ResolutionError(RuntimeError):
    """Grid too coarse for the polygon (no interior nodes, or over budget)."""


class SolverError(RuntimeError):
    """Linear solver failed to reach the target residual."""


@dataclass(frozen=True)
class TorsionSolution:
    """Discrete torsion solution with its integral and a Richardson error estimate."""

    grid_spacing: float
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    torsion: float
    error_estimate: float
    order_estimate: float | None = None
    coarse_torsions: tuple = ()

    def nodes(self):
        """Iterate (x, y, u) triples of the interior nodes."""
        return zip(self.x, self.y, self.values)

    def to_csv(self, path) -> None:
        with open(path, "w") as f:
            f.write("x,y,u\n")
            for xi, yi, ui in self.nodes():
                f.write(f"{xi:.12g},{yi:.12g},{ui:.12g}\n")


def _solve_grid(vertices: np.ndarray, h: float, max_nodes: int):
    """One grid solve: returns (x, y, u, torsion)."""
    xmin, ymin = vertices.min(axis=0)
    xmax, ymax = vertices.max(axis=0)
    x0 = xmin - GRID_OFFSET * h
    y0 = ymin - GRID_OFFSET * h
    nx = int(math.ceil((xmax - x0) / h)) + 1
    ny = int(math.ceil((ymax - y0) / h)) + 1
    if nx * ny > max_nodes:
        raise ResolutionError(
            f"grid of {nx}x{ny} nodes exceeds the budget of {max_nodes}; "
            f"need h >= {h * math.sqrt(nx * ny / max_nodes):.3g}"
        )

    inside, aE, aW, aS, aN = _kernels.grid_cut_distances(vertices, x0, y0, h, nx, ny)
    ok = (aE > A_MIN) & (aW > A_MIN) & (aN > A_MIN) & (aS > A_MIN)
    inside = inside & ok
    jj, ii = np.nonzero(inside)
    n_unknowns = len(jj)
    if n_unknowns == 0:
        raise ResolutionError(f"no interior grid node at spacing h={h:.3g}")

    idx = -np.ones((ny, nx), dtype=np.int64)
    idx[jj, ii] = np.arange(n_unknowns)

    arms = (
        (1, 0, aE[jj, ii]),
        (-1, 0, aW[jj, ii]),
        (0, 1, aN[jj, ii]),
        (0, -1, aS[jj, ii]),
    )
    diag = np.zeros(n_unknowns)
    rows, cols, vals = [], [], []
    for di, dj, a in arms:
        ii2, jj2 = ii + di, jj + dj
        linked = (a >= 1.0) & (ii2 >= 0) & (ii2 < nx) & (jj2 >= 0) & (jj2 < ny)
        nb = np.where(linked, idx[jj2 % ny, ii2 % nx], -1)
        linked &= nb >= 0
        # uncut side: standard -1 coupling; cut side (or dropped neighbor):
        # ghost value -(1-a)/a * u from linear extrapolation through u=0
        diag += np.where(linked, 1.0, 1.0 / np.minimum(a, 1.0))
        rows.append(np.nonzero(linked)[0])
        cols.append(nb[linked])
        vals.append(np.full(int(linked.sum()), -1.0))
    rows.append(np.arange(n_unknowns))
    cols.append(np.arange(n_unknowns))
    vals.append(diag)
    mat = sp.coo_matrix(
        (np.concatenate(vals) / h ** 2, (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_unknowns, n_unknowns),
    ).tocsr()
    rhs = np.ones(n_unknowns)

    if n_unknowns <= DIRECT_SOLVE_MAX:
        u = spla.spsolve(mat.tocsc(), rhs)
    else:
        ml = pyamg.smoothed_aggregation_solver(mat)
        u = ml.solve(rhs, tol=CG_RTOL, accel="cg", maxiter=400)
    residual = np.linalg.norm(mat @ u - rhs) / math.sqrt(n_unknowns)
    if residual > 1e3 * CG_RTOL:
        raise SolverError(f"linear solve stalled at residual {residual:.2e}")

    xs = x0 + (ii + 0.5) * h
    ys = y0 + (jj + 0.5) * h
    return xs, ys, u, h * h * float(u.sum())


def torsion_fd_polygon(
    poly,
    h: float,
    refine: int = 1,
    max_nodes: int = 40_000_000,
) -> TorsionSolution:
    """Torsion of a polygon by the cut-cell finite-difference solver.

    Solves at spacings h, h/2, ... h/2^refine (refine in {0, 1, 2}); the
    returned solution lives on the finest grid and its torsion is exactly
    the midpoint quadrature of the stored values. The Richardson difference
    of the last two levels gives error_estimate; with refine = 2 the
    observed convergence order is reported as well.

    Accepts a ConvexPolygon2D or a raw (n, 2) vertex array of any simple
    polygon (the boundary-wiggle family is star-shaped, not convex).
    """
    if refine not in (0, 1, 2):
        raise ValueError("refine must be 0, 1 or 2")
    if h <= 0:
        raise ValueError("grid spacing must be positive")
    vertices = poly.vertices if isinstance(poly, ConvexPolygon2D) else np.asarray(poly, float)
    if isinstance(poly, ConvexPolygon2D) and h > poly.inradius() / 4.0:
        raise ResolutionError(f"h={h:.3g} exceeds a quarter of the inradius")

    torsions = []
    for level in range(refine + 1):
        xs, ys, u, t = _solve_grid(vertices, h / 2 ** level, max_nodes)
        torsions.append(t)

    if refine == 0:
        # no Richardson pair; bound the error by the scheme's O(h^2) model
        # calibrated conservatively on the benchmark domains
        err = abs(torsions[0]) * 0.05
        order = None
    else:
        err = abs(torsions[-1] - torsions[-2]) / 3.0
        order = None
        if refine == 2:
            d1 = torsions[0] - torsions[1]
            d2 = torsions[1] - torsions[2]
            if d2 != 0.0:
                order = math.log2(abs(d1 / d2))
    return TorsionSolution(
        grid_spacing=h / 2 ** refine,
        x=xs,
        y=ys,
        values=u,
        torsion=torsions[-1],
        error_estimate=err,
        order_estimate=order,
        coarse_torsions=tuple(torsions[:-1]),
    )
