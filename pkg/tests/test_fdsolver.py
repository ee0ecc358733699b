import math

import numpy as np
import pytest

from torsionlab.fdsolver import ResolutionError, TorsionSolution, torsion_fd_polygon
from torsionlab.geometry import ConvexPolygon2D, regular_polygon
from torsionlab.torsion import torsion_ball, torsion_rectangle_series


def unit_square():
    return ConvexPolygon2D(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float))


def test_square_against_series():
    sol = torsion_fd_polygon(unit_square(), 1.0 / 32.0, refine=1)
    exact = torsion_rectangle_series(1.0, 1.0)
    assert sol.torsion == pytest.approx(exact, rel=5e-4)
    assert abs(sol.torsion - exact) <= 5.0 * sol.error_estimate


def test_disk_against_closed_form():
    sol = torsion_fd_polygon(regular_polygon(256), 1.0 / 32.0, refine=1)
    assert sol.torsion == pytest.approx(torsion_ball(2, 1.0), rel=1e-3)


def test_thin_rectangle_against_series():
    rect = ConvexPolygon2D(np.array([[0, 0], [1, 0], [1, 0.1], [0, 0.1]], float))
    sol = torsion_fd_polygon(rect, 0.1 / 16.0, refine=1)
    assert sol.torsion == pytest.approx(torsion_rectangle_series(1.0, 0.1), rel=2e-3)


def test_square_richardson_order():
    sol = torsion_fd_polygon(unit_square(), 1.0 / 16.0, refine=2)
    assert sol.order_estimate == pytest.approx(2.0, abs=0.3)
    assert len(sol.coarse_torsions) == 2


def test_torsion_is_midpoint_quadrature():
    sol = torsion_fd_polygon(unit_square(), 1.0 / 16.0, refine=1)
    assert sol.torsion == sol.grid_spacing ** 2 * float(sol.values.sum())
    assert sol.grid_spacing == 1.0 / 32.0


def test_dilation_scaling():
    poly = unit_square()
    big = poly.scaled(2.0)
    t1 = torsion_fd_polygon(poly, 1.0 / 32.0, refine=1).torsion
    t2 = torsion_fd_polygon(big, 2.0 / 32.0, refine=1).torsion
    assert t2 == pytest.approx(16.0 * t1, rel=1e-10)


def test_domain_monotonicity():
    inner = unit_square()
    outer = ConvexPolygon2D(np.array([[-0.2, -0.2], [1.2, -0.2], [1.2, 1.2], [-0.2, 1.2]]))
    t_in = torsion_fd_polygon(inner, 1.0 / 32.0, refine=1).torsion
    t_out = torsion_fd_polygon(outer, 1.0 / 32.0, refine=1).torsion
    assert t_in < t_out


def test_maximum_principle():
    # 0 <= u <= (R^2 - |x - c|^2) / 4 for any disk of radius R containing the domain
    sol = torsion_fd_polygon(unit_square(), 1.0 / 32.0, refine=0)
    assert np.all(sol.values >= 0.0)
    r2 = (sol.x - 0.5) ** 2 + (sol.y - 0.5) ** 2
    assert np.all(sol.values <= (0.5 - r2) / 4.0 + 1e-12)


def test_refine_zero_has_crude_error():
    sol = torsion_fd_polygon(unit_square(), 1.0 / 32.0, refine=0)
    assert sol.error_estimate == pytest.approx(0.05 * sol.torsion)
    assert sol.order_estimate is None
    assert sol.coarse_torsions == ()


def test_richardson_error_estimate_brackets_truth():
    sol = torsion_fd_polygon(unit_square(), 1.0 / 16.0, refine=1)
    exact = torsion_rectangle_series(1.0, 1.0)
    assert abs(sol.torsion - exact) <= 5.0 * sol.error_estimate


def test_nonconvex_raw_vertices_accepted():
    # L-shape: torsion must sit between the 1x1 square and the 2x2 square
    ell = np.array([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]], float)
    sol = torsion_fd_polygon(ell, 1.0 / 32.0, refine=1)
    assert torsion_rectangle_series(1.0, 1.0) < sol.torsion < torsion_rectangle_series(2.0, 2.0)


def test_coarse_grid_rejected():
    with pytest.raises(ResolutionError):
        torsion_fd_polygon(unit_square(), 0.3, refine=0)


def test_node_budget_rejected():
    with pytest.raises(ResolutionError):
        torsion_fd_polygon(unit_square(), 1.0 / 64.0, refine=0, max_nodes=100)


def test_bad_arguments_rejected():
    with pytest.raises(ValueError):
        torsion_fd_polygon(unit_square(), 1.0 / 16.0, refine=3)
    with pytest.raises(ValueError):
        torsion_fd_polygon(unit_square(), -0.01)


def test_solution_csv(tmp_path):
    sol = torsion_fd_polygon(unit_square(), 1.0 / 8.0, refine=0)
    path = tmp_path / "nodes.csv"
    sol.to_csv(path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "x,y,u"
    assert len(lines) == len(sol.values) + 1
    assert isinstance(sol, TorsionSolution)
