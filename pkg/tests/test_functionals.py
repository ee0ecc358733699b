import math

import pytest

from torsionlab.functionals import (
    BoundReport,
    ShapeMeasures,
    alpha_q,
    ball_f_q,
    ball_measures,
    borell_constant,
    f_half_bounds,
    f_q,
    f_q_bounds,
    polya_torsion_lower,
    ratio_checks,
)
from torsionlab.torsion import torsion_rectangle_series


def test_alpha_q_values():
    assert alpha_q(0.5, 2) == pytest.approx(1.5)
    assert alpha_q(0.5, 3) == pytest.approx(1.5)
    assert alpha_q(1.0, 2) == pytest.approx(2.5)
    assert alpha_q(1.0, 3) == pytest.approx(7.0 / 3.0)
    with pytest.raises(ValueError):
        alpha_q(0.0, 2)
    with pytest.raises(ValueError):
        alpha_q(0.5, 1)


@pytest.mark.parametrize("d", [2, 3, 5])
@pytest.mark.parametrize("q", [0.25, 0.5, 1.0, 2.0])
def test_f_q_scale_invariance(d, q):
    m = ball_measures(d, 1.0)
    for t in (0.3, 2.0, 11.0):
        assert f_q(m.scaled(t), q) == pytest.approx(f_q(m, q), rel=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_ball_f_half_closed_form(d):
    # F_{1/2}(ball) = sqrt(d / (d + 2))
    assert ball_f_q(d, 0.5) == pytest.approx(math.sqrt(d / (d + 2.0)), rel=1e-13)
    assert f_q(ball_measures(d, 1.7), 0.5) == pytest.approx(ball_f_q(d, 0.5), rel=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5])
@pytest.mark.parametrize("q", [0.25, 0.5, 0.75, 1.5])
def test_f_q_factorization_identity(d, q):
    # F_q = F_{1/2} * (T / V^{(d+2)/d})^{q - 1/2}
    m = ShapeMeasures(d=d, perimeter=5.0, torsion=0.02, volume=1.3)
    sv = m.torsion / m.volume ** ((d + 2.0) / d)
    assert f_q(m, q) == pytest.approx(f_q(m, 0.5) * sv ** (q - 0.5), rel=1e-12)


def test_measures_validation():
    with pytest.raises(ValueError):
        ShapeMeasures(d=2, perimeter=0.0, torsion=1.0, volume=1.0)
    with pytest.raises(ValueError):
        ShapeMeasures(d=2, perimeter=1.0, torsion=1.0, volume=1.0, torsion_error=-1.0)


def test_polya_lower_bound():
    # unit square: T >= V^3 / (3 P^2) = 1/48
    m = ShapeMeasures(d=2, perimeter=4.0, torsion=torsion_rectangle_series(1.0, 1.0), volume=1.0)
    rep = polya_torsion_lower(m)
    assert rep.satisfied
    assert rep.bound == pytest.approx(1.0 / 48.0)
    assert rep.margin > 0
    bad = ShapeMeasures(d=2, perimeter=4.0, torsion=1e-3, volume=1.0)
    assert not polya_torsion_lower(bad).satisfied


def test_polya_tolerance_and_error_slack():
    m = ShapeMeasures(d=2, perimeter=4.0, torsion=1.0 / 48.0 - 1e-6, volume=1.0)
    assert not polya_torsion_lower(m).satisfied
    assert polya_torsion_lower(m, tol=1e-5).satisfied
    noisy = ShapeMeasures(
        d=2, perimeter=4.0, torsion=1.0 / 48.0 - 1e-6, volume=1.0, torsion_error=1e-5
    )
    assert polya_torsion_lower(noisy).satisfied


@pytest.mark.parametrize("d", range(2, 11))
def test_f_half_bounds_sandwich(d):
    lower, upper, conjecture = f_half_bounds(d)
    assert lower == pytest.approx(3.0 ** -0.5, rel=1e-14)
    assert lower < ball_f_q(d, 0.5) < upper
    assert lower < conjecture < upper
    assert ball_f_q(d, 0.5) < conjecture


def test_f_half_bounds_d2_constants():
    lower, upper, conjecture = f_half_bounds(2)
    assert conjecture == pytest.approx(2.0 / math.sqrt(6.0), rel=1e-14)
    assert upper == pytest.approx(32.0 / math.pi * math.sqrt(0.5), rel=1e-13)


@pytest.mark.parametrize("d", range(2, 11))
def test_f_q_bounds_interpolate_f_half(d):
    lo_h, up_h, _ = f_half_bounds(d)
    lo, up = f_q_bounds(0.5, d)
    assert lo == pytest.approx(lo_h, rel=1e-12)
    assert up == pytest.approx(up_h, rel=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_f_q_bounds_ranges(d):
    lo, up = f_q_bounds(0.25, d)
    assert lo is not None and up is None
    assert lo < ball_f_q(d, 0.25)
    lo, up = f_q_bounds(1.0, d)
    assert lo is None and up is not None
    assert up > ball_f_q(d, 1.0)


def test_borell_constant_values():
    # C_{1,3} with N = 1: binom(2,1) / binom(4,1)^{1/3} = 2 / 4^{1/3}
    assert borell_constant(1.0, 3.0, 1) == pytest.approx(2.0 / 4.0 ** (1.0 / 3.0), rel=1e-13)
    assert borell_constant(2.0, 2.0, 5) == pytest.approx(1.0, rel=1e-13)
    with pytest.raises(ValueError):
        borell_constant(0.5, 3.0, 1)
    with pytest.raises(ValueError):
        borell_constant(3.0, 1.0, 1)


def test_borell_monotone_in_q():
    for N in (1, 2, 4):
        c13 = borell_constant(1.0, 3.0, N)
        c15 = borell_constant(1.0, 5.0, N)
        assert 1.0 < c13 < c15


@pytest.mark.parametrize("d", range(2, 11))
def test_lower_constant_borell_identity(d):
    # 3^{-1/2} equals the tent-profile value of the thin limit through the
    # reverse-Hoelder constant: conjecture = 3^{-1/2} * C_{1,3}(N=d-1)^{3/2}
    _, _, conjecture = f_half_bounds(d)
    c = borell_constant(1.0, 3.0, d - 1)
    assert 3.0 ** -0.5 * c ** 1.5 == pytest.approx(conjecture, rel=1e-12)


def test_ratio_checks_on_ball_are_tight():
    for d in (2, 3, 6):
        iso, sv = ratio_checks(ball_measures(d))
        assert iso.satisfied and sv.satisfied
        assert iso.margin == pytest.approx(0.0, abs=1e-10)
        assert sv.margin == pytest.approx(0.0, abs=1e-10)


def test_ratio_checks_on_square():
    m = ShapeMeasures(d=2, perimeter=4.0, torsion=torsion_rectangle_series(1.0, 1.0), volume=1.0)
    iso, sv = ratio_checks(m)
    assert iso.satisfied and iso.margin > 0
    assert sv.satisfied and sv.margin > 0
    assert iso.value == pytest.approx(4.0)
    assert sv.bound == pytest.approx(1.0 / (8.0 * math.pi), rel=1e-12)


def test_ratio_checks_catch_violations():
    # impossible measures: perimeter below the isoperimetric floor,
    # torsion above the Saint-Venant ceiling
    m = ShapeMeasures(d=2, perimeter=3.0, torsion=0.2, volume=1.0)
    iso, sv = ratio_checks(m)
    assert not iso.satisfied
    assert not sv.satisfied
    # torsion error opens the Saint-Venant slack but not the isoperimetric one
    noisy = ShapeMeasures(d=2, perimeter=3.0, torsion=0.2, volume=1.0, torsion_error=0.5)
    iso2, sv2 = ratio_checks(noisy)
    assert not iso2.satisfied
    assert sv2.satisfied


def test_bound_report_csv_row():
    rep = BoundReport(name="demo", value=1.5, bound=2.0, satisfied=True, margin=0.5)
    assert rep.csv_row() == "demo,1.5,2,true,0.5"
