import math

import numpy as np
import pytest

from reclab import zeta_orbit as zo
from reclab.errors import AccuracyError, ConfigurationError, DomainError

ZETA3 = 1.2020569031595942854  # Apery's constant, fixed reference


def euler_transform_alternating(s, terms=400, depth=60):
    """Independent oracle: raw partial sums of sum (-1)^n n^{-s}, then
    repeated averaging. Converges like 2^{-depth} for moderate |Im s|."""
    n = np.arange(1, terms + 1)
    vals = np.exp(-s * np.log(n.astype(float)))
    vals = vals * np.where(n % 2 == 0, 1.0, -1.0)
    partial = np.cumsum(vals)
    tail = partial[-(depth + 1):]
    for _ in range(depth):
        tail = 0.5 * (tail[1:] + tail[:-1])
    return complex(tail[0])


def test_zeta_star_at_2():
    assert abs(zo.zeta_star(2.0) - (-math.pi ** 2 / 12.0)) <= 1e-10


def test_zeta_star_at_1():
    assert abs(zo.zeta_star(1.0) - (-math.log(2.0))) <= 1e-10


def test_zeta_star_at_3():
    assert abs(zo.zeta_star(3.0) - (-0.75 * ZETA3)) <= 1e-10


@pytest.mark.parametrize("s", [0.8 + 2j, 0.6 + 4.5j, 2.5 + 1j, 0.75 + 0j])
def test_zeta_star_against_euler_transform(s):
    assert abs(zo.zeta_star(s) - euler_transform_alternating(complex(s))) <= 1e-12


def test_zeta_star_domain():
    with pytest.raises(DomainError):
        zo.zeta_star(-0.5 + 3j)
    with pytest.raises(DomainError):
        zo.zeta_star(0.0)


def test_zeta_star_tolerance_validation():
    with pytest.raises(ConfigurationError):
        zo.zeta_star(2.0, tol=1e-13)


def test_zeta_star_unattainable_tolerance_names_achievable():
    with pytest.raises(AccuracyError) as err:
        zo.zeta_star(0.6 + 5000j, tol=1e-12)
    assert err.value.achievable > 1e-12


def test_zeta_star_large_imaginary_part_still_works():
    # the orbit scans reach shifts of thousands; a loose tolerance must succeed
    value = zo.zeta_star(0.75 + 1813.0j, tol=1e-9)
    assert np.isfinite(value.real) and np.isfinite(value.imag)


def test_evaluators_expose_error_estimates():
    ev = zo.zeta_star_with_estimate(2.0)
    assert ev.error_estimate < 1e-12
    assert abs(ev.value - (-math.pi ** 2 / 12.0)) <= ev.error_estimate
    ev = zo.zeta_em_with_estimate(2.0)
    assert abs(ev.value - math.pi ** 2 / 6.0) <= ev.error_estimate


def test_zeta_em_classical_values():
    assert abs(zo.zeta_em(2.0) - math.pi ** 2 / 6.0) <= 1e-12
    assert abs(zo.zeta_em(4.0) - math.pi ** 4 / 90.0) <= 1e-12
    assert abs(zo.zeta_em(3.0) - ZETA3) <= 1e-12


def test_zeta_em_pole_and_domain():
    with pytest.raises(DomainError):
        zo.zeta_em(1.0)
    with pytest.raises(DomainError):
        zo.zeta_em(-2.0)


def test_independence_cross_check():
    # same content as the identity, read in the other direction
    for s in (0.75 + 10j, 0.6 + 5j, 0.9 + 0j):
        lhs = zo.zeta_em(s)
        rhs = zo.zeta_star(s) / (2.0 ** (1 - complex(s)) - 1.0)
        assert abs(lhs - rhs) <= 1e-8


@pytest.mark.parametrize("s", [2.0 + 0j, 0.6 + 5j, 0.9 + 0j, 0.63 + 28.7j])
def test_identity_residual_pointwise(s):
    assert zo.identity_residual(s) <= 1e-9


def test_identity_residual_on_grid():
    res = np.linspace(0.6, 0.9, 10)
    ims = np.linspace(0.0, 30.0, 10)
    worst = max(zo.identity_residual(complex(re, im)) for re in res for im in ims)
    assert worst <= 1e-8


def test_conjugate_symmetry():
    for s in (0.7 + 9j, 0.85 + 23.5j, 0.6 + 1j):
        delta = abs(zo.zeta_star(np.conjugate(s)) - np.conjugate(zo.zeta_star(s)))
        assert delta <= 1e-12


def test_tau_shift_values():
    assert zo.tau_shift(0.75, 0) == 0.75
    shifted = zo.tau_shift(0.75, 1)
    assert shifted.real == 0.75
    assert shifted.imag == pytest.approx(-9.06472028365439, abs=1e-11)
    assert zo.TAU_STEP == pytest.approx(2.0 * math.pi / math.log(2.0), rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 10 ** 3, 10 ** 6])
def test_factor_invariance_reduced(n):
    assert zo.factor_invariance_residual(0.75 + 0.3j, n) <= 1e-12


def test_factor_invariance_naive_drifts():
    # the unreduced evaluation shows why the symbolic reduction is needed
    assert zo.factor_invariance_residual(0.75, 10 ** 6, reduced=False) > 1e-12


def test_grid_validation():
    with pytest.raises(ConfigurationError):
        zo.StripGrid(points=(complex(0.4, 0.0),))
    with pytest.raises(ConfigurationError):
        zo.make_grid(re_min=0.5, re_max=0.9)
    grid = zo.make_grid(n_re=3, n_im=3)
    assert len(grid.points) == 9
    assert all(0.5 < p.real < 1.0 for p in grid.points)


def test_orbit_sup_distance_zero_shift():
    grid = zo.make_grid(n_re=2, n_im=2)
    assert zo.orbit_sup_distance(grid, 0) == 0.0


def test_orbit_sup_distance_deterministic_and_bounded():
    grid = zo.evaluate_on_grid(zo.make_grid(n_re=3, n_im=3), tol=1e-10)
    d1 = zo.orbit_sup_distance(grid, 1, tol=1e-10)
    d2 = zo.orbit_sup_distance(grid, 1, tol=1e-10)
    assert d1 == d2
    assert d1 > 0.0
    values = [abs(zo.zeta_star(p)) for p in grid.points]
    shifted = [abs(zo.zeta_star(zo.tau_shift(p, 1), 1e-10)) for p in grid.points]
    assert d1 <= max(values) + max(shifted)


def test_recurrence_scan_reproducible():
    grid = zo.make_grid(n_re=3, n_im=3)
    scan1 = zo.recurrence_scan(grid, epsilon=2.0, horizon=8)
    scan2 = zo.recurrence_scan(grid, epsilon=2.0, horizon=8)
    assert scan1.exploratory is True
    assert scan1.distances == scan2.distances
    assert scan1.report == scan2.report
    assert scan1.report.horizon == 8


def test_recurrence_scan_huge_ball_captures_everything():
    grid = zo.make_grid(n_re=2, n_im=2)
    scan = zo.recurrence_scan(grid, epsilon=1e3, horizon=5)
    assert scan.report.count == 5
    assert scan.report.density == 1


def test_recurrence_scan_epsilon_validation():
    grid = zo.make_grid(n_re=2, n_im=2)
    with pytest.raises(ConfigurationError):
        zo.recurrence_scan(grid, epsilon=0.0, horizon=5)


def test_recurrence_scan_aborts_naming_failing_shift():
    # deep shifts cannot reach 1e-12: the scan must abort, not degrade
    grid = zo.make_grid(n_re=2, n_im=2)
    with pytest.raises(AccuracyError) as err:
        zo.recurrence_scan(grid, epsilon=1.0, horizon=200, tol=1e-12)
    assert "orbit shift n=" in str(err.value)
