"""The alternating zeta function on the critical strip and its orbit under
the vertical translation that fixes the factor 2^{1-s} - 1.

Two deliberately independent evaluators live here:

* ``zeta_star`` sums the alternating Dirichlet series sum (-1)^n n^{-s}
  directly: an explicit head plus an Euler-polynomial (Boole) tail
  correction whose order adapts to |Im s| and the requested tolerance.
  Unlike Chebyshev-weight acceleration schemes, the correction
  coefficients stay tiny, so the evaluator keeps working in double
  precision at |Im s| in the thousands, where the orbit scans live.
* ``zeta_em`` evaluates zeta itself by classical Euler-Maclaurin
  summation. It never sees the alternating series, so the identity
  zeta*(s) = (2^{1-s} - 1) zeta(s) is a genuine cross-check between the
  two routes, not a tautology.

Both evaluators propagate an honest error estimate and refuse tolerances
they cannot reach, naming the achievable one; orbit scans abort rather
than report silently degraded values.

The translation tau moves s down by 2*pi/log(2) in the imaginary
direction. Applied to 2^{1-s} the shift contributes exactly 2*pi*i*n to
the exponent, which reduction modulo 2*pi removes symbolically; the
factor is therefore invariant with zero residual independent of n,
whereas the unreduced evaluation drifts visibly by n = 10^6.

Scans over the strip approximate compact-uniform neighborhoods by
sup-distance on a finite grid; every scan result is exploratory evidence
only, since no finite horizon decides a liminf.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import AccuracyError, ConfigurationError, DomainError
from .recurrence import RecurrenceReport, scan_orbit

LOG2 = math.log(2.0)
TAU_STEP = 2.0 * math.pi / LOG2  # imaginary drop per application of tau

_EPS = 2.0 ** -52
_MIN_TOL = 1e-12
_BOOLE_ORDER = 30
_EM_ORDER = 25


@lru_cache(maxsize=1)
def _bernoulli() -> tuple[Fraction, ...]:
    """B_0..B_64 by the exact recurrence sum C(m+1, k) B_k = 0."""
    table = [Fraction(1)]
    for m in range(1, 65):
        acc = sum(math.comb(m + 1, k) * table[k] for k in range(m))
        table.append(Fraction(-acc, m + 1))
    return tuple(table)


@lru_cache(maxsize=1)
def _euler_at_zero() -> tuple[float, ...]:
    """E_k(0)/k! for k = 0.._BOOLE_ORDER, from E_k(0) = 2(1-2^{k+1})B_{k+1}/(k+1)."""
    bern = _bernoulli()
    out = []
    fac = 1
    for k in range(_BOOLE_ORDER + 1):
        value = Fraction(2) * (1 - 2 ** (k + 1)) * bern[k + 1] / (k + 1)
        out.append(float(value / fac))
        fac *= k + 1
    return tuple(out)


@lru_cache(maxsize=1)
def _bernoulli_over_fact() -> tuple[float, ...]:
    """B_{2j}/(2j)! for j = 1.._EM_ORDER."""
    bern = _bernoulli()
    out = []
    fac = 2
    for j in range(1, _EM_ORDER + 1):
        out.append(float(bern[2 * j] / fac))
        fac *= (2 * j + 1) * (2 * j + 2)
    return tuple(out)


def _check_tol(tol: float) -> None:
    if not tol >= _MIN_TOL:
        raise ConfigurationError(f"tolerance must be >= {_MIN_TOL}, got {tol}")


def _head_terms(s: complex, m: int, alternating: bool) -> tuple[complex, float]:
    """sum_{n<m} (+-1)^n n^{-s} in ascending order; also sum of moduli."""
    n = np.arange(1, m, dtype=np.float64)
    logs = np.log(n)
    terms = np.exp(-s * logs)
    moduli = float(np.sum(np.exp(-s.real * logs)))
    if alternating:
        terms = terms * np.where(np.arange(1, m) % 2 == 0, 1.0, -1.0)
    return complex(np.sum(terms)), moduli


def _rounding_floor(s: complex, m: int, moduli: float) -> float:
    # the arguments Im(s)*log(n) are rounded to ~eps relative accuracy,
    # which perturbs each head term by about |Im s| log(m) eps in angle
    return _EPS * (4.0 + abs(s.imag) * math.log(m + 1.0)) * (1.0 + moduli / math.sqrt(m))


@dataclass(frozen=True)
class Evaluation:
    """A value together with the evaluator's own error estimate."""

    value: complex
    error_estimate: float


def zeta_star_with_estimate(s: complex, tol: float = 1e-12) -> Evaluation:
    """The alternating series sum_{n>=1} (-1)^n n^{-s}, for Re s > 0.

    Head of adaptive length plus a Boole tail: the tail of an alternating
    series of a smooth function f is
    (-1)^M (1/2) sum_k (E_k(0)/k!) f^(k)(M), here with f(x) = x^{-s}.
    The estimate combines the smallest correction term with a rounding
    floor; when it exceeds `tol` the evaluation is refused.
    """
    s = complex(s)
    if not s.real > 0:
        raise DomainError(f"alternating series needs Re s > 0, got {s}")
    _check_tol(tol)
    m = max(18, int(0.8 * (abs(s) + _BOOLE_ORDER)) + 2)
    for attempt in range(4):
        head, moduli = _head_terms(s, m, alternating=True)
        sign = 1.0 if m % 2 == 0 else -1.0
        coeffs = _euler_at_zero()
        poch = 1.0 + 0.0j              # (s)_k, k = 0
        m_pow = cmath.exp(-s * math.log(m))  # M^{-s-k}, k = 0
        tail = 0.0 + 0.0j
        trunc = math.inf
        parity = 1.0
        for k in range(_BOOLE_ORDER):
            term = coeffs[k] * parity * poch * m_pow
            tail += term
            mag = abs(term)
            if 0.0 < mag < trunc:
                trunc = mag
            poch *= s + k
            m_pow /= m
            parity = -parity
        estimate = 2.0 * trunc + _rounding_floor(s, m, moduli)
        if 2.0 * trunc <= tol / 2.0 or attempt == 3:
            if estimate > tol:
                raise AccuracyError(tol, estimate, where=f"s={s}")
            return Evaluation(head + sign * 0.5 * tail, estimate)
        m = int(m * 1.8) + 1
    raise AssertionError("unreachable")


def zeta_star(s: complex, tol: float = 1e-12) -> complex:
    """Value-only form of :func:`zeta_star_with_estimate`."""
    return zeta_star_with_estimate(s, tol).value


def zeta_em_with_estimate(s: complex, tol: float = 1e-12) -> Evaluation:
    """zeta(s) by Euler-Maclaurin summation, for Re s > 0, s != 1.

    Independent oracle for the functional identity: nothing here touches
    the alternating series or the 2^{1-s} - 1 factor.
    """
    s = complex(s)
    if not s.real > 0:
        raise DomainError(f"Euler-Maclaurin route needs Re s > 0, got {s}")
    if s == 1:
        raise DomainError("zeta has a pole at s = 1")
    _check_tol(tol)
    m = max(16, int(0.8 * (abs(s.imag) + 2 * _EM_ORDER)) + 2)
    for attempt in range(4):
        head, moduli = _head_terms(s, m, alternating=False)
        log_m = math.log(m)
        value = head + cmath.exp((1 - s) * log_m) / (s - 1) + 0.5 * cmath.exp(-s * log_m)
        coeffs = _bernoulli_over_fact()
        poch = s                                  # (s)_{2j-1}, j = 1
        m_pow = cmath.exp(-s * log_m) / m         # M^{-s-2j+1}, j = 1
        trunc = math.inf
        corr = 0.0 + 0.0j
        for j in range(1, _EM_ORDER):
            term = coeffs[j - 1] * poch * m_pow
            corr += term
            mag = abs(term)
            if 0.0 < mag < trunc:
                trunc = mag
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            m_pow /= m * m
        estimate = 2.0 * trunc + _rounding_floor(s, m, moduli)
        if 2.0 * trunc <= tol / 2.0 or attempt == 3:
            if estimate > tol:
                raise AccuracyError(tol, estimate, where=f"s={s}")
            return Evaluation(value + corr, estimate)
        m = int(m * 1.8) + 1
    raise AssertionError("unreachable")


def zeta_em(s: complex, tol: float = 1e-12) -> complex:
    """Value-only form of :func:`zeta_em_with_estimate`."""
    return zeta_em_with_estimate(s, tol).value


def identity_residual(s: complex, tol: float = 1e-10) -> float:
    """|zeta*(s) - (2^{1-s} - 1) zeta(s)|, both sides to tolerance `tol`."""
    star = zeta_star(s, tol)
    plain = zeta_em(s, tol)
    return abs(star - (2.0 ** (1 - complex(s)) - 1.0) * plain)


def tau_shift(s: complex, n: int) -> complex:
    """n applications of the translation: s - i * 2*pi*n / log 2."""
    return complex(s) - 1j * (TAU_STEP * n)


def factor_invariance_residual(s: complex, n: int, reduced: bool = True) -> float:
    """|2^{1 - tau^n(s)} - 2^{1-s}|.

    The shift contributes exactly +2*pi*i*n to the exponent of the factor:
    (i*2*pi*n/log 2) * log 2 = 2*pi*i*n with n an exact integer. Reduction
    modulo 2*pi therefore removes it symbolically before exponentiation
    and the residual is exactly zero for every n. With ``reduced=False``
    the factor is evaluated naively from the shifted point; the rounding
    of the huge imaginary part then shows up as drift (diagnostic only).
    """
    s = complex(s)
    base_exp = (1 - s) * LOG2
    if reduced:
        # integer multiple of 2*pi*i reduces to zero exactly
        shifted = cmath.exp(base_exp)
    else:
        shifted = 2.0 ** (1 - tau_shift(s, n))
    return abs(shifted - cmath.exp(base_exp))


@dataclass(frozen=True)
class StripGrid:
    """Finite grid standing in for a compact subset of the open strip
    1/2 < Re s < 1; optional cached function values aligned with points."""

    points: tuple[complex, ...]
    values: Optional[tuple[complex, ...]] = None

    def __post_init__(self):
        for p in self.points:
            if not 0.5 < p.real < 1.0:
                raise ConfigurationError(
                    f"grid point {p} lies outside the strip 1/2 < Re s < 1"
                )
        if self.values is not None and len(self.values) != len(self.points):
            raise ConfigurationError("values must align with points")


def make_grid(re_min: float = 0.6, re_max: float = 0.9,
              im_min: float = -1.0, im_max: float = 1.0,
              n_re: int = 11, n_im: int = 11) -> StripGrid:
    """Rectangular grid, row-major over Re then Im; defaults sit well
    inside the strip."""
    if n_re < 1 or n_im < 1:
        raise ConfigurationError("grid needs at least one point per axis")
    if not (0.5 < re_min <= re_max < 1.0):
        raise ConfigurationError(
            f"Re range [{re_min}, {re_max}] must lie inside (1/2, 1)"
        )
    if im_min > im_max:
        raise ConfigurationError(f"Im range [{im_min}, {im_max}] is empty")
    res = np.linspace(re_min, re_max, n_re) if n_re > 1 else np.array([re_min])
    ims = np.linspace(im_min, im_max, n_im) if n_im > 1 else np.array([im_min])
    points = tuple(complex(re, im) for re in res for im in ims)
    return StripGrid(points=points)


def evaluate_on_grid(grid: StripGrid, tol: float = 1e-10) -> StripGrid:
    """Attach zeta* values to the grid (fixed point order)."""
    values = tuple(zeta_star(p, tol) for p in grid.points)
    return StripGrid(points=grid.points, values=values)


def orbit_sup_distance(grid: StripGrid, n: int, tol: float = 1e-10) -> float:
    """max over the grid of |zeta*(tau^n s) - zeta*(s)|, each value to tol."""
    if n < 0:
        raise ConfigurationError(f"n must be >= 0, got {n}")
    if n == 0:
        return 0.0
    base = grid.values
    if base is None:
        base = tuple(zeta_star(p, tol) for p in grid.points)
    worst = 0.0
    for p, b in zip(grid.points, base):
        d = abs(zeta_star(tau_shift(p, n), tol) - b)
        if d > worst:
            worst = d
    return worst


@dataclass(frozen=True)
class OrbitScan:
    """Exploratory return-time scan of the zeta* orbit on one grid.

    ``exploratory`` is always True: the density statement behind the scan
    is a liminf over all horizons and no finite scan decides it.
    """

    report: RecurrenceReport
    distances: tuple[float, ...]
    exploratory: bool = True


def recurrence_scan(grid: StripGrid, epsilon: float, horizon: int,
                    tol: float = 1e-9) -> OrbitScan:
    """Scan n = 1..N for shifts with sup-distance below epsilon.

    Accuracy failures abort the whole scan, naming the failing shift;
    a partial scan would silently understate distances.
    """
    if horizon < 1:
        raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
    primed = evaluate_on_grid(grid, tol) if grid.values is None else grid

    def distance_fn(n: int) -> float:
        try:
            return orbit_sup_distance(primed, n, tol)
        except AccuracyError as exc:
            raise AccuracyError(exc.requested, exc.achievable,
                                where=f"orbit shift n={n}") from exc

    report, distances = scan_orbit(distance_fn, epsilon, horizon)
    return OrbitScan(report=report, distances=tuple(distances))
