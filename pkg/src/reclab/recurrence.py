"""Return-time statistics for orbits, and finite sums of unimodular
eigenvectors, which return uniformly.

A point is recurrent when its orbit re-enters every neighborhood
infinitely often; stronger notions ask for positive lower density of the
return set or for bounded gaps. Finite data can only ever produce
*evidence* for the limit statements, and everything here is labeled
accordingly.

Neighborhoods are metric balls: the caller supplies the orbit distance
function, so the same machinery serves vectors in sequence space and
function orbits measured by sup-distance on a grid.

For a sum x = x_1 + ... + x_d of pairwise-orthogonal eigenvectors with
eigenvalues exp(2*pi*i*theta_j), the orbit distance has the closed form
sqrt(sum w_j^2 |e^{2 pi i n theta_j} - 1|^2) with w_j = ||x_j||, and the
orbit is conjugate to the translation z -> (lambda_j z_j) on the d-torus.
(Non-orthogonal components satisfy the same uniform-recurrence theorem in
any topological vector space, but then the orbit distance has no closed
form and is not implemented here.)

Angle arithmetic is exact: rational angles reduce as integers mod the
denominator, and float angles reduce through their exact binary fraction,
so n*theta mod 1 carries no drift even at n = 10^6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import ConfigurationError

Angle = Union[Fraction, float]


@dataclass(frozen=True)
class RecurrenceReport:
    """Return times of one orbit within a finite horizon.

    ``max_gap`` is the largest spacing in (0, t_1, ..., t_m) together with
    the trailing gap N - t_m; an orbit with no returns has max_gap = N.
    """

    epsilon: float
    horizon: int
    return_times: tuple[int, ...]
    count: int
    density: Fraction
    max_gap: int

    @classmethod
    def from_times(cls, epsilon: float, horizon: int,
                   times: Sequence[int]) -> "RecurrenceReport":
        times = tuple(times)
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise ValueError("return times must be strictly increasing")
        if times:
            gaps = [times[0]] + [t2 - t1 for t1, t2 in zip(times, times[1:])]
            gaps.append(horizon - times[-1])
            max_gap = max(gaps)
        else:
            max_gap = horizon
        return cls(
            epsilon=epsilon,
            horizon=horizon,
            return_times=times,
            count=len(times),
            density=Fraction(len(times), horizon),
            max_gap=max_gap,
        )

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "horizon": self.horizon,
            "count": self.count,
            "density": float(self.density),
            "max_gap": self.max_gap,
            "return_times": list(self.return_times),
        }


def scan_orbit(distance_fn: Callable[[int], float], epsilon: float,
               horizon: int) -> tuple[RecurrenceReport, list[float]]:
    """Evaluate the orbit distance for n = 1..N once; report plus distances."""
    if epsilon <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    if horizon < 1:
        raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
    distances = [float(distance_fn(n)) for n in range(1, horizon + 1)]
    times = [n for n, d in enumerate(distances, start=1) if d < epsilon]
    return RecurrenceReport.from_times(epsilon, horizon, times), distances


def return_times(distance_fn: Callable[[int], float], epsilon: float,
                 horizon: int) -> RecurrenceReport:
    """Return times {n <= N : distance(T^n x, x) < epsilon} of one orbit."""
    report, _ = scan_orbit(distance_fn, epsilon, horizon)
    return report


@dataclass(frozen=True)
class Classification:
    """Empirical indicators only: finite data decides no limsup/liminf."""

    label: str  # "recurrent_evidence" | "nonrecurrent_evidence"
    strong_density: float
    uniform_gap: int


def classify(report: RecurrenceReport) -> Classification:
    label = "nonrecurrent_evidence" if report.count == 0 else "recurrent_evidence"
    return Classification(
        label=label,
        strong_density=float(report.density),
        uniform_gap=report.max_gap,
    )


def reduce_angle(theta: Angle, n: int) -> Fraction:
    """n*theta mod 1 as an exact fraction (float angles via their exact
    binary value)."""
    if isinstance(theta, Fraction):
        return Fraction((n * theta.numerator) % theta.denominator,
                        theta.denominator)
    p, q = float(theta).as_integer_ratio()
    return Fraction((n * p) % q, q)


@dataclass(frozen=True)
class FiniteEigenSum:
    """Orthogonal eigenvector components encoded by angles and weights.

    ``angles[j]`` is theta_j in [0, 1) with eigenvalue exp(2*pi*i*theta_j);
    ``weights[j]`` is the norm of the j-th component.
    """

    angles: tuple[Angle, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if not self.angles:
            raise ConfigurationError("need at least one component")
        if len(self.angles) != len(self.weights):
            raise ConfigurationError("angles and weights must pair up")
        if any(not 0 <= float(a) < 1 for a in self.angles):
            raise ConfigurationError("angles must lie in [0, 1)")
        exact = [Fraction(a) for a in self.angles]  # exact for floats too
        if len(set(exact)) != len(exact):
            raise ConfigurationError("angles must be pairwise distinct")
        if any(w <= 0 for w in self.weights):
            raise ConfigurationError("weights must be positive")

    @property
    def d(self) -> int:
        return len(self.angles)


def eigensum_distance(esum: FiniteEigenSum, n: int) -> float:
    """||u^n x - x|| = sqrt(sum w_j^2 |e^{2 pi i n theta_j} - 1|^2).

    |e^{2 pi i a} - 1| = 2 |sin(pi a)| with a the exactly reduced angle.
    """
    if n < 0:
        raise ConfigurationError(f"n must be >= 0, got {n}")
    parts = []
    for theta, w in zip(esum.angles, esum.weights):
        frac = reduce_angle(theta, n)
        gap = 2.0 * abs(math.sin(math.pi * float(frac)))
        parts.append((w * gap) ** 2)
    return math.sqrt(math.fsum(parts))


def torus_conjugacy_residual(esum: FiniteEigenSum, n: int) -> float:
    """Drift between two routes to the n-th torus translate.

    The translate (e^{2 pi i n theta_j})_j is computed by iterated
    multiplication and by direct exact angle reduction; both images are
    mapped through the weighted-sum conjugacy and the distance between
    them is returned. Iterated multiplication drifts like n * eps, so the
    residual stays below 1e-9 for n up to 1e5.
    """
    if n < 0:
        raise ConfigurationError(f"n must be >= 0, got {n}")
    lams = [complex(math.cos(2.0 * math.pi * float(a)),
                    math.sin(2.0 * math.pi * float(a))) for a in esum.angles]
    iterated = [1.0 + 0.0j] * esum.d
    for _ in range(n):
        iterated = [z * lam for z, lam in zip(iterated, lams)]
    parts = []
    for z_it, theta, w in zip(iterated, esum.angles, esum.weights):
        frac = float(reduce_angle(theta, n))
        direct = complex(math.cos(2.0 * math.pi * frac),
                         math.sin(2.0 * math.pi * frac))
        parts.append((w * abs(z_it - direct)) ** 2)
    return math.sqrt(math.fsum(parts))


def uniform_gap_scan(esum: FiniteEigenSum, epsilon: float, horizon: int) -> int:
    """Smallest window length L such that every window (m-L, m] with
    L <= m <= N contains a return time; N when no such L exists.

    Equals max(t_1, successive differences, N - t_m + 1) over the return
    times t_1 < ... < t_m. A result much smaller than N that is stable
    when N doubles is the uniform-recurrence evidence the finite
    eigenvector sums are expected to produce.
    """
    report = return_times(lambda n: eigensum_distance(esum, n), epsilon, horizon)
    times = report.return_times
    if not times:
        return horizon
    best = times[0]
    for t1, t2 in zip(times, times[1:]):
        best = max(best, t2 - t1)
    return max(best, horizon - times[-1] + 1)
