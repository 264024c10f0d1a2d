"""Roots of unity and the eigenstructure of the weighted cyclic shift.

For the shift on C^n (n = k! in applications) the vectors

    X_lambda = sum_{j=1}^n (2 lambda)^{j-1} e_j,   lambda^n = 1

are eigenvectors with eigenvalue lambda^{-1}. Their entries span n-1
binary orders of magnitude, so everything here works with the scaled form

    Xhat_lambda = 2^{1-n} X_lambda

whose entry j has modulus 2^{j-n} <= 1. For n > 1070 the smallest entries
fall below the subnormal floor and flush to zero; this perturbs norms by
less than 1e-300 and is accepted for the exhaustive partial-sum scans.

Roots are always produced from integer indices by argument reduction
(angle = 2*pi*(m mod n)/n), never by repeated multiplication, so powers
of roots are exact index arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .block_operator import apply_block
from .errors import ConfigurationError
from .seqspace import array_norm

_MAX_SCAN_K = 8
_MAX_RECONSTRUCTION_N = 720


@dataclass(frozen=True)
class RootOfUnity:
    """The root exp(2*pi*i*m/n), identified by its integer index m mod n."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 2:
            raise ConfigurationError(f"order must be >= 2, got {self.n}")
        object.__setattr__(self, "m", self.m % self.n)

    @property
    def value(self) -> complex:
        g = math.gcd(self.m, self.n)
        return complex(np.exp(2j * np.pi * (self.m // g) / (self.n // g)))

    def pow(self, p: int) -> "RootOfUnity":
        return RootOfUnity(self.n, (self.m * p) % self.n)

    @property
    def inverse(self) -> "RootOfUnity":
        return self.pow(-1)


@lru_cache(maxsize=16)
def roots_table(n: int) -> np.ndarray:
    """All n-th roots of unity, indexed by exponent; read-only."""
    table = np.exp(2j * np.pi * np.arange(n) / n)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=16)
def _pow2_tail(n: int) -> np.ndarray:
    """The moduli 2^{j-n} for j = 1..n; entries below 2^-1074 flush to 0."""
    with np.errstate(under="ignore"):
        arr = 2.0 ** np.arange(1 - n, 1, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ScaledEigenvector:
    """Xhat_lambda with entries lambda^{j-1} 2^{j-n}; top entry has modulus 1."""

    n: int
    root: RootOfUnity
    coefficients: np.ndarray


def _xhat_array(n: int, m: int) -> np.ndarray:
    idx = (m * np.arange(n, dtype=np.int64)) % n
    return roots_table(n)[idx] * _pow2_tail(n)


def scaled_eigenvector(n: int, root: RootOfUnity) -> ScaledEigenvector:
    """Build Xhat_lambda for lambda of order dividing n."""
    if n < 2:
        raise ConfigurationError(f"n must be >= 2, got {n}")
    if n % root.n != 0:
        raise ConfigurationError(
            f"root order {root.n} does not divide the ambient order {n}"
        )
    m = root.m * (n // root.n)
    coeffs = _xhat_array(n, m)
    coeffs.setflags(write=False)
    return ScaledEigenvector(n=n, root=RootOfUnity(n, m), coefficients=coeffs)


def eigen_residual(k: int, root: RootOfUnity) -> float:
    """Relative residual of the eigen relation on block k.

    Applies the shift to Xhat_lambda and compares with lambda^{-1}
    Xhat_lambda; the scaling by 2^{1-n} drops out by linearity.
    """
    if k < 2:
        raise ConfigurationError(f"k must be >= 2, got {k}")
    n = math.factorial(k)
    vec = scaled_eigenvector(n, root)
    arr = vec.coefficients
    shifted = apply_block(k, arr)
    expected = vec.root.inverse.value * arr
    return array_norm(shifted - expected) / array_norm(arr)


@lru_cache(maxsize=8)
def _dft_sums_extended(n: int) -> tuple:
    """D(p) = sum_m omega^{m p} over all n-th roots, at n + 64 bits.

    Reconstructing e_j multiplies these sums by up to 2^{n-1}, so their
    cancellation must be resolved below 2^{-n}; double precision cannot do
    that for n >= 24, hence the extended working precision.
    """
    prec = n + 64
    with mp.workprec(prec):
        table = [mp.expjpi(mp.mpf(2 * q) / n) for q in range(n)]
        sums = []
        for p in range(n):
            acc = mp.mpc(0)
            for m in range(n):
                acc += table[(m * p) % n]
            sums.append(acc)
    return tuple(sums)


def basis_from_eigen(n: int, j: int) -> np.ndarray:
    """Reconstruct e_j as (2^{n-j}/n) * sum_lambda lambda^{1-j} Xhat_lambda.

    Entry j' of the sum is 2^{j'-n} D(j'-j mod n); the prefactor amplifies
    the inner cancellation by 2^{j'-j}, so the sums are evaluated in
    extended precision and only the final entries are rounded to doubles.
    """
    if not 2 <= n <= _MAX_RECONSTRUCTION_N:
        raise ConfigurationError(
            f"n must lie in 2..{_MAX_RECONSTRUCTION_N}, got {n}"
        )
    if not 1 <= j <= n:
        raise ConfigurationError(f"j must lie in 1..{n}, got {j}")
    sums = _dft_sums_extended(n)
    out = np.empty(n, dtype=np.complex128)
    with mp.workprec(n + 64):
        inv_n = mp.mpf(1) / n
        for jp in range(1, n + 1):
            val = mp.ldexp(inv_n, jp - j) * sums[(jp - j) % n]
            out[jp - 1] = complex(val)
    return out


def dft_orthogonality_residual(n: int, p: int) -> float:
    """|sum over U_n of lambda^p - n*[p == 0 mod n]|, summed directly."""
    table = roots_table(n)
    idx = (p * np.arange(n, dtype=np.int64)) % n
    total = complex(np.sum(table[idx]))
    expected = float(n) if p % n == 0 else 0.0
    return abs(total - expected)


def ordered_root(k: int, a: int) -> RootOfUnity:
    """The a-th root in the grouped enumeration of U_{k!}.

    Writing a = r*k + b with 0 <= b <= k-1 and 0 <= r <= (k-1)!-1, the
    root has index b*(k-1)! + r. The map a -> index is a bijection on
    0..k!-1: consecutive groups of k roots share the residue r.
    """
    if k < 2:
        raise ConfigurationError(f"k must be >= 2, got {k}")
    n = math.factorial(k)
    if not 0 <= a <= n - 1:
        raise ConfigurationError(f"a must lie in 0..{n - 1}, got {a}")
    r, b = divmod(a, k)
    return RootOfUnity(n, b * math.factorial(k - 1) + r)


def ordered_term(k: int, a: int) -> np.ndarray:
    """The a-th summand lambda_a^k Xhat_{lambda_a} of the ordered series."""
    root = ordered_root(k, a)
    n, m = root.n, root.m
    # lambda^k * lambda^{j-1} collapses to a single index per entry
    idx = (m * (np.arange(n, dtype=np.int64) + k)) % n
    return roots_table(n)[idx] * _pow2_tail(n)


def _ordered_terms(k: int):
    """Yield all k! ordered terms, updating root indices incrementally.

    The entrywise index of term a is (m_a * (j + k)) mod n; consecutive
    terms change m_a by a constant, so the index array advances by a
    precomputed increment with a single conditional wrap. All arithmetic
    stays in exact integers.
    """
    n = math.factorial(k)
    fkm1 = math.factorial(k - 1)
    table = roots_table(n)
    pow2 = _pow2_tail(n)
    jj = np.arange(n, dtype=np.int64) + k
    idx = (0 * jj) % n  # m_0 = 0
    # increments for m -> m + (k-1)! (within a group) and the group step
    step_b = (fkm1 * jj) % n
    step_r = ((1 - (k - 1) * fkm1) % n * jj) % n
    for a in range(n):
        yield table[idx] * pow2
        if a == n - 1:
            break
        inc = step_b if (a + 1) % k else step_r
        idx = idx + inc
        idx[idx >= n] -= n


def ordered_partial_sum(k: int, upto: int) -> np.ndarray:
    """Shat_A: the ordered series summed through index `upto`, incrementally."""
    if k < 2 or k > _MAX_SCAN_K:
        raise ConfigurationError(f"k must lie in 2..{_MAX_SCAN_K}, got {k}")
    n = math.factorial(k)
    if not 0 <= upto <= n - 1:
        raise ConfigurationError(f"partial-sum index must lie in 0..{n - 1}, got {upto}")
    acc = np.zeros(n, dtype=np.complex128)
    for a, term in enumerate(_ordered_terms(k)):
        acc += term
        if a == upto:
            break
    return acc


@dataclass(frozen=True)
class PartialSumScan:
    """Exhaustive maximum of ||Shat_A|| against the uniform bound 12*k!/2^k."""

    k: int
    max_norm: float
    argmax: int
    bound: float
    passed: bool


@lru_cache(maxsize=None)
def partial_sum_bound_check(k: int) -> PartialSumScan:
    """Scan all k! partial sums and compare the peak norm with 12*k!/2^k.

    The bound is the scaled form of the uniform partial-sum estimate; the
    scan is exhaustive, so a pass certifies the bound at this k outright.
    """
    if not 2 <= k <= _MAX_SCAN_K:
        raise ConfigurationError(f"k must lie in 2..{_MAX_SCAN_K}, got {k}")
    n = math.factorial(k)
    acc = np.zeros(n, dtype=np.complex128)
    max_norm = -1.0
    argmax = 0
    for a, term in enumerate(_ordered_terms(k)):
        acc += term
        # pairwise machine summation: deterministic, and the bound slack
        # dwarfs any last-ulp difference from the fixed-order norm
        nrm = math.sqrt(np.vdot(acc, acc).real)
        if nrm > max_norm:
            max_norm = nrm
            argmax = a
    bound = 12.0 * n / 2.0 ** k
    return PartialSumScan(k=k, max_norm=max_norm, argmax=argmax,
                          bound=bound, passed=max_norm <= bound)


def group_sum_closed_form(k: int, r: int) -> np.ndarray:
    """Closed form of the r-th group of k consecutive ordered terms.

    The sum over one full group collapses onto every k-th coordinate:

        That_r = e^{2 pi i k r / n} * 2k * sum_{l=1}^{n/k}
                 2^{-k l} e^{-2 pi i k l r / n} e_{n - k l + 1}

    It must agree with the direct sum of the k terms; tests enforce that.
    """
    if k < 2 or k > _MAX_SCAN_K:
        raise ConfigurationError(f"k must lie in 2..{_MAX_SCAN_K}, got {k}")
    n = math.factorial(k)
    if not 0 <= r <= math.factorial(k - 1) - 1:
        raise ConfigurationError(
            f"r must lie in 0..{math.factorial(k - 1) - 1}, got {r}"
        )
    table = roots_table(n)
    out = np.zeros(n, dtype=np.complex128)
    with np.errstate(under="ignore"):
        for ell in range(1, n // k + 1):
            weight = 2.0 * k * 2.0 ** (-k * ell)
            phase = table[(k * r * (1 - ell)) % n]
            out[n - k * ell] = weight * phase
    return out
