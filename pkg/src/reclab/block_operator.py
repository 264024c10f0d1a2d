"""The block-diagonal weighted cyclic shift.

On block k (dimension n = k!) the operator acts as the identity when
k = 1 and otherwise as the weighted cyclic shift

    e_{k,j} -> 2 e_{k,j+1}        (1 <= j <= n-1)
    e_{k,n} -> 2^{1-n} e_{k,1}

The wrap lands on the first coordinate of the *same* block: the operator
is block diagonal by construction, so the wrap image cannot leave E_k.
The product of the weights around the full cycle is 2^{n-1} * 2^{1-n} = 1,
which makes the n-th power of each block map the identity.

Powers are evaluated in closed form (index shift plus one exact power of
two per coordinate) instead of repeated application, so no rounding
accumulates; a guard refuses exponents that double precision cannot
carry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LayoutError, WeightOverflowError
from .seqspace import BlockLayout, SeqVector

# |base-2 exponent| beyond this would overflow/underflow materialized doubles
_EXP_GUARD = 1000


@dataclass(frozen=True)
class BlockOperator:
    """Weighted cyclic shift acting blockwise on a truncated layout."""

    layout: BlockLayout


def apply_block(k: int, block: np.ndarray) -> np.ndarray:
    """One application of the shift to a single length-k! block array."""
    n = math.factorial(k)
    b = np.asarray(block, dtype=np.complex128)
    if b.shape != (n,):
        raise LayoutError(f"block {k} must have length {n}, got {b.shape}")
    if k == 1:
        return b.copy()
    out = np.empty_like(b)
    out[1:] = 2.0 * b[:-1]
    out[0] = b[-1] * 2.0 ** (1 - n)  # underflows to 0.0 for k >= 8
    return out


def apply(op: BlockOperator, x: SeqVector) -> SeqVector:
    if op.layout != x.layout:
        raise LayoutError("operator and vector layouts differ")
    return SeqVector(x.layout, tuple(
        apply_block(k, x.block(k)) for k in range(1, x.layout.k_max + 1)
    ))


def _pow_exponents(n: int, ell: int) -> tuple[int, int, int]:
    """Shift amount and the two weight exponents for the ell-th power.

    Coordinate j (1-based) moves to ((j-1+ell) mod n) + 1. Writing
    r = ell mod n, coordinates j <= n-r pick up weight 2^r and the rest
    wrap once more, picking up 2^{r-n}; every completed cycle contributes
    a weight of exactly 1.
    """
    r = ell % n
    return r, r, r - n


def apply_pow_block(k: int, ell: int, block: np.ndarray) -> np.ndarray:
    """ell-th power of the shift on one block, by index/weight arithmetic."""
    if ell < 0:
        raise ValueError(f"power must be nonnegative, got {ell}")
    n = math.factorial(k)
    b = np.asarray(block, dtype=np.complex128)
    if b.shape != (n,):
        raise LayoutError(f"block {k} must have length {n}, got {b.shape}")
    if k == 1 or ell == 0:
        return b.copy()
    r, e_plain, e_wrap = _pow_exponents(n, ell)

    # The guard only inspects coordinates that carry mass: weights on zero
    # coefficients produce exact zeros whatever their exponent.
    nz = np.nonzero(b)[0]
    if nz.size:
        if np.any(nz < n - r) and abs(e_plain) > _EXP_GUARD:
            raise WeightOverflowError(k, ell, e_plain)
        if np.any(nz >= n - r) and abs(e_wrap) > _EXP_GUARD:
            raise WeightOverflowError(k, ell, e_wrap)

    out = np.zeros_like(b)
    w_plain = math.ldexp(1.0, e_plain) if abs(e_plain) <= _EXP_GUARD else 0.0
    w_wrap = math.ldexp(1.0, e_wrap) if abs(e_wrap) <= _EXP_GUARD else 0.0
    if r == 0:
        out[:] = b * w_plain
        return out
    out[r:] = b[: n - r] * w_plain
    out[:r] = b[n - r:] * w_wrap
    return out


def apply_pow(op: BlockOperator, ell: int, x: SeqVector) -> SeqVector:
    """ell-fold application of the operator, computed in closed form."""
    if op.layout != x.layout:
        raise LayoutError("operator and vector layouts differ")
    return SeqVector(x.layout, tuple(
        apply_pow_block(k, ell, x.block(k)) for k in range(1, x.layout.k_max + 1)
    ))


def block_norm(k: int) -> float:
    """Operator norm of the block-k action: 1 for k = 1, else 2.

    The action permutes an orthonormal basis with weights, so the norm is
    the largest weight modulus, max(2, 2^{1-k!}) = 2 for k >= 2.
    """
    if k < 1:
        raise ValueError(f"block index must be >= 1, got {k}")
    return 1.0 if k == 1 else 2.0
