"""A sum of unimodular-eigenvalue eigenvectors that never returns home.

The vector puts mass 2^{-k} on coordinate k!-k+1 of every block k >= 2.
Each block component is a convergent series of eigenvectors of the
weighted shift (the ordered partial sums vanish uniformly in the scaled
normalization), yet every positive power of the operator moves the vector
by a squared distance of at least 1/4: the power ell shifts the block
ell+1 component onto the top coordinate with weight 1/2, orthogonal to
where it started.

On a truncation the operator preserves blocks and the retained blocks of
the vector are exact, so the truncated squared distance lower-bounds the
untruncated one; it already contains the certifying block as long as
block ell+1 is retained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import seqspace
from .block_operator import BlockOperator, apply_pow
from .errors import ConfigurationError, TruncationError
from .eigen import ordered_partial_sum, partial_sum_bound_check
from .seqspace import BlockLayout, SeqVector


@dataclass(frozen=True)
class CounterexampleInstance:
    layout: BlockLayout
    y: SeqVector
    operator: BlockOperator


DEFAULT_K_MAX = 7  # certifies ell = 1..6 with every weight exponent in double range


def build_y(layout: BlockLayout) -> SeqVector:
    """The vector with block-k component e_{k, k!-k+1} / 2^k for k >= 2."""
    if layout.k_max < 2:
        raise ConfigurationError("the construction needs k_max >= 2")
    blocks = []
    for k in range(1, layout.k_max + 1):
        arr = np.zeros(layout.block_dim(k), dtype=np.complex128)
        if k >= 2:
            arr[math.factorial(k) - k] = 2.0 ** (-k)  # position k!-k+1, 1-based
        blocks.append(arr)
    return SeqVector(layout, tuple(blocks))


def make_instance(k_max: int = DEFAULT_K_MAX) -> CounterexampleInstance:
    layout = seqspace.make_layout(k_max)
    return CounterexampleInstance(
        layout=layout, y=build_y(layout), operator=BlockOperator(layout)
    )


def eigen_series_term(k: int) -> np.ndarray:
    """Block-k term of the eigenvector-series representation.

    Returns (1/(2*k!)) * Shat_{k!-1}. Summing the full ordered series
    collapses onto coordinate k!-k+1, so this must equal the block-k
    component of the vector, e_{k, k!-k+1} * 2^{-k}.
    """
    if not 2 <= k <= 6:
        raise ConfigurationError(f"k must lie in 2..6, got {k}")
    n = math.factorial(k)
    return ordered_partial_sum(k, n - 1) / (2.0 * n)


def series_tail_sup(k: int) -> float:
    """max_A ||Shat_A|| / (2*k!), the size of the worst partial sum of the
    block-k eigenvector series in the vector's own normalization.

    Bounded by 6/2^k, which halves with every k: the decay witnesses the
    convergence of the eigenvector series.
    """
    scan = partial_sum_bound_check(k)
    return scan.max_norm / (2.0 * math.factorial(k))


def non_recurrence_distance(instance: CounterexampleInstance, ell: int) -> float:
    """||u^ell y - y||^2 on the truncation; certified >= 1/4.

    Block ell+1 alone contributes 1/4 + 4^{-(ell+1)} (top coordinate at
    weight 1/2 against the original coordinate at 2^{-(ell+1)}), and every
    other block adds a nonnegative exact term. Powers beyond k_max - 1 are
    refused: without block ell+1 the certifying term is truncated away and
    the result would not be a certified lower bound.
    """
    k_max = instance.layout.k_max
    if not 1 <= ell <= k_max - 1:
        raise TruncationError(
            f"power ell={ell} needs block {ell + 1}: rebuild with k_max >= {ell + 1}"
        )
    moved = apply_pow(instance.operator, ell, instance.y)
    return seqspace.distance_sq(moved, instance.y)


def distance_by_block(instance: CounterexampleInstance, ell: int) -> list[float]:
    """Per-block contributions to ||u^ell y - y||^2, for reporting."""
    k_max = instance.layout.k_max
    if not 1 <= ell <= k_max - 1:
        raise TruncationError(
            f"power ell={ell} needs block {ell + 1}: rebuild with k_max >= {ell + 1}"
        )
    moved = apply_pow(instance.operator, ell, instance.y)
    return [
        seqspace.array_norm_sq(moved.block(k) - instance.y.block(k))
        for k in range(1, k_max + 1)
    ]
