"""Blockwise truncations of square-summable sequences.

Coordinates are grouped into blocks: block k holds k! consecutive
coordinates, starting at offset s(k) with s(1) = 1 and s(k+1) = s(k) + k!.
A truncated vector stores one dense complex array per retained block.

Norms are accumulated in a fixed order (within a block ascending
coordinate, across blocks ascending block index) with exact partial sums
(`math.fsum`), so results are reproducible bit for bit across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConfigurationError, LayoutError

MAX_K = 8  # per-block dimension 8! = 40320 is the supported ceiling


@dataclass(frozen=True)
class BlockLayout:
    """Block index arithmetic for a truncation keeping blocks 1..k_max.

    ``offsets[i]`` is s(i+1), the 1-based coordinate where block i+1
    starts; ``offsets`` has k_max + 1 entries so that the total dimension
    is ``offsets[-1] - 1``.
    """

    k_max: int
    offsets: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.offsets[-1] - 1

    def block_dim(self, k: int) -> int:
        if not 1 <= k <= self.k_max:
            raise ConfigurationError(f"block index {k} outside 1..{self.k_max}")
        return self.offsets[k] - self.offsets[k - 1]

    def coordinate(self, k: int, j: int) -> int:
        """Global 1-based coordinate of the j-th basis vector of block k."""
        nk = self.block_dim(k)
        if not 1 <= j <= nk:
            raise ConfigurationError(f"position {j} outside 1..{nk} in block {k}")
        return self.offsets[k - 1] + j - 1


def make_layout(k_max: int) -> BlockLayout:
    """Build the layout with blocks 1..k_max; k_max must lie in 1..8."""
    if not isinstance(k_max, int) or not 1 <= k_max <= MAX_K:
        raise ConfigurationError(f"k_max must be an integer in 1..{MAX_K}, got {k_max!r}")
    offsets = [1]
    for k in range(1, k_max + 1):
        offsets.append(offsets[-1] + math.factorial(k))
    return BlockLayout(k_max=k_max, offsets=tuple(offsets))


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.complex128)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SeqVector:
    """A truncated vector stored as one dense complex array per block.

    Instances are immutable after construction: block arrays are marked
    read-only, and all operations return fresh vectors.
    """

    layout: BlockLayout
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != self.layout.k_max:
            raise LayoutError(
                f"expected {self.layout.k_max} blocks, got {len(self.blocks)}"
            )
        frozen = []
        for k, arr in enumerate(self.blocks, start=1):
            nk = self.layout.block_dim(k)
            if arr.shape != (nk,):
                raise LayoutError(f"block {k} must have length {nk}, got {arr.shape}")
            frozen.append(_freeze(arr))
        object.__setattr__(self, "blocks", tuple(frozen))

    def block(self, k: int) -> np.ndarray:
        return self.blocks[k - 1]


def zeros(layout: BlockLayout) -> SeqVector:
    return SeqVector(layout, tuple(
        np.zeros(layout.block_dim(k), dtype=np.complex128)
        for k in range(1, layout.k_max + 1)
    ))


def basis_vector(layout: BlockLayout, k: int, j: int) -> SeqVector:
    """Unit vector on the j-th coordinate of block k (both 1-based)."""
    layout.coordinate(k, j)  # validates
    blocks = [np.zeros(layout.block_dim(i), dtype=np.complex128)
              for i in range(1, layout.k_max + 1)]
    blocks[k - 1][j - 1] = 1.0
    return SeqVector(layout, tuple(blocks))


def from_blocks(layout: BlockLayout, blocks: Iterable[np.ndarray]) -> SeqVector:
    return SeqVector(layout, tuple(np.asarray(b, dtype=np.complex128) for b in blocks))


def array_norm_sq(arr: np.ndarray) -> float:
    """Exactly rounded sum of squared moduli, accumulated in index order."""
    a = np.asarray(arr)
    return math.fsum((a.real * a.real + a.imag * a.imag).tolist())


def array_norm(arr: np.ndarray) -> float:
    return math.sqrt(array_norm_sq(arr))


def norm_sq(x: SeqVector) -> float:
    return math.fsum(array_norm_sq(b) for b in x.blocks)


def norm(x: SeqVector) -> float:
    """Euclidean norm; zero exactly when every coefficient is zero."""
    return math.sqrt(norm_sq(x))


def _check_same_layout(x: SeqVector, y: SeqVector) -> None:
    if x.layout != y.layout:
        raise LayoutError(
            f"layout mismatch: k_max {x.layout.k_max} vs {y.layout.k_max}"
        )


def add(x: SeqVector, y: SeqVector) -> SeqVector:
    _check_same_layout(x, y)
    return SeqVector(x.layout, tuple(bx + by for bx, by in zip(x.blocks, y.blocks)))


def scale(c: complex, x: SeqVector) -> SeqVector:
    return SeqVector(x.layout, tuple(c * b for b in x.blocks))


def distance_sq(x: SeqVector, y: SeqVector) -> float:
    _check_same_layout(x, y)
    return math.fsum(array_norm_sq(bx - by)
                     for bx, by in zip(x.blocks, y.blocks))


def distance(x: SeqVector, y: SeqVector) -> float:
    return math.sqrt(distance_sq(x, y))


def to_json(x: SeqVector) -> str:
    """Serialize as {"k_max": int, "blocks": [[[re, im], ...], ...]}."""
    payload = {
        "k_max": x.layout.k_max,
        "blocks": [[[float(c.real), float(c.imag)] for c in b] for b in x.blocks],
    }
    return json.dumps(payload)


def from_json(text: str) -> SeqVector:
    payload = json.loads(text)
    layout = make_layout(int(payload["k_max"]))
    blocks = []
    for raw in payload["blocks"]:
        blocks.append(np.array([complex(re, im) for re, im in raw],
                               dtype=np.complex128))
    return SeqVector(layout, tuple(blocks))
