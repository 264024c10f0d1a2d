"""reclab: a numerical laboratory for recurrence of linear operator orbits.

The package builds a block-diagonal weighted cyclic shift on truncations
of the square-summable sequence space, verifies its eigenstructure and
the uniform bounds on ordered eigenvector partial sums, certifies that a
particular convergent sum of unimodular-eigenvalue eigenvectors never
returns near itself, demonstrates that *finite* eigenvector sums return
uniformly, and explores the orbit of the alternating zeta function under
the vertical translation fixing its trivial factor.
"""

__version__ = "0.1.0"

from . import block_operator, counterexample, eigen, recurrence, seqspace, zeta_orbit
from .errors import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    LayoutError,
    TruncationError,
    WeightOverflowError,
)

__all__ = [
    "__version__",
    "seqspace",
    "block_operator",
    "eigen",
    "counterexample",
    "recurrence",
    "zeta_orbit",
    "AccuracyError",
    "ConfigurationError",
    "DomainError",
    "LayoutError",
    "TruncationError",
    "WeightOverflowError",
]
