"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A parameter is outside its supported range."""


class LayoutError(ValueError):
    """Two vectors (or a vector and an operator) disagree on block layout."""


class WeightOverflowError(OverflowError):
    """A shift-power weight exponent would leave the safe double range."""

    def __init__(self, k: int, ell: int, exponent: int):
        self.k = k
        self.ell = ell
        self.exponent = exponent
        super().__init__(
            f"weight exponent {exponent} for block k={k} at power ell={ell} "
            f"exceeds the safe double-precision range (|exponent| > 1000)"
        )


class TruncationError(ValueError):
    """The requested quantity needs blocks beyond the stored truncation."""


class DomainError(ValueError):
    """Function argument outside the evaluator's domain of validity."""


class AccuracyError(ArithmeticError):
    """The requested tolerance is unattainable; carries the achievable one."""

    def __init__(self, requested: float, achievable: float, where: str = ""):
        self.requested = requested
        self.achievable = achievable
        suffix = f" at {where}" if where else ""
        super().__init__(
            f"requested tolerance {requested:.3e} unattainable{suffix}; "
            f"achievable about {achievable:.3e}"
        )
