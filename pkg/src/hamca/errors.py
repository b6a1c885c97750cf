"""Shared exception types.

Every failure mode that the command-line layer maps to a distinct exit
code lives here, so library code and CLI agree on one taxonomy.
"""


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes or lengths."""


class ModelValidationError(ValueError):
    """A model definition violates its symmetry constraints."""


class DegenerateStateError(ValueError):
    """The zero vector was passed where a physical state is required."""


class SingularSpectrumError(ValueError):
    """Closed-form propagation rejected an eigenvalue too close to the
    band edge (|lambda| near 2) while running in strict mode."""

    def __init__(self, eigenvalue: float):
        self.eigenvalue = eigenvalue
        super().__init__(
            f"eigenvalue {eigenvalue!r} lies within the excluded band around "
            "+/-2; 1/(2*cos) amplitude is not invertible there"
        )


class SpectralFailure(RuntimeError):
    """Eigendecomposition did not meet the requested residual or
    unitarity bound."""


class InstabilityError(RuntimeError):
    """Floating-point evolution overflowed to a non-finite value."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"non-finite amplitude first appeared at step {step}")


class SignalRangeError(ValueError):
    """Evaluation point lies outside the reconstructible range of a
    sampled signal (window margin included)."""


class OntologicalRegimeError(RuntimeError):
    """Total link number is (numerically) zero, so link fractions and
    their continuum comparison are undefined."""


class NonCommutingError(ValueError):
    """A conservation check was requested for a matrix that does not
    commute with the Hamiltonian; carries the commutator as witness."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
