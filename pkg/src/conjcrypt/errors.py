"""Exception types shared across the package."""


class DimensionCapError(ValueError):
    """Requested operator dimension exceeds the configured cap."""


class SymmetryError(ValueError):
    """Matrix is not Hermitian within tolerance."""


class ConvergenceError(RuntimeError):
    """Iterative eigensolver did not converge."""


class InvalidStateError(ValueError):
    """Operator is not a valid density operator."""


class InvalidPovmError(ValueError):
    """Elements are not positive or do not sum to the identity."""


class OutcomeSpaceError(ValueError):
    """Two distributions are defined on different outcome sets."""


class ParityError(ValueError):
    """Parity string does not encode the requested plaintext bit."""


class BudgetExhaustedError(RuntimeError):
    """Ciphertext supply ran out before the attack finished."""


class AmbiguousResultError(RuntimeError):
    """More than one candidate passed the redundancy test."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class RedundancyError(ValueError):
    """No decryption candidate satisfies the redundancy predicate."""
