"""Exception hierarchy.

Every error names the violated precondition or the resource limit that
was hit.  All exact arithmetic is done on Python integers / fractions,
which cannot overflow; Overflow exists for the contract and is raised
only if a kernel would have to leave the validated magnitude domain.
"""


class HkflError(Exception):
    """Base class for all package errors."""


class NotSymmetric(HkflError):
    """Gram matrix is not symmetric."""


class NotEven(HkflError):
    """Gram matrix has an odd diagonal entry."""


class Degenerate(HkflError):
    """Gram matrix has determinant zero."""


class BadParameter(HkflError):
    """Constructor or operation parameter outside its admissible range."""


class Overflow(HkflError):
    """Exact-integer capacity exceeded (structurally unreachable on bigints)."""


class ZeroVector(HkflError):
    """A nonzero vector was required."""


class CheckFailed(HkflError):
    """A verification identity failed; carries both sides."""

    def __init__(self, message, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


class BoundTooLarge(HkflError):
    """Estimated enumeration size exceeds the configured cap."""


class TooLarge(HkflError):
    """Enumeration cap exceeded."""


class OutOfScope(HkflError):
    """Input combination outside the supported hypotheses."""


class BadParity(HkflError):
    """Arithmetically impossible parity for the given input."""
