"""Exception taxonomy shared by all zetalab modules."""


class ZetalabError(Exception):
    """Base class for all zetalab errors."""


class PoleError(ZetalabError):
    """Evaluation requested at a pole (or a zero, for logarithmic derivatives)."""


class DomainError(ZetalabError):
    """Argument outside the mathematical domain of the operation."""


class BranchError(ZetalabError):
    """Principal-branch power is discontinuous at the requested point."""


class ParseError(ZetalabError):
    """Malformed textual input; carries a line number when one applies."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class OrderError(ZetalabError):
    """Sequence violates a required ordering (e.g. non-increasing ordinates)."""


class BudgetError(ZetalabError):
    """Requested computation exceeds the enumeration budget guard."""


class NonIntegralError(ZetalabError):
    """A quantity that must be an integer is not close to one."""


class LengthError(ZetalabError):
    """Input sequence too short for the requested operation."""


class PrimeMismatchError(ZetalabError):
    """Operands live over different primes."""


class ConvergenceError(ZetalabError):
    """Series or integral does not converge for the given parameters."""


class QuadratureError(ZetalabError):
    """Numerical quadrature failed to reach its error target."""


class ContourError(ZetalabError):
    """Integration contour passes too close to a zero or pole."""


class NumericsError(ZetalabError):
    """A value that must be real (or integral) carries too large a residue."""


class TruncationWarning(UserWarning):
    """A sum was truncated below the requested cutoff."""
