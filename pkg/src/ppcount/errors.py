"""Exception types shared across the package.

Each failure mode callers are expected to handle gets its own class; the CLI
maps them onto exit codes (user errors -> 1, resource and internal errors -> 2).
"""

from __future__ import annotations


class PpcountError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(PpcountError):
    """The requested base of a prime power ring is composite or < 2."""


class ZeroPolynomial(PpcountError):
    """An operation that needs a nonzero polynomial received the zero polynomial."""


class ZeroReduction(PpcountError):
    """The mod-p reduction of the curve is identically zero."""


class ConstantReduction(PpcountError):
    """The mod-p reduction of the curve is a nonzero constant, so it has no zero set."""


class BranchMismatch(PpcountError):
    """A line-branch operation was invoked on a curve whose reduction is not a line branch."""


class ValuationOutOfRange(PpcountError):
    """A perturbation was requested at a valuation outside its admissible range."""


class NotSmooth(PpcountError):
    """Hensel lifting was requested at a point where both partial derivatives vanish mod p."""


class NotARoot(PpcountError):
    """Hensel lifting was requested at a point that is not a root at the stated precision."""


class PrimeTooLarge(PpcountError):
    """p exceeds the configured ceiling for the linear-in-p base case."""


class OracleTooLarge(PpcountError):
    """The brute-force oracle was asked to enumerate beyond its configured ceiling."""


class NodeBudgetExceeded(PpcountError):
    """The recursion produced more work than the configured node budget allows."""


class InternalInvariantError(PpcountError):
    """An internal consistency check failed; this always indicates a bug."""


class PolySyntaxError(PpcountError):
    """The polynomial expression could not be parsed.

    The byte offset of the offending token is stored on the exception.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownVariable(PolySyntaxError):
    """An identifier other than x1, x2, x, y appeared in the expression."""


class NotSeparated(PpcountError):
    """The expression contains a monomial mixing both variables."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
