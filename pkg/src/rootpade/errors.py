"""Exception hierarchy shared by all rootpade modules.

Every error carries a short machine-readable ``code`` so the CLI can map
failures onto exit codes uniformly: input/usage problems exit 2, violated
internal invariants (which indicate a bug, never bad input) exit 1.
"""

from __future__ import annotations


class RootPadeError(Exception):
    """Base class; ``code`` is a stable machine-readable tag."""

    code = "ERROR"

    def __init__(self, message: str = "", **context):
        super().__init__(message or self.code)
        self.context = context


class InputError(RootPadeError):
    """Bad parameters or malformed input (CLI exit code 2)."""

    code = "INPUT"


class InvariantError(RootPadeError):
    """A mathematically guaranteed property failed to hold (CLI exit code 1)."""

    code = "INVARIANT"


# -- input-side errors ------------------------------------------------------

class InvalidSystemError(InputError):
    """Some exponent difference is an integer, so the construction degenerates."""

    code = "INVALID_SYSTEM"


class BadParamsError(InputError):
    code = "BAD_PARAMS"


class NotApplicableError(InputError):
    """Operation undefined for this input shape (e.g. a shift of a 1-block system)."""

    code = "NOT_APPLICABLE"


class NotDegreeNError(InputError):
    """a/b is a perfect power, so its n-th root is not of algebraic degree n."""

    code = "NOT_DEGREE_N"


class RootOfUnityError(InputError):
    """w = x^n = 1: the non-vanishing guarantee does not apply."""

    code = "ROOT_OF_UNITY"


class DegenerateSandwichError(InputError):
    """No block count satisfies q1^(m(r-1)) < q2 <= q1^(mr) (q1 or q2 is 1)."""

    code = "Q1_IS_ONE"


class FactorZeroError(InputError):
    """A factor j*n + K of the closed-form coefficient product vanishes."""

    code = "DIVISION_BY_ZERO"

    def __init__(self, message: str = "", index: int = -1, **context):
        super().__init__(message, index=index, **context)
        self.index = index


# -- invariant-side errors --------------------------------------------------

class SingularSystemError(InvariantError):
    """The homogeneous solve did not have a one-dimensional solution space."""

    code = "SINGULAR_SYSTEM"


class NonDivisibleError(InvariantError):
    """Exact polynomial division left a nonzero remainder."""

    code = "NON_DIVISIBLE"

    def __init__(self, message: str = "", remainder=None, **context):
        super().__init__(message, **context)
        self.remainder = remainder


class IdentityViolationError(InvariantError):
    """An identity that must hold exactly (e.g. determinant = delta*z^sigma) failed."""

    code = "IDENTITY_VIOLATION"


class AllZeroError(InvariantError):
    """Every row value vanished, contradicting the determinant non-vanishing."""

    code = "ALL_ZERO"


class InvariantViolationError(InvariantError):
    """A certified inequality resolved the wrong way (falsifies constant derivation)."""

    code = "INVARIANT_VIOLATION"


class IndeterminateError(RootPadeError):
    """A comparison could not be resolved at the precision cap; never guessed."""

    code = "INDETERMINATE"


class IndeterminatePartialQuotientError(IndeterminateError):
    code = "INDETERMINATE_PARTIAL_QUOTIENT"

    def __init__(self, message: str = "", index: int = -1, **context):
        super().__init__(message, index=index, **context)
        self.index = index
