"""Exception hierarchy shared by every module of the package."""


class BladeAnglesError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(BladeAnglesError, ValueError):
    """Operands live in different algebras or have incompatible lengths."""


class GradeError(BladeAnglesError, ValueError):
    """A grade index is out of range or an input is not homogeneous."""


class NotABladeError(BladeAnglesError, ValueError):
    """A multivector failed the simplicity test."""


class RankDeficientError(BladeAnglesError, ValueError):
    """A frame does not have full rank after orthonormalization."""


class ZeroBladeError(BladeAnglesError, ValueError):
    """An operation that needs a nonzero blade received the zero blade."""


class NonConvergenceError(BladeAnglesError, ArithmeticError):
    """A power series did not converge within the term budget."""


class SubspaceMismatchError(BladeAnglesError, ValueError):
    """A blade does not span the subspace an operation expects."""


class MalformedProductError(BladeAnglesError, ValueError):
    """A multivector does not have the grade structure of a blade product."""
