"""Exception hierarchy shared by every diskcross module."""


class DiskCrossError(Exception):
    """Base class; ``code`` is the short identifier emitted by the CLI."""

    code = "error"


class DomainError(DiskCrossError, ValueError):
    code = "domain"


class PoleError(DiskCrossError, ArithmeticError):
    code = "pole"


class NumericalError(DiskCrossError, ArithmeticError):
    code = "numerical"


class ClassError(DiskCrossError, ValueError):
    """Operation requires a different automorphism class."""

    code = "class"


class KindMismatch(DiskCrossError, ValueError):
    """Representation kind does not fit the automorphism or the element."""

    code = "kind_mismatch"


class RationalityRequired(DiskCrossError, ValueError):
    code = "rationality_required"
