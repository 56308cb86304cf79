"""Exception hierarchy shared by all modules."""


class Q8MJDError(Exception):
    """Base class for every error raised by the library."""


class DomainMismatch(Q8MJDError, ValueError):
    """Operands live over different primes or coefficient domains."""


class PreconditionError(Q8MJDError, ValueError):
    pass


class NoSolution(Q8MJDError):
    """r^2 + s^2 = -1 has no solution because ord_p(2) is odd."""


class NotAUnit(Q8MJDError, ArithmeticError):
    pass


class SemisimpleInput(Q8MJDError):
    """The unit has zero nilpotent part."""


class NotInV(Q8MJDError):
    """The unit is not a normalized non-semisimple unit of augmentation 1."""


class WrongPrime(Q8MJDError):
    pass


class UnsupportedBranch(Q8MJDError, NotImplementedError):
    pass


class CertificateDisagreement(Q8MJDError, AssertionError):
    """The two independent MJD checks disagree; indicates an internal bug."""
