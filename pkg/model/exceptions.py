class PrimdigraphError(Exception):
    """Base class for every error raised by the package."""


class ParameterError(PrimdigraphError, ValueError):
    pass


class PreconditionError(PrimdigraphError, ValueError):
    pass


class NonResidue(PrimdigraphError, ValueError):
    pass


class DivisionByZero(PrimdigraphError, ZeroDivisionError):
    pass


class SingularMatrix(PrimdigraphError, ArithmeticError):
    pass


class CapExceeded(PrimdigraphError, RuntimeError):
    """A closure, order or enumeration guard was hit."""


class NotADigraph(PrimdigraphError, ValueError):
    """g^-1 lies in HgH, so the coset relation is not antisymmetric."""


class CertificateError(PrimdigraphError, ValueError):
    pass
