"""Exception hierarchy shared by all modules."""


class CoisoError(Exception):
    """Base class for every error raised by this package."""


# linear algebra
class DimensionMismatch(CoisoError, ValueError):
    pass


class NotASubspace(CoisoError, ValueError):
    pass


# modules and complexes
class IotaSquareViolation(CoisoError):
    """``phi_tot @ iota_source != iota_target @ phi_N``."""


class ZeroPartNotPreserved(CoisoError):
    pass


class NotAComplex(CoisoError):
    pass


class IsoViolation(CoisoError):
    pass


# algebras
class NotAssociative(CoisoError):
    def __init__(self, component, triple):
        super().__init__(f"{component} product not associative on basis triple {triple}")
        self.component = component
        self.triple = triple


class UnitViolation(CoisoError):
    pass


class IotaNotAlgebraMorphism(CoisoError):
    pass


class IdealViolation(CoisoError):
    def __init__(self, pair, message=None):
        super().__init__(message or f"zero part is not a two-sided ideal: basis pair {pair}")
        self.pair = pair


class InjectivityViolation(CoisoError):
    pass


# Hochschild
class DegreeTooLarge(CoisoError):
    pass


class AlgebraMismatch(CoisoError):
    pass


class CochainInjectivityViolation(CoisoError):
    pass


class InvalidCochain(CoisoError):
    """Cochain violates compatibility or the zero-part law."""


# deformations and DGLAs
class GradeMismatch(CoisoError):
    pass


class NotMaurerCartan(CoisoError):
    pass


class OrderTooLarge(CoisoError):
    pass


class NotAssociativeToOrder(CoisoError):
    def __init__(self, order):
        super().__init__(f"deformation is not associative to order {order}")
        self.order = order


class JacobiViolation(CoisoError):
    pass


class LeibnizViolation(CoisoError):
    pass


class DifferentialNotSquareZero(CoisoError):
    pass


class IotaNotDGLAMorphism(CoisoError):
    pass


# documents
class ParseError(CoisoError):
    def __init__(self, message, field=None):
        where = f" [{field}]" if field else ""
        super().__init__(f"{message}{where}")
        self.field = field


class ValidationError(CoisoError):
    def __init__(self, cause):
        super().__init__(f"{type(cause).__name__}: {cause}")
        self.cause = cause
