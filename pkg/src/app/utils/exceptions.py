from app.utils.error_codes import ErrorCodes


class CodesException(Exception):
    """
    Base class for all exceptions raised by nt-codes
    """

    def __init__(self, error_code, *args, **kwargs):
        self.error_code = error_code
        super().__init__(*args, **kwargs)


class FieldMismatchError(CodesException):
    """
    Raised when elements, vectors or matrices from different fields are combined
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.FIELD_MISMATCH
        super().__init__(error_code, *args, **kwargs)


class ZeroDivisionFieldError(CodesException):
    """
    Raised when the zero element of a field is inverted
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.ZERO_DIVISION
        super().__init__(error_code, *args, **kwargs)


class FieldParameterError(CodesException):
    """
    Raised when a field cannot be built. This includes:
    - A characteristic that is not prime
    - A field size above the configured cap
    - A subfield degree that does not divide the extension degree
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.FIELD_PARAMETERS
        super().__init__(error_code, *args, **kwargs)


class GeometryParameterError(CodesException):
    """
    Raised when a point set is requested with parameters outside its family,
    e.g. a unital over a field of odd characteristic
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.GEOMETRY_PARAMETERS
        super().__init__(error_code, *args, **kwargs)


class PointSetEscapeError(CodesException):
    """
    Raised when a matrix maps a point of a point set outside of it
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.POINTSET_ESCAPE
        super().__init__(error_code, *args, **kwargs)


class MatrixShapeError(CodesException):
    """
    Raised when matrix or vector dimensions do not fit the requested operation
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.LINALG_SHAPE
        super().__init__(error_code, *args, **kwargs)


class PolynomialArityError(CodesException):
    """
    Raised when a polynomial is evaluated on points of a different dimension
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.POLYNOMIAL_ARITY
        super().__init__(error_code, *args, **kwargs)


class CodeParameterError(CodesException):
    """
    Raised when code construction parameters are inconsistent (degree out of
    range, twist outside 1..q-1, field size not matching q^s, ...)
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.CODE_PARAMETERS
        super().__init__(error_code, *args, **kwargs)


class EnumerationCapError(CodesException):
    """
    Raised when an exhaustive computation is required but exceeds its cap
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.ENUMERATION_CAP
        super().__init__(error_code, *args, **kwargs)


class AutomorphismMismatchError(CodesException):
    """
    Raised when automorphisms or vertices of different lengths or alphabets are combined
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.AUTOMORPHISM_MISMATCH
        super().__init__(error_code, *args, **kwargs)


class DomainEscapeError(CodesException):
    """
    Raised when a generator maps a vertex of an orbit domain outside of the domain
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.DOMAIN_ESCAPE
        super().__init__(error_code, *args, **kwargs)


class GeneratorValidationError(CodesException):
    """
    Raised when a generator set fails its construction check. This includes:
    - A unitary generator that does not preserve the Hermitian form
    - A Suzuki orbit whose size is not q^2 + 1
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.GENERATOR_VALIDATION
        super().__init__(error_code, *args, **kwargs)


class CodeNotPreservedError(CodesException):
    """
    Raised when a generator maps a codeword outside of the code
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.CODE_NOT_PRESERVED
        super().__init__(error_code, *args, **kwargs)


class UnknownClaimError(CodesException):
    """
    Raised when the verifier is asked for a claim it does not know
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.UNKNOWN_CLAIM
        super().__init__(error_code, *args, **kwargs)


class CorruptFileError(CodesException):
    """
    Raised when a point set, matrix or code file cannot be parsed
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.CORRUPT_FILE
        super().__init__(error_code, *args, **kwargs)


class InexactInputError(CodesException):
    """
    Raised when an operation needs exact parameters (e.g. perfection needs
    exact minimum distance and covering radius) but only bounds are known
    """

    def __init__(self, *args, **kwargs):
        error_code = ErrorCodes.INEXACT_INPUT
        super().__init__(error_code, *args, **kwargs)
