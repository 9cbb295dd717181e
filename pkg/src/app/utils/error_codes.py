from enum import Enum


class ErrorCodes(int, Enum):
    FIELD_MISMATCH = 100
    ZERO_DIVISION = 101
    FIELD_PARAMETERS = 102
    GEOMETRY_PARAMETERS = 103
    POINTSET_ESCAPE = 104
    LINALG_SHAPE = 105
    POLYNOMIAL_ARITY = 106
    CODE_PARAMETERS = 107
    ENUMERATION_CAP = 108
    AUTOMORPHISM_MISMATCH = 109
    DOMAIN_ESCAPE = 110
    GENERATOR_VALIDATION = 111
    CODE_NOT_PRESERVED = 112
    UNKNOWN_CLAIM = 113
    CORRUPT_FILE = 114
    INEXACT_INPUT = 115
    GENERIC = 116
