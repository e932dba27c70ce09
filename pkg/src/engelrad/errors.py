"""Exception hierarchy shared by all modules."""


class EngelradError(Exception):
    pass


# exact fields

class NonPrimeModulus(EngelradError, ValueError):
    pass


class ReducibleModulusPolynomial(EngelradError, ValueError):
    pass


class DivisionByZero(EngelradError, ZeroDivisionError):
    pass


class ScalarSyntaxError(EngelradError, ValueError):
    pass


class ValueOutOfField(EngelradError, ValueError):
    pass


# words

class WordSyntaxError(EngelradError, ValueError):
    pass


class WordTooLarge(EngelradError):
    pass


class NotSatisfiedWithinBound(EngelradError):
    pass


# polynomials

class ArityMismatch(EngelradError, ValueError):
    pass


class SymbolicBlowup(EngelradError):
    pass


# Lie algebras

class AntisymmetryViolation(EngelradError, ValueError):
    def __init__(self, i, j, message=None):
        self.i, self.j = i, j
        super().__init__(message or f"antisymmetry fails at basis pair ({i}, {j})")


class JacobiViolation(EngelradError, ValueError):
    def __init__(self, i, j, k, message=None):
        self.i, self.j, self.k = i, j, k
        super().__init__(message or f"Jacobi identity fails at basis triple ({i}, {j}, {k})")


class NotASubalgebra(EngelradError, ValueError):
    pass


class UnsupportedCharacteristic(EngelradError):
    pass


class EnumerationTooLarge(EngelradError):
    pass


# finite groups

class OrderExceedsCap(EngelradError):
    pass


class NotSemisimple(EngelradError, ValueError):
    pass


class NotAnAutomorphism(EngelradError, ValueError):
    pass


class SequenceNotAutocorrect(EngelradError, ValueError):
    pass


# catalog

class BadParams(EngelradError, ValueError):
    pass


class SchemaError(EngelradError, ValueError):
    pass


class ValidationError(EngelradError, ValueError):
    pass
