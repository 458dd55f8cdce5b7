"""Exception hierarchy for all domain failures.

Every anticipated mathematical failure raises a named subclass of
IsodualError so callers (and the CLI) can distinguish domain errors from
genuine bugs.
"""


class IsodualError(Exception):
    """Base class for all library errors."""


# field construction / arithmetic

class NotPrime(IsodualError):
    pass


class CharTooSmall(IsodualError):
    """Characteristic 2 or 3 is unsupported (short Weierstrass assumes otherwise)."""


class ContextMismatch(IsodualError):
    """Operands belong to different field contexts."""


class DivisionByZero(IsodualError):
    pass


class FieldTooLarge(IsodualError):
    """An exhaustive scan was requested over a field beyond the desk-scale guard."""


# polynomials / rational functions

class BothZero(IsodualError):
    """gcd(0, 0) is undefined."""


# curves / points / subgroups

class SingularCurve(IsodualError):
    pass


class CurveMismatch(IsodualError):
    """Points of different curves were combined."""


class NotOnCurve(IsodualError):
    pass


class NotClosed(IsodualError):
    """A point list is not closed under the group law."""


class NotGaloisStable(IsodualError):
    """A subgroup is not stable under the base-field Frobenius."""


class ZeroMultiplier(IsodualError):
    pass


class DegreeTooLarge(IsodualError):
    pass


# isogenies

class CurveChainMismatch(IsodualError):
    """Composition requested with codomain != domain."""


class KernelNotRational(IsodualError):
    """A kernel point does not exist over the supplied field context."""


class UnsupportedBaseField(IsodualError):
    """Frobenius endomorphism machinery requires a prime-field curve."""


# dual construction

class InseparableMap(IsodualError):
    pass


class NonConstantRatio(IsodualError):
    """Differential pullback ratio failed to reduce to a constant (corrupt map)."""


class NotNormalized(IsodualError):
    """Operation requires maps with pullback constant 1."""


class KernelNotNested(IsodualError):
    pass


class CompositionMismatch(IsodualError):
    """Internal assertion: constructed quotient failed to reproduce the target map."""


class VerificationFailed(IsodualError):
    """The dual identity did not hold; never reported as success."""


# cli

class ParseError(IsodualError):
    pass
