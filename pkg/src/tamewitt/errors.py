"""Exception hierarchy.

Every error raised by the library derives from :class:`TameWittError`.  Input
validation problems additionally derive from :class:`InputError`, which the CLI
maps to exit code 2; :class:`PrecisionExhausted` maps to exit code 3.
"""


class TameWittError(Exception):
    pass


class InputError(TameWittError, ValueError):
    pass


class PrecisionExhausted(TameWittError, ArithmeticError):
    pass


class DivisionByZeroAtPrecision(PrecisionExhausted, ZeroDivisionError):
    pass


# p-adic core
class EvenResidueChar(InputError):
    pass


class NotIrreducible(InputError):
    pass


class WildExtension(InputError):
    pass


class FieldMismatch(InputError):
    pass


class NoSimpleRoot(InputError):
    pass


class NotARoot(InputError):
    pass


class NotQuadratic(InputError):
    pass


class NotAnInvolution(InputError):
    pass


class HypothesisViolated(InputError):
    pass


# class groups
class NotInFixedField(InputError):
    pass


# forms
class DegenerateAtPrecision(PrecisionExhausted):
    pass


class CaseMismatch(InputError):
    pass


class NotSymmetricOrSkew(InputError):
    pass


# transfer
class NotAGenerator(InputError):
    pass


class NotSkew(InputError):
    pass


class NotSelfDual(InputError):
    pass


class SingularSystem(TameWittError):
    pass


# matching
class DissimilarGroups(InputError):
    pass


class ZeroBeta(InputError):
    pass


# lattices
class NotInNormalizer(InputError):
    pass


class BasisMismatch(InputError):
    pass


class InvalidLatticeSequence(InputError):
    pass


# endo-parameters
class UnknownClass(InputError):
    pass


class NonSkewWittType(InputError):
    pass


class WrongCase(InputError):
    pass
