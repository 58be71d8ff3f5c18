"""Exception hierarchy shared across the package.

Input-contract violations (bad levels, parse errors) derive from InputError so
the CLI can map them to exit code 2; ResourceBound maps to exit code 3.
Everything else signals an internal consistency failure and is a plain bug.
"""


class WcosetError(Exception):
    pass


class InputError(WcosetError):
    """A precondition on user-supplied data failed."""


class DivisionByZero(InputError):
    pass


class PoleAtPoint(InputError):
    pass


class DegreeTooHigh(InputError):
    pass


class AsymmetricPairing(InputError):
    pass


class UnpairedFermionHalf(InputError):
    pass


class NonIntegralExponent(InputError):
    pass


class MomentumMismatch(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class ExcludedLevel(InputError):
    pass


class ZeroK1(ExcludedLevel):
    pass


class NonEnumerable(InputError):
    """Graded slices are infinite (system has a weight-0 boson)."""


class ParityMismatch(InputError):
    pass


class NonSymmetric(WcosetError):
    """Internal consistency failure: a Gram matrix came out asymmetric."""


class ResourceBound(WcosetError):
    """A configured size cap was exceeded."""
