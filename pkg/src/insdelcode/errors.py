"""Exception hierarchy shared across the package.

The CLI maps these onto exit statuses: domain failures (decode, construction,
capacity) exit 1, caller mistakes (usage, parameters, invalid specs) exit 2.
"""


class InsdelError(Exception):
    """Base class for all package errors."""


class UsageError(InsdelError, ValueError):
    """Caller violated a precondition (bad lengths, mixed fields, ...)."""


class ParameterError(UsageError):
    """Requested construction parameters are infeasible."""


class InvalidSpecError(UsageError):
    """A field/code specification fails validation (composite modulus, ...)."""


class CapacityError(InsdelError):
    """Request exceeds a configured exhaustive-computation budget."""


class DecodeFailure(InsdelError):
    """Received word is beyond the decoding radius; no codeword returned."""


class ConstructionFailure(InsdelError):
    """A randomized/seed-search construction exhausted its attempt budget."""
