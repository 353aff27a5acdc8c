"""Exception types shared across the package.

The CLI maps these onto exit codes: parse errors -> 2, resource caps -> 3,
precision failures -> 4.
"""


class ShiftlabError(Exception):
    pass


class AlphabetMismatch(ShiftlabError):
    """Operands live over different alphabets."""


class SpecParseError(ShiftlabError):
    """A shift-spec / set-expr / point string failed to parse."""


class SpecValidationError(ShiftlabError):
    """A spec violates its structural contract (e.g. non-factorial predicate)."""


class ResourceCapExceeded(ShiftlabError):
    """An enumeration or search hit its configured resource cap."""


class PrecisionError(ShiftlabError):
    """A floor/comparison could not be certified at the working precision."""


class SearchFailure(ShiftlabError):
    """A bounded search ended without a witness meeting its target."""


class PreconditionError(ShiftlabError):
    """An operation's stated precondition does not hold for the inputs."""
