"""Exception hierarchy shared by all modules."""


class KemenyError(Exception):
    """Base class for all errors raised by this package."""


class InputError(KemenyError):
    """A caller-supplied value violates a documented precondition."""


class CapabilityError(KemenyError):
    """The request exceeds a hard size or time cap of this implementation."""


class InternalError(KemenyError):
    """An internal invariant was violated; indicates a bug, not bad input."""
