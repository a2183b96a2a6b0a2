"""Exception types shared across the package."""


class Z2SchurError(Exception):
    """Base class."""


class ResourceLimitError(Z2SchurError):
    """A configured size cap (coset table, closure, cochain width) was exceeded."""


class InvariantError(Z2SchurError):
    """An input or a computed object violates a structural invariant."""


class UsageError(Z2SchurError, ValueError):
    """Malformed names, formats or arguments."""
