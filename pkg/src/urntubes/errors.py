class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConditioningError(ArithmeticError):
    """Conditioning on a predicate whose validity is zero."""


class ResourceError(RuntimeError):
    """A computation would exceed its enumeration or iteration guard."""
