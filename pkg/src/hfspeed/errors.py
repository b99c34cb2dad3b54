"""Exception taxonomy: validation, resource limits, unsupported operations."""


class ValidationError(ValueError):
    """Malformed input: bad DSL text, bad graph data, parameters out of range."""


class CapacityError(ValidationError):
    """Input exceeds a hard desk-scale cap (n > 64, l*s > 6, and friends)."""


class ResourceLimitError(RuntimeError):
    """A search exhausted its node budget.  Never a wrong answer, only a refusal."""


class UnsupportedOperationError(ValueError):
    """Operation is not defined for this family shape (e.g. enumerating a
    family that is not hereditary by construction)."""
