"""Shared exception types."""


class StructuralError(ValueError):
    """Operands or arguments are structurally incompatible (wrong ring,
    wrong shape, missing variable)."""


class RingMismatchError(StructuralError):
    """Operands belong to different rings."""


class UnsupportedOperationError(ValueError):
    """The operation is not defined for this ring or exceeds a cost guard."""


class ValidationError(ValueError):
    """Constructor arguments violate a documented constraint."""
