"""Error taxonomy shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract user input (files, ranges, parameters)."""


class StructuralError(ValueError):
    """A decomposition is structurally unusable for the given graph."""


class CapacityError(RuntimeError):
    """An exact method was asked to run beyond its supported instance size."""
