"""Exception types shared across the package."""


class SpecConvexError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(SpecConvexError):
    """Operands have incompatible dimensions."""


class CapExceeded(SpecConvexError):
    """An instance is larger than the configured size cap.

    Carries the numbers a caller needs to report the refused instance:
    ``declared_size`` is the size the representation would have had,
    ``block_order`` the offending block order (when applicable).
    """

    def __init__(self, message, declared_size=None, block_order=None):
        super().__init__(message)
        self.declared_size = declared_size
        self.block_order = block_order


class SchemaError(SpecConvexError):
    """Invalid input document; ``pointer`` locates the offending field."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer
