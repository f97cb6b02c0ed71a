"""Exception types shared across the package."""


class DGAError(Exception):
    pass


class TableMismatchError(DGAError):
    """Operands live over different generator tables."""


class DegreeError(DGAError, ValueError):
    pass


class ParseError(DGAError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceCapError(DGAError):
    """A configured size cap was exceeded.

    ``stage`` names the operation that refused to run, so batch callers can
    report which part of a pipeline hit the limit.
    """

    def __init__(self, stage, size, cap):
        super().__init__(f"{stage}: size {size} exceeds cap {cap}")
        self.stage = stage
        self.size = size
        self.cap = cap


class LiftError(DGAError):
    """A generator map failed to commute with the differential."""

    def __init__(self, generator, residual):
        super().__init__(f"d-commutation fails on {generator}: residual {residual}")
        self.generator = generator
        self.residual = residual
