"""Exception types shared across the package."""


class KahlergeoError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(KahlergeoError):
    """Tensor axes paired for contraction do not match."""


class DegeneracyError(KahlergeoError):
    """A frame, metric, or map lost rank below tolerance."""


class FieldEvaluationError(KahlergeoError):
    """A field produced a non-finite value inside a finite-difference stencil."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class InputError(KahlergeoError):
    """Caller supplied geometrically inconsistent input."""


class PreconditionError(KahlergeoError):
    """A documented geometric precondition of a check failed."""


class ExprError(KahlergeoError):
    """Expression parse or evaluation error, with a 1-based character offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
        self.reason = message


class SceneError(KahlergeoError):
    """Scene file parse or validation error, with 1-based line/column."""

    def __init__(self, message, line=None, column=None, block=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        blk = f" in block '{block}'" if block else ""
        super().__init__(f"{message}{blk}{loc}")
        self.line = line
        self.column = column
        self.block = block
        self.reason = message
