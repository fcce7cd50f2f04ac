"""Exception types shared across the package.

Each error kind the library can signal gets its own class so callers (and
the CLI) can distinguish bad dimensions from bad fields from size guards
without parsing messages.
"""


class DimensionError(ValueError):
    """Shapes or index ranges are inconsistent."""


class FieldError(ValueError):
    """Invalid field data: composite characteristic, reducible modulus,
    or operands over mismatched fields."""


class SizeLimitError(RuntimeError):
    """A guarded computation would exceed its size budget."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class StructureError(ValueError):
    """Cell data violates a structural cross-check."""


class LinkValidationError(ValueError):
    """A vertex link fails the incidence axioms."""


class InconsistencyError(ValueError):
    """Locally valid data disagrees globally (e.g. mixed link orders)."""


class MultiplicityError(ValueError):
    """A transfer matrix entry exceeded 1."""


class IncompleteLinkError(ValueError):
    """A link was requested at a vertex whose star is not fully contained
    in the computed ball."""


class ParseError(ValueError):
    """A text input file is malformed."""

    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
