class StarmultError(ValueError):
    """Base class for input and contract violations."""


class VariableMismatch(StarmultError):
    pass


class FieldMismatch(StarmultError):
    pass


class DimensionMismatch(StarmultError):
    pass


class NotClosedError(StarmultError):
    """A one-form handed to integration has nonvanishing exterior derivative."""


class NotASolutionError(StarmultError):
    """A pair (f, g) does not satisfy the gradient equation it was claimed to solve."""


class SchemaError(StarmultError):
    """A JSON document does not match the expected schema."""
