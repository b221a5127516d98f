class ResourceLimitError(RuntimeError):
    """A search hit its configured node or stream cap before reaching a verdict."""


class PreconditionError(ValueError):
    """An operation was called on an input outside its contract."""
