"""Exception hierarchy shared by every module."""


class GraphError(ValueError):
    """Invalid argument: bad vertex index, out-of-range parameter."""


class SizeError(GraphError):
    """Graph or corpus larger than a representation or solver supports."""


class Graph6Error(GraphError):
    """Malformed graph6 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ModelError(GraphError):
    """Branch sets that do not form a valid minor model."""

    def __init__(self, message: str, branch_set=None):
        if branch_set is not None:
            message = f"{message}: {sorted(branch_set)}"
        super().__init__(message)
        self.branch_set = branch_set


class CertificateError(ValueError):
    """A certificate (hole, witness, order, coloring, split) failed validation."""


class ResourceError(RuntimeError):
    """A search exceeded its step budget or size limit. Never means "absent"."""


class InvariantViolation(AssertionError):
    """A constructed object contradicts a proven statement. Always fatal."""
