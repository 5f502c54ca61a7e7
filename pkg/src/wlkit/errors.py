"""Exception types shared across the toolkit.

Every error raised by the library derives from :class:`WlkitError` so callers
(and the CLI) can report the error name uniformly.
"""


class WlkitError(Exception):
    """Base class for all toolkit errors."""


# --- expression evaluation ---


class UnassignedVariable(WlkitError):
    """A numeric variable referenced by an expression has no value in the state."""


class DivisionByZero(WlkitError):
    """An expression divided by a subexpression that evaluates to zero."""


# --- parsing ---


class ParseError(WlkitError):
    """Malformed PDDL input; carries the source span when known."""

    def __init__(self, message, span=None):
        if span is not None:
            message = f"{span}: {message}"
        super().__init__(message)
        self.span = span


class DuplicateSymbol(ParseError):
    """A predicate, function, constant or object was declared twice."""


class UnsupportedRequirement(ParseError):
    """A :requirements flag outside the supported subset."""


class SchemaError(WlkitError):
    """A JSON document does not match the canonical task/dataset/model schema."""


class UnknownSymbol(WlkitError):
    """Reference to an undeclared predicate, function or object."""


class ArityMismatch(WlkitError):
    """A ground atom's argument count differs from the declared arity."""


class UnassignedGoalFluent(WlkitError):
    """A numeric goal mentions a variable that the state does not assign."""


# --- graphs and generation ---


class DomainMismatch(WlkitError):
    """A problem, dataset or model belongs to a different domain."""


class NodeOutOfRange(WlkitError):
    """Node id outside the graph."""


class NodeBudgetExceeded(WlkitError):
    """Graph node count or kernel pair count exceeds the configured budget."""


# --- feature models ---


class ModelNotCollected(WlkitError):
    """Operation requires collect() to have run on the model first."""


class NoWeights(WlkitError):
    """predict() called on a model without weights."""


class DimensionMismatch(WlkitError):
    """Weight vector length does not match the model's feature count."""


class MissingLabels(WlkitError):
    """Dataset entries lack the labels this operation needs."""


class SchemaVersionMismatch(WlkitError):
    """Model file has an unknown schema version or kernel kind."""


class CorruptRegistry(WlkitError):
    """Model file's colour registry fails the injectivity/consistency re-check."""
