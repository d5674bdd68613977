class ConfigurationError(ValueError):
    """Invalid mode configuration, family request, or an inconclusive check."""


class EvaluationError(ValueError):
    """An expression references generators absent from the representation."""


class ConstructionError(AssertionError):
    """A built operator violates a structural invariant (diagonal N, integer spectrum)."""
