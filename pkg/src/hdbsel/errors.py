"""Exception hierarchy shared by every stage of the pipeline."""


class ClusteringError(ValueError):
    """Base class for all errors raised by hdbsel."""


class InputError(ClusteringError):
    """Malformed or inconsistent input data."""


class DimensionError(InputError):
    """Point dimensionality does not fit the requested metric."""


class ParameterError(ClusteringError):
    """A parameter is outside its admissible range."""


class StructuralError(ClusteringError):
    """A tree, edge list or selection violates a structural invariant."""


class UndefinedScoreError(ClusteringError):
    """A score cannot be computed for the given labelings."""
