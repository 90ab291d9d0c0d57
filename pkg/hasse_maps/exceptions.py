"""Exception hierarchy for the hasse_maps application.

Library code raises these; serializers turn them into DRF validation errors
and management commands turn those into exit codes.
"""


class HasseMapsError(Exception):
    """Base class of every error raised by hasse_maps."""


class InadmissibleSystemError(HasseMapsError, ValueError):
    """A (family, rank) pair outside the canonical admissible list."""


class NodeIndexError(HasseMapsError, IndexError):
    """A Dynkin node index outside ``1..rank``."""


class WeightError(HasseMapsError, ValueError):
    """A weight whose label vector does not fit its root system."""


class NonDominantWeightError(WeightError):
    """A highest weight with a negative Dynkin label, or the zero weight."""


class DiagramError(HasseMapsError):
    """A Hasse diagram violating one of its structural invariants."""


class LabelingError(HasseMapsError, ValueError):
    """A labeling that is malformed or used with the wrong systems."""


class MapError(HasseMapsError):
    """A diagram map that fails revalidation."""


class FoldingError(HasseMapsError, ValueError):
    """An orbit partition not induced by Dynkin diagram automorphisms."""


class ConfigurationError(HasseMapsError, ValueError):
    """An invalid run configuration (rank cap, fixture, workers)."""
