"""Exception hierarchy shared by all modules."""


class BesovError(ValueError):
    """Base class for every error raised by besovlab."""


class ParameterError(BesovError):
    """Smoothness/integrability parameters violate a hypothesis.

    ``hypothesis`` names the violated condition so callers (the CLI in
    particular) can report it verbatim.
    """

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class GridError(BesovError):
    """Invalid grid or mismatched grids."""


class FormatError(BesovError):
    """Malformed binary container."""


class PlacementError(BesovError):
    """Extremal-family placements do not fit the torus without collisions."""
