"""Exception hierarchy shared by the pipeline modules."""


class PipelineError(Exception):
    """Base class for every failure raised by the transformation pipeline.

    ``step`` names the stage that failed, when known; the CLI reports it.
    """

    def __init__(self, message: str = "", step: str | None = None):
        super().__init__(message)
        self.step = step


class ZeroVector(PipelineError, ValueError):
    pass


class PointNotOnIntersection(PipelineError):
    pass


class DegenerateIntersection(PipelineError):
    pass


class MapUndefined(PipelineError):
    pass


class PointNotOnCubic(PipelineError):
    pass


NotOnCurve = PointNotOnCubic


class PointNotOnCurve(PipelineError):
    """A point handed to backward transport is not on the final curve."""


class SingularPoint(PipelineError):
    pass


class InflectionShouldHaveShortcut(PipelineError):
    pass


class SingularCurve(PipelineError):
    pass


class DegenerateCubic(PipelineError):
    pass


class NotAProgression(PipelineError, ValueError):
    pass
