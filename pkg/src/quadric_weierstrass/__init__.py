"""Exact transformation of a quadric intersection in P^3 with a rational point to Weierstrass form."""

from .core import (
    LinearMap,
    ProjectivePoint,
    QuadricForm,
    TernaryCubic,
    normalize_point,
    point,
    pullback_cubic,
)
from .cubic_to_weierstrass import StepRecord, WeierstrassCurve, run_pipeline
from .errors import PipelineError
from .point_transport import extract_composite, run_full, transport_backward, transport_forward
from .quadric_to_cubic import reduce_quadrics

__all__ = [
    "LinearMap", "ProjectivePoint", "QuadricForm", "TernaryCubic", "normalize_point", "point",
    "pullback_cubic", "StepRecord", "WeierstrassCurve", "run_pipeline", "PipelineError",
    "extract_composite", "run_full", "transport_backward", "transport_forward", "reduce_quadrics",
]
