"""JSON documents for instances and traces.

Rationals are written as strings "p/q" (or "p" for integers) so nothing
is lost in transit; keys are sorted, so equal documents serialize to
identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import LinearMap, ProjectivePoint, QuadricForm, TernaryCubic, fmt_rational, to_rational
from .cubic_to_weierstrass import StepRecord, WeierstrassCurve
from .families import EulerInstance, KlmInstance, euler_quadrics, klm_quadrics
from .point_transport import PipelineTrace

SCHEMA = "quadric-weierstrass/trace-v1"


class DocumentError(ValueError):
    """Malformed instance or point document (CLI exit code 2)."""


def jsonable(obj):
    """Plain ints stay JSON integers; every Fraction becomes a "p/q" string."""
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, ProjectivePoint):
        return [fmt_rational(Fraction(c)) for c in obj]
    if isinstance(obj, LinearMap):
        return [[fmt_rational(c) for c in row] for row in obj.matrix]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    return json.loads(text)


def parse_rational(value) -> Fraction:
    try:
        return to_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"not a rational number: {value!r}") from exc


def parse_point(text: str, dim: int | None = None) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",")]
    coords = tuple(parse_rational(p) for p in parts)
    if dim is not None and len(coords) != dim:
        raise DocumentError(f"expected {dim} coordinates, got {len(coords)}")
    if not any(coords):
        raise DocumentError("the zero vector is not a projective point")
    return coords


def _int_param(doc, key) -> int:
    value = doc.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError(f"{key} must be an integer")
    try:
        return int(value)
    except ValueError as exc:
        raise DocumentError(f"{key} must be an integer") from exc


def parse_instance(doc) -> tuple[dict, QuadricForm, QuadricForm, tuple[Fraction, ...]]:
    """Return (canonical instance document, A, B, base point)."""
    if not isinstance(doc, dict):
        raise DocumentError("instance must be a JSON object")
    has_q, has_f = "quadrics" in doc, "family" in doc
    if has_q == has_f:
        raise DocumentError("give exactly one of 'quadrics' (+ 'point') or 'family'")
    if has_f:
        fam = doc["family"]
        try:
            if fam == "euler":
                inst = EulerInstance(_int_param(doc, "M"), _int_param(doc, "N"))
                A, B, x = euler_quadrics(inst)
                canon = {"family": "euler", "M": inst.M, "N": inst.N}
            elif fam == "klm":
                inst = KlmInstance(_int_param(doc, "k"), _int_param(doc, "l"), _int_param(doc, "m"))
                A, B, x = klm_quadrics(inst)
                canon = {"family": "klm", "k": inst.k, "l": inst.l, "m": inst.m}
            else:
                raise DocumentError(f"unknown family {fam!r}")
        except DocumentError:
            raise
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
        return jsonable(canon), A, B, tuple(x)
    mats = doc["quadrics"]
    if not (isinstance(mats, list) and len(mats) == 2):
        raise DocumentError("'quadrics' must hold two 4x4 matrices")
    forms = []
    for M in mats:
        if not (isinstance(M, list) and len(M) == 4 and all(isinstance(r, list) and len(r) == 4 for r in M)):
            raise DocumentError("each quadric must be a 4x4 matrix")
        rows = tuple(tuple(parse_rational(c) for c in r) for r in M)
        try:
            forms.append(QuadricForm(rows))
        except ValueError as exc:
            raise DocumentError(f"bad quadric matrix: {exc}") from exc
    pt = doc.get("point")
    if not (isinstance(pt, list) and len(pt) == 4):
        raise DocumentError("'point' must hold 4 rationals")
    x = tuple(parse_rational(c) for c in pt)
    if not any(x):
        raise DocumentError("the zero vector is not a projective point")
    canon = {"quadrics": [f.matrix for f in forms], "point": x}
    return jsonable(canon), forms[0], forms[1], x


def cubic_document(C: TernaryCubic) -> dict:
    # primitive integers with the sign kept
    return {"table": [int(c) for c in C.reduced().gamma],
            "exact": {k: fmt_rational(v) for k, v in C.as_dict().items()}}


def curve_document(W: WeierstrassCurve) -> dict:
    roots = W.rational_roots()
    return {
        "a1": W.a1, "a2": W.a2, "a3": W.a3, "a4": W.a4, "a6": W.a6,
        "equation": W.equation(),
        "factored": W.factored(),
        "roots": roots,
    }


def step_document(s: StepRecord) -> dict:
    return {
        "name": s.name,
        "index": s.index,
        "kind": s.kind,
        "flags": list(s.flags),
        "params": s.params,
        "forward": s.forward,
        "pullback": s.pullback,
        "scale": s.scale,
        "cubic": cubic_document(s.cubic_after),
        "point": s.point_after,
    }


def trace_document(instance: dict, trace: PipelineTrace) -> dict:
    q = trace.quadrics
    doc = {
        "schema": SCHEMA,
        "instance": instance,
        "quadric_stage": {
            "transform": q.transform,
            "cubic": cubic_document(q.cubic),
            "point": q.z,
        },
        "steps": [step_document(s) for s in trace.steps],
        "weierstrass": curve_document(trace.reduction.weierstrass),
        "final": curve_document(trace.curve),
    }
    return jsonable(doc)
