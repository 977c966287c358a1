"""Carry points along the whole chain Q1 ∩ Q2 -> C(0) -> ... -> Weierstrass curve.

Also recovers the composite map as explicit forms in (x0, x1, x2, x3):
a 3x4 matrix when no quadratic step was taken, otherwise three quadratic
forms obtained by composing linear-after ∘ (XZ, XY, Z^2) ∘ linear-before.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import LinearMap, Poly, ProjectivePoint, QuadricForm, TernaryCubic, normalize_point, to_rational
from .cubic_to_weierstrass import CubicReduction, WeierstrassCurve, run_pipeline
from .errors import MapUndefined, PointNotOnCurve
from .quadric_to_cubic import QuadricStage, reduce_quadrics

# monomials x_i x_j with i <= j, in the order the composite tables are listed
QUADRATIC_MONOMIALS = tuple((i, j) for i in range(4) for j in range(i, 4))


@dataclass(frozen=True)
class PipelineTrace:
    """The quadric stage together with the cubic reduction that follows it."""

    quadrics: QuadricStage
    reduction: CubicReduction

    @property
    def steps(self):
        return self.reduction.steps

    @property
    def curve(self) -> WeierstrassCurve:
        return self.reduction.final

    @property
    def final_cubic(self) -> TernaryCubic:
        return self.reduction.final_cubic

    @property
    def base_point(self) -> ProjectivePoint:
        return self.quadrics.x

    def stage_cubic(self, r: int) -> TernaryCubic:
        return self.reduction.table(r)

    @property
    def last_stage(self) -> int:
        return self.steps[-1].index


def run_full(A: QuadricForm, B: QuadricForm, x, shift_roots: bool = True) -> PipelineTrace:
    stage = reduce_quadrics(A, B, x)
    return PipelineTrace(stage, run_pipeline(stage.cubic, stage.z, shift_roots=shift_roots))


def trace_point(trace: PipelineTrace, X) -> list[tuple[str, ProjectivePoint]]:
    """Images of X after the quadric stage and after every step."""
    P = trace.quadrics.forward(X)
    out = [("C0", P)]
    for s in trace.steps:
        P = s.map_forward(P)
        out.append((s.name, P))
    return out


def transport_forward(trace: PipelineTrace, X) -> ProjectivePoint:
    P = trace_point(trace, X)[-1][1]
    assert trace.final_cubic(P) == 0
    return P


def transport_backward(trace: PipelineTrace, P) -> ProjectivePoint:
    P = normalize_point(P)
    if trace.final_cubic(P) != 0:
        raise PointNotOnCurve(f"{P} is not on the final curve", step="transport_backward")
    for s in reversed(trace.steps):
        P = s.map_backward(P)
    return trace.quadrics.backward(P)


# ---------------------------------------------------------------------------
# composite map


@dataclass(frozen=True)
class CompositeMap:
    """Φ as explicit forms; ``degree`` is 1 (3x4 matrix) or 2 (3x10 table)."""

    degree: int
    rows: tuple[tuple[Fraction, ...], ...]

    def forms(self) -> list[Poly]:
        xs = [Poly.var(4, i) for i in range(4)]
        out = []
        for row in self.rows:
            f = Poly(4)
            monos = [(i,) for i in range(4)] if self.degree == 1 else QUADRATIC_MONOMIALS
            for c, mono in zip(row, monos):
                term = Poly.constant(4, c)
                for i in mono:
                    term = term * xs[i]
                f = f + term
            out.append(f)
        return out

    def __call__(self, X) -> tuple[Fraction, ...]:
        X = tuple(to_rational(c) for c in X)
        return tuple(f(*X) for f in self.forms())

    def apply(self, X) -> ProjectivePoint:
        v = self(X)
        if not any(v):
            # e.g. the base point: only the patched step-by-step maps are defined there
            raise MapUndefined(f"composite forms all vanish at {tuple(map(str, X))}", step="composite")
        return normalize_point(v)

    def as_table(self) -> dict[str, Fraction]:
        """Coefficients keyed like ``X01`` / ``Z33`` (degree 2) or ``X1`` (degree 1)."""
        keys = [str(i) for i in range(4)] if self.degree == 1 else [f"{i}{j}" for i, j in QUADRATIC_MONOMIALS]
        return {f"{name}{k}": c for name, row in zip("XYZ", self.rows) for k, c in zip(keys, row)}

    def scaled(self, c) -> CompositeMap:
        c = to_rational(c)
        return CompositeMap(self.degree, tuple(tuple(c * v for v in row) for row in self.rows))

    def proportionality(self, other: CompositeMap) -> Fraction | None:
        """The single factor c with other = c * self, if it exists."""
        if self.degree != other.degree:
            return None
        pairs = [(a, b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)]
        c = next((b / a for a, b in pairs if a), None)
        if c is None or any(b != c * a for a, b in pairs):
            return None
        return c


def _linear_prefix(trace: PipelineTrace, steps) -> tuple[tuple[Fraction, ...], ...]:
    """3x4 matrix of projection ∘ T followed by the given linear steps."""
    T = trace.quadrics.transform.matrix
    M = tuple(T[i] for i in range(3))
    for s in steps:
        M = tuple(tuple(sum(s.forward.matrix[i][k] * M[k][j] for k in range(3)) for j in range(4))
                  for i in range(3))
    return M


def extract_composite(trace: PipelineTrace) -> CompositeMap:
    """Compose the forward maps of every step into explicit forms in x0..x3.

    The projection from the quadric stage is used (not its patch at the base
    point), so the result is the generic expression of Φ.
    """
    steps = list(trace.steps)
    quad = [n for n, s in enumerate(steps) if s.kind == "quadratic"]
    if not quad:
        return CompositeMap(1, _linear_prefix(trace, steps))
    q = quad[0]
    before = _linear_prefix(trace, steps[:q])
    xs = [Poly.var(4, i) for i in range(4)]
    X, Y, Z = (sum((xs[j] * row[j] for j in range(4)), Poly(4)) for row in before)
    images = [X * Z, X * Y, Z * Z]
    after = LinearMap.identity(3)
    for s in steps[q + 1:]:
        after = s.forward @ after
    rows = []
    for i in range(3):
        f = sum((images[k] * after.matrix[i][k] for k in range(3)), Poly(4))
        rows.append(tuple(f.coeff(tuple(int(n == i0) + int(n == j0) for n in range(4)))
                          for i0, j0 in QUADRATIC_MONOMIALS))
    return CompositeMap(2, tuple(rows))


# kept for callers that think of the Euler branch as "the linear one"
extract_composite_linear = extract_composite
