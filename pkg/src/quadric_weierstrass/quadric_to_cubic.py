"""Quadric intersection with a rational point -> plane cubic.

The base point x of Q1 ∩ Q2 is moved to (0,0,0,1).  In the new
coordinates Y both quadrics are linear in Y3,

    q1(Y0,Y1,Y2) + l1(Y0,Y1,Y2) Y3 = 0,    q2 + l2 Y3 = 0,

so eliminating Y3 leaves the plane cubic q1 l2 = q2 l1.  Projection
(Y0,Y1,Y2,Y3) -> (Y0,Y1,Y2) is the forward map; it is patched at the base
point with a split of the two equations (:func:`split_pencil`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    LinearMap,
    Poly,
    ProjectivePoint,
    QuadricForm,
    TernaryCubic,
    normalize_point,
    to_rational,
)
from .errors import DegenerateIntersection, MapUndefined, PointNotOnIntersection

BASE = normalize_point((0, 0, 0, 1))


def _vec(P) -> tuple[Fraction, ...]:
    return tuple(to_rational(c) for c in P)


@dataclass(frozen=True)
class TranslatedPencil:
    """Both quadrics after the base point has been moved to (0,0,0,1)."""

    A: QuadricForm  # Q^T A Q, bottom-right entry zero
    B: QuadricForm

    @property
    def u(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.A.matrix[i][3] for i in range(3))  # type: ignore[return-value]

    @property
    def v(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.B.matrix[i][3] for i in range(3))  # type: ignore[return-value]

    def q1(self, y) -> Fraction:
        return _ternary_quadratic(self.A, y)

    def q2(self, y) -> Fraction:
        return _ternary_quadratic(self.B, y)

    def l1(self, y) -> Fraction:
        return 2 * sum((u * c for u, c in zip(self.u, _vec(y))), Fraction(0))

    def l2(self, y) -> Fraction:
        return 2 * sum((v * c for v, c in zip(self.v, _vec(y))), Fraction(0))

    def q1_poly(self) -> Poly:
        return _ternary_quadratic_poly(self.A)

    def q2_poly(self) -> Poly:
        return _ternary_quadratic_poly(self.B)

    def l1_poly(self) -> Poly:
        return Poly.linear([2 * c for c in self.u])

    def l2_poly(self) -> Poly:
        return Poly.linear([2 * c for c in self.v])

    def z(self) -> ProjectivePoint:
        """Common zero of l1 and l2: image of the base point."""
        (u0, u1, u2), (v0, v1, v2) = self.u, self.v
        cross = (u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0)
        if not any(cross):
            raise DegenerateIntersection("l1 and l2 are proportional; the pencil is degenerate",
                                         step="quadric_to_cubic")
        return normalize_point(cross)

    def on_intersection(self, P) -> bool:
        return self.A(P) == 0 and self.B(P) == 0


def _ternary_quadratic(Q: QuadricForm, y) -> Fraction:
    y = _vec(y)
    return sum((Q.matrix[i][j] * y[i] * y[j] for i in range(3) for j in range(3)), Fraction(0))


def _ternary_quadratic_poly(Q: QuadricForm) -> Poly:
    ys = [Poly.var(3, i) for i in range(3)]
    out = Poly(3)
    for i in range(3):
        for j in range(3):
            out = out + ys[i] * ys[j] * Q.matrix[i][j]
    return out


def translate_base_point(A: QuadricForm, B: QuadricForm, x) -> tuple[LinearMap, TranslatedPencil]:
    """Return the map Y = T X sending x to (0,0,0,1), and the pencil in Y.

    When x3 = 0 the largest index j with x_j != 0 is swapped with 3 first;
    the swap is folded into T.
    """
    x = _vec(x)
    if not any(x):
        raise PointNotOnIntersection("the zero vector is not a projective point")
    if A(x) != 0 or B(x) != 0:
        raise PointNotOnIntersection(f"{x} is not on both quadrics", step="translate_base_point")
    perm = [0, 1, 2, 3]
    if x[3] == 0:
        j = max(i for i in range(4) if x[i])
        perm[j], perm[3] = perm[3], perm[j]
    S = LinearMap.permutation(perm)
    xs = S.apply_raw(x)
    xs = tuple(c / xs[3] for c in xs)
    P = LinearMap(((1, 0, 0, -xs[0]), (0, 1, 0, -xs[1]), (0, 0, 1, -xs[2]), (0, 0, 0, 1)))
    T = P @ S
    Tinv = T.inverse()
    pencil = TranslatedPencil(A.transformed(Tinv), B.transformed(Tinv))
    assert pencil.A.matrix[3][3] == 0 and pencil.B.matrix[3][3] == 0
    return T, pencil


def build_cubic(pencil: TranslatedPencil) -> TernaryCubic:
    """The cubic q2 l1 - q1 l2 = 0 with common factors cancelled.

    This orientation (rather than q1 l2 - q2 l1) reproduces the sign of the
    published tables; the sign matters because later steps read their
    transformation parameters off the coefficients.
    """
    poly = pencil.q2_poly() * pencil.l1_poly() - pencil.q1_poly() * pencil.l2_poly()
    C = TernaryCubic.from_poly(poly)
    if C.is_zero():
        raise DegenerateIntersection("q1 l2 - q2 l1 vanishes identically", step="build_cubic")
    return C.reduced()


@dataclass(frozen=True)
class SplitData:
    """Linear forms (coefficient 4-vectors over Y0..Y3) of the split.

    q1 + l1 Y3 = alpha1 Y2 + alpha2,  alpha2 = gamma0 Y0 + gamma1 Y1,
    and likewise for the second quadric with beta/delta.
    """

    alpha1: tuple[Fraction, ...]
    beta1: tuple[Fraction, ...]
    gamma0: tuple[Fraction, ...]
    gamma1: tuple[Fraction, ...]
    delta0: tuple[Fraction, ...]
    delta1: tuple[Fraction, ...]

    def polys(self) -> dict[str, Poly]:
        out = {name: Poly.linear(getattr(self, name))
               for name in ("alpha1", "beta1", "gamma0", "gamma1", "delta0", "delta1")}
        y0, y1 = Poly.var(4, 0), Poly.var(4, 1)
        out["alpha2"] = out["gamma0"] * y0 + out["gamma1"] * y1
        out["beta2"] = out["delta0"] * y0 + out["delta1"] * y1
        return out

    def phi_form(self, P) -> tuple[Fraction, Fraction, Fraction]:
        """The patched forward map: a1 d1 - b1 g1, b1 g0 - a1 d0, g1 d0 - d1 g0."""
        y = _vec(P)

        def ev(f):
            return sum((a * b for a, b in zip(f, y)), Fraction(0))

        a1, b1 = ev(self.alpha1), ev(self.beta1)
        g0, g1, d0, d1 = ev(self.gamma0), ev(self.gamma1), ev(self.delta0), ev(self.delta1)
        return (a1 * d1 - b1 * g1, b1 * g0 - a1 * d0, g1 * d0 - d1 * g0)


def split_pencil(pencil: TranslatedPencil) -> SplitData:
    a, b = pencil.A.matrix, pencil.B.matrix
    u, v = pencil.u, pencil.v
    return SplitData(
        alpha1=(2 * a[0][2], 2 * a[1][2], a[2][2], 2 * u[2]),
        beta1=(2 * b[0][2], 2 * b[1][2], b[2][2], 2 * v[2]),
        gamma0=(a[0][0], a[0][1], Fraction(0), 2 * u[0]),
        gamma1=(a[0][1], a[1][1], Fraction(0), 2 * u[1]),
        delta0=(b[0][0], b[0][1], Fraction(0), 2 * v[0]),
        delta1=(b[0][1], b[1][1], Fraction(0), 2 * v[1]),
    )


def phi(pencil: TranslatedPencil, P) -> ProjectivePoint:
    """Forward map from the translated intersection to the plane cubic."""
    y = _vec(P)
    if not pencil.on_intersection(y):
        raise PointNotOnIntersection(f"{y} is not on the translated intersection", step="phi")
    if any(y[:3]):
        return normalize_point(y[:3])
    image = split_pencil(pencil).phi_form(y)
    if not any(image):
        raise MapUndefined("both representations of phi vanish", step="phi")
    return normalize_point(image)


def psi(pencil: TranslatedPencil, P) -> ProjectivePoint:
    """Inverse map from the plane cubic back to the translated intersection."""
    y = _vec(P)
    l1, l2 = pencil.l1(y), pencil.l2(y)
    if l1:
        return normalize_point((l1 * y[0], l1 * y[1], l1 * y[2], -pencil.q1(y)))
    if l2:
        return normalize_point((l2 * y[0], l2 * y[1], l2 * y[2], -pencil.q2(y)))
    if pencil.q1(y) or pencil.q2(y):
        return BASE
    raise DegenerateIntersection(
        "l1, l2, q1, q2 all vanish: the intersection contains a line", step="psi")


@dataclass(frozen=True)
class QuadricStage:
    """Everything the first stage produces for one input instance."""

    A: QuadricForm
    B: QuadricForm
    x: ProjectivePoint
    transform: LinearMap  # Y = transform . X
    pencil: TranslatedPencil
    cubic: TernaryCubic
    z: ProjectivePoint

    def forward(self, P) -> ProjectivePoint:
        X = _vec(P)
        if self.A(X) != 0 or self.B(X) != 0:
            raise PointNotOnIntersection(f"{tuple(map(str, X))} is not on Q1 ∩ Q2", step="quadric_to_cubic")
        return phi(self.pencil, self.transform.apply_raw(X))

    def backward(self, P) -> ProjectivePoint:
        return self.transform.inverse().apply(psi(self.pencil, P))


def reduce_quadrics(A: QuadricForm, B: QuadricForm, x) -> QuadricStage:
    T, pencil = translate_base_point(A, B, x)
    C = build_cubic(pencil)
    z = pencil.z()
    if C(z) != 0:
        raise DegenerateIntersection("image of the base point is off the cubic", step="build_cubic")
    return QuadricStage(A, B, normalize_point(x), T, pencil, C, z)
