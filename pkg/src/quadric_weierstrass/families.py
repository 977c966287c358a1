"""Two closed-form families of quadric intersections.

Euler's concordant forms: M and N are concordant when x0^2 + M x1^2 and
x0^2 + N x1^2 are simultaneously squares, i.e. on the intersection

    M X0^2 + X1^2 - X2^2 = 0,    N X0^2 + X1^2 - X3^2 = 0,

with the rational point (0, 1, 1, 1).  The curve is y^2 = x(x-M)(x-(M-N)).

Four squares alpha^2, beta^2, gamma^2, delta^2 in arithmetic progression
with gaps k s, l s, m s:

    (k+l) X0^2 - k X1^2 - l X2^2 = 0,    -m X0^2 + (m+l) X1^2 - l X3^2 = 0,

with the rational point (1, 1, 1, 1).  The curve is
y^2 = x(x + km)(x + (k+l)(l+m)).

The closed-form curves below are what the pipeline produces for the reduced
instance (``reduced()``): klm triples with gcd 1 and Euler pairs without a
common square factor.  Scaled instances give the same intersection and
therefore the same final curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import factorint

from .core import ProjectivePoint, QuadricForm, normalize_point, to_rational
from .cubic_to_weierstrass import WeierstrassCurve, maximal_scaling_factor
from .errors import NotAProgression
from .point_transport import CompositeMap, QUADRATIC_MONOMIALS


@dataclass(frozen=True)
class EulerInstance:
    M: int
    N: int

    def __post_init__(self):
        if self.M == 0 or self.N == 0 or self.M == self.N:
            raise ValueError("need M != 0, N != 0 and M != N")

    def reduced(self) -> EulerInstance:
        """Divide out the largest square d^2 dividing both M and N (X0 -> X0/d gives the same curve)."""
        d = 1
        for p, e in factorint(gcd(self.M, self.N)).items():
            d *= int(p) ** (e // 2)
        return EulerInstance(self.M // d**2, self.N // d**2)


@dataclass(frozen=True)
class KlmInstance:
    k: int
    l: int  # noqa: E741
    m: int

    def __post_init__(self):
        if min(self.k, self.l, self.m) < 1:
            raise ValueError("k, l, m must be positive integers")

    def reduced(self) -> KlmInstance:
        """Only the ratio k:l:m matters, so divide out the common factor."""
        g = gcd(self.k, self.l, self.m)
        return KlmInstance(self.k // g, self.l // g, self.m // g)


def euler_quadrics(inst: EulerInstance) -> tuple[QuadricForm, QuadricForm, ProjectivePoint]:
    return (QuadricForm.diag(inst.M, 1, -1, 0), QuadricForm.diag(inst.N, 1, 0, -1),
            normalize_point((0, 1, 1, 1)))


def euler_curve(inst: EulerInstance) -> WeierstrassCurve:
    M, N = inst.M, inst.N
    return WeierstrassCurve(a2=-(2 * M - N), a4=M * (M - N), a6=0)


def euler_composite(inst: EulerInstance) -> CompositeMap:
    """The closed-form 3x4 matrix of Φ for the family."""
    M, N = inst.M, inst.N
    rows = ((0, -M * (M - N), 0, M * (M - N)),
            (M * N * (M - N), 0, 0, 0),
            (0, -(M - N), -N, M))
    return CompositeMap(1, tuple(tuple(Fraction(c) for c in r) for r in rows))


def euler_trivial_images(inst: EulerInstance) -> dict[tuple[int, ...], ProjectivePoint]:
    M, N = inst.M, inst.N
    return {
        (0, 1, 1, 1): normalize_point((0, 1, 0)),
        (0, 1, 1, -1): normalize_point((M - N, 0, 1)),
        (0, 1, -1, 1): normalize_point((0, 0, 1)),
        (0, 1, -1, -1): normalize_point((M, 0, 1)),
    }


def klm_quadrics(inst: KlmInstance) -> tuple[QuadricForm, QuadricForm, ProjectivePoint]:
    k, l, m = inst.k, inst.l, inst.m  # noqa: E741
    return (QuadricForm.diag(k + l, -k, -l, 0), QuadricForm.diag(-m, m + l, 0, -l),
            normalize_point((1, 1, 1, 1)))


def klm_curve(inst: KlmInstance) -> WeierstrassCurve:
    k, l, m = inst.k, inst.l, inst.m  # noqa: E741
    A, B = k * m, (k + l) * (l + m)
    return WeierstrassCurve(a2=A + B, a4=A * B, a6=0)


def klm_composite_map(inst: KlmInstance) -> CompositeMap:
    """The thirty coefficients X_ij, Y_ij, Z_ij (i <= j) of the quadratic Φ."""
    k, l, m = inst.k, inst.l, inst.m  # noqa: E741
    kl, lm, s = k + l, l + m, k + l + m
    X = {
        "00": -k * m**2 * kl**2 * lm * s**2,
        "01": k * m * kl * lm * s**2 * (k * l + 2 * k * m + l * m),
        "02": -k * l * m**2 * kl * (k - m) * lm * s,
        "03": -k * l * m * (k - m) * kl**2 * lm * s,
        "11": -k**2 * m * kl * lm**2 * s**2,
        "12": k * l * m * kl * (k - m) * lm**2 * s,
        "13": k**2 * m * l * kl * (k - m) * lm * s,
        "22": k * l**2 * m**2 * kl * lm**2,
        "23": -k * l**2 * m * kl * lm * (k**2 + k * l + l * m + m**2),
        "33": k**2 * l**2 * m * kl**2 * lm,
    }
    Y = {
        "00": k * l * m**2 * kl**2 * lm * s**2,
        "01": k * l**2 * m * kl * (k - m) * lm * s**2,
        "02": -k**2 * l * m**2 * kl * lm * s * (k + 2 * l + m),
        "03": -k * l * m * kl**2 * (k + m) * lm**2 * s,
        "11": -k**2 * l * m * kl * lm**2 * s**2,
        "12": k * l * m * kl**2 * (k + m) * lm**2 * s,
        "13": k**2 * l * m**2 * kl * lm * s * (k + 2 * l + m),
        "22": -k * l**2 * m**2 * kl * lm**2 * s,
        "23": -k * l**2 * m * kl * (k - m) * lm * s**2,
        "33": k**2 * l**2 * m * kl**2 * lm * s,
    }
    Z = {
        "00": m**2 * kl**2 * s**2,
        "01": -2 * k * m * kl * lm * s**2,
        "02": -2 * l * m**2 * kl * lm * s,
        "03": 2 * k * l * m * kl**2 * s,
        "11": k**2 * lm**2 * s**2,
        "12": 2 * k * l * m * lm**2 * s,
        "13": -2 * k**2 * l * kl * lm * s,
        "22": l**2 * m**2 * lm**2,
        "23": -2 * k * l**2 * m * kl * lm,
        "33": k**2 * l**2 * kl**2,
    }
    keys = [f"{i}{j}" for i, j in QUADRATIC_MONOMIALS]
    return CompositeMap(2, tuple(tuple(Fraction(t[key]) for key in keys) for t in (X, Y, Z)))


def klm_trivial_images(inst: KlmInstance) -> dict[tuple[int, ...], tuple[ProjectivePoint, str]]:
    """Images of (1, ±1, ±1, ±1) with their labels (2-torsion / infinity)."""
    k, l, m = inst.k, inst.l, inst.m  # noqa: E741
    kl, lm, s = k + l, l + m, k + l + m
    rows = {
        (1, 1, 1, 1): ((0, 1, 0), "point at infinity"),
        (1, 1, 1, -1): ((m * lm, m * lm * s, 1), ""),
        (1, 1, -1, 1): ((k * kl, -k * kl * s, 1), ""),
        (1, 1, -1, -1): ((0, 0, 1), "2-torsion point"),
        (1, -1, 1, 1): ((-m * kl, -m * l * kl, 1), ""),
        (1, -1, 1, -1): ((-kl * lm, 0, 1), "2-torsion point"),
        (1, -1, -1, 1): ((-k * m, 0, 1), "2-torsion point"),
        (1, -1, -1, -1): ((-k * lm, k * l * lm, 1), ""),
    }
    return {x: (normalize_point(p), label) for x, (p, label) in rows.items()}


def progression_from_point(X) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(alpha, beta, gamma, delta) of a point (X0, X1, X2, X3) = (beta, gamma, alpha, delta)."""
    X0, X1, X2, X3 = (to_rational(c) for c in X)
    return X2, X0, X1, X3


def progression_step_size(alpha, beta, gamma, delta, k, l, m) -> Fraction:  # noqa: E741
    """Common difference s with beta^2 - alpha^2 = k s, gamma^2 - beta^2 = l s, delta^2 - gamma^2 = m s."""
    a, b, c, d = (to_rational(v) for v in (alpha, beta, gamma, delta))
    k, l, m = (to_rational(v) for v in (k, l, m))  # noqa: E741
    if 0 in (k, l, m):
        raise ValueError("k, l, m must be nonzero")
    quotients = ((b * b - a * a) / k, (c * c - b * b) / l, (d * d - c * c) / m)
    if len(set(quotients)) != 1:
        raise NotAProgression(f"gaps do not match the ratio k:l:m (quotients {quotients})")
    return quotients[0]


def minimal_model(W: WeierstrassCurve) -> WeierstrassCurve:
    """Divide out the largest u with u^2 | a2, u^4 | a4, u^6 | a6 (short integral curves).

    This is the reduction step 7 performs; two short curves related by
    x -> u^2 x, y -> u^3 y have the same minimal model.
    """
    if not W.is_short or any(c.denominator != 1 for c in (W.a2, W.a4, W.a6)):
        raise ValueError("expects a short Weierstrass curve with integer coefficients")
    # step 7 on -X^3 + ... : its conditions with g300 = -1 are exactly these
    u = maximal_scaling_factor(int(-W.a2), -1, int(-W.a4), int(-W.a6))
    return WeierstrassCurve(a2=W.a2 / u**2, a4=W.a4 / u**4, a6=W.a6 / u**6)
