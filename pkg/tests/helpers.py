"""Shared builders, oracles and point samplers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from quadric_weierstrass.core import MONOMIALS, Poly, QuadricForm, TernaryCubic, normalize_point
from quadric_weierstrass.errors import PipelineError
from quadric_weierstrass.families import EulerInstance, KlmInstance, euler_quadrics, klm_quadrics
from quadric_weierstrass.point_transport import run_full

X, Y, Z = sp.symbols("X Y Z")


def worked_example():
    """The quadric pair X0^2+2X0X1+2X1^2-6X1X2-2X2X3+3X3^2, -2X0^2+X1^2+2X2^2-X3^2."""
    x = [Poly.var(4, i) for i in range(4)]
    q1 = x[0] ** 2 + x[0] * x[1] * 2 + x[1] ** 2 * 2 - x[1] * x[2] * 6 - x[2] * x[3] * 2 + x[3] ** 2 * 3
    return QuadricForm.from_poly(q1), QuadricForm.diag(-2, 1, 2, -1), (1, 1, 1, 1)


def euler_trace(M, N):
    return run_full(*euler_quadrics(EulerInstance(M, N)))


def klm_trace(k, l, m):  # noqa: E741
    return run_full(*klm_quadrics(KlmInstance(k, l, m)))


def table(values: dict) -> TernaryCubic:
    return TernaryCubic.from_dict(values)


# --- sympy oracle ----------------------------------------------------------


def to_sympy(C: TernaryCubic):
    return sum(sp.Rational(g.numerator, g.denominator) * X**e[0] * Y**e[1] * Z**e[2]
               for g, e in zip(C.gamma, MONOMIALS))


def from_sympy(expr) -> TernaryCubic:
    P = sp.Poly(sp.expand(expr), X, Y, Z)
    return TernaryCubic(tuple(Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1]))
                              for c in (P.coeff_monomial(X**e[0] * Y**e[1] * Z**e[2]) for e in MONOMIALS)))


def sympy_pullback(C: TernaryCubic, G) -> TernaryCubic:
    """C(G . (X, Y, Z)) expanded independently by sympy."""
    M = sp.Matrix([[sp.Rational(c.numerator, c.denominator) for c in row] for row in G.matrix])
    img = M * sp.Matrix([X, Y, Z])
    return from_sympy(to_sympy(C).subs({X: img[0], Y: img[1], Z: img[2]}, simultaneous=True))


# --- rational points on plane cubics ---------------------------------------


def _binary(C: TernaryCubic, P, Q):
    """Coefficients (a, b, c, d) of C(sP + tQ) = a s^3 + b s^2 t + c s t^2 + d t^3."""
    def at(s, t):
        return C(tuple(s * p + t * q for p, q in zip(P, Q)))

    a, d = at(1, 0), at(0, 1)
    plus, minus = at(1, 1) - a - d, at(1, -1) - a + d  # b + c and c - b
    return a, (plus - minus) / 2, (plus + minus) / 2, d


def _gradient(C: TernaryCubic, P):
    grad = [Fraction(0)] * 3
    for g, e in zip(C.gamma, MONOMIALS):
        for v in range(3):
            if g and e[v]:
                mono = Fraction(g * e[v])
                for w in range(3):
                    mono *= Fraction(P[w]) ** (e[w] - (w == v))
                grad[v] += mono
    return grad


def third_point(C: TernaryCubic, P, Q):
    """Third intersection of the line PQ (tangent if P == Q) with C, or None."""
    P, Q = tuple(map(Fraction, P)), tuple(map(Fraction, Q))
    if normalize_point(P) == normalize_point(Q):
        g = _gradient(C, P)
        if not any(g):
            return None
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            D = (g[1] * e[2] - g[2] * e[1], g[2] * e[0] - g[0] * e[2], g[0] * e[1] - g[1] * e[0])
            if any(D) and normalize_point(D) != normalize_point(P):
                break
        a, b, c, d = _binary(C, P, D)
        R = tuple(d * p - c * q for p, q in zip(P, D))
    else:
        a, b, c, d = _binary(C, P, Q)
        R = tuple(c * p - b * q for p, q in zip(P, Q))
    return normalize_point(R) if any(R) else None


def _height(P) -> int:
    return max(abs(int(c)) for c in P)


def cubic_points(C: TernaryCubic, seeds, n: int, rng: random.Random, max_rounds: int = 2000):
    """Up to n distinct rational points of C from chords and tangents of the seeds."""
    pool = [normalize_point(s) for s in seeds]
    seen = set(pool)
    stale = 0
    for _ in range(max_rounds):
        if len(pool) >= n or stale > 400:  # a finite group has been exhausted
            break
        stale += 1
        ranked = sorted(pool, key=_height)
        # bias towards low height so coordinates stay manageable
        P, Q = (ranked[min(rng.randrange(len(ranked)), rng.randrange(len(ranked)))] for _ in range(2))
        R = third_point(C, P, Q)
        if R is not None and R not in seen:
            seen.add(R)
            pool.append(R)
            stale = 0
    return pool[:n]


def intersection_points(trace, n: int, rng: random.Random, extra_seeds=()):
    """Rational points of Q1 ∩ Q2: chord/tangent points of C0 pulled back by psi."""
    stage = trace.quadrics
    seeds = [stage.z] + [stage.forward(s) for s in extra_seeds]
    out = []
    for P in cubic_points(stage.cubic, seeds, n + 2, rng):
        try:
            out.append(stage.backward(P))
        except PipelineError:
            continue
    return out[:n]


def random_quadric_pair(rng: random.Random, size: int = 4):
    """Random symmetric integer pair through a random point x (one diagonal entry adjusted)."""
    x = [Fraction(rng.randint(-size, size)) for _ in range(4)]
    if not any(x):
        x[3] = Fraction(1)
    forms = []
    for _ in range(2):
        M = [[Fraction(0)] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i, 4):
                M[i][j] = M[j][i] = Fraction(rng.randint(-size, size))
        i = max(k for k in range(4) if x[k])
        rest = sum(M[a][b] * x[a] * x[b] for a in range(4) for b in range(4)) - M[i][i] * x[i] ** 2
        M[i][i] = -rest / x[i] ** 2
        forms.append(QuadricForm(tuple(tuple(r) for r in M)))
    return forms[0], forms[1], tuple(x)
