"""Exact scalars, projective points, homogeneous form containers.

Everything here is an immutable value over :class:`fractions.Fraction`.
Coefficient tables of ternary cubics are stored in descending
lexicographic exponent order::

    300, 210, 201, 120, 111, 102, 030, 021, 012, 003

which is also the order used for serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import ZeroVector

Rational = Fraction

MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)
LABELS: tuple[str, ...] = tuple("".join(map(str, e)) for e in MONOMIALS)
_INDEX = {e: n for n, e in enumerate(MONOMIALS)}


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into an
    exact pipeline.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _content(values: Sequence[Fraction]) -> Fraction:
    """Positive rational c with values/c primitive integers (0 for all-zero)."""
    nonzero = [v for v in values if v]
    if not nonzero:
        return Fraction(0)
    den = lcm(*(v.denominator for v in nonzero))
    g = reduce(gcd, (int(v * den) for v in nonzero))
    return Fraction(abs(g), den)


def primitive(values: Iterable, canonical_sign: bool = True) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers.

    With ``canonical_sign`` the first nonzero entry is made positive;
    otherwise the signs of the input are preserved.
    """
    vals = [to_rational(v) for v in values]
    c = _content(vals)
    if c == 0:
        raise ZeroVector("zero vector has no projective normalization")
    out = [int(v / c) for v in vals]
    if canonical_sign and next(x for x in out if x) < 0:
        out = [-x for x in out]
    return tuple(out)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials (only what substitution needs)


class Poly:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: to_rational(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> Poly:
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): to_rational(c)
                       for i, c in enumerate(coeffs)})

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = to_rational(other)
            return Poly(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict[tuple[int, ...], Fraction] = {}
        for (e1, c1), (e2, c2) in product(self.terms.items(), other.terms.items()):
            e = tuple(a + b for a, b in zip(e1, e2))
            t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.terms!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __call__(self, *values) -> Fraction:
        vals = [to_rational(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Replace variable ``i`` by ``images[i]`` (all in a common ring)."""
        nv = images[0].nvars
        out = Poly(nv)
        cache: dict[tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = Poly.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out


# ---------------------------------------------------------------------------
# projective points


@dataclass(frozen=True)
class ProjectivePoint:
    """Primitive integer homogeneous coordinates, first nonzero entry positive."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ZeroVector("all coordinates are zero")
        if primitive(self.coords) != tuple(self.coords):
            raise ValueError(f"{self.coords} is not in canonical primitive form")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return "(" + ", ".join(map(str, self.coords)) + ")"

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self.coords)


ProjectivePoint2 = ProjectivePoint3 = ProjectivePoint


def normalize_point(raw: Iterable) -> ProjectivePoint:
    return ProjectivePoint(primitive(raw))


def point(*coords) -> ProjectivePoint:
    """Shorthand: ``point(2, 2, 1)``."""
    return normalize_point(coords)


def projectively_equal(a: Sequence, b: Sequence) -> bool:
    return primitive(a) == primitive(b)


def _raw(P) -> tuple[Fraction, ...]:
    if isinstance(P, ProjectivePoint):
        return P.as_fractions()
    return tuple(to_rational(c) for c in P)


# ---------------------------------------------------------------------------
# matrices


def _matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    m = tuple(tuple(to_rational(x) for x in row) for row in rows)
    if any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def mat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
                       for j in range(len(b[0]))) for i in range(len(a)))


def mat_vec(a, v) -> tuple[Fraction, ...]:
    return tuple(sum((a[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(a)))


def transpose(a):
    return tuple(zip(*a))


def det(a) -> Fraction:
    m = [list(r) for r in a]
    n = len(m)
    sign, d = 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return sign * d


def inverse(a):
    n = len(a)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(r[n:]) for r in m)


@dataclass(frozen=True)
class LinearMap:
    """Invertible square matrix acting on homogeneous coordinates."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = _matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != len(m[0]):
            raise ValueError("linear map must be square")
        if det(m) == 0:
            raise ValueError("linear map is not invertible")

    @classmethod
    def identity(cls, n: int) -> LinearMap:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> LinearMap:
        """Map sending coordinate ``perm[i]`` of the input to slot ``i``."""
        n = len(perm)
        return cls(tuple(tuple(int(j == perm[i]) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return LinearMap(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> LinearMap:
        return LinearMap(inverse(self.matrix))

    def det(self) -> Fraction:
        return det(self.matrix)

    def apply_raw(self, v) -> tuple[Fraction, ...]:
        return mat_vec(self.matrix, _raw(v))

    def apply(self, P) -> ProjectivePoint:
        return normalize_point(self.apply_raw(P))

    def linear_forms(self) -> list[Poly]:
        return [Poly.linear(row) for row in self.matrix]

    def is_projectively_equal(self, other: LinearMap) -> bool:
        return projectively_equal(sum(self.matrix, ()), sum(other.matrix, ()))


LinearMap3 = LinearMap4 = LinearMap


def apply_linear(M: LinearMap, P) -> ProjectivePoint:
    return M.apply(P)


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class QuadricForm:
    """Symmetric 4x4 matrix A representing the quadric X^T A X = 0."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = _matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != 4 or len(m[0]) != 4:
            raise ValueError("quadric matrix must be 4x4")
        if m != transpose(m):
            raise ValueError("quadric matrix must be symmetric")

    @classmethod
    def diag(cls, *entries) -> QuadricForm:
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(4)) for i in range(4)))

    @classmethod
    def from_poly(cls, poly: Poly) -> QuadricForm:
        """Build the symmetric matrix of a quadratic form in four variables."""
        m = [[Fraction(0)] * 4 for _ in range(4)]
        for e, c in poly.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            if len(idx) != 2:
                raise ValueError("not a quadratic form")
            i, j = idx
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        return cls(tuple(map(tuple, m)))

    def __call__(self, P) -> Fraction:
        x = _raw(P)
        return sum((self.matrix[i][j] * x[i] * x[j] for i in range(4) for j in range(4)), Fraction(0))

    def transformed(self, Q: LinearMap) -> QuadricForm:
        """Q^T A Q: the same quadric written in coordinates Y with X = Q Y."""
        return QuadricForm(mat_mul(mat_mul(transpose(Q.matrix), self.matrix), Q.matrix))

    def as_poly(self) -> Poly:
        xs = [Poly.var(4, i) for i in range(4)]
        out = Poly(4)
        for i in range(4):
            for j in range(4):
                out = out + xs[i] * xs[j] * self.matrix[i][j]
        return out


def evaluate_quadric(Q: QuadricForm, P) -> Fraction:
    return Q(P)


@dataclass(frozen=True)
class TernaryCubic:
    """Coefficients Gamma_ijk of sum Gamma_ijk X^i Y^j Z^k (i+j+k = 3)."""

    gamma: tuple[Fraction, ...]

    def __post_init__(self):
        g = tuple(to_rational(c) for c in self.gamma)
        if len(g) != 10:
            raise ValueError("a ternary cubic has exactly 10 coefficients")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def from_dict(cls, coeffs: Mapping) -> TernaryCubic:
        g = [Fraction(0)] * 10
        for key, c in coeffs.items():
            g[_INDEX[_key(key)]] = to_rational(c)
        return cls(tuple(g))

    @classmethod
    def from_poly(cls, poly: Poly) -> TernaryCubic:
        if poly.nvars != 3 or any(sum(e) != 3 for e in poly.terms):
            raise ValueError("not a homogeneous ternary cubic")
        return cls(tuple(poly.coeff(e) for e in MONOMIALS))

    def __getitem__(self, key) -> Fraction:
        return self.gamma[_INDEX[_key(key)]]

    def __iter__(self):
        return iter(self.gamma)

    def __call__(self, P) -> Fraction:
        x, y, z = _raw(P)
        return sum((c * x ** i * y ** j * z ** k for c, (i, j, k) in zip(self.gamma, MONOMIALS) if c),
                   Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(LABELS, self.gamma))

    def nonzero(self) -> dict[str, Fraction]:
        return {k: v for k, v in zip(LABELS, self.gamma) if v}

    def as_poly(self) -> Poly:
        return Poly(3, dict(zip(MONOMIALS, self.gamma)))

    def is_zero(self) -> bool:
        return not any(self.gamma)

    def scaled(self, c) -> TernaryCubic:
        c = to_rational(c)
        return TernaryCubic(tuple(g * c for g in self.gamma))

    def reduced(self) -> TernaryCubic:
        """Cancel the positive content; signs are kept."""
        return TernaryCubic(primitive(self.gamma, canonical_sign=False))

    def normalized(self) -> TernaryCubic:
        """Primitive integer coefficients, first nonzero coefficient positive."""
        return TernaryCubic(primitive(self.gamma))

    def integer_table(self) -> tuple[int, ...]:
        return primitive(self.gamma)

    def proportionality(self, other: TernaryCubic) -> Fraction | None:
        """The c with other = c * self, or None when not proportional."""
        if self.is_zero() or other.is_zero():
            return None
        i = next(n for n, g in enumerate(self.gamma) if g)
        c = other.gamma[i] / self.gamma[i]
        if c and all(b == a * c for a, b in zip(self.gamma, other.gamma)):
            return c
        return None

    def is_proportional(self, other: TernaryCubic) -> bool:
        return self.proportionality(other) is not None


def _key(key) -> tuple[int, int, int]:
    if isinstance(key, str):
        return tuple(int(ch) for ch in key)  # type: ignore[return-value]
    return tuple(key)  # type: ignore[return-value]


def evaluate_cubic(C: TernaryCubic, P) -> Fraction:
    return C(P)


def pullback_cubic(M_inverse: LinearMap, C: TernaryCubic) -> TernaryCubic:
    """Expand C(M_inverse . X): the cubic in the coordinates X with old = M_inverse X."""
    return TernaryCubic.from_poly(C.as_poly().substitute(M_inverse.linear_forms()))
