"""Nagell's reduction of a plane cubic with a rational point to Weierstrass form.

Every step is a change of coordinates old = G . new (``pullback``) whose
forward matrix F satisfies F . G = c . I.  The new cubic is the pullback of
the old one, rescaled by a fixed rule per step:

* steps 1-4: common factors cancelled (sign kept), after the step's own
  scalar (-1/q_y in step 3, 1/h_x in step 4);
* step 5: the quadratic map (X, Y, Z) -> (XZ, XY, Z^2), a relabelling of
  coefficients;
* steps 6-8: Y^2 Z coefficient scaled to 1.

The signs of the transformation parameters are read off the current table,
so the tables are sign-sensitive: feeding in -C instead of C gives a
different (but isomorphic) chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint

from .core import (
    LinearMap,
    ProjectivePoint,
    TernaryCubic,
    normalize_point,
    primitive,
    pullback_cubic,
    to_rational,
)
from .errors import (
    DegenerateCubic,
    InflectionShouldHaveShortcut,
    MapUndefined,
    PointNotOnCubic,
    SingularCurve,
    SingularPoint,
)

E1 = normalize_point((1, 0, 0))
E2 = normalize_point((0, 1, 0))
E3 = normalize_point((0, 0, 1))

# monomials allowed after steps 4, 5 and 6/7
SHAPE_38 = {"201", "120", "111", "102", "012", "003"}
SHAPE_GENERAL_W = {"300", "201", "111", "102", "021", "012", "003"}
SHAPE_SPECIAL_W = {"300", "201", "102", "021", "003"}


@dataclass(frozen=True)
class StepRecord:
    """One coordinate change of the reduction.

    ``forward`` maps old coordinates to new ones, ``pullback`` new to old
    (up to a scalar).  For the quadratic step both are None and the point
    maps are the monomial maps with their patches.
    """

    name: str
    index: int
    kind: str  # "linear" | "permutation" | "quadratic"
    cubic_before: TernaryCubic
    cubic_after: TernaryCubic
    point_before: ProjectivePoint
    point_after: ProjectivePoint
    forward: LinearMap | None = None
    pullback: LinearMap | None = None
    scale: Fraction = Fraction(1)  # cubic_after = scale * pullback_cubic(pullback, cubic_before)
    params: dict = field(default_factory=dict, compare=False)
    flags: tuple[str, ...] = ()

    def map_forward(self, P) -> ProjectivePoint:
        if self.kind == "quadratic":
            return rho_at(self.cubic_before, P)
        return self.forward.apply(P)

    def map_backward(self, P) -> ProjectivePoint:
        if self.kind == "quadratic":
            return psi5_at(self.cubic_after, P)
        return self.pullback.apply(P)


def _linear_step(name, index, kind, C, p, F, G, rule, params=None, flags=()) -> StepRecord:
    F = LinearMap(F) if not isinstance(F, LinearMap) else F
    G = LinearMap(G) if not isinstance(G, LinearMap) else G
    raw = pullback_cubic(G, C)
    if rule == "content":
        after = raw.reduced()
    elif rule == "unit_y2z":
        after = raw.scaled(1 / raw["021"])
    else:
        after = raw.scaled(rule).reduced()
    scale = after.gamma[_first_nonzero(raw)] / raw.gamma[_first_nonzero(raw)]
    return StepRecord(name, index, kind, C, after, p, F.apply(p), F, G, scale,
                      dict(params or {}), tuple(flags))


def _first_nonzero(C: TernaryCubic) -> int:
    return next(i for i, g in enumerate(C.gamma) if g)


def _check_on(C: TernaryCubic, p, step: str):
    if C(p) != 0:
        raise PointNotOnCubic(f"{p} is not on the cubic", step=step)


# ---------------------------------------------------------------------------
# steps


def step1_translate(C0: TernaryCubic, p) -> StepRecord:
    """Move p to (1, 0, 0), which kills the X^3 coefficient.

    If p_x = 0 the first nonzero coordinate is swapped into the X slot; the
    swap is part of the recorded forward map.
    """
    p = normalize_point(p)
    _check_on(C0, p, "step1")
    j = next(i for i in range(3) if p[i])
    perm = [0, 1, 2]
    perm[0], perm[j] = perm[j], perm[0]
    S = LinearMap.permutation(perm)
    px, py, pz = S.apply_raw(p)
    py, pz = py / px, pz / px
    F = LinearMap(((1, 0, 0), (-py, 1, 0), (-pz, 0, 1))) @ S
    G = S @ LinearMap(((1, 0, 0), (py, 1, 0), (pz, 0, 1)))
    flags = ("x_reindexed",) if j else ()
    rec = _linear_step("step1", 1, "linear", C0, p, F, G, "content",
                       {"p": (py, pz), "permutation": perm}, flags)
    assert rec.cubic_after["300"] == 0 and rec.point_after == E1
    return rec


def step2_align_tangent(C1: TernaryCubic) -> StepRecord:
    """Make Z = 0 the tangent at (1, 0, 0).

    The record carries flag ``inflection`` when (1, 0, 0) turns out to be a
    flex of the result, in which case steps 3-5 are replaced by an X/Y swap.
    """
    if C1["300"] != 0:
        raise PointNotOnCubic("(1,0,0) is not on the cubic", step="step2")
    gy, gz = C1["210"], C1["201"]
    if gy == 0 and gz == 0:
        raise SingularPoint("no tangent at (1,0,0): the distinguished point is singular", step="step2")
    flags = []
    S = LinearMap.identity(3)
    if gz == 0:
        S = LinearMap.permutation((0, 2, 1))
        gy, gz = gz, gy
        flags.append("yz_swap")
    gy, gz = (Fraction(c) for c in primitive((gy, gz), canonical_sign=False))
    F = LinearMap(((1, 0, 0), (0, 1, 0), (0, gy, gz))) @ S
    G = S @ LinearMap(((gz, 0, 0), (0, gz, 0), (0, -gy, 1)))
    rec = _linear_step("step2", 2, "linear", C1, E1, F, G, "content", {"g": (gy, gz)}, ())
    C2 = rec.cubic_after
    assert C2["300"] == 0 and C2["210"] == 0
    if C2["120"] == 0:
        flags.append("inflection")
    else:
        rec.params["q"] = normalize_point((C2["030"], -C2["120"], 0))
    return _with_flags(rec, flags)


def _with_flags(rec: StepRecord, flags) -> StepRecord:
    return StepRecord(**{**rec.__dict__, "flags": tuple(rec.flags) + tuple(flags)})


def inflection_shortcut(C2: TernaryCubic) -> StepRecord:
    """Exchange X and Y: a flex at (1,0,0) with tangent Z = 0 is already Weierstrass."""
    if C2["120"] != 0:
        raise ValueError("(1,0,0) is not an inflection point; use steps 3-5")
    swap = LinearMap.permutation((1, 0, 2))
    rec = _linear_step("step5_shortcut", 5, "permutation", C2, E1, swap, swap, "content",
                       flags=("inflection_shortcut", "xy_exchange"))
    if rec.cubic_after["021"] == 0:
        raise SingularCurve("Y^2 Z coefficient vanishes", step="step5_shortcut")
    assert set(rec.cubic_after.nonzero()) <= SHAPE_GENERAL_W and rec.point_after == E2
    return rec


def step3_move_second_intersection(C2: TernaryCubic, q=None) -> StepRecord:
    """Send the second intersection q of the tangent Z = 0 to (0, 1, 0)."""
    if C2["120"] == 0:
        raise InflectionShouldHaveShortcut("(1,0,0) is a flex; take the shortcut", step="step3")
    if q is None:
        q = (C2["030"], -C2["120"], 0)
    q = tuple(to_rational(c) for c in q)
    if q[2] != 0 or q[1] == 0:
        raise PointNotOnCubic("q must be (q_x, q_y, 0) with q_y != 0", step="step3")
    _check_on(C2, q, "step3")
    qx, qy = (Fraction(c) for c in primitive(q[:2], canonical_sign=False))
    F = ((-qy, qx, 0), (0, 1, 0), (0, 0, 1))
    G = ((1, -qx, 0), (0, -qy, 0), (0, 0, -qy))
    rec = _linear_step("step3", 3, "linear", C2, E1, F, G, -1 / qy, {"q": (qx, qy)})
    C3 = rec.cubic_after
    assert C3["300"] == C3["030"] == C3["210"] == 0 and C3["120"] != 0
    return rec


def step4_align_tangent_at_q(C3: TernaryCubic) -> StepRecord:
    """Make X = 0 the tangent at (0, 1, 0)."""
    hx, hz = C3["120"], C3["021"]
    if hx == 0 or C3["030"] != 0:
        raise ValueError("cubic is not in the shape produced by step 3")
    hx, hz = (Fraction(c) for c in primitive((hx, hz), canonical_sign=False))
    F = ((hx, 0, hz), (0, 1, 0), (0, 0, 1))
    G = ((1, 0, -hz), (0, hx, 0), (0, 0, hx))
    rec = _linear_step("step4", 4, "linear", C3, E1, F, G, 1 / hx, {"h": (hx, hz)})
    assert set(rec.cubic_after.nonzero()) <= SHAPE_38
    return rec


# coefficient relabelling of the quadratic step: new label <- old label
_STEP5_RELABEL = {"300": "201", "201": "102", "111": "111", "102": "003", "021": "120", "012": "012"}


def step5_quadratic(C4: TernaryCubic) -> StepRecord:
    """Apply (X, Y, Z) -> (XZ, XY, Z^2), which removes the XY^2 term."""
    if not set(C4.nonzero()) <= SHAPE_38:
        raise ValueError("cubic is not in the six-monomial shape required by step 5")
    C5 = TernaryCubic.from_dict({new: C4[old] for new, old in _STEP5_RELABEL.items()})
    if C5["021"] == 0:
        raise SingularCurve("Y^2 Z coefficient vanishes after the quadratic step", step="step5")
    return StepRecord("step5", 5, "quadratic", C4, C5, E1, rho_at(C4, E1))


def rho_at(C4: TernaryCubic, P) -> ProjectivePoint:
    """Quadratic map C4 -> C5 with its patches at (1,0,0) and (0,1,0)."""
    X, Y, Z = (to_rational(c) for c in P)
    g = C4
    candidates = (
        lambda: (X * Z, X * Y, Z * Z),
        lambda: _mu_form(g, X, Y, Z),
        lambda: _lambda_form(g, X, Y, Z),
    )
    for rep in candidates:
        v = rep()
        if any(v):
            return normalize_point(v)
    raise MapUndefined(f"rho undefined at {P}", step="step5")


def _mu_form(g, X, Y, Z):
    mu = g["120"] * Y + g["111"] * Z
    return (mu * X, -(g["201"] * X * X + g["102"] * X * Z + g["012"] * Y * Z + g["003"] * Z * Z), mu * Z)


def _lambda_form(g, X, Y, Z):
    lam = g["102"] * X + g["012"] * Y + g["003"] * Z
    return (lam * Z, lam * Y, -(g["201"] * X * Z + g["120"] * Y * Y + g["111"] * Y * Z))


def psi5_at(C5: TernaryCubic, P) -> ProjectivePoint:
    """Inverse quadratic map C5 -> C4 with its patches at (0,1,0) and (0,0,1)."""
    X, Y, Z = (to_rational(c) for c in P)
    g = C5
    candidates = (
        lambda: (X * X, Y * Z, X * Z),
        lambda: _sigma_form(g, X, Y, Z),
        lambda: _tau_form(g, X, Y, Z),
    )
    for rep in candidates:
        v = rep()
        if any(v):
            return normalize_point(v)
    raise MapUndefined(f"inverse quadratic map undefined at {P}", step="step5")


def _sigma_form(g, X, Y, Z):
    sigma = g["300"] * X + g["201"] * Z
    return (-(g["111"] * X * Y + g["102"] * X * Z + g["021"] * Y * Y + g["012"] * Y * Z),
            sigma * Y, sigma * X)


def _tau_form(g, X, Y, Z):
    tau = g["111"] * X + g["021"] * Y + g["012"] * Z
    return (tau * X, -(g["300"] * X * X + g["201"] * X * Z + g["102"] * Z * Z), tau * Z)


def step6_complete_square(C5: TernaryCubic) -> StepRecord:
    """Complete the square in Y; the result has Y^2 Z as its only Y-term."""
    if not set(C5.nonzero()) <= SHAPE_GENERAL_W:
        raise ValueError("cubic is not a general Weierstrass cubic")
    g021, g111, g012 = C5["021"], C5["111"], C5["012"]
    if g021 == 0:
        raise SingularCurve("Y^2 Z coefficient vanishes", step="step6")
    F = ((1, 0, 0), (g111, 2 * g021, g012), (0, 0, 1))
    G = ((2 * g021, 0, 0), (-g111, 1, -g012), (0, 0, 2 * g021))
    rec = _linear_step("step6", 6, "linear", C5, E2, F, G, "unit_y2z")
    assert set(rec.cubic_after.nonzero()) <= SHAPE_SPECIAL_W and rec.cubic_after["021"] == 1
    return rec


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def maximal_scaling_factor(g201: int, g300: int, g102: int, g003: int) -> int:
    """Largest f >= 1 with f^2 | g201, f^4 | g300 g102 and f^6 | g300^2 g003.

    A zero coefficient imposes no condition.
    """
    conds = [(g201, 2), (g300 * g102, 4), (g300 * g300 * g003, 6)]
    conds = [(abs(n), e) for n, e in conds if n]
    if not conds:
        return 1
    g = 0
    for n, _ in conds:
        g = gcd(g, n)
    f = 1
    for p in map(int, factorint(g)):
        f *= p ** min(_valuation(n, p) // e for n, e in conds)
    return f


def step7_normalize(C6: TernaryCubic) -> tuple[StepRecord, WeierstrassCurve]:
    """Scale X, Y, Z so that X^3 has coefficient -1 and the rest is reduced."""
    if not set(C6.nonzero()) <= SHAPE_SPECIAL_W or C6["021"] != 1:
        raise ValueError("cubic is not in the shape produced by step 6")
    if any(c.denominator != 1 for c in C6.gamma):
        raise ValueError("step 7 expects integer coefficients")
    g300, g201, g102, g003 = (int(C6[k]) for k in ("300", "201", "102", "003"))
    delta = -g300
    if delta == 0:
        raise DegenerateCubic("X^3 coefficient vanishes", step="step7")
    f = maximal_scaling_factor(g201, g300, g102, g003)
    F = ((delta * f, 0, 0), (0, delta, 0), (0, 0, f ** 3))
    G = ((f ** 2, 0, 0), (0, f ** 3, 0), (0, 0, delta))
    rec = _linear_step("step7", 7, "linear", C6, E2, F, G, "unit_y2z", {"delta": delta, "phi": f})
    C7 = rec.cubic_after
    assert C7["300"] == -1 and C7["021"] == 1
    W = WeierstrassCurve.from_cubic(C7)
    if W.discriminant() == 0:
        raise SingularCurve("the Weierstrass cubic has a repeated root", step="step7")
    return rec, W


# ---------------------------------------------------------------------------
# Weierstrass curves


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a2: Fraction
    a4: Fraction
    a6: Fraction
    a1: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def from_cubic(cls, C: TernaryCubic) -> WeierstrassCurve:
        """Read off a cubic with only Weierstrass monomials, scaled to Y^2 Z = 1."""
        if not set(C.nonzero()) <= SHAPE_GENERAL_W or C["021"] == 0 or C["300"] == 0:
            raise ValueError("not a Weierstrass cubic")
        C = C.scaled(1 / C["021"])
        c = -C["300"]
        if c != 1:
            raise ValueError("X^3 and Y^2 Z coefficients must be opposite")
        return cls(a2=-C["201"], a4=-C["102"], a6=-C["003"], a1=C["111"], a3=C["012"])

    def to_cubic(self) -> TernaryCubic:
        return TernaryCubic.from_dict({"300": -1, "201": -self.a2, "102": -self.a4, "003": -self.a6,
                                       "021": 1, "111": self.a1, "012": self.a3})

    @property
    def is_short(self) -> bool:
        return self.a1 == 0 and self.a3 == 0

    def cubic_discriminant(self) -> Fraction:
        """Discriminant of x^3 + a2 x^2 + a4 x + a6."""
        a2, a4, a6 = self.a2, self.a4, self.a6
        return -4 * a2 ** 3 * a6 + a2 ** 2 * a4 ** 2 + 18 * a2 * a4 * a6 - 4 * a4 ** 3 - 27 * a6 ** 2

    def discriminant(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, P) -> bool:
        return self.to_cubic()(P) == 0

    def rational_roots(self) -> list[Fraction] | None:
        """The three roots of the x-cubic when it splits over Q, else None."""
        if not self.is_short:
            return None
        return split_monic_cubic(self.a2, self.a4, self.a6)

    def equation(self) -> str:
        lhs = "y^2" + _term(self.a1, "xy") + _term(self.a3, "y")
        rhs = "x^3" + _term(self.a2, "x^2") + _term(self.a4, "x") + _term(self.a6, "")
        return f"{lhs} = {rhs}"

    def factored(self) -> str | None:
        """``y^2 = x(x-3)(x-1)``-style text when the cubic splits over Q."""
        roots = self.rational_roots()
        if roots is None:
            return None
        zero = [r for r in roots if r == 0]
        rest = sorted((r for r in roots if r != 0), reverse=True)
        parts = ["x"] * len(zero) + [f"(x{_term(-r, '').replace(' ', '')})" for r in rest]
        return "y^2 = " + "".join(parts)


def _term(c: Fraction, mono: str) -> str:
    if c == 0:
        return ""
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if mono and mag == 1:
        body = mono
    else:
        body = (str(mag.numerator) if mag.denominator == 1 else f"({mag.numerator}/{mag.denominator})") + mono
    return f" {sign} {body}"


def _ev(coeffs, x):
    a2, a4, a6 = coeffs
    return ((x + a2) * x + a4) * x + a6


def split_monic_cubic(a2, a4, a6) -> list[Fraction] | None:
    """Rational roots of x^3 + a2 x^2 + a4 x + a6 if all three are rational.

    Coefficients are first scaled to a monic integer polynomial (x -> x/d),
    whose rational roots are integers; those are located by exact integer
    bisection on the monotone pieces of the cubic.
    """
    a2, a4, a6 = (to_rational(c) for c in (a2, a4, a6))
    d = 1
    for c, k in ((a2, 1), (a4, 2), (a6, 3)):
        while (c * d ** k).denominator != 1:
            d *= (c * d ** k).denominator
    b = (int(a2 * d), int(a4 * d * d), int(a6 * d ** 3))
    roots = [Fraction(r, d) for r in _integer_roots(b)]
    return sorted(roots, reverse=True) if len(roots) == 3 else None


def _integer_roots(b: tuple[int, int, int]) -> list[int]:
    """Integer roots with multiplicity of the monic integer cubic with coefficients b."""
    roots = []
    coeffs = list(b)
    # roots of the derivative 3x^2 + 2 b2 x + b4 split the line into monotone pieces
    bound = 1 + max(abs(c) for c in coeffs)
    disc = 4 * coeffs[0] ** 2 - 12 * coeffs[1]
    cuts = [-bound, bound]
    if disc >= 0:
        from math import isqrt
        s = isqrt(disc)
        for num in (-2 * coeffs[0] - s, -2 * coeffs[0] + s):
            c = num // 6
            cuts.extend([c - 1, c, c + 1, c + 2])
    cuts = sorted(set(x for x in cuts if -bound <= x <= bound))
    found = set()
    for x in cuts:
        if _ev(coeffs, x) == 0:
            found.add(x)
    for lo, hi in zip(cuts, cuts[1:]):
        flo, fhi = _ev(coeffs, lo), _ev(coeffs, hi)
        if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            fm = _ev(coeffs, mid)
            if fm == 0:
                found.add(mid)
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
    # deflate to recover multiplicities
    poly = [1] + coeffs
    for r in sorted(found):
        while True:
            q, rem = _synthetic_division(poly, r)
            if rem != 0:
                break
            roots.append(r)
            poly = q
            if len(poly) == 1:
                break
    return roots


def _synthetic_division(poly: list[int], r: int) -> tuple[list[int], int]:
    out = [poly[0]]
    for c in poly[1:]:
        out.append(c + out[-1] * r)
    return out[:-1], out[-1]


def step8_shift_roots(W: WeierstrassCurve, C7: TernaryCubic | None = None) -> tuple[StepRecord | None, WeierstrassCurve]:
    """Bring a split curve to y^2 = x(x+A)(x+B).

    The largest root is moved to 0, then a common factor 4 of the two other
    roots is removed (x -> 4x, y -> 8y) when present.  Curves whose x-cubic
    does not split, or which already have the root 0, come back unchanged
    with a None record.
    """
    roots = W.rational_roots()
    if roots is None or W.a6 == 0:
        return None, W
    e1, e2, e3 = roots
    A, B = e1 - e2, e1 - e3
    u = 2 if all(isinstance(v, Fraction) and v.denominator == 1 and int(v) % 4 == 0 for v in (A, B)) else 1
    C7 = C7 if C7 is not None else W.to_cubic()
    F = ((u, 0, -e1 * u), (0, 1, 0), (0, 0, u ** 3))
    G = ((u * u, 0, e1), (0, u ** 3, 0), (0, 0, 1))
    rec = _linear_step("step8", 8, "linear", C7, E2, F, G, "unit_y2z",
                       {"shift": e1, "scale": u})
    W8 = WeierstrassCurve.from_cubic(rec.cubic_after)
    assert W8.a6 == 0
    return rec, W8


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicReduction:
    """Result of :func:`run_pipeline`: every step plus the final curve."""

    cubic: TernaryCubic
    point: ProjectivePoint
    steps: tuple[StepRecord, ...]
    weierstrass: WeierstrassCurve  # after step 7
    final: WeierstrassCurve  # after step 8 when it applied
    split: bool

    @property
    def final_cubic(self) -> TernaryCubic:
        return self.steps[-1].cubic_after

    @property
    def distinguished_final(self) -> ProjectivePoint:
        return self.steps[-1].point_after

    def step(self, name: str) -> StepRecord:
        return next(s for s in self.steps if s.name == name)

    def table(self, r: int) -> TernaryCubic:
        """The cubic C_(r); steps skipped by a shortcut repeat the previous table."""
        if r == 0:
            return self.cubic
        best = self.cubic
        for s in self.steps:
            if s.index <= r:
                best = s.cubic_after
        return best

    def forward(self, P) -> ProjectivePoint:
        P = normalize_point(P)
        for s in self.steps:
            P = s.map_forward(P)
        return P

    def backward(self, P) -> ProjectivePoint:
        P = normalize_point(P)
        for s in reversed(self.steps):
            P = s.map_backward(P)
        return P


def run_pipeline(C0: TernaryCubic, p, shift_roots: bool = True) -> CubicReduction:
    """Steps 1-7, the inflection shortcut when it applies, then step 8."""
    p = normalize_point(p)
    steps = [step1_translate(C0, p)]
    steps.append(step2_align_tangent(steps[-1].cubic_after))
    if "inflection" in steps[-1].flags:
        steps.append(inflection_shortcut(steps[-1].cubic_after))
    else:
        steps.append(step3_move_second_intersection(steps[-1].cubic_after))
        steps.append(step4_align_tangent_at_q(steps[-1].cubic_after))
        steps.append(step5_quadratic(steps[-1].cubic_after))
    steps.append(step6_complete_square(steps[-1].cubic_after))
    rec7, W = step7_normalize(steps[-1].cubic_after)
    steps.append(rec7)
    final, split = W, W.rational_roots() is not None
    if shift_roots:
        rec8, final = step8_shift_roots(W, rec7.cubic_after)
        if rec8 is not None:
            steps.append(rec8)
    for s in steps:
        assert s.cubic_after(s.point_after) == 0, s.name
    assert steps[-1].point_after == E2
    return CubicReduction(C0, p, tuple(steps), W, final, split)
