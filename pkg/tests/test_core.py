from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import sympy_pullback
from quadric_weierstrass.core import (
    LABELS,
    LinearMap,
    Poly,
    ProjectivePoint,
    QuadricForm,
    TernaryCubic,
    normalize_point,
    primitive,
    projectively_equal,
    pullback_cubic,
    to_rational,
)
from quadric_weierstrass.errors import ZeroVector

small = st.integers(-6, 6)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def cubics(entries=rationals):
    return st.lists(entries, min_size=10, max_size=10).map(lambda g: TernaryCubic(tuple(g)))


def invertible3(entries=small):
    return (st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3)
            .map(lambda rows: tuple(map(tuple, rows)))
            .filter(lambda rows: _det3(rows) != 0)
            .map(LinearMap))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def test_to_rational_accepts_exact_inputs_only():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(-4) == -4
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_primitive_keeps_or_fixes_sign():
    assert primitive([Fraction(-2, 3), Fraction(4, 3), 0]) == (1, -2, 0)
    assert primitive([Fraction(-2, 3), Fraction(4, 3), 0], canonical_sign=False) == (-1, 2, 0)
    with pytest.raises(ZeroVector):
        primitive([0, 0, 0])


def test_projective_point_requires_canonical_form():
    assert normalize_point((-2, 4, 6)) == ProjectivePoint((1, -2, -3))
    with pytest.raises(ValueError):
        ProjectivePoint((2, 4, 6))
    assert projectively_equal((1, 2, 3), (Fraction(-1, 2), -1, Fraction(-3, 2)))


def test_monomial_order_is_descending_lex():
    assert LABELS == ("300", "210", "201", "120", "111", "102", "030", "021", "012", "003")


@given(cubics(), st.lists(rationals, min_size=3, max_size=3))
def test_cubic_evaluation_matches_polynomial(C, P):
    assert C(P) == C.as_poly()(*P)


@settings(max_examples=40, deadline=None)
@given(cubics(st.integers(-9, 9)), invertible3())
def test_pullback_matches_sympy_expansion(C, G):
    assert pullback_cubic(G, C) == sympy_pullback(C, G)


@given(cubics(), invertible3(), st.lists(small, min_size=3, max_size=3))
def test_pullback_evaluates_through_the_map(C, G, P):
    assert pullback_cubic(G, C)(P) == C(G.apply_raw(P))


@given(invertible3(), invertible3())
def test_linear_map_inverse_and_composition(F, G):
    I3 = LinearMap.identity(3)
    assert F @ F.inverse() == I3
    assert (F @ G).inverse() == G.inverse() @ F.inverse()


def test_permutation_map_picks_inputs():
    S = LinearMap.permutation((2, 0, 1))
    assert S.apply_raw((5, 6, 7)) == (7, 5, 6)


def test_quadric_form_rejects_asymmetric_and_transforms():
    with pytest.raises(ValueError):
        QuadricForm(((1, 2, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    A = QuadricForm.diag(1, 2, 3, 4)
    T = LinearMap(((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    P = (1, 2, 3, 4)
    assert A.transformed(T)(P) == A(T.apply_raw(P))


def test_quadric_from_poly_round_trip():
    x = [Poly.var(4, i) for i in range(4)]
    q = x[0] * x[1] * 3 - x[2] ** 2 + x[3] * x[0]
    assert QuadricForm.from_poly(q).as_poly() == q


def test_cubic_reduction_keeps_sign():
    C = TernaryCubic.from_dict({"210": -4, "003": 6})
    assert C.reduced() == TernaryCubic.from_dict({"210": -2, "003": 3})
    assert C.normalized() == TernaryCubic.from_dict({"210": 2, "003": -3})
    assert C.proportionality(C.normalized()) == Fraction(-1, 2)
