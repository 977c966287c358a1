import random

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import X as SX, Y as SY, Z as SZ, from_sympy, intersection_points, klm_trace, random_quadric_pair, worked_example
from quadric_weierstrass.core import QuadricForm, TernaryCubic, normalize_point
from quadric_weierstrass.errors import DegenerateIntersection, PipelineError, PointNotOnIntersection
from quadric_weierstrass.families import EulerInstance, KlmInstance, euler_quadrics, klm_quadrics
from quadric_weierstrass.point_transport import run_full
from quadric_weierstrass.quadric_to_cubic import BASE, build_cubic, phi, psi, reduce_quadrics, translate_base_point


def test_worked_example_cubic_and_base_image():
    stage = reduce_quadrics(*worked_example())
    assert stage.cubic.gamma == (-2, 3, 6, 4, -16, 4, -2, -2, 12, -8)
    assert stage.z == normalize_point((2, 2, 1))
    assert phi(stage.pencil, BASE) == normalize_point((2, 2, 1))


def test_cubic_is_the_eliminant_computed_by_sympy():
    """Oracle: eliminate Y3 from q1 + l1 Y3 = q2 + l2 Y3 = 0 symbolically."""
    A, B, x = worked_example()
    T, pencil = translate_base_point(A, B, x)
    Tinv = T.inverse()
    Y3 = sp.Symbol("Y3")
    ys = [SX, SY, SZ, Y3]
    At = sp.Matrix([[sp.Rational(str(c)) for c in row] for row in A.transformed(Tinv).matrix])
    Bt = sp.Matrix([[sp.Rational(str(c)) for c in row] for row in B.transformed(Tinv).matrix])
    v = sp.Matrix(ys)
    f1, f2 = sp.expand((v.T * At * v)[0]), sp.expand((v.T * Bt * v)[0])
    q1, l1 = f1.coeff(Y3, 0), f1.coeff(Y3, 1)
    q2, l2 = f2.coeff(Y3, 0), f2.coeff(Y3, 1)
    assert from_sympy(q2 * l1 - q1 * l2).reduced() == build_cubic(pencil)


@pytest.mark.parametrize("M,N", [(3, 2), (5, -1), (-4, 7)])
def test_euler_initial_cubic(M, N):
    stage = reduce_quadrics(*euler_quadrics(EulerInstance(M, N)))
    expected = TernaryCubic.from_dict({"210": N - M, "201": -N, "021": -1, "012": 1})
    assert stage.cubic.is_proportional(expected)
    assert stage.z == normalize_point((1, 0, 0))


@pytest.mark.parametrize("k,l,m", [(2, 3, 5), (1, 1, 1), (4, 1, 9)])
def test_klm_initial_cubic(k, l, m):  # noqa: E741
    stage = reduce_quadrics(*klm_quadrics(KlmInstance(k, l, m)))
    s = k + l + m
    expected = TernaryCubic.from_dict({"210": -s, "201": m, "120": s, "102": -m, "021": -(l + m), "012": l + m})
    assert stage.cubic.is_proportional(expected)
    assert stage.z == normalize_point((l + m, m, s))


def test_klm_235_reference_values():
    stage = reduce_quadrics(*klm_quadrics(KlmInstance(2, 3, 5)))
    assert stage.cubic.nonzero() == {"210": -10, "201": 5, "120": 10, "102": -5, "021": -8, "012": 8}
    assert stage.z == normalize_point((8, 5, 10))


def test_identical_quadrics_are_degenerate():
    A, _, x = worked_example()
    with pytest.raises(DegenerateIntersection):
        reduce_quadrics(A, A, x)


def test_point_off_the_intersection_is_rejected():
    A, B, _ = worked_example()
    with pytest.raises(PointNotOnIntersection):
        reduce_quadrics(A, B, (1, 0, 0, 0))


def test_base_point_with_last_coordinate_zero_is_reindexed():
    # Euler quadrics with coordinates 2 and 3 cycled into place: base point (0, 1, 1, 1) -> (1, 1, 1, 0)
    A = QuadricForm.diag(-1, 1, 0, 3)
    B = QuadricForm.diag(0, 1, -1, 2)
    stage = reduce_quadrics(A, B, (1, 1, 1, 0))
    assert stage.transform.apply((1, 1, 1, 0)) == BASE
    assert stage.cubic(stage.z) == 0


@pytest.mark.parametrize("builder", ["worked", "klm"])
def test_phi_psi_round_trips_on_sampled_points(builder):
    trace = klm_trace(2, 3, 5) if builder == "klm" else run_full(*worked_example())
    stage = trace.quadrics
    rng = random.Random(7)
    pts = intersection_points(trace, 20, rng)
    assert len(pts) >= 20
    for P in pts:
        assert stage.A(P) == 0 and stage.B(P) == 0
        C_pt = stage.forward(P)
        assert stage.cubic(C_pt) == 0
        assert stage.backward(C_pt) == P
        assert stage.forward(stage.backward(C_pt)) == C_pt
    assert psi(stage.pencil, stage.z) == BASE


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_pencils_map_points_onto_the_cubic(seed):
    rng = random.Random(seed)
    A, B, x = random_quadric_pair(rng)
    try:
        stage = reduce_quadrics(A, B, x)
    except PipelineError:
        assume(False)
    assert stage.cubic(stage.z) == 0
    assert stage.forward(x) == stage.z
    assert stage.backward(stage.z) == normalize_point(x)
