import random
from fractions import Fraction

import pytest

from mfal import modforms
from mfal.quasimodular import (
    NotInvertible,
    NumericContext,
    QuasiMatrix,
    QuasiPoly,
)

TAU = QuasiPoly.var("tau")
P = QuasiPoly.var("P")
Q = QuasiPoly.var("Q")
R = QuasiPoly.var("R")
S = QuasiPoly.var("s")


def test_ramanujan_images():
    assert QuasiPoly.const(7).d_tau().is_zero()
    assert TAU.d_tau() == S
    assert P.d_tau() == (P * P - Q).scale(Fraction(1, 12))
    assert Q.d_tau() == (P * Q - R).scale(Fraction(1, 3))
    assert R.d_tau() == (P * R - Q * Q).scale(Fraction(1, 2))
    assert S.d_tau().is_zero()


def test_leibniz_on_tau_square():
    assert (TAU * TAU).d_tau() == (S * TAU).scale(2)


def test_d_tau_leibniz_sampled():
    rng = random.Random(21)
    gens = [TAU, P, Q, R, S]
    for _ in range(10):
        a = gens[rng.randrange(5)] * gens[rng.randrange(5)] + QuasiPoly.const(rng.randint(-3, 3))
        b = gens[rng.randrange(5)] * gens[rng.randrange(5)] - gens[rng.randrange(5)]
        assert ((a * b).d_tau() - (a.d_tau() * b + a * b.d_tau())).is_zero()


def test_serre_D():
    assert QuasiPoly.const(3).serre_D(0).is_zero()
    # D_1 P = (P^2 - Q)/12 - P^2/12 = -Q/12
    assert P.serre_D(1) == Q.scale(Fraction(-1, 12))


def test_shift_tau():
    assert (TAU + P).shift_tau() == TAU + P + 1
    assert (TAU * TAU).shift_tau() == TAU * TAU + TAU.scale(2) + 1
    assert P.shift_tau() == P


def test_s_inverse_cancels():
    s_inv = QuasiPoly.monomial((0, 0, 0, 0, -1))
    assert (TAU + P) * s_inv * S == TAU + P


def test_substitute_series_matches_q_derive():
    for a in (P, Q, R, P * Q + R.scale(3)):
        lhs = a.d_tau().to_qseries(32)
        rhs = a.to_qseries(32).q_derive()
        assert lhs.agrees(rhs)


def test_substitute_series_rejects_s():
    with pytest.raises(ValueError):
        S.to_qseries(16)
    with pytest.raises(ValueError):
        TAU.to_qseries(16)


def test_substitute_numeric():
    ctx = NumericContext(1j, order=48)
    assert QuasiPoly.const(1).substitute_numeric(ctx) == 1
    val = P.substitute_numeric(ctx)
    e2_direct = modforms.eisenstein(2, 48).series.eval_numeric(1j)
    assert abs(val - e2_direct) < 1e-14


def test_matrix_inverse_identity():
    m = QuasiMatrix.identity(3)
    assert (m.inverse() - m).is_zero()


def test_matrix_inverse_unitriangular():
    m = QuasiMatrix([[QuasiPoly.const(1), TAU], [QuasiPoly(), QuasiPoly.const(1)]])
    inv = m.inverse()
    assert (m * inv - QuasiMatrix.identity(2)).is_zero()


def test_matrix_not_invertible():
    m = QuasiMatrix([[P, QuasiPoly()], [QuasiPoly(), QuasiPoly.const(1)]])
    with pytest.raises(NotInvertible):
        m.inverse()


def test_det_phi1_form():
    # [[tau*y + 1, tau], [y, 1]] with y = P/(12 s) has determinant 1
    y = QuasiPoly.monomial((0, 1, 0, 0, -1), Fraction(1, 12))
    m = QuasiMatrix([[TAU * y + 1, TAU], [y, QuasiPoly.const(1)]])
    assert m.det() == QuasiPoly.const(1)


def test_json_round_trip():
    a = TAU * P.scale(Fraction(3, 2)) - Q + QuasiPoly.monomial((0, 0, 0, 0, -2), 5)
    assert QuasiPoly.from_json(a.to_json()) == a


def test_pretty_uses_paper_names():
    y = QuasiPoly.monomial((1, 1, 0, 0, -1), Fraction(1, 12))
    assert "E2" in y.pretty() and "tau" in y.pretty()
