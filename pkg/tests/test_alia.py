from fractions import Fraction

import pytest

from mfal import alia
from mfal.alia import JPoly, OddGrading
from mfal.qseries import QSeries


# ----------------------------------------------------------------------
# golden cocycle graphs: one edge set per cocycle per orbit, transcribed
# from the rank-2 root diagrams.  Vertices are roots in simple-root
# coordinates; an edge means the (symmetric) cocycle takes value 1.
# ----------------------------------------------------------------------

def _edges(pairs):
    return {frozenset(p) for p in pairs}


A2_PRINCIPAL_W4 = _edges([
    (((1, 1)), ((-1, -1))),
    (((0, 1)), ((0, -1))),
    (((1, 0)), ((-1, 0))),
    (((1, 1)), ((-1, 0))),
    (((-1, 0)), ((0, -1))),
    (((1, 1)), ((0, -1))),
])
A2_PRINCIPAL_W6 = _edges([
    (((1, 0)), ((-1, 0))),
    (((0, 1)), ((0, -1))),
    (((-1, 0)), ((0, -1))),
    (((1, 0)), ((0, 1))),
])

_B2_SUB_BOTH = [
    ((0, 1), (0, -1)),
    ((1, 1), (-1, -1)),
    ((2, 1), (-2, -1)),
    ((0, 1), (-1, -1)),
    ((1, 1), (0, -1)),
    ((1, 1), (-2, -1)),
    ((2, 1), (-1, -1)),
]
B2_SUBREGULAR_W4 = _edges(_B2_SUB_BOTH)
B2_SUBREGULAR_W6 = _edges(_B2_SUB_BOTH)

B2_PRINCIPAL_W4 = _edges([
    ((1, 0), (-1, 0)),
    ((0, 1), (0, -1)),
    ((1, 1), (-1, -1)),
    ((1, 0), (1, 1)),
    ((-1, 0), (1, 1)),
    ((-1, 0), (-1, -1)),
    ((1, 1), (0, -1)),
    ((-1, 0), (0, -1)),
])
B2_PRINCIPAL_W6 = _edges([
    ((1, 0), (-1, 0)),
    ((0, 1), (0, -1)),
    ((2, 1), (-2, -1)),
    ((-1, 0), (0, -1)),
    ((0, 1), (1, 0)),
    ((2, 1), (-1, 0)),
    ((1, 0), (-2, -1)),
])

G2_SUBREGULAR_W4 = _edges([
    ((1, 1), (-1, -2)),
    ((1, 2), (-1, -1)),
    ((-1, -1), (-1, -2)),
    ((2, 3), (-1, -3)),
    ((2, 3), (-1, 0)),
    ((-1, 0), (-1, -3)),
    ((1, 0), (-1, -1)),
    ((2, 3), (-1, -1)),
    ((2, 3), (-1, -2)),
    ((1, 3), (-1, -2)),
    ((-1, 0), (1, 1)),
    ((-1, -3), (1, 2)),
    ((1, 0), (-1, 0)),
    ((1, 1), (-1, -1)),
    ((1, 2), (-1, -2)),
    ((1, 3), (-1, -3)),
    ((2, 3), (-2, -3)),
])
G2_SUBREGULAR_W6 = _edges([
    ((1, 1), (-1, -2)),
    ((1, 2), (-1, -1)),
    ((1, 2), (1, 1)),
    ((-1, -1), (-1, -2)),
    ((1, 0), (1, 3)),
    ((-1, 0), (-1, -3)),
    ((1, 3), (-1, -2)),
    ((1, 2), (-1, -3)),
    ((1, 1), (-1, 0)),
    ((1, 0), (-1, -1)),
    ((1, 0), (-1, 0)),
    ((1, 1), (-1, -1)),
    ((1, 2), (-1, -2)),
    ((1, 3), (-1, -3)),
])

G2_PRINCIPAL_W4 = _edges([
    ((0, 1), (1, 1)),
    ((-1, -1), (0, -1)),
    ((0, -1), (1, 1)),
    ((-1, 0), (2, 3)),
    ((-1, 0), (-1, -3)),
    ((-1, -3), (2, 3)),
    ((1, 3), (0, -1)),
    ((-1, 0), (0, -1)),
    ((-1, 0), (1, 1)),
    ((-2, -3), (1, 1)),
    ((-1, -3), (0, 1)),
    ((2, 3), (-1, -1)),
    ((1, 3), (-1, -3)),
    ((0, 1), (0, -1)),
    ((-1, -1), (1, 1)),
    ((-2, -3), (2, 3)),
    ((-1, 0), (1, 0)),
])
G2_PRINCIPAL_W6 = _edges([
    ((1, 2), (0, -1)),
    ((0, 1), (-1, -2)),
    ((0, 1), (1, 2)),
    ((-1, -2), (0, -1)),
    ((2, 3), (-1, 0)),
    ((-2, -3), (1, 0)),
    ((-1, 0), (0, -1)),
    ((0, 1), (1, 0)),
    ((1, 2), (-2, -3)),
    ((2, 3), (-1, -2)),
    ((2, 3), (-2, -3)),
    ((1, 2), (-1, -2)),
    ((0, 1), (0, -1)),
    ((1, 0), (-1, 0)),
])

A1_PRINCIPAL_W4 = _edges([((1,), (-1,))])
A1_PRINCIPAL_W6 = _edges([((1,), (-1,))])

GOLDEN = {
    ("A1", "principal"): (A1_PRINCIPAL_W4, A1_PRINCIPAL_W6),
    ("A2", "principal"): (A2_PRINCIPAL_W4, A2_PRINCIPAL_W6),
    ("B2", "subregular"): (B2_SUBREGULAR_W4, B2_SUBREGULAR_W6),
    ("B2", "principal"): (B2_PRINCIPAL_W4, B2_PRINCIPAL_W6),
    ("G2", "subregular"): (G2_SUBREGULAR_W4, G2_SUBREGULAR_W6),
    ("G2", "principal"): (G2_PRINCIPAL_W4, G2_PRINCIPAL_W6),
}


@pytest.mark.parametrize("key", sorted(GOLDEN))
def test_cocycle_tables_match_golden_graphs(key):
    w4_gold, w6_gold = GOLDEN[key]
    cp = alia.alia_table(*key).cocycles
    seen_w4 = {frozenset(p) for p, v in cp.w4.items() if v == 1}
    seen_w6 = {frozenset(p) for p, v in cp.w6.items() if v == 1}
    assert seen_w4 == w4_gold
    assert seen_w6 == w6_gold


def test_residue_exponents_table():
    assert [alia.residue_exponents(k) for k in (-6, -4, -2, 0, 2, 4, 6)] == [
        (0, 1), (2, 0), (1, 1), (0, 0), (2, 1), (1, 0), (0, 1),
    ]
    with pytest.raises(OddGrading):
        alia.residue_exponents(3)


def test_a2_worked_cocycle_values():
    cp = alia.alia_table("A2", "principal").cocycles
    assert (cp.w4[((1, 0), (0, 1))], cp.w6[((1, 0), (0, 1))]) == (0, 1)
    assert (cp.w4[((1, 0), (-1, 0))], cp.w6[((1, 0), (-1, 0))]) == (1, 1)


def test_zero_grade_pairs_vanish():
    cp = alia.alia_table("B2", "subregular").cocycles
    # alpha1 has grade 0: every pair of grade-zero roots maps to (0, 0)
    assert cp.w4[((1, 0), (-1, 0))] == 0
    assert cp.w6[((1, 0), (-1, 0))] == 0


def test_cocycles_symmetric_and_cocycle_condition():
    for key in GOLDEN:
        cp = alia.alia_table(*key).cocycles
        assert cp.is_symmetric()
        assert cp.cocycle_condition_holds()


def test_tables_jacobi_over_qj():
    for key in GOLDEN:
        assert alia.alia_table(*key).jacobi_ok()


def test_a1_table_is_barrel():
    t = alia.alia_table("A1", "principal")
    idx_h = t.index[("H", 0)]
    idx_e = t.index[("A", (1,))]
    idx_f = t.index[("A", (-1,))]
    one = JPoly.const(1)
    assert t.bracket({idx_h: one}, {idx_e: one}) == {idx_e: JPoly.const(2)}
    assert t.bracket({idx_h: one}, {idx_f: one}) == {idx_f: JPoly.const(-2)}
    assert t.bracket({idx_e: one}, {idx_f: one}) == {idx_h: JPoly((0, -1728, 1))}


def test_contraction_at_orbifold_points():
    t = alia.alia_table("A1", "principal")
    for j_val in (0, 1728):
        spec = t.specialize(j_val)
        ef = spec.bracket_vectors(
            {t.index[("A", (1,))]: Fraction(1)}, {t.index[("A", (-1,))]: Fraction(1)}
        )
        assert ef == {}
        assert spec.is_solvable(within_steps=3)
        assert spec.killing_determinant() == 0


def test_generic_fiber_nondegenerate():
    t = alia.alia_table("A1", "principal")
    assert t.specialize(5).killing_determinant() != 0


def test_scalar_oracle_all_orbits():
    for key in GOLDEN:
        assert alia.scalar_oracle(*key, order=32)


def test_oracle_f2_fm2_is_j_j_1728():
    # F_2 F_{-2} = Delta^-2 E4^3 E6^2 = j (j - 1728)
    from mfal import modforms

    f2 = modforms.duke_jenkins(2, 40)[3]
    fm2 = modforms.duke_jenkins(-2, 40)[3]
    j = modforms.j_invariant(44).series
    assert (f2 * fm2).agrees(j * (j - 1728))


def test_oracle_discriminates_wrong_exponents():
    # the series route must reject cocycle exponents that are off by one
    from mfal import modforms

    f2 = modforms.duke_jenkins(2, 40)[3]
    fm2 = modforms.duke_jenkins(-2, 40)[3]
    j = modforms.j_invariant(44).series
    assert not (f2 * fm2).agrees(j)                       # missing (j-1728)
    assert not (f2 * fm2).agrees(j - 1728)                # missing j
    assert not (f2 * fm2).agrees(j * j * (j - 1728))      # extra j


def test_jacobi_detects_corrupted_table():
    t = alia.alia_table("A2", "principal")
    idx_e = t.index[("A", (1, 0))]
    idx_f = t.index[("A", (-1, 0))]
    key = (min(idx_e, idx_f), max(idx_e, idx_f))
    assert t.jacobi_ok()
    original = t._table[key]
    try:
        t._table[key] = {k: p * 7 for k, p in original.items()}
        assert not t.jacobi_ok()
    finally:
        t._table[key] = original


def test_sl2_bundle_certificates():
    b = alia.sl2_explicit()
    assert b.triple_relations_ok()
    assert b.conjugation_ok()
    assert b.ad_a0_matrix_ok()
    assert b.t_conjugation_ok()
    assert b.h_entry_ok()


def test_f_squares_to_zero():
    b = alia.sl2_explicit()
    assert (b.f * b.f).is_zero()


def test_h_and_e_traceless():
    b = alia.sl2_explicit()
    assert b.h.trace().is_zero()
    assert b.e.trace().is_zero()
    assert b.f.trace().is_zero()


def test_h_and_e_exact_entries():
    # every entry pinned as a polynomial literal; the constants i*pi/3,
    # pi^2/36 etc. are rational multiples of powers of s = 1/(2 pi i)
    from mfal.quasimodular import QuasiPoly

    def mono(exps, c):
        return QuasiPoly.monomial(exps, c)

    b = alia.sl2_explicit()
    tau_p_over_6s = mono((1, 1, 0, 0, -1), Fraction(1, 6))
    assert b.h[0, 0] == tau_p_over_6s + 1
    assert b.h[0, 1] == mono((2, 1, 0, 0, -1), Fraction(-1, 6)) + mono((1, 0, 0, 0, 0), -2)
    assert b.h[1, 0] == mono((0, 1, 0, 0, -1), Fraction(1, 6))
    assert b.h[1, 1] == -(tau_p_over_6s + 1)
    assert b.e[0, 0] == mono((1, 2, 0, 0, -2), Fraction(-1, 144)) + mono((0, 1, 0, 0, -1), Fraction(-1, 12))
    assert b.e[0, 1] == (
        mono((2, 2, 0, 0, -2), Fraction(1, 144))
        + mono((1, 1, 0, 0, -1), Fraction(1, 6))
        + QuasiPoly.const(1)
    )
    assert b.e[1, 0] == mono((0, 2, 0, 0, -2), Fraction(-1, 144))
    assert b.e[1, 1] == mono((1, 2, 0, 0, -2), Fraction(1, 144)) + mono((0, 1, 0, 0, -1), Fraction(1, 12))


def test_levi_dimensions():
    assert alia.levi_dimensions("A1", "principal") == (1, 0)
    radical, levi = alia.levi_dimensions("B2", "subregular")
    assert levi >= 3
    # trivial grading: the whole semisimple algebra is the Levi factor
    assert alia.levi_dimensions_for_labels("A2", (0, 0)) == (0, 8)


def test_weight_zero_iso_report():
    report = alia.weight_zero_iso_check(24)
    assert report["Gamma(2)"]["leading_exponent"] == 0
    assert report["Gamma(3)"]["leading_exponent"] == Fraction(1, 3)
    assert report["Gamma(4)"]["leading_exponent"] == Fraction(1, 2)
    assert report["Gamma(5)"]["leading_exponent"] == 1
    for info in report.values():
        assert info["unit_normalizable"]
        assert "lambda" in report["Gamma(2)"]["coefficient_ring"]
        assert "mu" in report["Gamma(4)"]["coefficient_ring"]


def test_jpoly_arithmetic():
    p = JPoly((0, 1))           # j
    q = JPoly((-1728, 1))       # j - 1728
    assert (p * q) == JPoly((0, -1728, 1))
    assert JPoly.j_power_form(1, 1) == p * q
    assert p(Fraction(3)) == 3
    series = JPoly.j_power_form(1, 0).as_series(QSeries.from_terms([(-1, 1), (0, 744)], trunc=20))
    assert series.coefficient(-1) == 1
