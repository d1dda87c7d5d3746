import itertools
import random
from fractions import Fraction

import pytest

from mfal import liealg
from mfal.liealg import NotNilpotent, OddLabel
from mfal.quasimodular import QuasiMatrix, QuasiPoly


def test_root_counts():
    for t, count in (("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12)):
        rs = liealg.RootSystem(t)
        assert len(rs.roots) == count
        assert all(tuple(-x for x in r) in rs.root_set for r in rs.roots)


def test_b2_lengths():
    rs = liealg.RootSystem("B2")
    # alpha1 short, alpha2 long, per the label tables
    assert rs.inner(rs.simple[0], rs.simple[0]) == 2
    assert rs.inner(rs.simple[1], rs.simple[1]) == 4


def test_chevalley_magnitudes():
    a2 = liealg.chevalley("A2")
    assert {abs(v) for v in a2.eps.values()} == {1}
    g2 = liealg.chevalley("G2")
    assert {2, 3} <= {abs(v) for v in g2.eps.values()}


def test_chevalley_antisymmetry_conventions():
    for t in ("A2", "B2", "G2"):
        st = liealg.chevalley(t)
        for (a, b), v in st.eps.items():
            assert st.eps[(b, a)] == -v
            na = tuple(-x for x in a)
            nb = tuple(-x for x in b)
            assert st.eps[(na, nb)] == -v


def test_jacobi_all_types():
    for t in ("A1", "A2", "B2", "G2"):
        assert liealg.chevalley(t).jacobi_ok()


def test_jacobi_detects_wrong_sign():
    # build a fresh structure and flip one composite-root sign pair
    st = liealg.ChevalleyStructure(liealg.RootSystem("A2"))
    assert st.jacobi_ok()
    pair = ((1, 0), (0, 1))
    flipped = dict(st.eps)
    for p in (pair, (pair[1], pair[0])):
        flipped[p] = -flipped[p]
    # keep eps(-a,-b) = -eps(a,b) untouched: the flip is now inconsistent
    st.eps = flipped
    st._table = st._build_table()
    assert not st.jacobi_ok()


def test_killing_a1():
    a1 = liealg.chevalley("A1")
    h_idx = a1.index[("H", 0)]
    assert a1.killing()[h_idx][h_idx] == 8


def test_killing_associativity_sampled():
    rng = random.Random(31)
    for t in ("A2", "B2", "G2"):
        st = liealg.chevalley(t)
        for _ in range(6):
            x = {rng.randrange(st.dim): Fraction(rng.randint(1, 4))}
            y = {rng.randrange(st.dim): Fraction(rng.randint(-4, -1))}
            z = {rng.randrange(st.dim): Fraction(rng.randint(1, 3))}
            assert st.killing_form(st.bracket(x, y), z) == st.killing_form(
                x, st.bracket(y, z)
            )


def test_gradings_match_labels():
    gt = liealg.graded_triple("A2", "principal")
    assert gt.grading[(1, 0)] == 2 and gt.grading[(0, 1)] == 2
    assert gt.grading[(1, 1)] == 4
    gt = liealg.graded_triple("B2", "subregular")
    assert gt.grading[(1, 0)] == 0
    assert gt.grading[(0, 1)] == 2
    assert gt.grading[(1, 1)] == 2
    assert gt.grading[(2, 1)] == 2
    gt = liealg.graded_triple("G2", "subregular")
    assert gt.grading[(1, 0)] == 2 and gt.grading[(0, 1)] == 0
    assert gt.grading[(2, 3)] == 4


def test_grading_additive():
    for key in liealg.ORBIT_LABELS:
        gt = liealg.graded_triple(*key)
        rs = gt.structure.rs
        for a, b in itertools.product(rs.roots, repeat=2):
            s = tuple(x + y for x, y in zip(a, b))
            if s in rs.root_set:
                assert gt.grading[s] == gt.grading[a] + gt.grading[b]
        for r in rs.roots:
            assert gt.grading[tuple(-x for x in r)] == -gt.grading[r]


def test_triples_materialize():
    for key in liealg.ORBIT_LABELS:
        gt = liealg.graded_triple(*key)
        assert gt.triple_relations_hold()


def test_trivial_labels():
    gt = liealg.GradedTriple("A2", (0, 0))
    assert gt.h_vector == {}
    assert gt.triple_relations_hold()


def test_odd_label_rejected():
    with pytest.raises(OddLabel):
        liealg.GradedTriple("A2", (1, 1))


def test_a1_adjoint_grading():
    gt = liealg.graded_triple("A1", "principal")
    assert sorted(gt.grading.values()) == [-2, 2]


def test_orbit_string_addressing():
    gt = liealg.graded_triple_by_name("B2:subregular")
    assert gt.labels == (0, 2)
    with pytest.raises(ValueError):
        liealg.graded_triple_by_name("B2")
    with pytest.raises(ValueError):
        liealg.graded_triple_by_name("E8:principal")


def test_sym_rep_defining():
    rep = liealg.sym_rep(1)
    assert rep.h == [[1, 0], [0, -1]]
    assert rep.e == [[0, 1], [0, 0]]
    assert rep.f == [[0, 0], [1, 0]]


def test_sym_rep_relations():
    for n in range(9):
        rep = liealg.sym_rep(n)
        dim = rep.dim

        def mul(a, b):
            return [
                [sum(a[i][k] * b[k][j] for k in range(dim)) for j in range(dim)]
                for i in range(dim)
            ]

        ef = mul(rep.e, rep.f)
        fe = mul(rep.f, rep.e)
        assert [[ef[i][j] - fe[i][j] for j in range(dim)] for i in range(dim)] == rep.h
        he = mul(rep.h, rep.e)
        eh = mul(rep.e, rep.h)
        assert [[he[i][j] - eh[i][j] for j in range(dim)] for i in range(dim)] == [
            [2 * x for x in row] for row in rep.e
        ]


def test_sym_rep_nilpotency_index():
    rep = liealg.sym_rep(4)
    m = QuasiMatrix([[QuasiPoly.const(c) for c in row] for row in rep.e])
    p = m
    for _ in range(3):
        p = p * m
    assert not p.is_zero()  # E^4 != 0
    assert (p * m).is_zero()  # E^5 = 0


def test_exp_nilpotent_tau():
    rep = liealg.sym_rep(1)
    e_mat = QuasiMatrix([[QuasiPoly.const(c) for c in row] for row in rep.e])
    tau = QuasiPoly.var("tau")
    result = liealg.exp_nilpotent(e_mat, tau)
    assert result[0, 0] == QuasiPoly.const(1)
    assert result[0, 1] == tau
    assert result[1, 0].is_zero()


def test_exp_nilpotent_rejects_non_nilpotent():
    m = QuasiMatrix.identity(2)
    with pytest.raises(NotNilpotent):
        liealg.exp_nilpotent(m, QuasiPoly.var("tau"))


def test_sym_power_right_column():
    tau = QuasiPoly.var("tau")
    base = (
        (QuasiPoly.const(1), tau),
        (QuasiPoly(), QuasiPoly.const(1)),
    )
    for n in (2, 3):
        mat = liealg.sym_power_matrix(n, base)
        for i in range(n + 1):
            assert mat[i][n] == tau ** (n - i)


def test_sym_power_multiplicativity():
    a = ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1)))
    b = ((Fraction(1), Fraction(0)), (Fraction(3), Fraction(1)))
    ab = (
        (
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ),
        (
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ),
    )
    n = 3
    sa = liealg.sym_power_matrix(n, a)
    sb = liealg.sym_power_matrix(n, b)
    sab = liealg.sym_power_matrix(n, ab)
    dim = n + 1
    prod = [
        [sum(sa[i][k] * sb[k][j] for k in range(dim)) for j in range(dim)]
        for i in range(dim)
    ]
    assert prod == sab
