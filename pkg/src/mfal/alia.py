"""Weight-zero bracket tables over Q[j] and their two-route certification.

The cocycle exponents (w4, w6) that place j and (j-1728) factors in the
brackets are computed from the weight-residue table, then independently
certified against exact q-series identities between the weight-k module
generators: that cross-check is the trust anchor of the whole package.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import liealg, modforms
from .liealg import ChevalleyStructure, GradedTriple
from .qseries import QSeries
from .quasimodular import QuasiMatrix, QuasiPoly


class OddGrading(ValueError):
    """Cocycles need an even grading (rho(-Id) = id)."""


# ----------------------------------------------------------------------
# univariate polynomials in j over Q
# ----------------------------------------------------------------------

class JPoly:
    """Dense polynomial in j with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def j_power_form(cls, w4: int, w6: int):
        """j^w4 (j - 1728)^w6."""
        out = cls((1,))
        for _ in range(w4):
            out = out * cls((0, 1))
        for _ in range(w6):
            out = out * cls((-1728, 1))
        return out

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = JPoly((other,))
        return isinstance(other, JPoly) and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = JPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return JPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self):
        return JPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = JPoly((other,))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return JPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return JPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for k, b in enumerate(other.coeffs):
                out[i + k] += a * b
        return JPoly(out)

    __rmul__ = __mul__

    def __call__(self, value):
        value = Fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def as_series(self, j_series: QSeries) -> QSeries:
        acc = QSeries.zero(trunc=j_series.trunc)
        power = QSeries.constant(1, trunc=j_series.trunc)
        for i, c in enumerate(self.coeffs):
            if i:
                power = power * j_series
            if c:
                acc = acc + power.scale(c)
        return acc

    def pretty(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "j" if i == 1 else f"j^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(parts)).replace("+ -", "- ")

    def __repr__(self):
        return f"JPoly({self.pretty()})"


# ----------------------------------------------------------------------
# cocycles from the weight-residue table
# ----------------------------------------------------------------------

#: (n4, n6) of the weight-k generator Delta^l E4^n4 E6^n6, keyed by k mod 12.
RESIDUE_TABLE = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 2: (2, 1)}


def residue_exponents(k: int):
    if k % 2:
        raise OddGrading(f"weight {k} is odd")
    return RESIDUE_TABLE[k % 12]


class CocyclePair:
    """Symmetric {0,1}-valued maps w4, w6 on bracket-relevant root pairs."""

    def __init__(self, triple: GradedTriple):
        rs = triple.structure.rs
        grading = triple.grading
        if any(g % 2 for g in grading.values()):
            raise OddGrading("grading must be even (rho(-Id) = id)")
        self.triple = triple
        self.w4 = {}
        self.w6 = {}
        for alpha in rs.roots:
            for beta in rs.roots:
                s = tuple(a + b for a, b in zip(alpha, beta))
                if s not in rs.root_set and any(s):
                    continue
                ka, kb = grading[alpha], grading[beta]
                n4a, n6a = residue_exponents(-ka)
                n4b, n6b = residue_exponents(-kb)
                n4s, n6s = residue_exponents(-ka - kb)
                w4 = Fraction(n4a - n4s + n4b, 3)
                w6 = Fraction(n6a - n6s + n6b, 2)
                if w4.denominator != 1 or w6.denominator != 1:
                    raise AssertionError("coboundary values are not integral")
                w4, w6 = int(w4), int(w6)
                if w4 not in (0, 1) or w6 not in (0, 1):
                    raise AssertionError("cocycle value outside {0,1}")
                self.w4[(alpha, beta)] = w4
                self.w6[(alpha, beta)] = w6

    def pairs(self):
        return sorted(self.w4)

    def is_symmetric(self) -> bool:
        return all(
            self.w4[(a, b)] == self.w4.get((b, a)) and self.w6[(a, b)] == self.w6.get((b, a))
            for a, b in self.w4
        )

    def cocycle_condition_holds(self) -> bool:
        """w(a,b) + w(a+b,c) = w(b,c) + w(a,b+c) on admissible arguments."""
        rs = self.triple.structure.rs
        roots = rs.roots

        def check(w):
            for a, b, c in itertools.product(roots, repeat=3):
                ab = tuple(x + y for x, y in zip(a, b))
                bc = tuple(x + y for x, y in zip(b, c))
                abc = tuple(x + y for x, y in zip(ab, c))
                if not (
                    ab in rs.root_set
                    and bc in rs.root_set
                    and abc in rs.root_set
                ):
                    continue
                if w[(a, b)] + w[(ab, c)] != w[(b, c)] + w[(a, bc)]:
                    return False
            return True

        return check(self.w4) and check(self.w6)


def cocycles(triple: GradedTriple) -> CocyclePair:
    return CocyclePair(triple)


# ----------------------------------------------------------------------
# the bracket table over Q[j]
# ----------------------------------------------------------------------

class AliaTable:
    """Free Q[j]-module on {h_i} + {a_alpha} with the cocycle brackets."""

    def __init__(self, type_label: str, orbit: str):
        self.type_label = type_label
        self.orbit = orbit
        self.triple = liealg.graded_triple(type_label, orbit)
        self.structure: ChevalleyStructure = self.triple.structure
        self.cocycles = cocycles(self.triple)
        self.basis = list(self.structure.basis)
        self.index = self.structure.index
        self.dim = self.structure.dim
        self._table = self._build()

    def basis_name(self, i: int) -> str:
        kind, val = self.basis[i]
        if kind == "H":
            return f"h{val + 1}"
        return "a_" + ",".join(str(x) for x in val)

    def _build(self):
        rs = self.structure.rs
        table = {}
        for i, x in enumerate(self.basis):
            for j, y in enumerate(self.basis):
                if i >= j:
                    continue
                acc = {}
                kx, vx = x
                ky, vy = y
                if kx == "H" and ky == "A":
                    c = rs.pairing(vy, rs.simple[vx])
                    if c:
                        acc[j] = JPoly.const(c)
                elif kx == "A" and ky == "A":
                    w4 = self.cocycles.w4.get((vx, vy))
                    if w4 is None:
                        pass
                    else:
                        w6 = self.cocycles.w6[(vx, vy)]
                        jfactor = JPoly.j_power_form(w4, w6)
                        if vy == tuple(-a for a in vx):
                            for idx, c in enumerate(rs.coroot_coefficients(vx)):
                                if c:
                                    acc[self.index[("H", idx)]] = jfactor * c
                        else:
                            s = tuple(a + b for a, b in zip(vx, vy))
                            eps = self.structure.eps[(vx, vy)]
                            acc[self.index[("A", s)]] = jfactor * eps
                if acc:
                    table[(i, j)] = acc
        return table

    def bracket_indices(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        flipped = self._table.get((j, i), {})
        return {k: -c for k, c in flipped.items()}

    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of vectors with JPoly coefficients."""
        out: dict[int, JPoly] = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                if ab.is_zero():
                    continue
                for k, c in self.bracket_indices(i, j).items():
                    v = out.get(k, JPoly()) + ab * c
                    if v.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out

    def jacobi_ok(self) -> bool:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            x, y, z = ({i: JPoly.const(1)}, {j: JPoly.const(1)}, {k: JPoly.const(1)})
            acc: dict[int, JPoly] = {}
            for term in (
                self.bracket(self.bracket(x, y), z),
                self.bracket(self.bracket(y, z), x),
                self.bracket(self.bracket(z, x), y),
            ):
                for idx, c in term.items():
                    v = acc.get(idx, JPoly()) + c
                    if v.is_zero():
                        acc.pop(idx, None)
                    else:
                        acc[idx] = v
            if acc:
                return False
        return True

    # ------------------------------------------------------------------
    # specialization at a numeric j
    # ------------------------------------------------------------------

    def specialize(self, j_value) -> "SpecializedAlgebra":
        return SpecializedAlgebra(self, Fraction(j_value))

    def bracket_records(self):
        """Flat listing for the CLI: one record per nonzero bracket.

        Root-root pairs are oriented higher root first, so the A1 record
        reads [a_1, a_-1] = +j(j-1728) h1.
        """
        records = []
        for (i, j), acc in sorted(self._table.items()):
            flip = self.basis[i][0] == "A" and self.basis[j][0] == "A"
            x, y = (j, i) if flip else (i, j)
            sign = -1 if flip else 1
            for k, poly in sorted(acc.items()):
                records.append(
                    (self.basis_name(x), self.basis_name(y), self.basis_name(k),
                     poly * sign)
                )
        return records


class SpecializedAlgebra:
    """The fiber of an AliaTable at a numeric value of j."""

    def __init__(self, table: AliaTable, j_value: Fraction):
        self.dim = table.dim
        self.j_value = j_value
        self._consts = {}
        for key, acc in table._table.items():
            vals = {k: poly(j_value) for k, poly in acc.items()}
            vals = {k: v for k, v in vals.items() if v}
            if vals:
                self._consts[key] = vals

    def bracket_indices(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self._consts.get((i, j), {})
        flipped = self._consts.get((j, i), {})
        return {k: -c for k, c in flipped.items()}

    def bracket_vectors(self, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket_indices(i, j).items():
                    v = out.get(k, Fraction(0)) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        del out[k]
        return out

    def derived_series_lengths(self, max_steps=6):
        """Dimensions of the derived series D^0 >= D^1 >= ..."""
        current = [
            {i: Fraction(1)} for i in range(self.dim)
        ]
        dims = [self.dim]
        for _ in range(max_steps):
            brackets = []
            for a, b in itertools.combinations(range(len(current)), 2):
                v = self.bracket_vectors(current[a], current[b])
                if v:
                    brackets.append(v)
            basis = _row_reduce(brackets, self.dim)
            dims.append(len(basis))
            if not basis or len(basis) == dims[-2]:
                break
            current = basis
        return dims

    def is_solvable(self, within_steps=3) -> bool:
        dims = self.derived_series_lengths(max_steps=within_steps + 1)
        return 0 in dims[: within_steps + 1]

    def killing_determinant(self) -> Fraction:
        ads = []
        for i in range(self.dim):
            mat = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                img = self.bracket_vectors({i: Fraction(1)}, {j: Fraction(1)})
                for k, c in img.items():
                    mat[k][j] = c
            ads.append(mat)
        km = [
            [
                sum(ads[a][i][k] * ads[b][k][i] for i in range(self.dim) for k in range(self.dim))
                for b in range(self.dim)
            ]
            for a in range(self.dim)
        ]
        return _determinant(km)


def _row_reduce(vectors, dim):
    """Independent spanning subset (as coefficient dicts) over Q."""
    rows = []
    basis = []
    for vec in vectors:
        row = [vec.get(i, Fraction(0)) for i in range(dim)]
        for pivot_row in rows:
            lead = next((i for i, x in enumerate(pivot_row) if x), None)
            if lead is not None and row[lead]:
                factor = row[lead] / pivot_row[lead]
                row = [x - factor * y for x, y in zip(row, pivot_row)]
        if any(row):
            rows.append(row)
            basis.append({i: c for i, c in enumerate(row) if c})
    return basis


def _determinant(mat):
    n = len(mat)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def alia_table(type_label: str, orbit: str) -> AliaTable:
    return AliaTable(type_label, orbit)


# ----------------------------------------------------------------------
# the q-series oracle for the cocycle exponents
# ----------------------------------------------------------------------

class _FkCache:
    def __init__(self, order):
        self.order = Fraction(order)
        self._cache = {}

    def __call__(self, k: int) -> QSeries:
        if k not in self._cache:
            if k == 0:
                self._cache[k] = QSeries.constant(1, trunc=self.order)
            else:
                self._cache[k] = modforms.duke_jenkins(k, self.order)[3]
        return self._cache[k]


def scalar_oracle(type_label: str, orbit: str, order=64) -> bool:
    """Certify F_{-k(a)} F_{-k(b)} = j^w4 (j-1728)^w6 F_{-k(a)-k(b)} exactly.

    This is the modular-forms side of the bracket table: it never looks at
    the residue arithmetic that produced w4, w6.
    """
    table = AliaTable(type_label, orbit)
    grading = table.triple.grading
    # generous working order: the two sides have poles up to Delta^-4
    work = Fraction(order)
    fk = _FkCache(work)
    pad = work + 10
    j_series = modforms.j_invariant(pad).series
    rhs_cache: dict = {}
    checked = set()
    for (alpha, beta), w4 in table.cocycles.w4.items():
        w6 = table.cocycles.w6[(alpha, beta)]
        ka, kb = grading[alpha], grading[beta]
        key = (min(ka, kb), max(ka, kb))
        if key in checked:
            continue
        checked.add(key)
        lhs = fk(-ka) * fk(-kb)
        rkey = (w4, w6, ka + kb)
        if rkey not in rhs_cache:
            jpoly = JPoly.j_power_form(w4, w6).as_series(j_series)
            rhs_cache[rkey] = jpoly * fk(-ka - kb)
        if not lhs.agrees(rhs_cache[rkey]):
            return False
    return True


# ----------------------------------------------------------------------
# the explicit sl2 bundle
# ----------------------------------------------------------------------

class Sl2Bundle:
    """The weight -2, 0, 2 matrix forms and their certified relations."""

    def __init__(self):
        tau = QuasiPoly.var("tau")
        self.a_minus2 = QuasiMatrix(
            [[tau, -(tau * tau)], [QuasiPoly.const(1), -tau]]
        )
        self.a_0 = self.a_minus2.serre_D(-2)
        self.a_2 = self.a_0.serre_D(0)
        s_inv = QuasiPoly.monomial((0, 0, 0, 0, -1))
        pi_sq = QuasiPoly.monomial((0, 0, 0, 0, -2), Fraction(-1, 4))
        q_var = QuasiPoly.var("Q")
        self.f = self.a_minus2
        self.h = self.a_0.scale(s_inv)
        self.e = self.a_minus2.scale(pi_sq * q_var * Fraction(1, 36)) + self.a_2.scale(
            pi_sq * Fraction(2)
        )

    def triple_relations_ok(self) -> bool:
        return (
            (self.h.commutator(self.e) - self.e.scale(2)).is_zero()
            and (self.h.commutator(self.f) + self.f.scale(2)).is_zero()
            and (self.e.commutator(self.f) - self.h).is_zero()
        )

    def conjugation_ok(self) -> bool:
        """Phi_1 conjugates the constant standard triple to (h, e, f)."""
        from .vvmf import phi

        m = phi(1).matrix
        m_inv = m.inverse()
        h0 = QuasiMatrix([[1, 0], [0, -1]])
        e0 = QuasiMatrix([[0, 1], [0, 0]])
        f0 = QuasiMatrix([[0, 0], [1, 0]])
        return (
            (m * h0 * m_inv - self.h).is_zero()
            and (m * e0 * m_inv - self.e).is_zero()
            and (m * f0 * m_inv - self.f).is_zero()
        )

    def ad_a0_matrix_ok(self) -> bool:
        """Images of the weight basis under ad(a_0), rows of the display.

        [a0, a_minus2] = s * (-2 a_minus2) and
        [a0, a_2] = s * ((E4/18) a_minus2 + 2 a_2).
        """
        s = QuasiPoly.var("s")
        q_var = QuasiPoly.var("Q")
        lhs1 = self.a_0.commutator(self.a_minus2)
        rhs1 = self.a_minus2.scale(s * Fraction(-2))
        lhs2 = self.a_0.commutator(self.a_2)
        rhs2 = self.a_minus2.scale(s * q_var * Fraction(1, 18)) + self.a_2.scale(
            s * Fraction(2)
        )
        return (lhs1 - rhs1).is_zero() and (lhs2 - rhs2).is_zero()

    def t_conjugation_ok(self) -> bool:
        """a_minus2(tau + 1) = T a_minus2(tau) T^-1 exactly."""
        t = QuasiMatrix([[1, 1], [0, 1]])
        t_inv = QuasiMatrix([[1, -1], [0, 1]])
        return (self.a_minus2.shift_tau() - t * self.a_minus2 * t_inv).is_zero()

    def h_entry_ok(self) -> bool:
        """h[1][0] = (1/3) i pi E2, i.e. P/(6s)."""
        expected = QuasiPoly.monomial((0, 1, 0, 0, -1), Fraction(1, 6))
        return self.h[1, 0] == expected


def sl2_explicit() -> Sl2Bundle:
    return Sl2Bundle()


# ----------------------------------------------------------------------
# Levi decomposition bookkeeping and other groups
# ----------------------------------------------------------------------

def levi_dimensions(type_label: str, orbit: str):
    """(radical_dim, levi_dim) of the polynomial-growth weight-zero algebra.

    radical = dim z(g_0) + sum_{n>0} dim g_{-n} * dim M_n(Gamma(1));
    levi = dim of the derived subalgebra of g_0.
    """
    return _levi_from_triple(liealg.graded_triple(type_label, orbit))


def levi_dimensions_for_labels(type_label: str, labels):
    """Same bookkeeping for an explicit label vector (e.g. the trivial one)."""
    return _levi_from_triple(
        liealg.GradedTriple(type_label, labels, materialize=False)
    )


def _levi_from_triple(triple: liealg.GradedTriple):
    from .vvmf import monomial_count

    st = triple.structure
    g0 = [st.index[("H", i)] for i in range(st.rs.rank)]
    g0 += [st.index[("A", r)] for r in st.rs.roots if triple.grading[r] == 0]
    brackets = []
    for a, b in itertools.combinations(g0, 2):
        v = st.bracket({a: Fraction(1)}, {b: Fraction(1)})
        if v:
            brackets.append(v)
    levi = len(_row_reduce(brackets, st.dim))
    centre = len(g0) - levi
    radical = centre
    negatives = {}
    for r, g in triple.grading.items():
        if g < 0:
            negatives[-g] = negatives.get(-g, 0) + 1
    for n, count in negatives.items():
        radical += count * monomial_count(n)
    return radical, levi


def weight_zero_iso_check(order=24) -> dict:
    """Series-level ingredients of the weight-zero isomorphisms.

    For each principal congruence group the designated nonvanishing form is
    expanded, its leading coefficient is checked to be 1 and its formal
    q-series inverse is materialised (local invertibility at the cusp).
    Nonvanishing on the upper half-plane itself is quoted, not certified.
    """
    t3 = modforms.theta(3, order).series
    forms = {
        "Gamma(2)": ("theta3^4", t3**4, "C[lambda, lambda^-1, (lambda-1)^-1]"),
        "Gamma(3)": (
            "eta(3t)^3/eta(t)",
            modforms.eta_quotient([(3, 3), (1, -1)], order),
            "C[gamma-line: 4-punctured sphere ring]",
        ),
        "Gamma(4)": (
            "eta(4t)^4/eta(2t)^2",
            modforms.eta_quotient([(4, 4), (2, -2)], order),
            "C[mu, mu^-1, (mu-1)^-1, (mu+1)^-1, (mu-i)^-1, (mu+i)^-1]",
        ),
        "Gamma(5)": (
            "eta(5t)^15 klein(1/5;5t)^5 / eta(t)^3",
            modforms.gamma5_form_f(order).series,
            "C[icosahedral 12-punctured sphere ring]",
        ),
    }
    report = {}
    for group, (name, series, ring) in forms.items():
        lead_exp = series.valuation
        lead_coeff = series.terms[min(series.terms)]
        inverse = series.inverse()
        report[group] = {
            "form": name,
            "leading_exponent": lead_exp,
            "leading_coefficient": lead_coeff,
            "inverse_valuation": inverse.valuation,
            "coefficient_ring": ring,
            "unit_normalizable": lead_coeff == 1,
        }
    return report
