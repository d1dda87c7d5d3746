"""Root systems, Chevalley bases and sl2 machinery for types A1, A2, B2, G2.

Roots are integer coordinate tuples in the simple-root basis; the bilinear
form is the Gram matrix of the simple roots.  Structure constant magnitudes
come from root strings; signs are fixed by choosing +1 on extraspecial pairs
and propagating through the Jacobi identity, which pins every remaining sign
uniquely.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .quasimodular import QuasiMatrix, QuasiPoly


class NoRationalTriple(ValueError):
    """No rational nilpotent triple found for the requested grading."""


class OddLabel(ValueError):
    """Even grading demanded but an odd Dynkin label was supplied."""


class NotNilpotent(ValueError):
    """Polynomial matrix exponential of a non-nilpotent argument."""


_GRAM = {
    # alpha1 short, alpha2 long for B2; alpha1 long, alpha2 short for G2,
    # matching the label tables this package certifies against
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-2, 4)),
    "G2": ((6, -3), (-3, 2)),
}

ORBIT_LABELS = {
    ("A1", "principal"): (2,),
    ("A2", "principal"): (2, 2),
    ("B2", "subregular"): (0, 2),
    ("B2", "principal"): (2, 2),
    ("G2", "subregular"): (2, 0),
    ("G2", "principal"): (2, 2),
}


class RootSystem:
    """Roots, Cartan data and string lengths for one simple type."""

    def __init__(self, type_label: str):
        if type_label not in _GRAM:
            raise ValueError(f"unsupported type {type_label!r}")
        self.type_label = type_label
        self.gram = _GRAM[type_label]
        self.rank = len(self.gram)
        self.simple = [
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        ]
        self.roots = self._generate_roots()
        self.root_set = set(self.roots)
        self.positive = sorted(
            (r for r in self.roots if self._is_positive(r)), key=self._order_key
        )
        # Cartan integers <alpha_i, alpha_j^vee>
        self.cartan = [
            [self.pairing(a, b) for b in self.simple] for a in self.simple
        ]

    def _generate_roots(self):
        roots = set(self.simple) | {tuple(-x for x in a) for a in self.simple}
        changed = True
        while changed:
            changed = False
            for beta in list(roots):
                for i, alpha in enumerate(self.simple):
                    c = self.pairing(beta, alpha)
                    refl = tuple(b - c * a for b, a in zip(beta, alpha))
                    if refl not in roots:
                        roots.add(refl)
                        changed = True
        return sorted(roots, key=self._order_key)

    @staticmethod
    def _is_positive(root) -> bool:
        for x in root:
            if x > 0:
                return True
            if x < 0:
                return False
        return False

    @staticmethod
    def _order_key(root):
        return (sum(root), root)

    def inner(self, a, b):
        return sum(
            a[i] * b[j] * self.gram[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def pairing(self, beta, alpha) -> int:
        """Cartan integer <beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
        val = Fraction(2 * self.inner(beta, alpha), self.inner(alpha, alpha))
        if val.denominator != 1:
            raise ValueError("non-integral Cartan pairing")
        return int(val)

    def string_down(self, alpha, beta) -> int:
        """Largest p with beta - p*alpha a root."""
        p = 0
        current = tuple(b - a for b, a in zip(beta, alpha))
        while current in self.root_set:
            p += 1
            current = tuple(c - a for c, a in zip(current, alpha))
        return p

    def coroot_coefficients(self, alpha):
        """Integers c_i with alpha^vee = sum c_i alpha_i^vee."""
        norm = self.inner(alpha, alpha)
        coeffs = []
        for i in range(self.rank):
            c = Fraction(alpha[i] * self.inner(self.simple[i], self.simple[i]), norm)
            if c.denominator != 1:
                raise ValueError("coroot is not integral in simple coroots")
            coeffs.append(int(c))
        return tuple(coeffs)


def _neg(root):
    return tuple(-x for x in root)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class ChevalleyStructure:
    """Basis {H_i} + {A_alpha} with integral structure constants.

    Brackets:
      [H_i, H_j] = 0
      [H_i, A_a] = <a, alpha_i^vee> A_a
      [A_a, A_-a] = sum of coroot coefficients times H_i
      [A_a, A_b] = eps(a, b) A_{a+b} when a + b is a root, else 0.
    """

    def __init__(self, root_system: RootSystem):
        self.rs = root_system
        self.eps = _solve_signs(root_system)
        self.basis = [("H", i) for i in range(self.rs.rank)] + [
            ("A", r) for r in self.rs.roots
        ]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._table = self._build_table()
        self._killing = None

    def _build_table(self):
        table = {}
        rs = self.rs
        for i, x in enumerate(self.basis):
            for j, y in enumerate(self.basis):
                if i >= j:
                    continue
                acc: dict[int, Fraction] = {}
                kx, vx = x
                ky, vy = y
                if kx == "H" and ky == "H":
                    pass
                elif kx == "H" and ky == "A":
                    c = rs.pairing(vy, rs.simple[vx])
                    if c:
                        acc[j] = Fraction(c)
                elif kx == "A" and ky == "A":
                    if vy == _neg(vx):
                        for idx, c in enumerate(rs.coroot_coefficients(vx)):
                            if c:
                                acc[self.index[("H", idx)]] = Fraction(c)
                    else:
                        s = _add(vx, vy)
                        if s in rs.root_set:
                            acc[self.index[("A", s)]] = Fraction(self.eps[(vx, vy)])
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
        """Bracket of two vectors given as basis-index -> coefficient maps."""
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

    def structure_constant(self, alpha, beta) -> int:
        return self.eps.get((alpha, beta), 0)

    def jacobi_ok(self) -> bool:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            x, y, z = ({i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)})
            acc: dict[int, Fraction] = {}
            for term in (
                self.bracket(self.bracket(x, y), z),
                self.bracket(self.bracket(y, z), x),
                self.bracket(self.bracket(z, x), y),
            ):
                for idx, c in term.items():
                    v = acc.get(idx, Fraction(0)) + c
                    if v:
                        acc[idx] = v
                    else:
                        del acc[idx]
            if acc:
                return False
        return True

    def ad_matrix(self, x: dict):
        cols = []
        for j in range(self.dim):
            img = self.bracket(x, {j: Fraction(1)})
            cols.append(img)
        mat = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j, img in enumerate(cols):
            for i, c in img.items():
                mat[i][j] = c
        return mat

    def killing(self):
        """Matrix of tr(ad x ad y) over the Chevalley basis."""
        if self._killing is not None:
            return self._killing
        ads = [self.ad_matrix({i: Fraction(1)}) for i in range(self.dim)]
        n = self.dim
        km = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                t = Fraction(0)
                for i in range(n):
                    for k in range(n):
                        if ads[a][i][k] and ads[b][k][i]:
                            t += ads[a][i][k] * ads[b][k][i]
                km[a][b] = km[b][a] = t
        self._killing = km
        return km

    def killing_form(self, x: dict, y: dict) -> Fraction:
        km = self.killing()
        total = Fraction(0)
        for i, a in x.items():
            for j, b in y.items():
                if km[i][j]:
                    total += a * b * km[i][j]
        return total


def _sign_classes(rs: RootSystem):
    """Group the bracket pairs into orbits sharing a single free sign.

    eps(b,a) = -eps(a,b) and eps(-a,-b) = -eps(a,b), so each orbit of the
    generated four-group carries one sign choice; relative signs within the
    orbit are fixed.
    """
    seen = {}
    classes = []
    for alpha in rs.roots:
        for beta in rs.roots:
            if beta == _neg(alpha) or _add(alpha, beta) not in rs.root_set:
                continue
            if (alpha, beta) in seen:
                continue
            orbit = {
                (alpha, beta): 1,
                (beta, alpha): -1,
                (_neg(alpha), _neg(beta)): -1,
                (_neg(beta), _neg(alpha)): 1,
            }
            cid = len(classes)
            classes.append(orbit)
            for pair, rel in orbit.items():
                seen[pair] = (cid, rel)
    return classes, seen


def _extraspecial_pins(rs: RootSystem, seen):
    """Pin the sign class of the extraspecial pair of each composite root."""
    pos = rs.positive
    order = {r: i for i, r in enumerate(pos)}
    pins = {}
    for gamma in pos:
        best = None
        for alpha in pos:
            beta = tuple(g - a for g, a in zip(gamma, alpha))
            if beta in order and order[alpha] < order[beta]:
                if best is None or order[alpha] < order[best[0]]:
                    best = (alpha, beta)
        if best is not None:
            cid, rel = seen[best]
            pins[cid] = rel  # eps(best) = +magnitude
    return pins


def _solve_signs(rs: RootSystem):
    """Determine eps(a, b) for all bracket pairs.

    Backtracking over the free orbit signs, checking each Jacobi triple as
    soon as all the orbits it touches are decided.  The extraspecial pins
    make the solution unique; the search is a convenience, not a gamble.
    """
    classes, seen = _sign_classes(rs)
    pins = _extraspecial_pins(rs, seen)
    magnitude = {}
    for alpha, beta in seen:
        magnitude[(alpha, beta)] = rs.string_down(alpha, beta) + 1

    triples = []
    for a, b, c in itertools.combinations(rs.roots, 3):
        touched = set()
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if y == _neg(x):
                continue
            s = _add(x, y)
            if s not in rs.root_set:
                continue
            touched.add(seen[(x, y)][0])
            if z != _neg(s) and _add(s, z) in rs.root_set:
                touched.add(seen[(s, z)][0])
        triples.append(((a, b, c), frozenset(touched)))

    n_classes = len(classes)
    assignment: list[int | None] = [None] * n_classes
    for cid, rel in pins.items():
        assignment[cid] = rel

    def eps_of(pair):
        info = seen.get(pair)
        if info is None:
            return 0
        cid, rel = info
        sign = assignment[cid]
        return sign * rel * magnitude[pair]

    def jacobi_holds(triple) -> bool:
        a, b, c = triple
        # accumulate [[x,y],z] over cyclic permutations as a sparse vector
        acc: dict = {}

        def add_vec(target, coeff):
            if coeff:
                acc[target] = acc.get(target, 0) + coeff
                if acc[target] == 0:
                    del acc[target]

        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if y == _neg(x):
                # [H_{x^vee}, A_z] = <z, x^vee> A_z
                add_vec(("A", z), rs.pairing(z, x))
                continue
            s = _add(x, y)
            if s not in rs.root_set:
                continue
            e1 = eps_of((x, y))
            if z == _neg(s):
                for idx, cc in enumerate(rs.coroot_coefficients(s)):
                    add_vec(("H", idx), e1 * cc)
            else:
                t = _add(s, z)
                if t in rs.root_set:
                    add_vec(("A", t), e1 * eps_of((s, z)))
        return not acc

    undecided = [cid for cid in range(n_classes) if assignment[cid] is None]
    # triples become checkable once their last undecided class is assigned
    waiting: dict[int, list] = {cid: [] for cid in undecided}
    ready = []
    for triple, touched in triples:
        open_ids = [cid for cid in touched if assignment[cid] is None]
        if open_ids:
            waiting[max(open_ids, key=undecided.index)].append((triple, touched))
        else:
            ready.append(triple)

    for triple in ready:
        if not jacobi_holds(triple):
            raise AssertionError("pinned signs already violate Jacobi")

    def dfs(pos: int) -> bool:
        if pos == len(undecided):
            return True
        cid = undecided[pos]
        for sign in (1, -1):
            assignment[cid] = sign
            ok = True
            for triple, touched in waiting[cid]:
                if any(assignment[c] is None for c in touched):
                    continue
                if not jacobi_holds(triple):
                    ok = False
                    break
            if ok and dfs(pos + 1):
                return True
        assignment[cid] = None
        return False

    if not dfs(0):
        raise AssertionError("no Jacobi-consistent sign assignment exists")

    return {pair: eps_of(pair) for pair in seen}


_CHEVALLEY_CACHE: dict[str, ChevalleyStructure] = {}


def chevalley(type_label: str) -> ChevalleyStructure:
    if type_label not in _CHEVALLEY_CACHE:
        _CHEVALLEY_CACHE[type_label] = ChevalleyStructure(RootSystem(type_label))
    return _CHEVALLEY_CACHE[type_label]


class GradedTriple:
    """Grading from Dynkin labels plus a rational standard triple."""

    def __init__(self, type_label: str, labels, require_even=True, materialize=True):
        labels = tuple(labels)
        self.structure = chevalley(type_label)
        rs = self.structure.rs
        if len(labels) != rs.rank:
            raise ValueError("one label per simple root")
        if require_even and any(l % 2 for l in labels):
            raise OddLabel(f"labels {labels} are not all even")
        self.labels = labels
        self.grading = {r: sum(n * l for n, l in zip(r, labels)) for r in rs.roots}
        self.h_coeffs = self._solve_h()
        self.h_vector = {
            self.structure.index[("H", i)]: c
            for i, c in enumerate(self.h_coeffs)
            if c
        }
        self.e_vector = None
        self.f_vector = None
        if materialize and any(labels):
            self._materialize()

    def _solve_h(self):
        """Solve alpha_i(H) = label_i for H in the coroot basis."""
        rs = self.structure.rs
        n = rs.rank
        # alpha_i(H_j) = cartan[i][j]
        mat = [[Fraction(rs.cartan[i][j]) for j in range(n)] for i in range(n)]
        rhs = [Fraction(l) for l in self.labels]
        sol = _solve_linear(mat, rhs)
        if sol is None:
            raise NoRationalTriple("Cartan system for H is singular")
        return tuple(sol)

    def grade_roots(self, k: int):
        return [r for r, g in self.grading.items() if g == k]

    def _materialize(self):
        st = self.structure
        up = sorted(self.grade_roots(2))
        down = sorted(self.grade_roots(-2))
        if not up:
            raise NoRationalTriple("no grade-2 root vectors available")
        for coeffs in _small_coefficient_vectors(len(up)):
            e_vec = {
                st.index[("A", r)]: Fraction(c)
                for r, c in zip(up, coeffs)
                if c
            }
            f_vec = self._solve_f(e_vec, down)
            if f_vec is not None:
                self.e_vector = e_vec
                self.f_vector = f_vec
                return
        raise NoRationalTriple(f"no rational triple for labels {self.labels}")

    def _solve_f(self, e_vec, down):
        """[E, F] = H is linear in F once E is fixed."""
        st = self.structure
        cols = []
        for r in down:
            img = st.bracket(e_vec, {st.index[("A", r)]: Fraction(1)})
            cols.append(img)
        rows = sorted({i for img in cols for i in img} | set(self.h_vector))
        mat = [[cols[j].get(i, Fraction(0)) for j in range(len(down))] for i in rows]
        rhs = [self.h_vector.get(i, Fraction(0)) for i in rows]
        sol = _solve_linear_rect(mat, rhs)
        if sol is None:
            return None
        f_vec = {
            st.index[("A", r)]: c for r, c in zip(down, sol) if c
        }
        check = st.bracket(e_vec, f_vec)
        return f_vec if check == self.h_vector else None

    def triple_relations_hold(self) -> bool:
        st = self.structure
        if self.e_vector is None:
            return self.h_vector == {} or not any(self.labels)
        he = st.bracket(self.h_vector, self.e_vector)
        hf = st.bracket(self.h_vector, self.f_vector)
        ef = st.bracket(self.e_vector, self.f_vector)
        twice_e = {k: 2 * c for k, c in self.e_vector.items()}
        minus2f = {k: -2 * c for k, c in self.f_vector.items()}
        return he == twice_e and hf == minus2f and ef == self.h_vector


def graded_triple(type_label: str, orbit: str) -> GradedTriple:
    key = (type_label, orbit)
    if key not in ORBIT_LABELS:
        raise ValueError(f"unknown orbit {type_label}:{orbit}")
    return GradedTriple(type_label, ORBIT_LABELS[key])


def graded_triple_by_name(name: str) -> GradedTriple:
    """Orbit addressed as a single string, e.g. "B2:subregular"."""
    type_label, sep, orbit = name.partition(":")
    if not sep:
        raise ValueError(f"expected TYPE:ORBIT, got {name!r}")
    return graded_triple(type_label, orbit)


def _small_coefficient_vectors(n: int):
    """Deterministic stream of small positive coefficient vectors."""
    yield (1,) * n
    for values in itertools.product((1, 2, 3), repeat=n):
        yield values
    for values in itertools.product((1, 2, 3, 5, 7), repeat=n):
        yield values


def _solve_linear(mat, rhs):
    """Square solve over Q; None when singular."""
    n = len(mat)
    a = [row[:] + [r] for row, r in zip(mat, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _solve_linear_rect(mat, rhs):
    """Any solution of a rectangular consistent system over Q, else None."""
    if not mat:
        return []
    rows, cols = len(mat), len(mat[0])
    a = [mat[i][:] + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = a[i][cols]
    return sol


# ----------------------------------------------------------------------
# symmetric powers of the defining sl2 representation
# ----------------------------------------------------------------------

class SymRep:
    """Sym^n C^2 in the basis binom(n,i) x^(n-i) y^i, i = 0..n.

    H = diag(n, n-2, ..., -n); E and F raise and lower with the integer
    entries that make exp(tau*E) carry right column (tau^n, ..., tau, 1).
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        dim = n + 1
        self.h = [[Fraction(n - 2 * i) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
        self.e = [[Fraction(0)] * dim for _ in range(dim)]
        self.f = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(1, dim):
            self.e[i - 1][i] = Fraction(n - i + 1)
        for i in range(dim - 1):
            self.f[i + 1][i] = Fraction(i + 1)

    @property
    def dim(self) -> int:
        return self.n + 1

    def weights(self):
        """H-eigenvalue of each basis vector, top to bottom."""
        return [self.n - 2 * i for i in range(self.n + 1)]


def sym_rep(n: int) -> SymRep:
    return SymRep(n)


def sym_power_matrix(n: int, entries):
    """Functorial Sym^n of a 2x2 matrix over any commutative ring.

    ``entries`` is ((a, b), (c, d)); returns the (n+1)x(n+1) matrix in the
    scaled monomial basis.  Works for Fraction and QuasiPoly entries alike.
    """
    (a, b), (c, d) = entries

    def as_ring(x):
        return x

    rows = [[None] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        # image of basis vector j: binom(n,j) (a x + c y)^(n-j) (b x + d y)^j
        contributions = {}
        for u in range(n - j + 1):
            for v in range(j + 1):
                i = u + v
                coeff = Fraction(comb(n, j) * comb(n - j, u) * comb(j, v), comb(n, i))
                term = _ring_product(
                    [(a, n - j - u), (c, u), (b, j - v), (d, v)], coeff
                )
                if i in contributions:
                    contributions[i] = contributions[i] + term
                else:
                    contributions[i] = term
        for i in range(n + 1):
            rows[i][j] = contributions.get(i)
    zero = _ring_zero_like(a)
    return [[zero if x is None else x for x in row] for row in rows]


def _ring_product(powers, coeff: Fraction):
    acc = None
    for base, e in powers:
        if e == 0:
            continue
        factor = base
        for _ in range(e - 1):
            factor = factor * base
        acc = factor if acc is None else acc * factor
    if acc is None:
        return _ring_one_like(powers[0][0]) * coeff if isinstance(powers[0][0], QuasiPoly) else Fraction(coeff)
    return acc * coeff


def _ring_one_like(x):
    return QuasiPoly.const(1) if isinstance(x, QuasiPoly) else Fraction(1)


def _ring_zero_like(x):
    return QuasiPoly() if isinstance(x, QuasiPoly) else Fraction(0)


def exp_nilpotent(matrix: QuasiMatrix, scalar: QuasiPoly) -> QuasiMatrix:
    """Finite exponential sum of scalar*matrix for nilpotent matrix."""
    n = matrix.size
    result = QuasiMatrix.identity(n)
    power = QuasiMatrix.identity(n)
    scalar_power = QuasiPoly.const(1)
    for k in range(1, n + 1):
        power = power * matrix
        scalar_power = scalar_power * scalar
        if power.is_zero():
            return result
        result = result + power.scale(scalar_power * Fraction(1, _factorial(k)))
    if not (power * matrix).is_zero():
        raise NotNilpotent("matrix is not nilpotent of index <= size")
    return result


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out
