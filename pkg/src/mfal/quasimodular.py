"""The exact polynomial ring Q[tau, P, Q, R, s, s^-1].

P, Q, R stand for the Eisenstein series E2, E4, E6 and s for 1/(2*pi*i);
these five quantities are algebraically independent over C, so identities
proved here formally hold for the actual functions.  Every constant the
weight calculus needs (i*pi/3, pi^2/36, ...) is a rational multiple of a
power of s, keeping the coefficient field Q.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb

from . import modforms
from .qseries import QSeries

VARS = ("tau", "P", "Q", "R", "s")
_TAU, _P, _Q, _R, _S = range(5)


class NotInvertible(ValueError):
    """Matrix inverse requested but the determinant is not a unit."""


def _to_frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational scalar, got {type(x).__name__}")


class QuasiPoly:
    """Polynomial in tau, P, Q, R and the invertible constant s."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    @classmethod
    def const(cls, c) -> "QuasiPoly":
        c = _to_frac(c)
        return cls({} if c == 0 else {(0, 0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "QuasiPoly":
        idx = VARS.index(name)
        key = tuple(1 if i == idx else 0 for i in range(5))
        return cls({key: Fraction(1)})

    @classmethod
    def monomial(cls, exponents, c=1) -> "QuasiPoly":
        c = _to_frac(c)
        t, p, q, r, s = exponents
        if min(t, p, q, r) < 0:
            raise ValueError("only s may carry a negative exponent")
        return cls({} if c == 0 else {(t, p, q, r, s): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiPoly.const(other)
        return isinstance(other, QuasiPoly) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiPoly.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, Fraction(0)) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return QuasiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QuasiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                v = out.get(k, Fraction(0)) + ca * cb
                if v:
                    out[k] = v
                else:
                    del out[k]
        return QuasiPoly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "QuasiPoly":
        c = _to_frac(c)
        if c == 0:
            return QuasiPoly()
        return QuasiPoly({k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("general QuasiPoly inverses are not defined")
        result = QuasiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_s_power(self, k: int) -> "QuasiPoly":
        """Multiply by s^k (k may be negative: s is a unit)."""
        return QuasiPoly({(t, p, q, r, s + k): c for (t, p, q, r, s), c in self.terms.items()})

    # ------------------------------------------------------------------
    # derivations and substitutions
    # ------------------------------------------------------------------

    def d_tau(self) -> "QuasiPoly":
        """The Ramanujan derivation D = (1/2*pi*i) d/dtau.

        D(tau) = s, D(P) = (P^2-Q)/12, D(Q) = (PQ-R)/3, D(R) = (PR-Q^2)/2,
        D(s) = 0, extended by the Leibniz rule.
        """
        out = QuasiPoly()
        images = {
            _TAU: QuasiPoly.var("s"),
            _P: (QuasiPoly.var("P") ** 2 - QuasiPoly.var("Q")).scale(Fraction(1, 12)),
            _Q: (QuasiPoly.var("P") * QuasiPoly.var("Q") - QuasiPoly.var("R")).scale(Fraction(1, 3)),
            _R: (QuasiPoly.var("P") * QuasiPoly.var("R") - QuasiPoly.var("Q") ** 2).scale(Fraction(1, 2)),
        }
        for key, c in self.terms.items():
            for idx, image in images.items():
                e = key[idx]
                if e == 0:
                    continue
                lowered = list(key)
                lowered[idx] = e - 1
                out = out + image * QuasiPoly({tuple(lowered): c * e})
        return out

    def serre_D(self, k: int) -> "QuasiPoly":
        """Weight-raising derivative D - (k/12) P."""
        return self.d_tau() - (QuasiPoly.var("P") * self).scale(Fraction(k, 12))

    def shift_tau(self) -> "QuasiPoly":
        """Substitute tau -> tau + 1; P, Q, R, s are shift-invariant."""
        out = {}
        for (t, p, q, r, s), c in self.terms.items():
            for i in range(t + 1):
                k = (i, p, q, r, s)
                v = out.get(k, Fraction(0)) + c * comb(t, i)
                if v:
                    out[k] = v
                else:
                    del out[k]
        return QuasiPoly(out)

    def substitute_numeric(self, ctx: "NumericContext") -> complex:
        total = 0j
        for (t, p, q, r, s), c in self.terms.items():
            total += (
                complex(c)
                * ctx.tau**t
                * ctx.e2**p
                * ctx.e4**q
                * ctx.e6**r
                * ctx.s**s
            )
        return total

    def substitute_series(self, order) -> dict:
        """Replace P, Q, R by their expansions; keyed by remaining tau-degree.

        The result maps tau-degree to a QSeries.  Any s-dependence has no
        exact q-expansion and raises.
        """
        e2 = modforms.eisenstein(2, order).series
        e4 = modforms.eisenstein(4, order).series
        e6 = modforms.eisenstein(6, order).series
        out: dict[int, QSeries] = {}
        for (t, p, q, r, s), c in self.terms.items():
            if s != 0:
                raise ValueError("monomial carries a power of s = 1/(2*pi*i)")
            piece = QSeries.constant(c, trunc=order) * e2**p * e4**q * e6**r
            out[t] = out[t] + piece if t in out else piece
        return out

    def to_qseries(self, order) -> QSeries:
        """Exact q-expansion of a tau-free, s-free element."""
        pieces = self.substitute_series(order)
        if set(pieces) - {0}:
            raise ValueError("element depends on tau; no scalar q-expansion")
        return pieces.get(0, QSeries.zero(trunc=order))

    # ------------------------------------------------------------------
    # display / serialization
    # ------------------------------------------------------------------

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        names = ("tau", "E2", "E4", "E6", "s")
        parts = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            factors = []
            for name, e in zip(names, key):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"QuasiPoly({self.pretty()})"

    def to_json(self):
        return [
            [list(k), f"{c.numerator}/{c.denominator}"]
            for k, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(k): Fraction(c) for k, c in data})


class NumericContext:
    """Evaluated E2, E4, E6 at a fixed tau, shared across substitutions."""

    def __init__(self, tau: complex, order=64):
        self.tau = tau
        self.order = order
        self.e2 = modforms.eisenstein(2, order).series.eval_numeric(tau)
        self.e4 = modforms.eisenstein(4, order).series.eval_numeric(tau)
        self.e6 = modforms.eisenstein(6, order).series.eval_numeric(tau)
        self.s = 1 / (2j * cmath.pi)


# convenient generators
TAU = QuasiPoly.var("tau")
P = QuasiPoly.var("P")
Q = QuasiPoly.var("Q")
R = QuasiPoly.var("R")
S = QuasiPoly.var("s")
S_INV = QuasiPoly.monomial((0, 0, 0, 0, -1))


class QuasiMatrix:
    """Dense square matrix over the quasimodular polynomial ring."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [
            [e if isinstance(e, QuasiPoly) else QuasiPoly.const(e) for e in row]
            for row in rows
        ]

    @classmethod
    def identity(cls, n: int) -> "QuasiMatrix":
        return cls(
            [[QuasiPoly.const(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, n: int) -> "QuasiMatrix":
        return cls([[QuasiPoly() for _ in range(n)] for _ in range(n)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, QuasiMatrix) and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def __add__(self, other):
        return QuasiMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        return QuasiMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return QuasiMatrix([[-a for a in row] for row in self.rows])

    def scale(self, c) -> "QuasiMatrix":
        if not isinstance(c, QuasiPoly):
            c = QuasiPoly.const(c)
        return QuasiMatrix([[c * a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuasiPoly)):
            return self.scale(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = QuasiPoly()
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return QuasiMatrix(out)

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other) -> "QuasiMatrix":
        return self * other - other * self

    def trace(self) -> QuasiPoly:
        acc = QuasiPoly()
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def det(self) -> QuasiPoly:
        n = self.size
        if n == 1:
            return self.rows[0][0]
        acc = QuasiPoly()
        for j in range(n):
            if self.rows[0][j].is_zero():
                continue
            minor = QuasiMatrix(
                [row[:j] + row[j + 1 :] for row in self.rows[1:]]
            ).det()
            term = self.rows[0][j] * minor
            acc = acc + (term if j % 2 == 0 else -term)
        return acc

    def inverse(self) -> "QuasiMatrix":
        """Adjugate inverse; the determinant must be a unit +-c*s^k."""
        d = self.det()
        if len(d.terms) != 1:
            raise NotInvertible(f"determinant {d.pretty()} is not a monomial unit")
        (key, c), = d.terms.items()
        t, p, q, r, s = key
        if (t, p, q, r) != (0, 0, 0, 0):
            raise NotInvertible(f"determinant {d.pretty()} is not a unit")
        d_inv = QuasiPoly.monomial((0, 0, 0, 0, -s), Fraction(1) / c)
        n = self.size
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = QuasiMatrix(
                    [r_[:j] + r_[j + 1 :] for k, r_ in enumerate(self.rows) if k != i]
                )
                m = minor.det() if n > 1 else QuasiPoly.const(1)
                row.append(m if (i + j) % 2 == 0 else -m)
            cof.append(row)
        # adjugate = transpose of cofactors
        return QuasiMatrix(
            [[cof[j][i] * d_inv for j in range(n)] for i in range(n)]
        )

    def map(self, fn) -> "QuasiMatrix":
        return QuasiMatrix([[fn(e) for e in row] for row in self.rows])

    def d_tau(self) -> "QuasiMatrix":
        return self.map(lambda e: e.d_tau())

    def serre_D(self, k: int) -> "QuasiMatrix":
        return self.map(lambda e: e.serre_D(k))

    def shift_tau(self) -> "QuasiMatrix":
        return self.map(lambda e: e.shift_tau())

    def substitute_numeric(self, ctx: NumericContext):
        return [[e.substitute_numeric(ctx) for e in row] for row in self.rows]

    def pretty(self) -> str:
        return "[" + "; ".join(
            ", ".join(e.pretty() for e in row) for row in self.rows
        ) + "]"

    def __repr__(self):
        return f"QuasiMatrix({self.pretty()})"
