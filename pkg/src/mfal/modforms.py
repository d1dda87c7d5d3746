"""Named scalar modular forms and the identities that pin them down.

Everything is an exact QSeries in q = exp(2*pi*i*tau).  Forms classically
written in the nome exp(pi*i*tau) (theta constants, lambda) live here with
half/quarter/eighth-integral exponents so that a single exponent lattice
serves the whole package.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import ceil, comb, isqrt

from .qseries import DEFAULT_ORDER, QSeries


class OddWeight(ValueError):
    """Weight-k basis requested for odd k, where the space is zero."""


class Unsupported(ValueError):
    """Requested variant is outside the implemented family."""


class UnknownForm(KeyError):
    """Registry lookup for a name that is not defined."""


class NamedForm:
    """A q-expansion tagged with its weight and congruence group."""

    __slots__ = ("name", "weight", "group", "series")

    def __init__(self, name: str, weight, group: str, series: QSeries):
        self.name = name
        self.weight = Fraction(weight)
        self.group = group
        self.series = series

    def __repr__(self):
        return f"NamedForm({self.name!r}, weight={self.weight}, group={self.group})"


# ----------------------------------------------------------------------
# arithmetic helpers
# ----------------------------------------------------------------------

def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k for even k >= 0 (B_1 convention never needed)."""
    if k < 0 or k % 2:
        raise ValueError("only even nonnegative indices are supported")
    b = [Fraction(1)]
    for n in range(1, k + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += comb(n + 1, j) * b[j]
        b.append(-acc / (n + 1))
    return b[k]


def sigma(n: int, m: int) -> int:
    """Sum of m-th powers of the divisors of n."""
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d**m
            e = n // d
            if e != d:
                total += e**m
    return total


# ----------------------------------------------------------------------
# level one
# ----------------------------------------------------------------------

def eisenstein(k: int, order=DEFAULT_ORDER) -> NamedForm:
    """E_k = 1 - (2k/B_k) * sum sigma_{k-1}(n) q^n, even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series defined here for even k >= 2")
    factor = Fraction(-2 * k) / bernoulli(k)
    terms = [(0, Fraction(1))]
    for n in range(1, ceil(order)):
        terms.append((n, factor * sigma(n, k - 1)))
    return NamedForm(f"E{k}", k, "Gamma(1)", QSeries.from_terms(terms, trunc=order))


def euler_product(order=DEFAULT_ORDER) -> QSeries:
    """prod (1 - q^n) by Euler's pentagonal number theorem."""
    terms = [(0, 1)]
    k = 1
    while k * (3 * k - 1) // 2 < order:
        sign = -1 if k % 2 else 1
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e < order:
                terms.append((e, sign))
        k += 1
    return QSeries.from_terms(terms, trunc=order)


def dedekind_eta(order=DEFAULT_ORDER) -> NamedForm:
    series = euler_product(order).shift_exponents(Fraction(1, 24))
    return NamedForm("eta", Fraction(1, 2), "Gamma(1)", series)


def eta_quotient(spec, order=DEFAULT_ORDER) -> QSeries:
    """Product of eta(m*tau)^r over (m, r) pairs, m positive rational."""
    # a little headroom so inverse factors still cover [v, order)
    base = dedekind_eta(Fraction(order) + 2).series
    result = QSeries.constant(1, trunc=Fraction(order) + 2)
    for m, r in spec:
        factor = base.rescale_tau(m)
        result = result * factor**r
    return result.truncate(min(result.trunc, Fraction(order)))


def discriminant(order=DEFAULT_ORDER, route: str = "eisenstein") -> NamedForm:
    """Delta via (E4^3 - E6^2)/1728 or via the eta product; both agree."""
    if route == "eisenstein":
        e4 = eisenstein(4, order + 1).series
        e6 = eisenstein(6, order + 1).series
        series = ((e4**3) - (e6**2)).scale(Fraction(1, 1728)).truncate(order)
    elif route == "eta":
        series = (dedekind_eta(order).series ** 24).truncate(order)
    else:
        raise ValueError(f"unknown route {route!r}")
    return NamedForm("Delta", 12, "Gamma(1)", series)


def j_invariant(order=DEFAULT_ORDER) -> NamedForm:
    # work a little deeper so that j itself is valid below `order`
    pad = ceil(order) + 3
    e4 = eisenstein(4, pad).series
    delta = discriminant(pad).series
    series = (e4**3 / delta).truncate(order)
    return NamedForm("j", 0, "Gamma(1)", series)


def j_minus_1728(order=DEFAULT_ORDER) -> NamedForm:
    pad = ceil(order) + 3
    e6 = eisenstein(6, pad).series
    delta = discriminant(pad).series
    series = (e6**2 / delta).truncate(order)
    return NamedForm("j-1728", 0, "Gamma(1)", series)


def duke_jenkins(k: int, order=DEFAULT_ORDER):
    """Generator F_k = Delta^l E4^n4 E6^n6 of the weight-k module over C[j].

    Returns (l, n4, n6, series).  The residues (n4, n6) realise the group
    isomorphism 2Z/12Z -> Z/3Z x Z/2Z.
    """
    if k % 2:
        raise OddWeight("weakly holomorphic forms of odd level-one weight vanish")
    table = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 2: (2, 1)}
    n4, n6 = table[k % 12]
    s = 4 * n4 + 6 * n6
    ell = (k - s) // 12
    pad = ceil(order) + max(0, -ell) * 2 + 3
    e4 = eisenstein(4, pad).series
    e6 = eisenstein(6, pad).series
    series = e4**n4 * e6**n6
    if ell:
        series = series * discriminant(pad).series ** ell
    return ell, n4, n6, series.truncate(order)


def serre_derivative(k: int, f: QSeries) -> QSeries:
    """D_k f = q df/dq - (k/12) E_2 f, raising weight k to k + 2."""
    e2 = eisenstein(2, f.trunc).series
    return f.q_derive() - e2 * f.scale(Fraction(k, 12))


def ramanujan_check(order=DEFAULT_ORDER) -> bool:
    """D_1 E2 = -E4/12, D_4 E4 = -E6/3, D_6 E6 = -E4^2/2, exactly."""
    e2 = eisenstein(2, order).series
    e4 = eisenstein(4, order).series
    e6 = eisenstein(6, order).series
    return (
        serre_derivative(1, e2).agrees(e4.scale(Fraction(-1, 12)))
        and serre_derivative(4, e4).agrees(e6.scale(Fraction(-1, 3)))
        and serre_derivative(6, e6).agrees((e4**2).scale(Fraction(-1, 2)))
    )


def eisenstein_power_identities(order=DEFAULT_ORDER) -> bool:
    """E8 = E4^2, E10 = E4 E6, E14 = E4^2 E6."""
    e4 = eisenstein(4, order).series
    e6 = eisenstein(6, order).series
    return (
        eisenstein(8, order).series.agrees(e4**2)
        and eisenstein(10, order).series.agrees(e4 * e6)
        and eisenstein(14, order).series.agrees(e4**2 * e6)
    )


def delta_derivation(f: QSeries) -> QSeries:
    """delta(f) = (E4 E6 / Delta) * q df/dq, a derivation of weight-zero forms."""
    pad = f.trunc + 2
    e4 = eisenstein(4, pad).series
    e6 = eisenstein(6, pad).series
    delta = discriminant(pad).series
    return (e4 * e6 / delta) * f.q_derive()


def delta_derivation_prefactor(order=DEFAULT_ORDER) -> QSeries:
    """q*E4*E6/Delta, the d/dq prefactor of the derivation; starts at 1."""
    pad = ceil(order) + 3
    e4 = eisenstein(4, pad).series
    e6 = eisenstein(6, pad).series
    delta = discriminant(pad).series
    return ((e4 * e6 / delta).shift_exponents(1)).truncate(order)


# ----------------------------------------------------------------------
# theta constants and Gamma(2)
# ----------------------------------------------------------------------

def theta(i: int, order=DEFAULT_ORDER) -> NamedForm:
    """Theta constants as base-q series: exponents (2n+1)^2/8 resp. n^2/2."""
    terms = []
    if i == 2:
        n = 0
        while Fraction((2 * n + 1) ** 2, 8) < order:
            terms.append((Fraction((2 * n + 1) ** 2, 8), 2))
            n += 1
    elif i in (3, 4):
        terms.append((0, 1))
        n = 1
        while Fraction(n * n, 2) < order:
            c = 2 if (i == 3 or n % 2 == 0) else -2
            terms.append((Fraction(n * n, 2), c))
            n += 1
    else:
        raise ValueError("theta index must be 2, 3 or 4")
    return NamedForm(f"theta{i}", Fraction(1, 2), "Gamma(2)", QSeries.from_terms(terms, trunc=order))


def gamma2_generators(order=DEFAULT_ORDER):
    """(F2, H2, theta2^4, theta3^4, theta4^4) with the combination identities.

    F2 = 2 E2(2 tau) - E2(tau) and H2 = F2(tau/2) generate the Gamma(2)
    forms; the three theta fourth powers are the linear combinations that
    vanish at single cusps, and are checked against the lattice sums.
    """
    wide = 2 * Fraction(order)  # F2 must be known twice as deep to halve tau
    e2 = eisenstein(2, wide).series
    f2 = e2.rescale_tau(2).truncate(wide).scale(2) - e2
    h2 = f2.rescale_tau(Fraction(1, 2))
    f2 = f2.truncate(order)
    t2 = f2.scale(Fraction(-2, 3)) + h2.scale(Fraction(2, 3))
    t3 = f2.scale(Fraction(2, 3)) + h2.scale(Fraction(1, 3))
    t4 = f2.scale(Fraction(4, 3)) + h2.scale(Fraction(-1, 3))
    for combo, i in ((t2, 2), (t3, 3), (t4, 4)):
        if not combo.agrees(theta(i, order).series ** 4):
            raise AssertionError(f"theta{i}^4 combination failed")
    return (
        NamedForm("F2", 2, "Gamma(2)", f2),
        NamedForm("H2", 2, "Gamma(2)", h2),
        t2,
        t3,
        t4,
    )


def lambda_invariant(order=DEFAULT_ORDER) -> NamedForm:
    pad = ceil(order) + 2
    t2 = theta(2, pad).series
    t3 = theta(3, pad).series
    series = (t2**4 / t3**4).truncate(order)
    return NamedForm("lambda", 0, "Gamma(2)", series)


def j_from_lambda_check(order=DEFAULT_ORDER) -> bool:
    """j * lambda^2 (lambda-1)^2 = 256 (lambda^2 - lambda + 1)^3 exactly."""
    lam = lambda_invariant(order).series
    j = j_invariant(order).series
    lhs = j * (lam**2) * ((lam - 1) ** 2)
    rhs = ((lam**2 - lam + 1) ** 3).scale(256)
    return lhs.agrees(rhs)


def lambda_shift_check(order=DEFAULT_ORDER) -> bool:
    """lambda(tau+1) = lambda/(lambda-1), via the exact half-integral shift."""
    lam = lambda_invariant(order).series
    return lam.shift_tau().agrees(lam / (lam - 1))


# ----------------------------------------------------------------------
# Gamma(3): lattice sums and the quartic/sextic relations
# ----------------------------------------------------------------------

def gamma3_generators(order=DEFAULT_ORDER):
    """(phi1, phi2): the two weight-1 generators as hexagonal lattice sums."""
    bound = ceil(2 * (ceil(order) ** 0.5)) + 2
    phi1_counts: dict[int, int] = {}
    phi2_counts: dict[int, int] = {}
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            v = x * x - x * y + y * y
            if v < order:
                phi1_counts[v] = phi1_counts.get(v, 0) + 1
            w = v + x - y
            if w + Fraction(1, 3) < order:
                phi2_counts[w] = phi2_counts.get(w, 0) + 1
    phi1 = QSeries.from_terms(phi1_counts.items(), trunc=order)
    phi2 = QSeries.from_terms(
        ((Fraction(1, 3) + e, c) for e, c in phi2_counts.items()), trunc=order
    )
    return (
        NamedForm("phi1", 1, "Gamma(3)", phi1),
        NamedForm("phi2", 1, "Gamma(3)", phi2),
    )


def rel3_check(order=DEFAULT_ORDER) -> bool:
    """E4 = u^4 + 8 u v^3 and E6 = u^6 - 20 u^3 v^3 - 8 v^6 for u, v = phi1, phi2."""
    u = gamma3_generators(order)[0].series
    v = gamma3_generators(order)[1].series
    e4 = eisenstein(4, order).series
    e6 = eisenstein(6, order).series
    ok4 = e4.agrees(u**4 + (u * v**3).scale(8))
    ok6 = e6.agrees(u**6 - (u**3 * v**3).scale(20) - (v**6).scale(8))
    return ok4 and ok6


def ferapontov_ode_check(order=DEFAULT_ORDER) -> bool:
    """The integrable-Lagrangian fourth-order ODE satisfied by g = phi1.

    Every term has total derivative order 6 and degree 4, so q*d/dq may
    stand in for the tau-derivative: the 2*pi*i powers cancel.
    """
    if order < 20:
        raise ValueError("order too small to distinguish the ODE terms")
    g = gamma3_generators(order)[0].series
    g1 = g.q_derive()
    g2 = g1.q_derive()
    g3 = g2.q_derive()
    g4 = g3.q_derive()
    expr = (
        g4 * (g**2 * g2 - (g * g1**2).scale(2))
        - (g1**2 * g2**2).scale(9)
        + (g * g1 * g2 * g3).scale(2)
        + (g1**3 * g3).scale(8)
        - g**2 * g3**2
    )
    return expr.is_zero()


def ferapontov_ode_terms(order=DEFAULT_ORDER):
    """The five individual ODE terms, for nonvanishing sanity checks."""
    g = gamma3_generators(order)[0].series
    g1 = g.q_derive()
    g2 = g1.q_derive()
    g3 = g2.q_derive()
    g4 = g3.q_derive()
    return [
        g4 * (g**2 * g2 - (g * g1**2).scale(2)),
        (g1**2 * g2**2).scale(-9),
        (g * g1 * g2 * g3).scale(2),
        (g1**3 * g3).scale(8),
        -(g**2 * g3**2),
    ]


# ----------------------------------------------------------------------
# Gamma(4) and Gamma(5)
# ----------------------------------------------------------------------

def mu_gamma4(order=DEFAULT_ORDER) -> NamedForm:
    """Hauptmodul mu = theta4^2 / (theta2^2 + theta3^2) for Gamma(4).

    Uses squared theta3 throughout; the cusp at infinity then lands at 1.
    """
    pad = ceil(order) + 2
    t2 = theta(2, pad).series
    t3 = theta(3, pad).series
    t4 = theta(4, pad).series
    series = (t4**2 / (t2**2 + t3**2)).truncate(order)
    return NamedForm("mu", 0, "Gamma(4)", series)


def theta_product_delta_check(order=DEFAULT_ORDER) -> bool:
    """theta2^8 theta3^8 theta4^8 = 256 * Delta."""
    t2 = theta(2, order).series
    t3 = theta(3, order).series
    t4 = theta(4, order).series
    prod = t2**8 * t3**8 * t4**8
    return prod.agrees(discriminant(order).series.scale(256))


def jacobi_identity_check(order=DEFAULT_ORDER) -> bool:
    """theta2^4 + theta4^4 = theta3^4."""
    t2 = theta(2, order).series
    t3 = theta(3, order).series
    t4 = theta(4, order).series
    return (t2**4 + t4**4).agrees(t3**4)


def theta_transformation_residual(tau: complex, order=DEFAULT_ORDER) -> float:
    """Numeric check of the theta T and S laws; returns the max residual.

    T: (theta2, theta3, theta4)(tau+1) = (zeta8 theta2, theta4, theta3)(tau);
    S: theta(-1/tau) = zeta8^-1 tau^(1/2) (theta4, theta3, theta2)(tau).
    Eighth roots of unity keep these outside the exact shift machinery.
    """
    import cmath

    t2 = theta(2, order).series
    t3 = theta(3, order).series
    t4 = theta(4, order).series
    zeta8 = cmath.exp(2j * cmath.pi / 8)
    vals = {i: s.eval_numeric(tau) for i, s in ((2, t2), (3, t3), (4, t4))}
    shifted = {i: s.eval_numeric(tau + 1) for i, s in ((2, t2), (3, t3), (4, t4))}
    imaged = {i: s.eval_numeric(-1 / tau) for i, s in ((2, t2), (3, t3), (4, t4))}
    root = cmath.sqrt(tau) / zeta8
    residual = max(
        abs(shifted[2] - zeta8 * vals[2]),
        abs(shifted[3] - vals[4]),
        abs(shifted[4] - vals[3]),
        abs(imaged[2] - root * vals[4]),
        abs(imaged[3] - root * vals[3]),
        abs(imaged[4] - root * vals[2]),
    )
    return residual


def klein_form(r1, scale: int = 1, order=DEFAULT_ORDER, r2=0) -> NamedForm:
    """Klein form k_{r1,0}(scale*tau) for rational r1 in (0,1).

    q_z^{(r1-1)/2} (q_z; qs)(qs/q_z; qs) / (qs; qs)^2 with qs = q^scale and
    q_z = q^{scale*r1}.  The r2 != 0 case needs cyclotomic coefficients and
    is not provided.
    """
    if r2 != 0:
        raise Unsupported("Klein forms with r2 != 0 need cyclotomic coefficients")
    r1 = Fraction(r1)
    if not 0 < r1 < 1:
        raise Unsupported("r1 must lie strictly between 0 and 1")
    a = r1 * scale          # exponent of q_z
    b = scale - a           # exponent of qs/q_z
    lead = scale * r1 * (r1 - 1) / 2
    deep = Fraction(order) - lead  # the unit part must reach this far
    unit = QSeries.constant(1, trunc=deep)
    for start in (a, b):
        e = start
        while e < deep:
            unit = unit * QSeries.from_terms([(0, 1), (e, -1)], trunc=deep)
            e += scale
    euler = euler_product(ceil(deep / scale) + 1).rescale_tau(scale).truncate(deep)
    unit = unit * euler**-2
    series = unit.shift_exponents(lead).truncate(order)
    return NamedForm(f"klein({r1};{scale}tau)", -1, f"Gamma({scale})", series)


def gamma5_form_f(order=DEFAULT_ORDER) -> NamedForm:
    """eta(5 tau)^15 klein_{1/5,0}(5 tau)^5 / eta(tau)^3 for Gamma(5).

    Direct exponent arithmetic gives leading exponent 25/8 - 1/8 - 2 = 1 and
    weight 15/2 - 3/2 - 5 = 1; the series is reported as computed.  The
    factors are individually nonvanishing on the upper half-plane, which is
    a statement about the product formula, not about this expansion.
    """
    pad = ceil(order) + 4
    eta = dedekind_eta(pad).series
    k5 = klein_form(Fraction(1, 5), 5, pad).series
    series = eta.rescale_tau(5) ** 15 * k5**5 * eta**-3
    return NamedForm("f_gamma5", 1, "Gamma(5)", series.truncate(order))


# ----------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------

_REGISTRY_LOCK = threading.Lock()
_REGISTRY_CACHE: dict = {}


def _build(name: str, order):
    if name.startswith("F_k:"):
        k = int(name.split(":", 1)[1])
        _, _, _, series = duke_jenkins(k, order)
        return NamedForm(name, k, "Gamma(1)", series)
    builders = {
        "E2": lambda: eisenstein(2, order),
        "E4": lambda: eisenstein(4, order),
        "E6": lambda: eisenstein(6, order),
        "E8": lambda: eisenstein(8, order),
        "E10": lambda: eisenstein(10, order),
        "E14": lambda: eisenstein(14, order),
        "Delta": lambda: discriminant(order),
        "j": lambda: j_invariant(order),
        "j-1728": lambda: j_minus_1728(order),
        "eta": lambda: dedekind_eta(order),
        "theta2": lambda: theta(2, order),
        "theta3": lambda: theta(3, order),
        "theta4": lambda: theta(4, order),
        "lambda": lambda: lambda_invariant(order),
        "mu": lambda: mu_gamma4(order),
        "phi1": lambda: gamma3_generators(order)[0],
        "phi2": lambda: gamma3_generators(order)[1],
        "F2": lambda: gamma2_generators(order)[0],
        "H2": lambda: gamma2_generators(order)[1],
        "f_gamma5": lambda: gamma5_form_f(order),
    }
    if name not in builders:
        raise UnknownForm(name)
    return builders[name]()


def named_form(name: str, order=DEFAULT_ORDER) -> NamedForm:
    """Registry lookup with a cache that is safe for concurrent readers."""
    key = (name, Fraction(order))
    cached = _REGISTRY_CACHE.get(key)
    if cached is not None:
        return cached
    form = _build(name, order)
    with _REGISTRY_LOCK:
        _REGISTRY_CACHE[key] = form
    return form


REGISTERED_NAMES = (
    "E2", "E4", "E6", "E8", "E10", "E14", "Delta", "j", "j-1728", "eta",
    "theta2", "theta3", "theta4", "lambda", "mu", "phi1", "phi2", "F2", "H2",
    "f_gamma5",
)
