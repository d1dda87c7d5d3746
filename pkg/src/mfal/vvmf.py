"""The intertwining operator Phi_n and Hilbert series of its module.

Phi_n = exp(tau*E) exp((2*pi*i*E2/12) F) as an exact matrix over the
quasimodular ring; the d(tau)^{k/2} grading factor never enters the matrix,
it is carried as a per-column weight and turned into (c*tau+d)^{-k} factors
in numeric checks.
"""

from __future__ import annotations

from fractions import Fraction

from . import liealg
from .quasimodular import NumericContext, QuasiMatrix, QuasiPoly


class PhiOperator:
    """Intertwiner for Sym^n, with the grading carried as column weights."""

    def __init__(self, n: int):
        self.n = n
        rep = liealg.sym_rep(n)
        e_mat = QuasiMatrix([[QuasiPoly.const(c) for c in row] for row in rep.e])
        f_mat = QuasiMatrix([[QuasiPoly.const(c) for c in row] for row in rep.f])
        tau = QuasiPoly.var("tau")
        # y = 2*pi*i*E2/12 = P/(12 s)
        y = QuasiPoly.monomial((0, 1, 0, 0, -1), Fraction(1, 12))
        self.matrix = liealg.exp_nilpotent(e_mat, tau) * liealg.exp_nilpotent(f_mat, y)
        self.weights = rep.weights()

    def determinant(self) -> QuasiPoly:
        return self.matrix.det()


def phi(n: int) -> PhiOperator:
    return PhiOperator(n)


def rho_matrix(n: int, gamma) -> list:
    """Sym^n of an integer 2x2 matrix, as Fractions."""
    (a, b), (c, d) = gamma
    return liealg.sym_power_matrix(
        n, ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))
    )


T_GAMMA = ((1, 1), (0, 1))
S_GAMMA = ((0, -1), (1, 0))


def check_T_equivariance(n: int) -> bool:
    """Phi_n(tau+1) = rho_n(T) Phi_n(tau) as an exact polynomial identity.

    E2 is T-periodic, so only tau moves; the grading factor is untouched by
    T since c = 0.
    """
    op = phi(n)
    shifted = op.matrix.shift_tau()
    rho_t = QuasiMatrix(
        [[QuasiPoly.const(c) for c in row] for row in rho_matrix(n, T_GAMMA)]
    )
    return (shifted - rho_t * op.matrix).is_zero()


def check_gamma_equivariance(n: int, gamma, tau: complex, order=64) -> float:
    """Max entry residual of Phi_n(gamma tau) D - rho_n(gamma) Phi_n(tau).

    D = diag((c*tau+d)^{-k_j}) applies the grading correction; column j
    carries H-eigenvalue k_j.
    """
    (a, b), (c, d) = gamma
    image_tau = (a * tau + b) / (c * tau + d)
    op = phi(n)
    ctx_here = NumericContext(tau, order)
    ctx_image = NumericContext(image_tau, order)
    m_here = op.matrix.substitute_numeric(ctx_here)
    m_image = op.matrix.substitute_numeric(ctx_image)
    rho_g = rho_matrix(n, gamma)
    dim = n + 1
    residual = 0.0
    for i in range(dim):
        for j in range(dim):
            corrected = m_image[i][j] * (c * tau + d) ** (-op.weights[j])
            target = sum(float(rho_g[i][k]) * m_here[k][j] for k in range(dim))
            residual = max(residual, abs(corrected - target))
    return residual


def check_S_equivariance(n: int, tau: complex, order=64) -> float:
    """Max entry residual of Phi_n(-1/tau) D - rho_n(S) Phi_n(tau)."""
    return check_gamma_equivariance(n, S_GAMMA, tau, order)


def phi_functoriality_check(n: int) -> bool:
    """phi(n) equals Sym^n applied entrywise to phi(1)."""
    base = phi(1).matrix
    entries = (
        (base[0, 0], base[0, 1]),
        (base[1, 0], base[1, 1]),
    )
    lifted = QuasiMatrix(liealg.sym_power_matrix(n, entries))
    return (lifted - phi(n).matrix).is_zero()


# ----------------------------------------------------------------------
# Hilbert series
# ----------------------------------------------------------------------

class HilbertSeries:
    """numerator(t) / prod (1 - t^d), numerator a Laurent polynomial."""

    def __init__(self, numerator: dict, denominators: tuple):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.denominators = tuple(denominators)

    def coefficients(self, k_max: int) -> dict:
        """All coefficients for exponents <= k_max."""
        low = min(self.numerator, default=0)
        series = dict(self.numerator)
        for d in self.denominators:
            # multiply by 1/(1 - t^d) = sum t^{d m}
            out: dict[int, int] = {}
            for e, c in series.items():
                m = e
                while m <= k_max:
                    out[m] = out.get(m, 0) + c
                    m += d
            series = out
        return {e: c for e, c in series.items() if low <= e <= k_max and c}

    def coefficient(self, k: int) -> int:
        return self.coefficients(k).get(k, 0)


GROUP_RING_DEGREES = {
    # weights of a free generating set of the holomorphic forms
    "Gamma(1)": (4, 6),
    "Gamma(2)": (2, 2),
}


def hilbert_scalar(group: str) -> HilbertSeries:
    if group not in GROUP_RING_DEGREES:
        raise ValueError(f"no Hilbert series encoded for {group!r}")
    return HilbertSeries({0: 1}, GROUP_RING_DEGREES[group])


def hilbert_vvmf(n: int, group: str) -> HilbertSeries:
    """(t^-n + t^{-n+2} + ... + t^n) * H(scalar forms)."""
    base = hilbert_scalar(group)
    numerator = {}
    for k in range(-n, n + 1, 2):
        numerator[k] = numerator.get(k, 0) + 1
    return HilbertSeries(numerator, base.denominators)


def hilbert_coeffs(h: HilbertSeries, k_max: int) -> list:
    coeffs = h.coefficients(k_max)
    low = min(coeffs, default=0)
    return [(k, coeffs.get(k, 0)) for k in range(low, k_max + 1)]


def monomial_count(k: int, degrees=(4, 6)) -> int:
    """Number of monomials of weight k in free generators of given weights."""
    if k < 0:
        return 0
    d1, d2 = degrees
    return sum(1 for a in range(k // d1 + 1) if (k - a * d1) % d2 == 0)


def brute_force_vvmf_dim(n: int, k: int, degrees=(4, 6)) -> int:
    """dim of weight-k piece by summing shifted monomial counts."""
    return sum(monomial_count(k + n - 2 * i, degrees) for i in range(n + 1))
