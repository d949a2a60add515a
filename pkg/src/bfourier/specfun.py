"""Scalar special functions: log-Gamma, Laguerre, normalized Gegenbauer,
and the normalized Bessel family.

Conventions
-----------
I_script(nu, w)  = sum_m (w/2)^{2m} / ((nu+1)_m m!)          (= Gamma(nu+1)*I_tilde)
I_tilde(nu, w)   = sum_m (w/2)^{2m} / (Gamma(nu+m+1) m!)      (entire in nu)
J_script(nu, w)  = I_script(nu, i*w)   (alternating signs)
J_tilde(nu, w)   = I_tilde(nu, i*w)

All series use the same stopping rule: stop once three consecutive terms are
below 1e-17 times the running max of |partial sum|; hard cap of 500 terms.
"""

import enum
import math

import numpy as np
from scipy.special import rgamma

SERIES_CAP = 500
SERIES_EPS = 1e-17


class BesselKind(enum.Enum):
    MODIFIED_SCRIPT = "I_script"
    MODIFIED_TILDE = "I_tilde"
    OSCILLATORY_SCRIPT = "J_script"
    OSCILLATORY_TILDE = "J_tilde"


class SeriesError(ArithmeticError):
    """Raised when a power series fails to converge within the term cap."""


def ln_gamma(x):
    """ln Gamma(x) for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("ln_gamma requires x > 0")
    out = np.vectorize(math.lgamma)(x)
    return float(out) if out.ndim == 0 else out


def laguerre(ell, alpha, t):
    """Generalized Laguerre polynomial L_ell^{(alpha)}(t).

    Upward three-term recurrence; stable for the t >= 0 regime used here
    (arguments are always |x|^2 or r^2).
    """
    if ell < 0 or ell != int(ell):
        raise ValueError("degree must be a nonnegative integer")
    if alpha <= -1:
        raise ValueError("laguerre requires alpha > -1")
    t = np.asarray(t, dtype=float)
    p_prev = np.ones_like(t)
    if ell == 0:
        return float(p_prev) if p_prev.ndim == 0 else p_prev
    p = 1.0 + alpha - t
    for k in range(1, int(ell)):
        p, p_prev = ((2 * k + 1 + alpha - t) * p - (k + alpha) * p_prev) / (k + 1), p
    return float(p) if p.ndim == 0 else p


def gegenbauer_tilde(m, nu, t):
    """Normalized Gegenbauer polynomial C~_m^{(nu)}(t).

    Normalization fixed by C~_m(1) = (2nu+m ... ) via the prefactor (m+nu)/nu
    against the classical C_m^{(nu)}; evaluated through the rewriting

        C~_m^{(nu)}(t) = sum_k (-1)^k (m+nu) prod_{i=1}^{m-k-1}(nu+i)
                          / (k! (m-2k)!) * (2t)^{m-2k},

    which is polynomial in nu, so the nu=0 case (dimension 2: gives the
    Chebyshev limit 2T_m) and nu=-1/2 (dimension 1) need no special-casing.
    """
    if m < 0 or m != int(m):
        raise ValueError("degree must be a nonnegative integer")
    m = int(m)
    t = np.asarray(t, dtype=float)
    if m == 0:
        out = np.ones_like(t)
        return float(out) if out.ndim == 0 else out
    acc = np.zeros_like(t)
    for k in range(m // 2 + 1):
        pref = m + nu
        for i in range(1, m - k):
            pref *= nu + i
        coef = (-1) ** k * pref / (math.factorial(k) * math.factorial(m - 2 * k))
        acc = acc + coef * (2 * t) ** (m - 2 * k)
    return float(acc) if acc.ndim == 0 else acc


def _even_series(q, coeff):
    """sum_m coeff(m) * q^m with the common stopping rule.

    q may be a complex scalar or array; coeff(m) returns the m-th coefficient
    multiplier applied to q^m/m!-free powers (the caller folds factorials in).
    """
    q = np.asarray(q, dtype=complex)
    total = np.zeros_like(q)
    power = np.ones_like(q)
    peak = 0.0
    small = 0
    # overflow in power only occurs on arguments far beyond the series'
    # useful range; it surfaces as non-convergence (SeriesError) below
    with np.errstate(over="ignore", invalid="ignore"):
        for m in range(SERIES_CAP):
            term = coeff(m) * power
            total = total + term
            peak = max(peak, float(np.max(np.abs(term))))
            # leading coefficients may vanish identically (reciprocal-gamma
            # at non-positive integers); start the convergence count only
            # after a nonzero term has appeared
            if peak > 0 and float(np.max(np.abs(term))) < SERIES_EPS * peak:
                small += 1
                if small == 3:
                    return total
            else:
                small = 0
            power = power * q / (m + 1)
    raise SeriesError("Bessel series did not converge within %d terms" % SERIES_CAP)


def bessel_script(kind, nu, w):
    """Normalized Bessel family; see module docstring for definitions.

    Script kinds require nu > -1; tilde kinds are entire in nu (each term
    carries 1/Gamma(nu+m+1), which is finite for every real nu).
    """
    if kind in (BesselKind.MODIFIED_SCRIPT, BesselKind.OSCILLATORY_SCRIPT):
        if nu <= -1:
            raise ValueError("script kinds require nu > -1")
    w = np.asarray(w, dtype=complex)
    sign = 1.0 if kind in (BesselKind.MODIFIED_SCRIPT, BesselKind.MODIFIED_TILDE) else -1.0
    q = sign * (w / 2) ** 2
    if kind in (BesselKind.MODIFIED_SCRIPT, BesselKind.OSCILLATORY_SCRIPT):
        # term_m = q^m/m! * Gamma(nu+1)/Gamma(nu+m+1) = q^m/m! / (nu+1)_m
        gnu = math.gamma(nu + 1)
        out = _even_series(q, lambda m: gnu * rgamma(nu + m + 1))
    else:
        out = _even_series(q, lambda m: rgamma(nu + m + 1))
    return complex(out) if out.ndim == 0 else out


def bessel_i(nu, w):
    return bessel_script(BesselKind.MODIFIED_SCRIPT, nu, w)


def bessel_i_tilde(nu, w):
    return bessel_script(BesselKind.MODIFIED_TILDE, nu, w)


def bessel_j(nu, w):
    return bessel_script(BesselKind.OSCILLATORY_SCRIPT, nu, w)


def bessel_j_tilde(nu, w):
    return bessel_script(BesselKind.OSCILLATORY_TILDE, nu, w)


def bessel_integral_check(b, z):
    """I_script(b, z) through its integral representation

        I_script(b, z) = 1/B(b+1/2, 1/2) * int_{-1}^{1} e^{zs}(1-s^2)^{b-1/2} ds,

    valid for b > -1/2.  Gauss-Jacobi quadrature in s; the Beta normalization
    cancels by dividing out the total rule mass, so no Gamma evaluations are
    needed.  Serves as an independent route against the power series.
    """
    if b <= -0.5:
        raise ValueError("integral representation requires b > -1/2")
    from .quadrature import gauss_jacobi

    z = complex(z)
    n = max(48, int(2 * abs(z)) + 24)
    # substitute s = 2u-1: (1-s^2)^{b-1/2} ds -> const * u^{b-1/2}(1-u)^{b-1/2} du
    rule = gauss_jacobi(n, b - 0.5, b - 0.5)
    s = 2 * rule.nodes - 1
    return complex(np.sum(rule.weights * np.exp(z * s)) / np.sum(rule.weights))


def bessel_tilde_bound_constants(b):
    """Constants (C, M) with |I_tilde(b, z)| <= C (1+|z|)^M e^{|Re z|}.

    For b > -1/2 the integral representation gives C = 1/Gamma(b+1), M = 0.
    Below that, iterate the first-order Taylor identity

        I_tilde(b, z) = 1/Gamma(b+1) + (z^2/2) int_0^1 zeta I_tilde(b+1, zeta z) dzeta,

    which trades (C, M) for (1/|Gamma(b+1)| + C'/2, M'+2) in terms of the
    constants (C', M') one level up.
    """
    if b > -0.5:
        return 1.0 / math.gamma(b + 1), 0
    c_up, m_up = bessel_tilde_bound_constants(b + 1)
    return abs(float(rgamma(b + 1))) + c_up / 2.0, m_up + 2
