"""The two-variable special function scriptI(b, nu; w, t): a deformation of
e^{wt} built from normalized modified Bessel and Gegenbauer functions.

Four evaluation routes are provided:

  eval_series        -- the defining Bessel-Gegenbauer series; valid on the
                        full parameter range nu > -1, b > -nu-1.
  eval_beta_integral -- the Beta-integral formula (requires b > 0).
  eval_continuation  -- Taylor principal part + integral remainder; this is
                        the analytic continuation that covers b <= 0.
  eval_double_series -- an unproven closed-form double power series; kept as
                        a flagged cross-check only, never used as an oracle.

eval_auto dispatches and tags its result with the route taken.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .quadrature import gauss_jacobi
from .specfun import (
    SERIES_CAP,
    SERIES_EPS,
    SeriesError,
    bessel_i,
    bessel_i_tilde,
    bessel_tilde_bound_constants,
    gegenbauer_tilde,
)


def _check_params(b, nu):
    if nu <= -1:
        raise ValueError("requires nu > -1")
    if b <= -nu - 1:
        raise ValueError("requires b > -nu - 1")


def eval_series(b, nu, w, t):
    """Defining series sum_m Gamma(b+nu+1) (w/2)^m I_tilde(b+nu+m, w)
    C~_m^{(nu)}(t); broadcasts over complex w and real t in [-1, 1]."""
    _check_params(b, nu)
    w = np.asarray(w, dtype=complex)
    t = np.asarray(t, dtype=float)
    gam = math.gamma(b + nu + 1)
    total = np.zeros(np.broadcast(w, t).shape, dtype=complex)
    power = np.ones_like(w)
    peak = 0.0
    small = 0
    for m in range(SERIES_CAP):
        term = gam * power * bessel_i_tilde(b + nu + m, w) * gegenbauer_tilde(m, nu, t)
        total = total + term
        peak = max(peak, float(np.max(np.abs(total))))
        if float(np.max(np.abs(term))) < SERIES_EPS * max(peak, 1e-300):
            small += 1
            if small == 3:
                break
        else:
            small = 0
        power = power * (w / 2)
    else:
        raise SeriesError("scriptI series did not converge")
    return complex(total) if total.ndim == 0 else total


def eval_beta_integral(b, nu, w, t, rule=None):
    """Beta-integral route (b > 0 only):

        scriptI = 1/B(b, nu+1) int_0^1 u^{b-1}(1-u)^nu I_script(b, u w)
                  e^{(1-u) w t} du,

    by Gauss-Jacobi quadrature with the weight u^{b-1}(1-u)^nu; the Beta
    constant cancels against the rule's total mass."""
    _check_params(b, nu)
    if b <= 0:
        raise ValueError("Beta-integral route requires b > 0; use the continuation route")
    w, t = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(t, dtype=float))
    if rule is None:
        rule = gauss_jacobi(48 + int(1.5 * float(np.max(np.abs(w)))), nu, b - 1)
    u = rule.nodes.reshape((-1,) + (1,) * w.ndim)
    weights = rule.weights.reshape(u.shape)
    vals = bessel_i(b, u * w) * np.exp((1 - u) * w * t)
    out = np.sum(weights * vals, axis=0) / np.sum(rule.weights)
    return complex(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def _derivative_terms(m):
    """Symbolic m-th u-derivative of F(u) = I_tilde(b, u w) e^{(1-u) w t}.

    Terms are keyed (p, j, a, n) with rational coefficients, standing for

        coeff * u^p * w^a * t^n * I_tilde(b+j, u w) * e^{(1-u) w t},

    built from d/du I_tilde(beta, u w) = (u w^2 / 2) I_tilde(beta+1, u w).
    """
    terms = {(0, 0, 0, 0): Fraction(1)}
    for _ in range(m):
        nxt = {}

        def bump(key, c):
            nxt[key] = nxt.get(key, Fraction(0)) + c

        for (p, j, a, n), c in terms.items():
            if p > 0:
                bump((p - 1, j, a, n), c * p)
            bump((p + 1, j + 1, a + 2, n), c / 2)
            bump((p, j, a + 1, n + 1), -c)
        terms = {k: v for k, v in nxt.items() if v != 0}
    return terms


def default_continuation_order(b):
    return max(1, math.ceil(-b) + 1)


def eval_continuation(b, nu, w, t, order=None):
    """Analytic-continuation route, valid for all b > -nu-1:

    principal Taylor part (closed form, entire in b) plus the remainder

        R = b Gamma(b+nu+1)/Gamma(nu+1) *
            int_0^1 u^{b+m-1}(1-u)^nu [int_0^1 F^{(m)}(u tau) (1-tau)^{m-1}/(m-1)! dtau] du,

    where the inner 1-D integral is the collapsed simplex integral: the
    m-fold iterated Taylor remainder integrand depends on its innermost
    coordinate only, and the ordered coordinates above tau fill a simplex of
    volume (1-tau)^{m-1}/(m-1)!."""
    _check_params(b, nu)
    m = default_continuation_order(b) if order is None else int(order)
    if b + m <= 0:
        raise ValueError("continuation order m must satisfy b + m > 0")
    if np.ndim(w) > 0 or np.ndim(t) > 0:
        wb, tb = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(t, dtype=float))
        out = np.array(
            [eval_continuation(b, nu, wi, ti, order) for wi, ti in zip(wb.ravel(), tb.ravel())]
        )
        return out.reshape(wb.shape)
    w = complex(w)
    t = float(t)
    # principal part: e^{wt} sum_{k<m} sum_{2r+j=k} (w/2)^{2r} (-wt)^j / (r! j!) C_{r,j}
    principal = 0j
    for k in range(m):
        for r in range(k // 2 + 1):
            j = k - 2 * r
            principal += (
                _cont_coeff(b, nu, r, j)
                * (w / 2) ** (2 * r)
                * (-w * t) ** j
                / (math.factorial(r) * math.factorial(j))
            )
    principal *= np.exp(w * t)
    # remainder
    pref = b * math.gamma(b + nu + 1) / math.gamma(nu + 1)
    n_nodes = 40 + int(1.5 * abs(w))
    outer = gauss_jacobi(n_nodes, nu, b + m - 1)
    inner = gauss_jacobi(max(24, n_nodes // 2), m - 1, 0.0)
    v = np.outer(outer.nodes, inner.nodes)
    terms = _derivative_terms(m)
    js = sorted({j for (_, j, _, _) in terms})
    itil = {j: bessel_i_tilde(b + j, v * w) for j in js}
    expf = np.exp((1 - v) * w * t)
    fm = np.zeros_like(np.asarray(v, dtype=complex))
    for (p, j, a, n), c in terms.items():
        fm = fm + float(c) * v**p * w**a * t**n * itil[j] * expf
    g = fm @ inner.weights / math.factorial(m - 1)
    remainder = pref * np.sum(outer.weights * g)
    return complex(principal + remainder)


def _cont_coeff(b, nu, r, j):
    """C_{r,j}(b, nu) = b Gamma(b+k) / Gamma(b+r+1) / (b+nu+1)_k, k = 2r+j,
    written as a polynomial-over-Pochhammer ratio so it is regular in b."""
    k = 2 * r + j
    if k == 0:
        return 1.0
    num = b
    for i in range(r + 1, k):
        num *= b + i
    den = 1.0
    for i in range(k):
        den *= b + nu + 1 + i
    return num / den


def eval_double_series(b, nu, w, t, cap=SERIES_CAP):
    """Double power series cross-check (stated without proof in the source of
    the formula; treat discrepancies as findings, not failures):

        sum_{m,n} (nu+1)_n (b)_{2m} / ((b+nu+1)_{2m+n} (b+1)_m)
                  (w/2)^{2m} (w t)^n / (m! n!).
    """
    _check_params(b, nu)
    if b <= 0:
        raise ValueError("double series requires b > 0")
    w = complex(w)
    t = float(t)
    total = 0j
    row_head = 1.0 + 0j  # term at (m, 0)
    peak = small = 0
    for m in range(cap):
        term = row_head
        row_sum = 0j
        for n in range(cap):
            row_sum += term
            if abs(term) < SERIES_EPS * max(abs(total + row_sum), 1e-300):
                break
            term *= (nu + 1 + n) * (w * t) / ((b + nu + 1 + 2 * m + n) * (n + 1))
        else:
            raise SeriesError("double series inner loop did not converge")
        total += row_sum
        peak = max(peak, abs(total))
        if abs(row_sum) < SERIES_EPS * max(peak, 1e-300):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
        row_head *= (
            (b + 2 * m)
            * (b + 2 * m + 1)
            / ((b + nu + 1 + 2 * m) * (b + nu + 2 + 2 * m) * (b + 1 + m))
            * (w / 2) ** 2
            / (m + 1)
        )
    raise SeriesError("double series did not converge")


@dataclass(frozen=True)
class RoutedValue:
    value: complex
    route: str


def eval_auto(b, nu, w, t):
    """Route dispatch: Beta integral when b is safely positive and |w| is
    moderate, else the defining series, else analytic continuation."""
    _check_params(b, nu)
    if np.ndim(w) > 0 or np.ndim(t) > 0:
        wb, tb = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(t, dtype=float))
        out = np.empty(wb.shape, dtype=complex)
        small = np.abs(wb) <= 30
        routes = set()
        if np.any(small):
            moderate = eval_beta_integral if b >= 0.25 else eval_series
            out[small] = moderate(b, nu, wb[small], tb[small])
            routes.add("beta_integral" if b >= 0.25 else "series")
        if np.any(~small):
            out[~small] = eval_continuation(b, nu, wb[~small], tb[~small])
            routes.add("continuation")
        return RoutedValue(out, "+".join(sorted(routes)))
    if b >= 0.25 and abs(complex(w)) <= 30:
        return RoutedValue(eval_beta_integral(b, nu, w, t), "beta_integral")
    if abs(complex(w)) <= 30:
        return RoutedValue(eval_series(b, nu, w, t), "series")
    return RoutedValue(eval_continuation(b, nu, w, t), "continuation")


def bound_constants(b, nu, order=None):
    """Constructive constants (C, M) with

        |scriptI(b, nu; w, t)| <= C (1 + |w|)^M e^{|Re w|}

    for all complex w and t in [-1, 1], assembled from the continuation
    route: the principal part is bounded term by term (|t| <= 1 and
    |e^{wt}| <= e^{|Re w|} for real t), and the remainder through the
    polynomial-exponential Bessel bounds."""
    _check_params(b, nu)
    m = default_continuation_order(b) if order is None else int(order)
    if b + m <= 0:
        raise ValueError("order must satisfy b + m > 0")
    c_prin = 0.0
    for k in range(m):
        for r in range(k // 2 + 1):
            j = k - 2 * r
            c_prin += abs(_cont_coeff(b, nu, r, j)) / (
                4**r * math.factorial(r) * math.factorial(j)
            )
    c_f = 0.0
    m_f = 0
    for (p, j, a, n), c in _derivative_terms(m).items():
        cb, mb = bessel_tilde_bound_constants(b + j)
        c_f += abs(float(c)) * cb
        m_f = max(m_f, a + mb)
    pref = abs(b) * math.gamma(b + nu + 1) / math.gamma(nu + 1)
    beta_mass = math.gamma(b + m) * math.gamma(nu + 1) / math.gamma(b + m + nu + 1)
    c_rem = pref * beta_mass * c_f / math.factorial(m)
    return c_prin + c_rem, max(m - 1, m_f)
