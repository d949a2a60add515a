"""Closed-form integral kernels and their quadrature-realized transforms.

Three kernels, all built from scriptI with nu = (N-2)/2:

    Lambda(x, y; t) = sinh(t)^{-(b+N/2)} e^{-(r^2+rho^2)/(2 tanh t)}
                      scriptI(b, nu; r rho / sinh t, cos theta)
    h(x, y; t)      = t^{-(b+N/2)} e^{-(r^2+rho^2)/(2t)}
                      scriptI(b, nu; r rho / t, cos theta)
    B(x, y)         = scriptI(b, nu; -i r rho, cos theta)

Fractional powers use exp(mu * log(.)) with the principal logarithm, which
is taken continuously from the open right half-plane Re t > 0 onto its
boundary; for sinh this is realized through
log sinh t = t - log 2 + log1p(-e^{-2t}), whose last term stays in the right
half-disc for Re t >= 0 away from the zeros of sinh.
"""

import cmath
import math

import numpy as np

from .quadrature import gauss_jacobi, weighted_ball_rule
from .scripti import eval_auto, eval_series
from .specfun import bessel_j, bessel_j_tilde, bessel_i_tilde


def kernel_geometry(x, y):
    """(r, rho, cos theta) for a pair of points; cos theta = 0 when either
    vanishes (harmless: the w-argument of scriptI is 0 there)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = float(np.linalg.norm(x))
    rho = float(np.linalg.norm(y))
    if r * rho == 0:
        return r, rho, 0.0
    c = float(x @ y) / (r * rho)
    return r, rho, min(1.0, max(-1.0, c))


def _log_sinh(t):
    """Principal-branch log(sinh t), continuous on Re t >= 0 off sinh zeros."""
    t = complex(t)
    return t - math.log(2) + np.log1p(-cmath.exp(-2 * t))


def _check_time(t, name):
    t = complex(t)
    if t.real < 0:
        raise ValueError(f"{name} requires Re t >= 0")
    return t


def _scripti(params, w, t):
    return eval_auto(params.b, (params.N - 2) / 2, w, t).value


def lambda_kernel(params, x, y, t):
    """Mehler-type kernel of the semigroup generated by (H - |x|^2)/2."""
    t = _check_time(t, "lambda_kernel")
    if abs(cmath.sinh(t)) < 1e-12:
        raise ValueError("t must stay away from the zeros of sinh")
    r, rho, c = kernel_geometry(x, y)
    mu = params.b + params.N / 2
    sinh = cmath.exp(_log_sinh(t))
    coth = cmath.cosh(t) / sinh
    return (
        cmath.exp(-mu * _log_sinh(t))
        * cmath.exp(-(r**2 + rho**2) / 2 * coth)
        * _scripti(params, r * rho / sinh, c)
    )


def heat_kernel(params, x, y, t):
    """Heat kernel of the semigroup generated by H/2."""
    t = _check_time(t, "heat_kernel")
    if t == 0:
        raise ValueError("heat kernel undefined at t = 0")
    r, rho, c = kernel_geometry(x, y)
    mu = params.b + params.N / 2
    return (
        cmath.exp(-mu * cmath.log(t))
        * cmath.exp(-(r**2 + rho**2) / (2 * t))
        * _scripti(params, r * rho / t, c)
    )


def heat_kernel_grid(params, x, Y, t):
    """heat_kernel(params, x, y, t) vectorized over the rows of Y."""
    t = _check_time(t, "heat_kernel_grid")
    if t == 0:
        raise ValueError("heat kernel undefined at t = 0")
    x = np.asarray(x, dtype=float)
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    r = float(np.linalg.norm(x))
    rho = np.linalg.norm(Y, axis=1)
    denom = np.where(r * rho == 0, 1.0, r * rho)
    c = np.clip((Y @ x) / denom, -1.0, 1.0)
    c[r * rho == 0] = 0.0
    mu = params.b + params.N / 2
    return (
        cmath.exp(-mu * cmath.log(t))
        * np.exp(-(r**2 + rho**2) / (2 * t))
        * _scripti(params, r * rho / t, c)
    )


def B_kernel(params, x, y):
    """Kernel of the deformed Fourier transform; |B| <= 1 for b >= 0."""
    r, rho, c = kernel_geometry(x, y)
    return _scripti(params, -1j * r * rho, c)


def B_kernel_grid(params, x, Y):
    """B_kernel(params, x, y) vectorized over the rows of Y."""
    x = np.asarray(x, dtype=float)
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    r = float(np.linalg.norm(x))
    rho = np.linalg.norm(Y, axis=1)
    denom = np.where(r * rho == 0, 1.0, r * rho)
    c = np.clip((Y @ x) / denom, -1.0, 1.0)
    c[r * rho == 0] = 0.0
    return _scripti(params, -1j * r * rho, c)


def B_kernel_beta_form(params, x, y, rule=None):
    """Beta-integral realization (b > 0 only):

        B(x,y) = 1/B(b, N/2) int_0^1 u^{b-1}(1-u)^{N/2-1}
                 Jscript(b, u r rho) e^{-i(1-u)<x,y>} du.
    """
    b, N = params.b, params.N
    if b <= 0:
        raise ValueError("Beta-integral kernel form requires b > 0")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r, rho, c = kernel_geometry(x, y)
    if rule is None:
        rule = gauss_jacobi(48 + int(1.5 * r * rho), N / 2 - 1, b - 1)
    u = rule.nodes
    vals = bessel_j(b, u * r * rho) * np.exp(-1j * (1 - u) * float(x @ y))
    return complex(np.sum(rule.weights * vals) / np.sum(rule.weights))


# --- N = 1 closed forms ----------------------------------------------------


def B_kernel_1d(b, x, y):
    """Closed form at N=1: Gamma(b+1/2)(J~_{b-1/2}(xy) - i (xy/2) J~_{b+1/2}(xy))."""
    z = float(x) * float(y)
    g = math.gamma(b + 0.5)
    return g * (bessel_j_tilde(b - 0.5, z) - 1j * (z / 2) * bessel_j_tilde(b + 0.5, z))


def lambda_kernel_1d(b, x, y, t):
    """Closed form at N=1 of the Mehler-type kernel."""
    t = _check_time(t, "lambda_kernel_1d")
    sinh = cmath.exp(_log_sinh(t))
    coth = cmath.cosh(t) / sinh
    z = float(x) * float(y) / sinh
    g = math.gamma(b + 0.5)
    return (
        g
        * cmath.exp(-(b + 0.5) * _log_sinh(t))
        * cmath.exp(-(x**2 + y**2) / 2 * coth)
        * (bessel_i_tilde(b - 0.5, z) + (z / 2) * bessel_i_tilde(b + 0.5, z))
    )


def heat_kernel_1d(b, x, y, t):
    """Closed form at N=1 of the heat kernel."""
    t = _check_time(t, "heat_kernel_1d")
    z = float(x) * float(y) / t
    g = math.gamma(b + 0.5)
    return (
        g
        * cmath.exp(-(b + 0.5) * cmath.log(t))
        * cmath.exp(-(x**2 + y**2) / (2 * t))
        * (bessel_i_tilde(b - 0.5, z) + (z / 2) * bessel_i_tilde(b + 0.5, z))
    )


# --- quadrature-realized transforms ----------------------------------------


def default_transform_rule(params, radial_nodes=48, sphere_order=16):
    """Rule for transforms of functions with e^{-|x|^2/2}-class decay."""
    return weighted_ball_rule(params, radial_nodes, sphere_order, "gaussian_half")


def fourier_quadrature(params, f, x, rule, conjugate=False):
    """Deformed Fourier transform c_{b,N} int B(x,y) f(y) |y|^{2b} dy.

    f must decay at least like e^{-|y|^2/2} (the rule's weight absorbs
    exactly that factor); conjugate=True applies the inverse kernel.
    """
    vals = np.asarray([f(y) for y in rule.nodes], dtype=complex)
    kern = B_kernel_grid(params, x, rule.nodes)
    if conjugate:
        kern = kern.conj()
    return params.c_bN * complex(np.sum(rule.weights * kern * vals))


def semigroup_quadrature(params, f, x, t, rule):
    """e^{(t/2)(H - |x|^2)} f(x) as a Lambda-kernel integral, Re t > 0."""
    if complex(t).real <= 0:
        raise ValueError("semigroup quadrature requires Re t > 0")
    vals = np.asarray([f(y) for y in rule.nodes], dtype=complex)
    kern = np.asarray([lambda_kernel(params, x, y, t) for y in rule.nodes])
    return params.c_bN * complex(np.sum(rule.weights * kern * vals))


def heat_apply(params, f, x, t, rule):
    """e^{(t/2) H} f(x) as a heat-kernel integral, Re t > 0."""
    if complex(t).real <= 0:
        raise ValueError("heat semigroup requires Re t > 0")
    vals = np.asarray([f(y) for y in rule.nodes], dtype=complex)
    kern = heat_kernel_grid(params, x, rule.nodes, t)
    return params.c_bN * complex(np.sum(rule.weights * kern * vals))


def hille_hardy_sum(basis, x, y, t, ell_max=None, m_max=None):
    """Truncated eigen-expansion sum e^{-t(b+lam+2ell+1)} Phi(x) conj(Phi(y))
    / ||Phi||^2; converges to c_{b,N} Lambda(x,y;t) for Re t > 0."""
    from .spectral import phi_eval

    p = basis.params
    total = 0j
    for i, idx in enumerate(basis.indices):
        if ell_max is not None and idx.ell > ell_max:
            continue
        if m_max is not None and idx.m > m_max:
            continue
        lam = p.lam(idx.m)
        total += (
            np.exp(-complex(t) * (p.b + lam + 2 * idx.ell + 1))
            * phi_eval(p, idx, x, basis=basis)
            * np.conj(phi_eval(p, idx, y, basis=basis))
            / basis.norms_sq[i]
        )
    return total
