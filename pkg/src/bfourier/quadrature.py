"""Weighted Gaussian quadrature rules, sphere product rules, and rules on
R^N with the measure |x|^{2b} dx.

All 1-D Gaussian rules are built from the three-term recurrence coefficients
of the matching orthogonal polynomials via the symmetric tridiagonal
eigenproblem (Golub-Welsch).  Every constructor runs a moment self-test
against closed-form moments and raises if it fails.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.linalg import eigh_tridiagonal

from .params import DeformationParams, unit_sphere_volume

_SELFTEST_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights with a tag describing the analytic weight function.

    nodes: shape (n,) for 1-D rules, (n, N) for sphere/ball rules.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: str
    weight_tag: str
    exactness_degree: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be strictly positive")

    def integrate(self, f):
        """Sum of weights * f(node); f takes a scalar (1-D) or a point row."""
        vals = np.array([f(x) for x in self.nodes])
        return np.sum(self.weights * vals)

    def to_csv(self, path):
        pts = self.nodes if self.nodes.ndim == 2 else self.nodes[:, None]
        dim = pts.shape[1]
        header = ",".join(f"x{i+1}" for i in range(dim)) + ",weight"
        rows = np.column_stack([pts, self.weights])
        np.savetxt(path, rows, delimiter=",", header=header, comments="")


def _golub_welsch(diag, offdiag, mass):
    """Nodes and weights from Jacobi-matrix recurrence coefficients.

    diag[k] = a_k, offdiag[k] = sqrt(b_{k+1}), mass = integral of the weight.
    Nodes are the Jacobi-matrix eigenvalues; weights are recovered from the
    Christoffel function, w_i = mass / sum_k p_k(x_i)^2 with orthonormal
    polynomials p_k, which keeps exponentially small weights accurate where
    LAPACK eigenvector components would underflow.
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if len(diag) == 1:
        return np.array([diag[0]]), np.array([mass])
    nodes = eigh_tridiagonal(diag, offdiag, eigvals_only=True)
    prev = np.ones_like(nodes)
    cur = (nodes - diag[0]) / offdiag[0]
    total = prev**2 + cur**2
    for k in range(1, len(diag) - 1):
        nxt = ((nodes - diag[k]) * cur - offdiag[k - 1] * prev) / offdiag[k]
        prev, cur = cur, nxt
        total += cur**2
    return nodes, mass / total


def _moment_selftest(rule, moment, degrees):
    for d in degrees:
        approx = np.sum(rule.weights * rule.nodes**d)
        exact = moment(d)
        scale = max(abs(exact), np.sum(rule.weights))
        if abs(approx - exact) > _SELFTEST_TOL * scale:
            raise ArithmeticError(
                f"rule {rule.weight_tag}: moment {d} error "
                f"{abs(approx - exact) / scale:.2e}"
            )


def _test_degrees(n):
    top = 2 * n - 1
    return sorted({0, 1, 2, min(5, top), min(13, top), min(31, top)})


def gauss_legendre(n):
    """n-node Gauss-Legendre rule on [-1, 1]."""
    if not 1 <= n <= 512:
        raise ValueError("node count out of range")
    diag, off, mass = _jacobi_recurrence(n, 0.0, 0.0)
    nodes, weights = _golub_welsch(diag, off, mass)
    rule = QuadratureRule(nodes, weights, "SymmetricInterval", "1 on [-1,1]", 2 * n - 1)
    _moment_selftest(rule, lambda d: 2.0 / (d + 1) if d % 2 == 0 else 0.0, _test_degrees(n))
    return rule


def _jacobi_recurrence(n, alpha, beta):
    """Recurrence coefficients for the weight (1-x)^alpha (1+x)^beta on [-1,1]."""
    k = np.arange(n, dtype=float)
    s = alpha + beta
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (s + 2)
    if n > 1:
        kk = k[1:]
        diag[1:] = (beta**2 - alpha**2) / ((2 * kk + s) * (2 * kk + s + 2))
    off = np.empty(max(n - 1, 0))
    if n > 1:
        # k = 1 written with the (1+alpha+beta) factor cancelled so that the
        # Chebyshev-type case alpha+beta = -1 is regular
        off[0] = math.sqrt(4 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s)))
        kk = k[2:]
        off[1:] = np.sqrt(
            4 * kk * (kk + alpha) * (kk + beta) * (kk + s)
            / ((2 * kk + s) ** 2 * (2 * kk + s + 1) * (2 * kk + s - 1))
        )
    mass = math.exp(
        (s + 1) * math.log(2)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(s + 2)
    )
    return diag, off, mass


def _jacobi_symmetric(n, a):
    """Rule on [-1,1] for the even weight (1-x^2)^a."""
    diag, off, mass = _jacobi_recurrence(n, a, a)
    nodes, weights = _golub_welsch(diag, off, mass)
    return nodes, weights


def gauss_jacobi(n, alpha, beta):
    """n-node rule on [0,1] for the weight u^beta (1-u)^alpha.

    Total mass is B(beta+1, alpha+1); exactness degree 2n-1.
    """
    if alpha <= -1 or beta <= -1:
        raise ValueError("gauss_jacobi requires alpha, beta > -1")
    diag, off, mass = _jacobi_recurrence(n, alpha, beta)
    x, w = _golub_welsch(diag, off, mass)
    nodes = (1 + x) / 2
    weights = w / 2 ** (alpha + beta + 1)
    rule = QuadratureRule(
        nodes, weights, "UnitInterval", f"u^{beta}(1-u)^{alpha} on [0,1]", 2 * n - 1
    )

    def moment(d):
        return math.exp(
            math.lgamma(beta + 1 + d) + math.lgamma(alpha + 1) - math.lgamma(alpha + beta + 2 + d)
        )

    _moment_selftest(rule, moment, _test_degrees(n))
    return rule


def gauss_laguerre_gen(n, alpha):
    """n-node rule on [0, inf) for the weight t^alpha e^{-t}."""
    if alpha <= -1:
        raise ValueError("gauss_laguerre_gen requires alpha > -1")
    k = np.arange(n, dtype=float)
    diag = 2 * k + alpha + 1
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    nodes, weights = _golub_welsch(diag, off, math.gamma(alpha + 1))
    rule = QuadratureRule(
        nodes, weights, "HalfLine", f"t^{alpha} e^(-t) on [0,inf)", 2 * n - 1
    )
    _moment_selftest(
        rule,
        lambda d: math.exp(math.lgamma(alpha + 1 + d)),
        [d for d in _test_degrees(n) if d <= 25],
    )
    return rule


def _sphere_nodes_weights(N, order):
    if N == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if N == 2:
        m = 2 * (order + 2)
        theta = 2 * np.pi * np.arange(m) / m
        nodes = np.column_stack([np.cos(theta), np.sin(theta)])
        return nodes, np.full(m, 2 * np.pi / m)
    # N >= 3: polar coordinate t = x_1, remaining direction on S^{N-2};
    # surface measure factorizes as (1-t^2)^{(N-3)/2} dt  x  dS^{N-2}
    n_t = order + 2
    t, wt = _jacobi_symmetric(n_t, (N - 3) / 2)
    sub_nodes, sub_weights = _sphere_nodes_weights(N - 1, order)
    sin_t = np.sqrt(1 - t**2)
    nodes = []
    weights = []
    for ti, sti, wi in zip(t, sin_t, wt):
        for eta, we in zip(sub_nodes, sub_weights):
            nodes.append(np.concatenate([[ti], sti * eta]))
            weights.append(wi * we)
    return np.array(nodes), np.array(weights)


def sphere_rule(N, order):
    """Quadrature on the unit sphere S^{N-1}, exact for spherical polynomials
    of total degree <= order.  N=1 is the two-point set {+-1} with counting
    measure; total mass is vol(S^{N-1}) = 2 pi^{N/2} / Gamma(N/2)."""
    if not 1 <= N <= 4:
        raise ValueError("sphere_rule supports 1 <= N <= 4")
    nodes, weights = _sphere_nodes_weights(N, order)
    rule = QuadratureRule(
        nodes, weights, f"Sphere({N})", "surface measure", order
    )
    vol = unit_sphere_volume(N)
    mass = np.sum(weights)
    if abs(mass - vol) > _SELFTEST_TOL * vol:
        raise ArithmeticError("sphere rule mass mismatch")
    first = np.abs(weights @ nodes).max()
    second = nodes.T @ (weights[:, None] * nodes)
    if first > _SELFTEST_TOL * vol or np.abs(second - vol / N * np.eye(N)).max() > _SELFTEST_TOL * vol:
        raise ArithmeticError("sphere rule symmetry moment mismatch")
    return rule


def weighted_ball_rule(params, radial_nodes, sphere_order, radial_map="gaussian_full", radius=None):
    """Product rule for integrals against |x|^{2b} dx on R^N or a ball.

    radial_map:
      "gaussian_full" -- half-line rule in t=r^2 with the factor e^{-r^2}
        absorbed; integrands must decay at least like e^{-|x|^2}.
      "gaussian_half" -- same but scaled for integrands decaying like
        e^{-|x|^2/2} (single basis-function factor).
      "ball"          -- integrals over the ball of the given radius.

    The r^{2b} singularity (b < 0) lives inside the Laguerre/Jacobi weight
    and is never sampled pointwise.
    """
    b, N = params.b, params.N
    sph = sphere_rule(N, sphere_order)
    alpha = b + N / 2 - 1
    if radial_map == "gaussian_full":
        # int f |x|^{2b} dx = (1/2) int_0^inf f(sqrt(t) w) t^{b+N/2-1} dt dS
        rad = gauss_laguerre_gen(radial_nodes, alpha)
        r = np.sqrt(rad.nodes)
        rweights = 0.5 * rad.weights * np.exp(rad.nodes)
        tag = f"|x|^{2 * b} dx (Gaussian-full radial)"
    elif radial_map == "gaussian_half":
        # substitute t = r^2/2 so that e^{-|x|^2/2} integrands match e^{-t}
        rad = gauss_laguerre_gen(radial_nodes, alpha)
        r = np.sqrt(2 * rad.nodes)
        rweights = 2 ** (b + N / 2 - 1) * rad.weights * np.exp(rad.nodes)
        tag = f"|x|^{2 * b} dx (Gaussian-half radial)"
    elif radial_map == "ball":
        if radius is None or radius <= 0:
            raise ValueError("ball rule needs a positive radius")
        rad = gauss_jacobi(radial_nodes, 0.0, N + 2 * b - 1)
        r = radius * rad.nodes
        rweights = radius ** (N + 2 * b) * rad.weights
        tag = f"|x|^{2 * b} dx on ball radius {radius}"
    else:
        raise ValueError(f"unknown radial_map {radial_map!r}")
    nodes = (r[:, None, None] * sph.nodes[None, :, :]).reshape(-1, N)
    weights = (rweights[:, None] * sph.weights[None, :]).reshape(-1)
    return QuadratureRule(nodes, weights, f"RadialTimesSphere({N})", tag, 2 * radial_nodes - 1)


def adaptive_1d(f, a, b, tol=1e-10):
    """Adaptive integral of a real- or complex-valued f over [a, b]."""
    probe = f(0.5 * (a + b))
    if isinstance(probe, complex) or np.iscomplexobj(probe):
        re, ere = quad(lambda x: np.real(f(x)), a, b, epsabs=tol, epsrel=tol, limit=200)
        im, eim = quad(lambda x: np.imag(f(x)), a, b, epsabs=tol, epsrel=tol, limit=200)
        return re + 1j * im
    val, err = quad(f, a, b, epsabs=tol, epsrel=tol, limit=200)
    return val
