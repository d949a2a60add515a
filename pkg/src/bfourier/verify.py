"""Named verification suites.

Each suite checks one family of identities and returns a report record
{suite, paper_anchor, max_err, tol, pass}; `paper_anchor` names the
mathematical statement being exercised.  Suites draw randomness from a
seeded generator, so a run is deterministic given the seed.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .params import DeformationParams
from . import scripti, kernels, pointwise, spectral
from .harmonics import harmonic_basis
from .quadrature import sphere_rule, weighted_ball_rule
from .specfun import laguerre
from .spectral import (
    BasisIndex,
    SpectralBasis,
    build_matrix,
    fourier_factor,
    phi_eval,
    phi_norm_sq,
    translation_expm,
)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    paper_anchor: str
    max_err: float
    tol: float

    @property
    def passed(self):
        return bool(self.max_err <= self.tol)

    def as_dict(self):
        return {
            "suite": self.suite,
            "paper_anchor": self.paper_anchor,
            "max_err": float(self.max_err),
            "tol": float(self.tol),
            "pass": self.passed,
        }


def _rng(config, salt):
    return np.random.default_rng([config.get("seed", 42), salt])


def _params(config):
    return DeformationParams(config.get("b", 0.5), config.get("N", 2))


def _basis(config, L=None, M=None):
    p = _params(config)
    L = min(config.get("L", 24), L or 64)
    M = min(config.get("M", 6), M or 12)
    return SpectralBasis(p, L=L, M=M, seed=config.get("basis_seed"))


# ---------------------------------------------------------------------------


def suite_scripti_routes(config):
    b = config.get("b", 0.5)
    rng = _rng(config, 1)
    errs = [0.0]
    nus = [-0.5, 0.0, 0.5, 1.5]
    ts = np.array([-1.0, -0.3, 0.0, 0.7, 1.0])
    for nu in nus:
        w = rng.uniform(-8, 8, 6) + 1j * rng.uniform(-8, 8, 6)
        routes = [scripti.eval_continuation]
        if b > -nu - 1 and b > 0:
            routes = [scripti.eval_series, scripti.eval_beta_integral, scripti.eval_continuation]
        elif b > -nu - 1:
            routes = [scripti.eval_series, scripti.eval_continuation]
        if len(routes) < 2:
            continue
        vals = [r(b, nu, w[:, None], ts[None, :]) for r in routes]
        scale = np.maximum(np.abs(vals[0]), 1.0)
        for v in vals[1:]:
            errs.append(float(np.max(np.abs(v - vals[0]) / scale)))
    # b = 0 reduction to e^{wt}
    w = rng.uniform(-5, 5, 20) + 1j * rng.uniform(-5, 5, 20)
    t = rng.uniform(-1, 1, 20)
    red = scripti.eval_continuation(0.0, 0.5, w, t)
    ewt = np.exp(w * t)
    errs.append(float(np.max(np.abs(red - ewt) / np.maximum(np.abs(ewt), 1.0))))
    return SuiteResult(
        "scripti-routes",
        "Bessel-Gegenbauer series vs Beta-integral vs analytic continuation of the deformed exponential kernel",
        max(errs),
        1e-7,
    )


def suite_scripti_bound(config):
    b = max(config.get("b", 0.5), 0.0)
    rng = _rng(config, 2)
    w = rng.uniform(-15, 15, 2000) + 1j * rng.uniform(-15, 15, 2000)
    t = rng.uniform(-1, 1, 2000)
    vals = scripti.eval_auto(b, (config.get("N", 2) - 2) / 2, w, t).value
    viol = np.abs(vals) - np.exp(np.abs(w.real))
    return SuiteResult(
        "scripti-bound",
        "exponential bound |I_{b,nu}(w,t)| <= e^{|Re w|} for b >= 0",
        float(max(np.max(viol / np.exp(np.abs(w.real))), 0.0)),
        1e-12,
    )


def suite_kernel_bounds(config):
    p = DeformationParams(max(config.get("b", 0.5), 0.0), config.get("N", 2))
    rng = _rng(config, 3)
    errs = [0.0]
    X = rng.normal(size=(2000, p.N)) * 1.5
    Y = rng.normal(size=(2000, p.N)) * 1.5
    Bv = np.array([kernels.B_kernel(p, x, y) for x, y in zip(X, Y)])
    errs.append(float(np.max(np.abs(Bv) - 1.0)))
    t = rng.uniform(0.2, 2.0, 2000)
    hv = np.array([kernels.heat_kernel(p, x, y, tt).real for x, y, tt in zip(X, Y, t)])
    errs.append(float(np.max(-hv)))  # positivity
    r = np.linalg.norm(X, axis=1)
    rho = np.linalg.norm(Y, axis=1)
    dom = t ** (-(p.b + p.N / 2)) * np.exp(-((r - rho) ** 2) / (2 * t))
    errs.append(float(np.max((hv - dom) / dom)))
    return SuiteResult(
        "kernel-bounds",
        "kernel bounds: |B_b| <= 1, heat kernel positivity and Gaussian domination",
        max(errs),
        1e-12,
    )


def gram_errors(p, L=4, M=3, seed=None, radial_nodes=40, sphere_order=14):
    """(max relative diagonal error, max off-diagonal / norm scale) of the
    quadrature Gram matrix of the oscillator basis."""
    basis = SpectralBasis(p, L=L, M=M if p.N > 1 else 1, seed=seed)
    rule = weighted_ball_rule(p, radial_nodes, sphere_order, "gaussian_full")
    tab = spectral.phi_value_table(basis, rule.nodes)
    G = tab.T @ (tab * rule.weights[:, None])
    d = np.array([phi_norm_sq(p, idx) for idx in basis.indices])
    rel = float(np.max(np.abs(np.diag(G) - d) / d))
    off = np.abs(G - np.diag(np.diag(G))) / np.sqrt(np.outer(d, d))
    return rel, float(np.max(off))


def suite_gram(config):
    p = _params(config)
    rel, off = gram_errors(p, seed=config.get("basis_seed"))
    return SuiteResult(
        "gram-orthogonality",
        "orthogonality of the Laguerre x spherical-harmonic basis in the weighted space",
        max(rel, off * 10),  # off-diagonal budget is 10x tighter
        1e-8,
    )


def oscillator_profile(ell, alpha):
    """RadialProfile of g(s) = e^{-s/2} L_ell^{(alpha)}(s) with exact
    derivatives via d/ds L_ell^{(alpha)} = -L_{ell-1}^{(alpha+1)}."""

    def lag(k, a, s):
        return laguerre(k, a, np.array([s]))[0] if k >= 0 else 0.0

    def g(s):
        return math.exp(-s / 2) * lag(ell, alpha, s)

    def dg(s):
        return math.exp(-s / 2) * (-0.5 * lag(ell, alpha, s) - lag(ell - 1, alpha + 1, s))

    def d2g(s):
        return math.exp(-s / 2) * (
            0.25 * lag(ell, alpha, s) + lag(ell - 1, alpha + 1, s) + lag(ell - 2, alpha + 2, s)
        )

    return pointwise.RadialProfile(g, dg, d2g)


def suite_oscillator(config):
    p = _params(config)
    rng = _rng(config, 4)
    errs = []
    M = 3 if p.N > 1 else 1
    for m in range(M + 1):
        harm = harmonic_basis(p.N, m, seed=config.get("basis_seed"))[0]
        lam = p.lam(m)
        for ell in range(3):
            prof = oscillator_profile(ell, p.b + lam)
            eig = -(p.b + lam + 2 * ell + 1)
            for _ in range(4):
                x = rng.normal(size=p.N)
                val = 0.5 * (
                    pointwise.h_apply(p, [(prof, harm)], x)
                    - np.sum(x**2) * pointwise.structured_eval([(prof, harm)], x)
                )
                ref = eig * pointwise.structured_eval([(prof, harm)], x)
                errs.append(abs(val - ref) / max(abs(ref), 1e-3))
    return SuiteResult(
        "oscillator-eigenrelation",
        "harmonic-oscillator eigenfunctions of the deformed Hamiltonian",
        max(errs),
        1e-8,
    )


def suite_spectral_algebra(config):
    p = _params(config)
    basis = _basis(config, L=16, M=4)
    N = p.N
    mats = {}
    for n in range(N):
        mats[("x", n)] = build_matrix(basis, "x", n).mat
        mats[("D", n)] = build_matrix(basis, "D", n).mat
    H = build_matrix(basis, "H").mat
    X2 = build_matrix(basis, "abs_x2").mat
    W = build_matrix(basis, "weight_h").mat
    Esh = build_matrix(basis, "euler_shifted").mat
    interior = basis.interior_mask(2)
    sub = np.ix_(interior, interior)

    def err(A):
        return float(np.max(np.abs(A[sub])))

    errs = []
    for m in range(N):
        for n in range(m + 1, N):
            errs.append(err(mats[("D", m)] @ mats[("D", n)] - mats[("D", n)] @ mats[("D", m)]))
    errs.append(err(W - 0.5 * (H - X2)))
    e = 0.5 * (Esh - 0.5 * (H + X2))
    f = 0.5 * (Esh + 0.5 * (H + X2))
    h = -W
    errs.append(err(h @ e - e @ h - 2 * e))
    errs.append(err(h @ f - f @ h + 2 * f))
    errs.append(err(e @ f - f @ e - h))
    # sl(2) brackets in the (E + (N+2b)/2, H, |x|^2) presentation
    errs.append(err(Esh @ H - H @ Esh + 2 * H))
    errs.append(err(Esh @ X2 - X2 @ Esh - 2 * X2))
    errs.append(err(H @ X2 - X2 @ H - 4 * Esh))
    return SuiteResult(
        "spectral-algebra",
        "sl(2) commutation relations and the Cayley transformed triple",
        max(errs),
        1e-10,
    )


def suite_fourier(config):
    p = _params(config)
    basis = _basis(config, L=16, M=4)
    rng = _rng(config, 5)
    n = len(basis.indices)
    F = np.diag([fourier_factor(i.ell, i.m) for i in basis.indices])
    errs = [float(np.max(np.abs(np.linalg.matrix_power(F, 4) - np.eye(n))))]
    interior = basis.interior_mask(2)
    sub = np.ix_(interior, interior)
    for k in range(p.N):
        D = build_matrix(basis, "D", k).mat.astype(complex)
        X = build_matrix(basis, "x", k).mat.astype(complex)
        Finv = np.conj(F)
        errs.append(float(np.max(np.abs((F @ D @ Finv - 1j * X)[sub]))))
        errs.append(float(np.max(np.abs((F @ X @ Finv - 1j * D)[sub]))))
    return SuiteResult(
        "fourier-intertwining",
        "fourth power of the generalized Fourier transform is the identity; transform swaps multiplication and differentiation",
        max(errs),
        1e-10,
    )


def suite_fourier_routes(config):
    p = _params(config)
    basis = SpectralBasis(p, L=6, M=3 if p.N > 1 else 1, seed=config.get("basis_seed"))
    rule = kernels.default_transform_rule(p)
    rng = _rng(config, 6)
    errs = []
    for (ell, m) in [(0, 0), (1, 1 if p.N > 1 else 0), (2, 0)]:
        idx = BasisIndex(ell, m, 0)

        def f(y, idx=idx):
            return phi_eval(p, idx, y, basis=basis)

        eig = fourier_factor(ell, m)
        for _ in range(4):
            x = rng.normal(size=p.N)
            got = kernels.fourier_quadrature(p, f, x, rule)
            ref = eig * f(x)
            errs.append(abs(got - ref) / max(abs(ref), 1e-2))
    return SuiteResult(
        "fourier-routes",
        "quadrature transform reproduces the spectral eigenvalue action on the oscillator basis",
        max(errs),
        1e-5,
    )


def suite_kernel_hille_hardy(config):
    p = _params(config)
    basis = SpectralBasis(p, L=26, M=8 if p.N > 1 else 1, seed=config.get("basis_seed"))
    rng = _rng(config, 7)
    errs = []
    for t in (0.6, 1.0 + 0.4j):
        vals, absdiff = [], []
        for _ in range(4):
            x = rng.normal(size=p.N) * 0.8
            y = rng.normal(size=p.N) * 0.8
            lam = kernels.lambda_kernel(p, x, y, t) * p.c_bN
            hh = kernels.hille_hardy_sum(basis, x, y, t, ell_max=basis.L, m_max=basis.M)
            vals.append(abs(lam))
            absdiff.append(abs(lam - hh))
        # normalize by the kernel's scale (pointwise values pass near zeros)
        errs.append(max(absdiff) / max(vals))
    return SuiteResult(
        "kernel-hille-hardy",
        "Hille-Hardy-type eigenfunction expansion of the Mehler-type kernel",
        max(errs),
        1e-6,
    )


def suite_kernel_classical(config):
    N = config.get("N", 2)
    p = DeformationParams(0.0, N)
    rng = _rng(config, 8)
    errs = []
    for _ in range(30):
        x = rng.normal(size=N)
        y = rng.normal(size=N)
        errs.append(abs(kernels.B_kernel(p, x, y) - cmath.exp(-1j * float(x @ y))))
        t = rng.uniform(0.2, 2.0)
        heat = kernels.heat_kernel(p, x, y, t) * p.c_bN
        classical = (2 * math.pi * t) ** (-N / 2) * math.exp(-float(np.sum((x - y) ** 2)) / (2 * t))
        errs.append(abs(heat - classical))
    return SuiteResult(
        "kernel-classical-reduction",
        "b = 0 kernels reduce to the plane wave and the Gaussian heat kernel",
        max(errs),
        1e-12,
    )


def suite_kernel_1d(config):
    b = config.get("b", 0.5)
    p = DeformationParams(b, 1)
    rng = _rng(config, 9)
    errs = []
    for _ in range(30):
        x = np.array([rng.uniform(-2, 2)])
        y = np.array([rng.uniform(-2, 2)])
        errs.append(abs(kernels.B_kernel(p, x, y) - kernels.B_kernel_1d(b, x[0], y[0])))
        t = rng.uniform(0.3, 1.5)
        errs.append(abs(kernels.lambda_kernel(p, x, y, t) - kernels.lambda_kernel_1d(b, x[0], y[0], t)))
        errs.append(abs(kernels.heat_kernel(p, x, y, t) - kernels.heat_kernel_1d(b, x[0], y[0], t)))
    return SuiteResult(
        "kernel-1d-closed-form",
        "one-dimensional closed forms in terms of Bessel functions of half-integer-shifted order",
        max(errs),
        1e-10,
    )


def suite_kernel_semigroup(config):
    p = _params(config)
    rng = _rng(config, 10)
    # kernel-level composition: c int h_s(x,z) h_t(z,y) |z|^{2b} dz = h_{s+t}(x,y)
    rule = weighted_ball_rule(p, 60, 16, "ball", radius=9.0)
    errs = []
    s, t = 0.4, 0.6
    for _ in range(4):
        x = rng.normal(size=p.N) * 0.7
        y = rng.normal(size=p.N) * 0.7
        hs = kernels.heat_kernel_grid(p, x, rule.nodes, s)
        ht = kernels.heat_kernel_grid(p, y, rule.nodes, t)
        comp = p.c_bN * np.sum(rule.weights * hs * ht)
        direct = kernels.heat_kernel(p, x, y, s + t)
        errs.append(abs(comp - direct) / abs(direct))
    return SuiteResult(
        "kernel-semigroup",
        "heat semigroup composition e^{(s+t)H/2} = e^{sH/2} e^{tH/2}",
        float(max(errs)),
        1e-5,
    )


def suite_dunkl_forms(config):
    p = _params(config)
    if p.N < 2:
        return SuiteResult("dunkl-forms", "reflection vs surface-integral form of the deformed derivative", 0.0, 1e-8)
    rng = _rng(config, 11)

    def f(y):
        return math.exp(-0.3 * float(np.sum(y**2))) * (1 + y[0] + 0.5 * y[0] * y[-1])

    def grad(y):
        g = -0.6 * y * f(y)
        e = math.exp(-0.3 * float(np.sum(y**2)))
        g[0] += e * (1 + 0.5 * y[-1])
        g[-1] += e * 0.5 * y[0]
        return g

    errs = []
    for n in range(p.N):
        for _ in range(4):
            x = rng.normal(size=p.N)
            a = pointwise.d_apply(p, n, f, grad, x)
            s = pointwise.d_apply_surface(p, n, f, grad, x)
            errs.append(abs(a - s))
    return SuiteResult(
        "dunkl-forms",
        "reflection vs surface-integral form of the deformed derivative",
        max(errs),
        1e-8,
    )


def suite_dunkl_commutator(config):
    p = _params(config)
    rng = _rng(config, 12)

    def f(y):
        return math.exp(-0.4 * float(np.sum(y**2))) * (1 + y[0] - 0.3 * y[-1] ** 2)

    def grad(y):
        g = -0.8 * y * f(y)
        e = math.exp(-0.4 * float(np.sum(y**2)))
        g[0] += e
        g[-1] += e * (-0.6 * y[-1])
        return g

    errs = []
    for m in range(p.N):
        for n in range(p.N):
            x = rng.normal(size=p.N)
            errs.append(abs(pointwise.commutator_dx(p, m, n, f, grad, x)[2]))
    return SuiteResult(
        "dunkl-commutator",
        "Weyl-type commutation relation [D_m, x_n] = delta_{mn} + reflection term",
        max(errs),
        1e-6,
    )


def suite_dunkl_vs_matrix(config):
    p = _params(config)
    basis = SpectralBasis(p, L=6, M=4 if p.N > 1 else 1, seed=config.get("basis_seed"))
    D = build_matrix(basis, "D", 0)
    rng = _rng(config, 13)
    errs = []
    cases = [(1, 1, 0), (2, 2, 0)] if p.N > 1 else [(1, 0, 0), (2, 0, 0)]
    for (ell, m, j) in cases:
        idx = BasisIndex(ell, m, j)
        pos = basis.pos[idx]
        col = D.mat[:, pos]
        harm = basis.harm[m][j]
        lam = p.lam(m)

        def f(y, ell=ell, harm=harm, lam=lam):
            s = float(np.sum(np.asarray(y) ** 2))
            return math.exp(-s / 2) * laguerre(ell, p.b + lam, np.array([s]))[0] * harm.eval(y)

        def grad(y, f=f, h=1e-6):
            y = np.asarray(y, dtype=float)
            g = np.zeros(p.N)
            for k in range(p.N):
                e = np.zeros(p.N)
                e[k] = h
                g[k] = (f(y + e) - f(y - e)) / (2 * h)
            return g

        for _ in range(5):
            x = rng.normal(size=p.N) * 1.2
            val = pointwise.d_apply(p, 0, f, grad, x)
            ref = sum(
                col[q] * phi_eval(p, basis.indices[q], x, basis=basis)
                for q in range(len(col))
                if col[q] != 0
            )
            errs.append(abs(val - ref))
    return SuiteResult(
        "dunkl-vs-matrix",
        "pointwise deformed derivative matches its spectral matrix on the oscillator basis",
        max(errs),
        1e-5,
    )


def suite_sphere_lemmas(config):
    N = config.get("N", 2)
    if N < 2:
        return SuiteResult("sphere-lemmas", "reflection-weighted sphere integral identities", 0.0, 1e-7)
    rng = _rng(config, 14)
    errs = []
    for _ in range(3):
        w = rng.normal(size=N)
        w /= np.linalg.norm(w)
        errs.append(
            pointwise.inte_residual(
                N, lambda mu: math.exp(0.7 * mu[0]) * (1 + 0.3 * mu[-1]), w, order=20
            )
        )
    for m in (0, 1, 2, 3):
        harm = harmonic_basis(N, m, seed=config.get("basis_seed"))[0]
        w = rng.normal(size=N)
        w /= np.linalg.norm(w)
        errs.extend(pointwise.sph_residuals(N, harm, 0, w, order=20))
    for eps in (0.1, 0.3):
        x = rng.normal(size=N) * 1.5
        errs.append(pointwise.sphereint_residual(N, x, 0, eps * float(np.linalg.norm(x))))
    return SuiteResult(
        "sphere-lemmas",
        "reflection-weighted sphere integral identities and the zonal derivative formula",
        max(errs),
        1e-7,
    )


def suite_green(config):
    p = _params(config)
    rng = _rng(config, 15)

    def F(y):
        return math.exp(-0.5 * float(np.sum(y**2))) * (1 + y[0])

    def gF(y):
        g = -y * F(y)
        g[0] += math.exp(-0.5 * float(np.sum(y**2)))
        return g

    def G(y):
        return math.exp(-0.3 * float(np.sum(y**2))) * (1 - 0.4 * y[-1])

    def gG(y):
        g = -0.6 * y * G(y)
        g[-1] += -0.4 * math.exp(-0.3 * float(np.sum(y**2)))
        return g

    errs = [pointwise.green_residual(p, n, F, gF, G, gG, R=2.5) for n in range(p.N)]
    return SuiteResult(
        "green-formula",
        "weighted integration by parts on balls with sphere boundary term",
        max(errs),
        1e-6,
    )


def suite_translation(config):
    p = _params(config)
    basis = _basis(config, L=20, M=4)
    errs = []
    for t in (0.3, -0.7):
        U = translation_expm(basis, 0, t)
        interior = basis.interior_mask(4)
        sub = np.ix_(interior, interior)
        G = (U.mat.conj().T @ U.mat - np.eye(len(basis.indices)))[sub]
        errs.append(float(np.max(np.abs(G))))
    return SuiteResult(
        "translation-unitarity",
        "generalized translation one-parameter group is unitary",
        max(errs),
        1e-8,
    )


def suite_translation_classical(config):
    p = DeformationParams(0.0, 1)
    basis = SpectralBasis(p, L=40, M=1)
    t = 0.5
    U = translation_expm(basis, 0, t)
    # expand a Gaussian-localized function, translate, compare pointwise
    rule = kernels.default_transform_rule(p, radial_nodes=60, sphere_order=2)

    def f(y):
        z = np.asarray(y).reshape(-1)[0]
        return math.exp(-((z - 0.4) ** 2))

    v = spectral.project_function(basis, f, rule)
    arr = spectral.vector_to_array(basis, v)
    # convert to orthonormal coordinates, apply, convert back
    scale = np.sqrt(basis.norms_sq)
    out = U.mat @ (arr * scale) / scale
    w = spectral.array_to_vector(basis, out)
    errs = []
    for z in np.linspace(-1.5, 1.5, 9):
        got = spectral.evaluate(basis, w, np.array([z]))
        errs.append(abs(got - f(np.array([z + t]))))
    return SuiteResult(
        "translation-classical-shift",
        "b = 0 generalized translation reduces to the classical shift",
        float(max(np.abs(errs))),
        1e-4,
    )


def suite_wave(config):
    b = max(config.get("b", 0.5), 0.0)
    v0 = lambda x: np.zeros_like(x)
    u0 = lambda x: np.where(
        (np.abs(x) > 1) & (np.abs(x) < 2), np.sin(np.pi * (np.abs(x) - 1)) ** 4, 0.0
    )
    res = pointwise.wave_evolve_1d(b, u0, v0, X=4.0, dx=0.005, dt=0.0045, T=0.4, annulus=(0.5, 2.5))
    xs, u = res["xs"], res["frames"][-1]
    mask = (np.abs(xs) < 0.6) | (np.abs(xs) > 2.4)
    leak = float(np.max(np.abs(u[mask])) / np.max(np.abs(res["frames"][0])))
    E = res["energies"]
    drift = float(np.max(np.diff(E))) if len(E) > 1 else 0.0
    return SuiteResult(
        "wave-propagation",
        "finite propagation speed and monotone annulus energy for the deformed wave equation",
        max(leak, drift * (1e-4 / 1e-10)),  # drift budget 1e-10/step scaled to the leak tolerance
        1e-4,
    )


SUITES = {
    "scripti-routes": suite_scripti_routes,
    "scripti-bound": suite_scripti_bound,
    "kernel-bounds": suite_kernel_bounds,
    "gram-orthogonality": suite_gram,
    "oscillator-eigenrelation": suite_oscillator,
    "spectral-algebra": suite_spectral_algebra,
    "fourier-intertwining": suite_fourier,
    "fourier-routes": suite_fourier_routes,
    "kernel-hille-hardy": suite_kernel_hille_hardy,
    "kernel-classical-reduction": suite_kernel_classical,
    "kernel-1d-closed-form": suite_kernel_1d,
    "kernel-semigroup": suite_kernel_semigroup,
    "dunkl-forms": suite_dunkl_forms,
    "dunkl-commutator": suite_dunkl_commutator,
    "dunkl-vs-matrix": suite_dunkl_vs_matrix,
    "sphere-lemmas": suite_sphere_lemmas,
    "green-formula": suite_green,
    "translation-unitarity": suite_translation,
    "translation-classical-shift": suite_translation_classical,
    "wave-propagation": suite_wave,
}


def run_suites(config, names=None):
    """Run the named suites (all when names is None); returns results sorted
    by suite name."""
    if names is None:
        names = sorted(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite: {name}")
        results.append(SUITES[name](config))
    return sorted(results, key=lambda r: r.suite)
