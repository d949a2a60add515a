"""Operator calculus on the truncated eigenbasis of the deformed harmonic
oscillator.

The basis functions are

    Phi_{ell, m, j}(x) = e^{-|x|^2/2} L_ell^{(b + lam_m)}(|x|^2) p_j(x),

with lam_m = (N-2)/2 + m and {p_j} the orthonormal degree-m spherical
harmonics from `harmonics`.  Multiplication by x_n and the deformed
derivative D_n act by ladder shifts in ell combined with the harmonic
splitting x_n p = q_plus + |x|^2 q_minus; both are realized as matrices over
a truncation (ell <= L, m <= M).  Ladder operators corrupt the top few
ell/m layers, so every identity is asserted on the truncation interior only
(margin 2, margin 4 for translation exponentials).
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .harmonics import harmonic_basis, sphere_inner_exact, split_xn_p
from .params import DeformationParams
from .specfun import laguerre, ln_gamma

BasisIndex = namedtuple("BasisIndex", ["ell", "m", "j"])


def phi_norm_sq(params, idx):
    """Squared L^2(|x|^{2b} dx) norm: Gamma(ell+b+lam+1) / (2 Gamma(ell+1))."""
    lam = params.lam(idx.m)
    return math.exp(ln_gamma(idx.ell + params.b + lam + 1) - math.log(2) - ln_gamma(idx.ell + 1))


class SpectralBasis:
    """Truncated basis with precomputed harmonic couplings.

    seed permutes the monomial seed order of every harmonic basis; all
    physical spectra must be invariant under it.
    """

    def __init__(self, params, L, M, seed=None):
        if not (0 <= L <= 64 and 0 <= M <= 12):
            raise ValueError("truncation outside the supported envelope")
        self.params = params
        self.L = L
        self.M = min(M, 1) if params.N == 1 else M
        self.seed = seed
        self.harm = {
            m: harmonic_basis(params.N, m, seed) for m in range(self.M + 1)
        }
        self.indices = [
            BasisIndex(ell, m, j)
            for m in range(self.M + 1)
            for j in range(len(self.harm[m]))
            for ell in range(L + 1)
        ]
        self.pos = {idx: i for i, idx in enumerate(self.indices)}
        self.size = len(self.indices)
        self.norms_sq = np.array([phi_norm_sq(params, idx) for idx in self.indices])
        # couplings[(m, j, n)] = (plus, minus): lists of (k, coeff) with
        # x_n p_j^{(m)} = sum plus_k p_k^{(m+1)} + |x|^2 sum minus_k p_k^{(m-1)}
        self._couplings = {}
        for m in range(self.M + 1):
            for j, el in enumerate(self.harm[m]):
                for n in range(params.N):
                    self._couplings[(m, j, n)] = self._split_coeffs(el, m, n)

    def _split_coeffs(self, el, m, n):
        plus_poly, minus_poly = split_xn_p(el, n)
        N = self.params.N
        plus = []
        if m + 1 <= self.M:
            for k, tgt in enumerate(self.harm[m + 1]):
                q, _ = sphere_inner_exact(plus_poly, tgt.poly, N)
                if q != 0:
                    plus.append((k, float(q) / math.sqrt(float(tgt.normsq * el.normsq))))
        minus = []
        if m >= 1:
            for k, tgt in enumerate(self.harm[m - 1]):
                q, _ = sphere_inner_exact(minus_poly, tgt.poly, N)
                if q != 0:
                    minus.append((k, float(q) / math.sqrt(float(tgt.normsq * el.normsq))))
        return plus, minus

    def interior_mask(self, margin):
        # At N=1 the harmonic degree is capped at 1 by the geometry itself,
        # so truncation in m is exact and only the ell-direction needs margin.
        return np.array(
            [
                idx.ell <= self.L - margin
                and (self.params.N == 1 or idx.m <= self.M - margin)
                for idx in self.indices
            ]
        )


@dataclass
class OperatorMatrix:
    """Dense complex matrix over a SpectralBasis truncation."""

    mat: np.ndarray
    basis: SpectralBasis
    tag: str
    interior_margin: int = 2
    basis_kind: str = "phi"  # "phi" (unnormalized) or "orthonormal"

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            if other.basis is not self.basis or other.basis_kind != self.basis_kind:
                raise ValueError("operator matrices live over different bases")
            return OperatorMatrix(
                self.mat @ other.mat,
                self.basis,
                f"({self.tag})({other.tag})",
                max(self.interior_margin, other.interior_margin),
                self.basis_kind,
            )
        return self.mat @ other


def _ladder_halves(basis, n):
    """Matrices for A = (x_n + D_n)/2 and B = (x_n - D_n)/2:

        A Phi_{ell, p} = -Phi_{ell-1, q_plus} + (b + lam_m + ell) Phi_{ell, q_minus}
        B Phi_{ell, p} =  Phi_{ell, q_plus} - (ell+1) Phi_{ell+1, q_minus}
    """
    p = basis.params
    A = np.zeros((basis.size, basis.size), dtype=complex)
    B = np.zeros_like(A)
    for col, idx in enumerate(basis.indices):
        plus, minus = basis._couplings[(idx.m, idx.j, n)]
        lam = p.lam(idx.m)
        for k, c in plus:
            if idx.ell >= 1:
                A[basis.pos[BasisIndex(idx.ell - 1, idx.m + 1, k)], col] += -c
            B[basis.pos[BasisIndex(idx.ell, idx.m + 1, k)], col] += c
        for k, c in minus:
            A[basis.pos[BasisIndex(idx.ell, idx.m - 1, k)], col] += (p.b + lam + idx.ell) * c
            if idx.ell + 1 <= basis.L:
                B[basis.pos[BasisIndex(idx.ell + 1, idx.m - 1, k)], col] += -(idx.ell + 1) * c
    return A, B


def build_matrix(basis, op, n=0):
    """Operator matrix over the truncated basis.

    op: one of "x", "D" (coordinate n), "raise", "lower", "weight_h"
    (the diagonal (H - |x|^2)/2), "abs_x2", "H", "euler_shifted"
    (E + (N+2b)/2 realized as (1/2) sum_n {D_n, x_n}).
    """
    p = basis.params
    size = basis.size
    if op in ("x", "D"):
        A, B = _ladder_halves(basis, n)
        mat = A + B if op == "x" else A - B
        tag = f"{op}_{n + 1}"
    elif op == "raise":
        mat = np.zeros((size, size), dtype=complex)
        for col, idx in enumerate(basis.indices):
            if idx.ell + 1 <= basis.L:
                mat[basis.pos[BasisIndex(idx.ell + 1, idx.m, idx.j)], col] = 2 * (idx.ell + 1)
        tag = "raise"
    elif op == "lower":
        mat = np.zeros((size, size), dtype=complex)
        for col, idx in enumerate(basis.indices):
            if idx.ell >= 1:
                mat[basis.pos[BasisIndex(idx.ell - 1, idx.m, idx.j)], col] = -2 * (
                    p.b + p.lam(idx.m) + idx.ell
                )
        tag = "lower"
    elif op == "weight_h":
        diag = np.array([-(p.b + p.lam(i.m) + 2 * i.ell + 1) for i in basis.indices])
        mat = np.diag(diag.astype(complex))
        tag = "weight_h"
    elif op == "abs_x2":
        mat = sum(build_matrix(basis, "x", k).mat @ build_matrix(basis, "x", k).mat
                  for k in range(p.N))
        tag = "abs_x2"
    elif op == "H":
        mat = sum(build_matrix(basis, "D", k).mat @ build_matrix(basis, "D", k).mat
                  for k in range(p.N))
        tag = "H"
    elif op == "euler_shifted":
        mat = np.zeros((size, size), dtype=complex)
        for k in range(p.N):
            xk = build_matrix(basis, "x", k).mat
            dk = build_matrix(basis, "D", k).mat
            mat = mat + 0.5 * (dk @ xk + xk @ dk)
        tag = "euler_shifted"
    else:
        raise ValueError(f"unknown operator tag {op!r}")
    return OperatorMatrix(mat, basis, tag)


# ---------------------------------------------------------------------------
# vectors and diagonal spectral actions


@dataclass
class SpectralVector:
    params: DeformationParams
    coeffs: dict  # BasisIndex -> complex

    def copy_with(self, coeffs):
        return SpectralVector(self.params, coeffs)

    def map_diagonal(self, factor):
        return self.copy_with({idx: c * factor(idx) for idx, c in self.coeffs.items()})

    def norm_sq(self):
        return sum(
            abs(c) ** 2 * phi_norm_sq(self.params, idx) for idx, c in self.coeffs.items()
        )


def apply_weight_h(params, v):
    """Diagonal action of (H - |x|^2)/2: eigenvalue -(b + lam_m + 2 ell + 1)."""
    return v.map_diagonal(lambda i: -(params.b + params.lam(i.m) + 2 * i.ell + 1))


def apply_raise(params, v, L_cap=None):
    out = {}
    for idx, c in v.coeffs.items():
        if L_cap is not None and idx.ell + 1 > L_cap:
            raise OverflowError("raise overflows the truncation")
        tgt = BasisIndex(idx.ell + 1, idx.m, idx.j)
        out[tgt] = out.get(tgt, 0j) + 2 * (idx.ell + 1) * c
    return v.copy_with(out)


def apply_lower(params, v):
    out = {}
    for idx, c in v.coeffs.items():
        if idx.ell == 0:
            continue  # lowest weight annihilated
        tgt = BasisIndex(idx.ell - 1, idx.m, idx.j)
        out[tgt] = out.get(tgt, 0j) - 2 * (params.b + params.lam(idx.m) + idx.ell) * c
    return v.copy_with(out)


def fourier_factor(ell, m):
    """Eigenvalue of the deformed Fourier transform on Phi_{ell, m, j}."""
    return (-1) ** ell * (-1j) ** m


def fourier_spectral(params, v):
    return v.map_diagonal(lambda i: fourier_factor(i.ell, i.m))


def semigroup_spectral(params, v, t):
    """e^{(t/2)(H - |x|^2)}: diagonal factor e^{-t(b + lam + 2 ell + 1)}, Re t >= 0."""
    if complex(t).real < 0:
        raise ValueError("semigroup requires Re t >= 0")
    return v.map_diagonal(
        lambda i: np.exp(-complex(t) * (params.b + params.lam(i.m) + 2 * i.ell + 1))
    )


def sobolev_norm(params, v, s):
    """Squared Sobolev-scale norm sum (1 + 2 ell + m)^s |c|^2 ||Phi||^2."""
    return sum(
        (1 + 2 * idx.ell + idx.m) ** s * abs(c) ** 2 * phi_norm_sq(params, idx)
        for idx, c in v.coeffs.items()
    )


# ---------------------------------------------------------------------------
# pointwise synthesis / analysis


def phi_eval(params, idx, x, basis=None, seed=None):
    """Pointwise value of Phi_{ell, m, j}; x of shape (N,) or (..., N)."""
    harm = basis.harm[idx.m] if basis is not None else harmonic_basis(params.N, idx.m, seed)
    el = harm[idx.j]
    x = np.asarray(x, dtype=float)
    s = np.sum(np.atleast_2d(x) ** 2, axis=-1)
    s = s.reshape(x.shape[:-1]) if x.ndim > 1 else float(s[0])
    alpha = params.b + params.lam(idx.m)
    return np.exp(-s / 2) * laguerre(idx.ell, alpha, s) * el.eval(x)


def phi_value_table(basis, pts):
    """Matrix of Phi values, shape (len(pts), basis.size)."""
    pts = np.asarray(pts, dtype=float)
    s = np.sum(pts**2, axis=1)
    gauss = np.exp(-s / 2)
    out = np.empty((len(pts), basis.size))
    pvals = {
        (m, j): el.eval(pts)
        for m, els in basis.harm.items()
        for j, el in enumerate(els)
    }
    for i, idx in enumerate(basis.indices):
        alpha = basis.params.b + basis.params.lam(idx.m)
        out[:, i] = gauss * laguerre(idx.ell, alpha, s) * pvals[(idx.m, idx.j)]
    return out


def project_function(basis, f, rule):
    """Coefficients <f, Phi>/||Phi||^2 against the weighted measure.

    The rule must absorb at least e^{-|x|^2/2} decay from f (gaussian_half);
    use gaussian_full rules only when f itself carries e^{-|x|^2} decay.
    """
    vals = np.asarray([f(x) for x in rule.nodes], dtype=complex)
    table = phi_value_table(basis, rule.nodes)
    raw = table.T @ (rule.weights * vals)
    coeffs = {
        idx: raw[i] / basis.norms_sq[i]
        for i, idx in enumerate(basis.indices)
        if abs(raw[i]) > 0
    }
    return SpectralVector(basis.params, coeffs)


def evaluate(basis, v, x):
    """Synthesis sum_idx c_idx Phi_idx(x)."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    acc = np.zeros(len(pts), dtype=complex)
    for idx, c in v.coeffs.items():
        acc += c * phi_eval(basis.params, idx, pts, basis=basis)
    return complex(acc[0]) if single else acc


def vector_to_array(basis, v):
    arr = np.zeros(basis.size, dtype=complex)
    for idx, c in v.coeffs.items():
        arr[basis.pos[idx]] = c
    return arr


def array_to_vector(basis, arr, tol=0.0):
    return SpectralVector(
        basis.params,
        {idx: arr[i] for i, idx in enumerate(basis.indices) if abs(arr[i]) > tol},
    )


# ---------------------------------------------------------------------------
# translations and group actions


def translation_expm(basis, n, t, skew_tol=1e-8):
    """Matrix exponential of t D_n in the orthonormalized basis.

    The generator conjugated by diag(||Phi||) is skew-Hermitian up to
    truncation-edge defect; the anti-skew part on the interior is the
    accuracy monitor.  Result acts on orthonormal coordinates
    c_ortho = ||Phi|| * c_phi and carries interior margin 4.
    """
    d = build_matrix(basis, "D", n).mat
    scale = np.sqrt(basis.norms_sq)
    g = (scale[:, None] * d) / scale[None, :]
    mask = basis.interior_mask(2)
    defect = np.abs((g + g.conj().T)[np.ix_(mask, mask)]).max()
    if defect > skew_tol:
        raise ArithmeticError(f"translation generator skewness defect {defect:.2e}")
    u = expm(t * g)
    return OperatorMatrix(u, basis, f"exp({t} D_{n + 1})", 4, "orthonormal")


def group_elementary_pointwise(params, element, f, x):
    """Closed-form actions of the elementary group elements on functions:

    ("M", k):     e^{-k pi i (b + N/2)} f((-1)^k x)
    ("A", a):     e^{a (b + N/2)} f(e^a x)
    ("NPlus", beta): e^{-beta |x|^2 / 2} f(x), beta >= 0
    """
    kind, val = element
    x = np.asarray(x, dtype=float)
    mu = params.b + params.N / 2
    if kind == "M":
        k = int(val)
        return np.exp(-1j * k * math.pi * mu) * f((-1) ** k * x)
    if kind == "A":
        return np.exp(val * mu) * f(math.exp(val) * x)
    if kind == "NPlus":
        if val < 0:
            raise ValueError("NPlus requires beta >= 0")
        return np.exp(-val * np.sum(x**2) / 2) * f(x)
    raise ValueError(f"unknown element {element!r}")
