import math

import numpy as np
import pytest

from bfourier.kernels import default_transform_rule
from bfourier.params import DeformationParams
from bfourier.spectral import (
    BasisIndex,
    SpectralBasis,
    SpectralVector,
    apply_lower,
    apply_raise,
    apply_weight_h,
    array_to_vector,
    build_matrix,
    evaluate,
    fourier_factor,
    phi_eval,
    phi_norm_sq,
    project_function,
    translation_expm,
    vector_to_array,
)

rng = np.random.default_rng(21)


def test_norm_formula():
    p = DeformationParams(0.7, 3)
    for (ell, m) in [(0, 0), (2, 1), (4, 3)]:
        lam = p.lam(m)
        ref = math.gamma(ell + p.b + lam + 1) / (2 * math.gamma(ell + 1))
        assert abs(phi_norm_sq(p, BasisIndex(ell, m, 0)) - ref) < 1e-14 * ref


def test_ladder_matrices_commute_and_reconstruct():
    p = DeformationParams(0.5, 2)
    basis = SpectralBasis(p, L=10, M=4)
    interior = basis.interior_mask(2)
    sub = np.ix_(interior, interior)
    X0 = build_matrix(basis, "x", 0).mat
    D0 = build_matrix(basis, "D", 0).mat
    X1 = build_matrix(basis, "x", 1).mat
    # multiplication operators commute
    assert np.max(np.abs((X0 @ X1 - X1 @ X0)[sub])) < 1e-12
    # |x|^2 equals the sum of squares of coordinates
    X2 = build_matrix(basis, "abs_x2").mat
    recon = X0 @ X0 + X1 @ X1
    assert np.max(np.abs((X2 - recon)[sub])) < 1e-12
    # H equals the sum of D_n^2
    H = build_matrix(basis, "H").mat
    D1 = build_matrix(basis, "D", 1).mat
    assert np.max(np.abs((H - D0 @ D0 - D1 @ D1)[sub])) < 1e-12


def test_weight_diagonal():
    p = DeformationParams(0.5, 2)
    basis = SpectralBasis(p, L=8, M=3)
    W = build_matrix(basis, "weight_h").mat
    for k, idx in enumerate(basis.indices):
        expected = -(p.b + p.lam(idx.m) + 2 * idx.ell + 1)
        assert abs(W[k, k] - expected) < 1e-14
    off = W - np.diag(np.diag(W))
    assert np.max(np.abs(off)) == 0.0


def test_raise_lower_actions():
    p = DeformationParams(0.6, 3)
    v = SpectralVector(p, {BasisIndex(2, 1, 0): 1.0})
    up = apply_raise(p, v)
    assert up.coeffs == {BasisIndex(3, 1, 0): pytest.approx(2 * 3)}
    down = apply_lower(p, v)
    lam = p.lam(1)
    assert down.coeffs == {BasisIndex(1, 1, 0): pytest.approx(-2 * (p.b + lam + 2))}
    w = apply_weight_h(p, v)
    assert w.coeffs[BasisIndex(2, 1, 0)] == pytest.approx(-(p.b + lam + 5))
    # lowering annihilates ell = 0
    zero = apply_lower(p, SpectralVector(p, {BasisIndex(0, 2, 0): 1.0}))
    assert not zero.coeffs


def test_raise_overflow_guard():
    p = DeformationParams(0.5, 2)
    with pytest.raises(OverflowError):
        apply_raise(p, SpectralVector(p, {BasisIndex(4, 0, 0): 1.0}), L_cap=4)


def test_fourier_factor_periodicity():
    for ell in range(4):
        for m in range(4):
            f = fourier_factor(ell, m)
            assert abs(f**4 - 1) < 1e-15
            assert abs(f - (-1) ** ell * (-1j) ** m) < 1e-15


def test_truncation_envelope():
    p = DeformationParams(0.5, 2)
    with pytest.raises(ValueError):
        SpectralBasis(p, L=65, M=2)
    with pytest.raises(ValueError):
        SpectralBasis(p, L=4, M=13)


def test_basis_determinism_and_seed():
    p = DeformationParams(0.5, 3)
    a = SpectralBasis(p, L=4, M=3)
    b = SpectralBasis(p, L=4, M=3)
    assert a.indices == b.indices
    x = rng.normal(size=(6, 3))
    for m in (2, 3):
        va = a.harm[m][0].eval(x)
        vb = b.harm[m][0].eval(x)
        assert np.array_equal(va, vb)
    seeded = SpectralBasis(p, L=4, M=3, seed=5)
    assert seeded.indices == a.indices  # same index set, possibly rotated basis


def test_project_evaluate_roundtrip():
    p = DeformationParams(0.5, 2)
    basis = SpectralBasis(p, L=6, M=3)
    rule = default_transform_rule(p, radial_nodes=40, sphere_order=12)
    coeffs = {
        BasisIndex(0, 0, 0): 0.7,
        BasisIndex(2, 1, 1): -0.4,
        BasisIndex(1, 3, 0): 0.2,
    }
    target = SpectralVector(p, dict(coeffs))

    def f(x):
        return evaluate(basis, target, x)

    got = project_function(basis, f, rule)
    for idx, c in coeffs.items():
        assert abs(got.coeffs.get(idx, 0.0) - c) < 1e-10
    # array round trip
    arr = vector_to_array(basis, got)
    back = array_to_vector(basis, arr)
    for idx, c in coeffs.items():
        assert abs(back.coeffs.get(idx, 0.0) - c) < 1e-10


def test_translation_group_properties():
    p = DeformationParams(0.8, 2)
    basis = SpectralBasis(p, L=16, M=4)
    U = translation_expm(basis, 0, 0.4)
    V = translation_expm(basis, 0, -0.4)
    interior = basis.interior_mask(4)
    sub = np.ix_(interior, interior)
    n = len(basis.indices)
    # inverse at -t, unitarity on the interior
    assert np.max(np.abs((U.mat @ V.mat - np.eye(n))[sub])) < 1e-9
    assert np.max(np.abs((U.mat.conj().T @ U.mat - np.eye(n))[sub])) < 1e-9


def test_phi_eval_matches_direct_formula():
    from bfourier.specfun import laguerre

    p = DeformationParams(0.5, 2)
    basis = SpectralBasis(p, L=5, M=3)
    idx = BasisIndex(2, 2, 0)
    x = rng.normal(size=2)
    s = float(np.sum(x**2))
    lam = p.lam(2)
    harm = basis.harm[2][0]
    ref = math.exp(-s / 2) * laguerre(2, p.b + lam, np.array([s]))[0] * harm.eval(x)
    assert abs(phi_eval(p, idx, x, basis=basis) - ref) < 1e-13
