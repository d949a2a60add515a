import math

import numpy as np
import pytest
from scipy import special as sp

from bfourier.specfun import (
    SeriesError,
    bessel_i,
    bessel_i_tilde,
    bessel_j,
    bessel_j_tilde,
    bessel_integral_check,
    bessel_tilde_bound_constants,
    gegenbauer_tilde,
    laguerre,
    ln_gamma,
)

rng = np.random.default_rng(2024)


def test_ln_gamma_matches_lgamma():
    x = rng.uniform(0.1, 30, 50)
    ref = np.array([math.lgamma(v) for v in x])
    assert np.allclose(ln_gamma(x), ref, rtol=0, atol=1e-14)


def test_laguerre_against_scipy():
    t = rng.uniform(0, 12, 40)
    for ell in (0, 1, 2, 5, 11):
        for alpha in (-0.4, 0.0, 0.7, 2.5):
            ours = laguerre(ell, alpha, t)
            ref = sp.eval_genlaguerre(ell, alpha, t)
            assert np.allclose(ours, ref, rtol=1e-12, atol=1e-12)


def test_gegenbauer_tilde_scaled_scipy():
    # tilde normalization: C~_m = (m+nu)/nu * C_m^{(nu)} for nu != 0
    t = rng.uniform(-1, 1, 30)
    for m in (0, 1, 2, 5, 8):
        for nu in (0.5, 1.0, 2.5):
            ours = gegenbauer_tilde(m, nu, t)
            ref = sp.eval_gegenbauer(m, nu, t) * (m + nu) / nu if m > 0 else np.ones_like(t)
            assert np.allclose(ours, ref, rtol=1e-11, atol=1e-11)


def test_gegenbauer_tilde_degenerate_orders():
    # nu = 0 and nu = -1/2 are regular in the tilde normalization
    t = rng.uniform(-1, 1, 10)
    for nu in (0.0, -0.5):
        for m in (0, 1, 2, 4):
            vals = gegenbauer_tilde(m, nu, t)
            assert np.all(np.isfinite(vals))
    # Chebyshev relation at nu = 0: C~_m^{(0)}(cos x) = 2 cos(m x) for m >= 1
    x = rng.uniform(0, math.pi, 10)
    for m in (1, 2, 5):
        assert np.allclose(gegenbauer_tilde(m, 0.0, np.cos(x)), 2 * np.cos(m * x), atol=1e-11)


def test_bessel_tilde_vs_scipy_real():
    w = rng.uniform(0.1, 15, 25)
    for nu in (-0.5, 0.0, 0.7, 2.5):
        ours = bessel_i_tilde(nu, w)
        ref = sp.iv(nu, w) / (w / 2) ** nu
        assert np.allclose(ours, ref, rtol=1e-12)
        ours_j = bessel_j_tilde(nu, w)
        ref_j = sp.jv(nu, w) / (w / 2) ** nu
        # the alternating series loses ~e^{|w|} eps absolute accuracy
        assert np.allclose(ours_j, ref_j, rtol=1e-9, atol=1e-10)


def test_bessel_script_normalization():
    # script kind carries Gamma(nu+1): value 1 at w = 0
    for nu in (0.0, 0.5, 1.7):
        assert abs(bessel_i(nu, np.array([0.0]))[0] - 1.0) < 1e-15
        assert abs(bessel_j(nu, np.array([0.0]))[0] - 1.0) < 1e-15


def test_bessel_tilde_through_gamma_poles():
    # tilde kind is entire in the order, including negative integers
    w = np.array([0.3, 1.2, 4.0])
    for nu in (-1.0, -2.0, -3.0):
        vals = bessel_i_tilde(nu, w)
        ref = np.array([float(sp.iv(nu, x) / (x / 2) ** nu) for x in w])
        assert np.allclose(vals, ref, rtol=1e-11)


def test_bessel_complex_argument_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    zs = [0.5 + 1.2j, -2.0 + 0.4j, 3.0 - 3.0j]
    for nu in (0.0, 0.5, 1.5):
        for z in zs:
            ours = bessel_i_tilde(nu, np.array([z]))[0]
            ref = complex(mp.besseli(nu, z) / (mp.mpf(z.real) / 2 + 1j * mp.mpf(z.imag) / 2) ** nu)
            assert abs(ours - ref) <= 1e-12 * max(1.0, abs(ref))


def test_bessel_integral_representation():
    # Poisson-type integral equals the series route
    for b in (0.5, 1.0, 2.2):
        for z in (0.4, 2.0, 7.5, 2.0 + 1.5j):
            ref = bessel_i(b, np.array([z]))[0]
            assert abs(bessel_integral_check(b, z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_series_error_on_huge_argument():
    with pytest.raises(SeriesError):
        bessel_i_tilde(0.5, np.array([1e6]))


def test_bessel_bound_constants():
    for b in (-0.9, -0.4, 0.5, 1.5):
        C, M = bessel_tilde_bound_constants(b)
        w = rng.uniform(-20, 20, 400) + 1j * rng.uniform(-20, 20, 400)
        vals = bessel_i_tilde(b, w)
        bound = C * (1 + np.abs(w)) ** M * np.exp(np.abs(w.real))
        assert np.all(np.abs(vals) <= bound * (1 + 1e-12))
