import cmath
import math

import numpy as np
import pytest

from bfourier.kernels import (
    B_kernel,
    B_kernel_1d,
    B_kernel_beta_form,
    B_kernel_grid,
    default_transform_rule,
    heat_kernel,
    heat_kernel_1d,
    heat_kernel_grid,
    hille_hardy_sum,
    lambda_kernel,
    lambda_kernel_1d,
)
from bfourier.params import DeformationParams
from bfourier.quadrature import weighted_ball_rule
from bfourier.spectral import SpectralBasis

rng = np.random.default_rng(33)


def test_b_kernel_classical_reduction():
    # at b = 0 the Fourier kernel collapses to the plane wave e^{-i x.y}
    p = DeformationParams(0.0, 3)
    for _ in range(20):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        assert abs(B_kernel(p, x, y) - cmath.exp(-1j * float(x @ y))) < 1e-12


def test_heat_kernel_classical_reduction():
    p = DeformationParams(0.0, 2)
    t = 0.7
    for _ in range(20):
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        ref = t ** (-p.N / 2) * math.exp(-float(np.sum((x - y) ** 2)) / (2 * t))
        assert abs(heat_kernel(p, x, y, t) - ref) < 1e-12 * ref + 1e-14


def test_1d_closed_forms():
    b = 0.8
    p = DeformationParams(b, 1)
    t = 0.5 + 0.2j
    for _ in range(20):
        x = float(rng.normal()) * 2
        y = float(rng.normal()) * 2
        assert abs(B_kernel(p, [x], [y]) - B_kernel_1d(b, x, y)) < 1e-11
        assert abs(lambda_kernel(p, [x], [y], t) - lambda_kernel_1d(b, x, y, t)) < 1e-11
        assert abs(heat_kernel(p, [x], [y], 0.4) - heat_kernel_1d(b, x, y, 0.4)) < 1e-11


def test_b_kernel_beta_form_agrees():
    p = DeformationParams(0.9, 3)
    for _ in range(10):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        assert abs(B_kernel(p, x, y) - B_kernel_beta_form(p, x, y)) < 1e-10


def test_grid_kernels_match_scalar():
    p = DeformationParams(0.6, 2)
    x = np.array([0.7, -0.3])
    Y = rng.normal(size=(15, 2))
    Y[0] = 0.0  # include the degenerate origin row
    hg = heat_kernel_grid(p, x, Y, 0.8)
    bg = B_kernel_grid(p, x, Y)
    for k in range(len(Y)):
        assert abs(hg[k] - heat_kernel(p, x, Y[k], 0.8)) < 1e-12
        assert abs(bg[k] - B_kernel(p, x, Y[k])) < 1e-12


def test_hille_hardy_identity():
    p = DeformationParams(0.5, 2)
    basis = SpectralBasis(p, L=40, M=10)
    t = 0.9
    scale = 0.0
    pairs = []
    for _ in range(8):
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        lam = lambda_kernel(p, x, y, t)
        pairs.append((x, y, lam))
        scale = max(scale, abs(lam))
    for x, y, lam in pairs:
        s = hille_hardy_sum(basis, x, y, t)
        assert abs(s - p.c_bN * lam) < 1e-8 * scale


def test_heat_semigroup_composition():
    p = DeformationParams(0.5, 2)
    rule = weighted_ball_rule(p, 60, 16, "ball", radius=9.0)
    c = p.c_bN
    s, t = 0.3, 0.5
    x = np.array([0.6, 0.2])
    y = np.array([-0.4, 0.9])
    hz = heat_kernel_grid(p, x, rule.nodes, s) * heat_kernel_grid(p, y, rule.nodes, t)
    composed = c * float(np.real(np.sum(rule.weights * hz)))
    direct = heat_kernel(p, x, y, s + t).real
    assert abs(composed - direct) < 1e-10 * direct


def test_kernel_bounds_sampled():
    p = DeformationParams(0.7, 3)
    mu = p.b + p.N / 2
    for _ in range(200):
        x = rng.normal(size=3) * 1.5
        y = rng.normal(size=3) * 1.5
        assert abs(B_kernel(p, x, y)) <= 1 + 1e-12
        t = float(rng.uniform(0.1, 2.0))
        h = heat_kernel(p, x, y, t)
        assert h.imag == pytest.approx(0.0, abs=1e-14)
        r, rho = np.linalg.norm(x), np.linalg.norm(y)
        dom = t ** (-mu) * math.exp(-((r - rho) ** 2) / (2 * t))
        assert h.real <= dom * (1 + 1e-10)
        assert h.real > 0


def test_geometry_edge_cases():
    p = DeformationParams(0.5, 2)
    zero = np.zeros(2)
    y = np.array([1.0, 0.5])
    # scriptI(0, t) = 1, so the kernels at x = 0 equal their radial prefactor
    assert B_kernel(p, zero, y) == pytest.approx(1.0)
    mu = p.b + p.N / 2
    t = 0.6
    ref = t ** (-mu) * math.exp(-float(y @ y) / (2 * t))
    assert abs(heat_kernel(p, zero, y, t) - ref) < 1e-13
    assert abs(heat_kernel(p, zero, zero, 1.0) - 1.0) < 1e-13


def test_time_domain_errors():
    p = DeformationParams(0.5, 2)
    x = np.array([1.0, 0.0])
    with pytest.raises(ValueError):
        heat_kernel(p, x, x, -0.1)
    with pytest.raises(ValueError):
        lambda_kernel(p, x, x, -0.5 + 1j)
    # sinh vanishes at t = i pi: no continuous principal power there
    with pytest.raises(ValueError):
        lambda_kernel(p, x, x, 1j * math.pi)


def test_lambda_imaginary_time_matches_fourier_phase():
    # at t = i pi/2: sinh = i, tanh = infinite, Lambda = i^{-(b+N/2)} B
    p = DeformationParams(0.5, 2)
    mu = p.b + p.N / 2
    phase = cmath.exp(-0.5j * math.pi * mu)
    for _ in range(10):
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        lam = lambda_kernel(p, x, y, 1j * math.pi / 2)
        assert abs(lam - phase * B_kernel(p, x, y)) < 1e-11
