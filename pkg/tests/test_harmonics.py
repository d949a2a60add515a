import math
from fractions import Fraction

import numpy as np

from bfourier.harmonics import (
    MultiPoly,
    abs_x_squared,
    dim_harmonic,
    harmonic_basis,
    laplacian,
    monomial_sphere_integral,
    sphere_inner_exact,
    split_xn_p,
    zonal_check,
)
from bfourier.params import unit_sphere_volume

rng = np.random.default_rng(11)


def _random_poly(N, deg, terms=4):
    p = MultiPoly(N)
    for _ in range(terms):
        alpha = tuple(int(v) for v in rng.integers(0, deg + 1, N))
        c = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 7)))
        p = p + MultiPoly.monomial(N, alpha, c)
    return p


def test_ring_axioms_random():
    for N in (1, 2, 3):
        a, b, c = (_random_poly(N, 3) for _ in range(3))
        x = rng.normal(size=(5, N))
        lhs = ((a + b) * c).eval(x)
        rhs = (a * c).eval(x) + (b * c).eval(x)
        assert np.allclose(lhs, rhs, atol=1e-10)
        assert np.allclose((a * b).eval(x), (b * a).eval(x), atol=1e-10)


def test_derivative_product_rule():
    for N in (2, 3):
        a, b = _random_poly(N, 3), _random_poly(N, 3)
        for n in range(N):
            lhs = (a * b).diff(n)
            rhs = a.diff(n) * b + a * b.diff(n)
            x = rng.normal(size=(4, N))
            assert np.allclose(lhs.eval(x), rhs.eval(x), atol=1e-10)


def test_monomial_sphere_integral_known_values():
    # int_{S^1} x^2 = pi, int_{S^2} x^2 = 4 pi / 3, int x^2 y^2 over S^2 = 4 pi/15
    frac, e = monomial_sphere_integral((2, 0), 2)
    assert float(frac) * math.pi**e == math.pi
    frac, e = monomial_sphere_integral((2, 0, 0), 3)
    assert abs(float(frac) * math.pi**e - 4 * math.pi / 3) < 1e-15
    frac, e = monomial_sphere_integral((2, 2, 0), 3)
    assert abs(float(frac) * math.pi**e - 4 * math.pi / 15) < 1e-15
    # odd moments vanish
    frac, _ = monomial_sphere_integral((1, 2), 2)
    assert frac == 0


def test_dimension_formula():
    expected = {
        (2, 0): 1,
        (2, 1): 2,
        (2, 5): 2,
        (3, 0): 1,
        (3, 1): 3,
        (3, 2): 5,
        (3, 8): 17,
        (4, 2): 9,
        (4, 8): 81,
        (1, 0): 1,
        (1, 1): 1,
    }
    for (N, m), d in expected.items():
        assert dim_harmonic(N, m) == d
        if N > 1 or m <= 1:
            assert len(harmonic_basis(N, m)) == d


def test_basis_harmonic_and_orthonormal():
    for N in (2, 3, 4):
        for m in (0, 1, 2, 3):
            basis = harmonic_basis(N, m)
            for i, h in enumerate(basis):
                assert laplacian(h.poly).is_zero()
                assert h.poly.degree() == m or (m == 0 and h.poly.degree() == 0)
                for j in range(i + 1):
                    frac, e = sphere_inner_exact(h.poly, basis[j].poly, N)
                    val = float(frac) * math.pi**e
                    if i == j:
                        # stored normsq matches the exact inner product
                        assert frac == h.normsq * basis[j].normsq ** 0 or abs(
                            val - float(h.normsq) * math.pi**h.pi_exp
                        ) < 1e-15 * abs(val)
                    else:
                        assert frac == 0


def test_normalized_evaluation_unit_norm():
    # quadrature check: normalized elements have unit sphere norm
    from bfourier.quadrature import sphere_rule

    for N in (2, 3):
        rule = sphere_rule(N, 14)
        for m in (1, 3):
            for h in harmonic_basis(N, m):
                vals = h.eval(np.atleast_2d(rule.nodes))
                assert abs(np.sum(rule.weights * vals**2) - 1.0) < 1e-11


def test_split_xn_reassembly_exact():
    # x_n p = plus + |x|^2 minus, with both pieces harmonic
    for N in (2, 3):
        for m in (1, 2, 3):
            for h in harmonic_basis(N, m):
                for n in range(N):
                    plus, minus = split_xn_p(h, n)
                    recon = plus + abs_x_squared(N) * minus
                    xn = MultiPoly.variable(N, n)
                    diff = xn * h.poly - recon
                    assert diff.is_zero()
                    assert laplacian(plus).is_zero()
                    assert laplacian(minus).is_zero()


def test_zonal_addition():
    for N in (2, 3, 4):
        for m in (0, 1, 2, 4, 6):
            for _ in range(5):
                omega = rng.normal(size=N)
                omega /= np.linalg.norm(omega)
                mu = rng.normal(size=N)
                mu /= np.linalg.norm(mu)
                assert zonal_check(N, m, omega, mu) < 1e-10


def test_seeded_basis_is_valid_and_different():
    base = harmonic_basis(3, 3)
    seeded = harmonic_basis(3, 3, seed=1)
    assert len(base) == len(seeded)
    for h in seeded:
        assert laplacian(h.poly).is_zero()
    # orthonormality of the seeded variant
    for i, h in enumerate(seeded):
        for j in range(i):
            frac, _ = sphere_inner_exact(h.poly, seeded[j].poly, 3)
            assert frac == 0
    # same span: each seeded element reproduces under the zonal projector of
    # the unseeded space; cheap proxy: spans have equal dimension and every
    # seeded poly is harmonic of the right degree (full span check is done
    # via the spectral Gram in the acceptance suite)
    assert harmonic_basis(3, 3) is base  # cached


def test_one_dimensional_basis():
    for m in (0, 1):
        basis = harmonic_basis(1, m)
        assert len(basis) == 1
        x = np.array([[0.7], [-0.7]])
        vals = basis[0].eval(x)
        if m == 1:
            assert vals[0] == -vals[1]
        else:
            assert vals[0] == vals[1]
