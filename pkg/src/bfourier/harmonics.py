"""Exact multivariate polynomials and orthonormal spherical-harmonic bases.

All structural computations (harmonicity, the x_n-multiplication splitting,
Gram matrices on the sphere) are done in exact rational arithmetic; floats
enter only when a polynomial is evaluated at a point.  Sphere integrals of
monomials are exact rationals times a fixed power of pi (the power depends
only on the dimension), so Gram-Schmidt ratios stay rational.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


class MultiPoly:
    """Polynomial in N variables: map from exponent tuples to Fractions."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N, coeffs=None):
        self.N = N
        self.coeffs = {}
        if coeffs:
            for expo, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    self.coeffs[tuple(expo)] = c

    @classmethod
    def monomial(cls, N, expo, c=1):
        return cls(N, {tuple(expo): Fraction(c)})

    @classmethod
    def constant(cls, N, c):
        return cls(N, {(0,) * N: Fraction(c)})

    @classmethod
    def variable(cls, N, i):
        expo = [0] * N
        expo[i] = 1
        return cls.monomial(N, expo)

    def __add__(self, other):
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            out[expo] = out.get(expo, Fraction(0)) + c
        return MultiPoly(self.N, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            out[expo] = out.get(expo, Fraction(0)) - c
        return MultiPoly(self.N, out)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    expo = tuple(a + b for a, b in zip(e1, e2))
                    out[expo] = out.get(expo, Fraction(0)) + c1 * c2
            return MultiPoly(self.N, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return MultiPoly(self.N, {e: v * c for e, v in self.coeffs.items()})

    def diff(self, i):
        out = {}
        for expo, c in self.coeffs.items():
            if expo[i] > 0:
                lower = list(expo)
                lower[i] -= 1
                out[tuple(lower)] = out.get(tuple(lower), Fraction(0)) + c * expo[i]
        return MultiPoly(self.N, out)

    def degree(self):
        return max((sum(e) for e in self.coeffs), default=0)

    def is_zero(self):
        return not self.coeffs

    def eval(self, x):
        """Evaluate at x of shape (N,) or (..., N); returns float array."""
        x = np.asarray(x, dtype=float)
        pts = np.atleast_2d(x)
        acc = np.zeros(pts.shape[:-1])
        for expo, c in self.coeffs.items():
            term = float(c) * np.ones(pts.shape[:-1])
            for i, a in enumerate(expo):
                if a:
                    term = term * pts[..., i] ** a
            acc = acc + term
        return float(acc[0]) if x.ndim == 1 else acc.reshape(x.shape[:-1])

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.N == other.N and self.coeffs == other.coeffs

    def __repr__(self):
        return f"MultiPoly({self.N}, {self.coeffs})"


def laplacian(p):
    out = MultiPoly(p.N)
    for i in range(p.N):
        out = out + p.diff(i).diff(i)
    return out


def euler_apply(p):
    """Euler degree operator sum_i x_i d/dx_i."""
    out = MultiPoly(p.N)
    for i in range(p.N):
        out = out + MultiPoly.variable(p.N, i) * p.diff(i)
    return out


def abs_x_squared(N):
    return MultiPoly(N, {tuple(2 if j == i else 0 for j in range(N)): 1 for i in range(N)})


def _gamma_half(k):
    """Gamma(k + 1/2) / sqrt(pi) as an exact Fraction, k >= 0 integer."""
    return Fraction(math.factorial(2 * k), 4**k * math.factorial(k))


def pi_exponent(N):
    """All degree-even monomial sphere integrals in dimension N are a rational
    times pi**pi_exponent(N)."""
    return N // 2 if N % 2 == 0 else (N - 1) // 2


def monomial_sphere_integral(alpha, N):
    """Integral over S^{N-1} of x^alpha, as (rational, e) meaning q * pi^e
    with e = pi_exponent(N).  Zero when any exponent is odd; otherwise

        2 * prod_i Gamma((alpha_i+1)/2) / Gamma((|alpha|+N)/2).
    """
    e = pi_exponent(N)
    if any(a % 2 for a in alpha):
        return Fraction(0), e
    num = Fraction(2)
    for a in alpha:
        num *= _gamma_half(a // 2)  # Gamma(a/2 + 1/2), one sqrt(pi) each
    total = sum(alpha) + N
    if N % 2 == 0:
        den = Fraction(math.factorial(total // 2 - 1))  # integer Gamma
    else:
        den = _gamma_half((total - 1) // 2)  # half-integer Gamma, eats one sqrt(pi)
    return num / den, e


def dim_harmonic(N, m):
    """Dimension of the degree-m harmonic polynomials in N variables."""
    if N == 1:
        return 1 if m <= 1 else 0
    if m == 0:
        return 1
    return (2 * m + N - 2) * math.factorial(m + N - 3) // (
        math.factorial(m) * math.factorial(N - 2)
    )


def _monomials(N, m):
    """Exponent tuples of total degree m, lexicographically descending."""
    if N == 1:
        return [(m,)]
    out = []
    for a in range(m, -1, -1):
        out.extend((a,) + rest for rest in _monomials(N - 1, m - a))
    return out


def _nullspace(rows, ncols):
    """Exact nullspace basis of the matrix given as a list of Fraction rows."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -mat[ri][fc]
        basis.append(v)
    return basis


def _clear_denominators(vec):
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    g = 0
    cleared = [v * den for v in vec]
    for v in cleared:
        g = math.gcd(g, abs(v.numerator))
    if g > 1:
        cleared = [v / g for v in cleared]
    return cleared


class HarmonicElement:
    """A normalized spherical harmonic p_j: exact polynomial data plus the
    exact squared sphere norm of the stored (unnormalized) polynomial.

    The normalized harmonic is poly / sqrt(normsq * pi^pi_exp); eval() returns
    values of the normalized polynomial, so norm_on_sphere == 1.
    """

    __slots__ = ("poly", "degree", "index", "normsq", "pi_exp", "N")

    def __init__(self, poly, degree, index, normsq, pi_exp):
        self.poly = poly
        self.degree = degree
        self.index = index
        self.normsq = normsq
        self.pi_exp = pi_exp
        self.N = poly.N

    @property
    def normalizer(self):
        return 1.0 / math.sqrt(float(self.normsq) * math.pi**self.pi_exp)

    def eval(self, x):
        return self.poly.eval(x) * self.normalizer

    def __repr__(self):
        return f"HarmonicElement(N={self.N}, m={self.degree}, j={self.index})"


def sphere_inner_exact(p, q, N):
    """Exact sphere inner product of two polynomials: (rational, pi_exp)."""
    e = pi_exponent(N)
    acc = Fraction(0)
    for e1, c1 in p.coeffs.items():
        for e2, c2 in q.coeffs.items():
            expo = tuple(a + b for a, b in zip(e1, e2))
            if any(a % 2 for a in expo):
                continue
            acc += c1 * c2 * monomial_sphere_integral(expo, N)[0]
    return acc, e


@lru_cache(maxsize=None)
def harmonic_basis(N, m, seed=None):
    """Deterministic orthonormal basis of the degree-m harmonics in N
    variables, orthonormal in L^2(S^{N-1}).

    Construction: exact nullspace of the Laplacian on degree-m monomials
    (graded-lex seed order, optionally permuted by `seed` for
    basis-independence checks), then exact Gram-Schmidt with the closed-form
    monomial sphere moments.  N=1 uses S^0 = {+-1} with counting measure.
    """
    if N == 1:
        if m > 1:
            return ()
        poly = MultiPoly.monomial(1, (m,))
        # int over S^0 of x^{2m} = 2; pi_exp(1) = 0
        return (HarmonicElement(poly, m, 0, Fraction(2), 0),)
    monos = _monomials(N, m)
    if seed is not None:
        order = np.random.default_rng(seed).permutation(len(monos))
        monos = [monos[i] for i in order]
    if m >= 2:
        lower = _monomials(N, m - 2)
        lower_pos = {e: i for i, e in enumerate(lower)}
        cols = []
        for expo in monos:
            col = [Fraction(0)] * len(lower)
            for i in range(N):
                if expo[i] >= 2:
                    tgt = list(expo)
                    tgt[i] -= 2
                    col[lower_pos[tuple(tgt)]] += expo[i] * (expo[i] - 1)
            cols.append(col)
        rows = [[cols[c][r] for c in range(len(monos))] for r in range(len(lower))]
        kernel = _nullspace(rows, len(monos))
    else:
        kernel = [
            [Fraction(1 if i == k else 0) for i in range(len(monos))]
            for k in range(len(monos))
        ]
    assert len(kernel) == dim_harmonic(N, m)
    # exact moment Gram over the degree-m monomials
    nm = len(monos)
    gram = [[Fraction(0)] * nm for _ in range(nm)]
    for i in range(nm):
        for k in range(i, nm):
            expo = tuple(a + b for a, b in zip(monos[i], monos[k]))
            val = monomial_sphere_integral(expo, N)[0]
            gram[i][k] = val
            gram[k][i] = val

    def matvec(v):
        return [sum(gram[r][c] * v[c] for c in range(nm) if v[c] != 0) for r in range(nm)]

    def dot(u, gv):
        return sum(a * b for a, b in zip(u, gv) if a != 0)

    ortho = []
    norms = []
    gorth = []  # cached Gram * u for each accepted u
    for v in kernel:
        gv = matvec(v)
        u = list(v)
        for uk, sk, guk in zip(ortho, norms, gorth):
            coef = dot(uk, gv) / sk
            if coef != 0:
                u = [a - coef * b for a, b in zip(u, uk)]
        u = _clear_denominators(u)
        gu = matvec(u)
        s = dot(u, gu)
        assert s > 0
        ortho.append(u)
        norms.append(s)
        gorth.append(gu)
    e = pi_exponent(N)
    out = []
    for j, (u, s) in enumerate(zip(ortho, norms)):
        poly = MultiPoly(N, {expo: c for expo, c in zip(monos, u)})
        out.append(HarmonicElement(poly, m, j, s, e))
    return tuple(out)


def lam_exact(N, m):
    return Fraction(N - 2, 2) + m


def split_xn_p(elem, n):
    """Split x_n * p into harmonic parts: exact polynomials (plus, minus) with

        x_n * p = plus + |x|^2 * minus,

    where minus = (d p / d x_n) / (2 lam_{N,m}) has degree m-1 and plus has
    degree m+1, both harmonic.  Operates on the element's stored
    (unnormalized) polynomial; the caller tracks normalizers.
    """
    p = elem.poly
    N, m = elem.N, elem.degree
    xn = MultiPoly.variable(N, n)
    if m == 0:
        return xn * p, MultiPoly(N)
    minus = p.diff(n).scale(Fraction(1, 1) / (2 * lam_exact(N, m)))
    plus = xn * p - abs_x_squared(N) * minus
    assert laplacian(plus).is_zero() and laplacian(minus).is_zero()
    return plus, minus


def zonal_check(N, m, omega, mu):
    """Residual of the zonal addition identity

        sum_{deg p_j = m} p_j(omega) conj(p_j(mu))
            = C~_m^{((N-2)/2)}(<omega, mu>) / vol(S^{N-1}),

    for unit vectors omega, mu."""
    from .params import unit_sphere_volume
    from .specfun import gegenbauer_tilde

    omega = np.asarray(omega, dtype=float)
    mu = np.asarray(mu, dtype=float)
    lhs = sum(el.eval(omega) * el.eval(mu) for el in harmonic_basis(N, m))
    rhs = gegenbauer_tilde(m, (N - 2) / 2, float(omega @ mu)) / unit_sphere_volume(N)
    return abs(lhs - rhs)
