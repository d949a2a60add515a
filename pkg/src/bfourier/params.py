"""Deformation parameters (b, N) and the derived constants used everywhere."""

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class DeformationParams:
    """The pair (b, N) with b > -N/2, plus derived constants.

    lam(m)  -- the Laguerre-order shift (N-2)/2 + m
    c_bN    -- normalization of the kernel transforms
    vol_sphere -- surface measure of the unit sphere S^{N-1}
    """

    b: float
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if not self.b > -self.N / 2:
            raise ValueError(f"b must satisfy b > -N/2; got b={self.b}, N={self.N}")

    def lam(self, m: int) -> float:
        return (self.N - 2) / 2 + m

    def lam_exact(self, m: int) -> Fraction:
        return Fraction(self.N - 2, 2) + m

    @property
    def c_bN(self) -> float:
        b, N = self.b, self.N
        return (
            (2 * math.pi) ** -(b + N / 2)
            * math.gamma(N / 2)
            * math.pi**b
            / math.gamma(b + N / 2)
        )

    @property
    def vol_sphere(self) -> float:
        return unit_sphere_volume(self.N)


def unit_sphere_volume(N: int) -> float:
    """vol(S^{N-1}) = 2 pi^{N/2} / Gamma(N/2); for N=1 this is 2 (counting measure)."""
    return 2 * math.pi ** (N / 2) / math.gamma(N / 2)
