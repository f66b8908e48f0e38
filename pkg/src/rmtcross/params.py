"""Ensemble parameters shared by every analytic and Monte Carlo routine."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class TransitionParams:
    """Dimensions and coupling of the crossover ensemble.

    n   -- number of eigenvalue pairs (nonzero singular values)
    nu  -- number of exact zero modes, 0 or 1; the matrix dimension is
           N = 2n + nu, so nu is fixed by the parity of N
    a   -- coupling constant: the two-matrix model requires 0 < a < 1,
           the three-matrix representation allows any a > 0.  a = 1 is
           excluded from all analytic weight/kernel formulas (the GAOE
           endpoint has its own closed forms).
    """

    n: int
    nu: int
    a: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n!r}")
        if self.nu not in (0, 1):
            raise DomainError(f"nu must be 0 or 1, got {self.nu!r}")
        if not self.a > 0.0:
            raise DomainError(f"a must be positive, got {self.a!r}")

    @property
    def dim(self) -> int:
        return 2 * self.n + self.nu

    def require_subcritical(self, what="this quantity"):
        if not self.a < 1.0:
            raise DomainError(f"{what} requires 0 < a < 1, got a={self.a}")
