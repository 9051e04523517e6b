"""Chebyshev polynomials of the second kind, S_j.

S_0 = 1, S_1 = omega, and S_j = omega*S_{j-1} - S_{j-2} for every integer j,
negative indices included (run the recurrence downward from (S_0, S_{-1}) =
(1, 0)).  The recurrence is used for all evaluation; the trigonometric form
sin((j+1)t)/sin(t) is reserved for test oracles because it misbehaves at
omega = +-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .zpoly import ZPoly


@dataclass(frozen=True)
class ChebPair:
    """Consecutive values (S_j, S_{j-1}) at one argument."""

    s_j: complex
    s_jm1: complex
    j: int
    omega: complex

    def identity_residual(self) -> float:
        """|S_j^2 - omega S_j S_{j-1} + S_{j-1}^2 - 1|, zero in exact arithmetic."""
        return abs(
            self.s_j * self.s_j
            - self.omega * self.s_j * self.s_jm1
            + self.s_jm1 * self.s_jm1
            - 1.0
        )


def eval_pair(j: int, omega: complex) -> ChebPair:
    """Return (S_j, S_{j-1}) at omega from a single recurrence pass."""
    omega = complex(omega)
    s, sm = 1.0 + 0.0j, 0.0 + 0.0j  # (S_0, S_{-1})
    if j >= 0:
        for _ in range(j):
            s, sm = omega * s - sm, s
    else:
        for _ in range(-j):
            s, sm = sm, omega * sm - s
    return ChebPair(s_j=s, s_jm1=sm, j=j, omega=omega)


def eval_S(j: int, omega: complex) -> complex:
    """S_j(omega) for any integer j."""
    return eval_pair(j, omega).s_j


@lru_cache(maxsize=256)
def _coeffs_cached(j: int) -> tuple[complex, ...]:
    if j == -2:
        return (-1.0 + 0.0j,)
    if j == -1:
        return (0.0 + 0.0j,)
    if j == 0:
        return (1.0 + 0.0j,)
    prev = _coeffs_cached(j - 2)
    mid = _coeffs_cached(j - 1)
    # omega * S_{j-1} - S_{j-2}, as coefficient vectors (constant first)
    out = [0.0 + 0.0j] * (j + 1)
    for i, c in enumerate(mid):
        out[i + 1] += c
    for i, c in enumerate(prev):
        out[i] -= c
    return tuple(out)


def coeffs_S(j: int) -> ZPoly:
    """Coefficients of S_j as a polynomial in its argument (j >= -2)."""
    if j < -2:
        raise ValueError(f"coeffs_S requires j >= -2, got {j}")
    return ZPoly(_coeffs_cached(j))
