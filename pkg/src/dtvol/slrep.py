"""Nonabelian SL2(C) representations of two-generator one-relator groups
<a,b | Wa = bW> and the three equivalent defining polynomials of their
representation variety (Riley, Le, Mednykh forms).

The representation is normalized to

    rho(a) = [M 1; 0 1/M],    rho(b) = [M 0; 2-z 1/M],

with z = tr rho(a b^-1), so r := 2 - z is the lower-left entry of rho(b).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .words import FreeWord, tilde


class InadmissibleWordError(ValueError):
    """Word W does not satisfy tilde(W) = W^-1 (or is empty)."""


@dataclass(frozen=True)
class Mat2C:
    """2x2 complex matrix; every value of rho lies in SL2(C)."""

    e11: complex
    e12: complex
    e21: complex
    e22: complex

    def __matmul__(self, o: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    def det(self) -> complex:
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self) -> complex:
        return self.e11 + self.e22

    def adjugate_inverse(self) -> "Mat2C":
        """Inverse assuming det = 1 (exact for generator images)."""
        return Mat2C(self.e22, -self.e12, -self.e21, self.e11)

    def max_abs_diff(self, o: "Mat2C") -> float:
        return max(
            abs(self.e11 - o.e11),
            abs(self.e12 - o.e12),
            abs(self.e21 - o.e21),
            abs(self.e22 - o.e22),
        )


IDENTITY = Mat2C(1, 0, 0, 1)


@dataclass(frozen=True)
class RepPoint:
    """Parameter point (M, z) of the normalized representation."""

    M: complex
    z: complex

    def __post_init__(self) -> None:
        if self.M == 0:
            raise ValueError("meridian eigenvalue M must be nonzero")

    @property
    def r(self) -> complex:
        return 2.0 - self.z

    @property
    def x(self) -> complex:
        """tr rho(a) = tr rho(b)."""
        return self.M + 1.0 / self.M

    @property
    def y(self) -> complex:
        """tr rho(ab) = M^2 + M^-2 + 2 - z."""
        m2 = self.M * self.M
        return m2 + 1.0 / m2 + 2.0 - self.z


def rho_generators(pt: RepPoint) -> tuple[Mat2C, Mat2C]:
    """Images (rho(a), rho(b)) of the two meridian generators."""
    M, Minv = pt.M, 1.0 / pt.M
    return Mat2C(M, 1.0, 0.0, Minv), Mat2C(M, 0.0, pt.r, Minv)


def rho_word(u: FreeWord, pt: RepPoint) -> Mat2C:
    """rho(u): product of generator images (adjugate inverses) in word order."""
    A, B = rho_generators(pt)
    table = {
        ("a", 1): A,
        ("a", -1): A.adjugate_inverse(),
        ("b", 1): B,
        ("b", -1): B.adjugate_inverse(),
    }
    out = IDENTITY
    for letter in u.letters:
        out = out @ table[letter]
    return out


def _require_admissible(W: FreeWord) -> None:
    if not W:
        raise InadmissibleWordError("relator word must be nonempty")
    if tilde(W) != W.inverse():
        raise InadmissibleWordError(
            f"word {W.ascii()!r} does not satisfy tilde(W) = W^-1"
        )


def riley_poly_value(W: FreeWord, pt: RepPoint) -> complex:
    """w11 - (M - 1/M) w12 for rho(W); zero iff (M, z) gives a representation
    of <a,b | Wa = bW>."""
    _require_admissible(W)
    w = rho_word(W, pt)
    return w.e11 - (pt.M - 1.0 / pt.M) * w.e12


def le_poly_value(W: FreeWord, pt: RepPoint) -> complex:
    """w11 - (M w12 - w21/(M r)); defined only off the abelian locus z = 2."""
    _require_admissible(W)
    if pt.r == 0:
        raise ValueError("z = 2 (r = 0) is a pole of the Le form; use the Riley form")
    w = rho_word(W, pt)
    return w.e11 - (pt.M * w.e12 - w.e21 / (pt.M * pt.r))


def conjugating_matrix(pt: RepPoint, sqrt_r: complex | None = None) -> Mat2C:
    """C = [0 -1/sqrt(r); sqrt(r) 0]: satisfies C^2 = -I and C rho(u) = rho(tilde(u)) C."""
    if pt.r == 0:
        raise ValueError("r = 0: no conjugating matrix (abelian locus)")
    s = cmath.sqrt(pt.r) if sqrt_r is None else sqrt_r
    return Mat2C(0.0, -1.0 / s, s, 0.0)


def mednykh_poly_value(
    W: FreeWord, pt: RepPoint, sqrt_r: complex | None = None
) -> complex:
    """-tr(rho(bW) C)/sqrt(r); equals the Le (hence Riley) value, independent
    of the square-root branch."""
    _require_admissible(W)
    if pt.r == 0:
        raise ValueError("z = 2 (r = 0) is a pole of the Mednykh form")
    s = cmath.sqrt(pt.r) if sqrt_r is None else sqrt_r
    C = conjugating_matrix(pt, s)
    _, B = rho_generators(pt)
    bw = B @ rho_word(W, pt)
    return -(bw @ C).trace() / s


def relator_residual(w: FreeWord, n: int, pt: RepPoint) -> float:
    """Max-entry magnitude of rho(w^n a) - rho(b w^n); ~0 iff (M, z) is a
    representation point of the knot group."""
    wn = rho_word(w**n, pt)
    A, B = rho_generators(pt)
    return (wn @ A).max_abs_diff(B @ wn)
