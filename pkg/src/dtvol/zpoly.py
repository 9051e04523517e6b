"""Dense univariate polynomials over the complex numbers.

Coefficients are stored constant term first.  Trailing coefficients whose
magnitude falls below ``TRIM_REL`` times the largest coefficient are dropped
on construction, so the leading coefficient of a nonzero polynomial is
meaningful.
"""

from __future__ import annotations

import numpy as np

TRIM_REL = 1e-14


class ZPoly:
    """Polynomial in one variable, complex coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        scale = np.max(np.abs(c)) if c.size else 0.0
        if scale == 0.0:
            c = np.zeros(1, dtype=complex)
        else:
            keep = np.abs(c) > TRIM_REL * scale
            last = int(np.max(np.nonzero(keep)[0])) if keep.any() else -1
            c = c[: last + 1] if last >= 0 else np.zeros(1, dtype=complex)
        self.coeffs = c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            return -1
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, z):
        """Horner evaluation; accepts scalars or arrays."""
        return np.polyval(self.coeffs[::-1], z)

    def __add__(self, other: "ZPoly") -> "ZPoly":
        a, b = self.coeffs, other.coeffs
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] += b
        return ZPoly(out)

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        a, b = self.coeffs, other.coeffs
        n = max(a.size, b.size)
        out = np.zeros(n, dtype=complex)
        out[: a.size] = a
        out[: b.size] -= b
        return ZPoly(out)

    def __mul__(self, other) -> "ZPoly":
        if isinstance(other, ZPoly):
            if self.is_zero() or other.is_zero():
                return ZPoly([0])
            return ZPoly(np.convolve(self.coeffs, other.coeffs))
        return ZPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __neg__(self) -> "ZPoly":
        return ZPoly(-self.coeffs)

    def deriv(self) -> "ZPoly":
        if self.coeffs.size == 1:
            return ZPoly([0])
        return ZPoly(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs.size == other.coeffs.size and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        return f"ZPoly({self.coeffs.tolist()})"

    def as_pairs(self) -> list[list[float]]:
        """[re, im] pairs, constant term first (the CLI wire format)."""
        return [[float(c.real), float(c.imag)] for c in self.coeffs]


def const(value) -> ZPoly:
    return ZPoly([value])


# x as a polynomial, for building expressions
X = ZPoly([0.0, 1.0])
