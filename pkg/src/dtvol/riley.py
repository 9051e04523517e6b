"""Riley polynomials Phi_{J(k,2n)}(M, z) of double twist knots.

Both families are expressed through the Chebyshev values S_m(z), S_{m-1}(z):

  odd  k = 2m+1:  Phi = S_n(t) - d S_{n-1}(t),
      t = M^2 + M^-2 + 2 - z - (z-2)(z - M^2 - M^-2) S_m S_{m-1}
      d = 1 - (z - M^2 - M^-2) S_m (S_m - S_{m-1})

  even k = 2m:    Phi = S_n(t) - d S_{n-1}(t),
      t = 2 + (z-2)(z - M^2 - M^-2) S_{m-1}^2
      d = 1 + (z - M^2 - M^-2) S_{m-1} (S_m - S_{m-1})

The same value is produced by a two-term recurrence in n (P_n = t P_{n-1} -
P_{n-2} with P_0 = 1 and an explicit P_1), which serves as an independent
second construction route; and by coefficient-vector arithmetic yielding the
polynomial in z at fixed M for the root solver.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import coeffs_S, eval_pair
from .slrep import Mat2C, RepPoint
from .words import KnotParam
from .zpoly import X, ZPoly, const

# Conditioning envelope: beyond this the coefficient construction still runs
# but root-finding accuracy degrades; a warning is emitted.
DESK_MAX_K = 19
DESK_MAX_ABS_N = 10


class ConditioningWarning(UserWarning):
    """Requested (k, n) lies outside the validated conditioning envelope."""


@dataclass(frozen=True)
class RileyCoefficients:
    """Trace t = tr rho(w) and the S_{n-1} multiplier d for one family."""

    t: complex
    d: complex
    family: str


def _m2_sum(M: complex) -> complex:
    m2 = M * M
    return m2 + 1.0 / m2


def riley_coefficients(k: int, pt: RepPoint) -> RileyCoefficients:
    """(t, d) for the family of k at the point (M, z)."""
    knot_m = (k - 1) // 2 if k % 2 else k // 2
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    c2 = _m2_sum(pt.M)
    z = pt.z
    pair = eval_pair(knot_m, z)
    sm, sm1 = pair.s_j, pair.s_jm1
    if k % 2:
        t = c2 + 2.0 - z - (z - 2.0) * (z - c2) * sm * sm1
        d = 1.0 - (z - c2) * sm * (sm - sm1)
        return RileyCoefficients(t=t, d=d, family="odd")
    t = 2.0 + (z - 2.0) * (z - c2) * sm1 * sm1
    d = 1.0 + (z - c2) * sm1 * (sm - sm1)
    return RileyCoefficients(t=t, d=d, family="even")


def _closed_value(t: complex, d: complex, n: int) -> complex:
    pair = eval_pair(n, t)
    return pair.s_j - d * pair.s_jm1


def riley_odd(m: int, n: int, pt: RepPoint) -> complex:
    """Phi_{J(2m+1, 2n)}(M, z), closed Chebyshev form."""
    if m < 1:
        raise ValueError(f"odd family needs m >= 1, got {m}")
    rc = riley_coefficients(2 * m + 1, pt)
    return _closed_value(rc.t, rc.d, n)


def riley_even(m: int, n: int, pt: RepPoint) -> complex:
    """Phi_{J(2m, 2n)}(M, z), closed Chebyshev form."""
    if m < 1:
        raise ValueError(f"even family needs m >= 1, got {m}")
    rc = riley_coefficients(2 * m, pt)
    return _closed_value(rc.t, rc.d, n)


def riley_closed(knot: KnotParam, pt: RepPoint) -> complex:
    return (riley_odd if knot.odd else riley_even)(knot.m, knot.n, pt)


def _p1_value(k: int, pt: RepPoint) -> complex:
    """Initial value P_1 of the two-term recurrence (distinct arithmetic from
    the closed form's d; equality of the two routes is a theorem)."""
    m = (k - 1) // 2 if k % 2 else k // 2
    c2 = _m2_sum(pt.M)
    z = pt.z
    if k % 2:
        pair = eval_pair(m, z)
        return 1.0 + (z - c2) * pair.s_jm1 * (pair.s_j - pair.s_jm1)
    pair = eval_pair(m - 1, z)
    return 1.0 - (z - c2) * pair.s_j * (pair.s_j - pair.s_jm1)


def riley_recursive(k: int, n: int, pt: RepPoint) -> complex:
    """Phi_{J(k,2n)}(M, z) by running P_j = t P_{j-1} - P_{j-2} from
    (P_0, P_1), stepping toward n (inverted recurrence for n < 0)."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    t = riley_coefficients(k, pt).t
    p0 = 1.0 + 0.0j
    if n == 0:
        return p0
    p1 = _p1_value(k, pt)
    if n > 0:
        prev, cur = p0, p1
        for _ in range(n - 1):
            prev, cur = cur, t * cur - prev
        return cur
    # downward: P_{j-1} from (P_j, P_{j+1})
    cur, nxt = p0, p1
    for _ in range(-n):
        cur, nxt = t * cur - nxt, cur
    return cur


def _coeff_polys(k: int, M: complex) -> tuple[ZPoly, ZPoly, ZPoly]:
    """(t(z), d(z), p1(z)) as coefficient polynomials at fixed M."""
    m = (k - 1) // 2 if k % 2 else k // 2
    c2 = _m2_sum(M)
    sm = coeffs_S(m)
    sm1 = coeffs_S(m - 1)
    z_m_c2 = X - const(c2)
    z_m_2 = X - const(2.0)
    if k % 2:
        t = const(c2 + 2.0) - X - z_m_2 * z_m_c2 * sm * sm1
        d = const(1.0) - z_m_c2 * sm * (sm - sm1)
        p1 = const(1.0) + z_m_c2 * sm1 * (sm - sm1)
    else:
        sm2 = coeffs_S(m - 2)
        t = const(2.0) + z_m_2 * z_m_c2 * sm1 * sm1
        d = const(1.0) + z_m_c2 * sm1 * (sm - sm1)
        p1 = const(1.0) - z_m_c2 * sm1 * (sm1 - sm2)
    return t, d, p1


def riley_zpoly(k: int, n: int, M: complex, form: str = "closed") -> ZPoly:
    """Coefficients of Phi_{J(k,2n)}(M, .) in z.

    form="closed" runs the Chebyshev recurrence S_j(t(z)) over coefficient
    vectors and returns S_n(t) - d S_{n-1}(t); form="recursive" runs the
    Remark-style recurrence from (P_0, P_1).  Both avoid interpolation, which
    is ill-conditioned at the degrees reached here.
    """
    if M == 0:
        raise ValueError("M must be nonzero")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    t, d, p1 = _coeff_polys(k, M)
    one = const(1.0)
    zero = const(0.0)
    if form == "closed":
        # (A_j, A_{j-1}) = (S_j(t), S_{j-1}(t)) as polynomials in z
        a, am = one, zero
        if n >= 0:
            for _ in range(n):
                a, am = t * a - am, a
        else:
            for _ in range(-n):
                a, am = am, t * am - a
        phi = a - d * am
    elif form == "recursive":
        if n == 0:
            phi = one
        elif n > 0:
            prev, cur = one, p1
            for _ in range(n - 1):
                prev, cur = cur, t * cur - prev
            phi = cur
        else:
            cur, nxt = one, p1
            for _ in range(-n):
                cur, nxt = t * cur - nxt, cur
            phi = cur
    else:
        raise ValueError(f"unknown form {form!r}")

    if k > DESK_MAX_K or abs(n) > DESK_MAX_ABS_N:
        coeffs = phi.coeffs
        lead = abs(coeffs[-1]) if coeffs.size else 0.0
        ratio = float(np.max(np.abs(coeffs)) / lead) if lead else np.inf
        warnings.warn(
            f"(k={k}, n={n}) is outside the validated envelope "
            f"(k <= {DESK_MAX_K}, |n| <= {DESK_MAX_ABS_N}); "
            f"coefficient ratio max|c|/|lead| = {ratio:.2e}",
            ConditioningWarning,
            stacklevel=2,
        )
    return phi


@lru_cache(maxsize=64)
def _eval_parts(k: int, M: complex):
    """Descending coefficient arrays of t, d and their z-derivatives."""
    t, d, _ = _coeff_polys(k, M)
    return (
        t.coeffs[::-1].copy(),
        d.coeffs[::-1].copy(),
        t.deriv().coeffs[::-1].copy(),
        d.deriv().coeffs[::-1].copy(),
    )


@lru_cache(maxsize=64)
def _eval_parts_py(k: int, M: complex):
    """_eval_parts as plain tuples, for the scalar fast path."""
    return tuple(tuple(a) for a in _eval_parts(k, M))


def _horner(coeffs, z: complex) -> complex:
    acc = 0j
    for c in coeffs:
        acc = acc * z + c
    return acc


def riley_phi_dphi_scalar(
    k: int, n: int, M: complex, z: complex
) -> tuple[complex, complex, float]:
    """Scalar version of riley_phi_dphi (pure Python, no array overhead)."""
    tc, dc, dtc, ddc = _eval_parts_py(k, complex(M))
    z = complex(z)
    t = _horner(tc, z)
    d = _horner(dc, z)
    dt = _horner(dtc, z)
    dd = _horner(ddc, z)
    a, am = 1.0 + 0j, 0j
    da, dam = 0j, 0j
    if n >= 0:
        for _ in range(n):
            a, am, da, dam = t * a - am, a, dt * a + t * da - dam, da
    else:
        for _ in range(-n):
            a, am, da, dam = am, t * am - a, dam, dt * am + t * dam - da
    phi = a - d * am
    dphi = da - dd * am - d * dam
    scale = abs(a) + abs(d) * abs(am) + 1e-300
    return phi, dphi, scale


def riley_phi_dphi(k: int, n: int, M: complex, z):
    """(Phi, dPhi/dz, magnitude scale) at z, scalar or array.

    Evaluates through the structured closed form (t(z), d(z) and the
    Chebyshev recurrence in n) instead of expanded monomial coefficients,
    which keeps full relative accuracy where the expanded form is
    ill-conditioned.  The scale output is the natural magnitude of the
    expression, for roundoff-floor tests on |Phi|.
    """
    z = np.asarray(z, dtype=complex)
    tc, dc, dtc, ddc = _eval_parts(k, complex(M))
    t = np.polyval(tc, z)
    d = np.polyval(dc, z)
    dt = np.polyval(dtc, z)
    dd = np.polyval(ddc, z)
    one = np.ones_like(z)
    zero = np.zeros_like(z)
    # (a, am) = (S_j(t), S_{j-1}(t)) with z-derivatives (da, dam)
    a, am = one, zero
    da, dam = zero, zero
    if n >= 0:
        for _ in range(n):
            a, am, da, dam = t * a - am, a, dt * a + t * da - dam, da
    else:
        for _ in range(-n):
            a, am, da, dam = am, t * am - a, dam, dt * am + t * dam - da
    phi = a - d * am
    dphi = da - dd * am - d * dam
    scale = np.abs(a) + np.abs(d) * np.abs(am) + 1e-300
    return phi, dphi, scale


def prop_w_matrix(k: int, pt: RepPoint) -> Mat2C:
    """rho(w) for the J(k, *) relator word, from the closed-form entries
    (w21 = (2-z) w12 in both families)."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    M, z = pt.M, pt.z
    Minv = 1.0 / M
    m2, mm2 = M * M, 1.0 / (M * M)
    m = (k - 1) // 2 if k % 2 else k // 2
    pair = eval_pair(m, z)
    sm, sm1 = pair.s_j, pair.s_jm1
    if k % 2:
        w11 = m2 * sm * sm - 2.0 * m2 * sm * sm1 + (2.0 + m2 - z) * sm1 * sm1
        w12 = (sm - sm1) * (M * sm - Minv * sm1)
        w22 = (mm2 + 2.0 - z) * sm * sm - 2.0 * mm2 * sm * sm1 + mm2 * sm1 * sm1
    else:
        w11 = (
            sm * sm
            + (2.0 - 2.0 * z) * sm * sm1
            + (1.0 + 2.0 * m2 - 2.0 * z - m2 * z + z * z) * sm1 * sm1
        )
        w12 = (Minv - M) * sm * sm1 + (Minv + M - Minv * z) * sm1 * sm1
        w22 = sm * sm - 2.0 * sm * sm1 + (1.0 + 2.0 * mm2 - mm2 * z) * sm1 * sm1
    return Mat2C(w11, w12, (2.0 - z) * w12, w22)
