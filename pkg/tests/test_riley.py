import warnings

import numpy as np
import pytest

from dtvol.riley import (
    ConditioningWarning,
    prop_w_matrix,
    riley_closed,
    riley_coefficients,
    riley_even,
    riley_odd,
    riley_phi_dphi,
    riley_phi_dphi_scalar,
    riley_recursive,
    riley_zpoly,
)
from dtvol.slrep import RepPoint, rho_word, riley_poly_value
from dtvol.words import KnotParam, jk_word

from oracles import random_reppoint


def test_odd_m1_figure_eight_at_M1():
    # t1 = 4 - z - z(z-2)^2, d1 = 1 - z(z-2)(z-1); Phi = z^2 - 3z + 3
    for z in (0.2, 1.5 - 0.7j, -2.0 + 1.0j):
        pt = RepPoint(1.0, z)
        rc = riley_coefficients(3, pt)
        assert rc.t == pytest.approx(4 - z - z * (z - 2) ** 2)
        assert rc.d == pytest.approx(1 - z * (z - 2) * (z - 1))
        assert riley_odd(1, 1, pt) == pytest.approx(z * z - 3 * z + 3)


def test_odd_m1_symbolic_general_M():
    rng = np.random.default_rng(13)
    for _ in range(20):
        pt = random_reppoint(rng)
        M, z = pt.M, pt.z
        c2 = M**2 + M**-2
        want = 1 + c2 - z + z * z - z * c2
        assert riley_odd(1, 1, pt) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_odd_n0_is_one():
    rng = np.random.default_rng(14)
    for _ in range(10):
        pt = random_reppoint(rng)
        assert riley_odd(2, 0, pt) == pytest.approx(1)
        assert riley_recursive(5, 0, pt) == pytest.approx(1)


def test_even_m1_examples():
    for z in (0.3, 2.2 - 0.4j):
        pt = RepPoint(1.0, z)
        assert riley_even(1, 1, pt) == pytest.approx(3 - z)
        assert riley_even(1, -1, pt) == pytest.approx(z * z - 3 * z + 3)
    rng = np.random.default_rng(15)
    for _ in range(20):
        pt = random_reppoint(rng)
        M, z = pt.M, pt.z
        want = 1 + (z - M**2 - M**-2) * (z - 1)
        assert riley_even(1, -1, pt) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_figure_eight_presentation_coincidence():
    # Phi_{J(3,2)} == Phi_{J(2,-2)} identically
    rng = np.random.default_rng(16)
    for _ in range(50):
        pt = random_reppoint(rng)
        a = riley_odd(1, 1, pt)
        b = riley_even(1, -1, pt)
        assert abs(a - b) < 1e-12 * max(1.0, abs(a))


def test_closed_equals_recursive():
    rng = np.random.default_rng(17)
    for k in range(2, 10):
        for n in range(-5, 6):
            if n == 0:
                continue
            for _ in range(4):
                pt = random_reppoint(rng, spread=3.0)
                a = riley_closed(KnotParam(k, n), pt)
                b = riley_recursive(k, n, pt)
                assert abs(a - b) / max(1.0, abs(a)) < 1e-10, (k, n)


def test_closed_equals_general_word_form():
    rng = np.random.default_rng(18)
    for k in range(2, 10):
        for n in (-3, -1, 1, 2, 4):
            w = jk_word(k) ** n
            for _ in range(3):
                pt = random_reppoint(rng)
                a = riley_closed(KnotParam(k, n), pt)
                b = riley_poly_value(w, pt)
                assert abs(a - b) / max(1.0, abs(a)) < 1e-9, (k, n)


def test_zpoly_coefficients():
    assert np.allclose(riley_zpoly(2, -1, 1.0).coeffs, [3, -3, 1])
    assert np.allclose(riley_zpoly(2, 1, 1.0).coeffs, [3, -1])
    assert riley_zpoly(3, 1, 0.7 + 0.4j).degree == 2


def test_zpoly_matches_recursive_evaluation():
    # agreement to 1e-9 relative, or to the roundoff floor of evaluating the
    # expanded coefficients (eps * sum |c_j||z|^j), whichever is looser
    rng = np.random.default_rng(19)
    eps = np.finfo(float).eps
    for k, n in [(2, -1), (3, 2), (4, -3), (5, 2), (7, -2), (9, 5)]:
        M = complex(rng.uniform(0.5, 1.4), rng.uniform(-0.6, 0.6))
        for form in ("closed", "recursive"):
            p = riley_zpoly(k, n, M, form=form)
            mags = np.abs(p.coeffs)
            for _ in range(50):
                z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
                a = p(z)
                b = riley_recursive(k, n, RepPoint(M, z))
                floor = 64 * eps * float(mags @ (abs(z) ** np.arange(mags.size)))
                assert abs(a - b) < max(1e-9 * max(1.0, abs(b)), floor), (k, n, form)


def test_phi_dphi_structured_evaluation():
    rng = np.random.default_rng(20)
    for k, n in [(2, -1), (5, 3), (8, -4)]:
        M = complex(rng.uniform(0.6, 1.2), rng.uniform(-0.4, 0.4))
        zs = rng.uniform(-2, 2, 8) + 1j * rng.uniform(-2, 2, 8)
        phi, dphi, _ = riley_phi_dphi(k, n, M, zs)
        p = riley_zpoly(k, n, M)
        dp = p.deriv()
        for z, f, df in zip(zs, phi, dphi):
            assert f == pytest.approx(p(complex(z)), rel=1e-8, abs=1e-9)
            assert df == pytest.approx(dp(complex(z)), rel=1e-7, abs=1e-8)
            fs, dfs, _ = riley_phi_dphi_scalar(k, n, M, complex(z))
            assert fs == pytest.approx(f, rel=1e-13, abs=1e-13)
            assert dfs == pytest.approx(df, rel=1e-13, abs=1e-13)


def test_prop_w_matrix_against_product():
    rng = np.random.default_rng(21)
    for k in range(2, 10):
        w = jk_word(k)
        for _ in range(5):
            pt = random_reppoint(rng)
            closed = prop_w_matrix(k, pt)
            direct = rho_word(w, pt)
            norm = 1 + max(abs(closed.e11), abs(closed.e12), abs(closed.e22))
            assert closed.max_abs_diff(direct) < 1e-10 * norm
            assert closed.det() == pytest.approx(1, abs=1e-12 * norm**2)
            # w21 = (2 - z) w12 built in; trace equals the family t
            assert closed.e21 == pytest.approx((2 - pt.z) * closed.e12, rel=1e-12, abs=1e-12)
            t = riley_coefficients(k, pt).t
            assert abs(closed.trace() - t) < 1e-12 * max(1.0, abs(t))


def test_prop_w_example_entries():
    pt = RepPoint(0.9 - 0.2j, 1.3 + 0.5j)
    M, z = pt.M, pt.z
    m = prop_w_matrix(3, pt)
    assert m.e12 == pytest.approx((z - 1) * (M * z - 1 / M))
    m = prop_w_matrix(2, pt)
    assert m.e22 == pytest.approx(z * z - 2 * z + 1 + 2 * M**-2 - M**-2 * z)


def test_conditioning_warning_outside_envelope():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        riley_zpoly(9, 5, 1.1)  # inside the envelope: silent
    with pytest.warns(ConditioningWarning):
        riley_zpoly(21, 1, 1.1)
    with pytest.warns(ConditioningWarning):
        riley_zpoly(3, 11, 1.1)


def test_validation():
    with pytest.raises(ValueError):
        riley_zpoly(1, 1, 1.0)
    with pytest.raises(ValueError):
        riley_zpoly(2, 1, 0.0)
    with pytest.raises(ValueError):
        riley_odd(0, 1, RepPoint(1.0, 0.5))
    with pytest.raises(ValueError):
        riley_zpoly(2, 1, 1.0, form="nope")
