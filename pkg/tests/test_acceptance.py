"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the report lines.
"""

import math
import time

import numpy as np
import pytest

from dtvol.riley import (
    prop_w_matrix,
    riley_closed,
    riley_coefficients,
    riley_even,
    riley_odd,
    riley_recursive,
)
from dtvol.slrep import (
    RepPoint,
    le_poly_value,
    mednykh_poly_value,
    rho_word,
    riley_poly_value,
)
from dtvol.solver import (
    NonHyperbolicError,
    find_alpha_K,
    geometric_branch,
    phi_coeffs,
    roots_of_coeffs,
)
from dtvol.volume import cone_volume, longitude_L, volume_curve
from dtvol.words import KnotParam, TwoBridgeParams, jk_word, twobridge_word

from oracles import FIG8_VOLUME, random_admissible_word, random_reppoint

TWO_PI_3 = 2 * math.pi / 3
FIG8 = KnotParam(2, -1)

# knots spanning both families for the self-consistency and regime criteria
CONSISTENCY_KNOTS = [
    KnotParam(2, -1),  # J(2,-2)
    KnotParam(3, 1),  # J(3,2)
    KnotParam(4, 1),  # J(4,2)
    KnotParam(5, -1),  # J(5,-2)
    KnotParam(4, -2),  # J(4,-4)
]


def report(num: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {num:02d} [{'PASS' if ok else 'FAIL'}] {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def tracked_branches():
    return {knot: geometric_branch(knot, alpha=1e-4) for knot in CONSISTENCY_KNOTS}


def test_criterion_01_figure_eight_complete_volume():
    t0 = time.perf_counter()
    res = cone_volume(FIG8, 1e-4, 1e-9)
    elapsed = time.perf_counter() - t0
    diff = abs(res.volume - FIG8_VOLUME)
    ok = diff < 1e-6 and elapsed < 5.0
    report(
        1,
        ok,
        f"figure-eight complete volume: |V - 6*Lob(pi/3)| = {diff:.2e} "
        f"(limit 1e-6), runtime {elapsed:.2f}s (limit 5s)",
    )


def test_criterion_02_euclidean_angle_sweep():
    t0 = time.perf_counter()
    a_fig8 = find_alpha_K(FIG8)
    fig8_ok = abs(a_fig8 - TWO_PI_3) < 1e-4
    out_of_range = []
    tested = 0
    for k in range(2, 10):
        for n in [i for i in range(-5, 6) if i != 0]:
            knot = KnotParam(k, n)
            try:
                a = find_alpha_K(knot)
            except NonHyperbolicError:
                continue
            tested += 1
            if not (TWO_PI_3 - 1e-4 <= a < math.pi):
                out_of_range.append((k, n, a))
    elapsed = time.perf_counter() - t0
    ok = fig8_ok and not out_of_range and elapsed < 60.0
    report(
        2,
        ok,
        f"alpha_K: fig8 |err| = {abs(a_fig8 - TWO_PI_3):.2e} (limit 1e-4); "
        f"{tested} hyperbolic knots all in [2pi/3 - 1e-4, pi): "
        f"{not out_of_range}{' ' + str(out_of_range) if out_of_range else ''}; "
        f"runtime {elapsed:.1f}s (limit 60s)",
    )


def test_criterion_03_trefoil_exclusion():
    trefoil = KnotParam(2, 1)
    raised = False
    try:
        geometric_branch(trefoil, alpha=0.5)
    except NonHyperbolicError:
        raised = True
    # the mechanism: the seed polynomial must have only real roots
    roots = roots_of_coeffs(phi_coeffs(trefoil, 0.1))
    all_real = bool(np.all(np.abs(roots.imag) < 1e-9))
    ok = raised and all_real
    report(
        3,
        ok,
        f"trefoil exclusion: NonHyperbolic raised = {raised}, "
        f"seed roots all real = {all_real} (roots {np.round(roots, 6)})",
    )


def test_criterion_04_triple_formula_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    words = [jk_word(k) for k in range(2, 13)]
    for p in range(3, 22, 2):
        for q in range(-p + 2, p, 2):
            if q == 0 or math.gcd(p, abs(q)) != 1:
                continue
            words.append(twobridge_word(TwoBridgeParams(p, q)))
    samples = 0
    worst = 0.0
    i = 0
    while samples < 200:
        w = words[i % len(words)] if i < len(words) else random_admissible_word(rng)
        i += 1
        pt = random_reppoint(rng)
        if abs(pt.r) < 1e-3:
            continue
        r = riley_poly_value(w, pt)
        l = le_poly_value(w, pt)
        m = mednykh_poly_value(w, pt)
        s = max(1.0, abs(r))
        worst = max(worst, abs(l - r) / s, abs(m - r) / s)
        samples += 1
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 10.0
    report(
        4,
        ok,
        f"riley = le = mednykh on {samples} samples "
        f"({len(words)} fixed words incl. jk(k<=12), b(p<=21,q)): "
        f"max rel spread {worst:.2e} (limit 1e-10), runtime {elapsed:.2f}s (limit 10s)",
    )


def test_criterion_05_closed_vs_recursive():
    t0 = time.perf_counter()
    rng = np.random.default_rng(102)
    worst = 0.0
    for k in range(2, 10):
        for n in [i for i in range(-5, 6) if i != 0]:
            knot = KnotParam(k, n)
            for _ in range(100):
                pt = random_reppoint(rng, spread=3.0)
                a = riley_closed(knot, pt)
                b = riley_recursive(k, n, pt)
                worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 10.0
    report(
        5,
        ok,
        f"closed vs recursive Riley over 2<=k<=9, |n|<=5, 100 points each: "
        f"max rel diff {worst:.2e} (limit 1e-10), runtime {elapsed:.2f}s (limit 10s)",
    )


def test_criterion_06_prop_w_entries():
    rng = np.random.default_rng(103)
    worst_entry = worst_trace = worst_w21 = 0.0
    for k in range(2, 10):
        w = jk_word(k)
        for _ in range(25):
            pt = random_reppoint(rng, spread=1.5)
            closed = prop_w_matrix(k, pt)
            direct = rho_word(w, pt)
            norm = 1 + max(abs(closed.e11), abs(closed.e12), abs(closed.e22))
            worst_entry = max(worst_entry, closed.max_abs_diff(direct) / norm)
            t = riley_coefficients(k, pt).t
            worst_trace = max(
                worst_trace, abs(closed.trace() - t) / max(1.0, abs(t))
            )
            worst_w21 = max(
                worst_w21,
                abs(closed.e21 - (2 - pt.z) * closed.e12) / max(1.0, abs(closed.e12)),
            )
    ok = worst_entry < 1e-10 and worst_trace < 1e-12 and worst_w21 == 0.0
    report(
        6,
        ok,
        f"prop-w entries vs product: max rel entry diff {worst_entry:.2e} "
        f"(limit 1e-10), trace vs t {worst_trace:.2e} (limit 1e-12), "
        f"w21 - (2-z)w12 = {worst_w21:.1e}",
    )


def test_criterion_07_knot_symmetry():
    t0 = time.perf_counter()
    alphas = list(np.linspace(0.11, math.pi - 0.01, 20))
    worst = 0.0
    for (ka, na), (kb, nb) in [((2, 2), (4, 1)), ((2, 3), (6, 1))]:
        va = volume_curve(KnotParam(ka, na), alphas, 1e-9)
        vb = volume_curve(KnotParam(kb, nb), alphas, 1e-9)
        worst = max(
            worst, max(abs(x.volume - y.volume) for x, y in zip(va, vb))
        )
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 60.0
    report(
        7,
        ok,
        f"Vol(J(2,4))=Vol(J(4,2)), Vol(J(2,6))=Vol(J(6,2)) on 20 angles: "
        f"max |diff| {worst:.2e} (limit 1e-8), runtime {elapsed:.1f}s (limit 60s)",
    )


def test_criterion_08_figure_eight_presentations():
    rng = np.random.default_rng(104)
    worst_poly = 0.0
    for _ in range(50):
        pt = random_reppoint(rng)
        worst_poly = max(worst_poly, abs(riley_odd(1, 1, pt) - riley_even(1, -1, pt)))
    alphas = list(np.linspace(0.2, math.pi - 0.2, 8))
    va = volume_curve(KnotParam(3, 1), alphas, 1e-9)
    vb = volume_curve(KnotParam(2, -1), alphas, 1e-9)
    worst_vol = max(abs(x.volume - y.volume) for x, y in zip(va, vb))
    ok = worst_poly < 1e-12 and worst_vol < 1e-8
    report(
        8,
        ok,
        f"Phi_J(3,2) == Phi_J(2,-2): max |poly diff| {worst_poly:.2e} "
        f"(limit 1e-12); volume curves max |diff| {worst_vol:.2e} (limit 1e-8)",
    )


def test_criterion_09_self_consistency_oracle():
    worst = 0.0
    details = []
    for knot in CONSISTENCY_KNOTS:
        base = cone_volume(knot, 0.5, 1e-9)
        alt_rule = cone_volume(knot, 0.5, 1e-9, rule="simpson")
        alt_step = cone_volume(knot, 0.5, 1e-9, step=0.0025)
        alt_form = cone_volume(knot, 0.5, 1e-9, form="recursive")
        spread = max(
            abs(alt_rule.volume - base.volume),
            abs(alt_step.volume - base.volume),
            abs(alt_form.volume - base.volume),
        )
        worst = max(worst, spread)
        details.append(f"{knot}:{spread:.1e}")
    ok = worst < 1e-8
    report(
        9,
        ok,
        "independent quadrature / halved step / recursive-form volumes: "
        f"max spread {worst:.2e} (limit 1e-8) [{', '.join(details)}]",
    )


def test_criterion_10_regime_split(tracked_branches):
    worst_above = 0.0
    min_below = math.inf
    for knot, br in tracked_branches.items():
        assert br.alpha_K is not None
        for bp in br.points:
            L = longitude_L(knot, bp.z, bp.M)
            logL = math.log(abs(L))
            if bp.omega > br.alpha_K + 1e-9:
                worst_above = max(worst_above, abs(logL))
            elif 0.05 < bp.omega < br.alpha_K - 1e-3:
                min_below = min(min_below, logL)
    ok = worst_above < 1e-7 and min_below > 0.0
    report(
        10,
        ok,
        f"regime split on {len(tracked_branches)} tracked branches: "
        f"max | log|L| | above alpha_K = {worst_above:.2e} (limit 1e-7), "
        f"min log|L| below = {min_below:.2e} (> 0)",
    )
