"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here.
"""

import gzip
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from pqatlas import atlas, coeffs, domains, radial

GOLDEN = Path(__file__).parent / "golden" / "atlas_n6_200.csv.gz"


def _report(criterion: int, ok: bool, detail: str):
    # Bypass pytest's capture so the per-criterion line always lands in the
    # terminal log.
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}",
          file=sys.__stdout__)
    assert ok, detail


def test_criterion_01_exact_reduction_identities():
    t0 = time.monotonic()
    report = coeffs.verify_S_reduction()
    elapsed = time.monotonic() - t0
    ok = report.ok and len(report.entries) == 9 and elapsed <= 30.0
    _report(1, ok, f"9/9 reduction identities exact in {elapsed:.2f}s (limit 30s)")


def test_criterion_02_critical_vanishing_grid():
    checked = 0
    failed = []
    for n in range(3, 13):
        for tenth in range(1, 10):
            q = Fraction(tenth, 10)
            if n - (n - 1) * q <= 0:
                continue
            checked += 1
            if not coeffs.critical_vanishing(n, q):
                failed.append((n, q))
    _report(2, not failed, f"all six coefficients vanish exactly at {checked} grid points")


def test_criterion_03_asymptotic_expansions():
    rho = coeffs.verify_I_asymptotics("rho")
    eps = coeffs.verify_I_asymptotics("eps")
    names = {e.name for e in rho.entries} | {e.name for e in eps.entries}
    required = (
        [f"I{j}: rho^0 coefficient" for j in (1, 2)]
        + ["I8: rho^1 coefficient", "I9: rho^2 coefficient", "I10: rho^3 coefficient"]
        + [f"I{j}: eps^0 coefficient" for j in (1,)]
        + ["I5: eps^1 coefficient", "I7: eps^2 coefficient", "I9: eps^3 coefficient",
           "I10: eps^4 coefficient"]
    )
    ok = rho.ok and eps.ok and all(r in names for r in required)
    _report(3, ok, f"{len(rho.entries)} + {len(eps.entries)} expansion coefficients exact")


def test_criterion_04_ground_state_residuals():
    radii = np.logspace(-1, 1, 32)
    worst = 0.0
    for n, q in ((3, 0.5), (4, 1.0 / 3.0), (6, 0.25)):
        gs = radial.GroundState(n, q)
        for r in radii:
            r = float(r)
            res = radial.pde_residual_radial(gs, r)
            scale = abs(gs.d2u(r)) + abs((gs.n - 1) / r * gs.du(r)) + 1e-300
            worst = max(worst, abs(res) / scale)
    # Analytic cancellation oracle at (3, 1/2): residual = (1 - 4K) * prefactor.
    gs = radial.GroundState(3, 0.5)
    exact = 1.0 - 4.0 * gs.K == 0.0
    _report(4, worst <= 1e-10 and exact,
            f"worst relative residual {worst:.2e} (tol 1e-10); 1-4K == 0 exactly: {exact}")


def test_criterion_05_H_identity_and_tensor():
    rng = np.random.default_rng(42)
    worst = 0.0
    for n, q in ((3, 0.5), (4, 1.0 / 3.0), (6, 0.25)):
        for _ in range(20):
            beta, sigma = (float(x) for x in rng.uniform(-3.0, 3.0, size=2))
            r = float(rng.uniform(0.1, 10.0))
            lhs, rhs = radial.deltaH_sides(n, q, beta, sigma, r)
            worst = max(worst, abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0))
        beta_o, sigma_o = radial.optimal_pair(n, q)
        dev = max(radial.tensor_deviation(n, q, beta_o, sigma_o, float(r))
                  for r in np.logspace(-1, 1, 8))
        assert dev <= 1e-10
    generic = radial.tensor_deviation(3, 0.5, 0.0, 0.0, 1.0)
    ok = worst <= 1e-8 and generic > 1e-3
    _report(5, ok, f"worst identity residual {worst:.2e} (tol 1e-8); "
                   f"optimal-pair deviation vanishes, generic {generic:.3f} > 1e-3")


def test_criterion_06_auxiliary_constancy():
    radii = np.logspace(-1, 1, 32)
    worst = 0.0
    for n, q in ((3, 0.5), (4, 1.0 / 3.0), (6, 0.25)):
        F = np.array(radial.aux_F_profile(n, q, radii))
        worst = max(worst, (F.max() - F.min()) / F.mean())
    Fc = np.array(radial.aux_F_profile(3, 0.5, radii, d_scale=1.1))
    control = (Fc.max() - Fc.min()) / Fc.mean()
    ok = worst <= 1e-10 and control > 1e-3
    _report(6, ok, f"worst relative spread {worst:.2e} (tol 1e-10); "
                   f"perturbed-d control spread {control:.2e} > 1e-3")


def test_criterion_07_existence_thresholds():
    cases = [
        (3, 0.0, 2.0, 8.0, 5.0, 0.1),
        (4, 0.0, 2.0, 6.0, 3.0, 0.1),
        (3, 0.25, 2.0, 9.0, domains.curve_V(3, 0.25) + 0.75, 0.15),
    ]
    details = []
    ok = True
    for n, q, lo, hi, expect, tol in cases:
        t0 = time.monotonic()
        p_star = radial.existence_threshold(n, q, lo, hi, 1e-3)
        elapsed = time.monotonic() - t0
        good = abs(p_star - expect) <= tol and elapsed <= 60.0
        ok = ok and good
        details.append(f"({n},{q}): {p_star:.4f} vs {expect:.4f} in {elapsed:.1f}s")
    _report(7, ok, "; ".join(details))


def test_criterion_08_region_inequalities():
    ok = True
    details = []
    for n in range(4, 11):
        rep = domains.appendixB_check(n, 0.01)
        has_b2 = any(e.name.startswith("B.2") for e in rep.entries)
        ok = ok and rep.ok and has_b2
        if not rep.ok:
            details.append(f"n={n} FAILED")
    rep3 = domains.appendixB_check(3, 0.01)
    ok = ok and rep3.ok
    _report(8, ok, "inequalities hold for n=4..10 (with 100x100 grid check) and n=3"
            + ("; " + "; ".join(details) if details else ""))


def test_criterion_09_atlas_anchors(tmp_path):
    domains.clear_sup_memo()
    scan = atlas.scan_grid(6, (-1.0, 4.0), (0.0, 2.0), 400, False)  # audits disjointness
    cell_w = 5.0 / 400

    row0 = scan.cells[0]
    flips = [scan.p_center(ip) + cell_w / 2
             for ip in range(399) if row0[ip].status != row0[ip + 1].status]
    transition_ok = any(abs(f - 2.0) <= cell_w for f in flips)

    high_ok = all(
        v.status == domains.LIOUVILLE
        for iq in range(400) if scan.q_center(iq) >= 5.0 / 3.0
        for v in scan.cells[iq]
    )

    bounded = atlas.scan_grid(6, (-1.0, 4.0), (0.0, 2.0), 400, True)
    bounded_ok = all(
        v.status in (domains.LIOUVILLE, domains.LIOUVILLE_BOUNDED)
        for iq in range(400) if bounded.q_center(iq) >= 1.5
        for v in bounded.cells[iq]
    )

    domains.clear_sup_memo()
    regen = atlas.scan_grid(6, (-1.0, 4.0), (0.0, 2.0), 200, False)
    out = tmp_path / "regen.csv"
    atlas.emit_csv(regen, out)
    golden_ok = out.read_bytes() == gzip.decompress(GOLDEN.read_bytes())

    ok = transition_ok and high_ok and bounded_ok and golden_ok
    _report(9, ok, f"q=0 transition at 2 +/- one cell: {transition_ok}; "
                   f"q>=5/3 all Liouville: {high_ok}; bounded q>=3/2: {bounded_ok}; "
                   f"no disjointness conflicts; golden CSV byte-identical: {golden_ok}")


def test_criterion_10_shooting_oracle():
    out = radial.shoot(3, 5, 0, 1.0, 50.0, 1e-10, r_samples=(1.0,))
    u1 = out.samples[0][1]
    exact = (4.0 / 3.0) ** -0.5
    value_ok = out.status == radial.POSITIVE_GLOBAL and abs(u1 - exact) <= 1e-6

    o1 = radial.shoot(3, 3, 0, 1.0, 50.0, 1e-10)
    o2 = radial.shoot(3, 3, 0, 2.0, 50.0, 1e-10)
    scaling_ok = (
        o1.status == o2.status == radial.HITS_ZERO
        and abs(o2.radius - o1.radius / 2.0) / (o1.radius / 2.0) <= 0.01
    )
    _report(10, value_ok and scaling_ok,
            f"u(1) err {abs(u1 - exact):.2e} (tol 1e-6); "
            f"zero-radius scaling ratio {o2.radius / o1.radius:.5f} (expect 0.5 +/- 1%)")
