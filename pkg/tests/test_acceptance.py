"""End-to-end acceptance checks, one test per criterion."""

import io
import json
import time

import mpmath
from mpmath import mp

from oracles import limit_definition_stieltjes
from stieltjes_kit import constants as K
from stieltjes_kit.bounds import (crossover, log_matsuoka_bound, q_range_limit, theorem1_bound,
                                  verify_proof_constants)
from stieltjes_kit.characters import character, primitive_characters
from stieltjes_kit.cli import main
from stieltjes_kit.lfunc import application_a_bound, verify_application_a, zeta_laurent_eval
from stieltjes_kit.numerics import PrecisionContext
from stieltjes_kit.stieltjes import (character_constants, gamma_chi, gamma_hurwitz, gamma_zeta,
                                     hurwitz_constants, zeta_table)
from stieltjes_kit.zerofree import check_improvement


def test_criterion_1_zero_free_disk(criterion):
    start = time.perf_counter()
    out = io.StringIO()
    code = main(["zerofree", "--tol", "1e-6", "--prec", "50", "--format", "json"], stream=out)
    elapsed = time.perf_counter() - start
    cert = json.loads(out.getvalue())["data"]
    out = io.StringIO()
    main(["zerofree", "--at", "2.2093", "--prec", "50", "--format", "json"], stream=out)
    at = json.loads(out.getvalue())["data"]
    t0, margin = mpmath.mpf(cert["t0"]), mpmath.mpf(cert["margin"])
    head, tail = mpmath.mpf(at["head"]), mpmath.mpf(at["tail"])
    ok = (code == 0 and mpmath.mpf("2.2093") <= t0 <= mpmath.mpf("2.2095") and margin > 0
          and abs(head - mpmath.mpf("0.000941198")) <= 5e-6
          and abs(tail - mpmath.mpf("0.000924993")) <= 5e-6 and elapsed < 60)
    criterion(1, ok, f"t0={mpmath.nstr(t0, 10)} margin={mpmath.nstr(margin, 4)} "
                     f"head={mpmath.nstr(head, 9)} tail={mpmath.nstr(tail, 9)} time={elapsed:.2f}s")
    assert ok


def test_criterion_2_improvement(criterion):
    report = check_improvement(ctx=PrecisionContext(50))
    ok = report.radius > mpmath.sqrt(2) and abs(report.area_ratio - mpmath.mpf("2.44")) <= 0.01
    criterion(2, ok, f"radius={mpmath.nstr(report.radius, 10)} > sqrt(2), "
                     f"area ratio={mpmath.nstr(report.area_ratio, 6)}")
    assert ok


def test_criterion_3_crossover(criterion):
    ctx = PrecisionContext(50)
    beaten = []
    for n in range(12, 101):
        b = theorem1_bound(n, 1, ctx)
        with mp.workdps(60):
            beaten.append(b.log_combined + mpmath.loggamma(n + 1) < log_matsuoka_bound(n, ctx))
    point = crossover(1, 100, ctx)
    ok = all(beaten) and point <= 12
    criterion(3, ok, f"explicit bound wins for all 12..100: {all(beaten)}; computed crossover "
                     f"{point}, reported {K.REPORTED_CROSSOVER}, "
                     f"{'agree' if point == K.REPORTED_CROSSOVER else 'DISAGREE'}")
    assert ok


def test_criterion_4_bound_validity(criterion):
    ctx = PrecisionContext(30)
    checked, bad = 0, []
    values, _ = hurwitz_constants(40, 1, ctx)
    for n in range(2, 41):
        with mp.workdps(40):
            if not abs(values[n]) / mpmath.factorial(n) <= theorem1_bound(n, 1, ctx).combined:
                bad.append((1, 0, n))
        checked += 1
    for q in (3, 4, 5, 7, 8):
        admissible = [n for n in range(2, 31) if q < q_range_limit(n, ctx)]
        for chi in primitive_characters(q):
            values, _ = character_constants(30, chi, ctx)
            for n in admissible:
                with mp.workdps(40):
                    if not abs(values[n]) / mpmath.factorial(n) <= theorem1_bound(n, q, ctx).combined:
                        bad.append((q, chi.index, n))
                checked += 1
    ok = not bad
    criterion(4, ok, f"{checked} (q, chi, n) cases checked, violations: {bad or 'none'}")
    assert ok


def test_criterion_5_application_a(criterion):
    ctx = PrecisionContext(30)
    q = 151
    chars = [chi for chi in primitive_characters(q) if not chi.is_principal][:2]
    bound = application_a_bound(q, ctx)
    worst, count = mpmath.mpf(0), 0
    for chi in chars:
        reports = verify_application_a(chi, 16, ctx, include_center=False)
        assert len(reports) == 16
        worst = max(worst, max(r.measured_remainder for r in reports))
        count += len(reports)
    ok = worst <= bound
    criterion(5, ok, f"q={q}, characters {[c.index for c in chars]}, {count} boundary samples, "
                     f"worst remainder {mpmath.nstr(worst, 4)} <= bound {mpmath.nstr(bound, 5)}")
    assert ok


def test_criterion_6_proof_constants(criterion):
    report = verify_proof_constants(12, 500, (150, 151, 500, 10**4), PrecisionContext(50))
    parts = []
    for c in report.checks:
        where = f", fails at {len(c.failures)}/{c.points} points from {c.failures[0]}" if c.failures else ""
        parts.append(f"{c.name}={'ok' if c.passed else 'FAIL'}{where}")
    ok = report.passed
    criterion(6, ok, "; ".join(parts))
    assert ok, "; ".join(parts)


def test_criterion_7_oracle_equivalence(criterion):
    ctx = PrecisionContext(50)
    eps = mpmath.mpf(10) ** -30
    with mp.workdps(60):
        limit_gaps = [abs(gamma_zeta(n, ctx) - limit_definition_stieltjes(n)) for n in range(6)]
        half = abs(gamma_hurwitz(0, "1/2", ctx) - (mpmath.euler + 2 * mpmath.log(2)))
        sums = [abs(mpmath.fsum(gamma_hurwitz(0, f"{a}/{q}", ctx) for a in range(1, q + 1))
                    - q * (mpmath.euler + mpmath.log(q))) for q in range(1, 7)]
        chi4 = abs(gamma_chi(0, character(4, 1), ctx) - mpmath.pi / 4)
        ok = (max(limit_gaps) < 1e-8 and half < eps and max(sums) < eps and chi4 < eps)
        criterion(7, ok, f"limit oracle gap {mpmath.nstr(max(limit_gaps), 3)}, gamma0(1/2) gap "
                         f"{mpmath.nstr(half, 3)}, multiplication gap {mpmath.nstr(max(sums), 3)}, "
                         f"gamma0(chi4) gap {mpmath.nstr(chi4, 3)}")
    assert ok


def _laurent_points():
    pts = []
    with mp.workdps(50):
        for k in range(20):
            r = mpmath.mpf("0.5") * (k % 5 + 1) / 5
            angle = 2 * mpmath.pi * (k * 7 + 1) / 20
            pts.append(1 + r * mpmath.expj(angle))
    return pts


def test_criterion_8_laurent_reconstruction(criterion):
    ctx = PrecisionContext(40)
    table = zeta_table(40, ctx)
    worst = mpmath.mpf(0)
    for s in _laurent_points():
        approx = zeta_laurent_eval(s, 40, table, ctx)
        with mp.workdps(50):
            worst = max(worst, abs(approx - mpmath.zeta(s)))
    ok = worst < mpmath.mpf(10) ** -20
    criterion(8, ok, f"20 points with |s-1| <= 0.5, worst |Laurent - zeta| = {mpmath.nstr(worst, 3)}")
    assert ok
