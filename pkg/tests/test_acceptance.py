"""Acceptance criteria; each test prints one PASS/FAIL line before asserting."""

import itertools
import math
import subprocess
import sys
import time
from pathlib import Path

import pytest

from ptrans import functions as fn
from ptrans import harness
from ptrans import identities as ids
from ptrans.transforms import iterated_l2, p_nu2_transform

from conftest import rel_err

K0_AT_1 = 0.42102443824070834  # mpmath besselk(0, 1)
HALF_E_E1_AT_1 = 0.29817368116159703  # mpmath e * e1(1) / 2


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok
    return emit


def test_1_lemma_iteration(report):
    start = time.perf_counter()
    gaps = []
    for g, nu, y in itertools.product((fn.gauss(), fn.power_gauss(1.0, 2.0)), (0.75, 1.0, 1.5, 2.5), (0.5, 1.0, 2.0)):
        lhs = iterated_l2(g.realization, nu, y)
        rhs = math.gamma(nu) / 2 * p_nu2_transform(g.realization, nu, y).value
        gaps.append(rel_err(lhs.value, rhs))
    elapsed = time.perf_counter() - start
    ok = len(gaps) == 24 and max(gaps) <= 1e-6 and elapsed <= 60
    report(1, ok, f"24 cases, worst rel gap {max(gaps):.2e}, {elapsed:.1f} s")
    assert ok


def test_2_bessel_grid(report):
    worst, count, failures = 0.0, 0, []
    ctx = ids.EvaluationContext(ids.DEFAULT_CONFIG)
    for mu, shift, z, y in itertools.product((0.0, 0.5, 1.0), (1.0, 1.5), (0.5, 1.0, 2.0), (0.5, 1.0, 2.0)):
        nu = mu + shift
        tol = 1e-4 if 2 * nu - mu - 1 < 1 else 1e-6
        r = ids.evaluate_identity("PNU2-BESSELJ", {"mu": mu, "nu": nu, "z": z, "y": y}, tol_rel=tol, context=ctx)
        count += 1
        worst = max(worst, r.rel_err)
        if not (r.passed and r.rel_err <= tol):
            failures.append((mu, nu, z, y, r.rel_err))
    ok = count == 54 and not failures
    report(2, ok, f"{count} points, worst rel err {worst:.2e}, failures {failures}")
    assert ok


def test_3_spot_values(report):
    widder = ids.evaluate_identity("WIDDER-BESSELJ", {"mu": 0.0, "z": 1.0, "y": 1.0})
    mu32 = ids.evaluate_identity("BESSELJ-MU32", {"mu": 0.0, "z": 1.0, "y": 1.0})
    checks = [abs(widder.lhs_value - K0_AT_1), abs(widder.rhs_value - K0_AT_1),
              abs(mu32.lhs_value - math.exp(-1)), abs(mu32.rhs_value - math.exp(-1))]
    ok = max(checks) <= 1e-7
    report(3, ok, f"K_0(1) and exp(-1) sides, worst abs err {max(checks):.2e}")
    assert ok


def test_4_theorem_relations(report):
    selection = harness.default_selection()
    results, bad = [], []
    for f, g in selection.pairs:
        limit = 1e-4 if (f.oscillatory or g.oscillatory) else 1e-6
        for nu in selection.nus:
            if harness.theorem_hypothesis(f, g, nu) is None:
                found = harness.check_theorem(f, g, nu)
                results.extend(found)
                bad.extend(r.case_id for r in found if not r.rel_gap <= limit)
    diagonal = [r for r in results if r.relation == "T1-3" and r.f_name == r.g_name]
    ok = len(results) >= 36 and not bad and diagonal and all(r.rel_gap == 0.0 for r in diagonal)
    report(4, ok, f"{len(results)} relations, {len(diagonal)} f=g cases, failures {bad}")
    assert ok


def test_5_moment_corollary(report):
    # criterion value: both sides equal pi^(3/2)/4 for g = u^2 exp(-u^2), mu = 1/2, nu = 1
    target = math.pi ** 1.5 / 4
    r = ids.evaluate_identity("CALI-3", {"mu": 0.5, "nu": 1.0}, function=fn.power_gauss(1.0, 1.0))
    printed = r.forms[0]
    lhs_gap, rhs_gap = rel_err(printed.lhs_value, target), rel_err(printed.rhs_value, target)
    ok = lhs_gap <= 1e-6 and rhs_gap <= 1e-6
    report(5, ok, f"quadrature side {printed.lhs_value:.12g}, closed side {printed.rhs_value:.12g}, "
                  f"target {target:.12g}")
    assert lhs_gap <= 1e-6
    assert rhs_gap <= 1e-6


def test_6_examples(report):
    tricomi = ids.evaluate_identity("EX-GAUSS-TRICOMI", {"mu": 0.0, "nu": 1.0, "a": 1.0, "y": 1.0})
    gaps = [rel_err(tricomi.lhs_value, HALF_E_E1_AT_1), rel_err(tricomi.rhs_value, HALF_E_E1_AT_1)]
    grid = [{"nu": nu, "a": a, "y": y} for nu, a, y in itertools.product((1.5, 2.0), (0.5, 1.0), (0.5, 1.0))]
    e1 = ids.evaluate_grid("EX-E1-WHITTAKER", grid=grid, tol_rel=1e-5)
    ok = max(gaps) <= 1e-6 and all(r.passed and r.rel_err <= 1e-5 for r in e1)
    report(6, ok, f"Tricomi rel err {max(gaps):.2e}; E1 grid {sum(r.passed for r in e1)}/{len(e1)}, "
                  f"worst {max(r.rel_err for r in e1):.2e}")
    assert ok


def test_7_ci_exponent(report):
    verdicts = [ids.verify_ci_exponent(None, p["mu"], p["nu"], p["t"], tol_rel=1e-5)
                for p in ids.lookup("CI-1").default_grid[:4]]
    single = all(v.selected is not None and sum(g is not None and g <= 1e-5 for g in v.rel_gaps.values()) == 1
                 for v in verdicts)
    winners = {v.selected for v in verdicts}
    losers_far = all(g is not None and g >= 10 * v.tolerance
                     for v in verdicts for label, g in v.rel_gaps.items() if label != v.selected)
    noted = "Verdict" in ids.lookup("CI-1").notes and "2nu+2mu-3" in ids.lookup("CI-1").notes
    ok = len(verdicts) >= 3 and single and len(winners) == 1 and losers_far and noted
    report(7, ok, f"{len(verdicts)} tuples select {sorted(winners)}; loser gaps "
                  f"{[round(v.rel_gaps['printed'], 3) for v in verdicts]}")
    assert ok


def test_8_specfun_invariants(report):
    here = Path(__file__).parent
    start = time.perf_counter()
    done = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(here / "test_specfun.py")], capture_output=True, text=True, cwd=here.parent)
    elapsed = time.perf_counter() - start
    ok = done.returncode == 0 and elapsed <= 600
    tail = done.stdout.strip().splitlines()[-1] if done.stdout.strip() else done.stderr[-200:]
    report(8, ok, f"{tail}; {elapsed:.1f} s")
    assert ok


def test_default_suite_run(report):
    start = time.perf_counter()
    suite = harness.run_suite(harness.default_selection())
    s = suite.summary()
    ok = (s["identity_entries"] == len(ids.identity_ids()) and s["identity_entries_pass"] == s["identity_entries"]
          and len(harness.default_selection().pairs) >= 12 and suite.all_pass)
    report("suite", ok, f"{s['identity_entries_pass']}/{s['identity_entries']} entries, "
                        f"{s['parseval_pass']}/{s['parseval_cases']} relations "
                        f"({s['parseval_skipped']} skipped), {time.perf_counter() - start:.0f} s")
    assert ok
