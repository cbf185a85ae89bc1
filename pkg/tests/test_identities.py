"""Catalog structure, per-entry grids, spot values and cross-entry consistency."""

import json
import math

import pytest

from ptrans import functions as fn
from ptrans import identities as ids
from ptrans.errors import DomainError, StripViolation

from conftest import rel_err

K0_AT_1 = 0.4210244382407083  # mpmath besselk(0, 1)

EXPECTED_IDS = [
    "L2-KERNEL", "ITER-L2-PNU2", "ITER-L2-WIDDER", "PNU2-BESSELJ", "BESSELJ-MU32", "BESSELJ-MU12",
    "GLASSER-BESSELJ", "WIDDER-BESSELJ", "CK-1", "CK-2", "CK-3", "RCK-1", "RCK-2", "RCK-3",
    "CALI-1", "CALI-2", "CALI-3", "PNU2-POWER", "CI-1", "CI-2", "EX-E1-WHITTAKER", "EX-GAUSS-TRICOMI",
    "EX-K-COS", "EX-H-KBESSEL", "PNU2-COS",
]
OSCILLATORY_CLASS = {"BESSELJ-MU12", "EX-H-KBESSEL"}


@pytest.fixture(scope="module")
def grid_reports():
    return {iid: ids.evaluate_grid(iid) for iid in ids.identity_ids()}


class TestCatalog:
    def test_ids(self):
        assert ids.identity_ids() == EXPECTED_IDS

    def test_grids_are_non_empty_and_inside_strips(self):
        for case in ids.catalog():
            assert case.default_grid, case.id
            function = case.default_function()
            for point in case.default_grid:
                params = dict(point)
                if function is not None:
                    params["_small_power"] = function.small_power
                case.check_strip(params)

    def test_bessel_strip(self):
        assert ids.lookup("PNU2-BESSELJ").strip_text() == ["-1 < mu < 2 nu - 1/2", "nu > 0", "z > 0", "y > 0"]

    def test_tolerance_classes(self):
        for case in ids.catalog():
            expected = "oscillatory" if case.id in OSCILLATORY_CLASS else "smooth"
            assert case.tolerance_class == expected, case.id
        assert ids.TOLERANCE_CLASSES == {"smooth": 1e-6, "oscillatory": 1e-4}

    def test_json_export(self):
        doc = json.loads(ids.catalog_json())
        assert [e["id"] for e in doc] == EXPECTED_IDS
        for entry in doc:
            assert {"id", "formula", "strip", "grid", "notes", "forms"} <= set(entry)

    def test_unknown_id(self):
        with pytest.raises(DomainError):
            ids.lookup("NOPE")

    def test_discrepancies_keep_the_printed_form_first(self):
        for case in ids.catalog():
            assert case.forms[0].label == "printed", case.id

    def test_ci_notes_carry_the_verdict(self):
        assert "2nu+2mu-3" in ids.lookup("CI-1").notes
        assert ids.lookup("CI-2").notes.startswith("Verdict")


@pytest.mark.parametrize("iid", EXPECTED_IDS)
def test_entry_passes_on_its_grid(grid_reports, iid):
    reports = grid_reports[iid]
    failures = [(r.params, r.reason) for r in reports if not r.passed]
    assert not failures
    tol = 1e-4 if iid in OSCILLATORY_CLASS else 1e-6
    assert all(r.tol_rel == tol for r in reports)


def test_pass_flag_matches_tolerance_rule(grid_reports):
    for reports in grid_reports.values():
        for r in reports:
            for form in r.forms:
                if form.abs_err is not None:
                    assert form.passed == (form.abs_err <= max(r.tol_abs, r.tol_rel * abs(form.rhs_value)))


class TestSpotValues:
    def test_widder_bessel(self):
        r = ids.evaluate_identity("WIDDER-BESSELJ", {"mu": 0, "z": 1, "y": 1})
        assert r.passed
        assert abs(r.lhs_value - K0_AT_1) <= 1e-7 and abs(r.rhs_value - K0_AT_1) <= 1e-7

    def test_bessel_mu32(self):
        r = ids.evaluate_identity("BESSELJ-MU32", (0, 1, 1))
        assert r.passed
        assert abs(r.lhs_value - math.exp(-1)) <= 1e-7 and abs(r.rhs_value - math.exp(-1)) <= 1e-7

    def test_moment_entry_value(self):
        # mpmath nested quadrature of int P{u^2 exp(-u^2); x} dx: 0.696040999603963
        r = ids.evaluate_identity("CALI-3", {"mu": 0.5, "nu": 1.0})
        assert r.passed and r.matched_form == "rederived" and not r.printed_pass
        assert rel_err(r.lhs_value, 0.696040999603963) <= 1e-6
        assert rel_err(r.rhs_value, math.pi ** 1.5 / 8) <= 1e-12

    def test_gauss_tricomi_against_exponential_integral(self):
        r = ids.evaluate_identity("EX-GAUSS-TRICOMI", {"mu": 0, "nu": 1, "a": 1, "y": 1})
        from ptrans.specfun import exp_integral_e1
        assert rel_err(r.rhs_value, 0.5 * math.e * exp_integral_e1(1.0)) <= 1e-6
        assert rel_err(r.lhs_value, 0.298173681161597) <= 1e-6


class TestErrors:
    def test_out_of_strip(self):
        with pytest.raises(StripViolation):
            ids.evaluate_identity("PNU2-BESSELJ", {"mu": 2.0, "nu": 1.0, "z": 1, "y": 1})

    def test_missing_parameter(self):
        with pytest.raises(DomainError):
            ids.evaluate_identity("WIDDER-BESSELJ", {"mu": 0, "z": 1})

    def test_function_on_closed_entry(self):
        with pytest.raises(DomainError):
            ids.evaluate_identity("L2-KERNEL", {"nu": 1, "y": 1}, function=fn.gauss())


class TestCrossEntry:
    @pytest.mark.parametrize("mu", [0.0, 0.5, 1.0])
    @pytest.mark.parametrize("zy", [(0.5, 1.0), (1.0, 2.0), (2.0, 0.5)])
    def test_pnu2_bessel_reduces_to_mu32(self, mu, zy):
        z, y = zy
        general = ids.evaluate_identity("PNU2-BESSELJ", {"mu": mu, "nu": mu + 1.5, "z": z, "y": y})
        special = ids.evaluate_identity("BESSELJ-MU32", {"mu": mu, "z": z, "y": y})
        # PNU2-BESSELJ carries x^mu J_mu; BESSELJ-MU32 has the extra x from the kernel written out
        assert rel_err(general.rhs_value, special.rhs_value) <= 1e-12
        assert rel_err(general.lhs_value, special.lhs_value) <= 1e-6

    @pytest.mark.parametrize("mu", [0.0, 0.25, 0.5])
    def test_pnu2_bessel_reduces_to_widder(self, mu):
        general = ids.evaluate_identity("PNU2-BESSELJ", {"mu": mu, "nu": 1.0, "z": 1.0, "y": 2.0})
        special = ids.evaluate_identity("WIDDER-BESSELJ", {"mu": mu, "z": 1.0, "y": 2.0})
        assert rel_err(general.rhs_value, special.rhs_value) <= 1e-12

    def test_ck3_residual_bounded_by_ck1_and_ck2(self):
        ctx = ids.EvaluationContext()
        for point in ids.lookup("CK-3").default_grid:
            r1, r2, r3 = (ids.evaluate_identity(i, point, context=ctx) for i in ("CK-1", "CK-2", "CK-3"))
            assert r3.rel_err <= r1.rel_err + r2.rel_err + 4e-16, point

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.0])
    def test_rck3_at_minus_half_is_cosine_identity(self, z):
        r = ids.evaluate_identity("RCK-3", {"mu": -0.5, "z": z}, tol_rel=1e-5)
        assert r.passed


class TestExponentVerdict:
    def test_ci1_example(self):
        verdict = ids.verify_ci_exponent(fn.gauss(), 0.5, 1.5, 1.0)
        assert verdict.selected == "rederived"
        assert verdict.rel_gaps["rederived"] <= 1e-5
        assert verdict.candidates["printed"] is None or verdict.rel_gaps["printed"] > 1e-4

    @pytest.mark.parametrize("point", [(0.5, 1.0, 1.0), (0.75, 1.25, 1.0), (0.5, 1.25, 0.5), (0.75, 1.0, 2.0)])
    def test_ci1_loser_is_far_off(self, point):
        verdict = ids.verify_ci_exponent(None, *point)
        assert verdict.selected == "rederived"
        assert verdict.rel_gaps["printed"] >= 10 * verdict.tolerance

    def test_degenerate_orders(self):
        with pytest.raises(StripViolation):
            ids.verify_ci_exponent(fn.gauss(), 1.0, 1.0, 1.0)

    @pytest.mark.parametrize("point", [(1.0, 1.0), (1.25, 0.5), (1.25, 2.0)])
    def test_ci2_protocol(self, point):
        nu, t = point
        verdict = ids.verify_ci_exponent(None, None, nu, t, identity="CI-2")
        assert verdict.selected == "rederived"
        others = [g for k, g in verdict.rel_gaps.items() if k != "rederived" and g is not None]
        assert all(g >= 10 * verdict.tolerance for g in others)


def test_report_round_trip(grid_reports):
    for reports in grid_reports.values():
        for r in reports[:2]:
            assert ids.IdentityReport.from_dict(json.loads(json.dumps(r.as_dict()))) == r


def test_evaluation_is_deterministic():
    first = ids.evaluate_grid("EX-E1-WHITTAKER")
    second = ids.evaluate_grid("EX-E1-WHITTAKER")
    strip = lambda r: {**r.as_dict(), "wall_time": 0.0}
    assert [strip(r) for r in first] == [strip(r) for r in second]
