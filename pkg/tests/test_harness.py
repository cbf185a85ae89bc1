"""Exchange relations: hypothesis gating, agreement, symmetry, scaling and report plumbing."""

import json
import math

import pytest
from hypothesis import Phase, given, settings
from hypothesis import strategies as st

from ptrans import functions as fn
from ptrans import harness as h
from ptrans.errors import ConvergenceViolation, DomainError, StripViolation

from conftest import rel_err

GAUSS = fn.gauss()
SMOOTH = [fn.gauss(), fn.power_gauss(1.0, 2.0), fn.power_gauss(0.25, 1.0)]


def sides(report):
    return report.side_a.value, report.side_b.value


class TestHypothesis:
    def test_gauss_with_bessel_at_order_two_is_out(self):
        reason = h.theorem_hypothesis(GAUSS, fn.besselj(0, 1), 2.0)
        assert reason is not None and "diverges" in reason

    def test_gauss_pair_is_in(self):
        assert h.theorem_hypothesis(GAUSS, GAUSS, 1.5) is None

    def test_check_raises_outside(self):
        with pytest.raises(ConvergenceViolation):
            h.check_theorem(GAUSS, fn.besselj(0, 1), 2.0)

    def test_lower_bound(self):
        # the slowly decaying cosine pair needs 2 nu > alpha_f + alpha_g = 2
        assert h.theorem_hypothesis(fn.cos_over_x(1), fn.cos_over_x(1), 0.75) is not None


class TestTheorem:
    @pytest.mark.parametrize("pair", [(GAUSS, GAUSS), (GAUSS, fn.power_gauss(1, 2)),
                                      (fn.power_gauss(0.25, 1), fn.power_gauss(1, 2))],
                             ids=lambda p: f"{p[0].label()}-{p[1].label()}")
    @pytest.mark.parametrize("nu", [0.75, 1.0, 1.5])
    def test_smooth_pairs(self, pair, nu):
        for r in h.check_theorem(*pair, nu):
            assert r.status == "pass" and r.tolerance == 1e-6
            assert r.side_a.converged and r.side_b.converged

    def test_oscillatory_pair(self):
        for r in h.check_theorem(GAUSS, fn.besselj(1, 1), 1.5):
            assert r.status == "pass" and r.tolerance == 1e-4

    @pytest.mark.parametrize("f", SMOOTH + [fn.besselj(0, 1)], ids=lambda f: f.label())
    def test_equal_functions_give_zero_gap(self, f):
        nu = 1.75 if f.oscillatory else 1.5
        t13 = next(r for r in h.check_theorem(f, f, nu) if r.relation == "T1-3")
        assert t13.rel_gap == 0.0
        assert t13.side_a.value == t13.side_b.value

    def test_numeric_and_closed_inner_agree(self):
        f, g = GAUSS, fn.power_gauss(1, 2)
        closed = h.check_theorem(f, g, 1.5, inner="closed")
        numeric = h.check_theorem(f, g, 1.5, inner="numeric")
        for a, b in zip(closed, numeric):
            assert rel_err(a.side_a.value, b.side_a.value) <= 1e-8
            assert "closed" in a.side_b.strategy or a.side_b.evals >= 0

    def test_widder_corollary(self):
        for r in h.check_corollary_nu1(GAUSS, fn.besselj(0, 1)):
            assert r.status == "pass" and r.nu == 1.0

    def test_tolerance_override(self):
        reports = h.check_theorem(GAUSS, GAUSS, 1.0, tolerances={"smooth": 1e-30})
        assert all(r.tolerance == 1e-30 for r in reports)
        assert any(r.status == "fail" for r in reports if r.relation != "T1-3")


@settings(max_examples=8, phases=[Phase.explicit, Phase.generate])
@given(st.floats(0.0, 1.5), st.floats(0.5, 2.0), st.floats(0.6, 1.8))
def test_transitivity(mu, a, nu):
    g = fn.power_gauss(mu, a)
    reports = {r.relation: r for r in h.check_theorem(GAUSS, g, nu)}
    ab, ac, bc = (reports[k].rel_gap for k in ("T1-1", "T1-2", "T1-3"))
    assert ac <= ab + bc + 1e-15
    assert all(r.passed for r in reports.values())


@pytest.mark.parametrize("factor", [0.5, 2.0])
@pytest.mark.parametrize("pair", [(GAUSS, fn.power_gauss(1, 2)), (GAUSS, fn.besselj(1, 1))],
                         ids=lambda p: f"{p[0].label()}-{p[1].label()}")
def test_scaling_covariance(factor, pair):
    # f -> f(c x), g -> g(c x) multiplies every side by c^(2 nu - 4)
    nu = 1.5
    base = {r.relation: r for r in h.check_theorem(*pair, nu)}
    scaled = {r.relation: r for r in h.check_theorem(*(p.rescaled(factor) for p in pair), nu)}
    tol = 1e-4 if pair[1].oscillatory else 1e-6
    for rid in h.THEOREM_RELATIONS:
        for got, want in zip(sides(scaled[rid]), sides(base[rid])):
            assert rel_err(got, want * factor ** (2 * nu - 4)) <= tol


class TestGlasser:
    def test_bessel_pair_against_mpmath(self):
        # mpmath quadosc of int x J_1(x) G{exp(-u^2); x} dx
        r = h.check_glasser_pg(GAUSS, fn.besselj(1, 1))
        assert r.passed
        for value in sides(r):
            assert rel_err(value, 0.77920790337161144356) <= 1e-6

    def test_symmetric_pair(self):
        r = h.check_glasser_pg(GAUSS, GAUSS)
        assert r.rel_gap == 0.0


class TestMoment:
    def test_values(self):
        g = fn.power_gauss(1, 1)
        reports = {r.relation: r for r in h.check_moment_corollary(g, 0.5, 1.0)}
        assert all(r.passed for r in reports.values())
        assert rel_err(reports["CALI-1"].side_a.value, math.pi / 8) <= 1e-6
        assert rel_err(reports["CALI-3"].side_a.value, math.pi ** 1.5 / 8) <= 1e-6

    def test_divergent_moment(self):
        with pytest.raises(StripViolation):
            h.check_moment_corollary(GAUSS, 0.75, 2.0)

    def test_order_strip(self):
        with pytest.raises(StripViolation):
            h.check_moment_corollary(GAUSS, 1.0, 0.5)


class TestSuite:
    @pytest.fixture(scope="class")
    @classmethod
    def small(cls):
        selection = h.Selection(
            identity_ids=("WIDDER-BESSELJ", "CI-2"),
            relations=h.RELATION_IDS,
            pairs=((GAUSS, GAUSS), (GAUSS, fn.besselj(0, 1))),
            nus=(1.0, 2.0),
            glasser_pairs=((GAUSS, fn.power_gauss(0.5, math.sqrt(2))),),
        )
        return h.run_suite(selection)

    def test_summary(self, small):
        s = small.summary()
        assert small.all_pass
        assert s["identity_entries"] == 2 and s["identity_entries_pass"] == 2
        assert s["parseval_skipped"] == 6
        assert [v.identity for v in small.verdicts] == ["CI-2"] * 5

    def test_skipped_reports_are_listed(self, small):
        skipped = [r for r in small.parseval if r.status == "skipped"]
        assert {r.relation for r in skipped} == set(h.THEOREM_RELATIONS)
        assert all(r.reason.startswith("out of hypothesis") for r in skipped)

    def test_json_round_trip(self, small):
        again = h.SuiteReport.from_dict(json.loads(small.to_json()))
        assert again == small

    def test_deterministic_bytes(self, small):
        selection = h.Selection(identity_ids=("WIDDER-BESSELJ", "CI-2"), relations=h.RELATION_IDS,
                                pairs=((GAUSS, GAUSS), (GAUSS, fn.besselj(0, 1))), nus=(1.0, 2.0),
                                glasser_pairs=((GAUSS, fn.power_gauss(0.5, math.sqrt(2))),))
        assert h.run_suite(selection).to_json(timestamps=False) == small.to_json(timestamps=False)

    def test_csv(self, small):
        lines = small.to_csv().splitlines()
        assert lines[0] == ",".join(h.CSV_FIELDS)
        assert len(lines) == 1 + len(small.identities) + len(small.parseval)

    def test_sorted_order(self, small):
        keys = [r.sort_key for r in small.parseval]
        assert keys == sorted(keys)

    def test_empty_selection(self):
        report = h.run_suite(h.Selection())
        assert report.identities == [] and report.parseval == []

    def test_unknown_relation(self):
        with pytest.raises(DomainError):
            h.run_suite(h.Selection(relations=("T9",)))

    def test_default_selection_shape(self):
        selection = h.default_selection()
        assert len(selection.pairs) == 15
        assert tuple(selection.nus) == (0.75, 1.0, 1.5, 2.5)
