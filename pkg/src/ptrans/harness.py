"""Parseval-Goldstein relation checks over the catalog of test functions.

Three sides are shared by the relations of a pair (f, g) at order nu:

* A = int_0^inf y^(2nu-1) L2{f; y} L2{g; y} dy
* B = Gamma(nu)/2 int_0^inf x f(x) P_(nu,2){g; x} dx
* C = Gamma(nu)/2 int_0^inf u g(u) P_(nu,2){f; u} du

T1-1 compares A with B, T1-2 compares A with C and T1-3 compares B with C.
The L2W relations are the nu = 1 specialisation computed through the Widder
potential transform. GLASSER-PG exchanges f and g under the Glasser
transform. Every side is its own quadrature pipeline; C is B with the
roles of f and g swapped, so f = g gives identical pipelines for T1-3.

Inner transforms follow an ``inner`` policy: "numeric" always nests
quadrature, "closed" uses catalog closed forms where present, and "auto"
uses closed forms only for oscillatory members.
"""

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import identities as identity_catalog
from .errors import ConvergenceViolation, DomainError, PtransError, StripViolation
from .functions import CatalogFunction, besselj, default_pair_functions, gauss, make_function, power_gauss
from .quadrature import DEFAULT_CONFIG, QuadConfig, QuadResult, integrate_semiinfinite
from .specfun import gamma
from .transforms import (
    glasser_transform,
    integrate_against,
    l2_transform,
    memoized_transform,
    p_nu2_transform,
    split_budget,
    widder_potential,
)

THEOREM_RELATIONS = ("T1-1", "T1-2", "T1-3")
WIDDER_RELATIONS = ("L2W-1", "L2W-2", "L2W-3")
GLASSER_RELATION = "GLASSER-PG"
CI_IDENTITIES = ("CI-1", "CI-2")
MOMENT_RELATIONS = ("CALI-1", "CALI-2", "CALI-3")
RELATION_IDS = THEOREM_RELATIONS + WIDDER_RELATIONS + (GLASSER_RELATION,)

TOLERANCE_CLASSES = {"smooth": 1e-6, "oscillatory": 1e-4, "nested": 1e-5}
DEFAULT_NUS = (0.75, 1.0, 1.5, 2.5)
INNER_POLICIES = ("auto", "numeric", "closed")
OUTER_SHARE = 0.3

_NUMERIC_ERRORS = (PtransError, ArithmeticError, OverflowError)


@dataclass
class SideResult:
    """One side of a relation; ``strategy`` names the outer quadrature."""

    value: Optional[float]
    error_estimate: float = 0.0
    evals: int = 0
    converged: bool = True
    strategy: str = ""

    @classmethod
    def from_quad(cls, result: QuadResult):
        return cls(result.value, result.error_estimate, result.evals, result.converged, result.strategy.value)

    def scaled(self, factor):
        return SideResult(self.value * factor, abs(self.error_estimate * factor), self.evals, self.converged,
                          self.strategy)


@dataclass
class ParsevalReport:
    relation: str
    f_name: str
    g_name: str
    nu: Optional[float]
    side_a: Optional[SideResult]
    side_b: Optional[SideResult]
    rel_gap: Optional[float]
    passed: bool
    tolerance: float
    status: str
    reason: str = ""
    params: Dict[str, float] = field(default_factory=dict)
    form: Optional[str] = None
    wall_time: float = 0.0

    @property
    def case_id(self):
        nu = "" if self.nu is None else f"{self.nu:g}"
        extra = ",".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
        return f"{self.relation}|{self.f_name}|{self.g_name}|{nu}|{extra}"

    @property
    def sort_key(self):
        return (self.relation, self.f_name, self.g_name, -math.inf if self.nu is None else self.nu,
                sorted(self.params.items()))

    def as_dict(self):
        out = asdict(self)
        out["pass"] = out.pop("passed")
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["passed"] = data.pop("pass")
        for key in ("side_a", "side_b"):
            if data.get(key) is not None:
                data[key] = SideResult(**data[key])
        return cls(**data)


# ---------------------------------------------------------------------------
# convergence metadata


def theorem_hypothesis(f: CatalogFunction, g: CatalogFunction, nu: float) -> Optional[str]:
    """None when the four integrals of the relations converge absolutely, else the reason."""
    if not nu > 0:
        return f"nu must be positive, got {nu:g}"
    for fn in (f, g):
        if not fn.small_power > -2:
            return f"{fn.label()} is not integrable against x at 0"
    near_infinity = f.small_power + g.small_power + 4
    near_zero = f.absolute_growth_exponent() + g.absolute_growth_exponent()
    if not 2 * nu < near_infinity:
        return (f"y-integral diverges at infinity: needs 2 nu < p_f + p_g + 4 = {near_infinity:g}, "
                f"got 2 nu = {2 * nu:g}")
    if not 2 * nu > near_zero:
        return (f"y-integral diverges at 0: needs 2 nu > alpha_f + alpha_g = {near_zero:g}, "
                f"got 2 nu = {2 * nu:g}")
    return None


def glasser_hypothesis(f: CatalogFunction, g: CatalogFunction) -> Optional[str]:
    """None when both Glasser transforms and both outer integrals exist."""
    for fn in (f, g):
        if not fn.small_power > -1:
            return f"{fn.label()} is not integrable at 0"
        if not fn.oscillatory and fn.large_power is not None and not fn.large_power < 0:
            return f"the Glasser transform of {fn.label()} diverges at infinity"
    return None


def tolerance_class(f: CatalogFunction, g: CatalogFunction) -> str:
    return "oscillatory" if f.oscillatory or g.oscillatory else "smooth"


# ---------------------------------------------------------------------------
# side pipelines


def _vectorize(scalar):
    def sample(points):
        points = np.asarray(points, dtype=float)
        return np.array([scalar(float(v)) for v in points.ravel()]).reshape(points.shape)
    return sample


class _Closed:
    """Closed-form sampler with the accounting interface of a nested memo."""

    evals = 0
    all_converged = True

    def __init__(self, scalar):
        self._sample = _vectorize(scalar)

    def __call__(self, points):
        return self._sample(points)

    def relative_error(self):
        return 0.0


def _use_closed(fn, policy, closed):
    if closed is None or policy == "numeric":
        return False
    return policy == "closed" or fn.oscillatory


def _finish(outer: QuadResult, samplers, cfg):
    """Outer result with inner errors, evaluations and convergence folded in."""
    inner_rel = sum(s.relative_error() for s in samplers)
    error = outer.error_estimate + abs(outer.value) * inner_rel
    evals = outer.evals + sum(s.evals for s in samplers)
    converged = outer.converged and all(s.all_converged for s in samplers) and \
        error <= cfg.tolerance(outer.value) * 1.5
    return SideResult(outer.value, error, evals, converged, outer.strategy.value)


class PairSides:
    """Side values for one (f, g) pair, cached per order and role.

    Inner transforms share the evaluation budget with their outer integral:
    the outer quadrature gets ``OUTER_SHARE`` of ``cfg.max_evals``.
    """

    def __init__(self, f: CatalogFunction, g: CatalogFunction, cfg: QuadConfig = DEFAULT_CONFIG, inner="auto"):
        if inner not in INNER_POLICIES:
            raise DomainError(f"inner policy must be one of {INNER_POLICIES}, got {inner!r}")
        self.f = f
        self.g = g
        self.cfg = cfg
        self.inner = inner
        self.outer_cfg, self.inner_budget = split_budget(cfg, OUTER_SHARE)
        self._cache = {}

    def _cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def _l2_sampler(self, fn, budget):
        if _use_closed(fn, self.inner, fn.closed_l2):
            return _Closed(fn.closed_l2)
        return memoized_transform(lambda y, c: l2_transform(fn.realization, y, c), self.cfg, budget)

    def _p_sampler(self, fn, order, widder):
        if _use_closed(fn, self.inner, fn.closed_pnu2):
            return _Closed(lambda x: fn.closed_pnu2(order, x))
        if widder:
            transform = lambda x, c: widder_potential(fn.realization, x, c)
        else:
            transform = lambda x, c: p_nu2_transform(fn.realization, order, x, c)
        return memoized_transform(transform, self.cfg, self.inner_budget)

    def y_side(self, nu):
        """int_0^inf y^(2nu-1) L2{f; y} L2{g; y} dy."""
        def compute():
            same = self.f.label() == self.g.label()
            budget = self.inner_budget if same else self.inner_budget // 2
            l2_f = self._l2_sampler(self.f, budget)
            l2_g = l2_f if same else self._l2_sampler(self.g, budget)
            power = 2 * nu - 1
            outer = integrate_semiinfinite(lambda y: y ** power * l2_f(y) * l2_g(y), 0.0, self.outer_cfg)
            samplers = [l2_f] if same else [l2_f, l2_g]
            return _finish(outer, samplers, self.cfg)
        return self._cached(("y", nu), compute)

    def weighted_side(self, outer_fn, inner_fn, nu, widder=False):
        """int_0^inf x outer_fn(x) P_(nu,2){inner_fn; x} dx (unscaled)."""
        def compute():
            sampler = self._p_sampler(inner_fn, nu, widder)
            outer = integrate_against(outer_fn.realization, lambda x: x * sampler(x), self.outer_cfg)
            return _finish(outer, [sampler], self.cfg)
        return self._cached(("x", outer_fn.label(), inner_fn.label(), nu, widder), compute)

    def glasser_side(self, outer_fn, inner_fn):
        """int_0^inf outer_fn(x) G{inner_fn; x} dx."""
        def compute():
            sampler = memoized_transform(lambda x, c: glasser_transform(inner_fn.realization, x, c),
                                         self.cfg, self.inner_budget)
            outer = integrate_against(outer_fn.realization, sampler, self.outer_cfg)
            return _finish(outer, [sampler], self.cfg)
        return self._cached(("glasser", outer_fn.label(), inner_fn.label()), compute)


def _gap(a: SideResult, b: SideResult):
    diff = abs(a.value - b.value)
    if b.value == 0:
        return 0.0 if diff == 0 else math.inf
    return diff / abs(b.value)


def _report(relation, f, g, nu, side_a, side_b, tol, start, params=None, form=None):
    gap = _gap(side_a, side_b)
    passed = gap <= tol
    reason = ""
    if not (side_a.converged and side_b.converged):
        reason = "quadrature did not reach its tolerance"
    return ParsevalReport(relation, f.label(), g.label(), nu, side_a, side_b, gap, passed, tol,
                          "pass" if passed else "fail", reason, dict(params or {}), form,
                          time.perf_counter() - start)


def skipped_report(relation, f_name, g_name, nu, reason, params=None):
    return ParsevalReport(relation, f_name, g_name, nu, None, None, None, False, 0.0, "skipped", reason,
                          dict(params or {}))


def error_report(relation, f_name, g_name, nu, exc, tol, params=None):
    return ParsevalReport(relation, f_name, g_name, nu, None, None, None, False, tol, "fail",
                          f"{type(exc).__name__}: {exc}", dict(params or {}))


# ---------------------------------------------------------------------------
# checks


def _tolerance(f, g, tolerances):
    table = TOLERANCE_CLASSES if tolerances is None else {**TOLERANCE_CLASSES, **tolerances}
    return table[tolerance_class(f, g)]


def _pair_relations(f, g, nu, cfg, inner, ids, widder, tolerances):
    reason = theorem_hypothesis(f, g, nu)
    if reason is not None:
        raise ConvergenceViolation(f"({f.label()}, {g.label()}) at nu = {nu:g} is out of hypothesis: {reason}")
    start = time.perf_counter()
    sides = PairSides(f, g, cfg, inner)
    factor = gamma(nu) / 2
    side_a = sides.y_side(nu)
    side_b = sides.weighted_side(f, g, nu, widder).scaled(factor)
    side_c = sides.weighted_side(g, f, nu, widder).scaled(factor)
    tol = _tolerance(f, g, tolerances)
    pairs = ((side_a, side_b), (side_a, side_c), (side_b, side_c))
    return [_report(rid, f, g, nu, a, b, tol, start) for rid, (a, b) in zip(ids, pairs)]


def check_theorem(f: CatalogFunction, g: CatalogFunction, nu: float, cfg: QuadConfig = DEFAULT_CONFIG,
                  inner="auto", tolerances=None) -> List[ParsevalReport]:
    """T1-1, T1-2 and T1-3 for the pair at order ``nu``.

    ``tolerances`` overrides entries of TOLERANCE_CLASSES. Raises
    ConvergenceViolation when the decay metadata rules out absolute
    convergence of the four integrals.
    """
    return _pair_relations(f, g, float(nu), cfg, inner, THEOREM_RELATIONS, False, tolerances)


def check_corollary_nu1(f: CatalogFunction, g: CatalogFunction, cfg: QuadConfig = DEFAULT_CONFIG,
                        inner="auto", tolerances=None) -> List[ParsevalReport]:
    """L2W-1, L2W-2 and L2W-3: the order-1 relations through the Widder potential transform."""
    return _pair_relations(f, g, 1.0, cfg, inner, WIDDER_RELATIONS, True, tolerances)


def check_glasser_pg(f: CatalogFunction, g: CatalogFunction, cfg: QuadConfig = DEFAULT_CONFIG,
                     tolerances=None) -> ParsevalReport:
    """int f G{g} = int g G{f}; quadrature errors such as TailError propagate."""
    reason = glasser_hypothesis(f, g)
    if reason is not None:
        raise ConvergenceViolation(f"({f.label()}, {g.label()}) is out of hypothesis: {reason}")
    start = time.perf_counter()
    sides = PairSides(f, g, cfg, "numeric")
    side_a = sides.glasser_side(f, g)
    side_b = sides.glasser_side(g, f)
    tol = _tolerance(f, g, tolerances)
    return _report(GLASSER_RELATION, f, g, None, side_a, side_b, tol, start)


def check_moment_corollary(g: CatalogFunction, mu: float, nu: float, cfg: QuadConfig = DEFAULT_CONFIG,
                           context=None) -> List[ParsevalReport]:
    """The three moment identities for ``g`` at (mu, nu).

    Each report carries the form that holds (printed or re-derived) in
    ``form``; a printed form that fails is reported in ``reason``. Raises
    StripViolation unless 0 < mu < nu and the moments converge.
    """
    mu = float(mu)
    nu = float(nu)
    if not 0 < mu < nu:
        raise StripViolation(f"the moment identities need 0 < mu < nu, got mu={mu:g}, nu={nu:g}")
    ctx = context if context is not None else identity_catalog.EvaluationContext(cfg)
    reports = []
    for rid in MOMENT_RELATIONS:
        start = time.perf_counter()
        rep = identity_catalog.evaluate_identity(rid, {"mu": mu, "nu": nu}, cfg, function=g, context=ctx)
        reports.append(_from_identity(rid, g, mu, nu, rep, start))
    return reports


def _from_identity(rid, g, mu, nu, rep, start):
    tol = rep.tol_rel
    outcome = next((o for o in rep.forms if o.label == rep.matched_form), None)
    if outcome is None:
        outcome = next((o for o in rep.forms if o.lhs_value is not None), rep.forms[0])
    side_a = side_b = None
    if outcome.lhs_value is not None:
        side_a = SideResult(outcome.lhs_value, outcome.lhs_error_estimate or 0.0, 0, True, "nested")
        side_b = SideResult(outcome.rhs_value, outcome.rhs_error_estimate or 0.0, 0, True, "nested")
    return ParsevalReport(rid, "x^(2mu-2)", g.label(), nu, side_a, side_b, outcome.rel_err, rep.passed, tol,
                          "pass" if rep.passed else "fail", rep.reason, {"mu": mu}, rep.matched_form,
                          time.perf_counter() - start)


# ---------------------------------------------------------------------------
# suite


@dataclass
class Selection:
    """What a suite run executes; an empty selection runs nothing."""

    identity_ids: Tuple[str, ...] = ()
    relations: Tuple[str, ...] = ()
    pairs: Tuple[Tuple[CatalogFunction, CatalogFunction], ...] = ()
    nus: Tuple[float, ...] = ()
    glasser_pairs: Tuple[Tuple[CatalogFunction, CatalogFunction], ...] = ()


def default_pairs():
    """Unordered pairs (with repetition) of the default pair functions."""
    fns = default_pair_functions()
    return tuple((fns[i], fns[j]) for i in range(len(fns)) for j in range(i, len(fns)))


def default_glasser_pairs():
    return (
        (gauss(), gauss()),
        (gauss(), power_gauss(0.5, math.sqrt(2.0))),
        (gauss(), besselj(1.0, 1.0)),
    )


def default_selection():
    return Selection(
        identity_ids=tuple(identity_catalog.identity_ids()),
        relations=RELATION_IDS,
        pairs=default_pairs(),
        nus=DEFAULT_NUS,
        glasser_pairs=default_glasser_pairs(),
    )


@dataclass
class SuiteReport:
    identities: List[identity_catalog.IdentityReport] = field(default_factory=list)
    parseval: List[ParsevalReport] = field(default_factory=list)
    wall_time: float = 0.0
    verdicts: List[identity_catalog.ExponentVerdict] = field(default_factory=list)
    timestamp: Optional[str] = None

    def summary(self):
        id_pass = sum(r.passed for r in self.identities)
        ran = [r for r in self.parseval if r.status != "skipped"]
        gaps = [r.rel_gap for r in ran if r.rel_gap is not None]
        id_gaps = [r.rel_err for r in self.identities if r.passed and r.rel_err is not None]
        return {
            "identity_cases": len(self.identities),
            "identity_pass": id_pass,
            "identity_entries": len({r.id for r in self.identities}),
            "identity_entries_pass": sum(
                all(r.passed for r in self.identities if r.id == i) for i in {r.id for r in self.identities}),
            "parseval_cases": len(ran),
            "parseval_pass": sum(r.passed for r in ran),
            "parseval_skipped": len(self.parseval) - len(ran),
            "parseval_pairs": len({(r.f_name, r.g_name) for r in ran}),
            "worst_identity_rel_err": max(id_gaps, default=None),
            "worst_parseval_rel_gap": max(gaps, default=None),
            "wall_time": self.wall_time,
        }

    @property
    def all_pass(self):
        return all(r.passed for r in self.identities) and all(
            r.passed for r in self.parseval if r.status != "skipped")

    def entries(self):
        """One summary row per identity entry, in catalog order."""
        rows = {}
        for r in self.identities:
            row = rows.setdefault(r.id, {"id": r.id, "points": 0, "pass": 0, "printed_pass": 0,
                                         "forms": {}, "worst_rel_err": None, "failures": []})
            row["points"] += 1
            row["pass"] += int(r.passed)
            row["printed_pass"] += int(r.printed_pass)
            if r.matched_form:
                row["forms"][r.matched_form] = row["forms"].get(r.matched_form, 0) + 1
            if r.passed and r.rel_err is not None:
                row["worst_rel_err"] = max(r.rel_err, row["worst_rel_err"] or 0.0)
            if not r.passed:
                row["failures"].append({"params": r.params, "reason": r.reason})
        for row in rows.values():
            row["status"] = "pass" if row["pass"] == row["points"] else "fail"
        return list(rows.values())

    def as_dict(self, timestamps=True):
        out = {
            "summary": self.summary(),
            "entries": self.entries(),
            "identities": [r.as_dict() for r in self.identities],
            "parseval": [r.as_dict() for r in self.parseval],
            "verdicts": [v.as_dict() for v in self.verdicts],
            "wall_time": self.wall_time,
            "timestamp": self.timestamp,
        }
        return out if timestamps else strip_timing(out)

    @classmethod
    def from_dict(cls, data):
        return cls(
            identities=[identity_catalog.IdentityReport.from_dict(r) for r in data.get("identities", [])],
            parseval=[ParsevalReport.from_dict(r) for r in data.get("parseval", [])],
            wall_time=data.get("wall_time", 0.0),
            verdicts=[identity_catalog.ExponentVerdict(**v) for v in data.get("verdicts", [])],
            timestamp=data.get("timestamp"),
        )

    def to_json(self, timestamps=True, indent=2):
        return json.dumps(self.as_dict(timestamps), indent=indent, sort_keys=True, allow_nan=True)

    def to_csv(self):
        return rows_to_csv(suite_rows(self))


def strip_timing(data):
    """Copy of a report dict with wall times zeroed and the timestamp cleared (for byte-stable output)."""
    if isinstance(data, dict):
        return {k: (0.0 if k == "wall_time" else None if k == "timestamp" else strip_timing(v))
                for k, v in data.items()}
    if isinstance(data, list):
        return [strip_timing(v) for v in data]
    return data


CSV_FIELDS = ("kind", "relation", "f_name", "g_name", "nu", "params", "side_a", "side_b", "rel_gap",
              "tolerance", "status", "form", "reason")


def suite_rows(report: SuiteReport):
    rows = []
    for r in report.identities:
        rows.append({
            "kind": "identity", "relation": r.id, "f_name": r.function or "", "g_name": "",
            "nu": r.params.get("nu", ""), "params": json.dumps(r.params, sort_keys=True),
            "side_a": r.lhs_value, "side_b": r.rhs_value, "rel_gap": r.rel_err, "tolerance": r.tol_rel,
            "status": "pass" if r.passed else "fail", "form": r.matched_form or "", "reason": r.reason,
        })
    for r in report.parseval:
        rows.append({
            "kind": "parseval", "relation": r.relation, "f_name": r.f_name, "g_name": r.g_name,
            "nu": "" if r.nu is None else r.nu, "params": json.dumps(r.params, sort_keys=True),
            "side_a": None if r.side_a is None else r.side_a.value,
            "side_b": None if r.side_b is None else r.side_b.value,
            "rel_gap": r.rel_gap, "tolerance": r.tolerance, "status": r.status, "form": r.form or "",
            "reason": r.reason,
        })
    return rows


ENTRY_FIELDS = ("id", "points", "pass", "printed_pass", "forms", "worst_rel_err", "status", "failures")


def entry_rows(report: SuiteReport):
    """One CSV row per identity entry; forms and failures are JSON-encoded."""
    return [{**row, "forms": json.dumps(row["forms"], sort_keys=True),
             "failures": json.dumps(row["failures"], sort_keys=True)} for row in report.entries()]


def rows_to_csv(rows, fields=CSV_FIELDS):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else (repr(row[k]) if isinstance(row[k], float) else row[k]))
                         for k in fields})
    return buf.getvalue()


def _run_pair(f, g, nu, cfg, relations, ids, runner, tolerances):
    wanted = [rid for rid in ids if rid in relations]
    if not wanted:
        return []
    reason = theorem_hypothesis(f, g, nu)
    if reason is not None:
        return [skipped_report(rid, f.label(), g.label(), nu, f"out of hypothesis: {reason}") for rid in wanted]
    tol = _tolerance(f, g, tolerances)
    try:
        reports = runner()
    except _NUMERIC_ERRORS as exc:
        return [error_report(rid, f.label(), g.label(), nu, exc, tol) for rid in wanted]
    return [r for r in reports if r.relation in wanted]


def run_suite(selection: Optional[Selection] = None, cfg: QuadConfig = DEFAULT_CONFIG, inner="auto",
              tolerances=None, identity_tolerances=None, tol_abs=None) -> SuiteReport:
    """Run every selected check; failures are collected, never raised.

    ``tolerances`` overrides the relation tolerance classes,
    ``identity_tolerances`` the identity classes (smooth, oscillatory) and
    ``tol_abs`` the identity absolute tolerance. CI entries also get an
    exponent verdict per grid point. Results are ordered by identity id
    then case id, independent of execution order.
    """
    if selection is None:
        selection = default_selection()
    start = time.perf_counter()
    unknown = sorted(set(selection.relations) - set(RELATION_IDS))
    if unknown:
        raise DomainError(f"unknown relation ids {unknown}; known: {list(RELATION_IDS)}")
    id_tols = {**identity_catalog.TOLERANCE_CLASSES, **(identity_tolerances or {})}
    abs_tol = identity_catalog.DEFAULT_TOL_ABS if tol_abs is None else tol_abs
    id_reports = []
    verdicts = []
    for iid in selection.identity_ids:
        case = identity_catalog.lookup(iid)
        ctx = identity_catalog.EvaluationContext(cfg)
        rel_tol = id_tols[case.tolerance_class]
        for point in case.default_grid:
            try:
                id_reports.append(identity_catalog.evaluate_identity(iid, point, cfg, abs_tol, rel_tol, context=ctx))
            except _NUMERIC_ERRORS as exc:
                id_reports.append(identity_catalog.IdentityReport(
                    iid, dict(point), None, None, None, None, None, None, False, None, False,
                    abs_tol, rel_tol, 0.0, f"{type(exc).__name__}: {exc}"))
                continue
            if iid in CI_IDENTITIES:
                verdicts.append(identity_catalog.verify_ci_exponent(
                    None, point.get("mu"), point.get("nu"), point["t"], cfg, rel_tol, iid, ctx))
    relations = set(selection.relations)
    par = []
    for f, g in selection.pairs:
        for nu in selection.nus:
            par += _run_pair(f, g, nu, cfg, relations, THEOREM_RELATIONS,
                             lambda f=f, g=g, nu=nu: check_theorem(f, g, nu, cfg, inner, tolerances), tolerances)
        if relations & set(WIDDER_RELATIONS):
            par += _run_pair(f, g, 1.0, cfg, relations, WIDDER_RELATIONS,
                             lambda f=f, g=g: check_corollary_nu1(f, g, cfg, inner, tolerances), tolerances)
    if GLASSER_RELATION in relations:
        for f, g in selection.glasser_pairs:
            reason = glasser_hypothesis(f, g)
            tol = _tolerance(f, g, tolerances)
            if reason is not None:
                par.append(skipped_report(GLASSER_RELATION, f.label(), g.label(), None,
                                          f"out of hypothesis: {reason}"))
                continue
            try:
                par.append(check_glasser_pg(f, g, cfg, tolerances))
            except _NUMERIC_ERRORS as exc:
                par.append(error_report(GLASSER_RELATION, f.label(), g.label(), None, exc, tol))
    order = {iid: k for k, iid in enumerate(identity_catalog.identity_ids())}
    id_reports.sort(key=lambda r: (order.get(r.id, len(order)), r.id, sorted(r.params.items())))
    par.sort(key=lambda r: r.sort_key)
    return SuiteReport(id_reports, par, time.perf_counter() - start, verdicts)


def resolve_pairs(spec: str, f_name=None, g_name=None, f_params=None, g_params=None):
    """Pairs for a selection string: "default" or an explicit f/g pair."""
    if spec == "default" and f_name is None and g_name is None:
        return default_pairs()
    if f_name is None or g_name is None:
        raise DomainError("an explicit pair needs both --f and --g")
    return ((make_function(f_name, **(f_params or {})), make_function(g_name, **(g_params or {}))),)
