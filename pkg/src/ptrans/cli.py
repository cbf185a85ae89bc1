"""Command-line front end: ``ptrans transform|identity|parseval|list``.

Exit codes: 0 everything passed, 1 an identity or relation failed, 2 usage or
domain error, 3 numerical non-convergence.

Settings are resolved as built-in defaults, then the key-value file named by
``--config`` or the PTRANS_CONFIG environment variable, then flags. The file
holds one ``section.key = value`` per line; ``#`` starts a comment.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field, fields, replace
from datetime import datetime, timezone
from typing import Dict, List, Optional, Tuple

from . import harness
from . import identities as identity_catalog
from .errors import (
    AccelerationFailure,
    DomainError,
    EvalError,
    NonConvergenceError,
    PtransError,
    TailError,
)
from .functions import FACTORIES, make_function
from .quadrature import DEFAULT_CONFIG, QuadConfig
from .transforms import TRANSFORMS, TransformRequest, evaluate_transform

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3

CONFIG_ENV = "PTRANS_CONFIG"
FORMATS = ("table", "json", "csv")

NUMERIC_ERRORS = (NonConvergenceError, AccelerationFailure, TailError, EvalError)
_NUMERIC_NAMES = tuple(cls.__name__ for cls in NUMERIC_ERRORS)


def _float_list(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def _str_list(text):
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _bool(text):
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _format(text):
    if text not in FORMATS:
        raise ValueError(f"format must be one of {', '.join(FORMATS)}")
    return text


def _inner(text):
    if text not in harness.INNER_POLICIES:
        raise ValueError(f"inner policy must be one of {', '.join(harness.INNER_POLICIES)}")
    return text


# config key -> (RunConfig attribute, parser)
CONFIG_KEYS = {
    "quad.abs_tol": ("abs_tol", float),
    "quad.rel_tol": ("rel_tol", float),
    "quad.max_evals": ("max_evals", int),
    "quad.max_subdivisions": ("max_subdivisions", int),
    "quad.truncation_tail_tol": ("truncation_tail_tol", float),
    "quad.oscillatory_blocks": ("oscillatory_blocks", int),
    "tol.abs": ("tol_abs", float),
    "tol.smooth": ("tol_smooth", float),
    "tol.oscillatory": ("tol_oscillatory", float),
    "tol.nested": ("tol_nested", float),
    "output.format": ("format", _format),
    "output.path": ("output", str),
    "output.timestamp": ("timestamps", _bool),
    "select.identities": ("identity_ids", _str_list),
    "select.relations": ("relations", _str_list),
    "select.nus": ("nus", _float_list),
    "parseval.inner": ("inner", _inner),
}

_QUAD_FIELDS = ("abs_tol", "rel_tol", "max_evals", "max_subdivisions", "truncation_tail_tol", "oscillatory_blocks")


@dataclass
class RunConfig:
    """Resolved settings for one invocation. Runs are deterministic; there is no seed."""

    abs_tol: Optional[float] = None
    rel_tol: Optional[float] = None
    max_evals: Optional[int] = None
    max_subdivisions: Optional[int] = None
    truncation_tail_tol: Optional[float] = None
    oscillatory_blocks: Optional[int] = None
    tol_abs: Optional[float] = None
    tol_smooth: Optional[float] = None
    tol_oscillatory: Optional[float] = None
    tol_nested: Optional[float] = None
    format: str = "table"
    output: Optional[str] = None
    timestamps: bool = True
    identity_ids: Tuple[str, ...] = ()
    relations: Tuple[str, ...] = ()
    nus: Tuple[float, ...] = ()
    inner: str = "auto"

    def quad_config(self) -> QuadConfig:
        overrides = {k: getattr(self, k) for k in _QUAD_FIELDS if getattr(self, k) is not None}
        try:
            return replace(DEFAULT_CONFIG, **overrides)
        except ValueError as exc:
            raise DomainError(f"invalid quadrature settings: {exc}") from None

    def class_tolerances(self) -> Dict[str, float]:
        """Overrides for the relative tolerance classes; unset classes keep their defaults."""
        named = {"smooth": self.tol_smooth, "oscillatory": self.tol_oscillatory, "nested": self.tol_nested}
        return {k: v for k, v in named.items() if v is not None}

    def merged(self, overrides: Dict[str, object]) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def parse_config_text(text, source="<config>") -> Dict[str, object]:
    """Parse flat ``section.key = value`` lines into RunConfig attribute overrides."""
    out = {}
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise DomainError(f"{source}:{number}: expected 'section.key = value'")
        if key not in CONFIG_KEYS:
            raise DomainError(f"{source}:{number}: unknown key {key!r}; known: {', '.join(CONFIG_KEYS)}")
        attr, parse = CONFIG_KEYS[key]
        try:
            out[attr] = parse(value)
        except ValueError as exc:
            raise DomainError(f"{source}:{number}: bad value for {key}: {exc}") from None
    return out


def load_config(path) -> Dict[str, object]:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, str(path))


def resolve_run_config(args, environ=None) -> RunConfig:
    """Defaults, then the config file, then flags."""
    environ = os.environ if environ is None else environ
    path = args.config or environ.get(CONFIG_ENV)
    cfg = RunConfig()
    if path:
        cfg = cfg.merged(load_config(path))
    flags = {
        "abs_tol": args.abs_tol,
        "rel_tol": args.rel_tol,
        "max_evals": args.max_evals,
        "tol_abs": args.tol_abs,
        "tol_smooth": args.tol_smooth,
        "tol_oscillatory": args.tol_oscillatory,
        "tol_nested": args.tol_nested,
        "format": args.format,
        "output": args.output,
        "timestamps": False if args.no_timestamp else None,
    }
    return cfg.merged(flags)


# ---------------------------------------------------------------- reports


@dataclass
class TransformRow:
    transform: str
    function: str
    order: Optional[float]
    point: float
    value: Optional[float]
    error_estimate: Optional[float]
    evals: int
    converged: bool
    strategy: str
    error: str = ""


@dataclass
class TransformReport:
    rows: List[TransformRow] = field(default_factory=list)
    wall_time: float = 0.0
    timestamp: Optional[str] = None

    def as_dict(self, timestamps=True):
        out = {"rows": [asdict(r) for r in self.rows], "wall_time": self.wall_time, "timestamp": self.timestamp}
        return out if timestamps else harness.strip_timing(out)

    @classmethod
    def from_dict(cls, data):
        return cls([TransformRow(**r) for r in data.get("rows", [])], data.get("wall_time", 0.0),
                   data.get("timestamp"))

    def to_json(self, timestamps=True):
        return json.dumps(self.as_dict(timestamps), indent=2, sort_keys=True, allow_nan=True)


TRANSFORM_FIELDS = tuple(f.name for f in fields(TransformRow))


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def format_table(rows, columns) -> str:
    """Left-aligned plain-text table."""
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _now():
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def _emit(text, run: RunConfig, summary: Optional[str]):
    """Write the report to the output path or stdout; the summary goes where a reader sees it."""
    if run.output:
        with open(run.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        if summary:
            print(summary)
        return
    sys.stdout.write(text)
    if summary:
        if run.format == "table":
            print(summary)
        else:
            print(summary, file=sys.stderr)


def _is_numeric_reason(reason):
    return bool(reason) and reason.startswith(_NUMERIC_NAMES)


def _exit_code(failure_reasons):
    """1 when any failure is a mismatch, 3 when every failure is numerical."""
    if not failure_reasons:
        return EXIT_PASS
    if all(_is_numeric_reason(r) for r in failure_reasons):
        return EXIT_NONCONVERGENCE
    return EXIT_FAIL


# ---------------------------------------------------------------- commands


def _function_params(args):
    return {"mu": args.mu, "z": args.z, "a": args.a}


def cmd_transform(args, run: RunConfig) -> int:
    spec = TRANSFORMS.get(args.name)
    if spec is None:
        raise DomainError(f"unknown transform {args.name!r}; known: {', '.join(TRANSFORMS)}")
    function = make_function(args.fn, **_function_params(args))
    if spec.needs_order and not args.nu:
        raise DomainError(f"transform {args.name!r} needs --nu")
    if not spec.needs_order and args.nu:
        raise DomainError(f"transform {args.name!r} takes no order")
    orders = args.nu or [None]
    cfg = run.quad_config()
    start = time.perf_counter()
    rows = []
    for order in orders:
        for point in args.y:
            request = TransformRequest(args.name, function.realization, point, order)
            try:
                result = evaluate_transform(request, cfg)
            except NUMERIC_ERRORS as exc:
                rows.append(TransformRow(args.name, function.label(), order, point, None, None, 0, False, "",
                                         f"{type(exc).__name__}: {exc}"))
                continue
            rows.append(TransformRow(args.name, function.label(), order, point, result.value,
                                     result.error_estimate, result.evals, result.converged,
                                     result.strategy.value))
    report = TransformReport(rows, time.perf_counter() - start, _now() if run.timestamps else None)
    if run.format == "json":
        text = report.to_json(run.timestamps) + "\n"
    elif run.format == "csv":
        text = harness.rows_to_csv([asdict(r) for r in rows], TRANSFORM_FIELDS)
    else:
        text = format_table([asdict(r) for r in rows], TRANSFORM_FIELDS)
    _emit(text, run, None)
    failed = [r for r in rows if not r.converged]
    for r in failed:
        print(f"not converged: {r.transform} order={r.order} y={r.point}: {r.error or r.strategy}",
              file=sys.stderr)
    return EXIT_NONCONVERGENCE if failed else EXIT_PASS


def _identity_ids(args, run: RunConfig):
    if args.all:
        return tuple(identity_catalog.identity_ids())
    ids = tuple(args.id or ()) or run.identity_ids
    if not ids:
        raise DomainError("select identities with --id ID (repeatable) or --all")
    for iid in ids:
        identity_catalog.lookup(iid)
    return ids


def _suite_text(report: harness.SuiteReport, run: RunConfig, entries: bool) -> str:
    if run.format == "json":
        return report.to_json(run.timestamps) + "\n"
    if run.format == "csv":
        if entries:
            return harness.rows_to_csv(harness.entry_rows(report), harness.ENTRY_FIELDS)
        return report.to_csv()
    if entries:
        table = format_table(harness.entry_rows(report), harness.ENTRY_FIELDS[:-1])
    else:
        table = format_table(harness.suite_rows(report),
                             ("relation", "f_name", "g_name", "nu", "side_a", "side_b", "rel_gap",
                              "tolerance", "status", "form", "reason"))
    return table + _verdict_text(report)


def _verdict_text(report: harness.SuiteReport) -> str:
    if not report.verdicts:
        return ""
    lines = ["", "exponent verdicts:"]
    notes = {}
    for v in report.verdicts:
        shown = ", ".join(f"{k}={val:g}" for k, val in v.params.items())
        gaps = ", ".join(f"{k}: {'-' if g is None else f'{g:.2e}'}" for k, g in v.rel_gaps.items())
        lines.append(f"  {v.identity} ({shown}): selected {v.selected or 'none'} [{gaps}]")
        notes.setdefault(v.identity, v.notes)
    lines += [f"  {iid}: {text}" for iid, text in notes.items()]
    return "\n".join(lines) + "\n"


def cmd_identity(args, run: RunConfig) -> int:
    ids = _identity_ids(args, run)
    tolerances = run.class_tolerances()
    report = harness.run_suite(harness.Selection(identity_ids=ids), run.quad_config(),
                               identity_tolerances={k: v for k, v in tolerances.items()
                                                    if k in identity_catalog.TOLERANCE_CLASSES},
                               tol_abs=run.tol_abs)
    report.timestamp = _now() if run.timestamps else None
    entries = report.entries()
    passed = sum(e["status"] == "pass" for e in entries)
    _emit(_suite_text(report, run, entries=True), run, f"{passed}/{len(entries)} grids pass")
    reasons = []
    for r in report.identities:
        if not r.passed:
            shown = ", ".join(f"{k}={v:g}" for k, v in r.params.items())
            print(f"FAIL {r.id} ({shown}): {r.reason}", file=sys.stderr)
            reasons.append(r.reason)
    return _exit_code(reasons)


def _param_pairs(items, flag):
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise DomainError(f"{flag} expects key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise DomainError(f"{flag} {key}: not a number: {value!r}") from None
    return out


def cmd_parseval(args, run: RunConfig) -> int:
    relations = tuple(args.relation or ()) or run.relations or harness.RELATION_IDS
    known = set(harness.RELATION_IDS) | set(harness.MOMENT_RELATIONS)
    unknown = [r for r in relations if r not in known]
    if unknown:
        raise DomainError(f"unknown relation(s) {unknown}; known: {', '.join(sorted(known))}")
    nus = tuple(args.nu or ()) or run.nus or harness.DEFAULT_NUS
    f_params = _param_pairs(args.f_param, "--f-param")
    g_params = _param_pairs(args.g_param, "--g-param")
    moment = tuple(r for r in relations if r in harness.MOMENT_RELATIONS)
    pair_relations = tuple(r for r in relations if r not in harness.MOMENT_RELATIONS)
    cfg = run.quad_config()
    tolerances = run.class_tolerances()
    start = time.perf_counter()

    parseval = []
    identity_reports = []
    if pair_relations:
        explicit = args.f is not None or args.g is not None
        pairs = harness.resolve_pairs(args.pairs, args.f, args.g, f_params, g_params)
        selection = harness.Selection(
            relations=pair_relations,
            pairs=pairs,
            nus=nus,
            glasser_pairs=pairs if explicit else harness.default_glasser_pairs(),
        )
        suite = harness.run_suite(selection, cfg, run.inner, tolerances)
        parseval += suite.parseval
    if moment:
        if args.g is None or args.mu is None or not args.nu:
            raise DomainError("moment relations need --g, --mu and --nu")
        g = make_function(args.g, **g_params)
        for nu in args.nu:
            ctx = identity_catalog.EvaluationContext(cfg)
            reports = harness.check_moment_corollary(g, args.mu, nu, cfg, ctx)
            parseval += [r for r in reports if r.relation in moment]
    parseval.sort(key=lambda r: r.sort_key)
    report = harness.SuiteReport(identity_reports, parseval, time.perf_counter() - start,
                                 timestamp=_now() if run.timestamps else None)
    ran = [r for r in parseval if r.status != "skipped"]
    ok = sum(r.passed for r in ran)
    summary = f"{ok}/{len(ran)} relations pass ({len(parseval) - len(ran)} skipped)"
    _emit(_suite_text(report, run, entries=False), run, summary)
    reasons = []
    for r in ran:
        if not r.passed:
            print(f"FAIL {r.case_id}: {r.reason or f'rel_gap {r.rel_gap!r} > {r.tolerance!r}'}", file=sys.stderr)
            reasons.append(r.reason)
    return _exit_code(reasons)


def cmd_list(args, run: RunConfig) -> int:
    if args.what == "transforms":
        rows = [{"name": s.name, "order": "yes" if s.needs_order else "no", "kernel": s.kernel}
                for s in TRANSFORMS.values()]
        columns = ("name", "order", "kernel")
    elif args.what == "functions":
        rows = []
        for name, (factory, params) in FACTORIES.items():
            rows.append({"name": name, "params": ",".join(params), "default": factory().formula})
        columns = ("name", "params", "default")
    elif args.what == "identities":
        rows = [{"id": c.id, "formula": c.formula, "strip": "; ".join(c.strip_text()),
                 "class": c.tolerance_class} for c in identity_catalog.catalog()]
        columns = ("id", "formula", "strip", "class")
    else:
        rows = [{"relation": r} for r in harness.RELATION_IDS + harness.MOMENT_RELATIONS]
        columns = ("relation",)
    if run.format == "json":
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    elif run.format == "csv":
        text = harness.rows_to_csv(rows, columns)
    else:
        text = format_table(rows, columns)
    _emit(text, run, None)
    return EXIT_PASS


# ---------------------------------------------------------------- parser


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("settings")
    group.add_argument("--config", help=f"key-value config file (default: ${CONFIG_ENV})")
    group.add_argument("--format", choices=FORMATS, default=None, help="report format (default: table)")
    group.add_argument("--output", help="write the report to this path")
    group.add_argument("--no-timestamp", action="store_true", help="omit timing fields for byte-stable reports")
    group.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance")
    group.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    group.add_argument("--max-evals", type=int, help="quadrature evaluation budget")
    group.add_argument("--tol-abs", type=float, help="identity absolute tolerance")
    group.add_argument("--tol-smooth", type=float, help="relative tolerance for smooth cases")
    group.add_argument("--tol-oscillatory", type=float, help="relative tolerance for oscillatory cases")
    group.add_argument("--tol-nested", type=float, help="relative tolerance for nested cases")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="ptrans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("transform", parents=[common], help="evaluate a transform of a catalog function")
    tr.add_argument("name", help="transform id (see 'list transforms')")
    tr.add_argument("--fn", required=True, help="catalog function (see 'list functions')")
    tr.add_argument("--mu", type=float, help="function parameter mu")
    tr.add_argument("--z", type=float, help="function parameter z")
    tr.add_argument("--a", type=float, help="function parameter a")
    tr.add_argument("--nu", type=float, action="append", help="transform order (repeatable)")
    tr.add_argument("--y", type=float, action="append", required=True, help="evaluation point (repeatable)")
    tr.set_defaults(handler=cmd_transform)

    ident = sub.add_parser("identity", parents=[common], help="check catalog identities on their grids")
    which = ident.add_mutually_exclusive_group()
    which.add_argument("--id", action="append", help="identity id (repeatable)")
    which.add_argument("--all", action="store_true", help="every catalog entry")
    ident.set_defaults(handler=cmd_identity)

    par = sub.add_parser("parseval", parents=[common], help="check exchange relations on function pairs")
    par.add_argument("--pairs", default="default", choices=("default",), help="pair grid when --f/--g are absent")
    par.add_argument("--relation", action="append", help="relation id (repeatable; default: all)")
    par.add_argument("--f", help="first catalog function")
    par.add_argument("--g", help="second catalog function")
    par.add_argument("--f-param", action="append", metavar="KEY=VALUE", help="parameter of --f (repeatable)")
    par.add_argument("--g-param", action="append", metavar="KEY=VALUE", help="parameter of --g (repeatable)")
    par.add_argument("--nu", type=float, action="append", help="order (repeatable)")
    par.add_argument("--mu", type=float, help="moment exponent for the CALI relations")
    par.add_argument("--inner", choices=harness.INNER_POLICIES, default=None,
                     help="how inner transforms are sampled (default: auto)")
    par.set_defaults(handler=cmd_parseval)

    ls = sub.add_parser("list", parents=[common], help="dump a catalog")
    ls.add_argument("what", choices=("transforms", "functions", "identities", "relations"))
    ls.set_defaults(handler=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = resolve_run_config(args)
        if getattr(args, "inner", None):
            run = replace(run, inner=args.inner)
        return args.handler(args, run)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"not converged: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except PtransError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
