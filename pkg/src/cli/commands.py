"""
Command-line surface.

    toporec [global flags] <subcommand> [flags]

Results go to stdout; logs and structured JSON errors go to stderr. Exit
codes: 0 success, 1 computation error or failed suite, 2 usage error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from catalog import FAMILIES, CatalogEntry, FamilySpec, load_family_spec, make_family, quadrangulation_counts
from diagrams import RULE_SETS, enumerate_graphs, graphs_weight_sum
from exact_arith.errors import UnknownFamily
from recursion import compute_fg, engine_for, f1_log_argument, kernel_h_expansion
from spectral_curve import CurveData, SpectralCurve, classify_branchpoint, find_branchpoints, load_curve

from .error_utils import OK_EXIT, UsageError, map_exception
from .formatting import (
    CONVENTIONS,
    FORMATS,
    format_counts,
    format_curve,
    format_graphs,
    format_kernel,
    format_omega,
    format_report,
    format_value,
)
from .settings import DEFAULTS, load_config
from .suites import SUITE_ORDER, run_suite

logger = logging.getLogger(__name__)

LIST_FIELDS = ("times", "tbar", "eps", "a", "branchpoints")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting."""

    def error(self, message: str) -> None:
        raise UsageError(message)


def _global_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", default=argparse.SUPPRESS, help="YAML settings file")
    parent.add_argument("--log-level", default=argparse.SUPPRESS,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parent.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="parallel suite checks")
    parent.add_argument("--timings", action="store_true", default=argparse.SUPPRESS)
    parent.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    parent.add_argument("--convention", choices=CONVENTIONS, default=argparse.SUPPRESS)
    return parent


def _curve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--curve", help="curve-spec JSON file")
    parser.add_argument("--family", help="catalog family name, family JSON document or path")
    parser.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="family parameter; list values are comma separated")


def build_parser() -> argparse.ArgumentParser:
    parent = _global_flags()
    parser = _Parser(prog="toporec", description="Exact topological recursion on genus-zero curves",
                     parents=[parent])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("curve-show", parents=[parent], help="branch data and derived parameters")
    _curve_flags(p)

    p = sub.add_parser("omega", parents=[parent], help="a correlator omega_n^(g)")
    _curve_flags(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("fg", parents=[parent], help="symplectic invariant F_g")
    _curve_flags(p)
    p.add_argument("--g", type=int, required=True)

    p = sub.add_parser("counts", parents=[parent], help="weighted map counts")
    p.add_argument("--family", required=True)
    p.add_argument("--t4", default="1")
    p.add_argument("--order", type=int, required=True, help="number of entries")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--perimeters", default="4")

    p = sub.add_parser("diagrams", parents=[parent], help="recursion graphs")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rules", choices=RULE_SETS, default="strict")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--weights", action="store_true")
    _curve_flags(p)

    p = sub.add_parser("kernel", parents=[parent], help="expansion of the kernel H")
    _curve_flags(p)
    p.add_argument("--order", type=int, default=1)

    p = sub.add_parser("verify", parents=[parent], help="run an acceptance suite")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITE_ORDER)}, all")
    return parser


# inputs

def _family_doc(family: str, params: Sequence[str]) -> Dict[str, Any]:
    if family in FAMILIES:
        doc: Dict[str, Any] = {"family": family}
    elif family.lstrip().startswith("{") or Path(family).is_file():
        doc = load_family_spec(family).model_dump(exclude_unset=True)
    else:
        raise UnknownFamily(f"unknown family {family!r}", {"known": sorted(FAMILIES)})
    for item in params:
        key, sep, value = item.partition("=")
        if not sep or key not in FamilySpec.model_fields:
            raise UsageError(f"bad --param {item!r}; expected KEY=VALUE with KEY a family field")
        doc[key] = [v for v in value.split(",") if v] if key in LIST_FIELDS else value
    return doc


def _entry(args: argparse.Namespace) -> CatalogEntry:
    if args.curve and args.family:
        raise UsageError("--curve and --family are mutually exclusive")
    if args.curve:
        if args.param:
            raise UsageError("--param applies to --family only")
        return CatalogEntry("spec", load_curve(args.curve))
    if args.family:
        return make_family(_family_doc(args.family, args.param))
    raise UsageError("one of --curve or --family is required")


def _spectral(entry: CatalogEntry) -> SpectralCurve:
    if not isinstance(entry.curve, SpectralCurve):
        raise UsageError(f"family {entry.family} does not give a validated spectral curve here; "
                         "supply branchpoints or use curve-show")
    return entry.curve


# subcommands

def _curve_show(args, config: Dict[str, Any]) -> str:
    entry = _entry(args)
    curve = entry.curve
    doc: Dict[str, Any] = {"family": entry.family}
    if isinstance(curve, (SpectralCurve, CurveData)):
        data = curve.data if isinstance(curve, SpectralCurve) else curve
        doc.update(data.describe())
        points = curve.branchpoints if isinstance(curve, SpectralCurve) else find_branchpoints(data)[0]
        doc["branchpoints"] = []
        for i, a in enumerate(points):
            kind = classify_branchpoint(data, a)
            doc["branchpoints"].append({
                "index": i,
                "z": data.field.to_str(a),
                "kind": kind.kind,
                "p": getattr(kind, "p", None),
                "q": getattr(kind, "q", None),
            })
    else:
        doc.update(curve.describe())
    doc["derived"] = {**doc.get("derived", {}), **{k: str(v) for k, v in entry.derived.items()}}
    for key, value in entry.extras.items():
        if key == "identities":
            doc["identities"] = dict(value.checks)
        elif key == "mirror":
            doc["mirror"] = value.describe()
        else:
            field = getattr(curve, "field", None)
            doc["derived"][key] = field.to_str(value) if field is not None else str(value)
    return format_curve(doc, args.format)


def _omega(args, config: Dict[str, Any]) -> str:
    curve = _spectral(_entry(args))
    form = engine_for(curve, config).omega(args.g, args.n)
    return format_omega(form, curve, args.format, args.convention)


def _fg(args, config: Dict[str, Any]) -> str:
    curve = _spectral(_entry(args))
    if args.g == 1:
        value = f1_log_argument(curve)
        return format_value("F1_log_argument", value, curve.field, args.format, {"g": 1})
    if args.g < 1:
        raise UsageError("fg needs --g >= 1")
    value = compute_fg(curve, args.g, config=config)
    return format_value(f"F{args.g}", value, curve.field, args.format, {"g": args.g})


def _counts(args, config: Dict[str, Any]) -> str:
    if args.family != "quadrangulation":
        raise UsageError(f"counts supports --family quadrangulation, not {args.family!r}")
    try:
        perimeters = [int(v) for v in args.perimeters.split(",") if v]
    except ValueError:
        raise UsageError(f"bad --perimeters {args.perimeters!r}")
    table = quadrangulation_counts(args.t4, args.genus, perimeters, args.order, config)
    return format_counts(table, args.format)


def _diagrams(args, config: Dict[str, Any]) -> str:
    if args.count_only and args.weights:
        raise UsageError("--count-only and --weights are mutually exclusive")
    graphs = enumerate_graphs(args.g, args.k, args.rules)
    if not args.weights:
        return format_graphs(graphs, args.count_only, args.format)
    curve = _spectral(_entry(args))
    total = graphs_weight_sum(curve, graphs, config)
    if total is not None:
        total = total.convention(args.convention)
    return format_graphs(graphs, False, args.format, total, curve)


def _kernel(args, config: Dict[str, Any]) -> str:
    curve = _spectral(_entry(args))
    return format_kernel(kernel_h_expansion(curve, args.order, config), args.format)


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any]], str]] = {
    "curve-show": _curve_show,
    "omega": _omega,
    "fg": _fg,
    "counts": _counts,
    "diagrams": _diagrams,
    "kernel": _kernel,
}


def _settings(args: argparse.Namespace, config: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Config file (or given config) with command-line flags on top."""
    if config is None:
        config = load_config(args.config) if hasattr(args, "config") else dict(DEFAULTS)
    config = {**DEFAULTS, **config}
    for flag, key in (("log_level", "log_level"), ("jobs", "jobs"), ("timings", "timings"),
                      ("format", "output_format"), ("convention", "convention")):
        if hasattr(args, flag):
            config[key] = getattr(args, flag)
    if config["output_format"] not in FORMATS:
        raise UsageError(f"output_format must be one of {FORMATS}")
    if config["convention"] not in CONVENTIONS:
        raise UsageError(f"convention must be one of {CONVENTIONS}")
    if int(config["jobs"]) < 1:
        raise UsageError("--jobs must be at least 1")
    args.format = config["output_format"]
    args.convention = config["convention"]
    return config


def run_command(argv: Optional[List[str]] = None, config: Optional[Dict[str, Any]] = None,
                stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Parse ``argv``, run the subcommand and write its output.

    Args:
        argv: arguments without the program name; sys.argv[1:] by default
        config: settings; read from --config (or defaults) when None
        stdout: result stream
        stderr: error stream

    Returns:
        Process exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as e:
            # --help
            return int(e.code or 0)
        if args.command is None:
            raise UsageError("a subcommand is required")
        config = _settings(args, config)
        if hasattr(args, "log_level"):
            logging.getLogger().setLevel(getattr(logging, args.log_level))
        logger.info(f"Running {args.command}")

        if args.command == "verify":
            report = run_suite(args.suite, config)
            print(format_report(report, args.format), file=stdout)
            return report.exit_code
        print(COMMANDS[args.command](args, config), file=stdout)
        return OK_EXIT
    except Exception as e:
        code, payload = map_exception(e)
        if payload["error"]["code"] == "INTERNAL_ERROR":
            logger.exception(f"{type(e).__name__} while running {argv}")
        print(json.dumps(payload), file=stderr)
        return code
