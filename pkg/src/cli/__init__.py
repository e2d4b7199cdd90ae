"""Command-line commands, output formatting and acceptance suites"""

from .commands import build_parser, run_command
from .error_utils import ERROR_EXIT, OK_EXIT, USAGE_EXIT, UsageError, error_payload, map_exception
from .settings import DEFAULTS, load_config
from .suites import SUITE_ORDER, Check, CheckResult, CheckSkipped, SuiteReport, run_suite, suite_checks

__all__ = [
    "Check",
    "CheckResult",
    "CheckSkipped",
    "DEFAULTS",
    "ERROR_EXIT",
    "OK_EXIT",
    "SUITE_ORDER",
    "SuiteReport",
    "USAGE_EXIT",
    "UsageError",
    "build_parser",
    "error_payload",
    "load_config",
    "map_exception",
    "run_command",
    "run_suite",
    "suite_checks",
]
