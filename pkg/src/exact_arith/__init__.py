"""Exact coefficient fields, rational functions and truncated series"""

from .errors import (
    DivisionByZero,
    FieldMismatch,
    OddParity,
    PoleAtPoint,
    TopoRecError,
    WindowExceeded,
)
from .fields import CoeffField, FieldElem, field_arith, format_rational, parse_rational
from .ratfunc import (
    UniRatFunc,
    laurent_expand,
    laurent_expand_at_infinity,
    ratfunc_compose_series,
    ratfunc_eval,
)
from .roots import RootReport, poly_roots_in_field
from .series import EXACT, LaurentSeries, series_reversion, series_substitute_even

__all__ = [
    "CoeffField",
    "DivisionByZero",
    "EXACT",
    "FieldElem",
    "FieldMismatch",
    "LaurentSeries",
    "OddParity",
    "PoleAtPoint",
    "RootReport",
    "TopoRecError",
    "UniRatFunc",
    "WindowExceeded",
    "field_arith",
    "format_rational",
    "laurent_expand",
    "laurent_expand_at_infinity",
    "parse_rational",
    "poly_roots_in_field",
    "ratfunc_compose_series",
    "ratfunc_eval",
    "series_reversion",
    "series_substitute_even",
]
