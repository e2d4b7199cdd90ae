"""
Spectral curve data model.

``CurveData`` is the raw (x, y) pair on the Riemann sphere. ``SpectralCurve``
is a validated curve: every branchpoint is a simple zero of dx at which dy
does not vanish, and branch data is available on demand at any local order.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from exact_arith import (
    CoeffField,
    LaurentSeries,
    UniRatFunc,
    laurent_expand,
    laurent_expand_at_infinity,
    poly_roots_in_field,
)
from exact_arith.errors import (
    BranchpointAtInfinity,
    BranchpointNotInField,
    CoincidentBranchpoints,
    NotRegular,
    PoleAtPoint,
)

DEFAULT_LOCAL_ORDER = 12


@dataclass(frozen=True)
class LogTerm:
    """coeff * ln(arg(z)) contribution to y."""

    coeff: Any
    arg: UniRatFunc


@dataclass
class CurveData:
    """
    Unvalidated genus-zero curve.

    Args:
        field: coefficient field
        x: x(z)
        y: y(z) when rational, else None
        dy: dy/dz as a rational function
        logs: logarithmic terms of y (only for log-type y)
        meta: derived parameters recorded by constructors
    """

    field: CoeffField
    x: UniRatFunc
    y: Optional[UniRatFunc]
    dy: UniRatFunc
    logs: Tuple[LogTerm, ...] = ()
    meta: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def rational(cls, x: UniRatFunc, y: UniRatFunc, meta: Optional[Dict[str, str]] = None) -> "CurveData":
        return cls(x.field, x, y, y.derivative(), (), dict(meta or {}))

    @classmethod
    def log_type(cls, x: UniRatFunc, dy: UniRatFunc, logs: Sequence[LogTerm] = (),
                 meta: Optional[Dict[str, str]] = None) -> "CurveData":
        return cls(x.field, x, None, dy, tuple(logs), dict(meta or {}))

    @property
    def is_rational(self) -> bool:
        return self.y is not None

    @property
    def domain(self):
        return self.field.domain

    def describe(self) -> Dict[str, Any]:
        doc = {"field": self.field.tag, "x": str(self.x)}
        if self.is_rational:
            doc["y"] = str(self.y)
        else:
            doc["dy"] = str(self.dy)
            doc["logs"] = [
                {"coeff": self.field.to_str(t.coeff), "arg": str(t.arg)} for t in self.logs
            ]
        if self.field.param:
            doc["param"] = self.field.param
        if self.meta:
            doc["derived"] = dict(self.meta)
        return doc


@dataclass(frozen=True)
class BranchData:
    """
    Local analysis at one branchpoint, in s = z - a.

    ``sigma`` is the involution z_bar = a + sigma(s); ``y_series`` and
    ``ybar_series`` are y(a+s) - y(a) and y(a+sigma(s)) - y(a);
    ``phi_series`` is a primitive of y dx with zero constant term.
    """

    index: int
    a: Any
    order: int
    x_series: LaurentSeries
    xprime_series: LaurentSeries
    sigma: LaurentSeries
    sigma_prime: LaurentSeries
    y_series: LaurentSeries
    ybar_series: LaurentSeries
    phi_series: LaurentSeries
    xpp_half: Any
    y_linear: Any
    y_prime_sq: Any


class SpectralCurve:
    """
    Validated curve with lazily computed branch data.

    Args:
        data: the underlying curve
        branchpoints: branchpoint locations in a fixed order
        default_order: local order computed at build time
    """

    def __init__(self, data: CurveData, branchpoints: Sequence[Any], default_order: int = DEFAULT_LOCAL_ORDER):
        self.data = data
        self.branchpoints: Tuple[Any, ...] = tuple(branchpoints)
        self.logger = logging.getLogger(__name__)
        self._cache: Dict[Tuple[int, int], BranchData] = {}
        self._lock = threading.Lock()
        for i in range(len(self.branchpoints)):
            self.branch(i, default_order)

    # passthroughs

    @property
    def field(self) -> CoeffField:
        return self.data.field

    @property
    def domain(self):
        return self.data.field.domain

    @property
    def x(self) -> UniRatFunc:
        return self.data.x

    @property
    def y(self) -> Optional[UniRatFunc]:
        return self.data.y

    @property
    def dy(self) -> UniRatFunc:
        return self.data.dy

    @property
    def is_rational(self) -> bool:
        return self.data.is_rational

    def __repr__(self) -> str:
        bps = ", ".join(self.field.to_str(a) for a in self.branchpoints)
        return f"SpectralCurve(x={self.x}, y={self.y if self.is_rational else 'log-type'}, bps=[{bps}])"

    def branch(self, index: int, order: int) -> BranchData:
        """Branch data at branchpoint ``index`` valid to local order ``order``."""
        key = (index, order)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._cache.get(key)
            if cached is None:
                from .local import branch_data

                cached = branch_data(self.data, index, self.branchpoints[index], order)
                self._cache[key] = cached
                self.logger.debug(f"branch data at a={self.field.to_str(cached.a)} to order {order}")
        return cached

    def describe(self) -> Dict[str, Any]:
        doc = self.data.describe()
        doc["branchpoints"] = []
        for i, a in enumerate(self.branchpoints):
            bd = self.branch(i, 4)
            doc["branchpoints"].append({
                "a": self.field.to_str(a),
                "x(a)": self.field.to_str(self.x.evaluate(a)),
                "xpp_half": self.field.to_str(bd.xpp_half),
                "y_linear": self.field.to_str(bd.y_linear),
                "y_prime_sq": self.field.to_str(bd.y_prime_sq),
            })
        return doc


def find_branchpoints(data: CurveData) -> Tuple[List[Any], int]:
    """Zeros of dx found in the field, with the unresolved degree."""
    xp = data.x.derivative()
    report = poly_roots_in_field(xp.numerator_low_first(), data.field)
    for root, mult in report.roots:
        if mult > 1:
            raise NotRegular(
                f"dx has a zero of multiplicity {mult} at z = {data.field.to_str(root)}",
                {"point": data.field.to_str(root), "multiplicity": mult},
            )
    return [r for r, _ in report.roots], report.remainder_degree


def check_infinity(data: CurveData) -> None:
    """Reject a critical point of x at z = infinity."""
    at_inf = laurent_expand_at_infinity(data.x, 2)
    if at_inf.low >= 0 and not at_inf.coefficient(1):
        raise BranchpointAtInfinity("dx vanishes at z = infinity", {"x": str(data.x)})


def validate_curve(data: CurveData, branchpoints: Optional[Sequence[Any]] = None,
                   default_order: int = DEFAULT_LOCAL_ORDER) -> SpectralCurve:
    """
    Check regularity and return a SpectralCurve.

    Args:
        data: curve to validate
        branchpoints: explicit branchpoint list; discovered when None
        default_order: local order for the branch data computed up front

    Returns:
        The validated curve
    """
    logger = logging.getLogger(__name__)
    F = data.field
    check_infinity(data)
    xp = data.x.derivative()

    if branchpoints is None:
        found, remainder = find_branchpoints(data)
        if remainder:
            raise BranchpointNotInField(
                f"dx has zeros outside {F!r} (unfactored degree {remainder})",
                {"remainder_degree": remainder},
            )
        branchpoints = found
    else:
        branchpoints = [F.convert(a) for a in branchpoints]
        xpp = xp.derivative()
        for a in branchpoints:
            if xp.pole_order_at(a) > 0:
                raise NotRegular(f"x has a pole at z = {F.to_str(a)}", {"point": F.to_str(a)})
            if xp.evaluate(a):
                raise NotRegular(f"dx does not vanish at z = {F.to_str(a)}", {"point": F.to_str(a)})
            if not xpp.evaluate(a):
                raise NotRegular(f"dx has a multiple zero at z = {F.to_str(a)}", {"point": F.to_str(a)})

    for i, a in enumerate(branchpoints):
        for b in branchpoints[i + 1:]:
            if a == b:
                raise CoincidentBranchpoints(f"branchpoint {F.to_str(a)} listed twice")

    for a in branchpoints:
        try:
            slope = data.dy.evaluate(a)
        except PoleAtPoint as e:
            raise NotRegular(f"y has a pole at the branchpoint {F.to_str(a)}", {"point": F.to_str(a)}) from e
        if not slope:
            raise NotRegular(f"dy vanishes at the branchpoint {F.to_str(a)}", {"point": F.to_str(a)})

    curve = SpectralCurve(data, branchpoints, default_order)
    logger.info(f"Curve built: x = {data.x}, {len(branchpoints)} branchpoint(s)")
    return curve


def local_x(data: CurveData, a: Any, order: int) -> LaurentSeries:
    """x(a+s) - x(a) through s^order."""
    series = laurent_expand(data.x, a, order)
    const = series.coefficient(0)
    return series - LaurentSeries.constant(data.domain, const)
