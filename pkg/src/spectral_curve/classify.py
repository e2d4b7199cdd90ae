"""Local blow-up type of a critical point of x."""

import logging
from dataclasses import dataclass
from typing import Any, Union

from exact_arith import ratfunc_compose_series
from exact_arith.errors import NotRegular

from .curve import CurveData, SpectralCurve, local_x
from .local import solve_involution, y_series_at

logger = logging.getLogger(__name__)

MAX_CLASSIFY_ORDER = 96


@dataclass(frozen=True)
class Regular:
    """Airy blow-up: x ~ xpp_half s^2, y ~ y_linear s."""

    xpp_half: Any
    y_linear: Any

    kind = "regular"


@dataclass(frozen=True)
class Singular:
    """(p, q) cusp: y ~ s^p against x ~ s^q."""

    p: int
    q: int

    kind = "singular"


def classify_branchpoint(curve: Union[CurveData, SpectralCurve], point: Any,
                         order: int = 12) -> Union[Regular, Singular]:
    """
    Read the leading exponents of x and y at a critical point of x.

    Args:
        curve: curve data (dy may vanish at the point)
        point: location of the critical point
        order: starting local order; doubled while the odd part of y is not seen

    Returns:
        Regular or Singular(p, q)
    """
    data = curve.data if isinstance(curve, SpectralCurve) else curve
    a = data.field.convert(point)
    while order <= MAX_CLASSIFY_ORDER:
        x_local = local_x(data, a, order)
        if x_local.is_zero:
            raise NotRegular("x is constant")
        q = x_local.low
        if q < 2:
            raise NotRegular(f"dx does not vanish at z = {data.field.to_str(a)}")
        y_local = y_series_at(data, a, order)

        if q == 2:
            sigma = solve_involution(data, a, order)
            ybar = ratfunc_compose_series(data.dy, a, sigma, order - 1).mul(sigma.derivative()).integrate()
            odd_part = y_local - ybar
            if not odd_part.is_zero:
                p = odd_part.low
                if p == 1:
                    return Regular(x_local.coefficient(2), y_local.coefficient(1))
                logger.debug(f"singular point z={data.field.to_str(a)}: (p, q) = ({p}, 2)")
                return Singular(p, 2)
        else:
            for e, _ in y_local.terms():
                if e % q:
                    return Singular(e, q)
        order *= 2
    raise NotRegular("y is a function of x near the point", {"point": data.field.to_str(a)})
