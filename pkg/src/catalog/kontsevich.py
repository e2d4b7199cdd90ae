"""
Kontsevich-type curves: x = z^2 and y a power series in z.

The times enter as y(z) = z - 1/2 sum_{k>=0} t_{k+2} z^k, so t_3 shifts the
linear coefficient and regularity needs t_3 != 2.
"""

import logging
from dataclasses import dataclass
from math import factorial
from typing import Any, Dict, List, Mapping, Sequence, Union

import sympy

from exact_arith import CoeffField, UniRatFunc
from spectral_curve import CurveData, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)

Times = Union[Mapping[int, Any], Sequence[Any]]


def _times_dict(times: Times) -> Dict[int, Any]:
    """Normalize to {k: t_k}; a sequence starts at t_3."""
    if isinstance(times, Mapping):
        out = {int(k): v for k, v in times.items()}
    else:
        out = {k + 3: v for k, v in enumerate(times)}
    for k in out:
        if k < 2:
            raise ValueError(f"Kontsevich times start at t_2, got t_{k}")
    return out


def _x_square(F: CoeffField) -> UniRatFunc:
    return UniRatFunc.from_coeffs(F, [0, 0, 1])


def kontsevich_data(times: Times, field: CoeffField = None) -> CurveData:
    """Unvalidated Kontsevich curve data over ``field`` (Q by default)."""
    F = field or CoeffField("Q")
    t = {k: F.convert(v) for k, v in _times_dict(times).items()}
    top = max(t, default=3) - 2
    half = F.div(F.one, F.convert(2))
    coeffs = [F.zero] * (max(top, 1) + 1)
    coeffs[1] = F.one
    for k, value in t.items():
        coeffs[k - 2] -= half * value
    y = UniRatFunc.from_coeffs(F, coeffs)
    meta = {f"t{k}": F.to_str(v) for k, v in sorted(t.items())}
    return CurveData.rational(_x_square(F), y, meta)


def make_kontsevich(times: Times = (), field: CoeffField = None) -> SpectralCurve:
    """
    Kontsevich curve x = z^2, y = z - 1/2 sum t_{k+2} z^k.

    Args:
        times: [t_3, t_4, ...] or a mapping {k: t_k}
        field: coefficient field (Q unless the times carry a parameter)

    Returns:
        Curve with the single branchpoint z = 0

    Raises:
        NotRegular: when t_3 = 2
    """
    data = kontsevich_data(times, field)
    curve = validate_curve(data, [0])
    logger.info(f"Kontsevich curve: y = {data.y}")
    return curve


def make_airy(field: CoeffField = None) -> SpectralCurve:
    """x = z^2, y = z."""
    return make_kontsevich((), field)


def weil_petersson_times(order: int) -> Dict[int, sympy.Expr]:
    """t_{2d+3} = (-4p)^d / (2d+1)! + 2 delta_{d,0} for d < order, with p standing for pi^2."""
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    p = sympy.Symbol("p")
    times = {}
    for d in range(order):
        value = (-4 * p) ** d / factorial(2 * d + 1)
        if d == 0:
            value += 2
        times[2 * d + 3] = sympy.expand(value)
    return times


def make_weil_petersson(order: int) -> SpectralCurve:
    """
    The Weil-Petersson curve as Kontsevich times over Q[p].

    Args:
        order: number of odd times t_3, t_5, ... kept

    Returns:
        Curve over Q[p]; t_3 = 3, t_5 = -2p/3, t_7 = 2p^2/15, ...
    """
    F = CoeffField("Qp", "p")
    curve = make_kontsevich(weil_petersson_times(order), F)
    logger.info(f"Weil-Petersson curve truncated at t_{2 * order + 1}")
    return curve


@dataclass
class WittenKontsevichPair:
    """A Kontsevich curve at matrix times and the curve with matched times t_bar."""

    kontsevich: SpectralCurve
    matched: SpectralCurve
    tbar: List[Any]
    power_sums: Dict[int, Any]


def witten_kontsevich_pair(eigenvalues: Sequence[Any], order: int) -> WittenKontsevichPair:
    """
    Curves built from an external matrix Lambda.

    The Kontsevich times are t_{k+2} = (1/N) Tr Lambda^{-k-2} for k = 0..order.
    The matched curve is x = z^2, y = sum_k t_bar_k z^k with
    t_bar_k = (1/2N) Tr Lambda^{-k-2} - delta_{k,1}; both give the same F_g.

    Args:
        eigenvalues: nonzero rational eigenvalues of Lambda
        order: highest k kept

    Returns:
        WittenKontsevichPair
    """
    F = CoeffField("Q")
    lam = [F.convert(v) for v in eigenvalues]
    if not lam:
        raise ValueError("at least one eigenvalue is needed")
    if any(not v for v in lam):
        raise ValueError("eigenvalues must be nonzero")
    n = F.convert(len(lam))
    sums = {}
    for m in range(2, order + 3):
        sums[m] = sum((F.div(F.one, v ** m) for v in lam), F.zero)

    times = {k + 2: F.div(sums[k + 2], n) for k in range(order + 1)}
    kontsevich = make_kontsevich(times, F)

    tbar = [F.div(sums[k + 2], 2 * n) for k in range(order + 1)]
    if len(tbar) < 2:
        tbar.append(F.zero)
    tbar[1] -= F.one
    y = UniRatFunc.from_coeffs(F, tbar)
    meta = {f"tbar{k}": F.to_str(v) for k, v in enumerate(tbar)}
    matched = validate_curve(CurveData.rational(_x_square(F), y, meta), [0])
    logger.info(f"Matched curve for N = {len(lam)}: y = {y}")
    return WittenKontsevichPair(kontsevich, matched, tbar, sums)
