"""(p, 2) minimal-model curves x = z^2 - 2u with odd polynomial y."""

import logging
from typing import Any, Sequence

from exact_arith import CoeffField, UniRatFunc
from spectral_curve import CurveData, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)


def make_minimal_p2(u: Any, tbar: Sequence[Any], field: CoeffField = None) -> SpectralCurve:
    """
    x = z^2 - 2u, y = sum_j tbar_j u^(k-j) z^(2j+1) with k = len(tbar) - 1.

    Args:
        u: the string-equation variable
        tbar: times tbar_0..tbar_k
        field: coefficient field, Q by default

    Returns:
        Curve with the single branchpoint z = 0

    Raises:
        NotRegular: when tbar_0 u^k = 0
    """
    F = field or CoeffField("Q")
    if not tbar:
        raise ValueError("at least one time is needed")
    u = F.convert(u)
    times = [F.convert(t) for t in tbar]
    k = len(times) - 1
    coeffs = [F.zero] * (2 * k + 2)
    for j, t in enumerate(times):
        coeffs[2 * j + 1] = t * u ** (k - j)
    x = UniRatFunc.from_coeffs(F, [-2 * u, 0, 1])
    y = UniRatFunc.from_coeffs(F, coeffs)
    meta = {"u": F.to_str(u), "p": str(2 * k + 1)}
    meta.update({f"tbar{j}": F.to_str(t) for j, t in enumerate(times)})
    curve = validate_curve(CurveData.rational(x, y, meta), [0])
    logger.info(f"({2 * k + 1},2) curve: x = {x}, y = {y}")
    return curve


def make_pure_gravity(u: Any = 1) -> SpectralCurve:
    """The (3,2) curve x = z^2 - 2u, y = z^3 - 3uz; u = 1 gives (z^2 - 2, z^3 - 3z)."""
    return make_minimal_p2(u, [-3, 1])
