"""Local analysis near a branchpoint: involution, y and Phi series."""

import logging
from typing import Any, Tuple

from exact_arith import LaurentSeries, laurent_expand, ratfunc_compose_series

from .curve import BranchData, CurveData, SpectralCurve, local_x

logger = logging.getLogger(__name__)


def solve_involution(data: CurveData, a: Any, order: int) -> LaurentSeries:
    """
    The conjugate point z_bar = a + sigma(s), sigma(s) = -s + O(s^2).

    Newton iteration on x(a + sigma) = x(a + s); each step doubles the
    number of correct coefficients.
    """
    K = data.domain
    xp = data.x.derivative()
    target = laurent_expand(data.x, a, order + 2)
    sigma = LaurentSeries(K, 1, [-K.one])
    correct = 1
    while correct < order:
        nxt = min(2 * correct, order)
        f = ratfunc_compose_series(data.x, a, sigma, nxt + 2) - target.truncate(nxt + 2)
        fp = ratfunc_compose_series(xp, a, sigma, nxt + 1)
        step = f.div(fp, nxt)
        sigma = (sigma - step).truncate(nxt).as_exact()
        correct = nxt
    return sigma.truncate(order)


def involution_series(curve: SpectralCurve, bp: int, order: int) -> LaurentSeries:
    """sigma(s) at branchpoint index ``bp`` valid through s^order."""
    return curve.branch(bp, order).sigma


def y_series_at(data: CurveData, a: Any, order: int) -> LaurentSeries:
    """y(a+s) - y(a), from termwise integration of dy."""
    return laurent_expand(data.dy, a, order - 1).integrate()


def local_y_and_phi(curve: SpectralCurve, bp: int, order: int) -> Tuple[LaurentSeries, LaurentSeries]:
    """(ySeries, phiSeries) at branchpoint index ``bp``, constants dropped."""
    bd = curve.branch(bp, order)
    return bd.y_series.truncate(order), bd.phi_series.truncate(order)


def branch_data(data: CurveData, index: int, a: Any, order: int) -> BranchData:
    """Compute every local series at ``a`` to local order ``order``."""
    K = data.domain
    x_series = local_x(data, a, order + 2)
    xprime_series = x_series.derivative()
    sigma = solve_involution(data, a, order)
    sigma_prime = sigma.derivative()

    y_series = y_series_at(data, a, order + 2)
    dy_bar = ratfunc_compose_series(data.dy, a, sigma, order)
    ybar_series = dy_bar.mul(sigma_prime).integrate()
    phi_series = y_series.mul(xprime_series).integrate()

    xpp_half = x_series.coefficient(2)
    y_linear = y_series.coefficient(1)
    y_prime_sq = K.exquo(y_linear * y_linear, xpp_half)
    return BranchData(
        index=index,
        a=a,
        order=order,
        x_series=x_series,
        xprime_series=xprime_series,
        sigma=sigma,
        sigma_prime=sigma_prime,
        y_series=y_series,
        ybar_series=ybar_series,
        phi_series=phi_series,
        xpp_half=xpp_half,
        y_linear=y_linear,
        y_prime_sq=y_prime_sq,
    )
