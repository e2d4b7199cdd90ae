"""
Residue calculus at branchpoints.

``LocalCalculus`` holds, for one curve and one local window, everything the
recursion contracts against: pulled-back pole factors on both sheets, the
Bergman kernel pieces and the recursion kernel coefficients.

With s = z - a and z_bar = a + sigma(s), the kernel expands as

    K(z0, z) = sum_{m>=1} k_m(s) dz0 / (z0 - a)^{m+1} / ds,
    k_m(s) = -(s^m - sigma(s)^m) / (2 (y(z) - y(z_bar)) x'(z)).
"""

import logging
from typing import Any, Dict, Hashable, Mapping, Tuple

from exact_arith import LaurentSeries
from forms import FormSeries, PoleFactorCache, PoleForm, expand_slots

logger = logging.getLogger(__name__)

Z = "z"
ZBAR = "zbar"


class LocalCalculus:
    """
    Local expansions of one curve at every branchpoint, to a fixed window.

    Args:
        curve: validated spectral curve
        order: local window; every cached series is valid through s^order
    """

    def __init__(self, curve, order: int):
        self.curve = curve
        self.order = order
        self.domain = curve.domain
        self.points = list(curve.branchpoints)
        self.logger = logging.getLogger(__name__)
        self._factors: Dict[Tuple[int, str], PoleFactorCache] = {}
        self._kernel: Dict[Tuple[int, int], LaurentSeries] = {}
        self._kernel_den: Dict[int, LaurentSeries] = {}
        self._bergman: Dict[Tuple[int, str], FormSeries] = {}
        self._diag: Dict[int, LaurentSeries] = {}
        self._expanded: Dict[Tuple[int, int, int, str], FormSeries] = {}

    def branch(self, ia: int):
        return self.curve.branch(ia, self.order)

    def factors(self, ia: int, mode: str) -> PoleFactorCache:
        key = (ia, mode)
        if key not in self._factors:
            inner = None if mode == Z else self.branch(ia).sigma
            self._factors[key] = PoleFactorCache(self.domain, self.points, ia, inner, self.order)
        return self._factors[key]

    # correlators

    def expand(self, form: PoleForm, modes: Mapping[Hashable, str], ia: int) -> FormSeries:
        """Pull the slots in ``modes`` back to z or z_bar near branchpoint ``ia``."""
        caches = {lab: self.factors(ia, mode) for lab, mode in modes.items()}
        return expand_slots(form, caches, self.order)

    def expand_first(self, form: PoleForm, ia: int, mode: str) -> FormSeries:
        """Expand the first slot of a stored correlator; cached by (g, n, ia, mode)."""
        key = (form.g, form.n, ia, mode)
        if key not in self._expanded:
            self._expanded[key] = self.expand(form, {form.slots[0]: mode}, ia)
        return self._expanded[key]

    # Bergman kernel pieces

    def bergman(self, ia: int, mode: str, label: Hashable) -> FormSeries:
        """
        B(z, X) or B(z_bar, X) as a series in s with forms in X.

        B(a + u, X) = sum_m (m + 1) u^m dX/(X - a)^{m+2}, with u = s or sigma(s).
        """
        key = (ia, mode)
        if key not in self._bergman:
            K = self.domain
            if mode == Z:
                data = {m: {((ia, m + 2),): K.convert(m + 1)} for m in range(self.order + 1)}
                series = FormSeries(K, ("X",), data, self.order)
            else:
                bd = self.branch(ia)
                sigma, sigma_prime = bd.sigma, bd.sigma_prime
                series = FormSeries.zero(K, ("X",), self.order)
                power = LaurentSeries.constant(K, K.one)
                for m in range(self.order + 1):
                    piece = power.mul(sigma_prime, self.order).scale(K.convert(m + 1))
                    series = series + FormSeries.from_series(piece, ("X",), ((ia, m + 2),))
                    power = power.mul(sigma, self.order)
                series = series.truncate(min(sigma.valid, self.order))
            self._bergman[key] = series
        return self._bergman[key].relabel((label,))

    def bergman_diagonal(self, ia: int) -> LaurentSeries:
        """B(z, z_bar) / ds^2 = sigma'(s) / (s - sigma(s))^2."""
        if ia not in self._diag:
            K = self.domain
            bd = self.branch(ia)
            gap = LaurentSeries.monomial(K, 1) - bd.sigma
            self._diag[ia] = gap.power(-2).mul(bd.sigma_prime)
        return self._diag[ia]

    # recursion kernel

    def _denominator_inverse(self, ia: int) -> LaurentSeries:
        """1 / ((y - y_bar) x'(a + s))."""
        if ia not in self._kernel_den:
            bd = self.branch(ia)
            den = (bd.y_series - bd.ybar_series).mul(bd.xprime_series)
            self._kernel_den[ia] = den.inverse()
        return self._kernel_den[ia]

    def kernel(self, ia: int, m: int) -> LaurentSeries:
        key = (ia, m)
        if key not in self._kernel:
            K = self.domain
            bd = self.branch(ia)
            diff = LaurentSeries.monomial(K, m) - bd.sigma.power(m, self.order + m)
            half = K.exquo(-K.one, K.convert(2))
            self._kernel[key] = diff.mul(self._denominator_inverse(ia)).scale(half)
        return self._kernel[key]

    def residue(self, bracket: FormSeries, ia: int, out_label: Hashable, g: int) -> PoleForm:
        """
        Res_{z -> a} K(z0, z) * bracket, with the bracket a quadratic differential in z.

        Returns a form in (out_label,) + bracket.labels.
        """
        K = self.domain
        labels = (out_label,) + bracket.labels
        out: Dict[Tuple, Any] = {}
        lowest = bracket.low
        for e in range(lowest, 1):
            terms = bracket.coefficient(e)
            if not terms:
                continue
            for m in range(1, 2 - e):
                c = self.kernel(ia, m).coefficient(-1 - e)
                if not c:
                    continue
                pole = ((ia, m + 1),)
                for key, v in terms.items():
                    full = pole + key
                    out[full] = out.get(full, K.zero) + c * v
        return PoleForm(self.curve.field, g, out, labels)

    def residue_against(self, series: FormSeries, weight: LaurentSeries) -> Dict[Tuple, Any]:
        """Coefficient of s^-1 in weight(s) * series."""
        return series.mul_series(weight, -1).coefficient(-1)
