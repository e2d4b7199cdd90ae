"""
Local expansion of correlators near a branchpoint.

``FormSeries`` is a truncated Laurent series in the local coordinate s whose
coefficients are partial-fraction forms in the remaining slots. It is the
working type of every residue computation.
"""

import logging
from typing import Any, Dict, Hashable, Optional, Sequence, Tuple

from exact_arith import EXACT, LaurentSeries
from exact_arith.errors import WindowExceeded

from .poleform import Key, PoleForm

logger = logging.getLogger(__name__)


def _min_valid(*vals: int) -> int:
    v = min(vals)
    return EXACT if v >= EXACT // 2 else v


class FormSeries:
    """
    sum_e s^e * (form in ``labels``), trusted through s^valid.

    Args:
        domain: coefficient domain
        labels: slot labels of the coefficient forms
        data: exponent -> {key: coefficient}
        valid: highest trusted exponent
    """

    __slots__ = ("domain", "labels", "data", "valid")

    def __init__(self, domain, labels: Sequence[Hashable], data: Dict[int, Dict[Key, Any]], valid: int = EXACT):
        self.domain = domain
        self.labels = tuple(labels)
        self.valid = valid
        self.data = {}
        for e, terms in data.items():
            if e > valid:
                continue
            kept = {k: c for k, c in terms.items() if c}
            if kept:
                self.data[e] = kept

    @classmethod
    def zero(cls, domain, labels: Sequence[Hashable], valid: int = EXACT) -> "FormSeries":
        return cls(domain, labels, {}, valid)

    @classmethod
    def from_series(cls, series: LaurentSeries, labels: Sequence[Hashable] = (),
                    key: Key = ()) -> "FormSeries":
        """A scalar series times a single basis element."""
        data = {e: {key: c} for e, c in series.terms()}
        return cls(series.domain, labels, data, series.valid)

    @property
    def low(self) -> int:
        return min(self.data) if self.data else self.valid + 1

    @property
    def is_zero(self) -> bool:
        return not self.data

    def __repr__(self) -> str:
        return f"FormSeries(labels={self.labels}, low={self.low}, valid={self.valid}, {len(self.data)} orders)"

    def coefficient(self, e: int) -> Dict[Key, Any]:
        if e > self.valid:
            raise WindowExceeded(
                f"form coefficient s^{e} requested beyond validity s^{self.valid}",
                {"exponent": e, "valid": self.valid},
            )
        return self.data.get(e, {})

    def truncate(self, order: int) -> "FormSeries":
        return FormSeries(self.domain, self.labels, self.data, min(self.valid, order))

    def __add__(self, other: "FormSeries") -> "FormSeries":
        if other.labels != self.labels:
            other = other.reorder(self.labels)
        valid = min(self.valid, other.valid)
        out: Dict[int, Dict[Key, Any]] = {e: dict(t) for e, t in self.data.items() if e <= valid}
        for e, terms in other.data.items():
            if e > valid:
                continue
            slot = out.setdefault(e, {})
            for k, c in terms.items():
                slot[k] = slot.get(k, self.domain.zero) + c
        return FormSeries(self.domain, self.labels, out, valid)

    def scale(self, c: Any) -> "FormSeries":
        data = {e: {k: v * c for k, v in t.items()} for e, t in self.data.items()}
        return FormSeries(self.domain, self.labels, data, self.valid)

    def mul_series(self, series: LaurentSeries, order: Optional[int] = None) -> "FormSeries":
        """Multiply by a scalar Laurent series."""
        if self.is_zero and series.is_zero:
            return FormSeries.zero(self.domain, self.labels, _min_valid(self.valid, series.valid))
        s_low = series.low if not series.is_zero else series.valid + 1
        valid = _min_valid(self.valid + s_low, series.valid + self.low)
        if order is not None:
            valid = min(valid, order)
        out: Dict[int, Dict[Key, Any]] = {}
        s_terms = series.terms()
        for e1, terms in self.data.items():
            for e2, c2 in s_terms:
                e = e1 + e2
                if e > valid:
                    break
                slot = out.setdefault(e, {})
                for k, c in terms.items():
                    slot[k] = slot.get(k, self.domain.zero) + c * c2
        return FormSeries(self.domain, self.labels, out, valid)

    def tensor(self, other: "FormSeries", order: Optional[int] = None) -> "FormSeries":
        """Product of series whose coefficient forms live in disjoint slots."""
        valid = _min_valid(self.valid + other.low, other.valid + self.low)
        if order is not None:
            valid = min(valid, order)
        out: Dict[int, Dict[Key, Any]] = {}
        other_items = sorted(other.data.items())
        for e1, t1 in self.data.items():
            for e2, t2 in other_items:
                e = e1 + e2
                if e > valid:
                    break
                slot = out.setdefault(e, {})
                for k1, c1 in t1.items():
                    for k2, c2 in t2.items():
                        k = k1 + k2
                        slot[k] = slot.get(k, self.domain.zero) + c1 * c2
        return FormSeries(self.domain, self.labels + other.labels, out, valid)

    def reorder(self, labels: Sequence[Hashable]) -> "FormSeries":
        labels = tuple(labels)
        idx = [self.labels.index(lab) for lab in labels]
        if len(idx) != len(self.labels):
            raise ValueError(f"cannot reorder {self.labels} as {labels}")
        data = {e: {tuple(k[i] for i in idx): c for k, c in t.items()} for e, t in self.data.items()}
        return FormSeries(self.domain, labels, data, self.valid)

    def relabel(self, labels: Sequence[Hashable]) -> "FormSeries":
        return FormSeries(self.domain, labels, self.data, self.valid)

    def form_at(self, e: int, field, g: int = 0) -> PoleForm:
        """Coefficient of s^e as a PoleForm."""
        return PoleForm(field, g, self.coefficient(e), self.labels)


class PoleFactorCache:
    """
    Local series of dz/(z - a_j)^k pulled back to a + inner(s).

    ``inner`` is s itself for the direct sheet or sigma(s) for the
    conjugate sheet; the pulled-back dz contributes inner'(s).
    """

    def __init__(self, domain, points: Sequence[Any], center_index: int, inner: Optional[LaurentSeries],
                 order: int):
        self.domain = domain
        self.points = list(points)
        self.center_index = center_index
        self.inner = inner
        self.inner_prime = inner.derivative() if inner is not None else None
        self.order = order
        self._inverse: Dict[int, LaurentSeries] = {}
        self._cache: Dict[Tuple[int, int], LaurentSeries] = {}

    def _base_inverse(self, j: int) -> LaurentSeries:
        """1/(a_center - a_j + inner(s))."""
        if j not in self._inverse:
            K = self.domain
            d = self.points[self.center_index] - self.points[j]
            base = LaurentSeries(K, 1, [K.one]) if self.inner is None else self.inner
            if d:
                base = base + LaurentSeries.constant(K, d)
                self._inverse[j] = base.inverse(self.order)
            else:
                self._inverse[j] = base.inverse(self.order - 1 if self.inner is not None else None)
        return self._inverse[j]

    def factor(self, pole: Tuple[int, int]) -> LaurentSeries:
        if pole in self._cache:
            return self._cache[pole]
        j, k = pole
        K = self.domain
        if self.inner is None and j == self.center_index:
            series = LaurentSeries.monomial(K, -k)
        else:
            inv = self._base_inverse(j)
            series = inv.power(k, self.order)
            if self.inner_prime is not None:
                series = series.mul(self.inner_prime, self.order)
        self._cache[pole] = series
        return series


def expand_slots(form: PoleForm, factors: Dict[Hashable, PoleFactorCache],
                 order: Optional[int] = None) -> FormSeries:
    """
    Expand the slots named in ``factors`` and multiply the pulled-back pieces.

    Args:
        form: the correlator
        factors: slot label -> factor cache of the sheet the slot is pulled to
        order: optional truncation of the result

    Returns:
        FormSeries in the remaining slots, in their original order
    """
    K = form.domain
    expanded = [i for i, lab in enumerate(form.slots) if lab in factors]
    rest = [i for i, lab in enumerate(form.slots) if lab not in factors]
    rest_labels = tuple(form.slots[i] for i in rest)
    caches = [factors[form.slots[i]] for i in expanded]

    grouped: Dict[Key, Dict[Key, Any]] = {}
    for key, c in form.terms.items():
        head = tuple(key[i] for i in expanded)
        tail = tuple(key[i] for i in rest)
        grouped.setdefault(head, {})[tail] = c

    total: Optional[FormSeries] = None
    for head, tails in sorted(grouped.items()):
        series = LaurentSeries.constant(K, K.one)
        for pole, cache in zip(head, caches):
            series = series.mul(cache.factor(pole), order)
        piece = FormSeries(K, rest_labels, {0: tails}).mul_series(series, order)
        total = piece if total is None else total + piece
    if total is None:
        valid = EXACT if order is None else order
        return FormSeries.zero(K, rest_labels, valid)
    return total


def poleform_local_expand(form: PoleForm, slot: Hashable, branchpoints: Sequence[Any], bp: int,
                          order: int) -> FormSeries:
    """
    Expand one slot of a correlator at branchpoint ``bp`` in s = z - a_bp.

    Monomials at the same branchpoint give exact principal parts s^-k,
    the others Taylor series valid through s^order.
    """
    cache = PoleFactorCache(form.domain, branchpoints, bp, None, order)
    return expand_slots(form, {slot: cache}, order)
