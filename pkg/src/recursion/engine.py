"""
The residue recursion for correlators and symplectic invariants.

    omega_{n}^(g)(z0, J) = sum_a Res_{z->a} K(z0, z) [ omega_{n+1}^(g-1)(z, z_bar, J)
                           + sum' omega^(h)(z, I) omega^(g-h)(z_bar, J \\ I) ]

where the primed sum skips (h, I) = (0, {}) and (g, J). Correlators are
computed bottom-up by increasing 2g - 2 + n and memoized per curve.
"""

import logging
import threading
import weakref
from typing import Any, Dict, Hashable, Optional, Tuple, Union

from exact_arith import LaurentSeries
from exact_arith.errors import MultiBranchpoint, NotNormalized, WindowExceeded
from forms import FormSeries, PoleForm, UnstableForm, assert_symmetric

from .calculus import Z, ZBAR, LocalCalculus

Correlator = Union[PoleForm, UnstableForm]


class Engine:
    """
    Correlator table of one curve.

    Args:
        curve: validated spectral curve
        config: optional settings (window_margin, max_window_doublings, verify_symmetry)
    """

    def __init__(self, curve, config: Optional[Dict[str, Any]] = None):
        self.curve = curve
        self.config = config or {}
        self.logger = logging.getLogger(__name__)
        self.margin = int(self.config.get("window_margin", 0))
        self.max_doublings = int(self.config.get("max_window_doublings", 4))
        self.verify_symmetry = bool(self.config.get("verify_symmetry", True))
        self.table: Dict[Tuple[int, int], PoleForm] = {}
        self._calculi: Dict[int, LocalCalculus] = {}
        self._lock = threading.RLock()

    @property
    def field(self):
        return self.curve.field

    def window(self, g: int, n: int) -> int:
        """Default local order for omega_n^(g)."""
        return 6 * g + 2 * n + 6 + self.margin

    def calculus(self, order: int) -> LocalCalculus:
        with self._lock:
            if order not in self._calculi:
                self._calculi[order] = LocalCalculus(self.curve, order)
            return self._calculi[order]

    # correlators

    def omega(self, g: int, n: int) -> Correlator:
        """omega_n^(g); unstable markers for 2g - 2 + n <= 0."""
        if g < 0 or n < 1:
            raise ValueError(f"omega needs g >= 0 and n >= 1, got ({g}, {n})")
        if 2 * g - 2 + n <= 0:
            return UnstableForm("one-zero" if n == 1 else "bergman", self.curve)
        with self._lock:
            cached = self.table.get((g, n))
            if cached is not None:
                return cached
            self._ensure_dependencies(g, n)

            order = self.window(g, n)
            for attempt in range(self.max_doublings + 1):
                try:
                    form = self._recurse(g, n, order)
                    break
                except WindowExceeded as e:
                    if attempt == self.max_doublings:
                        raise
                    self.logger.warning(f"window {order} too small for ({g},{n}): {e.message}; doubling")
                    order *= 2

            if self.verify_symmetry:
                assert_symmetric(form)
            self.table[(g, n)] = form
            self.logger.info(f"omega_{n}^({g}) computed: {len(form)} terms, max pole {form.max_pole_order()}")
            return form

    def _ensure_dependencies(self, g: int, n: int) -> None:
        if g >= 1:
            self.omega(g - 1, n + 1)
        for h in range(g + 1):
            for size in range(n):
                if (h, size) in ((0, 0), (g, n - 1)):
                    continue
                self.omega(h, size + 1)

    def _recurse(self, g: int, n: int, order: int) -> PoleForm:
        calc = self.calculus(order)
        J = tuple(range(1, n))
        total = PoleForm.zero(self.field, g, (0,) + J)
        for ia in range(len(self.curve.branchpoints)):
            bracket = self._bracket(g, J, ia, calc)
            total = total + calc.residue(bracket, ia, 0, g)
        self.logger.debug(f"({g},{n}) at window {order}: {len(total)} terms")
        return total

    def _bracket(self, g: int, J: Tuple[int, ...], ia: int, calc: LocalCalculus) -> FormSeries:
        K = self.curve.domain
        bracket = FormSeries.zero(K, J)

        if g >= 1:
            if (g - 1, len(J) + 2) == (0, 2):
                bracket = bracket + FormSeries.from_series(calc.bergman_diagonal(ia))
            else:
                inner = self.omega(g - 1, len(J) + 2)
                inner = inner.relabel(("u", "v") + J)
                bracket = bracket + calc.expand(inner, {"u": Z, "v": ZBAR}, ia).truncate(0)

        full = (1 << len(J)) - 1
        for h in range(g + 1):
            for mask in range(full + 1):
                if (h == 0 and mask == 0) or (h == g and mask == full):
                    continue
                I = tuple(J[i] for i in range(len(J)) if mask >> i & 1)
                rest = tuple(J[i] for i in range(len(J)) if not mask >> i & 1)
                left = self._half(h, I, ia, calc, Z)
                right = self._half(g - h, rest, ia, calc, ZBAR)
                bracket = bracket + left.tensor(right, 0).reorder(J)
        return bracket

    def _half(self, h: int, labels: Tuple[Hashable, ...], ia: int, calc: LocalCalculus, mode: str) -> FormSeries:
        """omega^(h)_{|labels|+1} with its first slot at z (or z_bar)."""
        if (h, len(labels)) == (0, 1):
            return calc.bergman(ia, mode, labels[0])
        form = self.omega(h, len(labels) + 1)
        return calc.expand_first(form, ia, mode).relabel(labels)

    # invariants

    def phi_series(self, ia: int, order: int, shift: Any = None) -> LaurentSeries:
        """
        Primitive of omega_1^(0) = -y dx near branchpoint ``ia``.

        The kernel carries the -1/2 prefactor, so the primitive of -y dx is
        the one for which the dilaton equation holds with a + sign.
        """
        phi = -self.curve.branch(ia, order).phi_series
        if shift is not None:
            phi = phi + LaurentSeries.constant(self.curve.domain, self.field.convert(shift))
        return phi

    def dilaton(self, form: PoleForm, shifts: Optional[Dict[int, Any]] = None) -> PoleForm:
        """
        sum_a Res_{z->a} Phi(z) form(..., z) over the last slot.

        For form = omega_{n+1}^(g) this equals (2 - 2g - n) omega_n^(g).
        """
        shifts = shifts or {}
        last = form.slots[-1]
        rest = form.slots[:-1]
        K = self.curve.domain
        order = self.window(form.g, form.n)
        calc = self.calculus(order)
        out: Dict[Tuple, Any] = {}
        for ia in range(len(self.curve.branchpoints)):
            series = calc.expand(form, {last: Z}, ia)
            phi = self.phi_series(ia, order, shifts.get(ia))
            for key, c in calc.residue_against(series, phi).items():
                out[key] = out.get(key, K.zero) + c
        return PoleForm(self.field, form.g, out, rest)

    def fg(self, g: int, shifts: Optional[Dict[int, Any]] = None) -> Any:
        """F_g = 1/(2 - 2g) sum_a Res Phi omega_1^(g), for g >= 2."""
        if g < 2:
            raise ValueError("F_g by residues needs g >= 2")
        w1 = self.omega(g, 1)
        reduced = self.dilaton(w1, shifts)
        value = reduced.terms.get((), self.curve.domain.zero)
        result = self.curve.domain.exquo(value, self.curve.domain.convert(2 - 2 * g))
        self.logger.info(f"F_{g} = {self.field.to_str(result)}")
        return result

    def tau_b_derivative(self, ia: int) -> Any:
        """Res_{z->a} B(z, z_bar)/dx(z)."""
        order = self.window(0, 2)
        calc = self.calculus(order)
        bd = calc.branch(ia)
        return calc.bergman_diagonal(ia).div(bd.xprime_series, 0).coefficient(-1)


_engines: "weakref.WeakKeyDictionary[Any, Engine]" = weakref.WeakKeyDictionary()
_engines_lock = threading.Lock()


def engine_for(curve, config: Optional[Dict[str, Any]] = None) -> Engine:
    """The shared engine of a curve, created on first use."""
    with _engines_lock:
        engine = _engines.get(curve)
        if engine is None:
            engine = Engine(curve, config)
            _engines[curve] = engine
        return engine


def compute_omega(curve, g: int, n: int, config: Optional[Dict[str, Any]] = None) -> Correlator:
    return engine_for(curve, config).omega(g, n)


def compute_fg(curve, g: int, shifts: Optional[Dict[int, Any]] = None,
               config: Optional[Dict[str, Any]] = None) -> Any:
    """
    Symplectic invariant F_g, g >= 2.

    Args:
        curve: validated curve
        g: genus
        shifts: optional constant added to Phi at given branchpoint indices

    Returns:
        F_g in the curve's field
    """
    return engine_for(curve, config).fg(g, shifts)


def dilaton_reduce(curve, form: PoleForm, shifts: Optional[Dict[int, Any]] = None) -> PoleForm:
    return engine_for(curve).dilaton(form, shifts)


def tau_b_derivative(curve, bp: int) -> Any:
    return engine_for(curve).tau_b_derivative(bp)


def f1_log_argument(curve) -> Any:
    """y'(a) of a one-branchpoint curve with x''(a)/2 = 1; F_1 = -ln(.)/24 + const."""
    if len(curve.branchpoints) != 1:
        raise MultiBranchpoint(f"curve has {len(curve.branchpoints)} branchpoints")
    bd = curve.branch(0, 4)
    if bd.xpp_half != curve.domain.one:
        raise NotNormalized("x''(a)/2 must be 1; apply ScaleXY first",
                            {"xpp_half": curve.field.to_str(bd.xpp_half)})
    return bd.y_linear
