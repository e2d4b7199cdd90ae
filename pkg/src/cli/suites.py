"""
Built-in acceptance suites.

Each check returns an (expected, got) pair; sympy expressions compare by
exact cancellation, everything else by string. Checks run on worker
threads under a semaphore and are reported sorted by id, so a report does
not depend on the number of jobs.
"""

import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import sympy
from pydantic import BaseModel

from catalog import (
    ising_parameters,
    make_airy,
    make_ising_quartic,
    make_kontsevich,
    make_plancherel,
    make_pure_gravity,
    make_q_plancherel,
    make_quadrangulation,
    make_weil_petersson,
    quadrangulation_counts,
    weil_petersson_times,
    witten_kontsevich_pair,
)
from diagrams import enumerate_graphs, graphs_weight_sum, mirror_classes
from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import NotRegular, TopoRecError, UnknownSuite
from forms import (
    assert_symmetric,
    integrate_form,
    intersection_numbers,
    kappa_one,
    kappa_times,
    laplace_volume_dictionary,
    residue_at_infinity_with_weight,
)
from recursion import compute_fg, engine_for, f1_log_argument, kernel_h_expansion, loop_equation_check
from recursion.kernel_h import Z1, Z2
from spectral_curve import AddRofX, CurveData, MobiusX, ScaleXY, ScaleY, SwapXY, apply_transform, validate_curve

logger = logging.getLogger(__name__)

SUITE_ORDER = ("kontsevich", "maps", "plancherel", "weil-petersson", "invariants", "diagrams", "kernel")
Outcome = Tuple[Any, Any]


class CheckSkipped(Exception):
    """The check does not apply to its input."""


@dataclass(frozen=True)
class Check:
    id: str
    run: Callable[[Dict[str, Any]], Outcome]


class CheckResult(BaseModel):
    id: str
    status: str
    expected: str
    got: str
    elapsed: Optional[float] = None


class SuiteReport(BaseModel):
    suite: str
    checks: List[CheckResult]
    passed: bool

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


# helpers

def _sym(curve, value: Any) -> sympy.Expr:
    return curve.field.to_sympy(value)


def _density(form, curve, convention: str = "engine") -> sympy.Expr:
    zs = sympy.symbols(f"z1:{form.n + 1}")
    return form.convention(convention).to_expr(curve.branchpoints, zs)


def _same(expected: Any, got: Any) -> bool:
    if isinstance(expected, sympy.Basic) and isinstance(got, sympy.Basic):
        return sympy.cancel(expected - got) == 0
    return str(expected) == str(got)


# kontsevich

Z3 = sympy.Symbol("z3")
KONTSEVICH_SAMPLES = (
    {3: "1/2", 5: "1", 7: "-2", 9: "1/3", 11: "2"},
    {3: "-1", 4: "5", 5: "2/3", 7: "1/5", 9: "-1", 11: "1/7"},
    {3: "3/2", 5: "-1/2", 6: "1", 7: "3", 9: "2", 11: "-1"},
)


def _times(sample: Dict[int, str]) -> Dict[int, sympy.Rational]:
    t = {k: sympy.Rational(v) for k, v in sample.items()}
    return {k: t.get(k, sympy.Integer(0)) for k in (3, 5, 7, 9, 11)}


def printed_kontsevich_w11(t: Dict[int, Any], z: sympy.Symbol) -> sympy.Expr:
    s = 2 - t[3]
    return -(1 / z ** 4 + t[5] / (s * z ** 2)) / (8 * s)


def printed_kontsevich_w21(t: Dict[int, Any], z1: sympy.Symbol, z2: sympy.Symbol) -> sympy.Expr:
    s = 2 - t[3]
    bracket = (s ** 2 * (5 * z1 ** 4 + 5 * z2 ** 4 + 3 * z1 ** 2 * z2 ** 2)
               + 6 * t[5] ** 2 * z1 ** 4 * z2 ** 4
               + s * (6 * t[5] * z1 ** 4 * z2 ** 2 + 6 * t[5] * z1 ** 2 * z2 ** 4 + 5 * t[7] * z1 ** 4 * z2 ** 4))
    return bracket / (8 * s ** 4 * z1 ** 6 * z2 ** 6)


def printed_kontsevich_w12(t: Dict[int, Any], z: sympy.Symbol) -> sympy.Expr:
    s = 2 - t[3]
    bracket = (252 * t[5] ** 4 * z ** 8
               + 12 * t[5] ** 2 * z ** 6 * s * (50 * t[7] * z ** 2 + 21 * t[5])
               + z ** 4 * s ** 2 * (252 * t[5] ** 2 + 348 * t[5] * t[7] * z ** 2 + 145 * t[7] ** 2 * z ** 4
                                    + 308 * t[5] * t[9] * z ** 4)
               + z ** 2 * s ** 3 * (203 * t[5] + 145 * z ** 2 * t[7] + 105 * z ** 4 * t[9] + 105 * z ** 6 * t[11])
               + 105 * s ** 4)
    return -bracket / (128 * s ** 7 * z ** 10)


def printed_kontsevich_f2(t: Dict[int, Any]) -> sympy.Expr:
    s = 2 - t[3]
    return (252 * t[5] ** 3 + 435 * t[5] * t[7] * s + 175 * t[9] * s ** 2) / (1920 * s ** 5)


def _kontsevich_checks() -> List[Check]:
    checks = []

    def airy_w03(config):
        curve = make_airy()
        form = engine_for(curve, config).omega(0, 3)
        return sympy.Rational(1, 2) / (Z1 * Z2 * Z3) ** 2, _density(form, curve)

    def airy_w03_signed(config):
        curve = make_airy()
        form = engine_for(curve, config).omega(0, 3)
        return -sympy.Rational(1, 2) / (Z1 * Z2 * Z3) ** 2, _density(form, curve, "paper9")

    def airy_w11(config):
        curve = make_airy()
        form = engine_for(curve, config).omega(1, 1)
        return 1 / (16 * Z1 ** 4), _density(form, curve)

    def airy_fg(g):
        def run(config):
            curve = make_airy()
            return "0", curve.field.to_str(compute_fg(curve, g, config=config))
        return run

    def airy_f1(config):
        curve = make_airy()
        return "1", curve.field.to_str(f1_log_argument(curve))

    def f1_t3(config):
        curve = make_kontsevich([1])
        return "1/2", curve.field.to_str(f1_log_argument(curve))

    def t3_two(config):
        try:
            make_kontsevich([2])
        except NotRegular as e:
            return NotRegular.code, e.code
        return NotRegular.code, "built"

    def f2_t9(config):
        curve = make_kontsevich({3: 0, 9: 1})
        return sympy.Rational(35, 3072), _sym(curve, compute_fg(curve, 2, config=config))

    checks += [
        Check("kontsevich/airy-omega-0-3", airy_w03),
        Check("kontsevich/airy-omega-0-3-paper9", airy_w03_signed),
        Check("kontsevich/airy-omega-1-1", airy_w11),
        Check("kontsevich/airy-f1-argument", airy_f1),
        Check("kontsevich/f1-argument-t3-half", f1_t3),
        Check("kontsevich/t3-two-not-regular", t3_two),
        Check("kontsevich/f2-t9", f2_t9),
    ]
    checks += [Check(f"kontsevich/airy-f{g}", airy_fg(g)) for g in (2, 3)]

    for i, sample in enumerate(KONTSEVICH_SAMPLES):
        t = _times(sample)

        def w11(config, sample=sample, t=t):
            curve = make_kontsevich(sample)
            form = engine_for(curve, config).omega(1, 1)
            return printed_kontsevich_w11(t, Z1), _density(form, curve, "paper9")

        def w21(config, sample=sample, t=t):
            curve = make_kontsevich(sample)
            form = engine_for(curve, config).omega(1, 2)
            return printed_kontsevich_w21(t, Z1, Z2), _density(form, curve, "paper9")

        def w12(config, sample=sample, t=t):
            curve = make_kontsevich(sample)
            form = engine_for(curve, config).omega(2, 1)
            return printed_kontsevich_w12(t, Z1), _density(form, curve, "paper9")

        def f2(config, sample=sample, t=t):
            curve = make_kontsevich(sample)
            return printed_kontsevich_f2(t), _sym(curve, compute_fg(curve, 2, config=config))

        checks += [
            Check(f"kontsevich/sample{i}-omega-1-1", w11),
            Check(f"kontsevich/sample{i}-omega-1-2", w21),
            Check(f"kontsevich/sample{i}-omega-2-1", w12),
            Check(f"kontsevich/sample{i}-f2", f2),
        ]

    def matched_pair(config):
        pair = witten_kontsevich_pair([1, 2, -3], 7)
        a = compute_fg(pair.kontsevich, 2, config=config)
        b = compute_fg(pair.matched, 2, config=config)
        return _sym(pair.kontsevich, a), _sym(pair.matched, b)

    checks.append(Check("kontsevich/matched-times-f2", matched_pair))
    return checks


# maps

G = sympy.Symbol("gamma")


def _maps_checks() -> List[Check]:
    def planar(config):
        return ["2", "9", "54", "378"], quadrangulation_counts(1, 0, [4], 4, config).counts

    def genus_one(config):
        return ["1", "15", "198"], quadrangulation_counts(1, 1, [4], 3, config).counts

    def annulus(config):
        curve, _ = make_quadrangulation(1)
        form = engine_for(curve, config).omega(0, 2)
        return 36 * G ** 8, _sym(curve, residue_at_infinity_with_weight(form, [4, 4], curve))

    def pants(config):
        curve, _ = make_quadrangulation(1)
        form = engine_for(curve, config).omega(0, 3)
        return 1728 * G ** 10 / (1 - 6 * G ** 2), _sym(curve, residue_at_infinity_with_weight(form, [4, 4, 4], curve))

    def torus_disc(config):
        curve, _ = make_quadrangulation(mode="t-one")
        form = engine_for(curve, config).omega(1, 1)
        return G ** 6 / (G ** 2 - 2) ** 2, _sym(curve, residue_at_infinity_with_weight(form, [4], curve))

    def torus_form(config):
        curve, _ = make_quadrangulation(mode="t-one")
        form = engine_for(curve, config).omega(1, 1)
        z = Z1
        printed = ((-z + 8 * z ** 3 - z ** 5 + G ** 2 * (z - 5 * z ** 3 + z ** 5))
                   / (3 * (G ** 2 - 2) ** 2 * (z ** 2 - 1) ** 4))
        return printed, _density(form, curve)

    def t_one(config):
        curve, t = make_quadrangulation(mode="t-one")
        return "1", curve.field.to_str(t)

    Q = CoeffField("Q")

    def ising_degenerate(config):
        p = ising_parameters(2, 2, 0, 0, 1, Q)
        return sympy.Integer(3), Q.to_sympy(p.t)

    def ising_relation(config):
        t2, tt2, t4, tt4, g = (sympy.Rational(v) for v in ("1/3", "2", "1/5", "-1/7", "1/2"))
        t = Q.to_sympy(ising_parameters(t2, tt2, t4, tt4, g, Q).t)
        det = 1 - 9 * tt4 * t4 * g ** 4
        rhs = 3 * t4 * tt4 * g ** 4 + (t2 - 3 * tt2 * t4 * g ** 2) * (tt2 - 3 * t2 * tt4 * g ** 2) / det ** 2
        return 1 + t / g ** 2, rhs

    def ising_curve(config):
        curve, t = make_ising_quartic(1, 4, 0, 0, 1)
        bps = sorted(curve.field.to_sympy(a) for a in curve.branchpoints)
        return [-2, 2, 3], bps + [curve.field.to_sympy(t)]

    checks = [
        Check("maps/quadrangulation-planar-counts", planar),
        Check("maps/quadrangulation-genus1-counts", genus_one),
        Check("maps/quadrangulation-annulus", annulus),
        Check("maps/quadrangulation-pants", pants),
        Check("maps/quadrangulation-torus-count", torus_disc),
        Check("maps/quadrangulation-torus-form", torus_form),
        Check("maps/quadrangulation-t-one", t_one),
        Check("maps/ising-degenerate-t", ising_degenerate),
        Check("maps/ising-quartic-relation", ising_relation),
        Check("maps/ising-curve", ising_curve),
    ]

    t4, gamma = sympy.Integer(1), sympy.Rational(1, 2)
    for g, n in ((0, 1), (0, 2), (1, 1)):
        def loop(config, g=g, n=n):
            curve, _ = make_quadrangulation(t4, gamma=gamma)
            residual = loop_equation_check(curve, [0, 1, 0, -t4], g, n, config)
            bound = 2 if (g, n) == (0, 1) else 1
            return True, residual.degree <= bound

        checks.append(Check(f"maps/loop-equation-{g}-{n}", loop))

    def loop_disc_value(config):
        curve, t = make_quadrangulation(t4, gamma=gamma)
        residual = loop_equation_check(curve, [0, 1, 0, -t4], 0, 1, config)
        t = curve.field.to_sympy(t)
        t2 = gamma ** 2 * (4 * t - gamma ** 2) / 3
        return [t - t4 * t2, 0, -t4 * t], residual.coefficients

    checks.append(Check("maps/loop-equation-disc-polynomial", loop_disc_value))
    return checks


# plancherel

def _plancherel_checks() -> List[Check]:
    def trivial(g):
        def run(config):
            curve = make_plancherel(0)
            return "0", curve.field.to_str(compute_fg(curve, g, config=config))
        return run

    def t2_half(config):
        curve = make_plancherel(sympy.Rational(1, 2))
        E = sympy.Symbol("E")
        return 1 / (8748 * E ** 2), _sym(curve, compute_fg(curve, 2, config=config))

    def u1_one(config):
        try:
            make_plancherel(1)
        except NotRegular as e:
            return NotRegular.code, e.code
        return NotRegular.code, "built"

    checks = [
        Check("plancherel/trivial-f2", trivial(2)),
        Check("plancherel/trivial-f3", trivial(3)),
        Check("plancherel/t2-half-f2", t2_half),
        Check("plancherel/u1-one-not-regular", u1_one),
    ]
    for p in (0, 1, 2):
        def mirror(config, p=p):
            _, _, report = make_q_plancherel(2, p)
            return "True", str(report.ok)

        checks.append(Check(f"plancherel/q-mirror-p{p}", mirror))
    return checks


# weil-petersson

def _wp_checks() -> List[Check]:
    L1, p = sympy.Symbol("L1"), sympy.Symbol("p")

    def curve_and_form(config):
        curve = make_weil_petersson(3)
        form = engine_for(curve, config).omega(1, 1).convention("paper9")
        return curve, form

    def times(config):
        got = weil_petersson_times(3)
        return [3, -2 * p / 3, 2 * p ** 2 / 15], [got[3], got[5], got[7]]

    def volume(config):
        curve, form = curve_and_form(config)
        return L1 ** 2 / 48 + p / 12, laplace_volume_dictionary(form, curve).as_expr()

    def tau_one(config):
        curve, form = curve_and_form(config)
        return sympy.Rational(1, 24), _sym(curve, intersection_numbers(form, 3, curve.field)[(1,)])

    def kappa(config):
        curve, form = curve_and_form(config)
        tilde = kappa_times(weil_petersson_times(3), 2, curve.field)
        vol = laplace_volume_dictionary(form, curve)
        return [4 * p, 0, sympy.Rational(1, 24)], [_sym(curve, tilde[0]), _sym(curve, tilde[1]),
                                                   _sym(curve, kappa_one(vol, 3, tilde[0], curve.field))]

    return [
        Check("weil-petersson/times", times),
        Check("weil-petersson/volume-1-1", volume),
        Check("weil-petersson/tau-1", tau_one),
        Check("weil-petersson/kappa", kappa),
    ]


# invariants

def _stable_grid(level: int) -> List[Tuple[int, int]]:
    return [(g, n) for g in range(level // 2 + 2) for n in range(1, level + 3)
            if 0 < 2 * g - 2 + n <= level]


def _joukowski():
    """x = z + 1/z, y = z; regular under Mobius maps with c != 0."""
    F = CoeffField("Q")
    x = UniRatFunc.from_coeffs(F, [1, 0, 1], [0, 1])
    return validate_curve(CurveData.rational(x, UniRatFunc.from_coeffs(F, [0, 1])))


def _invariant_curves() -> Dict[str, Callable[[], Any]]:
    return {
        "airy": make_airy,
        "pure-gravity": make_pure_gravity,
        "kontsevich": lambda: make_kontsevich({3: "1/2", 5: "1", 7: "-1/3"}),
        "quadrangulation": lambda: make_quadrangulation(1, gamma="1/2")[0],
        "joukowski": _joukowski,
    }


def _structure(build, level: int) -> Callable[[Dict[str, Any]], Outcome]:
    def run(config):
        curve = build()
        engine = engine_for(curve, config)
        bad = []
        for g, n in _stable_grid(level):
            form = engine.omega(g, n)
            try:
                assert_symmetric(form)
            except TopoRecError:
                bad.append(f"({g},{n}) asymmetric")
            if form.max_pole_order() > 6 * g - 4 + 2 * n:
                bad.append(f"({g},{n}) pole order {form.max_pole_order()}")
            if any(k == 1 for key in form.terms for _, k in key):
                bad.append(f"({g},{n}) simple pole")
        return "[]", str(bad)
    return run


def _dilaton(build, level: int) -> Callable[[Dict[str, Any]], Outcome]:
    def run(config):
        curve = build()
        engine = engine_for(curve, config)
        bad = []
        for g, n in _stable_grid(level - 1):
            reduced = engine.dilaton(engine.omega(g, n + 1))
            expected = engine.omega(g, n).scale(curve.domain.convert(2 - 2 * g - n))
            if reduced != expected:
                bad.append(f"({g},{n})")
        return "[]", str(bad)
    return run


def _homogeneity(build, lam: int, level: int) -> Callable[[Dict[str, Any]], Outcome]:
    def run(config):
        curve = build()
        scaled = apply_transform(curve, ScaleY(lam))
        base, other = engine_for(curve, config), engine_for(scaled, config)
        K = curve.domain
        bad = []
        for g, n in _stable_grid(level):
            factor = K.convert(sympy.Rational(lam) ** (2 - 2 * g - n))
            if other.omega(g, n) != base.omega(g, n).scale(factor):
                bad.append(f"({g},{n})")
        return "[]", str(bad)
    return run


def _transform_invariance(build, label: str, make_t, level: int) -> Callable[[Dict[str, Any]], Outcome]:
    def run(config):
        curve = build()
        try:
            moved = apply_transform(curve, make_t(curve))
        except TopoRecError as e:
            raise CheckSkipped(f"{label} not applicable: {e.code}")
        base, other = engine_for(curve, config), engine_for(moved, config)
        bad = [f"({g},{n})" for g, n in _stable_grid(level) if other.omega(g, n) != base.omega(g, n)]
        if base.fg(2) != other.fg(2):
            bad.append("F2")
        return "[]", str(bad)
    return run


TRANSFORMS: Dict[str, Callable[[Any], Any]] = {
    "add-2x": lambda c: AddRofX(UniRatFunc.from_coeffs(c.field, [0, 2])),
    "add-x2-1": lambda c: AddRofX(UniRatFunc.from_coeffs(c.field, [-1, 0, 1])),
    "mobius-2-1-0-1": lambda c: MobiusX(2, 1, 0, 1),
    "mobius-1-0-1-1": lambda c: MobiusX(1, 0, 1, 1),
    "scale-xy-3": lambda c: ScaleXY(3),
}


def _transform_coverage(config):
    """Every transform must apply to at least one curve."""
    unused = []
    for label, make_t in TRANSFORMS.items():
        applied = False
        for build in _invariant_curves().values():
            curve = build()
            try:
                apply_transform(curve, make_t(curve))
            except TopoRecError:
                continue
            applied = True
            break
        if not applied:
            unused.append(label)
    return "[]", str(unused)


def _invariant_checks(level: int) -> List[Check]:
    checks = []
    for name, build in _invariant_curves().items():
        checks.append(Check(f"invariants/{name}-structure", _structure(build, level)))
        checks.append(Check(f"invariants/{name}-dilaton", _dilaton(build, level)))
        for lam in (3, -1):
            checks.append(Check(f"invariants/{name}-scale-y{lam}", _homogeneity(build, lam, min(level, 3))))
        for label, make_t in TRANSFORMS.items():
            checks.append(Check(f"invariants/{name}-{label}",
                                _transform_invariance(build, label, make_t, min(level, 2))))

    def scale_xy(config):
        curve = make_pure_gravity()
        moved = apply_transform(curve, ScaleXY(3))
        return ([_sym(curve, compute_fg(curve, g, config=config)) for g in (2, 3)],
                [_sym(moved, compute_fg(moved, g, config=config)) for g in (2, 3)])

    def swap(config):
        curve = make_pure_gravity()
        swapped = apply_transform(curve, SwapXY())
        return ([_sym(curve, compute_fg(curve, g, config=config)) for g in (2, 3)],
                [_sym(swapped, compute_fg(swapped, g, config=config)) for g in (2, 3)])

    def rescaling(config):
        F = CoeffField("Q")

        def fg(t, g):
            x = UniRatFunc.from_coeffs(F, [0, 0, 1])
            y = UniRatFunc.from_coeffs(F, [0, -3 * t, 0, 1])
            curve = validate_curve(CurveData.rational(x, y), [0])
            return F.to_sympy(compute_fg(curve, g, config=config))

        return ([sympy.Integer(4) ** (5 * (1 - g)) * fg(1, g) for g in (2, 3)], [fg(4, g) for g in (2, 3)])

    checks += [
        Check("invariants/transform-coverage", _transform_coverage),
        Check("invariants/pure-gravity-swap-f2-f3", swap),
        Check("invariants/pure-gravity-rescaling-f2-f3", rescaling),
        Check("invariants/pure-gravity-scale-xy-f2-f3", scale_xy),
    ]
    return checks


# diagrams

def _diagram_checks() -> List[Check]:
    def count(g, k, rules, expected):
        def run(config):
            return str(expected), str(len(enumerate_graphs(g, k, rules)))
        return run

    def mirror(config):
        return [2, 2, 1], [m for _, m in mirror_classes(enumerate_graphs(2, 0))]

    checks = [
        Check("diagrams/count-0-2", count(0, 2, "strict", 2)),
        Check("diagrams/count-0-3", count(0, 3, "strict", 12)),
        Check("diagrams/count-2-0", count(2, 0, "strict", 5)),
        Check("diagrams/count-2-0-any-side", count(2, 0, "any-side", 13)),
        Check("diagrams/count-2-0-any-edge", count(2, 0, "any-edge", 15)),
        Check("diagrams/mirror-2-0-multiplicities", mirror),
    ]
    curves = {"airy": make_airy, "quadrangulation": lambda: make_quadrangulation(1, gamma="1/2")[0]}
    for name, build in curves.items():
        for g, n in _stable_grid(3):
            def weights(config, build=build, g=g, n=n):
                curve = build()
                total = graphs_weight_sum(curve, enumerate_graphs(g, n - 1), config)
                expected = engine_for(curve, config).omega(g, n)
                return _density(expected, curve), _density(total, curve)

            checks.append(Check(f"diagrams/{name}-weights-{g}-{n}", weights))
    return checks


# kernel

def _kernel_checks() -> List[Check]:
    def triple(build):
        def run(config):
            curve = build()
            form = engine_for(curve, config).omega(0, 3)
            got = integrate_form(form, curve.branchpoints, Z2, Z1) / 6
            x2 = curve.x.derivative().derivative()
            expected = sympy.Integer(0)
            for a in curve.branchpoints:
                yp = _sym(curve, curve.dy.evaluate(a))
                xpp = _sym(curve, x2.evaluate(a))
                av = _sym(curve, a)
                expected += (Z1 - Z2) ** 3 / (6 * yp * xpp * (av - Z1) ** 3 * (av - Z2) ** 3)
            return expected, got
        return run

    def assembled(build):
        def run(config):
            expansion = kernel_h_expansion(build(), 1, config)
            return "1", str(len(expansion.corrections))
        return run

    def airy_correction(config):
        expansion = kernel_h_expansion(make_airy(), 1, config)
        expected = (sympy.Rational(1, 48) * (1 / Z2 ** 3 - 1 / Z1 ** 3)
                    + sympy.Rational(1, 12) * (Z1 - Z2) ** 3 / (Z1 ** 3 * Z2 ** 3))
        return expected, expansion.corrections[0]

    return [
        Check("kernel/airy-triple-integral", triple(make_airy)),
        Check("kernel/pure-gravity-triple-integral", triple(make_pure_gravity)),
        Check("kernel/airy-correction", airy_correction),
        Check("kernel/pure-gravity-assembled", assembled(make_pure_gravity)),
    ]


def suite_checks(name: str, config: Optional[Dict[str, Any]] = None) -> List[Check]:
    """Checks of one suite; ``all`` concatenates every suite."""
    config = config or {}
    builders: Dict[str, Callable[[], List[Check]]] = {
        "kontsevich": _kontsevich_checks,
        "maps": _maps_checks,
        "plancherel": _plancherel_checks,
        "weil-petersson": _wp_checks,
        "invariants": lambda: _invariant_checks(int(config.get("invariant_level", 4))),
        "diagrams": _diagram_checks,
        "kernel": _kernel_checks,
    }
    if name == "all":
        return [c for suite in SUITE_ORDER for c in builders[suite]()]
    if name not in builders:
        raise UnknownSuite(f"unknown suite {name!r}", {"known": ", ".join(SUITE_ORDER + ("all",))})
    return builders[name]()


# runner

def _run_one(check: Check, config: Dict[str, Any], timings: bool) -> CheckResult:
    start = time.perf_counter()
    expected, got, status = "", "", "fail"
    try:
        expected, got = check.run(config)
        status = "pass" if _same(expected, got) else "fail"
    except CheckSkipped as e:
        status, got = "skip", str(e)
    except TopoRecError as e:
        got = f"{e.code}: {e.message}"
    except Exception as e:
        got = f"{type(e).__name__}: {e}"
    elapsed = round(time.perf_counter() - start, 3) if timings else None
    logger.debug(f"{check.id}: {status}")
    return CheckResult(id=check.id, status=status, expected=str(expected), got=str(got), elapsed=elapsed)


async def run_checks(checks: Sequence[Check], config: Dict[str, Any], jobs: int = 1,
                     timings: bool = False) -> List[CheckResult]:
    semaphore = asyncio.Semaphore(max(1, jobs))

    async def one(check: Check) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(_run_one, check, config, timings)

    results = await asyncio.gather(*(one(c) for c in checks))
    return sorted(results, key=lambda r: r.id)


def run_suite(name: str, config: Optional[Dict[str, Any]] = None, jobs: Optional[int] = None,
              timings: Optional[bool] = None) -> SuiteReport:
    """
    Run a suite to completion.

    Args:
        name: suite name or "all"
        config: settings (window, jobs, timings, invariant_level)
        jobs: parallel checks; overrides config
        timings: record elapsed seconds; overrides config

    Returns:
        SuiteReport, passed when no check failed
    """
    config = dict(config or {})
    checks = suite_checks(name, config)
    jobs = int(jobs if jobs is not None else config.get("jobs", 1))
    timings = bool(timings if timings is not None else config.get("timings", False))
    results = asyncio.run(run_checks(checks, config, jobs, timings))
    report = SuiteReport(suite=name, checks=results, passed=all(r.status != "fail" for r in results))
    failed = sum(r.status == "fail" for r in results)
    logger.info(f"Suite {name} finished: {len(results) - failed}/{len(results)} without failure")
    return report
