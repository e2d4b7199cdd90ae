"""
Plancherel curves and the q-deformed mirror pair.

The Plancherel curve has logarithmic y and is handled by the engine as a
log-type curve. The q-Plancherel pair is not run through the recursion;
it ships with exact checks of its symplectic equivalence in the algebra of
rational functions plus logarithms.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import sympy
from pydantic import BaseModel, Field

from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import IdentityFailed
from spectral_curve import CurveData, LogTerm, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")
MINUS_ONE = sympy.Integer(-1)


def make_plancherel(u1: Any) -> SpectralCurve:
    """
    Plancherel curve x = E (z + 1/z - u1), y = ln z + u1/2 (z - 1/z).

    E is formal and stands for e^{-u0} with u0 = -u1^2/2. The constant shift
    of x from the partition sum is dropped.

    Raises:
        NotRegular: when dy vanishes at z = +-1 (u1 = +-1)
    """
    F = CoeffField("Qu", "E")
    u1 = F.convert(u1)
    E = F.gen()
    half = F.div(u1, F.convert(2))
    x = UniRatFunc.from_coeffs(F, [E, -E * u1, E], [0, 1])
    dy = UniRatFunc.from_coeffs(F, [half, 1, half], [0, 0, 1])
    logs = [LogTerm(F.one, UniRatFunc.identity(F))]
    u0 = F.div(-u1 * u1, F.convert(2))
    meta = {"u1": F.to_str(u1), "u0": F.to_str(u0), "E": "exp(-u0)"}
    curve = validate_curve(CurveData.log_type(x, dy, logs, meta), [1, -1])
    logger.info(f"Plancherel curve: u1 = {F.to_str(u1)}, u0 = {F.to_str(u0)}")
    return curve


# rational functions plus logarithms

def _log_atoms(arg: sympy.Expr) -> Dict[sympy.Expr, sympy.Rational]:
    """ln(arg) as a sum of logs of primes, -1 and irreducible primitive polynomials in z."""
    arg = sympy.cancel(sympy.together(arg))
    if arg == 0:
        raise ValueError("logarithm of zero")
    num, den = sympy.fraction(arg)
    c_num, f_num = sympy.factor_list(num, Z)
    c_den, f_den = sympy.factor_list(den, Z)
    const = c_num / c_den
    factors = list(f_num) + [(f, -m) for f, m in f_den]
    atoms: Dict[sympy.Expr, sympy.Rational] = {}

    def add(atom: sympy.Expr, coeff) -> None:
        atoms[atom] = atoms.get(atom, 0) + sympy.Rational(coeff)

    for f, mult in factors:
        if sympy.Poly(f, Z).LC() < 0:
            f = -f
            const = const * (-1) ** mult
        add(f, mult)
    const = sympy.Rational(const)
    if const < 0:
        add(MINUS_ONE, 1)
        const = -const
    for prime, e in sympy.factorint(const.p).items():
        add(sympy.Integer(prime), e)
    for prime, e in sympy.factorint(const.q).items():
        add(sympy.Integer(prime), -e)
    return {a: c for a, c in atoms.items() if c != 0}


@dataclass(frozen=True)
class LogExpr:
    """r(z) + sum c_i ln(a_i) with canonical atoms a_i."""

    rational: sympy.Expr = sympy.Integer(0)
    logs: Tuple[Tuple[sympy.Expr, sympy.Rational], ...] = ()

    @classmethod
    def of_rational(cls, r: Any) -> "LogExpr":
        return cls(sympy.cancel(sympy.sympify(r)), ())

    @classmethod
    def log(cls, arg: Any, coeff: Any = 1) -> "LogExpr":
        c = sympy.Rational(coeff)
        return cls(sympy.Integer(0), _sorted({a: c * m for a, m in _log_atoms(sympy.sympify(arg)).items()}))

    def _terms(self) -> Dict[sympy.Expr, sympy.Rational]:
        return dict(self.logs)

    def __add__(self, other: "LogExpr") -> "LogExpr":
        terms = self._terms()
        for a, c in other.logs:
            terms[a] = terms.get(a, 0) + c
        return LogExpr(sympy.cancel(self.rational + other.rational), _sorted(terms))

    def __neg__(self) -> "LogExpr":
        return self.scale(-1)

    def __sub__(self, other: "LogExpr") -> "LogExpr":
        return self + (-other)

    def scale(self, c: Any) -> "LogExpr":
        c = sympy.Rational(c)
        return LogExpr(sympy.cancel(c * self.rational), _sorted({a: c * m for a, m in self.logs}))

    @property
    def is_zero(self) -> bool:
        return sympy.cancel(self.rational) == 0 and not self.logs

    @property
    def has_logs(self) -> bool:
        return bool(self.logs)

    def without_constants(self) -> "LogExpr":
        """Drop the z-independent part: constant atoms such as ln(-1) or ln(2) and a constant r."""
        rational = self.rational if self.rational.has(Z) else sympy.Integer(0)
        return LogExpr(rational, tuple((a, c) for a, c in self.logs if a.has(Z)))

    def derivative(self) -> sympy.Expr:
        """d/dz as a rational function."""
        total = sympy.diff(self.rational, Z)
        for a, c in self.logs:
            total += c * sympy.diff(a, Z) / a
        return sympy.cancel(total)

    def to_expr(self) -> sympy.Expr:
        return self.rational + sum((c * sympy.log(a) for a, c in self.logs), sympy.Integer(0))

    def __str__(self) -> str:
        return str(self.to_expr())


def _sorted(terms: Dict[sympy.Expr, Any]) -> Tuple[Tuple[sympy.Expr, sympy.Rational], ...]:
    kept = [(a, sympy.Rational(c)) for a, c in terms.items() if c != 0]
    return tuple(sorted(kept, key=lambda item: sympy.default_sort_key(item[0])))


@dataclass
class LogCurve:
    """
    A curve whose x and y live in the rational-plus-log algebra.

    y is ``y_prefactor`` times the LogExpr ``y``.
    """

    name: str
    x: LogExpr
    y: LogExpr
    y_prefactor: sympy.Expr = sympy.Integer(1)
    meta: Dict[str, str] = field(default_factory=dict)

    def x_times_y(self) -> LogExpr:
        """x y as a LogExpr; needs a rational x whose product with the prefactor is constant."""
        if self.x.has_logs:
            raise IdentityFailed(f"x of {self.name} is not rational")
        c = sympy.cancel(self.x.rational * self.y_prefactor)
        if c.has(Z):
            raise IdentityFailed(f"x * y of {self.name} is not in the log algebra", {"factor": str(c)})
        return self.y.scale(c)

    def describe(self) -> Dict[str, Any]:
        doc = {"name": self.name, "x": str(self.x), "y": str(self.y_prefactor * self.y.to_expr())}
        if self.meta:
            doc["derived"] = dict(self.meta)
        return doc


class IdentityReport(BaseModel):
    """Outcome of the exact checks relating the two forms of a curve."""

    ok: bool
    checks: Dict[str, bool] = Field(default_factory=dict)
    details: Dict[str, str] = Field(default_factory=dict)


def _check(report: IdentityReport, name: str, lhs: Any, rhs: Any, up_to_constants: bool = False) -> None:
    if isinstance(lhs, LogExpr):
        diff = lhs - rhs
        if up_to_constants:
            diff = diff.without_constants()
        ok = diff.is_zero
    else:
        diff = sympy.cancel(lhs - rhs)
        ok = diff == 0
    report.checks[name] = ok
    if not ok:
        report.details[name] = f"difference {diff}"


def make_q_plancherel(z0: Any, p: int) -> Tuple[LogCurve, LogCurve, IdentityReport]:
    """
    The q-Plancherel curve and its mirror form.

        x = (1 - z/z0)(1 - 1/(z z0)) / (1 + 1/z0)^2
        y = (1/x) (-ln z + p/2 ln((1 - z/z0) / (1 - 1/(z z0))))

        x~ = ln((1 - z/z0)(1 - 1/(z z0)))
        y~ = ln((1/z) ((1 - z/z0) / (1 - 1/(z z0)))^(p/2))

    Args:
        z0: rational, not 0 or +-1
        p: integer exponent

    Returns:
        (curve, mirror, report); the report checks e^{x~} = c x with
        c = (1 + 1/z0)^2, x y = y~ and dx~ = dx / x

    Raises:
        IdentityFailed: when a check does not hold
    """
    z0 = sympy.Rational(z0)
    if z0 in (0, 1, -1):
        raise ValueError(f"z0 must avoid 0 and +-1, got {z0}")
    if int(p) != p:
        raise ValueError(f"p must be an integer, got {p}")
    p = int(p)
    half_p = sympy.Rational(p, 2)
    A = 1 - Z / z0
    B = 1 - 1 / (Z * z0)
    c = (1 + 1 / z0) ** 2
    x_expr = sympy.cancel(A * B / c)

    y_logs = LogExpr.log(Z, -1) + LogExpr.log(A, half_p) - LogExpr.log(B, half_p)
    exp_minus_t = z0 ** -2 * (1 - z0 ** -2) ** (p * (p - 2))
    meta = {"z0": str(z0), "p": str(p), "c": str(c), "exp(-t)": str(exp_minus_t)}
    curve = LogCurve("q-plancherel", LogExpr.of_rational(x_expr), y_logs, sympy.cancel(1 / x_expr), meta)

    x_tilde = LogExpr.log(A * B)
    # ln(z^-1 R^(p/2)) = 1/2 ln(z^-2 R^p) keeps the argument rational for odd p
    y_tilde = LogExpr.log(Z ** -2 * (A / B) ** p, sympy.Rational(1, 2))
    mirror = LogCurve("q-plancherel-mirror", x_tilde, y_tilde, sympy.Integer(1), dict(meta))

    report = IdentityReport(ok=True)
    _check(report, "exp_x_tilde", x_tilde, LogExpr.log(c * x_expr))
    # y is fixed up to an additive constant
    _check(report, "x_times_y", curve.x_times_y(), y_tilde, up_to_constants=True)
    _check(report, "dlog_x", x_tilde.derivative(), sympy.diff(x_expr, Z) / x_expr)
    report.ok = all(report.checks.values())
    if not report.ok:
        raise IdentityFailed("q-Plancherel mirror identities failed", report.details)
    logger.info(f"q-Plancherel pair at z0 = {z0}, p = {p}: {len(report.checks)} identities hold")
    return curve, mirror, report

