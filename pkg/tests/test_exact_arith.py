from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from exact_arith import (
    CoeffField,
    FieldElem,
    LaurentSeries,
    UniRatFunc,
    field_arith,
    format_rational,
    laurent_expand,
    laurent_expand_at_infinity,
    parse_rational,
    poly_roots_in_field,
    ratfunc_compose_series,
    ratfunc_eval,
    series_reversion,
    series_substitute_even,
)
from exact_arith.errors import (
    DivisionByZero,
    FieldMismatch,
    OddParity,
    PoleAtPoint,
    ResiduePresent,
    WindowExceeded,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


class TestFields:
    def test_parse_and_format(self):
        assert format_rational(parse_rational("6/-4")) == "-3/2"
        assert format_rational(parse_rational(Fraction(10, 4))) == "5/2"
        assert format_rational(parse_rational(7)) == "7/1"

    def test_rational_function_field(self):
        F = CoeffField("Qu", "gamma")
        g = F.gen()
        v = F.div(g * g, g + F.one)
        assert F.to_json(v) == {"num": ["0/1", "0/1", "1/1"], "den": ["1/1", "1/1"]}
        assert F.convert(F.to_json(v)) == v
        assert F.convert("gamma**2/(gamma + 1)") == v

    def test_polynomial_field_keeps_p_formal(self):
        F = CoeffField("Qp", "p")
        v = F.convert("2*p**2/15 - 1")
        assert F.to_json(v) == ["-1/1", "0/1", "2/15"]

    def test_polynomial_field_rejects_inverse_of_parameter(self):
        F = CoeffField("Qp", "p")
        with pytest.raises(FieldMismatch):
            F.inverse(F.gen())

    def test_division_by_zero(self, Q):
        with pytest.raises(DivisionByZero):
            Q.div(Q.one, Q.zero)

    def test_unknown_tag(self):
        with pytest.raises(FieldMismatch):
            CoeffField("R")

    def test_mixing_fields(self):
        a = FieldElem.of(CoeffField("Q"), 1)
        b = FieldElem.of(CoeffField("Qu", "u"), 1)
        with pytest.raises(FieldMismatch):
            a + b

    def test_booleans_are_rejected(self, Q):
        with pytest.raises(FieldMismatch):
            Q.convert(True)

    @given(rationals, rationals, rationals)
    def test_field_axioms(self, a, b, c):
        F = CoeffField("Q")
        x, y, w = (FieldElem.of(F, v) for v in (a, b, c))
        assert x + y == y + x
        assert (x * y) * w == x * (y * w)
        assert x * (y + w) == x * y + x * w
        assert str(x - x) == "0"
        if b:
            assert field_arith(field_arith(x, y, "div"), y, "mul") == x

    @given(rationals, rationals)
    def test_rational_function_field_arithmetic(self, a, b):
        assume(b != 0)
        F = CoeffField("Qu", "u")
        u = F.gen()
        num = u * F.convert(a) + F.one
        den = u * u + F.convert(b)
        q = F.div(num, den)
        assert q * den == num
        assert F.convert(F.to_json(q)) == q


class TestSeries:
    def test_exact_inverse_of_monomial(self, Q):
        s = LaurentSeries.monomial(Q.domain, 2, Q.convert(4))
        inv = s.inverse()
        assert inv.is_exact
        assert inv.low == -2
        assert inv.coefficient(-2) == Q.convert(Fraction(1, 4))

    def test_inverse_needs_order_for_exact_polynomials(self, Q):
        K = Q.domain
        one_minus_s = LaurentSeries(K, 0, [K.one, -K.one])
        with pytest.raises(ValueError):
            one_minus_s.inverse()
        geometric = one_minus_s.inverse(5)
        assert [geometric.coefficient(e) for e in range(6)] == [K.one] * 6
        with pytest.raises(WindowExceeded):
            geometric.coefficient(6)

    def test_window_propagates_through_products(self, Q):
        K = Q.domain
        a = LaurentSeries(K, -2, [K.one, K.one, K.one], valid=3)
        b = LaurentSeries(K, 1, [K.one], valid=4)
        assert a.mul(b).valid == 2
        assert (a + b).valid == 3

    def test_power_of_series_with_pole_keeps_requested_window(self, Q):
        K = Q.domain
        # 1/s + s, as x = z + 1/z reads at z = infinity
        x = LaurentSeries(K, -1, [K.one, K.zero, K.one], valid=10)
        p = x.power(4, 1)
        assert p.valid == 1
        assert [K.to_sympy(p.coefficient(e)) for e in range(-4, 2)] == [1, 0, 4, 0, 6, 0]

    def test_integrate_rejects_residue(self, Q):
        K = Q.domain
        with pytest.raises(ResiduePresent):
            LaurentSeries.monomial(K, -1).integrate()

    def test_reversion_quadrangulation(self, Q):
        K = Q.domain
        # t = G - 3 G^2 at t4 = 1
        g = series_reversion(K, [K.one, K.convert(-3)], 4)
        assert [K.to_sympy(g.coefficient(e)) for e in range(1, 5)] == [1, 3, 18, 135]

    def test_reversion_needs_linear_term(self, Q):
        K = Q.domain
        with pytest.raises(DivisionByZero):
            series_reversion(K, [K.zero, K.one], 3)

    def test_substitute_even_recovers_t(self, Q):
        K = Q.domain
        gamma_sq = series_reversion(K, [K.one, K.convert(-3)], 4)
        F = CoeffField("Qu", "gamma")
        t = series_substitute_even(F.convert("gamma**2 - 3*gamma**4"), F, gamma_sq, 4)
        assert [K.to_sympy(t.coefficient(e)) for e in range(5)] == [0, 1, 0, 0, 0]

    def test_substitute_even_with_denominator(self, Q):
        K = Q.domain
        gamma_sq = series_reversion(K, [K.one, K.convert(-3)], 3)
        F = CoeffField("Qu", "gamma")
        # 1/(1 - gamma^2) = 1 + G + G^2 + G^3 with G = t + 3t^2 + 18t^3
        s = series_substitute_even(F.convert("1/(1 - gamma**2)"), F, gamma_sq, 3)
        assert [K.to_sympy(s.coefficient(e)) for e in range(4)] == [1, 1, 4, 25]

    def test_substitute_rejects_odd(self, Q):
        F = CoeffField("Qu", "gamma")
        gamma_sq = series_reversion(Q.domain, [Q.domain.one], 3)
        with pytest.raises(OddParity):
            series_substitute_even(F.gen(), F, gamma_sq, 3)

    @given(st.lists(rationals, min_size=2, max_size=5))
    def test_reversion_inverts(self, cs):
        assume(cs[0] != 0)
        K = CoeffField("Q").domain
        relation = [K.convert(c.numerator) / K.convert(c.denominator) for c in cs]
        order = 5
        g = series_reversion(K, relation, order)
        back = LaurentSeries.zero(K)
        power = LaurentSeries.constant(K, K.one)
        for c in relation:
            power = power.mul(g, order)
            back = back + power.scale(c)
        t = LaurentSeries.monomial(K, 1)
        assert (back - t).truncate(order).is_zero


class TestRatFunc:
    def test_from_expr_and_coeffs_agree(self, Q):
        a = UniRatFunc.from_expr(Q, "(z**2 - 1)/(2*z)")
        b = UniRatFunc.from_coeffs(Q, [-1, 0, 1], [0, 2])
        assert a == b
        assert a.evaluate(Q.convert(2)) == Q.convert(Fraction(3, 4))

    def test_pole_at_point(self, Q):
        f = UniRatFunc.from_expr(Q, "1/(z - 1)")
        with pytest.raises(PoleAtPoint):
            f.evaluate(Q.one)
        assert f.pole_order_at(Q.one) == 1

    def test_ratfunc_eval(self, Q):
        f = UniRatFunc.from_expr(Q, "1/(z - 1)")
        assert ratfunc_eval(f, Q.convert(3)) == Q.convert(Fraction(1, 2))
        with pytest.raises(PoleAtPoint):
            ratfunc_eval(f, Q.one)

    def test_laurent_expand(self, Q):
        f = UniRatFunc.from_expr(Q, "1/(z**2*(1 - z))")
        s = laurent_expand(f, Q.zero, 2)
        assert s.low == -2
        assert [s.coefficient(e) for e in range(-2, 3)] == [Q.one] * 5

    def test_expand_at_infinity(self, Q):
        f = UniRatFunc.from_expr(Q, "z + 1/z")
        s = laurent_expand_at_infinity(f, 3)
        assert s.low == -1
        assert s.coefficient(1) == Q.one

    def test_compose_series(self, Q):
        K = Q.domain
        f = UniRatFunc.from_expr(Q, "z**2")
        inner = LaurentSeries(K, 1, [K.one, K.one])
        out = ratfunc_compose_series(f, Q.one, inner, 3)
        # (1 + s + s^2)^2
        assert [K.to_sympy(out.coefficient(e)) for e in range(4)] == [1, 2, 3, 2]

    @given(rationals, rationals)
    def test_derivative_product_rule(self, a, b):
        Q = CoeffField("Q")
        f = UniRatFunc.from_coeffs(Q, [a, 1], [1, 0, 1])
        g = UniRatFunc.from_coeffs(Q, [1, b, 1])
        assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


class TestRoots:
    def test_rational_roots_with_multiplicity(self, Q):
        # (z - 1)^2 (z + 1/2) (z^2 + 1)
        z = sympy.Symbol("z")
        poly = sympy.Poly(sympy.expand((z - 1) ** 2 * (z + sympy.Rational(1, 2)) * (z ** 2 + 1)), z)
        coeffs = [Q.convert(c) for c in reversed(poly.all_coeffs())]
        report = poly_roots_in_field(coeffs, Q)
        assert sorted((Q.to_sympy(r), m) for r, m in report.roots) == [(sympy.Rational(-1, 2), 1), (1, 2)]
        assert report.remainder_degree == 2

    def test_roots_in_parameter_field(self):
        F = CoeffField("Qu", "u")
        u = F.gen()
        # z^2 - u^2
        report = poly_roots_in_field([-(u * u), F.zero, F.one], F)
        assert sorted(F.to_str(r) for r, _ in report.roots) == ["-u", "u"]
