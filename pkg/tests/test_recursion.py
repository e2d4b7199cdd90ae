from fractions import Fraction

import pytest
import sympy
from sympy import QQ

from catalog import make_kontsevich, make_quadrangulation
from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import MultiBranchpoint, NotNormalized, ResidualNotPolynomial, TopoRecError
from forms import PoleForm, UnstableForm, integrate_form
from recursion import (
    Engine,
    compute_fg,
    compute_omega,
    dilaton_reduce,
    engine_for,
    f1_log_argument,
    kernel_h_expansion,
    loop_equation_check,
    one_cut_parameters,
    tau_b_derivative,
    wn_function,
)
from recursion.kernel_h import Z1, Z2
from spectral_curve import CurveData, validate_curve


def q(v):
    return CoeffField("Q").convert(Fraction(v))


class TestAiry:
    def test_low_correlators(self, airy):
        assert compute_omega(airy, 0, 3).terms == {((0, 2), (0, 2), (0, 2)): q("1/2")}
        assert compute_omega(airy, 1, 1).terms == {((0, 4),): q("1/16")}

    def test_unstable_markers(self, airy):
        assert compute_omega(airy, 0, 1) == UnstableForm("one-zero", airy)
        assert compute_omega(airy, 0, 2).kind == "bergman"

    def test_four_point_function(self, airy):
        w4 = compute_omega(airy, 0, 4)
        assert w4.is_symmetric_exhaustive()
        assert w4.max_pole_order() == 4
        # one z^-4 slot with the rest at z^-2, coefficient 3/4 per slot
        assert w4.terms[((0, 4), (0, 2), (0, 2), (0, 2))] == q("3/4")

    def test_dilaton_uses_primitive_of_omega_one_zero(self, airy):
        # Phi = -2 z^3 / 3; only the z^-4 last slot of omega_4 survives
        reduced = dilaton_reduce(airy, compute_omega(airy, 0, 4))
        assert reduced.terms == {((0, 2), (0, 2), (0, 2)): q("-1/2")}
        reduced = dilaton_reduce(airy, compute_omega(airy, 1, 2))
        assert reduced == compute_omega(airy, 1, 1).scale(q(-1))

    def test_free_energies_vanish(self, airy):
        assert compute_fg(airy, 2) == airy.domain.zero
        assert compute_fg(airy, 3) == airy.domain.zero

    def test_fg_needs_genus_two(self, airy):
        with pytest.raises(ValueError):
            compute_fg(airy, 1)

    def test_bad_indices(self, airy):
        with pytest.raises(ValueError):
            compute_omega(airy, -1, 2)
        with pytest.raises(ValueError):
            compute_omega(airy, 1, 0)


class TestKontsevich:
    def test_one_loop_with_times(self):
        t5 = Fraction(1)
        curve = make_kontsevich({3: Fraction(1, 2), 5: t5})
        s = 2 - Fraction(1, 2)
        z = sympy.Symbol("z1")
        got = compute_omega(curve, 1, 1).convention("paper9").to_expr(curve.branchpoints)
        expected = -(1 / z ** 4 + sympy.Rational(t5) / (sympy.Rational(s) * z ** 2)) / (8 * sympy.Rational(s))
        assert sympy.cancel(got - expected) == 0

    def test_f2_at_t9(self):
        curve = make_kontsevich({3: 0, 9: 1})
        assert compute_fg(curve, 2) == q("35/3072")

    def test_f1_argument(self):
        assert f1_log_argument(make_kontsevich([1])) == q("1/2")


class TestEngine:
    def test_engine_is_shared_per_curve(self, airy):
        assert engine_for(airy) is engine_for(airy)
        assert engine_for(airy) is not engine_for(make_kontsevich([]))

    def test_table_is_memoized(self, pure_gravity):
        engine = Engine(pure_gravity)
        first = engine.omega(1, 2)
        assert engine.omega(1, 2) is first
        assert (0, 3) in engine.table

    def test_window_margin(self, airy, config):
        config["window_margin"] = 3
        assert Engine(airy, config).window(1, 1) == 17

    @pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (1, 2), (0, 4)])
    def test_dilaton_equation(self, pure_gravity, g, n):
        bigger = compute_omega(pure_gravity, g, n + 1)
        reduced = dilaton_reduce(pure_gravity, bigger)
        expected = compute_omega(pure_gravity, g, n).scale(pure_gravity.domain.convert(2 - 2 * g - n))
        assert reduced == expected

    def test_correlators_are_symmetric(self, quadrangulation):
        for g, n in [(0, 3), (0, 4), (1, 2)]:
            assert compute_omega(quadrangulation, g, n).is_symmetric_exhaustive()

    def test_f1_needs_one_branchpoint(self, quadrangulation):
        with pytest.raises(MultiBranchpoint):
            f1_log_argument(quadrangulation)

    def test_f1_needs_normalized_x(self, Q):
        data = CurveData.rational(UniRatFunc.from_expr(Q, "2*z**2"), UniRatFunc.from_expr(Q, "z"))
        with pytest.raises(NotNormalized):
            f1_log_argument(validate_curve(data))

    def test_tau_b_derivative(self, airy, quadrangulation):
        assert tau_b_derivative(airy, 0) == airy.domain.zero
        F = quadrangulation.field
        values = {F.to_sympy(a): F.to_sympy(tau_b_derivative(quadrangulation, i))
                  for i, a in enumerate(quadrangulation.branchpoints)}
        assert values == {1: sympy.Rational(1, 8), -1: sympy.Rational(-1, 8)}


class TestLoopEquations:
    def test_one_cut_parameters(self, quadrangulation, Q):
        alpha, gamma = one_cut_parameters(quadrangulation)
        assert (alpha, gamma) == (Q.zero, q("1/2"))

    def test_not_one_cut(self, airy):
        with pytest.raises(TopoRecError):
            one_cut_parameters(airy)

    def test_disc_polynomial(self):
        curve, t = make_quadrangulation(1, gamma="1/2")
        assert curve.field.to_sympy(t) == sympy.Rational(1, 16)
        residual = loop_equation_check(curve, [0, 1, 0, -1], 0, 1)
        # T_2 = gamma^2 (4t - gamma^2)/3 vanishes at gamma = 1/2
        assert residual.coefficients == [sympy.Rational(1, 16), 0, sympy.Rational(-1, 16)]

    @pytest.mark.parametrize("g,n", [(0, 2), (1, 1), (0, 3)])
    def test_higher_residuals_are_linear(self, quadrangulation, g, n):
        residual = loop_equation_check(quadrangulation, [0, 1, 0, -1], g, n)
        assert residual.degree <= 1

    def test_wrong_potential_fails(self, quadrangulation):
        with pytest.raises(ResidualNotPolynomial):
            loop_equation_check(quadrangulation, [0, 1, 0, -2], 0, 1)

    def test_wn_function(self, airy):
        z = sympy.Symbol("z")
        w11 = compute_omega(airy, 1, 1)
        flat_value = wn_function(w11, [z], airy)
        assert sympy.cancel(flat_value.as_expr() - 1 / (32 * z ** 5)) == 0
        assert QQ.to_sympy(wn_function(w11, [2], airy)) == sympy.Rational(1, 1024)
        with pytest.raises(ValueError):
            wn_function(w11, [z, z], airy)


class TestKernel:
    def test_airy_correction(self, airy):
        expansion = kernel_h_expansion(airy, 1)
        expected = (1 / Z2 ** 3 - 1 / Z1 ** 3) / 48 + (Z1 - Z2) ** 3 / (12 * Z1 ** 3 * Z2 ** 3)
        assert sympy.cancel(expansion.corrections[0] - expected) == 0

    def test_leading_order_only(self, airy):
        expansion = kernel_h_expansion(airy, 0)
        assert expansion.corrections == []
        N = sympy.Symbol("N")
        assert sympy.expand(expansion.prefactor + N * (2 * Z1 ** 3 / 3 - 2 * Z2 ** 3 / 3)) == 0
        assert expansion.to_dict()["prime_form"] == "(z1 - z2)/sqrt(dz1*dz2)"

    def test_order_is_limited(self, airy):
        with pytest.raises(ValueError):
            kernel_h_expansion(airy, 2)

    def test_three_point_term_for_pure_gravity(self, pure_gravity):
        w3 = compute_omega(pure_gravity, 0, 3)
        assert isinstance(w3, PoleForm)
        bd = pure_gravity.branch(0, 4)
        a = pure_gravity.field.to_sympy(pure_gravity.branchpoints[0])
        scale = 6 * pure_gravity.field.to_sympy(bd.y_linear) * 2 * pure_gravity.field.to_sympy(bd.xpp_half)
        expected = (Z1 - Z2) ** 3 / (scale * (a - Z1) ** 3 * (a - Z2) ** 3)
        one_loop = integrate_form(compute_omega(pure_gravity, 1, 1), pure_gravity.branchpoints, Z2, Z1)
        total = kernel_h_expansion(pure_gravity, 1).corrections[0]
        assert sympy.cancel(total - expected - one_loop) == 0
