from fractions import Fraction

import pytest
import sympy

from catalog import make_quadrangulation, make_weil_petersson, quadrangulation_counts, weil_petersson_times
from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import NonQuadraticX, PoleAtPoint, ResiduePresent, TopoRecError
from forms import (
    PoleForm,
    assert_symmetric,
    forms_sum,
    integrate_form,
    intersection_numbers,
    kappa_one,
    kappa_times,
    laplace_volume_dictionary,
    poleform_from_ratfunc,
    poleform_local_expand,
    poleform_to_ratfunc,
    primitive_between,
    residue_at_infinity_with_weight,
)
from recursion import compute_omega


def q(v):
    return CoeffField("Q").convert(Fraction(v))


class TestPoleForm:
    def test_json_round_trip_keeps_parameter(self):
        F = CoeffField("Qu", "gamma")
        g = F.gen()
        form = PoleForm(F, 1, {((0, 2), (1, 4)): F.div(F.one, g + F.one), ((1, 4), (0, 2)): g})
        again = PoleForm.from_doc(form.to_json())
        assert again == form
        assert again.field == F

    def test_equality_reorders_slots(self, Q):
        a = PoleForm(Q, 0, {((0, 2), (1, 4)): q(1)}, ("u", "v"))
        b = PoleForm(Q, 0, {((1, 4), (0, 2)): q(1)}, ("v", "u"))
        assert a == b
        assert a != PoleForm(Q, 0, {((1, 4), (0, 2)): q(1)}, ("u", "v"))

    def test_zero_terms_are_dropped(self, Q):
        form = PoleForm(Q, 0, {((0, 2),): Q.zero, ((0, 4),): q(3)})
        assert len(form) == 1
        assert (form - form).is_zero

    def test_tensor_and_sum(self, Q):
        a = PoleForm(Q, 0, {((0, 2),): q(2)}, ("a",))
        b = PoleForm(Q, 1, {((0, 4),): q(3)}, ("b",))
        t = a.tensor(b)
        assert t.g == 1
        assert t.terms == {((0, 2), (0, 4)): q(6)}
        with pytest.raises(ValueError):
            a.tensor(a)
        assert forms_sum([a, a, a]) == a.scale(q(3))
        assert forms_sum([]) is None

    def test_convention_sign(self, airy):
        w3 = compute_omega(airy, 0, 3)
        assert w3.terms == {((0, 2), (0, 2), (0, 2)): q("1/2")}
        assert w3.convention("paper9") == w3.scale(q(-1))
        assert compute_omega(airy, 1, 1).convention("paper9") == compute_omega(airy, 1, 1).scale(q(-1))
        with pytest.raises(ValueError):
            w3.convention("other")

    def test_symmetry_detection(self, Q):
        lopsided = PoleForm(Q, 0, {((0, 2), (0, 4)): q(1)})
        assert not lopsided.is_symmetric()
        with pytest.raises(TopoRecError):
            assert_symmetric(lopsided)
        balanced = lopsided + lopsided.reorder((1, 0)).relabel((0, 1))
        assert_symmetric(balanced)

    def test_to_expr(self, airy):
        z1, z2, z3 = sympy.symbols("z1:4")
        expr = compute_omega(airy, 0, 3).to_expr(airy.branchpoints)
        assert sympy.cancel(expr - 1 / (2 * z1 ** 2 * z2 ** 2 * z3 ** 2)) == 0


class TestRatFuncConversion:
    def test_partial_fractions(self, Q):
        density = UniRatFunc.from_expr(Q, "1/z**4 + 2/z**2 + 3/(z - 1)**2")
        form = poleform_from_ratfunc(density, [Q.zero, Q.one])
        assert form.terms == {((0, 4),): q(1), ((0, 2),): q(2), ((1, 2),): q(3)}
        assert poleform_to_ratfunc(form, [Q.zero, Q.one]) == density

    def test_simple_pole_is_a_residue(self, Q):
        with pytest.raises(ResiduePresent):
            poleform_from_ratfunc(UniRatFunc.from_expr(Q, "1/z"), [Q.zero])

    def test_pole_away_from_branchpoints(self, Q):
        with pytest.raises(PoleAtPoint):
            poleform_from_ratfunc(UniRatFunc.from_expr(Q, "1/z**2 + 1/(z - 3)**2"), [Q.zero])

    def test_grouping_by_remaining_slots(self, Q):
        form = PoleForm(Q, 0, {((0, 2), (0, 2)): q(1), ((0, 4), (0, 2)): q(5)})
        grouped = poleform_to_ratfunc(form, [Q.zero], slot=0)
        assert grouped == {((0, 2),): UniRatFunc.from_expr(Q, "1/z**2 + 5/z**4")}


class TestIntegration:
    def test_primitive(self):
        a, b = sympy.symbols("a b")
        assert sympy.cancel(primitive_between(0, 3, a, b) - (1 / a ** 2 - 1 / b ** 2) / 2) == 0
        with pytest.raises(ResiduePresent):
            primitive_between(0, 1, a, b)

    def test_integrate_all_slots(self, airy):
        a, b = sympy.symbols("a b")
        value = integrate_form(compute_omega(airy, 1, 1), airy.branchpoints, a, b)
        assert sympy.cancel(value - (1 / a ** 3 - 1 / b ** 3) / 48) == 0

    def test_integrate_some_slots(self, airy):
        a, b, w = sympy.symbols("a b w")
        w3 = compute_omega(airy, 0, 3)
        value = integrate_form(w3, airy.branchpoints, a, b, slots=[0, 1], variables={2: w})
        expected = (1 / a - 1 / b) ** 2 / (2 * w ** 2)
        assert sympy.cancel(value - expected) == 0


class TestDictionary:
    def test_weil_petersson_volume(self):
        curve = make_weil_petersson(3)
        form = compute_omega(curve, 1, 1).convention("paper9")
        L1, p = sympy.symbols("L1 p")
        vol = laplace_volume_dictionary(form, curve)
        assert sympy.expand(vol.as_expr() - (L1 ** 2 / 48 + p / 12)) == 0
        assert intersection_numbers(form, 3, curve.field)[(1,)] == curve.field.convert("1/24")

    def test_kappa_couplings(self):
        curve = make_weil_petersson(3)
        F = curve.field
        tilde = kappa_times(weil_petersson_times(3), 2, F)
        assert [F.to_str(t) for t in tilde] == ["4*p", "0"]
        vol = laplace_volume_dictionary(compute_omega(curve, 1, 1).convention("paper9"), curve)
        assert kappa_one(vol, 3, tilde[0], F) == F.convert("1/24")

    def test_kappa_times_need_regular_t3(self, Q):
        with pytest.raises(TopoRecError):
            kappa_times({3: 2}, 2, Q)

    def test_two_branchpoints_are_rejected(self, quadrangulation):
        form = compute_omega(quadrangulation, 0, 3)
        with pytest.raises(NonQuadraticX):
            laplace_volume_dictionary(form, quadrangulation)


class TestLocalExpansion:
    def test_same_branchpoint_gives_principal_part(self, airy):
        w3 = compute_omega(airy, 0, 3)
        series = poleform_local_expand(w3, 0, airy.branchpoints, 0, 2)
        assert series.labels == (1, 2)
        assert series.data == {-2: {((0, 2), (0, 2)): q("1/2")}}

    def test_other_branchpoint_gives_taylor_series(self, Q):
        form = PoleForm(Q, 0, {((1, 2),): q(1)})
        series = poleform_local_expand(form, 0, [Q.zero, Q.one], 0, 2)
        # 1/(s - 1)^2 = 1 + 2s + 3s^2 + ...
        assert [series.data[e][()] for e in range(3)] == [q(1), q(2), q(3)]
        assert series.valid == 2


def test_count_needs_one_weight_per_slot(quadrangulation):
    with pytest.raises(ValueError):
        residue_at_infinity_with_weight(compute_omega(quadrangulation, 0, 3), [4, 4], quadrangulation)


class TestMapCounts:
    @pytest.fixture
    def formal_quadrangulation(self):
        curve, _ = make_quadrangulation(1)
        return curve

    def test_annulus(self, formal_quadrangulation):
        curve = formal_quadrangulation
        count = residue_at_infinity_with_weight(compute_omega(curve, 0, 2), [4, 4], curve)
        assert count == curve.field.convert("36*gamma**8")

    def test_pants(self, formal_quadrangulation):
        curve = formal_quadrangulation
        count = residue_at_infinity_with_weight(compute_omega(curve, 0, 3), [4, 4, 4], curve)
        assert count == curve.field.convert("1728*gamma**10/(1 - 6*gamma**2)")

    def test_annulus_at_rational_gamma(self, quadrangulation):
        count = residue_at_infinity_with_weight(compute_omega(quadrangulation, 0, 2), [4, 4], quadrangulation)
        assert count == q("36/256")

    def test_hexagonal_boundary(self):
        # 3^n (2p)! (2n+p-1)! / (p! (p-1)! n! (n+p+1)!) at p = 3
        assert quadrangulation_counts(1, 0, [6], 4).counts == ["5", "36", "270", "2160"]
