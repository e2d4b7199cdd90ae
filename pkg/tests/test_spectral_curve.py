import json

import pytest
import sympy
from pydantic import ValidationError

from catalog import make_gaussian_external, make_kontsevich
from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import (
    BranchpointAtInfinity,
    BranchpointNotInField,
    CoincidentBranchpoints,
    NotRegular,
    TransformUnsupported,
)
from spectral_curve import (
    AddRofX,
    CurveData,
    MobiusX,
    NegateY,
    Regular,
    ScaleXY,
    ScaleY,
    Singular,
    SwapXY,
    apply_transform,
    build_curve,
    classify_branchpoint,
    curve_to_json,
    curve_to_spec,
    dump_curve,
    find_branchpoints,
    inverse_transform,
    involution_series,
    load_curve,
    local_y_and_phi,
    transform_data,
    validate_curve,
)


def rational_data(F, x, y):
    return CurveData.rational(UniRatFunc.from_expr(F, x), UniRatFunc.from_expr(F, y))


class TestValidation:
    def test_airy_branch_data(self, airy):
        assert airy.branchpoints == (airy.field.zero,)
        bd = airy.branch(0, 6)
        assert bd.xpp_half == airy.field.one
        assert bd.y_linear == airy.field.one
        assert [bd.sigma.coefficient(e) for e in range(1, 4)] == [-airy.field.one, 0, 0]

    def test_pure_gravity_branchpoint(self, pure_gravity):
        bd = pure_gravity.branch(0, 4)
        assert pure_gravity.field.to_str(bd.y_linear) == "-3"

    def test_discovers_rational_branchpoints(self, Q):
        curve = validate_curve(rational_data(Q, "z + 1/z", "z"))
        assert sorted(Q.to_sympy(a) for a in curve.branchpoints) == [-1, 1]

    def test_branchpoint_at_infinity(self, Q):
        with pytest.raises(BranchpointAtInfinity):
            validate_curve(rational_data(Q, "1/z**2", "z"))

    def test_irrational_branchpoints(self, Q):
        with pytest.raises(BranchpointNotInField):
            validate_curve(rational_data(Q, "z**3 - 6*z", "z"))

    def test_double_zero_of_dx(self, Q):
        with pytest.raises(NotRegular):
            validate_curve(rational_data(Q, "z**3", "z"))

    def test_dy_vanishing_at_branchpoint(self, Q):
        with pytest.raises(NotRegular):
            validate_curve(rational_data(Q, "z**2", "z**2"))

    def test_explicit_branchpoint_must_be_critical(self, Q):
        with pytest.raises(NotRegular):
            validate_curve(rational_data(Q, "z**2", "z"), [1])

    def test_coincident_branchpoints(self, Q):
        with pytest.raises(CoincidentBranchpoints):
            validate_curve(rational_data(Q, "z**2", "z"), [0, 0])

    def test_kontsevich_needs_t3_not_two(self):
        with pytest.raises(NotRegular):
            make_kontsevich([2])

    def test_describe(self, airy):
        doc = airy.describe()
        assert doc["field"] == "Q"
        assert doc["branchpoints"] == [
            {"a": "0", "x(a)": "0", "xpp_half": "1", "y_linear": "1", "y_prime_sq": "1"}
        ]

    def test_parameter_field(self):
        F = CoeffField("Qu", "u")
        curve = validate_curve(rational_data(F, "z**2", "u*z"))
        assert F.to_str(curve.branch(0, 4).y_linear) == "u"


class TestClassify:
    def test_regular(self, airy):
        kind = classify_branchpoint(airy, 0)
        assert kind == Regular(airy.field.one, airy.field.one)
        assert kind.kind == "regular"

    def test_cusp_of_x_gives_singular(self, Q):
        data = rational_data(Q, "z**2", "z**3")
        assert classify_branchpoint(data, 0) == Singular(3, 2)

    def test_pearcey_point(self):
        data = make_gaussian_external(["1/2", "1/2"], [-1, 1])
        assert isinstance(data, CurveData)
        kind = classify_branchpoint(data, 0)
        assert kind == Singular(1, 3)
        assert kind.kind == "singular"

    def test_even_y_is_not_a_branch(self, Q):
        with pytest.raises(NotRegular):
            classify_branchpoint(rational_data(Q, "z**2", "z**2"), 0, order=8)


class TestTransforms:
    @pytest.mark.parametrize("t", [
        ScaleY(3),
        ScaleXY(2),
        NegateY(),
        MobiusX(2, 1, 0, 1),
    ])
    def test_inverse_restores_curve(self, pure_gravity, t):
        there = apply_transform(pure_gravity, t)
        back = apply_transform(there, inverse_transform(t))
        assert back.x == pure_gravity.x
        assert back.y == pure_gravity.y
        assert back.branchpoints == pure_gravity.branchpoints

    def test_add_r_of_x(self, Q, airy):
        R = UniRatFunc.from_expr(Q, "z**2 + 1")
        out = apply_transform(airy, AddRofX(R))
        assert out.y == UniRatFunc.from_expr(Q, "z**4 + z + 1")
        assert apply_transform(out, inverse_transform(AddRofX(R))).y == airy.y

    def test_mobius_with_pole(self, Q):
        curve = validate_curve(rational_data(Q, "z + 1/z", "z"))
        out = apply_transform(curve, MobiusX(0, 1, 1, 0))
        assert out.x == UniRatFunc.from_expr(Q, "z/(z**2 + 1)")
        assert out.y == UniRatFunc.from_expr(Q, "-(z**2 + 1)**2/z")
        assert out.branchpoints == curve.branchpoints

    def test_swap(self, pure_gravity):
        data = transform_data(pure_gravity.data, SwapXY())
        assert data.x == pure_gravity.y
        assert data.y == pure_gravity.x

    def test_swap_needs_rational_y(self, airy):
        log_type = CurveData.log_type(airy.x, airy.dy)
        with pytest.raises(TransformUnsupported):
            transform_data(log_type, SwapXY())


class TestSpecIO:
    def test_build_from_expression_strings(self):
        curve = build_curve({"field": "Qu", "x": "z**2", "y": "gamma*z", "params": {"name": "gamma"}})
        assert curve.field == CoeffField("Qu", "gamma")

    def test_json_round_trip(self, quadrangulation):
        text = curve_to_json(quadrangulation)
        again = build_curve(text)
        assert again.x == quadrangulation.x
        assert again.y == quadrangulation.y
        assert again.branchpoints == quadrangulation.branchpoints

    def test_file_round_trip(self, tmp_path, pure_gravity):
        path = tmp_path / "pg.json"
        dump_curve(pure_gravity, path)
        assert "branchpoints" in json.loads(path.read_text())
        assert load_curve(path).y == pure_gravity.y

    def test_spec_needs_exactly_one_y(self):
        with pytest.raises(ValidationError):
            build_curve({"x": "z**2"})
        with pytest.raises(ValidationError):
            build_curve({"x": "z**2", "y": "z", "dy": {"expr": "1"}})

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            build_curve({"field": "R", "x": "z**2", "y": "z"})

    def test_log_type_spec(self):
        spec = {
            "x": "z**2",
            "dy": {"expr": "1 + 1/(z + 2)", "logs": [{"coeff": "1", "arg": "z + 2"}]},
        }
        curve = build_curve(spec)
        assert not curve.is_rational
        assert curve_to_spec(curve).dy.logs[0].coeff == "1/1"

    def test_find_branchpoints_reports_remainder(self, Q):
        roots, remainder = find_branchpoints(rational_data(Q, "z**4/4 - z**2", "z"))
        assert sorted(Q.to_sympy(r) for r in roots) == [0]
        assert remainder == 2


class TestLocalSeries:
    def test_airy_involution_is_exact(self, airy):
        sigma = involution_series(airy, 0, 5)
        assert [sigma.coefficient(e) for e in range(1, 6)] == [-airy.domain.one] + [airy.domain.zero] * 4

    def test_quadrangulation_involution(self, quadrangulation):
        F = quadrangulation.field
        # z -> 1/z gives sigma(s) = -s/(1 + s) at z = 1 and -s/(1 - s) at z = -1
        by_point = {}
        for i, a in enumerate(quadrangulation.branchpoints):
            sigma = involution_series(quadrangulation, i, 3)
            by_point[F.to_sympy(a)] = [F.to_sympy(sigma.coefficient(e)) for e in range(1, 4)]
        assert by_point == {1: [-1, 1, -1], -1: [-1, -1, -1]}

    def test_airy_y_and_phi(self, airy):
        y, phi = local_y_and_phi(airy, 0, 4)
        K = airy.domain
        assert [K.to_sympy(y.coefficient(e)) for e in range(5)] == [0, 1, 0, 0, 0]
        assert [K.to_sympy(phi.coefficient(e)) for e in range(5)] == [0, 0, 0, sympy.Rational(2, 3), 0]
