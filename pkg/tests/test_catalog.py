import json
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
import sympy
from pydantic import ValidationError

from catalog import (
    FamilySpec,
    ising_parameters,
    load_family_spec,
    make_family,
    make_gaussian_external,
    make_ising_quartic,
    make_kontsevich,
    make_minimal_p2,
    make_one_cut_map_curve,
    make_plancherel,
    make_q_plancherel,
    make_quadrangulation,
    quadrangulation_counts,
    quadrangulation_gamma_sq_series,
    weil_petersson_times,
    witten_kontsevich_pair,
)
from catalog.plancherel import LogExpr, Z
from exact_arith import CoeffField
from exact_arith.errors import NotRegular, SingularSystem, U0NotZero, UnknownFamily
from recursion import compute_fg, compute_omega
from spectral_curve import SpectralCurve


def _four_cycle_permutations(darts):
    """Every permutation of ``darts`` made of 4-cycles only."""
    if not darts:
        yield {}
        return
    head, rest = darts[0], darts[1:]
    for others in permutations(rest, 3):
        cycle = (head,) + others
        remaining = [d for d in rest if d not in others]
        for tail in _four_cycle_permutations(remaining):
            perm = dict(tail)
            for i, d in enumerate(cycle):
                perm[d] = cycle[(i + 1) % 4]
            yield perm


def _cycles(perm):
    seen, count = set(), 0
    for start in perm:
        if start in seen:
            continue
        count += 1
        d = start
        while d not in seen:
            seen.add(d)
            d = perm[d]
    return count


def _connected(phi, alpha):
    reached, stack = {0}, [0]
    while stack:
        d = stack.pop()
        for nxt in (phi[d], alpha[d]):
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    return len(reached) == len(phi)


def rooted_planar_quadrangulations(faces):
    """Brute-force count over face permutations with a fixed edge pairing."""
    darts = 4 * faces
    alpha = {d: d ^ 1 for d in range(darts)}
    edges = darts // 2
    good = 0
    for phi in _four_cycle_permutations(list(range(darts))):
        sigma = {d: phi[alpha[d]] for d in range(darts)}
        if _connected(phi, alpha) and _cycles(sigma) - edges + faces == 2:
            good += 1
    pairings = factorial(darts) // (2 ** edges * factorial(edges))
    return Fraction(good * pairings, factorial(darts - 1))


def tutte_quadrangulations(faces):
    return 2 * 3 ** faces * factorial(2 * faces) // (factorial(faces) * factorial(faces + 2))


class TestMaps:
    def test_brute_force_agrees_with_closed_form(self):
        assert [rooted_planar_quadrangulations(f) for f in (1, 2)] == [2, 9]

    def test_planar_counts(self):
        table = quadrangulation_counts(1, 0, [4], 5)
        assert table.counts[:2] == [str(rooted_planar_quadrangulations(f)) for f in (1, 2)]
        assert table.counts == [str(tutte_quadrangulations(f)) for f in range(1, 6)]
        assert table.counts[:4] == ["2", "9", "54", "378"]

    def test_torus_counts(self):
        assert quadrangulation_counts(1, 1, [4], 3).counts == ["1", "15", "198"]

    def test_counts_need_a_face_weight(self):
        with pytest.raises(ValueError):
            quadrangulation_counts(0, 0, [4], 3)
        with pytest.raises(ValueError):
            quadrangulation_counts(1, 0, [], 3)

    def test_gamma_series(self):
        s = quadrangulation_gamma_sq_series(1, 4)
        assert [sympy.Integer(str(s.coefficient(e))) for e in range(1, 5)] == [1, 3, 18, 135]

    def test_fixed_t4_curve(self):
        curve, t = make_quadrangulation(1, gamma="1/2")
        assert curve.field.to_str(t) == "1/16"
        assert curve.data.meta["mode"] == "fixed-t4"
        assert len(curve.branchpoints) == 2

    def test_formal_gamma(self):
        curve, t = make_quadrangulation(1)
        F = curve.field
        assert F == CoeffField("Qu", "gamma")
        assert sympy.expand(F.to_sympy(t) - (F.symbol ** 2 - 3 * F.symbol ** 4)) == 0

    def test_t_one_mode(self):
        curve, t = make_quadrangulation(mode="t-one")
        assert t == curve.field.one
        with pytest.raises(ValueError):
            make_quadrangulation(mode="sideways")
        with pytest.raises(ValueError):
            make_quadrangulation(mode="fixed-t4")

    def test_one_cut_solves_for_alpha(self):
        curve, _ = make_one_cut_map_curve(None, "1/2", {4: 1})
        assert curve.data.meta["alpha"] == "0"

    def test_one_cut_rejects_wrong_alpha(self):
        with pytest.raises(U0NotZero):
            make_one_cut_map_curve(1, "1/2", {4: 1})


class TestIsing:
    def test_parameters(self):
        assert ising_parameters(2, 2, 0, 0, 1).t == CoeffField("Q").convert(3)

    def test_relation(self):
        t2, tt2, t4, tt4, g = (sympy.Rational(v) for v in ("1/3", "2", "1/5", "-1/7", "1/2"))
        Q = CoeffField("Q")
        t = Q.to_sympy(ising_parameters(t2, tt2, t4, tt4, g, Q).t)
        det = 1 - 9 * t4 * tt4 * g ** 4
        rhs = 3 * t4 * tt4 * g ** 4 + (t2 - 3 * tt2 * t4 * g ** 2) * (tt2 - 3 * t2 * tt4 * g ** 2) / det ** 2
        assert sympy.cancel(1 + t / g ** 2 - rhs) == 0

    def test_degenerate_system(self):
        with pytest.raises(SingularSystem):
            ising_parameters(1, 1, "1/3", "1/3", 1)

    def test_quartic_curve(self):
        curve, t = make_ising_quartic(1, 4, 0, 0, 1)
        Q = curve.field
        assert sorted(Q.to_sympy(a) for a in curve.branchpoints) == [-2, 2]
        assert Q.to_str(t) == "3"


class TestKontsevichFamily:
    def test_weil_petersson_times(self):
        p = sympy.Symbol("p")
        times = weil_petersson_times(3)
        assert [times[3], times[5], times[7]] == [3, -2 * p / 3, 2 * p ** 2 / 15]
        with pytest.raises(ValueError):
            weil_petersson_times(0)

    def test_bad_times(self):
        with pytest.raises(ValueError):
            make_kontsevich({1: 1})

    def test_matched_curves_share_f2(self):
        pair = witten_kontsevich_pair([1, 2, -3], 7)
        assert compute_fg(pair.kontsevich, 2) == compute_fg(pair.matched, 2)

    def test_pair_needs_nonzero_eigenvalues(self):
        with pytest.raises(ValueError):
            witten_kontsevich_pair([1, 0], 3)


class TestPlancherel:
    def test_trivial_curve_has_no_free_energy(self):
        assert compute_fg(make_plancherel(0), 2) == make_plancherel(0).domain.zero

    def test_t2_deformation(self):
        curve = make_plancherel("1/2")
        assert compute_fg(curve, 2) == curve.field.convert("1/(8748*E**2)")

    def test_critical_u1(self):
        with pytest.raises(NotRegular):
            make_plancherel(1)

    @pytest.mark.parametrize("p", [0, 1, 2])
    def test_q_plancherel_identities(self, p):
        curve, mirror, report = make_q_plancherel(2, p)
        assert report.ok
        assert set(report.checks) == {"exp_x_tilde", "x_times_y", "dlog_x"}
        assert curve.meta["p"] == str(p)
        assert mirror.name == "q-plancherel-mirror"

    def test_identity_ignores_constant_logs(self):
        diff = LogExpr.log(2 - Z) - LogExpr.log(Z - 2)
        assert diff.logs == ((sympy.Integer(-1), sympy.Integer(1)),)
        assert diff.without_constants().is_zero

    def test_q_plancherel_arguments(self):
        with pytest.raises(ValueError):
            make_q_plancherel(1, 1)
        with pytest.raises(ValueError):
            make_q_plancherel(2, 1.5)


class TestOtherCurves:
    def test_minimal_model_needs_linear_term(self):
        with pytest.raises(NotRegular):
            make_minimal_p2(1, [0, 1])

    def test_gaussian_external_regular_case(self):
        curve = make_gaussian_external([1], [0])
        assert isinstance(curve, SpectralCurve)
        assert sorted(curve.field.to_sympy(a) for a in curve.branchpoints) == [-1, 1]

    def test_gaussian_external_arguments(self):
        with pytest.raises(ValueError):
            make_gaussian_external([1, 1], [0])
        with pytest.raises(ValueError):
            make_gaussian_external([1, 1], [0, 0])


class TestFamilies:
    def test_airy(self):
        entry = make_family({"family": "airy"})
        assert compute_omega(entry.curve, 1, 1).terms == {((0, 4),): CoeffField("Q").convert(Fraction(1, 16))}

    def test_kontsevich_times_are_recorded(self):
        entry = make_family({"family": "kontsevich", "times": ["1/2", 1]})
        assert entry.derived == {"t3": "1/2", "t4": "1"}

    def test_quadrangulation_alias(self):
        entry = make_family({"family": "quadrangulation", "t4": 1, "mode": "formal-gamma"})
        assert entry.derived["mode"] == "fixed-t4"
        assert "t" in entry.extras

    def test_q_plancherel_entry(self):
        entry = make_family({"family": "q-plancherel", "z0": 3, "p": "2"})
        assert entry.extras["identities"].ok

    def test_unknown_family(self):
        with pytest.raises(UnknownFamily):
            make_family({"family": "hurwitz"})

    def test_extra_keys_are_rejected(self):
        with pytest.raises(ValidationError):
            make_family({"family": "airy", "colour": "blue"})

    def test_load_from_json_and_path(self, tmp_path):
        text = json.dumps({"family": "minimal32", "u": "2"})
        assert load_family_spec(text) == FamilySpec(family="minimal32", u="2")
        path = tmp_path / "family.json"
        path.write_text(text)
        assert make_family(path).curve.data.meta["u"] == "2"
