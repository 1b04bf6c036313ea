import random

import pytest
from hypothesis import given, settings, strategies as st

from bitcong import kummer as K
from bitcong.bitangent import classify_line, inseparable_centers
from bitcong.fields import field_make
from bitcong.poly import MultiPoly, divide_exact, parse_poly
from bitcong.projgeom import ProjPoint, coordinate_line, lines_meet

F2, F16, F32 = field_make(2, 1), field_make(2, 4), field_make(2, 5)


def gens(f):
    return MultiPoly.gens(f, 4)


def P(text, f=F2):
    return parse_poly(text, f, 4)


def test_family_examples_over_gf2():
    assert K.kummer_polynomial(K.ordinary(F2, 1, 1, 1)) == P(
        "x^2*y^2+z^2*w^2+x^2*z^2+y^2*w^2+x^2*w^2+y^2*z^2+x*y*z*w"
    )
    assert K.kummer_polynomial(K.rank1(F2, 0, 1)) == P("x^4 + x^2*z*w + x*y*z^2 + y^2*w^2 + z^4")
    assert K.kummer_polynomial(K.supersingular(F2, 0)) == P("x^3*w + x^2*y*z + x*y^3 + y^2*w^2 + z^4")


def test_family_constraints():
    with pytest.raises(K.FamilyError, match="a must be nonzero"):
        K.ordinary(F16, 0, 1, 1)
    with pytest.raises(K.FamilyError, match="beta"):
        K.rank1(F16, 1, 0)
    with pytest.raises(K.FamilyError):
        K.ordinary(field_make(3, 1), 1, 1, 1)
    K.rank1(F16, 0, 1)  # alpha may vanish


def test_parse_family():
    fam = K.parse_family("ordinary:1,[0,1],[1,1]", F16)
    assert fam.variant == "ordinary" and fam.params[0] == 1
    assert K.parse_family("rank1:rand", F16, random.Random(2)).variant == "rank1"
    for bad in ("flat:1", "ordinary", "ordinary:0,1,1"):
        with pytest.raises(K.FamilyError):
            K.parse_family(bad, F16)


@pytest.mark.parametrize("variant,expected", [
    ("ordinary", [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]),
    ("rank1", [(0, 0, 0, 1), (0, 1, 0, 0)]),
    ("supersingular", [(0, 0, 0, 1)]),
])
def test_singular_points(variant, expected):
    fam = K.random_family(variant, F16, random.Random(5))
    rep = K.singular_points(fam)
    assert sorted(p.coords for p in rep.points) == sorted(expected)
    assert rep.verified and not rep.extra and rep.scan_fields


def test_tropes():
    fam = K.ordinary(F16, 3, 5, 6)
    data = K.trope_data(fam)
    assert len(data) == 4
    x, y, z, w = gens(F16)
    r = [F16.sqrt_code(v) for v in (3, 5, 6)]
    assert data[0][1] == (z * w).scale(r[0]) + (y * w).scale(r[1]) + (y * z).scale(r[2])
    assert len(K.trope_data(K.rank1(F16, 4, 9))) == 2
    (plane, conic), = K.trope_data(K.supersingular(F16, 7))
    assert conic == y * w + z**2 and plane.coeffs == (1, 0, 0, 0)


def test_involution_formulas():
    x, y, z, w = gens(F16)
    T1 = K.involutions(K.ordinary(F16, 1, 2, 3))[0]
    assert T1.components == (x * z * w, y * z * w, x * y * z, x * y * w)
    s2 = K.involutions(K.rank1(F16, 2, 3))[1]
    assert s2.components == (x**2 * z, x**2 * w, x * z**2, y * z**2)
    al = 5
    (T,) = K.involutions(K.supersingular(F16, al))
    assert T.components[2] == (x**3).scale(al) + x**2 * z + x * y**2


def test_preserves_and_involutive():
    fam = K.ordinary(F16, 3, 5, 6)
    X = K.kummer_surface(fam)
    for T in K.involutions(fam):
        ok, M = K.check_preserves(X, T)
        assert ok and M.degree() == 8
        assert K.check_involutive(T)[0]
    x, y, z, w = gens(F16)
    assert not K.check_preserves(X, K.CremonaMap("junk", [x + y, y, z, w]))[0]
    ok, h = K.check_involutive(K.pair_swaps(F16)[0])
    assert ok and h.degree() == 0
    s2 = K.involutions(K.rank1(F16, 2, 3))[1]
    ok, h = K.check_involutive(s2)
    assert ok and h.degree() == 8
    cubic = K.CremonaMap("cubic", [x**3 + y * z * w, y**3, z**3, w**3 + x * y * z])
    assert not K.check_involutive(cubic)[0]


def test_cremona_rejects_shared_factor():
    x, y, z, w = gens(F16)
    with pytest.raises(ValueError):
        K.CremonaMap("bad", [x * y, x * z, x * w, x * x])
    with pytest.raises(ValueError):
        K.CremonaMap("bad", [x, y, z])


@pytest.mark.parametrize("variant", K.VARIANTS)
def test_bitangent_involutions(variant, rng):
    fam = K.random_family(variant, F32, rng)
    X = K.kummer_surface(fam)
    for T in K.bitangent_involutions(fam):
        rep = K.check_bitangent_involution(X, T, n_samples=40, rng=rng)
        assert rep.passed, rep.to_json()
        assert rep.odd_coefficients_identically_zero


def test_bitangent_involution_on_extension(rng):
    fam = K.ordinary(field_make(2, 3), 1, 2, 3)
    X = K.kummer_surface(fam)
    T1 = K.involutions(fam)[0]
    rep = K.check_bitangent_involution(X, T1, n_samples=30, rng=rng, field=field_make(2, 6))
    assert rep.passed and rep.samples == 30


def test_projective_symmetries_are_not_bitangent(rng):
    # tau, the swaps and the standard inversion preserve X but their orbit lines are not bitangent
    fam = K.ordinary(F32, 3, 5, 6)
    X = K.kummer_surface(fam)
    for T in K.pair_swaps(F32) + [K.standard_inversion(F32)]:
        assert K.check_preserves(X, T)[0] and K.check_involutive(T)[0]
        rep = K.check_bitangent_involution(X, T, n_samples=30, rng=rng)
        assert not rep.passed
    fam = K.rank1(F32, 3, 5)
    tau = K.involutions(fam)[2]
    X = K.kummer_surface(fam)
    assert K.check_preserves(X, tau)[0] and K.check_involutive(tau)[0]
    assert not K.check_bitangent_involution(X, tau, n_samples=30, rng=rng).passed


def test_compositions():
    fam = K.ordinary(F16, 3, 5, 6)
    inv = K.standard_inversion(F16)
    for g, T in zip(K.pair_swaps(F16), K.involutions(fam)):
        assert K.proportional_maps(inv.compose(g), T.components)
    fam = K.rank1(F16, 3, 5)
    s1, s2, tau = K.involutions(fam)
    assert K.proportional_maps(tau.compose(s1), s2.components)


def test_plucker_sigma2():
    fam = K.rank1(F16, 3, 5)
    s2 = K.involutions(fam)[1]
    x, y, z, w = gens(F16)
    pc = K.plucker_congruence(s2, K.congruence_relations(fam)["sigma2"])
    assert pc.factor == x * w + y * z
    assert pc.minors == [x**2, MultiPoly.zero(F16, 4), x * z, x * z, x * w + y * z, z**2]
    assert all(r.identity for r in pc.relations)


def test_plucker_supersingular():
    fam = K.supersingular(F16, 6)
    (T,) = K.involutions(fam)
    x, y, z, w = gens(F16)
    pc = K.plucker_congruence(T, K.congruence_relations(fam)["T"])
    assert pc.factor == (x**2).scale(6) + y**2
    assert pc.minors == [MultiPoly.zero(F16, 4), x**2, x * y, x * y, y**2, x * w + y * z]
    assert all(r.status == "identity" for r in pc.relations)


def test_standard_inversion_cubic_relation(rng):
    X = K.kummer_surface(K.ordinary(F16, 3, 5, 6))
    T = K.standard_inversion(F16)
    x, y, z, w = gens(F16)
    pc = K.plucker_congruence(T, [K.CUBIC_RELATION, K.PLUCKER_QUADRIC], X=X, rng=rng)
    assert pc.minors[0] == z * w * (x**2 + y**2) and pc.minors[5] == x * y * (z**2 + w**2)
    # holds on all of P^3, in particular on X
    assert [r.status for r in pc.relations] == ["identity", "identity"]


@pytest.mark.parametrize("variant", K.VARIANTS)
def test_predicted_witnesses(variant, rng):
    from bitcong.bitangent import class_count, order_count

    fam = K.random_family(variant, F32, rng)
    X = K.kummer_surface(fam)
    m, n = K.expected_bidegree_family(fam)
    for _ in range(3):
        q, _ = K.generic_point(fam, rng, X)
        pred = K.predicted_bitangents(fam, through=q)
        assert len(pred) == m
        assert set(order_count(X, q).witnesses) == set(pred)
        H, _ = K.generic_plane(fam, rng)
        pred = K.predicted_bitangents(fam, in_plane=H)
        assert len(pred) == n
        assert set(class_count(X, H).witnesses) == set(pred)
    with pytest.raises(ValueError):
        K.predicted_bitangents(fam)


def test_supersingular_rays_meet_vertex_line(rng):
    fam = K.supersingular(F32, 9)
    l0 = coordinate_line(F32, (0, 1))
    for _ in range(10):
        q, _ = K.generic_point(fam, rng)
        (ray,) = K.predicted_bitangents(fam, through=q)
        assert lines_meet(ray, l0)
        assert classify_line(K.kummer_surface(fam), ray).is_bitangent


def test_generic_point_policy(rng):
    fam = K.ordinary(F16, 3, 5, 6)
    X = K.kummer_surface(fam)
    for _ in range(20):
        q, redraws = K.generic_point(fam, rng, X)
        assert not X.contains(q) and all(c for c in q.coords)
        assert redraws >= 0


def test_fixed_locus(rng):
    fam = K.ordinary(field_make(2, 4), 3, 5, 6)
    rep = K.fixed_locus_check(fam, n_samples=60, rng=rng)
    assert rep.passed and rep.fixed > 0
    with pytest.raises(K.FamilyError):
        K.fixed_locus_check(K.rank1(F16, 1, 1))


@settings(max_examples=15)
@given(st.integers(1, 15), st.integers(1, 15), st.integers(1, 15))
def test_fixed_points_lie_on_quadric(a, b, c):
    fam = K.ordinary(F16, a, b, c)
    T1 = K.involutions(fam)[0]
    X = K.kummer_surface(fam)
    for p in K.surface_points(X, random.Random(a * 256 + b * 16 + c), 20):
        tp = T1(p)
        if not any(tp):
            continue
        on_q = F16.add(F16.mul(p[0], p[1]), F16.mul(p[2], p[3])) == 0
        fixed = ProjPoint.of(F16, tp).coords == p
        assert fixed == on_q


def test_inseparable_centers_of_families(rng):
    for variant in K.VARIANTS:
        X = K.kummer_surface(K.random_family(variant, F32, rng))
        assert inseparable_centers(X).points() == []


def test_fixtures():
    cyc = K.verify_cyclic_fixture()
    assert cyc.passed, cyc.checks
    cen = K.verify_center_fixture()
    assert cen.passed, cen.checks
    cat = K.fixture_surfaces()
    assert set(cat) == {"cyclic", "inseparable_center"}
    assert not K.cyclic_invariant_relation(F16)


def test_surface_points(rng):
    X = K.kummer_surface(K.ordinary(F16, 1, 2, 3))
    pts = K.surface_points(X, rng, 25)
    assert len(set(pts)) == 25 and all(X.contains(ProjPoint.of(F16, p)) for p in pts)
    small = K.kummer_surface(K.ordinary(F2, 1, 1, 1))
    assert len(K.surface_points(small, rng, 500, allow_fewer=True)) < 500
    with pytest.raises(RuntimeError):
        K.surface_points(small, rng, 500)
