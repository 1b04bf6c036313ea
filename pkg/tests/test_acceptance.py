"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line; the
terminal summary repeats them in order."""
import random
import time

import pytest

from bitcong import kummer as K
from bitcong import quartic_curves as QC
from bitcong.bitangent import class_count, expected_bidegree, inseparable_centers, order_count
from bitcong.fields import field_make
from bitcong.poly import MultiPoly, disc_sqrt_char2, universal_discriminant
from bitcong.projgeom import ProjPoint, coordinate_line, lines_meet

F32 = field_make(2, 5)


def table_row(variant, n_families=3, n_samples=20, seed=1):
    """Order and class counts with exact witness comparison for random families."""
    rng = random.Random(seed)
    m, n = {"ordinary": (3, 7), "rank1": (2, 4), "supersingular": (1, 2)}[variant]
    worst = 0.0
    for _ in range(n_families):
        t0 = time.perf_counter()
        fam = K.random_family(variant, F32, rng)
        X = K.kummer_surface(fam)
        for _ in range(n_samples):
            q, _ = K.generic_point(fam, rng, X)
            rep = order_count(X, q)
            assert rep.count == m, f"order {rep.count} at {q}"
            assert set(rep.witnesses) == set(K.predicted_bitangents(fam, through=q))
            H, _ = K.generic_plane(fam, rng)
            rep = class_count(X, H)
            assert rep.count == n, f"class {rep.count} in {H}"
            assert set(rep.witnesses) == set(K.predicted_bitangents(fam, in_plane=H))
        worst = max(worst, time.perf_counter() - t0)
    assert worst < 60
    return worst


def test_criterion_1_ordinary(criterion):
    with criterion(1, "ordinary Kummer: order 3, class 7, witnesses = prediction") as c:
        worst = table_row("ordinary")
        c.note(f"3 families x 20 points/planes over GF(2^5), slowest family {worst:.1f}s")


def test_criterion_2_rank1(criterion):
    with criterion(2, "2-rank-1 Kummer: order 2, class 4, sigma2 Plücker relations") as c:
        worst = table_row("rank1")
        fam = K.random_family("rank1", F32, random.Random(2))
        s2 = K.involutions(fam)[1]
        pc = K.plucker_congruence(s2, K.congruence_relations(fam)["sigma2"])
        assert [r.status for r in pc.relations] == ["identity"] * 3
        c.note(f"relations hold identically, slowest family {worst:.1f}s")


def test_criterion_3_supersingular(criterion):
    with criterion(3, "supersingular Kummer: order 1, class 2, minors, rays meet V(x,y)") as c:
        worst = table_row("supersingular")
        rng = random.Random(3)
        fam = K.random_family("supersingular", F32, rng)
        (T,) = K.involutions(fam)
        x, y, z, w = MultiPoly.gens(F32, 4)
        zero = MultiPoly.zero(F32, 4)
        assert K.plucker_congruence(T).minors == [zero, x**2, x * y, x * y, y**2, x * w + y * z]
        X = K.kummer_surface(fam)
        l0 = coordinate_line(F32, (0, 1))
        for _ in range(20):
            q, _ = K.generic_point(fam, rng, X)
            (ray,) = order_count(X, q).witnesses
            assert lines_meet(ray, l0)
        c.note(f"slowest family {worst:.1f}s")


def test_criterion_4_discriminant(criterion):
    with criterion(4, "discriminant mod 2 is the square of a form of degree d-1") as c:
        t0 = time.perf_counter()
        rng = random.Random(4)
        for d in range(2, 7):
            D, P = universal_discriminant(d, char2=True), disc_sqrt_char2(d)
            assert P * P == D and P.is_homogeneous() == d - 1
            for i in range(1000):
                f = field_make(2, 1 + i % 8)
                Dm, Pm = D.map_coeffs(lambda v: v, f), P.map_coeffs(lambda v: v, f)
                a = [rng.randrange(f.order) for _ in range(d + 1)]
                p = Pm.eval_codes(a)
                assert Dm.eval_codes(a) == f.mul(p, p)
        elapsed = time.perf_counter() - t0
        assert elapsed < 30
        c.note(f"d=2..6, 1000 forms each over GF(2^1..2^8), {elapsed:.1f}s")


def listed_maps(field, rng):
    """The seven maps of the involution suite, each with the surface it acts on."""
    q = field.order
    ordi = K.ordinary(field, *(rng.randrange(1, q) for _ in range(3)))
    r1 = K.rank1(field, rng.randrange(q), rng.randrange(1, q))
    ss = K.supersingular(field, rng.randrange(q))
    Xo, Xr, Xs = (K.kummer_surface(f) for f in (ordi, r1, ss))
    s1, s2, tau = K.involutions(r1)
    return [
        ("T1", Xo, K.involutions(ordi)[0]),
        ("g1", Xo, K.pair_swaps(field)[0]),
        ("standard inversion", Xo, K.standard_inversion(field)),
        ("sigma1", Xr, s1),
        ("sigma2", Xr, s2),
        ("tau", Xr, tau),
        ("T", Xs, K.involutions(ss)[0]),
    ]


# orbit lines of these maps are not bitangent: g1 and tau are translations by
# 2-torsion points, and the standard inversion pairs p with a point off the ray
NOT_BITANGENT = {"g1", "standard inversion", "tau"}


def involution_suite(k_values=range(3, 7), n_samples=200):
    rng = random.Random(5)
    outcome = {}
    for k in k_values:
        field = field_make(2, k)
        for name, X, T in listed_maps(field, rng):
            pres = K.check_preserves(X, T)[0]
            inv = K.check_involutive(T)[0]
            bit = K.check_bitangent_involution(X, T, n_samples=n_samples, rng=rng).passed
            outcome.setdefault(name, []).append((pres, inv, bit))
    return outcome


@pytest.fixture(scope="module")
def suite_outcome():
    t0 = time.perf_counter()
    out = involution_suite()
    return out, time.perf_counter() - t0


def test_criterion_5_involutions(criterion, suite_outcome):
    outcome, elapsed = suite_outcome
    with criterion(5, "involution suite over GF(2^3..2^6)") as c:
        for name, runs in outcome.items():
            assert all(p and i for p, i, _ in runs), name
            expect = name not in NOT_BITANGENT
            assert all(b == expect for _, _, b in runs), name
        assert elapsed < 120
        c.note(
            f"all seven preserve X and are involutive; T1, sigma1, sigma2, T bitangent; "
            f"g1, standard inversion, tau correctly not bitangent; {elapsed:.1f}s"
        )


@pytest.mark.xfail(strict=True, reason="g1, the standard inversion and tau are not bitangent involutions")
def test_criterion_5_literal(criterion, suite_outcome):
    outcome, _ = suite_outcome
    with criterion(5, "involution suite over GF(2^3..2^6)") as c:
        c.note("literal reading requires all seven bitangent")
        failing = sorted(n for n, runs in outcome.items() if not all(b for _, _, b in runs))
        assert not failing, f"not bitangent: {', '.join(failing)}"


def test_criterion_6_fixed_locus(criterion):
    with criterion(6, "fixed locus of T1 is X meeting V(xy+zw)") as c:
        fam = K.random_family("ordinary", field_make(2, 6), random.Random(6))
        rep = K.fixed_locus_check(fam, n_samples=200, rng=random.Random(6))
        assert rep.passed
        assert rep.fixed > 0
        c.note(f"{rep.samples} points, {rep.fixed} fixed, 0 counterexamples")


def test_criterion_7_wall(criterion):
    with criterion(7, "Wall kinds I-IV: counts 7/4/2/1, ranks 3/2/1/0, listed lines found") as c:
        t0 = time.perf_counter()
        got = []
        for kind in QC.KINDS:
            C = QC.wall_fixture(kind)
            res = QC.plane_bitangent_count(C, k_max=8)
            assert res.stabilized
            assert set(QC.listed_bitangents(kind)) <= set(QC.bitangent_lines(C))
            got.append((res.count, res.rank))
        assert got == [(7, 3), (4, 2), (2, 1), (1, 0)]
        elapsed = time.perf_counter() - t0
        assert elapsed < 180
        c.note(f"k_max=8, {elapsed:.1f}s")


def test_criterion_8_centers(criterion):
    with criterion(8, "inseparable centers: empty for Kummer families, one for the referee surface") as c:
        rng = random.Random(8)
        for variant in K.VARIANTS:
            for field in (field_make(2, 3), F32):
                X = K.kummer_surface(K.random_family(variant, field, rng))
                assert inseparable_centers(X).points() == []
        f = field_make(2, 4)
        X = K.inseparable_center_surface(f, 3, 9)
        assert inseparable_centers(X).points() == [ProjPoint.of(f, [0, 0, 0, 1])]


def test_criterion_9_formulas(criterion):
    with criterion(9, "reference formulas (12,28), flex (24,24), char-2 order bound 6"):
        b = expected_bidegree(4, 0)
        assert (b.order, b.cls) == (12, 28)
        assert b.flex == (24, 24)
        assert expected_bidegree(4, 2).order_bound == 6


def smooth_section(fam, rng):
    X = K.kummer_surface(fam)
    while True:
        H, _ = K.generic_plane(fam, rng)
        C = QC.plane_section(X.F, H)
        if QC.curve_is_smooth(C).smooth:
            return X, H, C


def test_criterion_10_sections(criterion):
    with criterion(10, "plane sections: curve counts equal surface class counts 7/4/2") as c:
        rng = random.Random(10)
        f = field_make(2, 2)
        for variant, n in (("ordinary", 7), ("rank1", 4), ("supersingular", 2)):
            for _ in range(2):
                fam = K.random_family(variant, f, rng)
                X, H, C = smooth_section(fam, rng)
                res = QC.plane_bitangent_count(C, k_max=10)
                assert res.stabilized and res.count == n, (variant, res.cumulative_by_k)
                assert class_count(X, H).count == n
        c.note("two families each over GF(2^2), smooth sections, k_max=10")
