import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from bitcong.fields import QQ, FieldElement, field_make
from bitcong.poly import (
    BinaryForm,
    MultiPoly,
    PolyError,
    disc_sqrt_char2,
    discriminant,
    divide_exact,
    format_poly,
    is_square_form,
    mp_arith,
    parse_poly,
    partials,
    reduce_mod,
    restrict_to_line,
    resultant,
    squarefree_decomposition,
    substitute,
    universal_discriminant,
)

F2 = field_make(2, 1)
F4 = field_make(2, 2)
F8 = field_make(2, 3)


def P(text, field=F2, n=4):
    return parse_poly(text, field, n)


def rand_poly(rng, field, nvars, deg, nterms):
    terms = {}
    for _ in range(nterms):
        e = [0] * nvars
        for _ in range(deg):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = rng.randrange(1, field.order)
    return MultiPoly(field, nvars, terms)


polys = st.builds(
    lambda seed, deg, n: rand_poly(random.Random(seed), F4, 4, deg, n),
    st.integers(0, 10**9), st.integers(0, 4), st.integers(1, 6),
)


def test_arith_examples():
    x, y, z, w = MultiPoly.gens(F2, 4)
    assert mp_arith(x + y, x + y, "mul") == x**2 + y**2
    assert x + MultiPoly.zero(F2, 4) == x
    assert (x * y) * (z * w) == P("x*y*z*w")
    with pytest.raises(PolyError):
        x + MultiPoly.gens(F2, 3)[0]


def test_substitute_kummer_pattern():
    f = F8
    a, b, c = (FieldElement(f, v) for v in (3, 5, 6))
    x, y, z, w = MultiPoly.gens(f, 4)
    F = (x**2 * y**2 + z**2 * w**2) * a + (x**2 * z**2 + y**2 * w**2) * b + (x**2 * w**2 + y**2 * z**2) * c + x * y * z * w
    # variables of the target ring: s, t, x0, y0, z0, w0
    s, t, x0, y0, z0, w0 = MultiPoly.gens(f, 6)
    G = substitute(F, [s * x0, s * y0, t * z0, t * w0])
    assert substitute(x * y * z * w, [s * x0, s * y0, t * z0, t * w0]) == s**2 * t**2 * x0 * y0 * z0 * w0
    expected = (
        s**4 * x0**2 * y0**2 * a + t**4 * z0**2 * w0**2 * a
        + s**2 * t**2 * ((x0**2 * z0**2 + y0**2 * w0**2) * b + (x0**2 * w0**2 + y0**2 * z0**2) * c + x0 * y0 * z0 * w0)
    )
    assert G == expected
    assert substitute(F, [x, y, z, w]) == F


def test_partials_examples():
    x, y, z, w = MultiPoly.gens(F2, 4)
    assert partials(x**2) == [MultiPoly.zero(F2, 4)] * 4
    assert partials(x * y * z * w) == [y * z * w, x * z * w, x * y * w, x * y * z]
    F = P("x^2*y^2+z^2*w^2+x^2*z^2+y^2*w^2+x^2*w^2+y^2*z^2+x*y*z*w")
    assert partials(F) == [y * z * w, x * z * w, x * y * w, x * y * z]


def test_division_examples():
    x, y = MultiPoly.gens(F2, 2)
    assert divide_exact(x**2 * y, x) == x * y
    assert divide_exact(x**2 + y**2, x + y) == x + y
    assert divide_exact(x * y + 1, x) is None
    with pytest.raises(ZeroDivisionError):
        divide_exact(x, MultiPoly.zero(F2, 2))
    g = x**2 + x * y + 1
    assert not reduce_mod(g, g)


@given(polys, polys)
def test_divide_exact_inverts_multiplication(f, g):
    if not g:
        return
    assert divide_exact(f * g, g) == f


@given(polys, polys, polys)
def test_reduce_mod_contract(g, h, r):
    if not g:
        return
    lm = g.leading_monomial()
    rem = reduce_mod(g * h + r, g)
    # the remainder differs from the input by a multiple of g and has no term divisible by lm(g)
    assert divide_exact(g * h + r - rem, g) is not None
    assert not any(all(a >= b for a, b in zip(e, lm)) for e in rem.terms)


@given(polys)
def test_format_parse_roundtrip(f):
    assert parse_poly(format_poly(f), F4, 4) == f
    assert parse_poly(format_poly(f, ["x", "y", "z", "w"]), F4, 4) == f


def test_restrict_to_line():
    x, y, z, w = MultiPoly.gens(F2, 4)
    assert restrict_to_line(w**4, [1, 0, 0, 0], [0, 0, 0, 1]).coeffs == (0, 0, 0, 0, 1)
    F = P("x^2*y^2+z^2*w^2+x^2*z^2+y^2*w^2+x^2*w^2+y^2*z^2+x*y*z*w")
    form = restrict_to_line(F, [0, 0, 1, 0], [0, 0, 0, 1])
    assert form.coeffs == (0, 0, 1, 0, 0)
    with pytest.raises(PolyError, match="degenerate line"):
        restrict_to_line(F, [1, 1, 0, 0], [1, 1, 0, 0])


def test_resultant_examples():
    # little-endian lists
    r = resultant([Fraction(1), 0, Fraction(1)], [Fraction(-1), 0, Fraction(1)], QQ)
    assert r == QQ(Fraction(4))
    assert resultant([F4.gen.value, 1], [F4.gen.value, 1], F4) == 0


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5), st.lists(st.integers(-5, 5), min_size=2, max_size=5))
def test_resultant_matches_sympy(a, b):
    if a[-1] == 0 or b[-1] == 0:
        return
    # oracle: determinant of the textbook Sylvester matrix, built independently
    m, n = len(a) - 1, len(b) - 1
    fa, fb = list(reversed(a)), list(reversed(b))
    rows = [[0] * i + fa + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + fb + [0] * (m - 1 - i) for i in range(m)]
    ours = resultant([Fraction(c) for c in a], [Fraction(c) for c in b], QQ)
    assert ours.value == sympy.Matrix(rows).det()
    # sympy.resultant agrees up to its sign convention
    t = sympy.symbols("t")
    ref = sympy.resultant(sum(c * t**i for i, c in enumerate(a)), sum(c * t**i for i, c in enumerate(b)), t)
    assert abs(ours.value) == abs(ref)


@pytest.mark.parametrize("d", range(2, 7))
def test_universal_discriminant_matches_sympy(d):
    D = universal_discriminant(d)
    a = sympy.symbols(f"a0:{d + 1}")
    s = sympy.symbols("s")
    f = sum(a[i] * s ** (d - i) for i in range(d + 1))
    oracle = sympy.Poly(sympy.discriminant(f, s), *a)
    ours = {e: c for e, c in D.terms.items()}
    theirs = {e: Fraction(int(c)) for e, c in oracle.terms()}
    assert ours == theirs


def test_discriminant_small_cases():
    assert format_poly(universal_discriminant(2, char2=True), ["a0", "a1", "a2"]) == "a1^2"
    assert format_poly(disc_sqrt_char2(2), ["a0", "a1", "a2"]) == "a1"
    for d in range(2, 7):
        P_ = disc_sqrt_char2(d)
        assert P_.is_homogeneous() == d - 1
        assert P_ * P_ == universal_discriminant(d, char2=True)
    with pytest.raises(PolyError):
        universal_discriminant(7)


def test_squarefree_examples():
    s_t2_st = BinaryForm(F2, (0, 1, 0, 1, 0))  # s^3 t + s t^3 = st (s+t)^2
    dec = squarefree_decomposition(s_t2_st)
    assert dec.expand() == s_t2_st
    assert dec.signature() == (2, 1, 1)
    assert squarefree_decomposition(BinaryForm(F2, (1, 0, 0, 0, 0))).signature() == (4,)
    dec = squarefree_decomposition(BinaryForm(F2, (1, 0, 0, 0, 1)))
    assert [(g.coeffs, m) for g, m in dec.factors] == [((1, 1), 4)]


@given(st.lists(st.integers(0, 7), min_size=2, max_size=7))
def test_squarefree_expands_back(cs):
    f = BinaryForm(F8, tuple(cs))
    if f.is_zero():
        return
    dec = squarefree_decomposition(f)
    assert dec.expand() == f
    assert sum(dec.signature()) == f.degree


def test_square_forms():
    a, c, e = 3, 5, 7
    ok, root = is_square_form(BinaryForm(F8, (a, 0, c, 0, e)))
    assert ok
    assert root == BinaryForm(F8, (F8.sqrt_code(a), F8.sqrt_code(c), F8.sqrt_code(e)))
    assert not is_square_form(BinaryForm(F8, (0, 1, 0, 0, 0)))[0]
    ok, root = is_square_form(BinaryForm.from_elements(QQ, [1, 0, -2, 0, 1]))
    assert ok and root == BinaryForm.from_elements(QQ, [1, 0, -1])


@given(st.integers(2, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_discriminant_is_square_pointwise(d, k, seed):
    f = field_make(2, k)
    rng = random.Random(seed)
    form = BinaryForm(f, tuple(rng.randrange(f.order) for _ in range(d + 1)))
    P_ = disc_sqrt_char2(d).map_coeffs(lambda c: c, f)
    p = P_.eval_codes(form.coeffs)
    assert discriminant(form).value == f.mul(p, p)
