"""The three characteristic-2 Kummer quartic families, their Cremona
involutions, tropes, Plücker congruences and predicted bitangent sets."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import kernels
from .bitangent import (
    QuarticSurface,
    classify_line,
    draw_generic,
    inseparable_centers,
    order_count,
    class_count,
    trope_plane_detect,
)
from .fields import FieldElement, embedding, field_make, parse_element
from .linalg import nullspace
from .poly import (
    BinaryForm,
    MultiPoly,
    divide_exact,
    format_poly,
    reduce_mod,
    restrict_codes,
    substitute,
)
from .projgeom import (
    PAIRS,
    PluckerLine,
    ProjPlane,
    ProjPoint,
    coordinate_line,
    incidence,
    line_from_planes,
    line_from_points,
    normalize,
    point_on_line,
    random_plane,
    random_point,
    transversal_in_plane,
    transversal_through_point,
    wedge,
)

VARIANTS = ("ordinary", "rank1", "supersingular")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class KummerFamily:
    variant: str
    field: object
    params: tuple  # raw codes: (a, b, c) | (alpha, beta) | (alpha,)

    def __post_init__(self):
        f = self.field
        if f.characteristic != 2:
            raise FamilyError("Kummer families are defined in characteristic 2")
        if self.variant == "ordinary":
            if len(self.params) != 3:
                raise FamilyError("ordinary family needs a, b, c")
            for name, v in zip("abc", self.params):
                if f.is_zero(v):
                    raise FamilyError(f"{name} must be nonzero")
        elif self.variant == "rank1":
            if len(self.params) != 2:
                raise FamilyError("rank1 family needs alpha, beta")
            if f.is_zero(self.params[1]):
                raise FamilyError("beta must be nonzero")
        elif self.variant == "supersingular":
            if len(self.params) != 1:
                raise FamilyError("supersingular family needs alpha")
        else:
            raise FamilyError(f"unknown variant {self.variant!r}")

    def param(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.params[i])

    @property
    def label(self) -> str:
        names = {"ordinary": "abc", "rank1": ("alpha", "beta"), "supersingular": ("alpha",)}[self.variant]
        args = ",".join(f"{n}={self.field.fmt(v)}" for n, v in zip(names, self.params))
        return f"{self.variant}({args}) over {self.field.spec}"

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "field": self.field.spec,
            "params": [self.field.to_json(v) for v in self.params],
        }

    def over(self, big) -> "KummerFamily":
        """The same family with parameters pushed into a larger field."""
        emb = embedding(self.field, big)
        return KummerFamily(self.variant, big, tuple(emb[v] for v in self.params))


def ordinary(field, a, b, c) -> KummerFamily:
    return KummerFamily("ordinary", field, tuple(_code(field, v) for v in (a, b, c)))


def rank1(field, alpha, beta) -> KummerFamily:
    return KummerFamily("rank1", field, (_code(field, alpha), _code(field, beta)))


def supersingular(field, alpha) -> KummerFamily:
    return KummerFamily("supersingular", field, (_code(field, alpha),))


def _code(field, v):
    if isinstance(v, FieldElement):
        return v.value
    if isinstance(v, int):
        if not 0 <= v < field.order:
            raise FamilyError(f"element code {v} out of range for {field.spec}")
        return v
    return parse_element(field, str(v)).value


def random_family(variant: str, field, rng: random.Random) -> KummerFamily:
    q = field.order
    if variant == "ordinary":
        return KummerFamily(variant, field, tuple(rng.randrange(1, q) for _ in range(3)))
    if variant == "rank1":
        return KummerFamily(variant, field, (rng.randrange(q), rng.randrange(1, q)))
    if variant == "supersingular":
        return KummerFamily(variant, field, (rng.randrange(q),))
    raise FamilyError(f"unknown variant {variant!r}")


def _split_args(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_family(spec: str, field, rng: random.Random | None = None) -> KummerFamily:
    """``ordinary:a,b,c`` / ``rank1:alpha,beta`` / ``supersingular:alpha``; ``rand`` draws parameters."""
    m = re.fullmatch(r"\s*(\w+)\s*:\s*(.*)", spec)
    if not m:
        raise FamilyError(f"bad family spec {spec!r}")
    variant, rest = m.group(1).lower(), m.group(2).strip()
    if variant not in VARIANTS:
        raise FamilyError(f"unknown variant {variant!r}")
    if rest == "rand":
        return random_family(variant, field, rng or random.Random(0))
    args = [parse_element(field, a).value for a in _split_args(rest)]
    return KummerFamily(variant, field, tuple(args))


# -- surfaces ---------------------------------------------------------------------

def _gens(field):
    return MultiPoly.gens(field, 4)


def kummer_polynomial(fam: KummerFamily) -> MultiPoly:
    f = fam.field
    x, y, z, w = _gens(f)
    if fam.variant == "ordinary":
        a, b, c = (fam.param(i) for i in range(3))
        return (
            (x**2 * y**2 + z**2 * w**2) * a
            + (x**2 * z**2 + y**2 * w**2) * b
            + (x**2 * w**2 + y**2 * z**2) * c
            + x * y * z * w
        )
    if fam.variant == "rank1":
        al, be = fam.param(0), fam.param(1)
        return x**4 * (be * be) + x**2 * z**2 * (al * al) + x**2 * z * w + x * y * z**2 + y**2 * w**2 + z**4
    al = fam.param(0)
    return x**3 * w + x**3 * y * al + x**2 * y * z + x**2 * z**2 * (al * al) + x * y**3 + y**2 * w**2 + z**4


def kummer_surface(fam: KummerFamily) -> QuarticSurface:
    return QuarticSurface(kummer_polynomial(fam), fam.label)


def _pt(field, coords) -> ProjPoint:
    return ProjPoint.of(field, coords)


def listed_singular_points(fam: KummerFamily) -> list[ProjPoint]:
    f = fam.field
    if fam.variant == "ordinary":
        return [_pt(f, [int(i == j) for i in range(4)]) for j in range(4)]
    if fam.variant == "rank1":
        return [_pt(f, [0, 0, 0, 1]), _pt(f, [0, 1, 0, 0])]
    return [_pt(f, [0, 0, 0, 1])]


DEFAULT_SCAN_BUDGET = 300_000


@dataclass
class SingularReport:
    points: list
    verified: bool
    scan_fields: list
    extra: list

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "verified": self.verified,
            "scan_fields": self.scan_fields,
            "extra": [list(map(str, e)) for e in self.extra],
        }


def scan_extension_degrees(base, npoints, budget: int, depth: int = 3) -> list:
    """Fields GF(p^(k*m)), m = 1..depth, whose point count stays within the budget."""
    out = []
    for m in range(1, depth + 1):
        big = field_make(base.p, base.k * m) if m > 1 else base
        if npoints(big.order) > budget:
            break
        out.append(big)
    return out


def singular_locus_scan(X: QuarticSurface, budget: int = DEFAULT_SCAN_BUDGET, depth: int = 3):
    """All singular points of X over the extensions allowed by the budget."""
    found = []
    fields = scan_extension_degrees(X.field, lambda q: q**3 + q**2 + q + 1, budget, depth)
    for big in fields:
        emb = embedding(X.field, big)
        Xb = X.over(big, lambda c: emb[c])
        pts = kernels.p3_points(big)
        mask = kernels.common_zero_mask([Xb.F] + Xb.grads, pts)
        found.append((big, [tuple(int(v) for v in r) for r in pts[mask]]))
    return found


def singular_points(fam: KummerFamily, budget: int = DEFAULT_SCAN_BUDGET) -> SingularReport:
    """The listed singular points, verified exactly and by a bounded extension scan."""
    X = kummer_surface(fam)
    listed = listed_singular_points(fam)
    for p in listed:
        if not X.is_singular_at(p):
            raise AssertionError(f"listed point {p} is not singular on {X.name}")
    extra = []
    scanned = []
    for big, pts in singular_locus_scan(X, budget):
        scanned.append(big.spec)
        emb = embedding(fam.field, big)
        expected = {tuple(emb[c] for c in p.coords) for p in listed}
        for p in pts:
            if p not in expected:
                extra.append((big.spec, [big.fmt(c) for c in p]))
        if len(set(pts)) != len(expected) and not extra:
            raise AssertionError("listed singular points missing from the scan")
    if extra:
        raise AssertionError(f"unexpected singular points on {X.name}: {extra[:3]}")
    return SingularReport(listed, True, scanned, extra)


# -- tropes --------------------------------------------------------------------

def trope_data(fam: KummerFamily) -> list[tuple[ProjPlane, MultiPoly]]:
    """Trope planes with their conics, verified: F restricted to the plane is the conic squared."""
    f = fam.field
    x, y, z, w = _gens(f)
    sq = lambda i: FieldElement(f, f.sqrt_code(fam.params[i]))  # noqa: E731
    if fam.variant == "ordinary":
        ra, rb, rc = sq(0), sq(1), sq(2)
        data = [
            ([1, 0, 0, 0], z * w * ra + y * w * rb + y * z * rc),
            ([0, 1, 0, 0], z * w * ra + x * z * rb + x * w * rc),
            ([0, 0, 1, 0], x * y * ra + y * w * rb + x * w * rc),
            ([0, 0, 0, 1], x * y * ra + x * z * rb + y * z * rc),
        ]
    elif fam.variant == "rank1":
        data = [([1, 0, 0, 0], y * w + z**2), ([0, 0, 1, 0], x**2 * fam.param(1) + y * w)]
    else:
        data = [([1, 0, 0, 0], y * w + z**2)]
    F = kummer_polynomial(fam)
    out = []
    for coeffs, conic in data:
        plane = ProjPlane.of(f, coeffs)
        j = coeffs.index(1)
        images = [MultiPoly.zero(f, 4) if i == j else v for i, v in enumerate(_gens(f))]
        if substitute(F, images) != conic * conic:
            raise AssertionError(f"plane {plane} does not cut the double conic {conic}")
        out.append((plane, conic))
    return out


# -- Cremona maps ------------------------------------------------------------------

class CremonaMap:
    """A rational self-map of P^3 given by four forms of a common degree."""

    def __init__(self, name: str, components: Sequence[MultiPoly]):
        if len(components) != 4:
            raise ValueError("a Cremona map of P^3 needs 4 components")
        degs = {c.is_homogeneous() for c in components if c}
        if len(degs) != 1 or None in degs:
            raise ValueError(f"{name}: components must be homogeneous of a common degree")
        self.name = name
        self.components = tuple(components)
        self.degree = degs.pop()
        self.field = components[0].field
        factor, _ = strip_common_factor(list(self.components))
        if factor.degree() > 0:
            raise ValueError(f"{name}: components share the factor {format_poly(factor, ['x','y','z','w'])}")

    def __call__(self, v: Sequence) -> tuple:
        return tuple(c.eval_codes(v) for c in self.components)

    def compose(self, inner: "CremonaMap", name: str | None = None) -> list[MultiPoly]:
        """Components of self(inner(x)), without removing common factors."""
        return [substitute(c, list(inner.components)) for c in self.components]

    def __repr__(self) -> str:
        names = ["x", "y", "z", "w"]
        return f"{self.name}: [" + ", ".join(format_poly(c, names) for c in self.components) + "]"

    def to_json(self) -> dict:
        names = ["x", "y", "z", "w"]
        return {"name": self.name, "components": [format_poly(c, names) for c in self.components]}


def proportional_maps(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> bool:
    """Whether f and g agree up to a common polynomial factor (f_i g_j = f_j g_i)."""
    for i in range(4):
        for j in range(i + 1, 4):
            if f[i] * g[j] != f[j] * g[i]:
                return False
    return any(f) and any(g)


def _pth_root(p: MultiPoly) -> MultiPoly | None:
    fld = p.field
    ch = fld.characteristic
    if ch == 0:
        return None
    out = {}
    for e, c in p.terms.items():
        if any(k % ch for k in e):
            return None
        out[tuple(k // ch for k in e)] = fld.frob(c, -1)
    return MultiPoly(fld, p.nvars, out)


def _monomial(field, nvars, exps) -> MultiPoly:
    return MultiPoly.monomial(field, exps, 1)


def strip_common_factor(polys: list[MultiPoly]) -> tuple[MultiPoly, list[MultiPoly]]:
    """Remove a common factor found by candidate probes.

    Candidates: the common monomial content, then the non-monomial parts of
    each polynomial together with their iterated p-th roots.  Each candidate is
    divided out as often as it divides every nonzero polynomial.
    """
    nz = [p for p in polys if p]
    if not nz:
        raise ValueError("all polynomials are zero")
    fld, n = nz[0].field, nz[0].nvars
    factor = MultiPoly.const(fld, n, 1)
    content = [min(p.monomial_content()[i] for p in nz) for i in range(n)]
    cur = list(polys)
    if any(content):
        m = _monomial(fld, n, content)
        cur = [divide_exact(p, m) if p else p for p in cur]
        factor = factor * m
    cands = []
    for p in sorted((p for p in cur if p), key=lambda p: (p.degree(), len(p.terms))):
        mc = p.monomial_content()
        core = divide_exact(p, _monomial(fld, n, mc)) if any(mc) else p
        while core is not None and core.degree() > 0:
            if core not in cands:
                cands.append(core)
            core = _pth_root(core)
    cands.sort(key=lambda c: (c.degree(), len(c.terms)))
    for c in cands:
        while True:
            if all(q.degree() < c.degree() for q in cur if q):
                break
            divided = [divide_exact(q, c) if q else q for q in cur]
            if any(d is None for d, q in zip(divided, cur) if q):
                break
            cur = divided
            factor = factor * c
    # normalize: first nonzero polynomial gets leading coefficient 1
    lead = next(p for p in cur if p).leading_coefficient()
    if lead != fld.one_code:
        inv = fld.inv(lead)
        cur = [p.scale(inv) for p in cur]
        factor = factor.scale(lead)
    return factor, cur


def involutions(fam: KummerFamily) -> list[CremonaMap]:
    """Ordinary: T1, T2, T3.  Rank 1: sigma1, sigma2 and the linear map tau.  Supersingular: T."""
    f = fam.field
    x, y, z, w = _gens(f)
    if fam.variant == "ordinary":
        return [
            CremonaMap("T1", [x * z * w, y * z * w, x * y * z, x * y * w]),
            CremonaMap("T2", [x * y * w, x * y * z, y * z * w, x * z * w]),
            CremonaMap("T3", [x * y * z, x * y * w, x * z * w, y * z * w]),
        ]
    if fam.variant == "rank1":
        be = fam.param(1)
        return [
            CremonaMap("sigma1", [x * z**2, y * z**2, x**2 * z * be, x**2 * w * be]),
            CremonaMap("sigma2", [x**2 * z, x**2 * w, x * z**2, y * z**2]),
            CremonaMap("tau", [z, w, x * be, y * be]),
        ]
    al = fam.param(0)
    return [
        CremonaMap(
            "T",
            [x**3, x**2 * y, x**3 * al + x**2 * z + x * y**2, x**2 * y * al + x**2 * w + y**3],
        )
    ]


def bitangent_involutions(fam: KummerFamily) -> list[CremonaMap]:
    """The involutions whose orbit lines are bitangent (tau is a projective symmetry, not one of them)."""
    return [T for T in involutions(fam) if T.name != "tau"]


def standard_inversion(field) -> CremonaMap:
    x, y, z, w = _gens(field)
    return CremonaMap("T", [y * z * w, x * z * w, x * y * w, x * y * z])


def pair_swaps(field) -> list[CremonaMap]:
    x, y, z, w = _gens(field)
    return [
        CremonaMap("g1", [y, x, w, z]),
        CremonaMap("g2", [z, w, x, y]),
        CremonaMap("g3", [w, z, y, x]),
    ]


def check_preserves(X: QuarticSurface, T: CremonaMap) -> tuple[bool, MultiPoly | None]:
    """F o T = M * F; returns (holds, M)."""
    FT = substitute(X.F, list(T.components))
    M = divide_exact(FT, X.F)
    return M is not None, M


def check_involutive(T: CremonaMap) -> tuple[bool, MultiPoly | None]:
    """T o T = h * identity for a polynomial h; returns (holds, h)."""
    TT = T.compose(T)
    x = _gens(T.field)
    h = divide_exact(TT[0], x[0])
    if h is None or not h:
        return False, None
    ok = all(TT[i] == h * x[i] for i in range(4))
    return ok, h if ok else None


# -- points on the surface -------------------------------------------------------------

EXHAUSTIVE_POINT_LIMIT = 40_000


def all_surface_points(X: QuarticSurface) -> list[tuple]:
    """Every point of X over its field (small fields only)."""
    pts = kernels.p3_points(X.field)
    mask = kernels.common_zero_mask([X.F], pts)
    return [tuple(int(v) for v in r) for r in pts[mask]]


def surface_points(
    X: QuarticSurface, rng: random.Random, n: int, exclude=(), allow_fewer: bool = False
) -> list[tuple]:
    """n distinct points of X (raw codes), found by solving for the last coordinate.

    Over fields small enough to enumerate, and with ``allow_fewer``, returns a
    random selection of all points when X has fewer than n of them.
    """
    fld = X.field
    q = fld.order
    if allow_fewer and q**3 + q**2 + q + 1 <= EXHAUSTIVE_POINT_LIMIT:
        ex = set(exclude)
        pts = [p for p in all_surface_points(X) if p not in ex]
        rng.shuffle(pts)
        return pts[:n]
    w_coeffs = [MultiPoly.zero(fld, 4) for _ in range(5)]
    for e, c in X.F.terms.items():
        w_coeffs[e[3]] = w_coeffs[e[3]] + MultiPoly(fld, 4, {e[:3] + (0,): c})
    allw = np.arange(fld.order, dtype=np.int64) if fld.vectorized else None
    seen: set = set(exclude)
    out: list = []
    tries = 0
    limit = 200 * n + 1000
    while len(out) < n and tries < limit:
        tries += 1
        head = [rng.randrange(fld.order) for _ in range(3)]
        if not any(head):
            continue
        cs = [p.eval_codes(head + [0]) for p in w_coeffs]
        if allw is not None:
            acc = np.full(fld.order, cs[0], dtype=np.int64)
            for k in range(1, 5):
                if cs[k]:
                    acc = fld.vadd(acc, fld.vmul_scalar(fld.vpow(allw, k), cs[k]))
            roots = [int(r) for r in np.nonzero(acc == 0)[0]]
        else:
            roots = [
                wv for wv in range(fld.order)
                if fld.is_zero(X.F.eval_codes(head + [wv]))
            ]
        if not roots:
            continue
        r = roots[rng.randrange(len(roots))]
        pt = normalize(fld, head + [r])
        if pt not in seen:
            seen.add(pt)
            out.append(pt)
    if len(out) < n:
        raise RuntimeError(f"found only {len(out)} of {n} points on {X.name}")
    return out


# -- bitangent involution checks ----------------------------------------------------

@dataclass
class InvolutionReport:
    name: str
    symbolic: bool
    odd_coefficients_identically_zero: bool
    remainder: str | None
    samples: int
    skipped: int
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.symbolic and not self.failures

    def to_json(self) -> dict:
        return {
            "map": self.name,
            "symbolic": self.symbolic,
            "odd_coefficients_identically_zero": self.odd_coefficients_identically_zero,
            "remainder": self.remainder,
            "samples": self.samples,
            "skipped": self.skipped,
            "failures": self.failures,
            "passed": self.passed,
        }


def odd_coefficients(X: QuarticSurface, T: CremonaMap) -> tuple[MultiPoly, MultiPoly]:
    """The s^3 t and s t^3 coefficients of F(s x + t T(x)), as polynomials in x."""
    x = _gens(X.field)
    b = MultiPoly.zero(X.field, 4)
    d = MultiPoly.zero(X.field, 4)
    comps = list(T.components)
    for i, g in enumerate(X.grads):
        if g:
            b = b + comps[i] * g
            d = d + x[i] * substitute(g, comps)
    return b, d


def check_bitangent_involution(
    X: QuarticSurface, T: CremonaMap, n_samples: int = 200, rng: random.Random | None = None, field=None
) -> InvolutionReport:
    """Symbolic tier (odd coefficients vanish modulo F) plus sampled classification on X-points."""
    if X.field.characteristic != 2:
        raise ValueError("the symbolic tier uses the characteristic-2 square criterion")
    rng = rng or random.Random(0)
    b, d = odd_coefficients(X, T)
    rb, rd = reduce_mod(b, X.F), reduce_mod(d, X.F)
    symbolic = not rb and not rd
    remainder = None
    if not symbolic:
        remainder = format_poly(rb if rb else rd, ["x", "y", "z", "w"])
    Xs, Ts = X, T
    if field is not None and field != X.field:
        emb = embedding(X.field, field)
        lift = lambda c: emb[c]  # noqa: E731
        Xs = X.over(field, lift)
        Ts = CremonaMap(T.name, [c.map_coeffs(lift, field) for c in T.components])
    fld = Xs.field
    pts = surface_points(Xs, rng, n_samples, allow_fewer=True)
    failures, skipped = [], 0
    for p in pts:
        tp = Ts(p)
        if all(fld.is_zero(c) for c in tp) or Xs.is_singular_at(p):
            skipped += 1
            continue
        tp = normalize(fld, tp)
        if tp == p:
            skipped += 1
            continue
        line = line_from_points(p, tp, fld)
        cls = classify_line(Xs, line, (p, tp))
        if not cls.is_bitangent:
            failures.append({"point": [fld.fmt(c) for c in p], "signature": list(cls.signature)})
    return InvolutionReport(T.name, symbolic, not b and not d, remainder, len(pts), skipped, failures)


# -- Plücker congruences ---------------------------------------------------------------

def plucker_minors(T: CremonaMap) -> list[MultiPoly]:
    x = _gens(T.field)
    c = T.components
    return [x[i] * c[j] - x[j] * c[i] for i, j in PAIRS]


P_NAMES = ["p12", "p13", "p14", "p23", "p24", "p34"]


def plucker_poly(text: str, field) -> MultiPoly:
    from .poly import parse_poly

    return parse_poly(text, field, 6, names=P_NAMES)


@dataclass
class RelationCheck:
    relation: str
    identity: bool
    mod_F: bool | None = None
    sampled_zero: bool | None = None
    samples: int = 0

    @property
    def status(self) -> str:
        if self.identity:
            return "identity"
        if self.mod_F:
            return "modulo F"
        if self.sampled_zero:
            return "set-theoretic only"
        return "fails"

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "status": self.status,
            "identity": self.identity,
            "mod_F": self.mod_F,
            "sampled_zero": self.sampled_zero,
            "samples": self.samples,
        }


@dataclass
class PluckerCongruence:
    raw: list
    factor: MultiPoly
    minors: list
    relations: list

    def to_json(self) -> dict:
        names = ["x", "y", "z", "w"]
        return {
            "common_factor": format_poly(self.factor, names),
            "minors": [format_poly(m, names) for m in self.minors],
            "relations": [r.to_json() for r in self.relations],
        }


def plucker_congruence(
    T: CremonaMap,
    relations: Sequence[str] = (),
    X: QuarticSurface | None = None,
    n_samples: int = 50,
    rng: random.Random | None = None,
) -> PluckerCongruence:
    """Reduced Plücker minors of <x, T(x)> and a check of each relation."""
    raw = plucker_minors(T)
    factor, minors = strip_common_factor(raw)
    checks = []
    pts = None
    for rel in relations:
        R = plucker_poly(rel, T.field)
        val = substitute(R, minors)
        chk = RelationCheck(rel, identity=not val)
        if not val and X is None:
            checks.append(chk)
            continue
        if X is not None:
            chk.mod_F = not reduce_mod(val, X.F)
            if pts is None:
                pts = surface_points(X, rng or random.Random(0), n_samples)
            chk.samples = len(pts)
            chk.sampled_zero = all(T.field.is_zero(val.eval_codes(p)) for p in pts)
        checks.append(chk)
    return PluckerCongruence(raw, factor, minors, checks)


def congruence_relations(fam: KummerFamily) -> dict[str, list[str]]:
    """Declared Plücker relations per involution."""
    if fam.variant == "rank1":
        return {"sigma2": ["p13", "p14 + p23", "p12*p34 + p14*p23"]}
    if fam.variant == "supersingular":
        return {"T": ["p12", "p14 + p23", "p13*p24 + p14*p23"]}
    return {}


CUBIC_RELATION = "p12*p13*p23 + p12*p14*p24 + p13*p14*p34 + p23*p24*p34"
PLUCKER_QUADRIC = "p12*p34 + p13*p24 + p14*p23"


# -- predictions ----------------------------------------------------------------------

def skew_pairs(fam: KummerFamily) -> list[tuple[PluckerLine, PluckerLine]]:
    f = fam.field
    L = lambda i, j: coordinate_line(f, (i, j))  # noqa: E731
    if fam.variant == "ordinary":
        return [(L(0, 1), L(2, 3)), (L(0, 2), L(1, 3)), (L(0, 3), L(1, 2))]
    if fam.variant == "rank1":
        return [(L(0, 1), L(2, 3))]
    return []


def cone_vertex_line(fam: KummerFamily) -> PluckerLine | None:
    """The line every ray of the cone congruence meets (V(x,z) for rank 1, V(x,y) supersingular)."""
    if fam.variant == "rank1":
        return coordinate_line(fam.field, (0, 2))
    if fam.variant == "supersingular":
        return coordinate_line(fam.field, (0, 1))
    return None


def cone_linear_forms(fam: KummerFamily) -> list[tuple]:
    """Linear Plücker relations of the cone congruence, as coefficient 6-vectors."""
    f = fam.field
    one, zero = f.one_code, f.zero_code
    if fam.variant == "rank1":
        return [(zero, one, zero, zero, zero, zero), (zero, zero, one, one, zero, zero)]
    if fam.variant == "supersingular":
        return [(one, zero, zero, zero, zero, zero), (zero, zero, one, one, zero, zero)]
    return []


class DegenerateSample(ValueError):
    pass


def _solve_ray(field, forms, fixed, build) -> tuple:
    """Solve sum_k form[k] * wedge(fixed, v)_k = 0 for v; the solution must be a pencil through ``fixed``."""
    rows = []
    for form in forms:
        row = []
        for m in range(4):
            e = [field.one_code if t == m else field.zero_code for t in range(4)]
            p = build(fixed, e)
            acc = field.zero_code
            for c, v in zip(form, p):
                acc = field.add(acc, field.mul(c, v))
            row.append(acc)
        rows.append(row)
    ns = nullspace(field, rows, 4)
    others = [v for v in ns if any(not field.is_zero(c) for c in wedge(field, fixed, v))]
    if len(ns) != 2 or not others:
        raise DegenerateSample("cone ray is not unique at this sample")
    return tuple(others[0])


def _primal_from_planes(field, u, v) -> tuple:
    f = field
    pi12, pi13, pi14, pi23, pi24, pi34 = wedge(field, u, v)
    return (pi34, f.neg(pi24), pi23, pi14, f.neg(pi13), pi12)


def cone_ray_through(fam: KummerFamily, q: ProjPoint) -> PluckerLine:
    f = fam.field
    r = _solve_ray(f, cone_linear_forms(fam), q.coords, lambda a, b: wedge(f, a, b))
    return line_from_points(q.coords, r, f)


def cone_ray_in(fam: KummerFamily, plane: ProjPlane) -> PluckerLine:
    f = fam.field
    v = _solve_ray(f, cone_linear_forms(fam), plane.coeffs, lambda a, b: _primal_from_planes(f, a, b))
    return line_from_planes(plane.coeffs, v, f)


def predicted_bitangents(fam: KummerFamily, through: ProjPoint | None = None, in_plane: ProjPlane | None = None) -> list[PluckerLine]:
    if (through is None) == (in_plane is None):
        raise ValueError("give exactly one of a point or a plane")
    out = []
    if through is not None:
        for l1, l2 in skew_pairs(fam):
            out.append(transversal_through_point(l1, l2, through).line)
        if fam.variant != "ordinary":
            out.append(cone_ray_through(fam, through))
        return out
    for plane, _ in trope_data(fam):
        out.append(line_from_planes(plane, in_plane))
    for l1, l2 in skew_pairs(fam):
        out.append(transversal_in_plane(l1, l2, in_plane).line)
    if fam.variant != "ordinary":
        out.append(cone_ray_in(fam, in_plane))
    return out


def expected_bidegree_family(fam: KummerFamily) -> tuple[int, int]:
    return {"ordinary": (3, 7), "rank1": (2, 4), "supersingular": (1, 2)}[fam.variant]


def distinguished_lines(fam: KummerFamily) -> list[PluckerLine]:
    lines = [l for pair in skew_pairs(fam) for l in pair]
    v = cone_vertex_line(fam)
    if v is not None:
        lines.append(v)
    return lines


def generic_point(fam: KummerFamily, rng: random.Random, X: QuarticSurface | None = None) -> tuple[ProjPoint, int]:
    """A sample point under the redraw policy: off X, off the trope planes and the distinguished lines."""
    X = X or kummer_surface(fam)
    planes = [p for p, _ in trope_data(fam)]
    lines = distinguished_lines(fam)
    rejects = [
        lambda q: X.contains(q),
        lambda q: any(p.contains_point(q) for p in planes),
        lambda q: any(point_on_line(l, q) for l in lines),
    ]
    return draw_generic(rng, lambda r: random_point(fam.field, r), rejects)


def generic_plane(fam: KummerFamily, rng: random.Random) -> tuple[ProjPlane, int]:
    """A sample plane under the redraw policy: no singular point of X on it."""
    sing = listed_singular_points(fam)
    rejects = [lambda P: any(P.contains_point(s) for s in sing)]
    return draw_generic(rng, lambda r: random_plane(fam.field, r), rejects)


# -- fixed locus ----------------------------------------------------------------------

@dataclass
class FixedLocusReport:
    samples: int
    skipped: int
    fixed: int
    fixed_not_on_quadric: int
    quadric_not_fixed: int

    @property
    def passed(self) -> bool:
        return self.fixed_not_on_quadric == 0 and self.quadric_not_fixed == 0

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "skipped": self.skipped,
            "fixed": self.fixed,
            "fixed_not_on_quadric": self.fixed_not_on_quadric,
            "quadric_not_fixed": self.quadric_not_fixed,
            "passed": self.passed,
        }


def fixed_locus_check(
    fam: KummerFamily, n_samples: int = 200, rng: random.Random | None = None, quadric_samples: int = 50
) -> FixedLocusReport:
    """T1(p) = p exactly when xy + zw = 0, over sampled points of X.

    Random points of X rarely lie on the quadric, so up to ``quadric_samples``
    points of X on V(xy + zw) are added when the field is small enough to scan.
    """
    if fam.variant != "ordinary":
        raise FamilyError("the fixed locus check concerns the ordinary family")
    rng = rng or random.Random(0)
    f = fam.field
    X = kummer_surface(fam)
    T1 = involutions(fam)[0]
    sing = {p.coords for p in listed_singular_points(fam)}
    pts = surface_points(X, rng, n_samples, exclude=sing)
    q = f.order
    if quadric_samples and q**3 + q**2 + q + 1 <= 10 * EXHAUSTIVE_POINT_LIMIT:
        x, y, z, w = _gens(f)
        grid = kernels.p3_points(f)
        mask = kernels.common_zero_mask([X.F, x * y + z * w], grid)
        extra = [tuple(int(v) for v in r) for r in grid[mask]]
        extra = [p for p in extra if p not in sing and p not in set(pts)]
        rng.shuffle(extra)
        pts += extra[:quadric_samples]
    skipped = fixed = bad1 = bad2 = 0
    for p in pts:
        tp = T1(p)
        if all(f.is_zero(c) for c in tp):
            skipped += 1
            continue
        is_fixed = normalize(f, tp) == p
        on_quadric = f.is_zero(f.add(f.mul(p[0], p[1]), f.mul(p[2], p[3])))
        fixed += is_fixed
        bad1 += is_fixed and not on_quadric
        bad2 += on_quadric and not is_fixed
    return FixedLocusReport(len(pts), skipped, fixed, bad1, bad2)


# -- fixtures -----------------------------------------------------------------------

def cyclic_quartic(field) -> tuple[QuarticSurface, CremonaMap]:
    """x0^3 x1 + x1^3 x2 + x2^3 x3 + x3^3 x0 with the involution [x2, x3, x0, x1]."""
    x0, x1, x2, x3 = _gens(field)
    F = x0**3 * x1 + x1**3 * x2 + x2**3 * x3 + x3**3 * x0
    return QuarticSurface(F, "cyclic quartic"), CremonaMap("sigma", [x2, x3, x0, x1])


def cyclic_invariants(field) -> list[MultiPoly]:
    x0, x1, x2, x3 = _gens(field)
    return [x0 + x2, x1 + x3, x0 * x2, x1 * x3, x0 * x1 + x2 * x3]


def cyclic_invariant_relation(field) -> MultiPoly:
    """p0^2 p3 + p0 p1 p4 + p1^2 p2 + p4^2 evaluated at the invariants (zero in characteristic 2)."""
    p0, p1, p2, p3, p4 = cyclic_invariants(field)
    return p0**2 * p3 + p0 * p1 * p4 + p1**2 * p2 + p4**2


def cyclic_in_invariants(field) -> MultiPoly:
    """F written through the invariants: p4 (p3 + p0^2) + (p2 + p1^2)(p0 p1 + p4)."""
    p0, p1, p2, p3, p4 = cyclic_invariants(field)
    return p4 * (p3 + p0**2) + (p2 + p1**2) * (p0 * p1 + p4)


def inseparable_center_surface(field, a=0, b=0) -> QuarticSurface:
    """w^2 (a x + b y + z)^2 + x (y^3 + x^2 z)."""
    x, y, z, w = _gens(field)
    a = FieldElement(field, _code(field, a))
    b = FieldElement(field, _code(field, b))
    L = x * a + y * b + z
    return QuarticSurface(w**2 * L**2 + x * (y**3 + x**2 * z), "inseparable-center quartic")


@dataclass
class FixtureResult:
    name: str
    checks: dict

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.checks.values())

    def to_json(self) -> dict:
        return {"name": self.name, "checks": self.checks, "passed": self.passed}


def verify_cyclic_fixture(field=None, n_samples: int = 50, rng: random.Random | None = None) -> FixtureResult:
    field = field or field_make(2, 4)
    rng = rng or random.Random(0)
    X, sigma = cyclic_quartic(field)
    checks = {}
    checks["invariant_relation"] = not cyclic_invariant_relation(field)
    checks["F_in_invariants"] = cyclic_in_invariants(field) == X.F
    checks["preserves"] = check_preserves(X, sigma)[0]
    checks["involutive"] = check_involutive(sigma)[0]
    checks["singular_1111"] = X.is_singular_at([1, 1, 1, 1])
    # (s + t)^2 divides F(s p + t sigma(p)): tangency at p + sigma(p) on V(x0+x2, x1+x3)
    st2 = BinaryForm(field, (1, 0, 1))  # s^2 + t^2
    ok = True
    for p in surface_points(X, rng, n_samples):
        sp = sigma(p)
        if normalize(field, sp) == p:
            continue
        form = BinaryForm(field, tuple(restrict_codes(X.F, p, sp, 4)))
        from .poly import u_divmod

        _, r = u_divmod(field, form.dehomogenize(), st2.dehomogenize())
        ok = ok and not r
    checks["tangent_on_fixed_line"] = ok
    return FixtureResult("cyclic quartic", checks)


def verify_center_fixture(field=None, a=1, b=1, rng: random.Random | None = None) -> FixtureResult:
    field = field or field_make(2, 4)
    rng = rng or random.Random(0)
    X = inseparable_center_surface(field, a, b)
    checks = {}
    locus = inseparable_centers(X)
    checks["unique_center_0001"] = locus.dimension == 0 and locus.basis[0] == (0, 0, 0, 1)
    is_trope, conic = trope_plane_detect(X, ProjPlane.of(field, [1, 0, 0, 0]))
    x, y, z, w = _gens(field)
    bb = FieldElement(field, _code(field, b))
    checks["trope_V(x)"] = is_trope and conic == w * (y * bb + z)
    center = ProjPoint.of(field, [0, 0, 0, 1])
    q = random_point(field, rng)
    while X.contains(q) or q == center:
        q = random_point(field, rng)
    rep = order_count(X, q)
    checks["alpha_plane_ray"] = line_from_points(q, center) in rep.witnesses
    return FixtureResult("inseparable-center quartic", checks)


def fixture_surfaces(field=None) -> dict:
    field = field or field_make(2, 4)
    Xc, sigma = cyclic_quartic(field)
    return {
        "cyclic": {
            "surface": Xc,
            "involution": sigma,
            "singular_point": ProjPoint.of(field, [1, 1, 1, 1]),
            "fixed_line": (ProjPlane.of(field, [1, 0, 1, 0]), ProjPlane.of(field, [0, 1, 0, 1])),
            "verify": verify_cyclic_fixture,
        },
        "inseparable_center": {
            "surface": inseparable_center_surface(field, 1, 1),
            "center": ProjPoint.of(field, [0, 0, 0, 1]),
            "trope_plane": ProjPlane.of(field, [1, 0, 0, 0]),
            "verify": verify_center_fixture,
        },
    }
