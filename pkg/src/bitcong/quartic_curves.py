"""Plane quartic curves in characteristic 2: Wall normal forms, bounded
smoothness scans, bitangent counts by extension enumeration and the 2-rank."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import kernels
from .bitangent import _run_shards, plane_restriction
from .fields import FieldElement, embedding, field_make
from .poly import BinaryForm, MultiPoly, format_poly, is_square_form, partials, restrict_codes
from .projgeom import normalize

KINDS = ("I", "II", "III", "IV")
COUNT_TO_RANK = {7: 3, 4: 2, 2: 1, 1: 0}
DEFAULT_SMOOTH_BUDGET = 1 << 21
MAX_KERNEL_ORDER = 1 << 22


class CurveError(ValueError):
    pass


class PlaneQuartic:
    """C = V(f) for a ternary quartic f over a field of characteristic 2."""

    def __init__(self, C: MultiPoly, name: str | None = None):
        if C.nvars != 3:
            raise CurveError("a plane quartic needs 3 variables")
        if C.field.characteristic != 2:
            raise CurveError("plane quartics are handled in characteristic 2")
        if not C or C.is_homogeneous() != 4:
            raise CurveError("C must be a nonzero homogeneous quartic")
        if all(k % 2 == 0 for e in C.terms for k in e):
            raise CurveError("C is a double conic")
        self.C = C
        self.field = C.field
        self.grads = partials(C)
        self.name = name or format_poly(C, ["x", "y", "z"])

    def over(self, big) -> "PlaneQuartic":
        emb = embedding(self.field, big)
        return PlaneQuartic(self.C.map_coeffs(lambda c: emb[c], big), self.name)

    def __repr__(self) -> str:
        return f"PlaneQuartic({self.name})"


# -- Wall normal forms ---------------------------------------------------------------

_E = {
    "100": (1, 0, 0), "010": (0, 1, 0), "001": (0, 0, 1),
    "110": (1, 1, 0), "101": (1, 0, 1), "011": (0, 1, 1), "111": (1, 1, 1),
}
KIND_POINTS = {
    "I": ["100", "010", "001", "110", "101", "011", "111"],
    "II": ["100", "010", "001", "011"],
    "III": ["100", "001"],
    "IV": ["001"],
}


@dataclass(frozen=True)
class WallForm:
    kind: str
    Q: MultiPoly

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CurveError(f"unknown Wall kind {self.kind!r}")
        Q = self.Q
        if Q.nvars != 3 or Q.is_homogeneous() != 2:
            raise CurveError("Q must be a ternary quadratic form")
        for key in KIND_POINTS[self.kind]:
            pt = _E[key]
            if Q.field.is_zero(Q.eval_codes(pt)):
                raise CurveError(f"Q({','.join(map(str, pt))})=0")

    def evaluations(self) -> dict:
        f = self.Q.field
        return {f"Q({','.join(map(str, _E[k]))})": f.fmt(self.Q.eval_codes(_E[k])) for k in KIND_POINTS[self.kind]}


def wall_quartic(kind: str, field) -> MultiPoly:
    """The non-square part of the normal form."""
    x, y, z = MultiPoly.gens(field, 3)
    return {
        "I": x * y * z * (x + y + z),
        "II": x * y * z * (y + z),
        "III": x * y * (y**2 + x * z),
        "IV": x * (y**3 + x**2 * z),
    }[kind]


def wall_form(kind: str, Q: MultiPoly) -> PlaneQuartic:
    wf = WallForm(kind, Q)
    return PlaneQuartic(wf.Q * wf.Q + wall_quartic(kind, Q.field), f"Wall {kind}")


def listed_bitangents(kind: str, field=None) -> list[tuple]:
    """The explicit bitangents of each normal form, as dual coordinates [a,b,c] of V(ax+by+cz)."""
    lists = {
        "I": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        "II": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)],
        "III": [(1, 0, 0), (0, 1, 0)],
        "IV": [(1, 0, 0)],
    }
    if kind not in lists:
        raise CurveError(f"unknown Wall kind {kind!r}")
    return list(lists[kind])


def ternary_quadrics(field):
    """All nonzero ternary quadratic forms, fewest terms first (deterministic)."""
    monos = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (0, 1, 1), (1, 0, 1)]
    nz = range(1, field.order)
    for nterms in range(1, 7):
        for support in itertools.combinations(monos, nterms):
            for coeffs in itertools.product(nz, repeat=nterms):
                yield MultiPoly(field, 3, dict(zip(support, coeffs)))


def search_wall_q(kind: str, field, depth: int = 2, limit: int = 5000) -> MultiPoly | None:
    """First admissible Q (in ``ternary_quadrics`` order) giving a curve that is smooth to ``depth``."""
    for i, Q in enumerate(ternary_quadrics(field)):
        if i >= limit:
            break
        try:
            C = wall_form(kind, Q)
        except CurveError:
            continue
        if curve_is_smooth(C, depth).smooth:
            return Q
    return None


def _q(field, text: str) -> MultiPoly:
    from .poly import parse_poly

    return parse_poly(text, field, 3, names=["x", "y", "z"])


# Pinned fixtures.  Kind I has no admissible Q over GF(2): a quadratic function
# on F_2^3 that is 1 at all seven nonzero vectors would be 1 + (1+x)(1+y)(1+z),
# which has degree 3.  The GF(4) form below was found by ``search_wall_q``.
WALL_FIXTURES = {
    "I": ("GF(2^2)", "x^2 + x*y + y^2 + [0,1]*z^2"),
    "II": ("GF(2)", "x^2 + y^2 + z^2 + y*z"),
    "III": ("GF(2)", "x^2 + z^2"),
    "IV": ("GF(2)", "z^2"),
}


def wall_fixture(kind: str) -> PlaneQuartic:
    from .fields import parse_field

    spec, text = WALL_FIXTURES[kind]
    field = parse_field(spec)
    return wall_form(kind, _q(field, text))


# -- smoothness ----------------------------------------------------------------------

@dataclass
class SmoothnessReport:
    smooth: bool
    depth: int
    fields: list
    singular_point: tuple | None = None
    singular_field: str | None = None
    truncated: bool = False

    @property
    def verdict(self) -> str:
        if not self.smooth:
            return "singular"
        return f"smooth up to depth {self.depth}"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "smooth": self.smooth,
            "depth": self.depth,
            "fields": self.fields,
            "singular_point": self.singular_point,
            "singular_field": self.singular_field,
            "truncated": self.truncated,
        }


def curve_is_smooth(C: PlaneQuartic, depth: int = 3, budget: int = DEFAULT_SMOOTH_BUDGET) -> SmoothnessReport:
    """Scan P^2 over GF(2^(k m)), m = 1..depth, for common zeros of C and its partials.

    Extensions whose point count exceeds ``budget`` are skipped and the report
    is marked truncated, with ``depth`` the last degree actually scanned.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    base = C.field
    scanned = []
    reached = 0
    for m in range(1, depth + 1):
        big = base if m == 1 else field_make(base.p, base.k * m)
        q = big.order
        if q * q + q + 1 > budget or q > MAX_KERNEL_ORDER:
            return SmoothnessReport(True, reached, scanned, truncated=True)
        Cb = C if m == 1 else C.over(big)
        pts = kernels.p2_points(big)
        # in characteristic 2 Euler's relation does not give C from its partials
        mask = kernels.common_zero_mask([Cb.C] + Cb.grads, pts)
        scanned.append(big.spec)
        reached = m
        if mask.any():
            p = tuple(big.fmt(int(v)) for v in pts[np.argmax(mask)])
            return SmoothnessReport(False, m, scanned, p, big.spec)
    return SmoothnessReport(True, reached, scanned)


# -- bitangent counts -----------------------------------------------------------------

def _scan_lines(C: MultiPoly, start: int, stop: int) -> list[int]:
    """Indices (dual-point order) of lines of P^2 on which C restricts to a square or zero."""
    fld = C.field
    U, V = kernels.p2_line_spans(fld)
    mask = kernels.square_mask_char2(partials(C), U[start:stop], V[start:stop])
    return [start + int(i) for i in np.nonzero(mask)[0]]


def bitangent_lines(C: PlaneQuartic, workers: int = 1) -> list[tuple]:
    """All bitangent lines of C defined over its field, as normalized dual coordinates."""
    fld = C.field
    if not fld.vectorized:
        raise CurveError(f"{fld.spec} is too large to enumerate")
    q = fld.order
    hits = _run_shards(_scan_lines, (C.C,), q * q + q + 1, workers)
    if not hits:
        return []
    dual = kernels.p2_points(fld)
    return [tuple(int(v) for v in dual[i]) for i in hits]


@dataclass
class BitangentCount:
    curve: str
    base_field: str
    counts_by_k: dict
    cumulative_by_k: dict
    count: int | None
    stabilized: bool
    witnesses: dict
    smoothness: dict | None = None
    elapsed_ms: float = 0.0
    notes: list = dc_field(default_factory=list)

    @property
    def rank(self) -> int | None:
        return COUNT_TO_RANK.get(self.count) if self.stabilized else None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "curve": self.curve,
            "base_field": self.base_field,
            "counts_by_k": {str(k): v for k, v in self.counts_by_k.items()},
            "cumulative_by_k": {str(k): v for k, v in self.cumulative_by_k.items()},
            "count": self.count,
            "stabilized": self.stabilized,
            "verdict": "stabilized" if self.stabilized else "unstabilized",
            "rank": self.rank,
            "witnesses": self.witnesses,
            "smoothness": self.smoothness,
            "notes": list(self.notes),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _subfield_degree(fld, coords: Sequence[int]) -> int:
    """Smallest e | k with every coordinate in GF(p^e)."""
    k = fld.k
    for e in range(1, k + 1):
        if k % e == 0 and all(fld.frob(c, e) == c for c in coords):
            return e
    return k


def plane_bitangent_count(
    C: PlaneQuartic, k_max: int = 10, workers: int = 1, window: int = 3, check_smooth: bool = True
) -> BitangentCount:
    """Count bitangents over the closure by enumerating lines over GF(2^k), k = k0, 2k0, ... <= k_max.

    A line over GF(2^k) is new at k when its coordinates generate GF(2^k)
    over the base.  The cumulative number of new lines counts the bitangents
    defined over an extension of degree at most k/k0; it is monotone, and the
    count is declared stabilized once it is constant over ``window``
    consecutive degrees and lies in {7, 4, 2, 1}.
    """
    t0 = time.perf_counter()
    base = C.field
    k0 = base.k
    smooth = None
    if check_smooth:
        rep = curve_is_smooth(C, 2)
        smooth = rep.to_json()
        if not rep.smooth:
            raise CurveError(f"C is singular at {rep.singular_point} over {rep.singular_field}")
    counts, cumulative, witnesses = {}, {}, {}
    total = 0
    run = 0
    prev = None
    stabilized = False
    m = 1
    while k0 * m <= k_max:
        k = k0 * m
        big = base if m == 1 else field_make(base.p, k)
        if big.order > MAX_KERNEL_ORDER:
            break
        Cb = C if m == 1 else C.over(big)
        lines = bitangent_lines(Cb, workers)
        counts[k] = len(lines)
        # new at k: the line's coordinates generate GF(2^k) over the base field
        new = [ln for ln in lines if math.lcm(_subfield_degree(big, ln), k0) == k]
        total += len(new)
        cumulative[k] = total
        witnesses[k] = [[big.fmt(c) for c in ln] for ln in lines]
        run = run + 1 if total == prev else 1
        prev = total
        m += 1
        if run >= window and total in COUNT_TO_RANK:
            stabilized = True
            break
    notes = []
    if not stabilized:
        notes.append(f"count did not stabilize by k_max={k_max}")
    return BitangentCount(
        curve=C.name,
        base_field=base.spec,
        counts_by_k=counts,
        cumulative_by_k=cumulative,
        count=total if stabilized else None,
        stabilized=stabilized,
        witnesses=witnesses,
        smoothness=smooth,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
        notes=notes,
    )


def classify_2rank(result: BitangentCount | int) -> int:
    """2-rank (Hasse-Witt invariant) from a stabilized bitangent count."""
    if isinstance(result, BitangentCount):
        if not result.stabilized:
            raise CurveError("bitangent count did not stabilize")
        n = result.count
    else:
        n = result
    if n not in COUNT_TO_RANK:
        raise CurveError(f"bitangent count {n} is not one of 7, 4, 2, 1")
    return COUNT_TO_RANK[n]


def listed_lines_are_bitangent(C: PlaneQuartic, kind: str) -> bool:
    """Each listed line restricts C to a perfect square (checked with is_square_form)."""
    f = C.field
    for a in listed_bitangents(kind):
        pts = _line_points(f, a)
        form = BinaryForm(f, tuple(restrict_codes(C.C, pts[0], pts[1], 4)))
        if not form.is_zero() and not is_square_form(form)[0]:
            return False
    return True


def _line_points(field, dual: Sequence[int]) -> tuple[tuple, tuple]:
    """Two points spanning V(ax+by+cz)."""
    a, b, c = dual
    one = field.one_code
    if not field.is_zero(a):
        ia = field.inv(a)
        return (field.neg(field.mul(b, ia)), one, 0), (field.neg(field.mul(c, ia)), 0, one)
    if not field.is_zero(b):
        return (one, 0, 0), (0, field.neg(field.mul(c, field.inv(b))), one)
    return (one, 0, 0), (0, one, 0)


def embed_lines(small, big, lines) -> set:
    emb = embedding(small, big)
    return {normalize(big, [emb[c] for c in ln]) for ln in lines}


# -- plane sections ----------------------------------------------------------------

def plane_section(F: MultiPoly, plane) -> PlaneQuartic:
    """The quartic curve cut by a plane, in the plane's basis coordinates."""
    T, _ = plane_restriction(F, plane)
    return PlaneQuartic(T, "plane section")


def random_change(field, rng) -> list[list[int]]:
    """A random invertible 3x3 matrix over the field (raw codes)."""
    from .linalg import rank

    while True:
        M = [[rng.randrange(field.order) for _ in range(3)] for _ in range(3)]
        if rank(field, M) == 3:
            return M


def apply_change(C: PlaneQuartic, M) -> PlaneQuartic:
    from .poly import substitute

    f = C.field
    u = MultiPoly.gens(f, 3)
    images = []
    for row in M:
        img = MultiPoly.zero(f, 3)
        for j, c in enumerate(row):
            if c:
                img = img + u[j].scale(c)
        images.append(img)
    return PlaneQuartic(substitute(C.C, images), C.name)
