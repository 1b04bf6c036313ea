"""Tangency classification of lines against a quartic surface, and exhaustive
order/class counts of its congruence of bitangent lines over finite fields."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .fields import FieldElement
from .linalg import row_reduce
from .poly import (
    MultiPoly,
    BinaryForm,
    format_poly,
    partials,
    restrict_codes,
    squarefree_decomposition,
    substitute,
)
from .projgeom import (
    PluckerLine,
    ProjPlane,
    ProjPoint,
    complementary_index,
    line_from_points,
    normalize,
)

SCHEMA = 1


class SurfaceError(ValueError):
    pass


class QuarticSurface:
    """X = V(F) for a homogeneous quartic F in four variables."""

    def __init__(self, F: MultiPoly, name: str | None = None):
        if F.nvars != 4:
            raise SurfaceError("a quartic surface needs 4 variables")
        if not F:
            raise SurfaceError("the zero polynomial does not define a surface")
        if F.is_homogeneous() != 4:
            raise SurfaceError("F must be homogeneous of degree 4")
        if F.field.characteristic == 2 and all(k % 2 == 0 for e in F.terms for k in e):
            raise SurfaceError("F is a square; the surface is non-reduced")
        self.F = F
        self.field = F.field
        self.name = name or format_poly(F)
        self.grads = partials(F)

    def __repr__(self) -> str:
        return f"QuarticSurface({self.name})"

    def contains(self, x) -> bool:
        coords = x.coords if isinstance(x, ProjPoint) else x
        return self.field.is_zero(self.F.eval_codes(coords))

    def is_singular_at(self, x) -> bool:
        coords = x.coords if isinstance(x, ProjPoint) else x
        return self.contains(coords) and all(
            self.field.is_zero(g.eval_codes(coords)) for g in self.grads
        )

    def over(self, big, lift) -> "QuarticSurface":
        """The same surface with coefficients pushed into a larger field."""
        return QuarticSurface(self.F.map_coeffs(lift, big), self.name)


KINDS = ("Transversal", "SimpleTangent", "Bitangent", "FlexLine", "ContainedInX")


@dataclass(frozen=True)
class TangencyClass:
    kind: str
    signature: tuple
    factors: tuple = ()

    @property
    def is_bitangent(self) -> bool:
        """Membership in the closed bitangent locus: [2,2], [4], or contained."""
        return self.kind in ("Bitangent", "ContainedInX")

    @property
    def is_flex(self) -> bool:
        return self.kind == "ContainedInX" or any(m >= 3 for m in self.signature)

    def signature_key(self) -> str:
        if self.kind == "ContainedInX":
            return "contained"
        return "".join(str(m) for m in self.signature)


def _classify_form(form: BinaryForm) -> TangencyClass:
    if form.is_zero():
        return TangencyClass("ContainedInX", ())
    dec = squarefree_decomposition(form)
    sig = dec.signature()
    factors = tuple((repr(g), m) for g, m in dec.factors)
    if sig and all(m % 2 == 0 for m in sig):
        kind = "Bitangent"
    elif any(m >= 3 for m in sig):
        kind = "FlexLine"
    elif 2 in sig:
        kind = "SimpleTangent"
    else:
        kind = "Transversal"
    return TangencyClass(kind, sig, factors)


def classify_line(X: QuarticSurface, line: PluckerLine, span: tuple | None = None) -> TangencyClass:
    a, b = span if span is not None else line.points()
    form = BinaryForm(X.field, tuple(restrict_codes(X.F, a, b, 4)))
    return _classify_form(form)


@dataclass
class CongruenceReport:
    surface: str
    field: str
    mode: str
    sample: list
    count: int
    witnesses: list
    classes: list
    predicted: list | None = None
    seed: int | None = None
    sample_on_X: bool = False
    elapsed_ms: float = 0.0
    notes: list = dc_field(default_factory=list)

    @property
    def signatures(self) -> dict:
        out = {"22": 0, "4": 0, "contained": 0}
        for c in self.classes:
            key = c.signature_key()
            out[key] = out.get(key, 0) + 1
        return out

    @property
    def match(self) -> bool | None:
        if self.predicted is None:
            return None
        return set(self.witnesses) == set(self.predicted)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "surface": self.surface,
            "field": self.field,
            "mode": self.mode,
            "seed": self.seed,
            "sample": self.sample,
            "sample_on_X": self.sample_on_X,
            "count": self.count,
            "signatures": self.signatures,
            "witnesses": [w.to_json() for w in self.witnesses],
            "predicted": None if self.predicted is None else [w.to_json() for w in self.predicted],
            "match": self.match,
            "notes": list(self.notes),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


# -- scanning ------------------------------------------------------------------

def _shards(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    step = -(-n // parts)
    return [(i, min(n, i + step)) for i in range(0, n, step)]


def _through_spans(X: QuarticSurface, q: ProjPoint):
    j = complementary_index(q.coords, X.field)
    return kernels.partners_through(X.field, j)


def _scan_through(F: MultiPoly, q: tuple, start: int, stop: int) -> list[int]:
    """Indices of lines through q (in enumeration order) whose restriction is a square or zero."""
    fld = F.field
    j = complementary_index(q, fld)
    R = kernels.partners_through(fld, j)[start:stop]
    if fld.characteristic == 2 and fld.vectorized:
        grads = partials(F)
        gq = [g.eval_codes(q) for g in grads]
        mask = kernels.square_mask_char2(grads, np.array(q, dtype=np.int64), R, gradP=gq)
        return [start + int(i) for i in np.nonzero(mask)[0]]
    hits = []
    for i, r in enumerate(R.tolist()):
        cls = _classify_form(BinaryForm(fld, tuple(restrict_codes(F, q, r, 4))))
        if cls.is_bitangent:
            hits.append(start + i)
    return hits


def _plane_spans(plane: ProjPlane, start: int = 0, stop: int | None = None):
    fld = plane.field
    U, V = kernels.p2_line_spans(fld)
    U, V = U[start:stop], V[start:stop]
    B = plane.basis()
    return kernels.lift_plane(fld, U, B), kernels.lift_plane(fld, V, B)


def _scan_in(F: MultiPoly, plane_coeffs: tuple, start: int, stop: int) -> list[int]:
    fld = F.field
    plane = ProjPlane(fld, plane_coeffs)
    P, R = _plane_spans(plane, start, stop)
    if fld.characteristic == 2 and fld.vectorized:
        mask = kernels.square_mask_char2(partials(F), P, R)
        return [start + int(i) for i in np.nonzero(mask)[0]]
    hits = []
    for i, (a, b) in enumerate(zip(P.tolist(), R.tolist())):
        cls = _classify_form(BinaryForm(fld, tuple(restrict_codes(F, a, b, 4))))
        if cls.is_bitangent:
            hits.append(start + i)
    return hits


def _run_shards(fn: Callable, args: tuple, n: int, workers: int) -> list[int]:
    shards = _shards(n, workers)
    if workers <= 1 or len(shards) == 1:
        out = []
        for s, e in shards:
            out.extend(fn(*args, s, e))
        return out
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, s, e) for s, e in shards]
        out = []
        for fut in futures:
            out.extend(fut.result())
    return out


def _line_count(field) -> int:
    q = field.order
    return q * q + q + 1


def order_count(
    X: QuarticSurface,
    q: ProjPoint,
    field=None,
    workers: int = 1,
    predicted: Sequence[PluckerLine] | None = None,
    seed: int | None = None,
) -> CongruenceReport:
    """Lines through q lying in the closed bitangent locus of X."""
    t0 = time.perf_counter()
    fld = field or X.field
    hits = _run_shards(_scan_through, (X.F, q.coords), _line_count(fld), workers)
    R = _through_spans(X, q)
    witnesses, classes = [], []
    for i in hits:
        r = tuple(int(v) for v in R[i])
        line = line_from_points(q.coords, r, fld)
        cls = classify_line(X, line, (q.coords, r))
        if not cls.is_bitangent:
            raise AssertionError(f"kernel and exact classification disagree on {line}")
        witnesses.append(line)
        classes.append(cls)
    return CongruenceReport(
        surface=X.name,
        field=fld.spec,
        mode="point",
        sample=q.to_json(),
        count=len(witnesses),
        witnesses=witnesses,
        classes=classes,
        predicted=list(predicted) if predicted is not None else None,
        seed=seed,
        sample_on_X=X.contains(q),
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


def class_count(
    X: QuarticSurface,
    plane: ProjPlane,
    field=None,
    workers: int = 1,
    predicted: Sequence[PluckerLine] | None = None,
    seed: int | None = None,
) -> CongruenceReport:
    """Lines in the plane lying in the closed bitangent locus of X."""
    t0 = time.perf_counter()
    fld = field or X.field
    hits = _run_shards(_scan_in, (X.F, plane.coeffs), _line_count(fld), workers)
    witnesses, classes = [], []
    if hits:
        P, R = _plane_spans(plane)
        for i in hits:
            a = tuple(int(v) for v in P[i])
            b = tuple(int(v) for v in R[i])
            line = line_from_points(a, b, fld)
            cls = classify_line(X, line, (a, b))
            if not cls.is_bitangent:
                raise AssertionError(f"kernel and exact classification disagree on {line}")
            witnesses.append(line)
            classes.append(cls)
    return CongruenceReport(
        surface=X.name,
        field=fld.spec,
        mode="plane",
        sample=plane.to_json(),
        count=len(witnesses),
        witnesses=witnesses,
        classes=classes,
        predicted=list(predicted) if predicted is not None else None,
        seed=seed,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


# -- inseparable centers ---------------------------------------------------------

@dataclass(frozen=True)
class LinearLocus:
    """A projective linear subspace given by a reduced basis (dimension -1 if empty)."""

    field: object
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis) - 1

    def points(self) -> list[ProjPoint]:
        return [ProjPoint(self.field, v) for v in self.basis]

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "basis": [p.to_json() for p in self.points()]}


def solution_locus(field, rows: list[list], ncols: int = 4) -> LinearLocus:
    """Projective solution space of a homogeneous linear system, in reduced echelon basis."""
    from .linalg import nullspace

    ns = nullspace(field, rows, ncols) if rows else nullspace(field, [], ncols)
    if not ns:
        return LinearLocus(field, ())
    red, _ = row_reduce(field, ns)
    basis = tuple(normalize(field, r) for r in red if any(not field.is_zero(x) for x in r))
    return LinearLocus(field, basis)


def inseparable_centers(X: QuarticSurface) -> LinearLocus:
    """Points q = [a0..a3] with sum a_i dF/dx_i identically zero."""
    fld = X.field
    monos = sorted({e for g in X.grads for e in g.terms})
    rows = [[g.terms.get(m, fld.zero_code) for g in X.grads] for m in monos]
    return solution_locus(fld, rows)


# -- reference formulas ------------------------------------------------------------

@dataclass(frozen=True)
class Bidegree:
    d: int
    char: int
    order: int | None
    cls: int
    order_bound: int | None = None
    possible_classes: tuple = ()
    flex: tuple = ()

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "char": self.char,
            "order": self.order,
            "class": self.cls,
            "order_bound": self.order_bound,
            "possible_classes": list(self.possible_classes),
            "flex": list(self.flex),
        }


def expected_bidegree(d: int, char: int = 0) -> Bidegree:
    """Order m(d) and class n(d) of the bitangent congruence of a general projection surface.

    In characteristic 2 the order is only bounded (by half of m(d)); for quartics
    the class of a plane section takes one of the values 7, 4, 2, 1.
    """
    if d < 4:
        raise ValueError("expected_bidegree needs d >= 4")
    m = d * (d - 1) * (d - 2) * (d - 3) // 2
    n = d * (d - 2) * (d * d - 9) // 2
    flex = (d * (d - 1) * (d - 2), 3 * d * (d - 2))
    if char == 2:
        return Bidegree(d, 2, None, n, m // 2, (7, 4, 2, 1) if d == 4 else (), flex)
    return Bidegree(d, char, m, n, None, (), flex)


# -- tropes -------------------------------------------------------------------------

def plane_restriction(F: MultiPoly, plane: ProjPlane) -> tuple[MultiPoly, list[int]]:
    """F restricted to the plane, in the plane coordinates given by ``plane.basis()``.

    Returns the ternary form and the indices of the ambient variables the plane
    coordinates coincide with (every basis vector is e_i minus a multiple of e_j).
    """
    fld = F.field
    B = plane.basis()
    u = MultiPoly.gens(fld, 3)
    images = []
    for i in range(4):
        img = MultiPoly.zero(fld, 3)
        for k in range(3):
            if not fld.is_zero(B[k][i]):
                img = img + u[k].scale(B[k][i])
        images.append(img)
    j = complementary_index(plane.coeffs, fld)
    return substitute(F, images), [i for i in range(4) if i != j]


def poly_sqrt(T: MultiPoly) -> MultiPoly | None:
    """C with C^2 = T over the coefficient field, or None."""
    fld = T.field
    if not T:
        return MultiPoly.zero(fld, T.nvars)
    if fld.characteristic == 2:
        out = {}
        for e, c in T.terms.items():
            if any(k % 2 for k in e):
                return None
            out[tuple(k // 2 for k in e)] = fld.sqrt_code(c)
        return MultiPoly(fld, T.nvars, out)
    lm = T.leading_monomial()
    if any(k % 2 for k in lm):
        return None
    r = fld.some_sqrt_code(T.terms[lm])
    if r is None:
        return None
    C = MultiPoly.monomial(fld, [k // 2 for k in lm], FieldElement(fld, r))
    two_lc_inv = fld.inv(fld.mul(fld.from_int(2), r))
    lmC = tuple(k // 2 for k in lm)
    key_C = (sum(lmC), lmC)
    rem = T - C * C
    while rem:
        m = rem.leading_monomial()
        shift = tuple(a - b for a, b in zip(m, lmC))
        # each new term must sit strictly below the leading term of C
        if any(s < 0 for s in shift) or (sum(shift), shift) >= key_C:
            return None
        C = C + MultiPoly.monomial(fld, shift, FieldElement(fld, fld.mul(rem.terms[m], two_lc_inv)))
        rem = T - C * C
    return C if C * C == T else None


def trope_plane_detect(X: QuarticSurface, plane: ProjPlane) -> tuple[bool, MultiPoly | None]:
    """Whether V(F) meets the plane in a double conic; the conic in ambient variables.

    The conic is taken up to a scalar when the leading coefficient of the
    restriction is not a square in the field (odd characteristic only).
    """
    fld = X.field
    T, idx = plane_restriction(X.F, plane)
    if not T:
        return False, None
    lc = T.leading_coefficient()
    Tn = T.scale(fld.inv(lc))
    C = poly_sqrt(Tn)
    if C is None:
        return False, None
    r = fld.some_sqrt_code(lc)
    if r is not None:
        C = C.scale(r)
    x = MultiPoly.gens(fld, 4)
    conic = substitute(C, [x[i] for i in idx])
    return True, conic


# -- genericity policy ---------------------------------------------------------------

MAX_REDRAWS = 100


class SamplingError(RuntimeError):
    pass


def draw_generic(rng, draw: Callable, rejects: Sequence[Callable], max_redraws: int = MAX_REDRAWS):
    """Draw until no rejection predicate fires; returns (sample, redraws)."""
    for attempt in range(max_redraws + 1):
        s = draw(rng)
        if not any(r(s) for r in rejects):
            return s, attempt
    raise SamplingError(f"no generic sample after {max_redraws} redraws")
