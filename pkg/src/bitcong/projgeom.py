"""Points, planes and lines of P^3 over a field, with Plücker coordinates.

Plücker coordinates are stored in the order (12, 13, 14, 23, 24, 34) and
satisfy p12*p34 - p13*p24 + p14*p23 = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .fields import FieldElement
from .linalg import nullspace

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {pr: i for i, pr in enumerate(PAIRS)}


class GeometryError(ValueError):
    pass


def _codes(field, coords) -> tuple:
    out = []
    for c in coords:
        if isinstance(c, FieldElement):
            if c.parent != field:
                raise GeometryError("coordinate from a different field")
            out.append(c.value)
        elif isinstance(c, int) and field.is_finite and 0 <= c < field.order:
            out.append(c)
        elif isinstance(c, int):
            out.append(field.from_int(c))
        else:
            out.append(field(c).value)
    return tuple(out)


def normalize(field, v: Sequence) -> tuple:
    """Scale so the first nonzero entry is 1."""
    for c in v:
        if not field.is_zero(c):
            if c == field.one_code:
                return tuple(v)
            inv = field.inv(c)
            return tuple(field.mul(x, inv) for x in v)
    raise GeometryError("zero vector is not a projective point")


def _fmt_json(field, v) -> list:
    return [field.to_json(c) for c in v]


@dataclass(frozen=True)
class ProjPoint:
    field: object
    coords: tuple

    @classmethod
    def of(cls, field, coords: Sequence) -> "ProjPoint":
        c = _codes(field, coords)
        if len(c) != 4:
            raise GeometryError("a point of P^3 needs 4 coordinates")
        return cls(field, normalize(field, c))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coords]

    def to_json(self) -> list:
        return _fmt_json(self.field, self.coords)

    def __repr__(self) -> str:
        return "[" + ",".join(self.field.fmt(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjPlane:
    field: object
    coeffs: tuple

    @classmethod
    def of(cls, field, coeffs: Sequence) -> "ProjPlane":
        c = _codes(field, coeffs)
        if len(c) != 4:
            raise GeometryError("a plane of P^3 needs 4 coefficients")
        return cls(field, normalize(field, c))

    def evaluate(self, v: Sequence):
        f = self.field
        acc = f.zero_code
        for a, x in zip(self.coeffs, v):
            acc = f.add(acc, f.mul(a, x))
        return acc

    def contains_point(self, x: ProjPoint) -> bool:
        return self.field.is_zero(self.evaluate(x.coords))

    def basis(self) -> list[tuple]:
        """Three points spanning the plane, fixed by the normalized coefficients."""
        f = self.field
        j = next(i for i, c in enumerate(self.coeffs) if not f.is_zero(c))
        out = []
        for i in range(4):
            if i == j:
                continue
            v = [f.zero_code] * 4
            v[i] = f.one_code
            v[j] = f.neg(self.coeffs[i])
            out.append(tuple(v))
        return out

    def to_json(self) -> list:
        return _fmt_json(self.field, self.coeffs)

    def __repr__(self) -> str:
        return "V(" + ",".join(self.field.fmt(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class PluckerLine:
    field: object
    p: tuple

    @classmethod
    def of(cls, field, p: Sequence) -> "PluckerLine":
        c = _codes(field, p)
        if len(c) != 6:
            raise GeometryError("Plücker coordinates have 6 entries")
        line = cls(field, normalize(field, c))
        if not field.is_zero(plucker_relation(field, line.p)):
            raise GeometryError("coordinates violate the Plücker relation")
        return line

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.p]

    def matrix(self) -> list[list]:
        """Skew matrix L with L[i][j] = p_ij; its columns span the line."""
        f = self.field
        m = [[f.zero_code] * 4 for _ in range(4)]
        for (i, j), v in zip(PAIRS, self.p):
            m[i][j] = v
            m[j][i] = f.neg(v)
        return m

    def points(self) -> tuple[tuple, tuple]:
        """Two distinct points spanning the line (deterministic)."""
        f = self.field
        m = self.matrix()
        cols = [tuple(m[r][c] for r in range(4)) for c in range(4)]
        cols = [c for c in cols if any(not f.is_zero(x) for x in c)]
        first = cols[0]
        for c in cols[1:]:
            if not _dependent(f, first, c):
                return normalize(f, first), normalize(f, c)
        raise GeometryError("degenerate Plücker vector")

    def dual(self) -> tuple:
        """Dual coordinates pi with pi_ij = u_i v_j - u_j v_i for planes u, v through the line."""
        f = self.field
        p12, p13, p14, p23, p24, p34 = self.p
        # inverse of the pi -> p map used by line_from_planes
        return (p34, f.neg(p24), p23, p14, f.neg(p13), p12)

    def to_json(self) -> list:
        return _fmt_json(self.field, self.p)

    def __repr__(self) -> str:
        return "<" + ",".join(self.field.fmt(c) for c in self.p) + ">"


def _dependent(f, a, b) -> bool:
    for i, j in combinations(range(len(a)), 2):
        if not f.is_zero(f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]))):
            return False
    return True


def plucker_relation(field, p: Sequence):
    f = field
    p12, p13, p14, p23, p24, p34 = p
    return f.add(f.sub(f.mul(p12, p34), f.mul(p13, p24)), f.mul(p14, p23))


def _as_codes(field, x) -> tuple:
    if isinstance(x, ProjPoint):
        return x.coords
    return _codes(field, x)


def wedge(field, a: Sequence, b: Sequence) -> tuple:
    f = field
    return tuple(f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])) for i, j in PAIRS)


def line_from_points(a, b, field=None) -> PluckerLine:
    if field is None:
        field = a.field
    a, b = _as_codes(field, a), _as_codes(field, b)
    p = wedge(field, a, b)
    if all(field.is_zero(x) for x in p):
        raise GeometryError("degenerate: the two points coincide")
    return PluckerLine(field, normalize(field, p))


def line_from_planes(u, v, field=None) -> PluckerLine:
    if field is None:
        field = u.field
    u = u.coeffs if isinstance(u, ProjPlane) else _codes(field, u)
    v = v.coeffs if isinstance(v, ProjPlane) else _codes(field, v)
    pi = wedge(field, u, v)
    if all(field.is_zero(x) for x in pi):
        raise GeometryError("degenerate: the two planes coincide")
    f = field
    pi12, pi13, pi14, pi23, pi24, pi34 = pi
    p = (pi34, f.neg(pi24), pi23, pi14, f.neg(pi13), pi12)
    return PluckerLine(field, normalize(field, p))


def plane_through(field, a: Sequence, b: Sequence, c: Sequence) -> ProjPlane:
    """The plane spanned by three points (error if they are collinear)."""
    ns = nullspace(field, [list(a), list(b), list(c)], 4)
    if len(ns) != 1:
        raise GeometryError("points do not span a plane")
    return ProjPlane(field, normalize(field, ns[0]))


def point_on_line(line: PluckerLine, x) -> bool:
    f = line.field
    x = _as_codes(f, x)
    p = {pr: v for pr, v in zip(PAIRS, line.p)}
    for i, j, k in combinations(range(4), 3):
        t = f.add(f.sub(f.mul(p[(i, j)], x[k]), f.mul(p[(i, k)], x[j])), f.mul(p[(j, k)], x[i]))
        if not f.is_zero(t):
            return False
    return True


def line_in_plane(line: PluckerLine, plane: ProjPlane) -> bool:
    f = line.field
    m = line.matrix()
    return all(
        f.is_zero(plane.evaluate([m[r][c] for r in range(4)])) for c in range(4)
    )


def lines_meet(l1: PluckerLine, l2: PluckerLine) -> bool:
    f = l1.field
    a, b = l1.p, l2.p
    s = f.zero_code
    # p12 q34 - p13 q24 + p14 q23 + p23 q14 - p24 q13 + p34 q12
    terms = ((0, 5, 1), (1, 4, -1), (2, 3, 1), (3, 2, 1), (4, 1, -1), (5, 0, 1))
    for i, j, sg in terms:
        t = f.mul(a[i], b[j])
        s = f.add(s, t) if sg > 0 else f.sub(s, t)
    return f.is_zero(s)


def incidence(line: PluckerLine, obj) -> bool:
    """Point on line, line in plane, or line meets line."""
    if isinstance(obj, ProjPoint):
        return point_on_line(line, obj)
    if isinstance(obj, ProjPlane):
        return line_in_plane(line, obj)
    if isinstance(obj, PluckerLine):
        return lines_meet(line, obj)
    raise TypeError(f"cannot test incidence with {type(obj).__name__}")


def meet_line_plane(line: PluckerLine, plane: ProjPlane) -> ProjPoint:
    if line_in_plane(line, plane):
        raise GeometryError("line lies in the plane")
    f = line.field
    a, b = line.points()
    ua, ub = plane.evaluate(a), plane.evaluate(b)
    pt = tuple(f.sub(f.mul(ub, x), f.mul(ua, y)) for x, y in zip(a, b))
    return ProjPoint(f, normalize(f, pt))


def plane_through_line_point(line: PluckerLine, q) -> ProjPlane:
    f = line.field
    q = _as_codes(f, q)
    if point_on_line(line, q):
        raise GeometryError("point lies on the line")
    a, b = line.points()
    return plane_through(f, a, b, q)


@dataclass(frozen=True)
class Transversal:
    line: PluckerLine
    meet1: ProjPoint
    meet2: ProjPoint


def transversal_through_point(l1: PluckerLine, l2: PluckerLine, q) -> Transversal:
    f = l1.field
    if lines_meet(l1, l2):
        raise GeometryError("lines are not skew")
    qc = _as_codes(f, q)
    if point_on_line(l1, qc) or point_on_line(l2, qc):
        raise GeometryError("transversal not unique: point lies on one of the lines")
    h1 = plane_through_line_point(l1, qc)
    h2 = plane_through_line_point(l2, qc)
    line = line_from_planes(h1, h2)
    return Transversal(line, meet_line_plane(l1, h2), meet_line_plane(l2, h1))


def transversal_in_plane(l1: PluckerLine, l2: PluckerLine, plane: ProjPlane) -> Transversal:
    if lines_meet(l1, l2):
        raise GeometryError("lines are not skew")
    if line_in_plane(l1, plane) or line_in_plane(l2, plane):
        raise GeometryError("a line lies in the plane")
    m1 = meet_line_plane(l1, plane)
    m2 = meet_line_plane(l2, plane)
    return Transversal(line_from_points(m1, m2), m1, m2)


def coordinate_line(field, zero_vars: Sequence[int]) -> PluckerLine:
    """The line V(x_i, x_j) cut out by two coordinate hyperplanes."""
    rest = [k for k in range(4) if k not in zero_vars]
    e = [[field.one_code if t == k else field.zero_code for t in range(4)] for k in rest]
    return line_from_points(e[0], e[1], field)


# -- enumeration over finite fields --------------------------------------------

def normalized_points(field, n: int) -> Iterator[tuple]:
    """All normalized points of P^(n-1), ordered by first-nonzero position then lexicographically."""
    q = field.order
    for lead in range(n):
        for tail in product(range(q), repeat=n - 1 - lead):
            yield (0,) * lead + (1,) + tail


def count_points(field, n: int) -> int:
    q = field.order
    return sum(q**i for i in range(n))


def complementary_index(coords: Sequence, field) -> int:
    return next(i for i, c in enumerate(coords) if not field.is_zero(c))


def lines_through_partners(q: ProjPoint) -> Iterator[tuple]:
    """Points r of the plane x_j = 0 (j the first nonzero index of q), one per line through q."""
    f = q.field
    j = complementary_index(q.coords, f)
    for r in normalized_points(f, 3):
        r = list(r)
        r.insert(j, 0)
        yield tuple(r)


def enum_lines_through(q: ProjPoint, field=None, start: int = 0, stop: int | None = None) -> Iterator[PluckerLine]:
    """The Q^2+Q+1 lines through q; ``start``/``stop`` select an index range (shard)."""
    f = field or q.field
    for i, r in enumerate(lines_through_partners(q)):
        if i < start:
            continue
        if stop is not None and i >= stop:
            break
        yield line_from_points(q.coords, r, f)


def plane_line_spans(plane: ProjPlane) -> Iterator[tuple[tuple, tuple]]:
    """For each line of the plane, two spanning points in P^3 (deterministic order)."""
    f = plane.field
    B = plane.basis()
    zero, one = f.zero_code, f.one_code

    def lift(lam):
        return tuple(
            f.add(f.add(f.mul(lam[0], B[0][i]), f.mul(lam[1], B[1][i])), f.mul(lam[2], B[2][i]))
            for i in range(4)
        )

    for a, b, c in normalized_points(f, 3):
        if a == one:
            u, v = (f.neg(b), one, zero), (f.neg(c), zero, one)
        elif b == one:
            u, v = (one, zero, zero), (zero, f.neg(c), one)
        else:
            u, v = (one, zero, zero), (zero, one, zero)
        yield lift(u), lift(v)


def enum_lines_in(plane: ProjPlane, field=None, start: int = 0, stop: int | None = None) -> Iterator[PluckerLine]:
    f = field or plane.field
    for i, (u, v) in enumerate(plane_line_spans(plane)):
        if i < start:
            continue
        if stop is not None and i >= stop:
            break
        yield line_from_points(u, v, f)


def random_point(field, rng) -> ProjPoint:
    while True:
        v = [rng.randrange(field.order) for _ in range(4)]
        if any(v):
            return ProjPoint(field, normalize(field, v))


def random_plane(field, rng) -> ProjPlane:
    while True:
        v = [rng.randrange(field.order) for _ in range(4)]
        if any(v):
            return ProjPlane(field, normalize(field, v))
