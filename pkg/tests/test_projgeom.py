import random

import pytest
from hypothesis import given, strategies as st

from bitcong.fields import field_make
from bitcong.projgeom import (
    GeometryError,
    PluckerLine,
    ProjPlane,
    ProjPoint,
    coordinate_line,
    enum_lines_in,
    enum_lines_through,
    incidence,
    line_from_planes,
    line_from_points,
    line_in_plane,
    lines_meet,
    plane_through,
    plucker_relation,
    point_on_line,
    random_plane,
    random_point,
    transversal_in_plane,
    transversal_through_point,
)

F2, F4, F8, F32 = (field_make(2, k) for k in (1, 2, 3, 5))
F9 = field_make(3, 2)
seeds = st.integers(0, 10**9)


def test_coordinate_lines():
    assert line_from_points([1, 0, 0, 0], [0, 1, 0, 0], F2).p == (1, 0, 0, 0, 0, 0)
    assert line_from_points([0, 0, 1, 0], [0, 0, 0, 1], F2).p == (0, 0, 0, 0, 0, 1)
    with pytest.raises(GeometryError, match="degenerate"):
        line_from_points([1, 1, 0, 0], [1, 1, 0, 0], F2)


def test_incidence_examples():
    l1 = coordinate_line(F4, (0, 1))  # V(x, y)
    l2 = coordinate_line(F4, (2, 3))
    assert incidence(l1, ProjPoint.of(F4, [0, 0, 1, 0]))
    assert incidence(l1, ProjPlane.of(F4, [1, 0, 0, 0]))
    assert not incidence(l1, l2)
    with pytest.raises(TypeError):
        incidence(l1, 3)


@pytest.mark.parametrize("field", [F8, F9, F32])
@given(seed=seeds)
def test_plucker_relation_and_duality(field, seed):
    rng = random.Random(seed)
    a, b = random_point(field, rng), random_point(field, rng)
    if a == b:
        return
    line = line_from_points(a, b)
    assert field.is_zero(plucker_relation(field, line.p))
    assert point_on_line(line, a) and point_on_line(line, b)
    u, v = line.points()
    assert line_from_points(u, v, field) == line
    # two planes through the line give it back
    c, d = random_point(field, rng), random_point(field, rng)
    if not point_on_line(line, c):
        P1 = plane_through(field, u, v, c.coords)
        if not P1.contains_point(d):
            P2 = plane_through(field, u, v, d.coords)
            assert line_from_planes(P1, P2) == line
            assert line_in_plane(line, P1) and line_in_plane(line, P2)
    with pytest.raises(GeometryError):
        PluckerLine.of(field, [1, 0, 0, 0, 0, 1])


def test_transversal_through_point_example():
    f = F32
    l1, l2 = coordinate_line(f, (0, 1)), coordinate_line(f, (2, 3))
    q = ProjPoint.of(f, [1, 5, 7, 9])
    tr = transversal_through_point(l1, l2, q)
    assert tr.line == line_from_points([1, 5, 0, 0], [0, 0, 7, 9], f)
    assert tr.meet1 == ProjPoint.of(f, [0, 0, 7, 9])
    assert tr.meet2 == ProjPoint.of(f, [1, 5, 0, 0])
    with pytest.raises(GeometryError, match="not unique"):
        transversal_through_point(l1, l2, ProjPoint.of(f, [0, 0, 1, 3]))


@given(seed=seeds)
def test_transversal_contracts(seed):
    rng = random.Random(seed)
    f = F32
    l1, l2 = coordinate_line(f, (0, 2)), coordinate_line(f, (1, 3))
    q = random_point(f, rng)
    if point_on_line(l1, q) or point_on_line(l2, q):
        return
    tr = transversal_through_point(l1, l2, q)
    assert point_on_line(tr.line, q) and lines_meet(tr.line, l1) and lines_meet(tr.line, l2)
    H = random_plane(f, rng)
    if line_in_plane(l1, H) or line_in_plane(l2, H):
        return
    tp = transversal_in_plane(l1, l2, H)
    assert line_in_plane(tp.line, H) and lines_meet(tp.line, l1) and lines_meet(tp.line, l2)


def test_transversal_in_plane_example():
    f = F4
    l1, l2 = coordinate_line(f, (0, 1)), coordinate_line(f, (2, 3))
    H = ProjPlane.of(f, [1, 0, 1, 0])  # V(x + z)
    tr = transversal_in_plane(l1, l2, H)
    assert tr.meet1 == ProjPoint.of(f, [0, 0, 0, 1])
    assert tr.meet2 == ProjPoint.of(f, [0, 1, 0, 0])
    with pytest.raises(GeometryError):
        transversal_in_plane(l1, l2, ProjPlane.of(f, [1, 0, 0, 0]))


@pytest.mark.parametrize("field,n", [(F2, 7), (F4, 21), (F8, 73)])
def test_enumeration_counts(field, n):
    q = ProjPoint.of(field, [0, 1, 1, 0])
    lines = list(enum_lines_through(q))
    assert len(lines) == n == len(set(lines))
    assert all(point_on_line(l, q) for l in lines)
    H = ProjPlane.of(field, [1, 1, 0, 1])
    lines = list(enum_lines_in(H))
    assert len(lines) == n == len(set(lines))
    assert all(line_in_plane(l, H) for l in lines)
    assert list(enum_lines_through(q, start=2, stop=5)) == lines_through_slice(q, 2, 5)


def lines_through_slice(q, a, b):
    return list(enum_lines_through(q))[a:b]
