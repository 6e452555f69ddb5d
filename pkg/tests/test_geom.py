import pytest

from incidence_lab.errors import (
    DegenerateObjectError,
    EqualLinesError,
    EqualPlanesError,
    EqualPointsError,
    FieldMismatchError,
)
from incidence_lab.ff import PrimeField
from incidence_lab.geom import (
    AffineMap,
    Line3,
    Plane3,
    Point3,
    apply_affine,
    line_in_plane,
    line_line_intersection,
    line_through,
    plane_plane_intersection,
    plane_through_lines,
    point_on_line,
    point_on_plane,
    random_invertible_affine,
)
from incidence_lab.rng import Pcg32


def x_axis(F):
    return Line3(F, (0, 0, 0), (1, 0, 0))


def test_point_on_plane(F5, F101):
    z0 = Plane3(F101, 0, 0, 1, 0)
    assert point_on_plane(Point3(F101, 1, 0, 0), z0)
    assert not point_on_plane(Point3(F101, 0, 0, 1), z0)
    assert point_on_plane(Point3(F5, 2, 3, 4), Plane3(F5, 1, 1, 1, -4))


def test_point_on_line(F5, F101):
    assert point_on_line(Point3(F101, 3, 0, 0), x_axis(F101))
    assert not point_on_line(Point3(F101, 0, 1, 0), x_axis(F101))
    assert point_on_line(Point3(F5, 2, 0, 4), Line3(F5, (0, 0, 3), (1, 0, 3)))


def test_line_in_plane(F5, F101):
    assert line_in_plane(x_axis(F101), Plane3(F101, 0, 0, 1, 0))
    assert not line_in_plane(x_axis(F101), Plane3(F101, 1, 0, 0, 0))
    assert line_in_plane(Line3(F5, (0, 0, 3), (1, 0, 3)), Plane3(F5, 3, 0, -1, 3))


def test_line_line_intersection_examples(F101):
    y_axis = Line3(F101, (0, 0, 0), (0, 1, 0))
    assert line_line_intersection(x_axis(F101), y_axis) == Point3(F101, 0, 0, 0)
    assert line_line_intersection(x_axis(F101), Line3(F101, (0, 1, 0), (1, 0, 0))) is None
    assert line_line_intersection(x_axis(F101), Line3(F101, (0, 0, 1), (0, 1, 0))) is None
    with pytest.raises(EqualLinesError):
        line_line_intersection(x_axis(F101), Line3(F101, (5, 0, 0), (3, 0, 0)))


def test_line_through_examples(F5, F101):
    o = Point3(F101, 0, 0, 0)
    assert line_through(o, Point3(F101, 1, 0, 0)) == x_axis(F101)
    assert line_through(o, Point3(F101, 0, 0, 1)) == Line3(F101, (0, 0, 7), (0, 0, 1))
    assert line_through(Point3(F5, 0, 0, 3), Point3(F5, 1, 0, 1)) == Line3(F5, (0, 0, 3), (1, 0, 3))
    with pytest.raises(EqualPointsError):
        line_through(o, o)


def test_plane_plane_intersection_examples(F101):
    z0 = Plane3(F101, 0, 0, 1, 0)
    assert plane_plane_intersection(z0, Plane3(F101, 0, 1, 0, 0)) == x_axis(F101)
    assert plane_plane_intersection(z0, Plane3(F101, 0, 0, 1, -1)) is None
    line = plane_plane_intersection(z0, Plane3(F101, 1, 0, 1, -1))
    assert line == Line3(F101, (1, 0, 0), (0, 1, 0))
    assert line.b == (1, 0, 0) and line.d == (0, 1, 0)
    with pytest.raises(EqualPlanesError):
        plane_plane_intersection(z0, Plane3(F101, 0, 0, 5, 0))


def test_plane_through_lines(F101):
    y_axis = Line3(F101, (0, 0, 0), (0, 1, 0))
    assert plane_through_lines(x_axis(F101), y_axis) == Plane3(F101, 0, 0, 1, 0)
    assert plane_through_lines(x_axis(F101), Line3(F101, (0, 2, 0), (1, 0, 0))) == Plane3(
        F101, 0, 0, 1, 0
    )
    assert plane_through_lines(x_axis(F101), Line3(F101, (0, 0, 1), (0, 1, 0))) is None


def test_degenerate_objects(F5):
    with pytest.raises(DegenerateObjectError):
        Plane3(F5, 0, 0, 0, 1)
    with pytest.raises(DegenerateObjectError):
        Line3(F5, (1, 2, 3), (0, 5, 10))
    with pytest.raises(DegenerateObjectError):
        AffineMap(F5, ((1, 2, 3), (2, 4, 6), (0, 0, 1)))


def test_field_mismatch(F5, F101):
    with pytest.raises(FieldMismatchError):
        point_on_plane(Point3(F5, 0, 0, 0), Plane3(F101, 0, 0, 1, 0))
    with pytest.raises(FieldMismatchError):
        line_line_intersection(x_axis(F5), x_axis(F101))


def test_plane_canonical_scaling(F101):
    q = Plane3(F101, 0, 7, 14, 21)
    assert q.coeffs == (0, 1, 2, 3)
    assert q == Plane3(F101, 0, -3, -6, -9)
    assert Plane3(F101, 0, 0, 3, 0).coeffs == (0, 0, 1, 0)


def test_affine_examples(F5, F101):
    ident = AffineMap.identity(F101)
    objs = [Point3(F101, 4, 5, 6), x_axis(F101), Plane3(F101, 1, 2, 3, 4)]
    for obj in objs:
        assert apply_affine(ident, obj) == obj
    shift = AffineMap(F101, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), (0, 0, 1))
    assert apply_affine(shift, Point3(F101, 0, 0, 0)) == Point3(F101, 0, 0, 1)

    swap = AffineMap(F5, ((0, 0, 1), (0, 1, 0), (1, 0, 0)))
    image = apply_affine(swap, Plane3(F5, 0, 0, 1, 0))
    assert image == Plane3(F5, 1, 0, 0, 0)
    pt = Point3(F5, 3, 2, 0)
    assert point_on_plane(apply_affine(swap, pt), image)


def _random_point(F, rng):
    p = F.modulus
    return Point3(F, rng.below(p), rng.below(p), rng.below(p))


def _random_plane(F, rng):
    p = F.modulus
    while True:
        c = [rng.below(p) for _ in range(4)]
        if any(c[:3]):
            return Plane3(F, *c)


def _point_on(q, rng):
    F = q.field
    p = F.modulus
    a, b, c, d = q.coeffs
    free = [rng.below(p) for _ in range(3)]
    k = next(i for i in range(3) if q.coeffs[i])
    rest = sum(q.coeffs[i] * free[i] for i in range(3) if i != k) + d
    free[k] = -rest * pow(q.coeffs[k], -1, p)
    return Point3(F, *free)


def test_random_affine_is_deterministic_and_invertible(F101):
    a = random_invertible_affine(F101, Pcg32(11))
    b = random_invertible_affine(F101, Pcg32(11))
    assert a == b
    rng = Pcg32(0)
    for _ in range(200):
        assert random_invertible_affine(F101, rng).determinant != 0


def _random_line(F, rng, through=None):
    a = through or _random_point(F, rng)
    while True:
        b = _random_point(F, rng)
        if b != a:
            return line_through(a, b)


def test_affine_preserves_incidence(F101):
    rng = Pcg32(2024)
    for _ in range(1000):
        T = random_invertible_affine(F101, rng)
        q = _random_plane(F101, rng)
        on, other = _point_on(q, rng), _point_on(q, rng)
        if other == on:
            continue
        off = _random_point(F101, rng)
        line = line_through(on, other)
        stray = _random_line(F101, rng, through=on if rng.below(2) else None)
        for pt in (on, off):
            assert point_on_plane(pt, q) == point_on_plane(T(pt), T(q))
            assert point_on_line(pt, line) == point_on_line(T(pt), T(line))
        for ln in (line, stray):
            assert line_in_plane(ln, q) == line_in_plane(T(ln), T(q))
        if line != stray:
            before = line_line_intersection(line, stray)
            after = line_line_intersection(T(line), T(stray))
            assert (before is None) == (after is None)
            if before is not None:
                assert T(before) == after


def test_canonical_lines_identify_equal_loci(F101):
    rng = Pcg32(99)
    for _ in range(1000):
        line = _random_line(F101, rng)
        s, t = rng.sample_distinct(101, 2)
        rebuilt = line_through(line.point_at(s), line.point_at(t))
        assert rebuilt == line
        assert hash(rebuilt) == hash(line)
        again = Line3(F101, rebuilt.b, rebuilt.d)
        assert (again.b, again.d) == (line.b, line.d)
        scaled = Line3(F101, line.point_at(t), [7 * v for v in line.d])
        assert scaled == line


def test_intersection_symmetric(F101):
    rng = Pcg32(5)
    for _ in range(1000):
        l1 = _random_line(F101, rng)
        # half the pairs share a point, so hits are common
        l2 = _random_line(F101, rng, through=l1.point_at(rng.below(101)) if rng.below(2) else None)
        if l1 == l2:
            continue
        assert line_line_intersection(l1, l2) == line_line_intersection(l2, l1)


def test_line_has_exactly_p_points(F5):
    rng = Pcg32(1)
    every = [Point3(F5, x, y, z) for x in range(5) for y in range(5) for z in range(5)]
    for _ in range(50):
        line = _random_line(F5, rng)
        pts = set(line.points())
        assert len(pts) == 5
        assert sum(point_on_line(pt, line) for pt in every) == 5
        assert all(point_on_line(pt, line) for pt in pts)
