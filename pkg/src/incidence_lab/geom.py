"""Affine points, lines and planes in F_p^3.

Every object keeps its coordinates as reduced residues together with its
field, and is stored in a canonical form so that ``==`` and ``hash`` identify
equal loci.
"""

from __future__ import annotations

from typing import Iterator, Union

from .errors import (
    DegenerateObjectError,
    EqualLinesError,
    EqualPlanesError,
    EqualPointsError,
    FieldMismatchError,
)
from .ff import FieldElement, PrimeField
from .rng import Pcg32

Vec3 = tuple[int, int, int]


def _same_field(*objs) -> PrimeField:
    field = objs[0].field
    for o in objs[1:]:
        if o.field != field:
            raise FieldMismatchError(f"{field} vs {o.field}")
    return field


def _cross(u: Vec3, v: Vec3, p: int) -> Vec3:
    return (
        (u[1] * v[2] - u[2] * v[1]) % p,
        (u[2] * v[0] - u[0] * v[2]) % p,
        (u[0] * v[1] - u[1] * v[0]) % p,
    )


def _dot(u, v, p: int) -> int:
    return (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) % p


def _sub(u: Vec3, v: Vec3, p: int) -> Vec3:
    return ((u[0] - v[0]) % p, (u[1] - v[1]) % p, (u[2] - v[2]) % p)


def _lead(v) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


class Point3:
    __slots__ = ("field", "xyz")

    def __init__(self, field: PrimeField, x, y, z):
        r = field.residue
        self.field = field
        self.xyz = (r(x), r(y), r(z))

    @classmethod
    def _raw(cls, field: PrimeField, xyz: Vec3) -> Point3:
        obj = cls.__new__(cls)
        obj.field = field
        obj.xyz = xyz
        return obj

    @property
    def x(self) -> FieldElement:
        return FieldElement(self.xyz[0], self.field)

    @property
    def y(self) -> FieldElement:
        return FieldElement(self.xyz[1], self.field)

    @property
    def z(self) -> FieldElement:
        return FieldElement(self.xyz[2], self.field)

    def __eq__(self, other):
        if not isinstance(other, Point3):
            return NotImplemented
        return self.xyz == other.xyz and self.field == other.field

    def __hash__(self):
        return hash(("P", self.xyz))

    def __lt__(self, other):
        return self.xyz < other.xyz

    def __repr__(self):
        return f"Point3{self.xyz}"


class Plane3:
    """The locus a*x + b*y + c*z + d = 0, scaled so the first nonzero of (a, b, c) is 1."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, a, b, c, d):
        r = field.residue
        self.field = field
        self.coeffs = self._canonical((r(a), r(b), r(c), r(d)), field.modulus)

    @staticmethod
    def _canonical(coeffs, p):
        i = _lead(coeffs[:3])
        if i < 0:
            raise DegenerateObjectError("plane normal (a, b, c) is zero")
        s = pow(coeffs[i], -1, p)
        return tuple(v * s % p for v in coeffs)

    @classmethod
    def _raw(cls, field: PrimeField, coeffs) -> Plane3:
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = cls._canonical(coeffs, field.modulus)
        return obj

    @property
    def normal(self) -> Vec3:
        return self.coeffs[:3]

    a = property(lambda self: FieldElement(self.coeffs[0], self.field))
    b = property(lambda self: FieldElement(self.coeffs[1], self.field))
    c = property(lambda self: FieldElement(self.coeffs[2], self.field))
    d = property(lambda self: FieldElement(self.coeffs[3], self.field))

    def __eq__(self, other):
        if not isinstance(other, Plane3):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(("Q", self.coeffs))

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __repr__(self):
        return "Plane3({}x + {}y + {}z + {} = 0)".format(*self.coeffs)


class Line3:
    """Affine line base + t*dir.

    Canonical form: the first nonzero coordinate of ``dir`` is 1 and ``base``
    has a zero in that coordinate.
    """

    __slots__ = ("field", "b", "d")

    def __init__(self, field: PrimeField, base, direction):
        r = field.residue
        if isinstance(base, Point3):
            if base.field != field:
                raise FieldMismatchError(f"{base.field} vs {field}")
            base = base.xyz
        self.field = field
        self.b, self.d = self._canonical(
            tuple(r(v) for v in base), tuple(r(v) for v in direction), field.modulus
        )

    @staticmethod
    def _canonical(base, direction, p):
        i = _lead(direction)
        if i < 0:
            raise DegenerateObjectError("line direction is zero")
        s = pow(direction[i], -1, p)
        d = tuple(v * s % p for v in direction)
        t = base[i]
        b = tuple((base[k] - t * d[k]) % p for k in range(3))
        return b, d

    @classmethod
    def _raw(cls, field: PrimeField, base: Vec3, direction: Vec3) -> Line3:
        obj = cls.__new__(cls)
        obj.field = field
        obj.b, obj.d = cls._canonical(base, direction, field.modulus)
        return obj

    @property
    def base(self) -> Point3:
        return Point3._raw(self.field, self.b)

    @property
    def direction(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return tuple(FieldElement(v, self.field) for v in self.d)

    def point_at(self, t) -> Point3:
        p = self.field.modulus
        t = self.field.residue(t)
        return Point3._raw(self.field, tuple((self.b[k] + t * self.d[k]) % p for k in range(3)))

    def points(self) -> Iterator[Point3]:
        for t in range(self.field.modulus):
            yield self.point_at(t)

    def __eq__(self, other):
        if not isinstance(other, Line3):
            return NotImplemented
        return self.b == other.b and self.d == other.d and self.field == other.field

    def __hash__(self):
        return hash(("L", self.b, self.d))

    def __lt__(self, other):
        return (self.d, self.b) < (other.d, other.b)

    def __repr__(self):
        return f"Line3(base={self.b}, dir={self.d})"


# ---------------------------------------------------------------------------
# Incidence predicates and constructions


def point_on_plane(pt: Point3, q: Plane3) -> bool:
    p = _same_field(pt, q).modulus
    a, b, c, d = q.coeffs
    x, y, z = pt.xyz
    return (a * x + b * y + c * z + d) % p == 0


def point_on_line(pt: Point3, line: Line3) -> bool:
    p = _same_field(pt, line).modulus
    return _cross(_sub(pt.xyz, line.b, p), line.d, p) == (0, 0, 0)


def line_in_plane(line: Line3, q: Plane3) -> bool:
    p = _same_field(line, q).modulus
    a, b, c, d = q.coeffs
    bx, by, bz = line.b
    return (a * bx + b * by + c * bz + d) % p == 0 and _dot(q.coeffs, line.d, p) == 0


def _intersect_raw(b1, d1, b2, d2, p) -> Vec3 | None:
    """Common point of two distinct lines, or None when parallel or skew."""
    n = _cross(d1, d2, p)
    if n == (0, 0, 0):
        return None
    w = _sub(b2, b1, p)
    if _dot(w, n, p) != 0:
        return None
    # Solve s*d1 - t*d2 = w on a pair of rows whose 2x2 minor is nonzero;
    # the minors of [d1, d2] are exactly the components of n.
    k = _lead(n)
    i, j = ((1, 2), (2, 0), (0, 1))[k]
    det = (d1[j] * d2[i] - d1[i] * d2[j]) % p  # det of [[d1i, -d2i], [d1j, -d2j]]
    s = (w[j] * d2[i] - w[i] * d2[j]) * pow(det, -1, p) % p
    return tuple((b1[m] + s * d1[m]) % p for m in range(3))


def line_line_intersection(l1: Line3, l2: Line3) -> Point3 | None:
    """The unique common point of two distinct lines, or None if parallel or skew."""
    field = _same_field(l1, l2)
    if l1 == l2:
        raise EqualLinesError("intersection of a line with itself is not a point")
    xyz = _intersect_raw(l1.b, l1.d, l2.b, l2.d, field.modulus)
    return None if xyz is None else Point3._raw(field, xyz)


def line_through(p1: Point3, p2: Point3) -> Line3:
    field = _same_field(p1, p2)
    if p1 == p2:
        raise EqualPointsError(f"{p1} given twice")
    return Line3._raw(field, p1.xyz, _sub(p2.xyz, p1.xyz, field.modulus))


def plane_plane_intersection(q1: Plane3, q2: Plane3) -> Line3 | None:
    field = _same_field(q1, q2)
    if q1 == q2:
        raise EqualPlanesError(f"{q1} given twice")
    p = field.modulus
    direction = _cross(q1.normal, q2.normal, p)
    if direction == (0, 0, 0):
        return None
    # Fix the coordinate where the direction is nonzero to 0 and solve the
    # remaining 2x2 system; its determinant is +-direction[k].
    k = _lead(direction)
    i, j = ((1, 2), (2, 0), (0, 1))[k]
    a1, b1, r1 = q1.coeffs[i], q1.coeffs[j], -q1.coeffs[3]
    a2, b2, r2 = q2.coeffs[i], q2.coeffs[j], -q2.coeffs[3]
    inv = pow((a1 * b2 - a2 * b1) % p, -1, p)
    base = [0, 0, 0]
    base[i] = (r1 * b2 - r2 * b1) * inv % p
    base[j] = (a1 * r2 - a2 * r1) * inv % p
    return Line3._raw(field, tuple(base), direction)


def plane_through_lines(l1: Line3, l2: Line3) -> Plane3 | None:
    """The plane containing two distinct coplanar lines, or None if they are skew."""
    field = _same_field(l1, l2)
    p = field.modulus
    if l1 == l2:
        raise EqualLinesError("a single line lies in many planes")
    n = _cross(l1.d, l2.d, p)
    if n == (0, 0, 0):
        n = _cross(l1.d, _sub(l2.b, l1.b, p), p)
    elif _dot(_sub(l2.b, l1.b, p), n, p) != 0:
        return None
    return Plane3._raw(field, (*n, -_dot(n, l1.b, p)))


# ---------------------------------------------------------------------------
# Affine maps


def _det3(m, p: int) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    ) % p


def _inverse3(m, p: int):
    det = _det3(m, p)
    if det == 0:
        raise DegenerateObjectError("linear part is singular")
    inv = pow(det, -1, p)
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    # inverse = adj / det, adj = cofactor transpose
    return tuple(tuple(cof[j][i] * inv % p for j in range(3)) for i in range(3))


class AffineMap:
    """x -> linear @ x + shift with an invertible linear part."""

    __slots__ = ("field", "linear", "shift", "_inv")

    def __init__(self, field: PrimeField, linear, shift=(0, 0, 0)):
        r = field.residue
        self.field = field
        self.linear = tuple(tuple(r(v) for v in row) for row in linear)
        self.shift = tuple(r(v) for v in shift)
        if len(self.linear) != 3 or any(len(row) != 3 for row in self.linear):
            raise ValueError("linear part must be 3x3")
        self._inv = _inverse3(self.linear, field.modulus)

    @classmethod
    def identity(cls, field: PrimeField) -> AffineMap:
        return cls(field, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @property
    def determinant(self) -> int:
        return _det3(self.linear, self.field.modulus)

    def _lin(self, v, p):
        return tuple(_dot(row, v, p) for row in self.linear)

    def __call__(self, obj):
        return apply_affine(self, obj)

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return (self.field, self.linear, self.shift) == (other.field, other.linear, other.shift)

    def __hash__(self):
        return hash((self.linear, self.shift))

    def __repr__(self):
        return f"AffineMap(linear={self.linear}, shift={self.shift})"


GeomObject = Union[Point3, Line3, Plane3]


def apply_affine(T: AffineMap, obj: GeomObject) -> GeomObject:
    p = _same_field(T, obj).modulus
    if isinstance(obj, Point3):
        v = T._lin(obj.xyz, p)
        return Point3._raw(obj.field, tuple((v[k] + T.shift[k]) % p for k in range(3)))
    if isinstance(obj, Line3):
        b = T._lin(obj.b, p)
        return Line3._raw(
            obj.field, tuple((b[k] + T.shift[k]) % p for k in range(3)), T._lin(obj.d, p)
        )
    if isinstance(obj, Plane3):
        # n.x + d = 0 with x = A^-1 (x' - s)  =>  (A^-T n).x' + (d - n.A^-1 s) = 0
        n = obj.normal
        inv = T._inv
        new_n = tuple(sum(inv[k][i] * n[k] for k in range(3)) % p for i in range(3))
        return Plane3._raw(obj.field, (*new_n, (obj.coeffs[3] - _dot(new_n, T.shift, p)) % p))
    raise TypeError(f"cannot apply an affine map to {type(obj).__name__}")


MAX_AFFINE_ATTEMPTS = 1000


def random_invertible_affine(field: PrimeField, rng: Pcg32) -> AffineMap:
    """Uniform entries for the linear part and shift, resampled until invertible."""
    p = field.modulus
    for _ in range(MAX_AFFINE_ATTEMPTS):
        linear = tuple(tuple(rng.below(p) for _ in range(3)) for _ in range(3))
        shift = tuple(rng.below(p) for _ in range(3))
        if _det3(linear, p):
            return AffineMap(field, linear, shift)
    raise RuntimeError(f"no invertible matrix in {MAX_AFFINE_ATTEMPTS} draws over {field}")
