"""Points and planes of F_p^3 mapped to lines in a parameter space of lines.

A line meeting the z-axis (``LAMBDA``) at (0, 0, a) and the plane x = 1
(``PI``) at (1, b, c) is encoded by its star coordinates (a, b, c).  The
pencil of such lines through a point p traces a line ``phi(p)`` in star
space; the pencil inside a plane q through q's meeting point with the z-axis
traces a line ``psi(q)``.  For a point off the yz-plane and a plane with
nonzero z-coefficient, p lies on q exactly when phi(p) meets psi(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    FieldMismatchError,
    GenericPositionFailure,
    NoLambdaIntersectionError,
    NoPiIntersectionError,
    PlaneDegenerateForPsiError,
    PointOnYZPlaneError,
)
from .ff import FieldElement, PrimeField
from .geom import (
    AffineMap,
    Line3,
    Plane3,
    Point3,
    apply_affine,
    line_through,
    random_invertible_affine,
)
from .rng import Pcg32

DEFAULT_MAX_RETRIES = 100


@dataclass(frozen=True)
class StarCoords:
    a: FieldElement
    b: FieldElement
    c: FieldElement

    @property
    def field(self) -> PrimeField:
        return self.a.field

    def as_point(self) -> Point3:
        return Point3(self.field, self.a, self.b, self.c)

    @classmethod
    def from_point(cls, pt: Point3) -> StarCoords:
        return cls(pt.x, pt.y, pt.z)


def lambda_axis(field: PrimeField) -> Line3:
    return Line3(field, (0, 0, 0), (0, 0, 1))


def pi_plane(field: PrimeField) -> Plane3:
    return Plane3(field, 1, 0, 0, -1)


def star(line: Line3) -> StarCoords:
    field = line.field
    p = field.modulus
    (bx, by, bz), (dx, dy, dz) = line.b, line.d
    if dx == 0:
        raise NoPiIntersectionError(f"{line} is parallel to or inside the plane x=1")
    # canonical form has dx == 1 and bx == 0, so the base is the x=0 point
    t = -bx * pow(dx, -1, p) % p
    if (by + t * dy) % p:
        raise NoLambdaIntersectionError(f"{line} misses the z-axis")
    a = (bz + t * dz) % p
    s = (1 - bx) * pow(dx, -1, p) % p
    b = (by + s * dy) % p
    c = (bz + s * dz) % p
    return StarCoords(field(a), field(b), field(c))


def unstar(s: StarCoords) -> Line3:
    field = s.field
    a, b, c = s.a.value, s.b.value, s.c.value
    return Line3._raw(field, (0, 0, a), (1, b, (c - a) % field.modulus))


def _phi_params(xyz, p):
    x, y, z = xyz
    inv = pow(x, -1, p)
    return y * inv % p, (x - 1) * inv % p, z * inv % p


def _psi_params(coeffs, p):
    a, b, c, d = coeffs
    inv = pow(c, -1, p)
    return -d * inv % p, -b * inv % p, -(a + d) * inv % p


def phi(pt: Point3) -> Line3:
    """The line {(t, y0, u*t + v)} of star points of lines through pt meeting the z-axis."""
    if pt.xyz[0] == 0:
        raise PointOnYZPlaneError(f"{pt} lies on the yz-plane")
    y0, u, v = _phi_params(pt.xyz, pt.field.modulus)
    return Line3._raw(pt.field, (0, y0, v), (1, 0, u))


def psi(q: Plane3) -> Line3:
    """The line {(x0, t, u*t + v)} of star points of lines in q through q's z-axis point."""
    if q.coeffs[2] == 0:
        raise PlaneDegenerateForPsiError(f"{q} has zero z-coefficient")
    x0, u, v = _psi_params(q.coeffs, q.field.modulus)
    return Line3._raw(q.field, (x0, 0, v), (0, 1, u))


def pencil_oracle_point(pt: Point3) -> set[StarCoords]:
    """Brute-force star set of all lines through pt that meet the z-axis and x = 1.

    O(p) for points off the z-axis; a point on the z-axis yields the whole
    plane a = z(pt) of star space (p**2 elements).
    """
    field = pt.field
    p = field.modulus
    x, y, z = pt.xyz
    if x == 0 and y == 0:
        return {StarCoords(field(z), field(b), field(c)) for b in range(p) for c in range(p)}
    out = set()
    for a in range(p):
        line = line_through(pt, Point3(field, 0, 0, a))
        if line.d[0] == 0:
            continue
        out.add(star(line))
    return out


# ---------------------------------------------------------------------------
# General position


@dataclass(frozen=True)
class GenericInstance:
    points: tuple[Point3, ...]
    planes: tuple[Plane3, ...]
    map_used: AffineMap


def _pencils_disjoint(keys) -> bool:
    """keys yields (plane_key, slope) pairs; images are disjoint iff equal keys share a slope."""
    seen = {}
    for key, slope in keys:
        if seen.setdefault(key, slope) != slope:
            return False
    return True


def in_general_position(points: Sequence[Point3], planes: Sequence[Plane3]) -> bool:
    """True when phi and psi apply everywhere and their images are pairwise disjoint.

    Two phi-lines lie in planes y = y0; they are disjoint exactly when their y0
    differ or their slopes u agree (distinct points never give the same line).
    The same holds for psi-lines inside planes x = x0.
    """
    if any(pt.xyz[0] == 0 for pt in points) or any(q.coeffs[2] == 0 for q in planes):
        return False
    if points:
        p = points[0].field.modulus
        if not _pencils_disjoint(_phi_params(pt.xyz, p)[:2] for pt in points):
            return False
    if planes:
        p = planes[0].field.modulus
        if not _pencils_disjoint(_psi_params(q.coeffs, p)[:2] for q in planes):
            return False
    return True


def genericize(
    points: Sequence[Point3],
    planes: Sequence[Plane3],
    rng: Pcg32,
    max_retries: int = DEFAULT_MAX_RETRIES,
    field: PrimeField | None = None,
) -> GenericInstance:
    """Move an instance into general position with a random invertible affine map.

    Raises GenericPositionFailure after ``max_retries`` draws; over a small
    field there may be no map that separates every pair.
    """
    objs = [*points, *planes]
    if field is None:
        if not objs:
            raise ValueError("field is required for an empty instance")
        field = objs[0].field
    for o in objs:
        if o.field != field:
            raise FieldMismatchError(f"{o} is not over {field}")
    for _ in range(max_retries):
        T = random_invertible_affine(field, rng)
        new_points = tuple(apply_affine(T, pt) for pt in points)
        new_planes = tuple(apply_affine(T, q) for q in planes)
        if in_general_position(new_points, new_planes):
            return GenericInstance(new_points, new_planes, T)
    raise GenericPositionFailure(
        f"no general-position map for |P|={len(points)}, |Q|={len(planes)} over {field} "
        f"after {max_retries} attempts"
    )
