"""Quadrics and low-degree interpolation surfaces containing given lines."""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

from .errors import DegenerateObjectError, FieldMismatchError, FieldTooSmallForDegreeError
from .ff import FieldElement, PrimeField, nullspace_mod
from .geom import Line3, Plane3, Point3, line_in_plane, plane_through_lines

Monomial = tuple[int, int, int]

QUADRIC_MONOMIALS: tuple[Monomial, ...] = (
    (2, 0, 0), (0, 2, 0), (0, 0, 2),
    (1, 1, 0), (1, 0, 1), (0, 1, 1),
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (0, 0, 0),
)


def monomials(degree: int) -> tuple[Monomial, ...]:
    """Exponents of x^i y^j z^k with i+j+k <= degree, graded then lexicographic, highest first."""
    out = [
        (i, j, total - i - j)
        for total in range(degree, -1, -1)
        for i in range(total, -1, -1)
        for j in range(total - i, -1, -1)
    ]
    return tuple(out)


def _monomial_row(xyz, mons: Sequence[Monomial], degree: int, p: int) -> list[int]:
    pw = []
    for v in xyz:
        acc = [1]
        for _ in range(degree):
            acc.append(acc[-1] * v % p)
        pw.append(acc)
    px, py, pz = pw
    return [px[i] * py[j] % p * pz[k] % p for i, j, k in mons]


def _canonical(coeffs, p: int) -> tuple[int, ...]:
    coeffs = [c % p for c in coeffs]
    for c in coeffs:
        if c:
            s = pow(c, -1, p)
            return tuple(v * s % p for v in coeffs)
    raise DegenerateObjectError("zero polynomial does not define a surface")


class _PolySurface:
    __slots__ = ("field", "coeffs")
    monomials: tuple[Monomial, ...] = ()
    degree: int = 0

    def evaluate(self, pt: Point3) -> FieldElement:
        if pt.field != self.field:
            raise FieldMismatchError(f"{pt.field} vs {self.field}")
        return FieldElement(self._eval_raw(pt.xyz), self.field)

    def _eval_raw(self, xyz) -> int:
        p = self.field.modulus
        row = _monomial_row(xyz, self.monomials, self.degree, p)
        return sum(c * m for c, m in zip(self.coeffs, row)) % p

    def terms(self) -> dict[Monomial, FieldElement]:
        return {m: FieldElement(c, self.field) for m, c in zip(self.monomials, self.coeffs) if c}

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.field, self.degree, self.coeffs) == (other.field, other.degree, other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self.degree, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({_format_poly(self)})"


def _format_poly(s: _PolySurface) -> str:
    parts = []
    for (i, j, k), c in zip(s.monomials, s.coeffs):
        if not c:
            continue
        mon = "".join(v + (f"^{e}" if e > 1 else "") for v, e in zip("xyz", (i, j, k)) if e)
        if not mon:
            parts.append(str(c))
        else:
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return " + ".join(parts)


class Quadric(_PolySurface):
    """Polynomial of degree <= 2 with coefficients on x², y², z², xy, xz, yz, x, y, z, 1.

    Includes degenerate cases: plane pairs, double planes and (when the
    quadratic part vanishes) single planes.
    """

    __slots__ = ()
    monomials = QUADRIC_MONOMIALS
    degree = 2

    def __init__(self, field: PrimeField, coeffs):
        if len(coeffs) != 10:
            raise ValueError("a quadric has 10 coefficients")
        self.field = field
        self.coeffs = _canonical([field.residue(c) for c in coeffs], field.modulus)


class Surface(_PolySurface):
    """Polynomial of a given total degree over the basis ``monomials(degree)``."""

    __slots__ = ("degree", "monomials")

    def __init__(self, field: PrimeField, degree: int, coeffs):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        mons = monomials(degree)
        if len(coeffs) != len(mons):
            raise ValueError(f"degree {degree} needs {len(mons)} coefficients")
        coeffs = _canonical([field.residue(c) for c in coeffs], field.modulus)
        if not any(c for c, m in zip(coeffs, mons) if sum(m) == degree):
            raise DegenerateObjectError(f"top-degree part vanishes; not a degree-{degree} surface")
        self.field = field
        self.degree = degree
        self.monomials = mons
        self.coeffs = coeffs


def evaluate(surface: _PolySurface, pt: Point3) -> FieldElement:
    return surface.evaluate(pt)


def _check_room(field: PrimeField, degree: int):
    if field.modulus < degree + 1:
        raise FieldTooSmallForDegreeError(
            f"{field} has fewer than {degree + 1} points per line"
        )


def line_in_surface(line: Line3, surface: _PolySurface) -> bool:
    """Containment test: the restriction to the line has degree <= deg, so deg+1 zeros suffice."""
    if line.field != surface.field:
        raise FieldMismatchError(f"{line.field} vs {surface.field}")
    _check_room(line.field, surface.degree)
    return all(surface._eval_raw(line.point_at(t).xyz) == 0 for t in range(surface.degree + 1))


def _containment_rows(lines: Sequence[Line3], mons, degree: int, p: int) -> list[list[int]]:
    return [
        _monomial_row(line.point_at(t).xyz, mons, degree, p)
        for line in lines
        for t in range(degree + 1)
    ]


def quadric_space(lines: Sequence[Line3]) -> list[tuple[int, ...]]:
    """Deterministic basis of the quadric coefficient vectors vanishing on every line."""
    if not lines:
        raise ValueError("need at least one line")
    field = lines[0].field
    for line in lines:
        if line.field != field:
            raise FieldMismatchError(f"{line.field} vs {field}")
    rows = _containment_rows(lines, QUADRIC_MONOMIALS, 2, field.modulus)
    return [tuple(v) for v in nullspace_mod(rows, field.modulus)]


def quadric_through_lines(l1: Line3, l2: Line3, l3: Line3) -> Quadric:
    """A quadric containing three lines: 9 conditions on 10 unknowns always leave a solution."""
    basis = quadric_space([l1, l2, l3])
    return Quadric(l1.field, basis[0])


def lines_on_quadric(surface: _PolySurface | Plane3, lines: Sequence[Line3]) -> list[Line3]:
    if isinstance(surface, Plane3):
        return [line for line in lines if line_in_plane(line, surface)]
    return [line for line in lines if line_in_surface(line, surface)]


def rich_surfaces(
    L: Sequence[Line3], M: Sequence[Line3]
) -> list[tuple[Quadric | Plane3, int, int]]:
    """Quadrics and planes spanned by the lines, with their (#L, #M) line counts.

    Quadrics come from triples of L+M whose containing quadric is unique;
    planes from coplanar pairs.  Ordered by canonical coefficients, quadrics
    first.
    """
    pool = list(dict.fromkeys([*L, *M]))
    quadrics: set[Quadric] = set()
    planes: set[Plane3] = set()
    for triple in combinations(pool, 3):
        basis = quadric_space(triple)
        if len(basis) == 1:
            quadrics.add(Quadric(triple[0].field, basis[0]))
    for l1, l2 in combinations(pool, 2):
        plane = plane_through_lines(l1, l2)
        if plane is not None:
            planes.add(plane)
    out = []
    for surf in sorted(quadrics, key=lambda q: q.coeffs):
        out.append((surf, len(lines_on_quadric(surf, L)), len(lines_on_quadric(surf, M))))
    for surf in sorted(planes, key=lambda q: q.coeffs):
        out.append((surf, len(lines_on_quadric(surf, L)), len(lines_on_quadric(surf, M))))
    return out


def quadric_richness(L: Sequence[Line3], M: Sequence[Line3]) -> list[tuple[int, int]]:
    """(s, t) profile: for each spanned quadric or plane, how many lines of L and of M it holds."""
    return [(s, t) for _, s, t in rich_surfaces(L, M)]


def degree_bound(n_lines: int) -> int:
    """ceil(sqrt(6 * n_lines)) + 1"""
    if n_lines < 1:
        raise ValueError("need at least one line")
    return math.isqrt(6 * n_lines - 1) + 2


def min_degree_surface(lines: Sequence[Line3]) -> Surface:
    """Lowest-degree surface containing every line, by solving vanishing conditions.

    Degree d is tried for d = 1, 2, ... with d+1 sample points per line; the
    first nontrivial kernel gives the surface.  A dimension count guarantees
    success by d = ceil(sqrt(6*|L|)) + 1.
    """
    if not lines:
        raise ValueError("need at least one line")
    if len(set(lines)) != len(lines):
        raise ValueError("lines must be distinct")
    field = lines[0].field
    for line in lines:
        if line.field != field:
            raise FieldMismatchError(f"{line.field} vs {field}")
    bound = degree_bound(len(lines))
    if field.modulus <= bound:
        raise FieldTooSmallForDegreeError(
            f"{field} too small for {len(lines)} lines (need p > {bound})"
        )
    p = field.modulus
    for d in range(1, bound + 1):
        mons = monomials(d)
        basis = nullspace_mod(_containment_rows(lines, mons, d, p), p)
        if basis:
            return Surface(field, d, basis[0])
    raise AssertionError("dimension count violated")  # unreachable
