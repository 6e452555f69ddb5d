"""Seeded instance generators: extremal configurations and random instances."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .counting import Instance
from .errors import ParameterExceedsFieldError
from .ff import PrimeField, nullspace_mod
from .geom import Line3, Plane3, Point3, line_in_plane, line_through, point_on_line
from .rng import Pcg32

MAX_REJECTIONS = 10**6

KINDS = ("rich-line", "regulus", "random", "random-no-rich-lines")


def _random_line(field: PrimeField, rng: Pcg32) -> Line3:
    p = field.modulus
    base = tuple(rng.below(p) for _ in range(3))
    while True:
        direction = tuple(rng.below(p) for _ in range(3))
        if any(direction):
            return Line3(field, base, direction)


def planes_through_line(line: Line3) -> list[Plane3]:
    """All p + 1 affine planes containing the line, in a fixed order."""
    field = line.field
    p = field.modulus
    n1, n2 = nullspace_mod([list(line.d)], p)
    normals = [tuple((a + i * b) % p for a, b in zip(n1, n2)) for i in range(p)] + [tuple(n2)]
    return [
        Plane3(field, *n, -sum(c * b for c, b in zip(n, line.b))) for n in normals
    ]


def rich_line_instance(k: int, n: int, field: PrimeField, seed: int) -> Instance:
    """k - 1 points on a random line and n planes through that line: (k-1)*n incidences.

    n is capped at p even though p + 1 planes contain an affine line.
    """
    p = field.modulus
    if not 1 <= k - 1 <= p:
        raise ParameterExceedsFieldError(f"k-1={k - 1} must lie in [1, {p}]")
    if not 1 <= n <= p:
        raise ParameterExceedsFieldError(f"n={n} must lie in [1, {p}]")
    rng = Pcg32(seed)
    line = _random_line(field, rng)
    points = [line.point_at(t) for t in rng.sample_distinct(p, k - 1)]
    pencil = planes_through_line(line)
    planes = [pencil[i] for i in rng.sample_distinct(p + 1, n)]
    return Instance(field, tuple(points), tuple(planes))


def regulus_lines(field: PrimeField, a_values, b_values) -> tuple[list[Line3], list[Line3]]:
    """The two rulings of z = x*y: {x=a, z=a*y} and {y=b, z=b*x}."""
    L = [Line3(field, (a, 0, 0), (0, 1, a)) for a in a_values]
    M = [Line3(field, (0, b, 0), (1, 0, b)) for b in b_values]
    return L, M


def regulus_instance(
    a_count: int, b_count: int, field: PrimeField, seed: int
) -> tuple[list[Line3], list[Line3]]:
    p = field.modulus
    if not (0 <= a_count <= p and 0 <= b_count <= p):
        raise ParameterExceedsFieldError(f"ruling sizes ({a_count}, {b_count}) exceed p={p}")
    rng = Pcg32(seed)
    a_values = rng.sample_distinct(p, a_count)
    b_values = rng.sample_distinct(p, b_count)
    return regulus_lines(field, a_values, b_values)


def _random_point(field, rng):
    p = field.modulus
    return Point3(field, rng.below(p), rng.below(p), rng.below(p))


def _random_plane(field, rng):
    p = field.modulus
    while True:
        coeffs = [rng.below(p) for _ in range(4)]
        if any(coeffs[:3]):
            return Plane3(field, *coeffs)


def _distinct(make, count: int, what: str, accept=lambda obj: True) -> list:
    out: dict = {}
    for _ in range(MAX_REJECTIONS):
        if len(out) == count:
            break
        obj = make()
        if obj not in out and accept(obj):
            out[obj] = None
    if len(out) < count:
        raise ParameterExceedsFieldError(
            f"could not draw {count} distinct {what} in {MAX_REJECTIONS} attempts"
        )
    return list(out)


def random_instance(m: int, n: int, field: PrimeField, seed: int) -> Instance:
    """m uniform distinct points and n uniform distinct planes."""
    p = field.modulus
    if not (0 <= m <= p**3 and 0 <= n <= p**3):
        raise ParameterExceedsFieldError(f"sizes ({m}, {n}) exceed p^3={p**3}")
    rng = Pcg32(seed)
    points = _distinct(lambda: _random_point(field, rng), m, "points")
    planes = _distinct(lambda: _random_plane(field, rng), n, "planes")
    return Instance(field, tuple(points), tuple(planes))


def random_no_rich_lines_instance(m: int, n: int, field: PrimeField, seed: int) -> Instance:
    """Random instance with no three collinear points and no point-spanned line in two planes.

    Every rich-line statistic then has s <= 2, and s = 2 forces t <= 1, so
    (s, t) = (2, 2) is a valid threshold pair.
    """
    p = field.modulus
    if not (0 <= m <= p**3 and 0 <= n <= p**3):
        raise ParameterExceedsFieldError(f"sizes ({m}, {n}) exceed p^3={p**3}")
    rng = Pcg32(seed)
    points: list[Point3] = []
    spanned: list[Line3] = []

    def accept_point(pt):
        if any(point_on_line(pt, line) for line in spanned):
            return False
        spanned.extend(line_through(pt, other) for other in points)
        points.append(pt)
        return True

    _distinct(lambda: _random_point(field, rng), m, "points", accept_point)
    covered: set[Line3] = set()

    def accept_plane(q):
        inside = [line for line in spanned if line_in_plane(line, q)]
        if any(line in covered for line in inside):
            return False
        covered.update(inside)
        return True

    planes = _distinct(lambda: _random_plane(field, rng), n, "planes", accept_plane)
    return Instance(field, tuple(points), tuple(planes))


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    field: PrimeField
    seed: int = 0
    parameters: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown construction kind {self.kind!r}; expected one of {KINDS}")

    def build(self):
        """An Instance, or an (L, M) pair of line lists for the regulus kind."""
        prm = self.parameters
        if self.kind == "rich-line":
            return rich_line_instance(prm["k"], prm["n"], self.field, self.seed)
        if self.kind == "regulus":
            return regulus_instance(prm["a"], prm["b"], self.field, self.seed)
        if self.kind == "random":
            return random_instance(prm["m"], prm["n"], self.field, self.seed)
        return random_no_rich_lines_instance(prm["m"], prm["n"], self.field, self.seed)
