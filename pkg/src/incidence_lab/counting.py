"""Exact incidence and intersection counts, rich-line statistics and bound evaluation."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .errors import FieldMismatchError, SizeOrderViolation, TransferIdentityViolation
from .ff import PrimeField
from .geom import (
    Line3,
    Plane3,
    Point3,
    _intersect_raw,
    line_through,
    plane_plane_intersection,
)
from .rng import Pcg32
from .transform import DEFAULT_MAX_RETRIES, genericize, phi, psi

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    """Point set P and plane set Q over one field, deduplicated in first-seen order."""

    field: PrimeField
    points: tuple[Point3, ...] = ()
    planes: tuple[Plane3, ...] = ()

    def __post_init__(self):
        points = tuple(dict.fromkeys(self.points))
        planes = tuple(dict.fromkeys(self.planes))
        for obj in (*points, *planes):
            if obj.field != self.field:
                raise FieldMismatchError(f"{obj} is not over {self.field}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "planes", planes)

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.points), len(self.planes)


@dataclass(frozen=True)
class RichLineStat:
    line: Line3
    s_count: int
    t_count: int


def count_incidences(inst: Instance) -> int:
    p = inst.field.modulus
    pts = [pt.xyz for pt in inst.points]
    total = 0
    for a, b, c, d in (q.coeffs for q in inst.planes):
        total += sum(1 for x, y, z in pts if (a * x + b * y + c * z + d) % p == 0)
    return total


def _meeting(l: Line3, m: Line3):
    """Common point of l and m as a residue triple, None if disjoint, ``l`` itself if equal."""
    if m.field != l.field:
        raise FieldMismatchError(f"{l.field} vs {m.field}")
    if l == m:
        return l
    return _intersect_raw(l.b, l.d, m.b, m.d, l.field.modulus)


def count_line_intersections(L: Sequence[Line3], M: Sequence[Line3]) -> int:
    """Number of distinct points lying on some line of L and some line of M.

    A line present in both sets contributes all of its p points.
    """
    seen = set()
    for l in L:
        for m in M:
            hit = _meeting(l, m)
            if isinstance(hit, Line3):
                seen.update(pt.xyz for pt in hit.points())
            elif hit is not None:
                seen.add(hit)
    return len(seen)


def count_intersecting_pairs(L: Sequence[Line3], M: Sequence[Line3]) -> int:
    """Number of pairs (l, m) in L x M that meet."""
    return sum(1 for l in L for m in M if _meeting(l, m) is not None)


def _incidence_sets(inst: Instance) -> tuple[list[set[int]], list[set[int]]]:
    """planes_of[i]: planes through point i; points_of[j]: points on plane j."""
    p = inst.field.modulus
    planes_of: list[set[int]] = [set() for _ in inst.points]
    points_of: list[set[int]] = [set() for _ in inst.planes]
    for j, (a, b, c, d) in enumerate(q.coeffs for q in inst.planes):
        for i, (x, y, z) in enumerate(pt.xyz for pt in inst.points):
            if (a * x + b * y + c * z + d) % p == 0:
                planes_of[i].add(j)
                points_of[j].add(i)
    return planes_of, points_of


def rich_line_stats(inst: Instance) -> list[RichLineStat]:
    """(s, t) counts for every line through two points of P or inside two planes of Q.

    A plane contains the line through points i, j iff it contains both points,
    and a point lies on the meet of planes i, j iff it lies on both planes.
    """
    planes_of, points_of = _incidence_sets(inst)
    from_points: dict[Line3, set[int]] = {}
    for (i, p1), (j, p2) in combinations(enumerate(inst.points), 2):
        from_points.setdefault(line_through(p1, p2), {i}).add(j)
    from_planes: dict[Line3, set[int]] = {}
    for (i, q1), (j, q2) in combinations(enumerate(inst.planes), 2):
        line = plane_plane_intersection(q1, q2)
        if line is not None:
            from_planes.setdefault(line, {i}).add(j)
    stats = []
    for line in from_points.keys() | from_planes.keys():
        pts = from_points.get(line)
        pls = from_planes.get(line)
        if pts is None:
            i, j, *_ = pls
            pts = points_of[i] & points_of[j]
        if pls is None:
            i, j, *_ = pts
            pls = planes_of[i] & planes_of[j]
        stats.append(RichLineStat(line, len(pts), len(pls)))
    stats.sort(key=lambda st: (st.line.d, st.line.b))
    return stats


def max_collinear(inst: Instance) -> int:
    if len(inst.points) <= 1:
        return len(inst.points)
    counts: dict[Line3, set[int]] = {}
    for (i, p1), (j, p2) in combinations(enumerate(inst.points), 2):
        counts.setdefault(line_through(p1, p2), set()).update((i, j))
    return max(len(v) for v in counts.values())


def bound_rhs(n_points: int, n_planes: int, s: int, t: int) -> float:
    return math.sqrt(n_points) * n_planes + t * n_points + s * n_planes


def best_thresholds(
    stats: Sequence[RichLineStat], sizes: tuple[int, int]
) -> tuple[tuple[int, int], float]:
    """Valid (s, t) with s, t >= 2 minimizing t*|P| + s*|Q|.

    (s, t) is valid when no line has at least s points of P and lies in at
    least t planes of Q.  For fixed s the least valid t is one more than the
    largest t_count among stats with s_count >= s, so only s = 2 and
    s = s_count + 1 need to be tried.  Ties go to the smaller s.
    """
    n_points, n_planes = sizes
    if n_points > n_planes:
        raise SizeOrderViolation(f"|P|={n_points} exceeds |Q|={n_planes}")
    candidates = sorted({2} | {st.s_count + 1 for st in stats if st.s_count + 1 > 2})
    best = None
    for s in candidates:
        t = max([2] + [st.t_count + 1 for st in stats if st.s_count >= s])
        cost = t * n_points + s * n_planes
        if best is None or cost < best[0]:
            best = (cost, s, t)
    _, s, t = best
    return (s, t), bound_rhs(n_points, n_planes, s, t)


def sig6(x: float) -> float:
    return float(f"{x:.6g}")


@dataclass
class IncidenceReport:
    field: int
    n_points: int
    n_planes: int
    incidences: int
    intersections: int | None
    max_collinear: int
    best_thresholds: tuple[int, int]
    rhs_without_constant: float
    ratio: float
    seed: int | None = None
    warnings: list[str] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "seed": self.seed,
            "sizes": {"points": self.n_points, "planes": self.n_planes},
            "incidences": self.incidences,
            "intersections": self.intersections,
            "max_collinear": self.max_collinear,
            "best_s": self.best_thresholds[0],
            "best_t": self.best_thresholds[1],
            "rhs": sig6(self.rhs_without_constant),
            "ratio": sig6(self.ratio),
            "warnings": list(self.warnings),
        }


def transferred_counts(
    inst: Instance, rng: Pcg32, max_retries: int = DEFAULT_MAX_RETRIES
) -> tuple[int, int]:
    """Genericize, map P and Q to lines, and return (distinct points, meeting pairs)."""
    if not inst.points or not inst.planes:
        return 0, 0
    gen = genericize(inst.points, inst.planes, rng, max_retries=max_retries, field=inst.field)
    L = [phi(pt) for pt in gen.points]
    M = [psi(q) for q in gen.planes]
    return count_line_intersections(L, M), count_intersecting_pairs(L, M)


def report(
    inst: Instance,
    rng: Pcg32,
    seed: int | None = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> IncidenceReport:
    n_points, n_planes = inst.sizes
    if n_points > n_planes:
        raise SizeOrderViolation(f"|P|={n_points} exceeds |Q|={n_planes}")
    p = inst.field.modulus
    warnings = []
    if n_points > p * p:
        msg = f"|P|={n_points} exceeds p^2={p * p}; outside the characteristic condition"
        log.warning(msg)
        warnings.append(msg)
    incidences = count_incidences(inst)
    intersections, pairs = transferred_counts(inst, rng, max_retries)
    if not incidences == intersections == pairs:
        raise TransferIdentityViolation(
            f"incidences={incidences}, intersection points={intersections}, meeting pairs={pairs}"
        )
    (s, t), rhs = best_thresholds(rich_line_stats(inst), (n_points, n_planes))
    ratio = incidences / rhs if incidences else 0.0
    return IncidenceReport(
        field=p,
        n_points=n_points,
        n_planes=n_planes,
        incidences=incidences,
        intersections=intersections,
        max_collinear=max_collinear(inst),
        best_thresholds=(s, t),
        rhs_without_constant=rhs,
        ratio=ratio,
        seed=seed,
        warnings=warnings,
    )
