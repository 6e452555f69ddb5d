"""Command-line harness.

Instance files are ASCII, one record per line, ``#`` starts a comment::

    F 101               field characteristic (first record)
    P x y z             point
    Q a b c d           plane a*x + b*y + c*z + d = 0
    L bx by bz dx dy dz line (point-side image)
    M bx by bz dx dy dz line (plane-side image)

Integers may be negative or large; they are reduced mod p on load.

Exit codes: 0 ok, 1 usage, 2 parse/IO, 3 precondition, 4 general position
failure, 5 internal check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import __version__
from .constructions import KINDS, ConstructionSpec, regulus_instance, rich_line_instance
from .counting import (
    Instance,
    best_thresholds,
    count_incidences,
    count_intersecting_pairs,
    count_line_intersections,
    max_collinear,
    report,
    rich_line_stats,
    sig6,
    transferred_counts,
)
from .errors import (
    DegenerateObjectError,
    GenericPositionFailure,
    NonPrimeFieldError,
    ParameterExceedsFieldError,
    ParseError,
    SizeOrderViolation,
    TransferIdentityViolation,
)
from .ff import PrimeField
from .geom import Line3, Plane3, Point3, line_line_intersection, point_on_plane
from .rng import Pcg32
from .transform import DEFAULT_MAX_RETRIES, genericize, phi, psi

log = logging.getLogger("incidence_lab")

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_GENERIC, EXIT_INTERNAL = range(6)
THREADS_ENV = "INCIDENCE_LAB_THREADS"


# ---------------------------------------------------------------------------
# Instance text format


@dataclass
class InstanceFile:
    field: PrimeField
    points: list[Point3] = dc_field(default_factory=list)
    planes: list[Plane3] = dc_field(default_factory=list)
    l_lines: list[Line3] = dc_field(default_factory=list)
    m_lines: list[Line3] = dc_field(default_factory=list)

    def instance(self) -> Instance:
        return Instance(self.field, tuple(self.points), tuple(self.planes))


_ARITY = {"P": 3, "Q": 4, "L": 6, "M": 6}


def parse_instance_text(text: str) -> InstanceFile:
    parsed = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        tag, args = fields[0], fields[1:]
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise ParseError(line_no, f"non-integer argument in {raw.strip()!r}") from None
        if tag == "F":
            if parsed is not None:
                raise ParseError(line_no, "duplicate F header")
            if len(values) != 1:
                raise ParseError(line_no, "F takes exactly one integer")
            try:
                parsed = InstanceFile(PrimeField(values[0]))
            except NonPrimeFieldError as exc:
                raise NonPrimeFieldError(f"line {line_no}: {exc}") from None
            continue
        if tag not in _ARITY:
            raise ParseError(line_no, f"unknown record type {tag!r}")
        if parsed is None:
            raise ParseError(line_no, "record before the F header")
        if len(values) != _ARITY[tag]:
            raise ParseError(line_no, f"{tag} takes {_ARITY[tag]} integers, got {len(values)}")
        F = parsed.field
        try:
            if tag == "P":
                parsed.points.append(Point3(F, *values))
            elif tag == "Q":
                parsed.planes.append(Plane3(F, *values))
            else:
                line = Line3(F, values[:3], values[3:])
                (parsed.l_lines if tag == "L" else parsed.m_lines).append(line)
        except DegenerateObjectError as exc:
            raise ParseError(line_no, str(exc)) from None
    if parsed is None:
        raise ParseError(0, "missing F header")
    parsed.points = list(dict.fromkeys(parsed.points))
    parsed.planes = list(dict.fromkeys(parsed.planes))
    parsed.l_lines = list(dict.fromkeys(parsed.l_lines))
    parsed.m_lines = list(dict.fromkeys(parsed.m_lines))
    return parsed


def read_instance_file(path) -> InstanceFile:
    return parse_instance_text(Path(path).read_text(encoding="ascii"))


def parse_instance_file(path) -> Instance:
    return read_instance_file(path).instance()


def format_instance(
    field: PrimeField, points=(), planes=(), l_lines=(), m_lines=(), comments=()
) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"F {field.modulus}")
    out += ["P {} {} {}".format(*pt.xyz) for pt in points]
    out += ["Q {} {} {} {}".format(*q.coeffs) for q in planes]
    out += ["L {} {} {} {} {} {}".format(*line.b, *line.d) for line in l_lines]
    out += ["M {} {} {} {} {} {}".format(*line.b, *line.d) for line in m_lines]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Output


def _flatten(row: dict) -> dict:
    flat = {}
    for key, value in row.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                flat[f"{key}_{sub}"] = v
        elif isinstance(value, list):
            flat[key] = ";".join(str(v) for v in value)
        else:
            flat[key] = value
    return flat


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload) + "\n"
    rows = payload if isinstance(payload, list) else [payload]
    rows = [_flatten(r) for r in rows]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Commands


def cmd_verify_lemma(args) -> tuple[int, object]:
    """Random point/plane pairs inside the map's domain; half are forced incident."""
    F = PrimeField(args.field)
    p = F.modulus
    rng = Pcg32(args.seed)
    incident = failures = 0
    for _ in range(args.trials):
        a, b, d = rng.below(p), rng.below(p), rng.below(p)
        c = 1 + rng.below(p - 1)
        q = Plane3(F, a, b, c, d)
        x, y = 1 + rng.below(p - 1), rng.below(p)
        if rng.below(2):
            z = -(a * x + b * y + d) * pow(c, -1, p)
        else:
            z = rng.below(p)
        pt = Point3(F, x, y, z)
        on = point_on_plane(pt, q)
        meets = line_line_intersection(phi(pt), psi(q)) is not None
        incident += on
        failures += on != meets
    payload = {"field": p, "seed": args.seed, "trials": args.trials,
               "incident": incident, "failures": failures}
    return (EXIT_OK if failures == 0 else EXIT_INTERNAL), payload


def cmd_transform(args) -> tuple[int, str]:
    data = read_instance_file(args.input)
    inst = data.instance()
    gen = genericize(inst.points, inst.planes, Pcg32(args.seed),
                     max_retries=args.max_retries, field=inst.field)
    T = gen.map_used
    text = format_instance(
        inst.field,
        l_lines=[phi(pt) for pt in gen.points],
        m_lines=[psi(q) for q in gen.planes],
        comments=[
            f"seed {args.seed}",
            "map linear " + " ".join(str(v) for row in T.linear for v in row),
            "map shift " + " ".join(str(v) for v in T.shift),
            "L = phi(T(P)), M = psi(T(Q))",
        ],
    )
    return EXIT_OK, text


def _experiment_params(args) -> dict:
    if args.kind == "rich-line":
        return {"k": args.k, "n": args.n}
    if args.kind == "regulus":
        return {"a": args.a, "b": args.b}
    return {"m": args.m, "n": args.n}


def run_trial(kind: str, field: int, seed: int, params: dict, max_retries: int) -> dict:
    """One experiment trial; a pure function of its arguments."""
    F = PrimeField(field)
    built = ConstructionSpec(kind, F, seed, params).build()
    if kind == "regulus":
        L, M = built
        return {
            "field": field,
            "seed": seed,
            "sizes": {"L": len(L), "M": len(M)},
            "intersections": count_line_intersections(L, M),
            "intersecting_pairs": count_intersecting_pairs(L, M),
            "expected": len(L) * len(M),
        }
    rep = report(built, Pcg32(seed, stream=1), seed=seed, max_retries=max_retries)
    return rep.to_dict()


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise _UsageError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}") from None
    if n < 1:
        raise _UsageError(f"{THREADS_ENV} must be >= 1, got {n}")
    return n


def cmd_experiment(args) -> tuple[int, object]:
    params = _experiment_params(args)
    jobs = [(args.kind, args.field, args.seed + i, params, args.max_retries)
            for i in range(args.trials)]
    workers = min(_threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_trial, *zip(*jobs)))
    else:
        rows = [run_trial(*job) for job in jobs]
    return EXIT_OK, rows[0] if args.trials == 1 else rows


def cmd_extremal(args) -> tuple[int, object]:
    F = PrimeField(args.field)
    if args.kind == "rich-line":
        inst = rich_line_instance(args.k, args.n, F, args.seed)
        incidences = count_incidences(inst)
        intersections, pairs = transferred_counts(inst, Pcg32(args.seed, stream=1),
                                                  args.max_retries)
        expected = (args.k - 1) * args.n
        ok = incidences == intersections == pairs == expected
        payload = {"kind": args.kind, "field": F.modulus, "seed": args.seed,
                   "incidences": incidences, "intersections": intersections,
                   "expected": expected, "ok": ok}
    else:
        L, M = regulus_instance(args.a, args.b, F, args.seed)
        intersections = count_line_intersections(L, M)
        expected = args.a * args.b
        ok = intersections == expected
        payload = {"kind": args.kind, "field": F.modulus, "seed": args.seed,
                   "intersections": intersections, "expected": expected, "ok": ok}
    return (EXIT_OK if ok else EXIT_INTERNAL), payload


def cmd_bound(args) -> tuple[int, object]:
    inst = parse_instance_file(args.input)
    n_points, n_planes = inst.sizes
    (s, t), rhs = best_thresholds(rich_line_stats(inst), (n_points, n_planes))
    incidences = count_incidences(inst)
    p = inst.field.modulus
    warnings = []
    if n_points > p * p:
        warnings.append(f"|P|={n_points} exceeds p^2={p * p}")
    payload = {
        "field": p,
        "sizes": {"points": n_points, "planes": n_planes},
        "incidences": incidences,
        "max_collinear": max_collinear(inst),
        "best_s": s,
        "best_t": t,
        "rhs": sig6(rhs),
        "ratio": sig6(incidences / rhs if incidences else 0.0),
        "warnings": warnings,
    }
    return EXIT_OK, payload


# ---------------------------------------------------------------------------
# Argument parsing


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _prime(text: str) -> int:
    try:
        return PrimeField(int(text)).modulus
    except (ValueError, NonPrimeFieldError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="incidence-lab", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, field=True):
        if field:
            p.add_argument("--field", type=_prime, default=101, help="prime p, 5 <= p < 2^31")
        p.add_argument("--seed", type=_nonneg, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--max-retries", type=_nonneg, default=DEFAULT_MAX_RETRIES)

    p = sub.add_parser("verify-lemma", help="check incidence <=> intersection on random pairs")
    common(p)
    p.add_argument("--trials", type=_nonneg, default=10_000)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("transform", help="map an instance file to its L and M lines")
    common(p, field=False)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("experiment", help="generate instances and report both sides of the bound")
    common(p)
    p.add_argument("--kind", choices=KINDS, default="random")
    for name in ("k", "n", "m", "a", "b"):
        p.add_argument(f"--{name}", type=_nonneg, default=None)
    p.add_argument("--trials", type=_nonneg, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("extremal", help="check the exact count of an extremal construction")
    common(p)
    p.add_argument("--kind", choices=("rich-line", "regulus"), default="rich-line")
    for name in ("k", "n", "a", "b"):
        p.add_argument(f"--{name}", type=_nonneg, default=None)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("bound", help="evaluate the bound on an instance file")
    common(p, field=False)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_bound)
    return parser


_REQUIRED = {
    ("experiment", "rich-line"): ("k", "n"),
    ("experiment", "regulus"): ("a", "b"),
    ("experiment", "random"): ("m", "n"),
    ("experiment", "random-no-rich-lines"): ("m", "n"),
    ("extremal", "rich-line"): ("k", "n"),
    ("extremal", "regulus"): ("a", "b"),
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        for name in _REQUIRED.get((args.command, getattr(args, "kind", None)), ()):
            if getattr(args, name) is None:
                raise _UsageError(f"--{name} is required for {args.command} --kind {args.kind}")
    except _UsageError as exc:
        print(f"incidence-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        code, payload = args.func(args)
    except _UsageError as exc:
        print(f"incidence-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, NonPrimeFieldError, OSError, UnicodeDecodeError) as exc:
        print(f"incidence-lab: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SizeOrderViolation, ParameterExceedsFieldError) as exc:
        print(f"incidence-lab: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GenericPositionFailure as exc:
        print(f"incidence-lab: general position failure: {exc}", file=sys.stderr)
        return EXIT_GENERIC
    except TransferIdentityViolation as exc:
        print(f"incidence-lab: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(payload if isinstance(payload, str) else render(payload, args.format))
    if code == EXIT_INTERNAL:
        print("incidence-lab: internal check failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
