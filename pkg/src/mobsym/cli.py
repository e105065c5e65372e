"""Command-line interface: JSON configuration files in, JSON reports out.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 infinite stabilizer,
4 tolerance breakdown, 5 trivial stabilizer, 6 non-integral multiplicity,
7 invalid recipe.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .classify import GroupType, group_type
from .errors import (
    DegenerateInput,
    InfiniteStabilizer,
    InvalidRecipe,
    MobsymError,
    NonIntegralMultiplicity,
    SeedOnExceptionalOrbit,
    ToleranceBreakdown,
    TrivialStabilizer,
)
from .orbits import build_config
from .reptheory import config_multiplicity, orbit_type_label, reading_vectors
from .sphere import TOL, SpherePoint
from .stabilizer import PointConfig, compute_stabilizer, cycle_type

EXIT_CODES = [
    (DegenerateInput, 2),
    (InfiniteStabilizer, 3),
    (ToleranceBreakdown, 4),
    (TrivialStabilizer, 5),
    (NonIntegralMultiplicity, 6),
    (InvalidRecipe, 7),
    (SeedOnExceptionalOrbit, 7),
]
SIG_DIGITS = 12


class InputError(Exception):
    """Malformed configuration file."""


# ---------------------------------------------------------------- JSON


def _num(x: float) -> float:
    x = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if x == 0 else x


def _point_json(p: SpherePoint):
    if p.is_inf:
        return "inf"
    z = p.value
    return [_num(z.real), _num(z.imag)]


def _complex_json(z: complex):
    return [_num(z.real), _num(z.imag)]


def _matrix_json(m) -> list:
    return [[_complex_json(complex(m[i, j])) for j in range(2)] for i in range(2)]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def parse_point(entry, k: int) -> SpherePoint:
    if isinstance(entry, str):
        if entry.strip().lower() == "inf":
            return SpherePoint.of("inf")
        raise InputError(f"point {k}: unknown token {entry!r}")
    if (isinstance(entry, list) and len(entry) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)):
        re_, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re_) and math.isfinite(im)):
            raise InputError(f"point {k}: coordinates must be finite (use \"inf\")")
        return SpherePoint.of(complex(re_, im))
    raise InputError(f"point {k}: expected [re, im] or \"inf\", got {entry!r}")


def load_config(path: str, tol: float | None = None) -> PointConfig:
    """Read a configuration file; duplicates raise DegenerateInput with
    the offending index pairs in file order."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get("points"), list):
        raise InputError("configuration must be an object with a \"points\" list")
    pts = [parse_point(e, k) for k, e in enumerate(data["points"])]
    if tol is None:
        tol = float(data.get("tol", TOL))
    dup = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts)) if pts[i].dist(pts[j]) < 2 * tol]
    if dup:
        raise DegenerateInput(f"duplicate points at indices {dup}", dup)
    return PointConfig(pts, tol)


def config_json(cfg: PointConfig, **extra) -> dict:
    return {"points": [_point_json(p) for p in cfg], **extra}


# ---------------------------------------------------------------- SVG


def write_svg(cfg: PointConfig, path: str, size: int = 400) -> None:
    """Flat scatter of the finite points in the stereographic chart."""
    finite = [p.value for p in cfg if not p.is_inf]
    r = max([1.0] + [abs(z) for z in finite]) * 1.1
    def xy(z):
        return size / 2 * (1 + z.real / r), size / 2 * (1 - z.imag / r)
    cx, cy = xy(0j)
    rad = size / 2 / r
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
             f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{rad:.2f}" fill="none" stroke="#bbb"/>']
    for z in finite:
        x, y = xy(z)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
    if len(finite) < cfg.n:
        lines.append('<text x="5" y="15" font-size="12">+ inf</text>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------- commands


def generators(G) -> list[int]:
    """Greedy small generating set: add elements of largest order until closed."""
    T = G.table
    order = sorted(range(1, G.order), key=lambda i: (-G.orders[i], i))
    gens: list[int] = []
    span = {0}
    for g in order:
        if g in span:
            continue
        gens.append(g)
        span = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for b in gens:
                    c = int(T[b, a])
                    if c not in span:
                        span.add(c)
                        nxt.append(c)
            frontier = nxt
        if len(span) == G.order:
            break
    return gens


def cmd_stab(args) -> int:
    cfg = load_config(args.file, args.tol)
    G = compute_stabilizer(cfg, cfg.tol)
    gt = group_type(G)
    out = {
        "n": cfg.n,
        "order": G.order,
        "type": str(gt),
        "points": [_point_json(p) for p in cfg],
        "generators": [_matrix_json(G.elements[i].m) for i in generators(G)],
        "elements": [{"order": G.orders[i], "perm": list(G.perms[i]), "cycle_type": list(cycle_type(G.perms[i]))}
                     for i in range(G.order)],
    }
    print(dumps(out))
    if args.svg:
        write_svg(cfg, args.svg)
    return 0


def cmd_multvec(args) -> int:
    cfg = load_config(args.file, args.tol)
    G = compute_stabilizer(cfg, cfg.tol)
    res = config_multiplicity(cfg, G, flip=args.flip)
    try:
        jac = config_multiplicity(cfg, G, reading=res.context.reading, flip=args.flip, source="jacobian").vector
    except MobsymError:
        jac = None
    reading = orbit_type_label(cfg, G)
    out = {
        "n": cfg.n,
        "type": str(res.context.type),
        "label": str(res.label),
        "m": res.label.m,
        "vector": list(res.vector),
        "convention": res.context.describe(),
        "cross_check": jac == res.vector,
        "alternates": [{"label": l, "vector": list(v)} for l, v in reading_vectors(cfg, G)[1:]]
        if reading.alternates else [],
    }
    print(dumps(out))
    if args.svg:
        write_svg(cfg, args.svg)
    return 0


def _seed(s: str) -> complex:
    if s.strip().lower() == "inf":
        raise argparse.ArgumentTypeError("a seed cannot be inf")
    try:
        re_, im = (float(x) for x in s.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"seed must be re,im, got {s!r}") from e
    return complex(re_, im)


def cmd_orbit(args) -> int:
    try:
        gt = GroupType.parse(args.type)
    except ValueError as e:
        raise InvalidRecipe(str(e)) from e
    tol = args.tol if args.tol is not None else TOL
    cfg = build_config(gt, args.label, seeds=args.seed or None, m=args.m, tol=tol)
    print(dumps(config_json(cfg, type=str(gt), label=args.label, m=args.m)))
    if args.svg:
        write_svg(cfg, args.svg)
    return 0


VERIFY_SUITES = ("n4", "n5", "n6", "orbits", "characters", "multvec-tables", "corollaries",
                 "decomposition", "sparsity", "conjugation", "witnesses", "action")


def cmd_verify(args) -> int:
    from .verify import run_suite

    tol = args.tol if args.tol is not None else TOL
    checks = run_suite(args.suite, tol)
    for c in checks:
        print(dumps({k: (_num(v) if isinstance(v, float) else v) for k, v in c.as_dict().items()}))
    failed = sum(not c.ok for c in checks)
    print(f"{args.suite}: {len(checks) - failed}/{len(checks)} checks passed", file=sys.stderr)
    return 1 if failed else 0


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mobsym", description="Mobius symmetries of finite point sets.")
    ap.add_argument("--tol", type=float, default=None, help="point-matching tolerance (default 1e-9)")
    ap.add_argument("--svg", default=None, help="also write a flat SVG scatter of the configuration")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stab", help="stabilizer of a configuration")
    p.add_argument("file")
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("multvec", help="orbit-type label and multiplicity vector")
    p.add_argument("file")
    p.add_argument("--flip", action="store_true", help="use the other free class assignment")
    p.set_defaults(func=cmd_multvec)

    p = sub.add_parser("orbit", help="witness configuration for an orbit type")
    p.add_argument("--type", required=True, help="e.g. Icosahedral, Dihedral(5), Z3")
    p.add_argument("--label", required=True, help="e.g. F+mB, A+2+mC, 1+mC")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--seed", type=_seed, action="append", help="generic seed re,im (repeatable)")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("verify", help="run a reproduction suite")
    p.add_argument("suite", choices=VERIFY_SUITES)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except InputError as e:
        print(dumps({"error": "InputError", "message": str(e)}), file=sys.stderr)
        return 2
    except MobsymError as e:
        for cls, code in EXIT_CODES:
            if isinstance(e, cls):
                detail = {"error": type(e).__name__, "message": str(e)}
                if isinstance(e, DegenerateInput) and e.pairs:
                    detail["indices"] = [list(p) for p in e.pairs]
                print(dumps(detail), file=sys.stderr)
                return code
        print(dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
