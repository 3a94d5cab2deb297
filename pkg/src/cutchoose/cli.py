"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain or degenerate input, 3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys

from . import classical, quantum, regions, sim
from .core import (
    DomainError,
    Owner,
    ResponseStrategy,
    SimplexPoint,
    SpherePoint,
    class_family,
    classify_preferences,
    is_infinity,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

CLASS_COLORS = {
    "transitive": "#1f77b4",
    "intransitive": "#d62728",
    "boundary": "#7f7f7f",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _triple(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return vals  # type: ignore[return-value]


def _cube_triple(text: str) -> tuple[float, float, float]:
    vals = _triple(text)
    if any(abs(v) > 1.0 for v in vals):
        raise argparse.ArgumentTypeError(f"parameters must lie in [-1, 1], got {text!r}")
    return vals


def _simplex(text: str) -> SimplexPoint:
    try:
        return SimplexPoint(_triple(text))
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sphere(text: str) -> SpherePoint:
    try:
        return SpherePoint(_triple(text))
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {n}")
    return n


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _class_record(s: ResponseStrategy) -> dict:
    c = classify_preferences(s)
    return {"class": class_family(c), "preference": str(c)}


# -- commands ----------------------------------------------------------------


def cmd_solve(args) -> str:
    l = args.l
    P = classical.optimal_first_move(l)
    s2 = ResponseStrategy.cat2(l)
    residual = classical.cat2_optimality_residual(P.p, l)
    omega = classical.cat2_diet(P, s2)
    return _dump(
        {
            "l": list(l),
            "P": list(P.p),
            **_class_record(s2),
            "omega": list(omega.f),
            "residual": float(abs(residual).max()),
        }
    )


def cmd_invert(args) -> str:
    P = args.p
    if args.model == "classical":
        line = classical.cat2_solution_line(P)
        segment = classical.cat2_classical_feasible(P)
        classes = classical.cat2_classical_classes(P) if segment else set()
        families = sorted({class_family(c) for c in classes})
        out = {
            "model": "classical",
            "P": list(P.p),
            "line": {"point": [float(v) for v in line.point], "direction": [float(v) for v in line.direction]},
            "feasible": segment is not None,
            "segment": None if segment is None else [float(s) for s in segment],
            "available": {
                "any": segment is not None,
                "transitive": "transitive" in families,
                "intransitive": "intransitive" in families,
            },
            "preferences": sorted(str(c) for c in classes),
        }
    else:
        points = quantum.cat2_quantum_feasible(P)
        records = []
        for x in points:
            s2 = quantum.sphere_strategy(x, Owner.CAT2)
            z = quantum.z_from_sphere(x)
            records.append(
                {
                    "x": list(x.x),
                    "z": "inf" if is_infinity(z) else [z.real, z.imag],
                    "l": list(s2.params),
                    **_class_record(s2),
                }
            )
        fams = {r["class"] for r in records}
        out = {
            "model": "quantum",
            "P": list(P.p),
            "feasible": bool(points),
            "points": records,
            "available": {
                "any": bool(points),
                "transitive": "transitive" in fams,
                "intransitive": "intransitive" in fams,
            },
        }
    return _dump(out)


def region_csv(points) -> str:
    buf = io.StringIO()
    buf.write("P0,P1,P2,model,class\n")
    for lp in points:
        model = next(iter({m for m, _ in lp.labels})).value
        buf.write(",".join([*(fmt(v) for v in lp.p.p), model, lp.family]) + "\n")
    return buf.getvalue()


def region_json(points) -> str:
    rows = []
    for lp in points:
        model = next(iter({m for m, _ in lp.labels})).value
        rows.append({"P0": lp.p[0], "P1": lp.p[1], "P2": lp.p[2], "model": model, "class": lp.family})
    return _dump(rows)


# equilateral triangle on a 600 x 560 canvas: P0 bottom-left, P1 bottom-right, P2 top
_VERTICES = ((50.0, 520.0), (550.0, 520.0), (300.0, 520.0 - 500.0 * 3**0.5 / 2))


def ternary_xy(p) -> tuple[float, float]:
    x = sum(w * v[0] for w, v in zip(p, _VERTICES))
    y = sum(w * v[1] for w, v in zip(p, _VERTICES))
    return x, y


def region_svg(points, title: str = "") -> str:
    legend = ", ".join(f"{k}={v}" for k, v in CLASS_COLORS.items())
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="560" viewBox="0 0 600 560">',
        f"<!-- ternary scatter of first moves; vertices P0 bottom-left, P1 bottom-right, P2 top; "
        f"fill colours: {legend} -->",
        f"<title>{title}</title>",
        '<rect width="600" height="560" fill="white"/>',
    ]
    tri = " ".join(f"{x:.3f},{y:.3f}" for x, y in _VERTICES)
    out.append(f'<polygon points="{tri}" fill="none" stroke="black" stroke-width="1"/>')
    for name, (x, y), dy in zip(("P0", "P1", "P2"), _VERTICES, (18, 18, -6)):
        out.append(f'<text x="{x:.3f}" y="{y + dy:.3f}" font-size="14" text-anchor="middle">{name}</text>')
    for lp in points:
        x, y = ternary_xy(lp.p.p)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="1" fill="{CLASS_COLORS[lp.family]}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_region(args) -> str:
    query = regions.RegionQuery(args.model, args.class_filter)
    points = regions.montecarlo_map(query, args.samples, args.seed, workers=args.workers)
    if args.format == "csv":
        return region_csv(points)
    if args.format == "json":
        return region_json(points)
    return region_svg(points, f"{args.model} / {args.class_filter}")


def _pick_one(args, names: list[str], role: str):
    given = [n for n in names if getattr(args, n) is not None]
    if len(given) != 1:
        flags = ", ".join("--" + n.replace("_", "-") for n in names)
        raise UsageError(f"exactly one of {flags} is required for {role}")
    return given[0], getattr(args, given[0])


def cmd_simulate(args) -> str:
    kind2, v2 = _pick_one(args, ["cat2_l", "cat2_x"], "Cat 2")
    kind1, v1 = _pick_one(args, ["cat1_L", "cat1_X", "cat1_pure"], "Cat 1")
    cat2 = ResponseStrategy.cat2(v2) if kind2 == "cat2_l" else v2
    if kind1 == "cat1_L":
        cat1 = ResponseStrategy.cat1(v1)
    elif kind1 == "cat1_X":
        cat1 = v1
    else:
        cat1 = classical.PureChoiceFunction(v1)
    cfg = sim.GameConfig(args.p, cat1, cat2, args.iters, args.seed)
    tally = sim.run_game(cfg)
    lam, omega = sim.empirical_frequencies(tally)
    s1, s2 = sim.as_response(cat1, Owner.CAT1), sim.as_response(cat2, Owner.CAT2)
    lam_exact = classical.cat1_diet(args.p, s2, s1)
    omega_exact = classical.cat2_diet(args.p, s2)
    report = {"iterations": tally.iterations, "seed": args.seed, "P": list(args.p.p)}
    ok = True
    for name, emp, exact, counts in (
        ("lambda", lam, lam_exact, tally.cat1_counts),
        ("omega", omega, omega_exact, tally.cat2_counts),
    ):
        dev = [e - a for e, a in zip(emp.f, exact.f)]
        bound = [sim.three_sigma(a, tally.iterations) for a in exact.f]
        passed = all(abs(d) <= b for d, b in zip(dev, bound))
        ok &= passed
        report[name] = {
            "counts": list(counts),
            "empirical": list(emp.f),
            "analytic": list(exact.f),
            "deviation": dev,
            "three_sigma": bound,
            "pass": passed,
        }
    report["discarded_counts"] = list(tally.discarded_counts)
    report["pass"] = ok
    return _dump(report)


def cmd_audit_pure(args) -> str:
    rows = classical.pure_choice_function_audit(args.p, args.l)
    out = {
        "P": list(args.p.p),
        "l": list(args.l),
        "functions": [
            {
                "index": e.function.index,
                "choices": {f"{a}{b}": c for (a, b), c in e.function.mapping.items()},
                **_class_record(e.function.as_strategy()),
                "lambda": list(e.diet.f),
                "balanced": e.balanced,
            }
            for e in rows
        ],
        "any_balanced": any(e.balanced for e in rows),
    }
    return _dump(out)


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cutchoose", description="Three-food 'I cut, you choose' game toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="first move balancing Cat 2's strategy l")
    p.add_argument("--l", type=_cube_triple, required=True, metavar="L0,L1,L2")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("invert", help="Cat 2 strategies balancing a first move")
    p.add_argument("--p", type=_simplex, required=True, metavar="P0,P1,P2")
    p.add_argument("--model", choices=["classical", "quantum"], default="classical")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("region", help="sampled availability map")
    p.add_argument("--model", choices=["classical", "quantum"], default="classical")
    p.add_argument("--class", dest="class_filter", choices=["any", "transitive", "intransitive"], default="any")
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("simulate", help="Monte Carlo run of the repeated game")
    p.add_argument("--p", type=_simplex, required=True, metavar="P0,P1,P2")
    p.add_argument("--cat2-l", type=_cube_triple, metavar="L0,L1,L2")
    p.add_argument("--cat2-x", type=_sphere, metavar="X1,X2,X3")
    p.add_argument("--cat1-L", dest="cat1_L", type=_cube_triple, metavar="L0,L1,L2")
    p.add_argument("--cat1-X", dest="cat1_X", type=_sphere, metavar="X1,X2,X3")
    p.add_argument("--cat1-pure", type=int, choices=range(8), metavar="K")
    p.add_argument("--iters", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("audit-pure", help="Cat 1's diet under the eight choice functions")
    p.add_argument("--p", type=_simplex, default=SimplexPoint((1 / 3, 1 / 3, 1 / 3)), metavar="P0,P1,P2")
    p.add_argument("--l", type=_cube_triple, default=(0.0, 0.0, 0.0), metavar="L0,L1,L2")
    p.set_defaults(func=cmd_audit_pure)
    return parser


_NUMBER_LIST = re.compile(r"^-[0-9.]")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Join ``--flag -0.5,...`` into ``--flag=-0.5,...`` so argparse does not read the value as an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NUMBER_LIST.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        text = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    out = getattr(args, "out", "-")
    if out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
