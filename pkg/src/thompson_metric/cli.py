"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 ball-size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from thompson_metric import __version__
from thompson_metric.cayley import (
    DEFAULT_CAP,
    NOT_A_DEAD_END,
    CapExceeded,
    bfs_ball,
    dead_end_depth,
    extract_geodesic,
    fellow_traveller_divergence,
    verify_metric,
)
from thompson_metric.carets import analyse
from thompson_metric.diagram import (
    Letter,
    TreePairDiagram,
    evaluate_word,
    format_word,
    inverse,
    letter_diagram,
    multiply,
    parse_diagram,
    reduce,
)
from thompson_metric.families import (
    SCHEMA,
    SeesawParams,
    dead_end_census,
    profile_csv,
    seesaw_letters,
    seesaw_profile,
    seesaw_word,
    structural_dead_end_check,
    verify_seesaw,
)
from thompson_metric.metric import length_report
from thompson_metric.plmap import diagram_to_map

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def element(text: str, p: int | None) -> TreePairDiagram:
    """A serialised diagram (``p=...;neg=...;pos=...``) or a word evaluated at ``-p``."""
    text = text.strip()
    if text.startswith("p="):
        x = parse_diagram(text)
        if p is not None and x.p != p:
            raise UsageError(f"diagram has p={x.p} but -p {p} was given")
        return x
    if p is None:
        raise UsageError("-p is required when the element is given as a word")
    return evaluate_word(p, text)


def emit(args, payload: dict, text: str | None = None, csv_text: str | None = None) -> None:
    if args.format == "json":
        out = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True)
    elif args.format == "csv" and csv_text is not None:
        out = csv_text.rstrip("\n")
    else:
        out = text if text is not None else "\n".join(f"{k}: {v}" for k, v in payload.items())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# -- subcommands -------------------------------------------------------------

def cmd_len(args) -> int:
    x = element(args.element, args.p)
    rep = length_report(x)
    text = str(rep.total)
    if args.explain:
        info = analyse(reduce(x).neg, x.p)
        text = rep.table() + "\n" + info.dump()
    emit(args, {"element": str(reduce(x)), "length": rep.total,
                "per_caret": [[c.index, str(c.neg), str(c.pos), c.weight] for c in rep.per_caret]}, text)
    return EXIT_OK


def cmd_mul(args) -> int:
    xs = [element(t, args.p) for t in args.elements]
    acc = xs[0]
    for y in xs[1:]:
        acc = multiply(acc, y)
    emit(args, {"product": str(acc)}, str(acc))
    return EXIT_OK


def cmd_inv(args) -> int:
    x = inverse(reduce(element(args.element, args.p)))
    emit(args, {"inverse": str(x)}, str(x))
    return EXIT_OK


def cmd_reduce(args) -> int:
    x = reduce(element(args.element, args.p))
    emit(args, {"reduced": str(x), "carets": x.carets}, str(x))
    return EXIT_OK


def cmd_map(args) -> int:
    f = diagram_to_map(element(args.element, args.p))
    emit(args, {"breakpoints": [[str(a), str(b)] for a, b in f.points]}, str(f))
    return EXIT_OK


def _need_p(args) -> int:
    if args.p is None:
        raise UsageError("-p is required")
    return args.p


def cmd_verify_metric(args) -> int:
    p = _need_p(args)
    ball = bfs_ball(p, args.radius, cap=args.cap)
    bad = verify_metric(ball)
    payload = {
        "p": p,
        "radius": args.radius,
        "ball_size": len(ball),
        "sphere_sizes": ball.sphere_sizes(),
        "mismatches": [m._asdict() for m in bad],
    }
    text = (f"p={p} radius={args.radius} ball={len(ball)} spheres={ball.sphere_sizes()} "
            f"mismatches={len(bad)}")
    if args.distance_map:
        with open(args.distance_map, "w") as fh:
            ball.write(fh)
    emit(args, payload, text)
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_deadend_census(args) -> int:
    p = _need_p(args)
    ball = bfs_ball(p, args.radius, cap=args.cap)
    census = dead_end_census(ball)
    for d in census["dead_ends"]:
        d["structure"] = structural_dead_end_check(ball[d["key"]].diagram).pairs
    census.pop("schema")
    failed = bool(census["recognizer_mismatches"]) or any(d["depth"] != 2 for d in census["dead_ends"])
    lines = [f"p={p} radius={args.radius} ball={len(ball)} dead_ends={len(census['dead_ends'])}"]
    lines += [f"{d['key']}\tlength={d['length']}\tdepth={d['depth']}" for d in census["dead_ends"]]
    if census["recognizer_mismatches"]:
        lines.append(f"recognizer mismatches: {len(census['recognizer_mismatches'])}")
    emit(args, census, "\n".join(lines))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_depth(args) -> int:
    x = element(args.element, args.p)
    d = dead_end_depth(x, args.max_depth)
    shown = "not-a-dead-end" if d is NOT_A_DEAD_END else (f">{args.max_depth}" if d is None else str(d))
    emit(args, {"element": str(reduce(x)), "depth": shown}, shown)
    return EXIT_OK


def cmd_seesaw(args) -> int:
    p = _need_p(args)
    sp = SeesawParams(p, args.m, args.n, args.k)
    try:
        sp.check_swing()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = seesaw_word(sp, args.reading)
    res = verify_seesaw(w, Letter(0), sp.k)
    literal = verify_seesaw(w, Letter(0), sp.k, exclusion="literal")
    rows = seesaw_profile(w, sp.k)
    payload = {
        "p": p, "m": sp.m, "n": sp.n, "k": sp.k,
        "word": format_word(seesaw_letters(sp, args.reading)),
        "element": str(w),
        "length": res.length,
        "profile": rows,
        "result": "PASS" if res.ok else "FAIL",
        "failures": res.failures,
        "literal_exclusion": {"result": "PASS" if literal.ok else "FAIL", "failures": literal.failures},
    }
    text = "\n".join([
        f"word: {payload['word']}",
        f"|w| = {res.length}",
        *(f"q={q:+d} |w x_0^q| = {l}" for q, l in rows),
        f"literal exclusion: {payload['literal_exclusion']['result']}",
        *res.failures,
        payload["result"],
    ])
    emit(args, payload, text, profile_csv(rows))
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_geodesic(args) -> int:
    x = element(args.element, args.p)
    word = extract_geodesic(x)
    emit(args, {"element": str(reduce(x)), "length": len(word), "word": format_word(word)}, format_word(word))
    return EXIT_OK


def cmd_diverge(args) -> int:
    rows = []
    if args.elements:
        if len(args.elements) != 2:
            raise UsageError("diverge takes exactly two elements")
        u, v = (element(t, args.p) for t in args.elements)
        rows.append({"u": str(u), "v": str(v), "divergence": fellow_traveller_divergence(u, v, samples=args.samples)})
    else:
        p = _need_p(args)
        for m in args.seesaw:
            w = seesaw_word(SeesawParams(p, m, m))
            g = letter_diagram(p, Letter(0))
            d = fellow_traveller_divergence(multiply(w, g), multiply(w, inverse(g)), samples=args.samples)
            rows.append({"m": m, "n": m, "divergence": d})
    values = [r["divergence"] for r in rows]
    monotone = all(a <= b for a, b in zip(values, values[1:]))
    text = "\n".join(" ".join(f"{k}={v}" for k, v in r.items()) for r in rows)
    if len(rows) > 1:
        text += f"\nnon-decreasing: {monotone}"
    emit(args, {"rows": rows, "non_decreasing": monotone}, text)
    return EXIT_OK if monotone else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, help="arity parameter; the group is F(p+1)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    ball = argparse.ArgumentParser(add_help=False)
    ball.add_argument("-r", "--radius", type=int, required=True)
    ball.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum ball size")

    parser = argparse.ArgumentParser(
        prog="thompson-metric",
        description="Tree-pair diagrams and word lengths in F(p+1) with BFS and PL-map oracles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, parents=(common,)):
        sp = sub.add_parser(name, parents=list(parents), help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("len", cmd_len, "word length of an element")
    sp.add_argument("element")
    sp.add_argument("--explain", action="store_true", help="print the per-caret weight table")

    sp = add("mul", cmd_mul, "product of elements, left to right")
    sp.add_argument("elements", nargs="+")

    for name, func, text in (("inv", cmd_inv, "inverse"), ("reduce", cmd_reduce, "minimal diagram"),
                             ("map", cmd_map, "exact PL breakpoints"), ("geodesic", cmd_geodesic, "a geodesic word")):
        sp = add(name, func, text)
        sp.add_argument("element")

    sp = add("verify-metric", cmd_verify_metric, "compare the metric with BFS distances", (common, ball))
    sp.add_argument("--distance-map", help="also write the BFS distance map to this file")

    add("deadend-census", cmd_deadend_census, "dead ends of a ball with depths", (common, ball))

    sp = add("depth", cmd_depth, "depth of a dead end")
    sp.add_argument("element")
    sp.add_argument("--max-depth", type=int, default=3)

    sp = add("seesaw", cmd_seesaw, "build and verify a seesaw word")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--reading", choices=("action", "literal"), default="action")

    sp = add("diverge", cmd_diverge, "fellow-traveller divergence")
    sp.add_argument("elements", nargs="*")
    sp.add_argument("--seesaw", type=int, nargs="+", default=[4, 5, 6], metavar="M",
                    help="seesaw sizes m = n to sweep when no elements are given")
    sp.add_argument("--samples", type=int, default=24, help="tie-break orders per endpoint")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "p", None) is not None and args.p < 1:
        parser.error("-p must be >= 1")
    if getattr(args, "radius", 0) < 0:
        parser.error("radius must be >= 0")
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
