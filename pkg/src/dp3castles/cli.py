"""Command-line entry point: ``dp3castles <verb> ...``."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

from . import kernel
from .castle import build_castle, trim_dangling
from .contour import SelfIntersecting, classify_region, format_signs, is_self_intersecting, tuple_for_point
from .matchings import (
    TooLarge,
    count_matchings,
    matching_cap,
    minimal_matching_descent,
    twist_lattice,
    weight,
    weighted_sum,
    weighted_sum_framed,
)
from .minmatch import ConstructionGap, construct
from .prism import cluster_var_at_point, tau_word_to_point
from .render import render_castle


def _edges_json(edges) -> list:
    return sorted(sorted(list(v) for v in e) for e in edges)


def _emit(args, doc: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def _write(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)


def cmd_contour(args) -> int:
    c = tuple_for_point(args.i, args.j, args.k)
    info = classify_region(args.i, args.j, args.k)
    signs = format_signs(c.signs) if c.signs else None
    doc = {
        "point": [args.i, args.j, args.k],
        "sides": list(c.sides),
        "region": info.name,
        "signs": signs,
        "self_intersecting": is_self_intersecting(c),
        "corners": [list(p) for p in c.corners],
    }
    sides = "(" + ",".join(str(x) for x in c.sides) + ")"
    _emit(args, doc, f"{sides}, {info}, {signs}")
    return 0


def cmd_castle(args) -> int:
    c = build_castle(args.i, args.j, args.k)
    if args.trim:
        c = trim_dangling(c)
    if args.format == "svg":
        svg = render_castle(c)
        if args.output:
            _write(args.output, svg)
        else:
            sys.stdout.write(svg)
        return 0
    if args.format == "json":
        print(c.to_json())
        return 0
    print(
        f"castle {c.point}: {len(c.vertices)} vertices ({len(c.blacks)} black, {len(c.whites)} white), "
        f"{len(c.edges)} edges, {len(c.faces)} enclosed faces, {len(c.forced)} forced edges"
    )
    return 0


def cmd_matchings(args) -> int:
    c = build_castle(args.i, args.j, args.k)
    if args.lattice_dot:
        print(twist_lattice(c, args.cap).to_dot(), end="")
        return 0
    if args.sum:
        p = weighted_sum(c)
        _emit(args, {"point": list(c.point), "sum": str(p)}, str(p))
        return 0
    if args.framed_sum:
        p = weighted_sum_framed(c)
        _emit(args, {"point": list(c.point), "framed_sum": str(p)}, str(p))
        return 0
    n = count_matchings(c)
    _emit(args, {"point": list(c.point), "count": n, "backend": kernel.BACKEND}, str(n))
    return 0


def cmd_minmatch(args) -> int:
    c = build_castle(args.i, args.j, args.k)
    res = construct(c)
    m = res.matching
    doc = {
        "point": list(c.point),
        "edges": _edges_json(m.edges),
        "weight": str(weight(m)),
        "signs": format_signs(res.sectors.signs),
        "zero_line": [list(p) for p in res.sectors.zero_line],
    }
    status = 0
    if args.verify:
        try:
            if count_matchings(c, limit=args.cap + 1) > args.cap:
                raise TooLarge(c.point)
            ref = minimal_matching_descent(c)
            doc["verified"] = ref.edges == m.edges
        except TooLarge:
            doc["verified"] = None
        if doc["verified"] is False:
            status = 1
    if args.svg:
        _write(args.svg, render_castle(c, m, res.sectors))
    text = f"minimal matching of {c.point}: {len(m.edges)} edges, weight {doc['weight']}"
    if args.verify:
        text += {True: ", matches oracle", False: ", DIFFERS from oracle", None: ", oracle skipped (cap)"}[
            doc["verified"]
        ]
    _emit(args, doc, text)
    return status


def cmd_tau_word(args) -> int:
    word, label = tau_word_to_point((args.i, args.j, args.k))
    doc = {"point": [args.i, args.j, args.k], "word": list(word), "label": label}
    _emit(args, doc, f"word {' '.join(map(str, word)) or '(empty)'}; label {label}")
    return 0


def cmd_cluster_var(args) -> int:
    p = cluster_var_at_point((args.i, args.j, args.k), framed=args.framed)
    _emit(args, {"point": [args.i, args.j, args.k], "framed": args.framed, "value": str(p)}, str(p))
    return 0


def verify_point(p, framed: bool = True) -> dict:
    """Oracle checks at one point; status is pass, fail or skipped."""
    row = {"point": list(p)}
    c = tuple_for_point(*p)
    if is_self_intersecting(c):
        row["status"] = "skipped"
        return row
    castle = build_castle(*p)
    checks = {}
    checks["sum"] = weighted_sum(castle) == cluster_var_at_point(p)
    try:
        built = construct(castle).matching
    except ConstructionGap:
        built = None
    m_min = minimal_matching_descent(castle)
    checks["minmatch"] = built is not None and built.edges == m_min.edges
    if framed:
        zf = cluster_var_at_point(p, framed=True)
        checks["framed"] = weighted_sum_framed(castle, m_min) == zf
        checks["y_free"] = zf.y_free_part() == weight(m_min)
    row["checks"] = checks
    row["status"] = "pass" if all(checks.values()) else "fail"
    return row


def cmd_verify(args) -> int:
    r = args.max
    pts = sorted(itertools.product(range(-r, r + 1), repeat=3))
    rows = []
    t0 = time.perf_counter()
    for p in pts:
        rows.append(verify_point(p, framed=not args.unframed))
    counts = {s: sum(1 for x in rows if x["status"] == s) for s in ("pass", "fail", "skipped")}
    if args.format == "json":
        print(json.dumps({"rows": rows, "counts": counts}, sort_keys=True))
    else:
        for row in rows:
            detail = ""
            if "checks" in row:
                detail = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in row["checks"].items())
            print(f"{tuple(row['point'])!s:>14}  {row['status']:<7} {detail}")
        print(
            f"verified {counts['pass']} points, {counts['fail']} failed, "
            f"{counts['skipped']} skipped (self-intersecting) in {time.perf_counter() - t0:.1f}s"
        )
    return 0 if counts["fail"] == 0 else 1


def cmd_render(args) -> int:
    c = build_castle(args.i, args.j, args.k)
    m = sectors = None
    if args.matching == "minimal":
        res = construct(c)
        m = res.matching
        if args.sectors:
            sectors = res.sectors
    _write(args.output, render_castle(c, m, sectors))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dp3castles", description="Aztec castles for the dP3 quiver")
    sub = ap.add_subparsers(dest="verb", required=True)

    def point_cmd(name, func, help_text, formats=("text", "json")):
        sp = sub.add_parser(name, help=help_text)
        for axis in "ijk":
            sp.add_argument(axis, type=int)
        sp.add_argument("--format", choices=formats, default="text")
        sp.set_defaults(func=func)
        return sp

    point_cmd("contour", cmd_contour, "side lengths, region and sign pattern")
    sp = point_cmd("castle", cmd_castle, "build the castle graph", ("text", "json", "svg"))
    sp.add_argument("--trim", action="store_true", help="strip dangling edges")
    sp.add_argument("-o", "--output")
    sp = point_cmd("matchings", cmd_matchings, "count or sum perfect matchings")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true", help="number of perfect matchings (default)")
    g.add_argument("--sum", action="store_true", help="weighted sum, unframed")
    g.add_argument("--framed-sum", action="store_true", help="weighted sum with heights")
    g.add_argument("--lattice-dot", action="store_true", help="twist lattice in DOT format")
    sp.add_argument("--cap", type=int, default=None)
    sp = point_cmd("minmatch", cmd_minmatch, "construct the minimal matching")
    sp.add_argument("--svg")
    sp.add_argument("--verify", action="store_true", help="compare with the twist-down oracle")
    sp.add_argument("--cap", type=int, default=matching_cap())
    point_cmd("tau-word", cmd_tau_word, "tau word moving a prism vertex to the point")
    sp = point_cmd("cluster-var", cmd_cluster_var, "cluster variable from the mutation engine")
    sp.add_argument("--framed", action="store_true")
    sp = sub.add_parser("verify", help="batch oracle checks over a cube of points")
    sp.add_argument("--max", type=int, default=1)
    sp.add_argument("--unframed", action="store_true", help="skip the framed checks")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("render", help="write an SVG drawing")
    for axis in "ijk":
        sp.add_argument(axis, type=int)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--matching", choices=("minimal", "none"), default="minimal")
    sp.add_argument("--sectors", action="store_true", help="overlay the sector borders")
    sp.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SelfIntersecting as exc:
        print(f"error: the contour of {tuple(exc.args[0]) if exc.args else ''} self-intersects", file=sys.stderr)
        return 2
    except (TooLarge, ConstructionGap) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
