"""Command-line interface.

Every subcommand prints deterministic output: plain text by default, a
stable JSON object (sorted keys) with --emit json.  Failures become a
single "error: ..." line on stderr and a nonzero exit status.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import complexes, fq, intmat, padic, spherical, torsion, weyl
from .errors import (
    DimensionError,
    FieldError,
    IncompleteLinkError,
    InconsistencyError,
    LinkValidationError,
    MultiplicityError,
    ParseError,
    SizeLimitError,
    StructureError,
)

_ERRORS = (
    DimensionError,
    FieldError,
    IncompleteLinkError,
    InconsistencyError,
    LinkValidationError,
    MultiplicityError,
    ParseError,
    SizeLimitError,
    StructureError,
    OSError,
)


def _emit(args, text, payload):
    if args.emit == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _add_emit(parser):
    parser.add_argument(
        "--emit", choices=("text", "json"), default="text",
        help="output format (default text)",
    )


def _field(args):
    return fq.FieldSpec(args.p, args.e)


def _cmd_snf(args):
    a = intmat.parse_matrix(Path(args.file).read_text())
    factors = intmat.snf(a).invariant_factors
    text = "invariant factors: " + " ".join(str(d) for d in factors)
    _emit(args, text, {
        "rows": a.rows,
        "cols": a.cols,
        "invariant_factors": list(factors),
    })
    return 0


def _cmd_weyl_length(args):
    w = weyl.cycle_perm(args.n, args.k)
    l = weyl.length(w)
    images = ",".join(str(i) for i in w.images)
    _emit(args, f"permutation [{images}], length {l}", {
        "n": args.n,
        "k": args.k,
        "images": list(w.images),
        "length": l,
    })
    return 0


def _cmd_flags(args):
    spec = _field(args)
    count = len(fq.enumerate_full_flags(spec, args.m))
    _emit(args, str(count), {
        "p": args.p,
        "e": args.e,
        "q": spec.q,
        "m": args.m,
        "count": count,
    })
    return 0


def _parse_images(text):
    try:
        images = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DimensionError(f"cannot parse permutation {text!r}") from None
    return weyl.Permutation(images)


def _coordinate_flag(spec, m):
    basis = [[1 if j == i else 0 for j in range(m)] for i in range(m)]
    subs = [
        fq.Subspace.from_vectors(spec, m, basis[: d + 1]) for d in range(m - 1)
    ]
    return fq.Flag(field=spec, ambient_dim=m, subspaces=tuple(subs))


def _cmd_sphere(args):
    spec = _field(args)
    w = _parse_images(args.w)
    if w.degree != args.m:
        raise DimensionError(
            f"permutation degree {w.degree} does not match m = {args.m}"
        )
    base = _coordinate_flag(spec, args.m)
    count = spherical.count_at_distance(spec, args.m, base, w)
    expected = spherical.expected_count(spec.q, w)
    _emit(args, f"count = {count} (q^length = {expected})", {
        "p": args.p,
        "e": args.e,
        "q": spec.q,
        "m": args.m,
        "w": list(w.images),
        "length": weyl.length(w),
        "count": count,
        "expected": expected,
    })
    return 0


def _cmd_ball(args):
    b = padic.ball(args.n, args.p, args.radius, allow_large=args.allow_large)
    types = b.vertex_types()
    tallies = [types.count(t) for t in range(args.n + 1)]
    text = "\n".join([
        f"vertices = {len(b.vertices)}",
        f"edges = {len(b.edges)}",
        f"chambers = {len(b.chambers)}",
        "type counts = " + " ".join(str(t) for t in tallies),
    ])
    _emit(args, text, {
        "n": args.n,
        "p": args.p,
        "radius": args.radius,
        "vertex_count": len(b.vertices),
        "edge_count": len(b.edges),
        "chamber_count": len(b.chambers),
        "type_counts": tallies,
        "vertices": [
            {
                "basis": [list(row) for row in v.basis],
                "distance": b.distances[i],
                "type": v.vertex_type,
            }
            for i, v in enumerate(b.vertices)
        ],
    })
    return 0


def _cmd_link_check(args):
    x = complexes.parse_complex(Path(args.file).read_text())
    q, report = complexes.validate_links(x)
    counts = complexes.cell_counts(x, q=q)
    if q is None:
        text = "\n".join(["links invalid"] + report)
    else:
        text = "\n".join([
            f"q = {q}",
            f"vertices = {counts.n0}",
            f"edges = {counts.n1}",
            f"chambers = {counts.n2}",
            f"euler = {counts.euler}",
        ])
    _emit(args, text, {
        "q": q,
        "problems": report,
        "n0": counts.n0,
        "n1": counts.n1,
        "n2": counts.n2,
        "euler": counts.euler,
    })
    return 0 if q is not None else 1


def _cmd_mk(args):
    x = complexes.parse_complex(Path(args.file).read_text())
    m = complexes.transfer_matrix(x, args.k)
    text = intmat.format_matrix(m).rstrip("\n")
    _emit(args, text, {
        "k": args.k,
        "size": m.rows,
        "row_sum": sum(m.row(0)),
        "matrix": m.to_lists(),
    })
    return 0


def _cmd_order(args):
    verified = []
    if args.tree:
        g = complexes.parse_graph(Path(args.tree).read_text())
        pres = torsion.tree_relations(g)
        n0, n1 = g.n_vertices, len(g.geom_edges)
        checks = [(n1 - n0, f"({n1} - {n0}) [I] = 0")]
        mode = "tree"
    else:
        x = complexes.parse_complex(Path(args.a2).read_text())
        pres = torsion.a2_relations(x, include_mk=args.with_mk)
        q, _ = complexes.validate_links(x)
        checks = [(x.n0 - x.n1 + x.n2, f"({x.n0} - {x.n1} + {x.n2}) [I] = 0")]
        if args.with_mk:
            checks.append(
                (x.n0 * (q * q - 1), f"{x.n0} (q^2 - 1) [I] = 0 at q = {q}")
            )
        mode = "a2"
    for multiple, label in checks:
        if not pres.identity_multiple_in_span(multiple):
            raise InconsistencyError(f"expected identity failed: {label}")
        verified.append(label)
    order = pres.order_of_identity()
    factors = intmat.snf(pres.matrix).invariant_factors
    order_text = str(order.value) if order.finite else "infinite"
    lines = [
        f"order of [I] = {order_text}",
        f"generators = {len(pres.generators)}",
        f"relations = {pres.matrix.rows}",
        "invariant factors: " + " ".join(str(d) for d in factors),
    ]
    lines.extend(f"verified: {label}" for label in verified)
    _emit(args, "\n".join(lines), {
        "mode": mode,
        "with_mk": bool(args.with_mk) if mode == "a2" else None,
        "finite": order.finite,
        "order": order.value,
        "generators": len(pres.generators),
        "relations": pres.matrix.rows,
        "invariant_factors": list(factors),
        "verified": verified,
    })
    return 0


def _cmd_bound(args):
    b = torsion.bound(args.n, args.q, args.n0)
    _emit(args, f"m = {b.value} (case {b.case})", {
        "n": args.n,
        "q": args.q,
        "n0": args.n0,
        "m": b.value,
        "case": b.case,
    })
    return 0


def _cmd_chi(args):
    c = torsion.chi(args.n, args.q, args.n0)
    suffix = "" if c.integral else " (not an integer)"
    _emit(args, f"chi = {c.value}{suffix}", {
        "n": args.n,
        "q": args.q,
        "n0": args.n0,
        "numerator": c.value.numerator,
        "denominator": c.value.denominator,
        "integral": c.integral,
    })
    return 0


def _cmd_search_presentation(args):
    x, count = complexes.search_presentation(args.q, exhaustive=args.exhaustive)
    text = complexes.format_complex(x).rstrip("\n")
    if count is not None:
        text += f"\n# solutions: {count}"
    _emit(args, text, {
        "q": args.q,
        "vertices": x.n_vertices,
        "edges": [list(e) for e in x.edges],
        "chambers": [list(c) for c in x.chambers],
        "solutions": count,
    })
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="buildingtorsion",
        description="Lattice counts, link checks and identity-class torsion "
        "for finite building quotients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("file", help="matrix file: 'rows cols' header then rows")
    _add_emit(p)
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("weyl-length", help="cyclic permutation and its length")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_emit(p)
    p.set_defaults(func=_cmd_weyl_length)

    p = sub.add_parser("flags", help="flag counts over a finite field")
    flags_sub = p.add_subparsers(dest="flags_command", required=True)
    pc = flags_sub.add_parser("count", help="number of full flags of F_q^m")
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--e", type=int, default=1)
    pc.add_argument("--m", type=int, required=True)
    _add_emit(pc)
    pc.set_defaults(func=_cmd_flags)

    p = sub.add_parser("sphere", help="flag counts at a fixed relative position")
    sphere_sub = p.add_subparsers(dest="sphere_command", required=True)
    pc = sphere_sub.add_parser(
        "count", help="flags at relative position w from the coordinate flag"
    )
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--e", type=int, default=1)
    pc.add_argument("--m", type=int, required=True)
    pc.add_argument("--w", required=True, help="permutation images, e.g. 2,3,1")
    _add_emit(pc)
    pc.set_defaults(func=_cmd_sphere)

    p = sub.add_parser("ball", help="combinatorial ball of lattice classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--allow-large", action="store_true")
    _add_emit(p)
    p.set_defaults(func=_cmd_ball)

    p = sub.add_parser("link-check", help="validate the links of a complex file")
    p.add_argument("file")
    _add_emit(p)
    p.set_defaults(func=_cmd_link_check)

    p = sub.add_parser("mk", help="distance-k transfer matrix of a complex")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    _add_emit(p)
    p.set_defaults(func=_cmd_mk)

    p = sub.add_parser("order", help="order of [I] in the relation group")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tree", help="graph file")
    group.add_argument("--a2", help="complex file")
    p.add_argument(
        "--with-mk", action="store_true",
        help="include the distance transfer relations (complexes only)",
    )
    _add_emit(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("bound", help="closed-form annihilating bound for [I]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n0", type=int, required=True)
    _add_emit(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("chi", help="Euler characteristic of a rank-n quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n0", type=int, required=True)
    _add_emit(p)
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser(
        "search-presentation",
        help="search one-vertex complexes with plane links",
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    _add_emit(p)
    p.set_defaults(func=_cmd_search_presentation)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "order" and args.with_mk and not args.a2:
        print("error: --with-mk applies only to --a2", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
