"""Command line front end.

Exit codes: 0 success, 1 input error, 2 search limit exceeded.
Vertex numbers on the command line are 1-based, matching the JSON files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import clustercat as cc, laurent, polygon as pg, qp as qpmod, quiver as qv, repn, seed as sd
from .service import DEFAULT_MAX_NODES


def _load_quiver(path: str) -> qv.Quiver:
    with open(path, encoding="utf-8") as fh:
        return qv.from_json(json.load(fh))


def _parse_vertices(text: str, n: int) -> list[int]:
    out = []
    for chunk in text.split(","):
        k = int(chunk.strip())
        if not 1 <= k <= n:
            raise ValueError(f"vertex {k} out of range 1..{n}")
        out.append(k - 1)
    return out


def cmd_classify(args) -> int:
    q = _load_quiver(args.quiver)
    verdict = qv.is_mutation_finite(q, max_size=args.max)
    print(f"{qv.classify_diagram(q)}; mutation class: {verdict.value}")
    return 0


def cmd_mutate(args) -> int:
    q = _load_quiver(args.quiver)
    path = _parse_vertices(args.sequence, q.n)
    s = sd.mutate_seed_sequence(sd.initial_seed(q), path)
    if args.json:
        print(json.dumps(sd.to_json(s)))
    else:
        print(sd.seed_str(s))
    return 0


def cmd_exchange_graph(args) -> int:
    q = _load_quiver(args.quiver)
    search = sd.exchange_graph(sd.initial_seed(q), args.max)
    if not search.complete:
        print(f"limit exceeded: more than {args.max} seeds", file=sys.stderr)
        return 2
    g = search.graph
    variables = {p for node in g.seeds for p in node.cluster}
    print(f"{len(g)} seeds, {len(variables)} cluster variables")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(sd.graph_to_dot(g))
        print(f"wrote {args.dot}")
    return 0


def cmd_mutation_class(args) -> int:
    q = _load_quiver(args.quiver)
    search = qv.mutation_class(q, args.max)
    if not search.complete:
        print(f"limit exceeded: more than {args.max} quivers", file=sys.stderr)
        return 2
    print(f"{len(search)} quivers up to isomorphism")
    return 0


def cmd_check(args) -> int:
    q = _load_quiver(args.quiver)
    rng = random.Random(args.seed)
    s0 = sd.initial_seed(q)
    failures = 0
    for trial in range(args.trials):
        path = []
        s = s0
        for _ in range(args.depth):
            k = rng.randrange(q.n)
            if path and k == path[-1] and q.n > 1:
                k = (k + 1) % q.n
            path.append(k)
            s = sd.mutate_seed(s, k)
            v = s.cluster[k]
            if args.laurent and not sd.check_laurent(v, seed=s0, path=path, rng=rng):
                failures += 1
                print(f"trial {trial}: laurent check failed at {path}", file=sys.stderr)
            if args.positivity and not sd.check_positivity(v):
                failures += 1
                print(f"trial {trial}: positivity failed at {path}", file=sys.stderr)
    checked = []
    if args.laurent:
        checked.append("laurent")
    if args.positivity:
        checked.append("positivity")
    print(f"{args.trials} trials x depth {args.depth}: "
          f"{'ok' if failures == 0 else f'{failures} failures'} ({', '.join(checked) or 'nothing'})")
    return 0 if failures == 0 else 1


def cmd_cc(args) -> int:
    q = _load_quiver(args.quiver)
    dims = tuple(int(x) for x in args.module.split(","))
    if len(dims) != q.n:
        raise ValueError(f"module needs {q.n} components")
    rep = repn.build_indecomposable(q, dims)
    table = cc.chi_table(rep)
    v = cc.cc_expand(q, dims, table)
    print(laurent.format_fraction(v))
    return 0


def cmd_qp_mutate(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        qp = qpmod.from_json(json.load(fh))
    result = qpmod.mutate_qp(qp, args.vertex, max_degree=args.max_degree)
    if isinstance(result, qpmod.ReductionIncomplete):
        print(f"reduction incomplete: {result.reason}", file=sys.stderr)
        return 2
    print(json.dumps(qpmod.to_json(result)))
    return 0


def cmd_polygon(args) -> int:
    if args.enumerate:
        tris = pg.triangulations(args.ngon)
        print(f"{len(pg.diagonals(args.ngon))} diagonals, {len(tris)} triangulations")
        for t in tris:
            print(" ".join(f"({a},{b})" for a, b in t.ordered()))
    if args.svg:
        tris = pg.triangulations(args.ngon)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(pg.triangulation_svg(tris[0]))
        print(f"wrote {args.svg}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.port, snapshot=args.snapshot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterkit",
        description="exact quiver mutation and cluster algebra engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quiver(p):
        p.add_argument("-q", "--quiver", required=True, help="quiver JSON file")

    p = sub.add_parser("classify", help="diagram family and mutation finiteness")
    add_quiver(p)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_NODES)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mutate", help="mutate the initial seed along a vertex sequence")
    add_quiver(p)
    p.add_argument("-s", "--sequence", required=True, help="e.g. 3,2,1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("exchange-graph", help="enumerate seeds up to relabelling")
    add_quiver(p)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--dot", help="write the graph in DOT format")
    p.set_defaults(func=cmd_exchange_graph)

    p = sub.add_parser("mutation-class", help="enumerate quivers up to isomorphism")
    add_quiver(p)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_NODES)
    p.set_defaults(func=cmd_mutation_class)

    p = sub.add_parser("check", help="randomized Laurent and positivity checks")
    add_quiver(p)
    p.add_argument("--laurent", action="store_true")
    p.add_argument("--positivity", action="store_true")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cc", help="cluster-character expansion of a module")
    add_quiver(p)
    p.add_argument("--module", required=True, help="dimension vector, e.g. 0,1,0")
    p.set_defaults(func=cmd_cc)

    p = sub.add_parser("qp-mutate", help="mutate a quiver with potential")
    p.add_argument("-f", "--file", required=True, help="QP JSON file")
    p.add_argument("-k", "--vertex", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=12)
    p.set_defaults(func=cmd_qp_mutate)

    p = sub.add_parser("polygon", help="polygon model utilities")
    p.add_argument("--ngon", type=int, required=True)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--svg", help="write one triangulation as SVG")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--snapshot", help="JSON file for session persistence")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
