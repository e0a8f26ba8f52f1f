"""Command line front end.

Subcommands: count a problem file, list canonical types of a degree,
emit a validated constraint tuple, query the plane-curve oracle, verify
a toric refinement certificate, and emit preset problem skeletons.
"""

import argparse
import json
import sys

from . import curves, engine, matching, toric


def _load(path):
    with open(path) as fp:
        return json.load(fp)


def _emit(data, out=None):
    text = json.dumps(data, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fp:
            fp.write(text + "\n")
    else:
        print(text)


def _cmd_count(args):
    data = _load(args.problem)
    if data.get("options", {}).get("long") and not args.long:
        print("problem is marked long; pass --long to run it",
              file=sys.stderr)
        return 2
    problem = engine.problem_from_json(data)
    report = engine.count_invariant(problem, seed=args.seed,
                                    workers=args.workers)
    _emit(engine.report_to_json(report), args.out)
    return 0


def _cmd_types(args):
    deg = engine.degree_from_json(_load(args.degree))
    out = [engine.comb_type_to_json(t)
           for t in curves.enumerate_types(deg, args.marks)]
    _emit({"degree": engine.degree_to_json(deg), "marks": args.marks,
           "count": len(out), "types": out}, args.out)
    return 0


def _cmd_constraints(args):
    data = _load(args.spec)
    bases = tuple(tuple(tuple(v) for v in basis)
                  for basis in data["bases"])
    cons = matching.generate_constraints(
        data["rank"], bases, args.seed, bound=data.get("bound", 10 ** 6))
    _emit({"constraints": [{"offset": list(c.offset),
                            "basis": [list(v) for v in c.basis]}
                           for c in cons]}, args.out)
    return 0


def _cmd_oracle(args):
    print(engine.kontsevich_oracle(args.plane_degree))
    return 0


def _cmd_toric_verify(args):
    fan = toric.fan_from_json(_load(args.fan))
    cert = toric.certificate_from_json(_load(args.cert))
    ok, report = toric.verify_small_resolution(fan, cert)
    _emit({"ok": ok, "report": report}, args.out)
    return 0 if ok else 1


def _preset_problem(kind, cls):
    if kind == "flag3":
        s, t = cls
        npts = s + t
        source = {"kind": "flag3", "class": [s, t]}
    else:
        npts = cls
        source = {"kind": "octahedron", "class": cls}
    return {
        "rank": 3,
        "degree_source": source,
        "constraints": {"kind": "generate", "bases": [[] for _ in range(npts)]},
        "options": {},
    }


def _cmd_preset(args):
    if args.preset == "flag3":
        parts = [int(x) for x in args.cls.split(",")]
        if len(parts) != 2:
            print("flag3 wants --class S,T", file=sys.stderr)
            return 2
        data = _preset_problem("flag3", tuple(parts))
    else:
        data = _preset_problem("octahedron", int(args.cls))
    _emit(data, args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="tropcount",
        description="Count rational tropical curves under incidence "
                    "constraints.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="run a counting problem")
    c.add_argument("--problem", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--long", action="store_true",
                   help="allow problems marked long")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_count)

    t = sub.add_parser("types", help="list canonical combinatorial types")
    t.add_argument("--degree", required=True)
    t.add_argument("--marks", type=int, required=True)
    t.add_argument("--out")
    t.set_defaults(func=_cmd_types)

    g = sub.add_parser("constraints", help="emit a validated constraint tuple")
    g.add_argument("--spec", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_constraints)

    o = sub.add_parser("oracle", help="plane curve counts by recursion")
    o.add_argument("--plane-degree", type=int, required=True)
    o.set_defaults(func=_cmd_oracle)

    tor = sub.add_parser("toric", help="toric support tools")
    tsub = tor.add_subparsers(dest="toric_command", required=True)
    v = tsub.add_parser("verify", help="check a small-resolution certificate")
    v.add_argument("--fan", required=True)
    v.add_argument("--cert", required=True)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_toric_verify)

    pre = sub.add_parser("preset", help="emit a preset problem skeleton")
    pre.add_argument("preset", choices=("flag3", "octahedron"))
    pre.add_argument("--class", dest="cls", required=True,
                     help="S,T for flag3, A for octahedron")
    pre.add_argument("--out")
    pre.set_defaults(func=_cmd_preset)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
