"""Command-line front end.

Every command prints a JSON report on stdout (human summary on stderr) and
exits 0 when the verdict is true, 1 when it is false, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import complexes as cx
from . import convex_thrackle as ct
from . import tverberg as tv
from .cliques import TransversalError, abstract_transversal_bound, min_clique_cover_bruteforce
from .exact import format_rational
from .geometry import PointConfiguration, sample_generic_config
from .partitions import enumerate_partitions, stirling2
from .projective import projective_plane
from .render import render_config, render_thrackle


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _point_json(p):
    return [format_rational(c) for c in p]


def _note(msg):
    print(msg, file=sys.stderr)


# -- generate -------------------------------------------------------------------


def _generate(args):
    kind = args.kind
    if kind == "colored-witness":
        obj = tv.colored_witness(args.d, args.r, args.k).to_config().to_json()
    elif kind == "projective-thrackle":
        obj = ct.plane_thrackle_from_incidence(projective_plane(args.q)).to_json()
    elif kind == "seven-gon":
        obj = ct.seven_gon_example().to_json()
    elif kind == "heptagram":
        obj = ct.heptagram_thrackle().to_json()
    elif kind == "quad-apex":
        obj = ct.quad_apex_thrackle().to_json()
    elif kind == "octahedron":
        obj = ct.octahedron_counterexample().to_json()
    elif kind == "random-thrackle":
        obj = ct.random_segment_thrackle(_seed(args)).to_json()
    elif kind == "simplex-boundary":
        obj = cx.complex_to_json(*cx.simplex_boundary(args.d))
    elif kind == "pyramid":
        obj = cx.complex_to_json(*cx.pyramid_example())
    elif kind == "star-cone":
        obj = cx.complex_to_json(*cx.star_cone_example())
    elif kind == "book":
        obj = cx.complex_to_json(*cx.book_example())
    elif kind == "generic-config":
        obj = sample_generic_config(args.d, args.n, _seed(args)).to_json()
    elif kind == "lift":
        if not args.input:
            raise UsageError("generate lift needs --input")
        cfg = PointConfiguration.from_json(_read_json(args.input))
        obj = tv.lift_witness(cfg, args.k).to_json()
    elif kind == "reay-chain":
        obj = tv.reay_chain_witness(args.d, args.r, args.k).to_json()
    elif kind == "planar-witness":
        obj = tv.planar_witness(args.r).to_json()
    else:
        raise UsageError(f"unknown kind {kind!r}")
    text = _dump(obj)
    if args.output:
        _write(args.output, text)
        _note(f"wrote {kind} to {args.output}")
        return {"verdict": True, "kind": kind, "path": args.output}, None
    return None, text


GENERATE_KINDS = ("colored-witness", "projective-thrackle", "seven-gon", "heptagram", "quad-apex",
                  "octahedron", "random-thrackle", "simplex-boundary", "pyramid", "star-cone",
                  "book", "generic-config", "lift", "reay-chain", "planar-witness")


def _seed(args):
    if args.seed is None:
        raise UsageError("this kind is randomized and needs an explicit --seed")
    return args.seed


# -- verify ---------------------------------------------------------------------


def _verify_tverberg(args):
    cfg = PointConfiguration.from_json(_read_json(args.input))
    try:
        cert = tv.verify_no_partition(cfg, args.r, args.k, jobs=args.jobs)
    except tv.PartitionExists as exc:
        _note(f"counterexample: the partition {exc.result.partition.to_json()} qualifies")
        return {"verdict": False, "counterexample": exc.result.to_json()}
    _note(f"no qualifying partition among {cert.partitions_checked}")
    return dict({"verdict": True}, certificate=cert.to_json())


def _verify_certificate(args):
    cert = tv.WitnessCertificate.from_json(_read_json(args.input))
    problems = cert.replay()
    return {"verdict": not problems, "partitions_checked": cert.partitions_checked,
            "problems": problems}


def _verify_thrackle(args):
    inst = ct.ThrackleInstance.from_json(_read_json(args.input))
    rep = ct.check_transversal(inst)
    out = {"verdict": rep.ok, "m": inst.m, "n": inst.n, "W": len(inst.W), "transversal": rep.ok}
    if not rep.ok:
        i, j, c = rep.violation
        out["violation"] = {"bodies": [list(inst.bodies[i]), list(inst.bodies[j])], "count": c}
        _note(f"bodies {i} and {j} meet W in {c} points")
        return out
    if set(inst.V) == {w for w, _ in inst.W}:
        bound = abstract_transversal_bound([inst.bodies[i] for i in range(inst.m)], inst.V)
        out["combinatorial_bound"] = bound.to_json()
    if inst.dim == 2:
        try:
            ct.check_selection_hypotheses(inst, rep)
            sel = ct.vertex_selection(inst, check=False)
        except ct.HypothesisViolation as exc:
            out["selection"] = {"applicable": False, "reason": str(exc)}
        else:
            surj = sel.is_surjective(inst.m)
            out["selection"] = dict(sel.to_json(), applicable=True, surjective=surj)
            out["verdict"] = surj
    _note(f"transversal holds; m={inst.m}, n={inst.n}")
    return out


def _verify_complex(args):
    K, f = cx.complex_from_json(_read_json(args.input))
    rep = cx.verify_linear_thrackle(K, f)
    count = cx.facet_ridge_inequality(K)
    out = {"verdict": rep.passed, "report": rep.to_json(K),
           "m": count.m, "n": count.n, "d": count.d, "dm_le_2n": count.holds}
    if rep.passed:
        trace = cx.reduction(K, f, check=False)
        out["reduction"] = trace.to_json()
        out["reduction_replays"] = cx.replay_reduction(K, f, trace)
        out["verdict"] = out["reduction_replays"] and trace.holds
        _note(f"linear thrackle: {count.d}*{count.m} <= 2*{count.n}")
    else:
        _note(f"not a linear thrackle: {len(rep.ball_failures)} ball failures, "
              f"{len(rep.stability_failures)} unstable pairs")
    return out


def _verify_abstract(args):
    data = _read_json(args.input)
    try:
        bound = abstract_transversal_bound(data["sets"], data["W"])
    except TransversalError as exc:
        return {"verdict": False, "pair": list(exc.pair), "count": exc.count}
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed abstract-sets file: {exc}") from exc
    return dict({"verdict": bound.holds}, **bound.to_json())


def _verify_colored(args):
    colored = tv.ColoredConfiguration.from_config(PointConfiguration.from_json(_read_json(args.input)))
    sel = tv.find_rainbow_partition(colored, args.r, args.k)
    if sel is None:
        return {"verdict": True, "rainbow_partition": None, "exhaustive": True}
    return {"verdict": False, "rainbow_partition": [list(b) for b in sel.blocks]}


VERIFY = {"tverberg-witness": _verify_tverberg, "certificate": _verify_certificate,
          "thrackle": _verify_thrackle, "complex": _verify_complex,
          "abstract": _verify_abstract, "colored-witness": _verify_colored}


# -- search -----------------------------------------------------------------------


def _search(args):
    kind = args.kind
    if kind == "partition":
        cfg = PointConfiguration.from_json(_read_json(_need_input(args)))
        res = tv.find_partition(cfg, args.r, args.k, jobs=args.jobs)
        if res is None:
            return {"verdict": False, "found": None, "exhaustive": True}
        return {"verdict": True, "found": res.to_json()}
    if kind == "planar-witness":
        cfg, cert, attempts = tv.search_planar_witness(args.r, _seed(args), k=args.k,
                                                      max_tries=args.max_tries, jobs=args.jobs)
        return {"verdict": True, "attempts": attempts, "config": cfg.to_json(),
                "certificate": cert.to_json(), "replay_problems": cert.replay()}
    if kind == "rainbow":
        colored = tv.ColoredConfiguration.from_config(
            PointConfiguration.from_json(_read_json(_need_input(args))))
        sel = tv.find_rainbow_partition(colored, args.r, args.k)
        if sel is None:
            return {"verdict": False, "found": None, "exhaustive": True}
        return {"verdict": True, "found": {
            "blocks": [list(b) for b in sel.blocks],
            "witnesses": [{"subfamily": list(s), "point": _point_json(p)}
                          for s, p in sorted(sel.witnesses.items())]}}
    if kind == "second-apex":
        q = cx.search_second_apex(_seed(args))
        return {"verdict": True, "second_apex": _point_json(q)}
    raise UsageError(f"unknown search kind {kind!r}")


def _need_input(args):
    if not args.input:
        raise UsageError(f"search {args.kind} needs an input file")
    return args.input


# -- render / oracle -------------------------------------------------------------------


def _render(args):
    data = _read_json(args.input)
    if "W" in data:
        svg = render_thrackle(ct.ThrackleInstance.from_json(data))
    elif "points" in data:
        svg = render_config(PointConfiguration.from_json(data))
    else:
        raise UsageError("render understands thrackle instances and point configurations")
    _write(args.output, svg)
    return {"verdict": True, "path": args.output}


def _oracle(args):
    if args.kind == "clique-cover":
        value = min_clique_cover_bruteforce(args.m)
        return {"verdict": value == args.m, "m": args.m, "min_proper_clique_cover": value}
    if args.kind == "partitions":
        listed = sum(1 for _ in enumerate_partitions(args.n, args.r))
        s = stirling2(args.n, args.r)
        return {"verdict": listed == s, "n": args.n, "r": args.r, "enumerated": listed,
                "stirling": s}
    raise UsageError(f"unknown oracle {args.kind!r}")


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ttl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write one of the built-in constructions as JSON")
    g.add_argument("kind", choices=GENERATE_KINDS)
    for flag in ("--d", "--r", "--k", "--q", "--n", "--seed"):
        g.add_argument(flag, type=int)
    g.add_argument("--input", help="input configuration (for lift)")
    g.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="check an instance or certificate")
    v.add_argument("kind", choices=sorted(VERIFY))
    v.add_argument("input")
    v.add_argument("--r", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--jobs", type=int, default=1,
                   help="worker processes; results do not depend on this")

    s = sub.add_parser("search", help="run a partition or witness search")
    kinds = s.add_subparsers(dest="kind", required=True)
    for kind in ("partition", "planar-witness", "rainbow", "second-apex"):
        k = kinds.add_parser(kind)
        if kind in ("partition", "rainbow"):
            k.add_argument("input")
        else:
            k.set_defaults(input=None)
        k.add_argument("--r", type=int)
        k.add_argument("--k", type=int, default=2)
        k.add_argument("--seed", type=int)
        k.add_argument("--max-tries", type=int, default=2000)
        k.add_argument("--jobs", type=int, default=1,
                       help="worker processes; results do not depend on this")
        k.add_argument("-o", "--output")

    r = sub.add_parser("render", help="draw a planar instance as SVG")
    r.add_argument("input")
    r.add_argument("output")

    o = sub.add_parser("oracle", help="brute-force oracles")
    o.add_argument("kind", choices=("clique-cover", "partitions"))
    o.add_argument("--m", type=int)
    o.add_argument("--n", type=int)
    o.add_argument("--r", type=int)
    return p


def _required_for(args):
    need = {
        ("generate", "colored-witness"): ("d", "r", "k"),
        ("generate", "projective-thrackle"): ("q",),
        ("generate", "simplex-boundary"): ("d",),
        ("generate", "generic-config"): ("d", "n"),
        ("generate", "lift"): ("k",),
        ("generate", "reay-chain"): ("d", "r", "k"),
        ("generate", "planar-witness"): ("r",),
        ("verify", "tverberg-witness"): ("r", "k"),
        ("verify", "colored-witness"): ("r", "k"),
        ("search", "partition"): ("r", "k"),
        ("search", "planar-witness"): ("r",),
        ("search", "rainbow"): ("r", "k"),
        ("oracle", "clique-cover"): ("m",),
        ("oracle", "partitions"): ("n", "r"),
    }.get((args.command, getattr(args, "kind", None)), ())
    for name in need:
        if getattr(args, name, None) is None:
            raise UsageError(f"{args.command} {args.kind} needs --{name}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _required_for(args)
        text = None
        if args.command == "generate":
            report, text = _generate(args)
        elif args.command == "verify":
            report = VERIFY[args.kind](args)
        elif args.command == "search":
            report = _search(args)
        elif args.command == "render":
            report = _render(args)
        else:
            report = _oracle(args)
    except (UsageError, ValueError, KeyError, TypeError, tv.BaseWitnessNotFound,
            cx.ConstructionError) as exc:
        _note(f"error: {exc}")
        sys.stdout.write(_dump({"verdict": None, "error": str(exc)}))
        return 2
    if text is not None:
        sys.stdout.write(text)
        return 0
    out = _dump(report)
    if getattr(args, "output", None) and args.command == "search":
        _write(args.output, out)
    sys.stdout.write(out)
    return 0 if report["verdict"] else 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
