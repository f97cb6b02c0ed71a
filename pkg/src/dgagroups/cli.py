"""Command-line interface; every run prints one JSON report on stdout.

Exit codes: 0 success, 1 verification failure or inconclusive result,
2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings

from . import __version__
from .encoder import certify, encode_graph
from .errors import LiftError, ParseError, ResourceCapError
from .formats import format_dga, format_edges, parse_dga, parse_edges, parse_gtab
from .graph import DEFAULT_AUT_CAP, Permutation, automorphisms, complete_graph, is_connected, path_graph
from .groups import (DEFAULT_ISO_CAP, DEFAULT_REALIZATION_AUT_CAP, cyclic, direct_product,
                     realize, validate, verify_realization)
from .laws import check_laws
from .maps import DEFAULT_NMAX, check_kernel_properties, lift, random_kernel_element
from .pipeline import DEFAULT_PIPELINE_RIGIDITY_CAP, PipelineConfig, distinguish
from .rigidity import DEFAULT_RIGIDITY_CAP, RIGID, solve_rigidity

SCHEMA = "dgagroups.report/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _entry(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail", "residual": detail}


def _overall(entries):
    statuses = {e["status"] for e in entries}
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"


# -- subcommands: each returns (entries, result) -----------------------------

def cmd_encode(args):
    g = parse_edges(_read(args.graph))
    entries = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = encode_graph(g)
    text = format_dga(p)
    _write(args.out, text)
    entries.append(_entry("encode", True, f"{len(p.table)} generators"))
    return entries, {"generators": len(p.table), "vertices": len(g.vertices), "edges": len(g.edges),
                     "connected": is_connected(g), "warnings": [str(w.message) for w in caught],
                     "out": args.out}


def cmd_verify(args):
    p = parse_dga(_read(args.dga))
    rep = certify(p)
    entries = rep.entries()
    return entries, {"generators": len(p.table), "ok": rep.ok}


def cmd_graph_aut(args):
    g = parse_edges(_read(args.graph))
    auts = automorphisms(g, cap=args.cap)
    maps = [p.to_mapping(g) for p in auts]
    return [_entry("automorphisms", True, f"{len(auts)} found")], {
        "count": len(auts), "automorphisms": [{k: v for k, v in m.items() if k != v} for m in maps]}


def cmd_realize(args):
    gt = parse_gtab(_read(args.group))
    rep = validate(gt)
    if not rep.ok:
        raise InputError("invalid group table: " + "; ".join(rep.diagnostics))
    gr = realize(gt)
    if args.out:
        _write(args.out, format_edges(gr))
    ok = verify_realization(gt, gr, aut_cap=args.aut_cap, iso_cap=args.iso_cap)
    return [_entry("verify_realization", ok)], {
        "order": gt.order, "vertices": len(gr.vertices), "edges": len(gr.edges), "out": args.out}


def _parse_mapping(items, g):
    mapping = {}
    known = set(g.vertices)
    for item in items:
        src, sep, dst = item.partition("=")
        if not sep or src not in known or dst not in known:
            raise InputError(f"bad mapping item {item!r}; expected u=v with vertices of the graph")
        if src in mapping:
            raise InputError(f"vertex {src!r} mapped twice")
        mapping[src] = dst
    full = {v: mapping.get(v, v) for v in g.vertices}
    if sorted(full.values()) != sorted(g.vertices):
        raise InputError("mapping is not a bijection")
    return full


def cmd_lift(args):
    g = parse_edges(_read(args.graph))
    p = encode_graph(g)
    sigma = _parse_mapping(args.mapping, g)
    try:
        f = lift(p, sigma)
    except LiftError as exc:
        return [_entry(f"commutes({exc.generator})", False, str(exc.residual))], {"verified": False}
    if args.out:
        lines = [f"{name} -> {f.image(name)}" for name in f.moved_generators()]
        _write(args.out, "\n".join(lines) + ("\n" if lines else ""))
    return [_entry("lift", True)], {"verified": True, "moved": f.moved_generators()}


def cmd_rigidity(args):
    g = parse_edges(_read(args.graph))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p = encode_graph(g)
    res = solve_rigidity(p, g, cap=args.cap)
    entries = [{"name": "solve_rigidity",
                "status": {RIGID: "pass", "inconclusive": "inconclusive"}.get(res.status, "fail"),
                "residual": res.reason}]
    if res.status != "inconclusive":
        oracle = automorphisms(g, cap=args.aut_cap)
        got = {s.permutation(g).images for s in res.solutions}
        entries.append(_entry("matches_graph_oracle", got == {q.images for q in oracle},
                              f"{len(res.solutions)} solutions, {len(oracle)} graph automorphisms"))
        entries.append(_entry("all_admissible", all(s.is_admissible() for s in res.solutions)))
    return entries, res.to_dict()


def _pipeline_config(args):
    return PipelineConfig(iso_cap=args.iso_cap, realization_aut_cap=args.aut_cap,
                          rigidity_cap=args.rigidity_cap, nmax=args.nmax, seed=args.seed)


def cmd_distinguish(args):
    a = parse_gtab(_read(args.group_a))
    b = parse_gtab(_read(args.group_b))
    for name, t in (("a", a), ("b", b)):
        rep = validate(t)
        if not rep.ok:
            raise InputError(f"invalid group table {name}: " + "; ".join(rep.diagnostics))
    rep = distinguish(a, b, _pipeline_config(args), full=not args.oracle_only)
    rep.pop("seconds", None)
    entries = rep.pop("entries")
    return entries, rep


def cmd_selftest(args):
    rng = random.Random(args.seed)
    entries = []
    laws = check_laws(args.samples, args.seed)
    entries.append(_entry("algebra_laws", laws.ok, "; ".join(map(str, laws.failures[:3]))))
    k3, p3 = complete_graph(3), path_graph(3)
    for name, g in (("K3", k3), ("P3", p3)):
        p = encode_graph(g)
        entries.append(_entry(f"certify({name})", certify(p).ok))
        auts = automorphisms(g)
        lifted = [lift(p, s) for s in auts]
        entries.append(_entry(f"lifts({name})", all(f.verified for f in lifted), f"{len(lifted)} lifts"))
        res = solve_rigidity(p, g)
        ok = res.status == RIGID and {s.permutation(g).images for s in res.solutions} == \
            {q.images for q in auts}
        entries.append(_entry(f"rigidity({name})", ok, f"{len(res.solutions)} solutions"))
        f, _, _ = random_kernel_element(p, rng)
        h, _, _ = random_kernel_element(p, rng)
        kr = check_kernel_properties(p, f, h, nmax=args.nmax)
        entries.append(_entry(f"kernel_laws({name})", kr.ok))
    swap = Permutation((1, 0, 2))
    try:
        lift(encode_graph(p3), swap)
        entries.append(_entry("lift_rejects_non_automorphism", False))
    except LiftError:
        entries.append(_entry("lift_rejects_non_automorphism", True))
    z2 = cyclic(2)
    rep = distinguish(cyclic(4), direct_product(z2, z2), _pipeline_config(args))
    entries.append(_entry("distinguish(Z4, Z2xZ2)", rep["status"] == "pass",
                          f"chain {rep['verdict']}, oracle {rep['oracle']}"))
    return entries, {"samples": args.samples}


# -- argument parsing ----------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="dgagroups", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--nmax", type=int, default=DEFAULT_NMAX, help="largest power in kernel checks")
    common.add_argument("--aut-cap", type=int, default=DEFAULT_REALIZATION_AUT_CAP,
                        help="cap on automorphism enumeration")
    common.add_argument("--iso-cap", type=int, default=DEFAULT_ISO_CAP, help="cap on group order")
    common.add_argument("--rigidity-cap", type=int, default=DEFAULT_PIPELINE_RIGIDITY_CAP,
                        help="vertex cap for the rigidity stage of distinguish")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock timing from the report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="graph edge list -> .dga file")
    p.add_argument("graph")
    p.add_argument("out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify", parents=[common], help="certify d^2 = 0 and degrees of a .dga file")
    p.add_argument("dga")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph-aut", parents=[common], help="list graph automorphisms")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=DEFAULT_AUT_CAP)
    p.set_defaults(func=cmd_graph_aut)

    p = sub.add_parser("realize", parents=[common], help="group table -> graph, then verify")
    p.add_argument("group")
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("lift", parents=[common], help="lift a vertex permutation to the DGA")
    p.add_argument("graph")
    p.add_argument("mapping", nargs="*", help="items u=v; unlisted vertices are fixed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("rigidity", parents=[common], help="recover Aut(graph) from its DGA")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=DEFAULT_RIGIDITY_CAP)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("distinguish", parents=[common], help="compare two groups through their DGAs")
    p.add_argument("group_a")
    p.add_argument("group_b")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle-only", action="store_true")
    mode.add_argument("--full", action="store_true", help="run the full chain (default)")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("selftest", parents=[common], help="quick seeded checks of every module")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_selftest)
    return parser


def _config(args):
    cfg = {"seed": args.seed, "nmax": args.nmax, "aut_cap": args.aut_cap, "iso_cap": args.iso_cap,
           "rigidity_cap": args.rigidity_cap}
    if hasattr(args, "cap"):
        cfg["cap"] = args.cap
    return cfg


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    report = {"schema": SCHEMA, "version": __version__, "command": argv,
              "config": _config(args)}
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        entries, result = args.func(args)
        report["entries"] = entries
        report["result"] = result
        report["status"] = _overall(entries)
        if report["status"] != "pass":
            code = EXIT_FAIL
    except ResourceCapError as exc:
        report.update(status="fail", entries=[{"name": exc.stage, "status": "fail", "residual": str(exc)}],
                      error={"kind": "resource_cap", "stage": exc.stage, "size": exc.size,
                             "cap": exc.cap})
        code = EXIT_CAP
    except (ParseError, InputError, ValueError) as exc:
        kind = "parse" if isinstance(exc, ParseError) else "input"
        report.update(status="fail", entries=[{"name": kind, "status": "fail", "residual": str(exc)}],
                      error={"kind": kind, "message": str(exc)})
        code = EXIT_INPUT
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    print(json.dumps(report, indent=2, sort_keys=True, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
