"""End-to-end group comparison through graphs and DGAs.

Each group is realized as a graph, the graph is encoded, the encoding is
certified, and the rigidity solver recovers the automorphism group from the
DGA alone.  Two groups are declared isomorphic iff the recovered groups are.
The direct table comparison runs alongside as an oracle.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from .encoder import certify, encode_graph
from .errors import ResourceCapError
from .graph import automorphisms
from .groups import (DEFAULT_ISO_CAP, DEFAULT_REALIZATION_AUT_CAP, GroupTable,
                     automorphism_group_table, find_isomorphism, realize, validate,
                     verify_realization)
from .rigidity import RIGID, solve_rigidity

# realized graphs of order-8 groups have 1072 vertices, order 16 gives 8416
DEFAULT_PIPELINE_RIGIDITY_CAP = 2048

ISOMORPHIC = "isomorphic"
NON_ISOMORPHIC = "non-isomorphic"


@dataclass
class PipelineConfig:
    iso_cap: int = DEFAULT_ISO_CAP
    realization_aut_cap: int = DEFAULT_REALIZATION_AUT_CAP
    rigidity_cap: int = DEFAULT_PIPELINE_RIGIDITY_CAP
    nmax: int = 5
    seed: int = 0

    def to_dict(self):
        return asdict(self)


def realized_size(order: int) -> int:
    """Vertex count of ``realize`` for a group of this order, without building it."""
    if order == 1:
        return 6
    if order == 2:
        return 2
    return order + order * sum(4 * s + 3 for s in range(1, order))


def preflight(groups, config: PipelineConfig):
    """Raise :class:`ResourceCapError` naming the first stage a group would overflow."""
    for g in groups:
        if g.order > config.iso_cap:
            raise ResourceCapError("is_isomorphic", g.order, config.iso_cap)
        size = realized_size(g.order)
        if size > config.realization_aut_cap:
            raise ResourceCapError("verify_realization", size, config.realization_aut_cap)
        if size > config.rigidity_cap:
            raise ResourceCapError("solve_rigidity", size, config.rigidity_cap)


def _entry(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail", "residual": detail}


def recover(g: GroupTable, config: PipelineConfig):
    """Run the chain for one group; returns ``(recovered_table or None, entries, stats)``."""
    entries = []
    stats = {"order": g.order}
    rep = validate(g)
    entries.append(_entry("validate", rep.ok, "; ".join(rep.diagnostics)))
    if not rep.ok:
        return None, entries, stats
    gr = realize(g)
    stats["vertices"] = len(gr.vertices)
    stats["edges"] = len(gr.edges)
    ok = verify_realization(g, gr, aut_cap=config.realization_aut_cap, iso_cap=config.iso_cap)
    entries.append(_entry("verify_realization", ok))
    if not ok:
        return None, entries, stats
    p = encode_graph(gr)
    stats["generators"] = len(p.table)
    cert = certify(p)
    bad = [e for e in cert.entries() if e["status"] == "fail"]
    entries.append(_entry("certify", cert.ok, "; ".join(f"{e['name']}: {e['residual']}" for e in bad)))
    if not cert.ok:
        return None, entries, stats
    res = solve_rigidity(p, gr, cap=config.rigidity_cap)
    stats["rigidity_status"] = res.status
    stats["rigidity_solutions"] = len(res.solutions)
    if res.status != RIGID:
        entries.append({"name": "solve_rigidity", "status": "inconclusive",
                        "residual": res.reason or res.status})
        return None, entries, stats
    admissible = all(s.is_admissible() for s in res.solutions)
    entries.append(_entry("solve_rigidity", admissible,
                          "" if admissible else "solution with non-unit scalars or non-permutation gamma"))
    if not admissible:
        return None, entries, stats
    perms = [s.permutation(gr) for s in res.solutions]
    oracle = automorphisms(gr, cap=config.realization_aut_cap)
    same = {q.images for q in perms} == {q.images for q in oracle} and len(perms) == len(oracle)
    entries.append(_entry("rigidity_matches_graph_oracle", same,
                          f"{len(perms)} solutions, {len(oracle)} graph automorphisms"))
    if not same:
        return None, entries, stats
    recovered = automorphism_group_table(perms)
    back = find_isomorphism(g, recovered, cap=config.iso_cap)
    entries.append(_entry("recovered_group_matches_input", back is not None))
    return recovered, entries, stats


def distinguish(a: GroupTable, b: GroupTable, config: PipelineConfig | None = None,
                full: bool = True, cache: dict | None = None) -> dict:
    """Compare two groups through the DGA chain and through the direct oracle.

    The report's ``status`` is ``pass`` only when the chain completed for
    both groups and its verdict agrees with the oracle.  ``cache`` may be a
    dict shared between calls; it is keyed by the group table.
    """
    config = config or PipelineConfig()
    t0 = time.perf_counter()
    preflight([a, b], config)
    oracle = ISOMORPHIC if find_isomorphism(a, b, cap=config.iso_cap) is not None else NON_ISOMORPHIC
    report = {"oracle": oracle, "verdict": None, "agreement": None, "groups": {}, "entries": []}
    if not full:
        report["status"] = "pass"
        report["entries"].append(_entry("oracle", True, oracle))
        report["seconds"] = time.perf_counter() - t0
        return report
    cache = {} if cache is None else cache
    recovered = {}
    for label, g in (("a", a), ("b", b)):
        if g.table not in cache:
            cache[g.table] = recover(g, config)
        rec, entries, stats = cache[g.table]
        recovered[label] = rec
        report["groups"][label] = {"name": g.name, "stats": stats}
        report["entries"] += [dict(e, name=f"{label}.{e['name']}") for e in entries]
    if recovered["a"] is None or recovered["b"] is None:
        statuses = {e["status"] for e in report["entries"]}
        report["status"] = "fail" if "fail" in statuses else "inconclusive"
    else:
        phi = find_isomorphism(recovered["a"], recovered["b"], cap=config.iso_cap)
        report["verdict"] = ISOMORPHIC if phi is not None else NON_ISOMORPHIC
        report["agreement"] = report["verdict"] == oracle
        report["entries"].append(_entry("verdict_agrees_with_oracle", report["agreement"],
                                        f"chain {report['verdict']}, oracle {oracle}"))
        report["status"] = "pass" if report["agreement"] else "fail"
    report["seconds"] = time.perf_counter() - t0
    return report
