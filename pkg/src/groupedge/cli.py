"""Command-line interface: ``groupedge analyze | solve | search | discharge``.

Exit codes: 0 holds/SAT, 1 fails/UNSAT (a witness is printed), 2 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .abelian import parse_group
from .catalog import read_graph6_lines
from .choosability import (
    SearchBudgetExceeded,
    classify_bound,
    criticality_obstructions,
    groups_of_orders,
    is_A_colorable,
    is_group_k_choosable,
)
from .discharging import CASES, apply_rules, builtin_ruleset, charge_map_csv, nonnegativity_report
from .graphcore import (
    INFINITY,
    GraphParseError,
    alternating_cycles,
    decode_graph6,
    degeneracy,
    encode_graph6,
    girth,
    graph_from_json,
    has_adjacent_short_cycles,
    line_graph,
)
from .groupcolor import (
    PeelingStuck,
    coloring_to_json,
    instance_from_json,
    peel_and_color,
    solve_exact,
    verify_coloring,
)
from .planemb import embedding_from_json

log = logging.getLogger("groupedge")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class StoreCorruption(Exception):
    pass


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(command, data, params):
    return hashlib.sha256(_canonical({"command": command, "input": data, "params": params}).encode()).hexdigest()


class RunStore:
    """Append-only JSONL file of run records.

    Records with the same input digest must agree on their verdict;
    a disagreement means nondeterminism or corruption and aborts the run.
    """

    def __init__(self, path):
        self.path = Path(path) if path else None
        self.known = {}
        if self.path and self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    rec = json.loads(line)
                    self.known.setdefault(rec["input_digest"], rec["verdict"])

    def append(self, command, data, params, verdict, wall_time):
        key = digest(command, data, params)
        if key in self.known and _canonical(self.known[key]) != _canonical(verdict):
            raise StoreCorruption(f"digest {key[:12]} already stored with a different verdict")
        self.known[key] = verdict
        record = {
            "command": command,
            "input_digest": key,
            "parameters": params,
            "verdict": verdict,
            "wall_time": round(wall_time, 6),
            "tool_version": __version__,
        }
        if self.path:
            with self.path.open("a") as fh:
                fh.write(_canonical(record) + "\n")
        return record


def load_graph(arg):
    """A graph6 string, or a path to a ``.json`` edge list or a one-line graph6 file."""
    p = Path(arg)
    try:
        if p.exists():
            text = p.read_text()
            if text.lstrip().startswith("{"):
                return graph_from_json(json.loads(text))
            lines = [ln for ln in text.splitlines() if ln.strip()]
            if not lines:
                raise InputError(f"{arg}: empty file")
            return decode_graph6(lines[0])
        return decode_graph6(arg)
    except (GraphParseError, ValueError) as exc:
        raise InputError(f"cannot parse graph {arg!r}: {exc}") from exc


def _girth_json(x):
    return None if x == INFINITY else x


def analyze_graph(g, planar=False):
    k, order = degeneracy(g)
    adj_cycles = {}
    for s, t in ((3, 3), (3, 4), (4, 5), (4, 7)):
        found, _ = has_adjacent_short_cycles(g, s, t)
        adj_cycles[f"{s},{t}"] = found
    return {
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree,
        "min_degree": g.min_degree,
        "connected": g.is_connected(),
        "girth": _girth_json(girth(g)),
        "degeneracy": k,
        "degeneracy_order": order,
        "adjacent_short_cycles": adj_cycles,
        "alternating_3_cycles": len(alternating_cycles(g, 3)),
        "bound": classify_bound(g, planar_claim=planar).to_json(),
    }


def cmd_analyze(args, out):
    g = load_graph(args.graph)
    t0 = time.perf_counter()
    report = analyze_graph(g, planar=args.planar)
    RunStore(args.store).append("analyze", encode_graph6(g), {"planar": args.planar}, report, time.perf_counter() - t0)
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_solve(args, out):
    try:
        obj = json.loads(Path(args.instance).read_text())
        g, fa, la, source = instance_from_json(obj)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot load instance: {exc}") from exc
    t0 = time.perf_counter()
    if args.method == "peel":
        if source is None or la is None:
            raise InputError("--method peel needs 'source_graph' and 'lists' in the instance")
        i = la.k - source.max_degree if args.i is None else args.i
        if i < 0:
            raise InputError(f"list size {la.k} is below the maximum degree {source.max_degree}")
        try:
            c = peel_and_color(source, i, fa, la)
        except PeelingStuck as exc:
            verdict = {"result": "stuck", "core_edges": [list(e) for e in exc.core.edges]}
            RunStore(args.store).append("solve", obj, {"method": "peel", "i": i}, verdict, time.perf_counter() - t0)
            out.write(json.dumps(verdict) + "\n")
            return EXIT_FAIL
    else:
        c = solve_exact(g, fa, la)
    params = {"method": args.method}
    if c is None:
        verdict = {"result": "UNSAT"}
        code = EXIT_FAIL
    else:
        ok, violation = verify_coloring(g, fa, la, c)
        if not ok:
            raise RuntimeError(f"solver produced an invalid coloring: {violation}")
        verdict = {"result": "SAT", "coloring": coloring_to_json(c)}
        code = EXIT_OK
    RunStore(args.store).append("solve", obj, params, verdict, time.perf_counter() - t0)
    text = json.dumps(verdict, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    out.write(text)
    return code


def _decide(fn):
    try:
        return fn()
    except SearchBudgetExceeded:
        return None


def _edge_number(lg, orders, k_range, budget, colour):
    """Bounded group (choice) number of ``lg``; witness of the last failure, or None when undecided."""
    if colour:
        for order in range(max(orders), 0, -1):
            for grp in orders.get(order, []):
                v = _decide(lambda: is_A_colorable(lg, grp, max_instances=budget))
                if v is None:
                    return None, None
                if not v:
                    return order + 1, v.witness
        return 1, None
    witness = None
    for k in k_range:
        groups = [grp for order, gs in sorted(orders.items()) if order >= k for grp in gs]
        if not groups:
            break
        v = _decide(lambda: is_group_k_choosable(lg, k, groups, max_instances=budget))
        if v is None:
            return None, None
        if v:
            return k, witness
        witness = v.witness
    return k_range[-1] + 1, witness


def search_one(task):
    """Evaluate one catalog graph; runs in worker processes."""
    g6, mode, params = task
    g = decode_graph6(g6)
    orders = {}
    for grp in params["groups"]:
        orders.setdefault(grp.order, []).append(grp)
    budget = params["budget"]
    delta = g.max_degree
    rec = {"graph6": g6, "n": g.n, "m": g.m, "max_degree": delta, "flags": {}, "witness": None}
    lg = line_graph(g).line_graph
    if mode == "critical":
        obs = criticality_obstructions(g, params["i"])
        rec["obstructions"] = [{"kind": o.kind, "where": list(o.where), "detail": o.detail} for o in obs]
        rec["candidate"] = not obs
        if not obs:
            k = delta + params["i"]
            groups = [grp for grp in params["groups"] if grp.order >= k]
            v = _decide(lambda: is_group_k_choosable(lg, k, groups, max_instances=budget)) if groups else None
            rec["edge_choosable"] = None if v is None else v.holds
            if v is not None and not v:
                rec["flags"]["critical_counterexample_candidate"] = True
                rec["witness"] = v.witness.to_json()
                rec["witness"]["source_graph"] = {"n": g.n, "edges": [list(e) for e in g.edges]}
        return rec
    chi, chi_w = _edge_number(lg, orders, None, budget, colour=True)
    rec["edge_chromatic"] = chi
    if chi is not None and chi > delta + 1:
        rec["flags"]["conjecture1_violation"] = True
        rec["witness"] = chi_w.to_json()
    if mode == "conjecture2-lite":
        k_range = list(range(1, params["max_k"] + 1))
        ch, ch_w = _edge_number(lg, orders, k_range, budget, colour=False)
        rec["edge_choice"] = ch
        if chi is not None and ch is not None and ch != chi:
            rec["flags"]["conjecture2_inconsistent"] = True
            rec["witness"] = ch_w.to_json() if ch_w is not None else None
    if rec["witness"] is not None:
        rec["witness"]["source_graph"] = {"n": g.n, "edges": [list(e) for e in g.edges]}
    return rec


def cmd_search(args, out):
    try:
        lines = Path(args.catalog).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read catalog: {exc}") from exc
    if args.group:
        groups = [parse_group(x) for x in args.group]
    else:
        groups = groups_of_orders(1, args.max_order)
    params = {"groups": groups, "budget": args.budget, "i": args.i, "max_k": args.k or args.max_order}
    tasks = []
    for lineno, item in read_graph6_lines(lines):
        if isinstance(item, Exception):
            log.warning("catalog line %d skipped: %s", lineno, item)
            continue
        tasks.append((encode_graph6(item), args.mode, params))
    json_params = {
        "mode": args.mode,
        "groups": [grp.to_json() for grp in groups],
        "budget": args.budget,
        "i": args.i,
        "max_k": params["max_k"],
    }
    store = RunStore(args.out)
    t0 = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(search_one, tasks))
    else:
        results = [search_one(t) for t in tasks]
    flagged = 0
    for task, rec in zip(tasks, results):
        store.append("search", task[0], json_params, rec, time.perf_counter() - t0)
        if rec["flags"]:
            flagged += 1
        out.write(_canonical(rec) + "\n")
    log.info("searched %d graphs, %d flagged", len(results), flagged)
    return EXIT_FAIL if flagged else EXIT_OK


def cmd_discharge(args, out):
    try:
        obj = json.loads(Path(args.embedding).read_text())
        pg = embedding_from_json(obj)
        m, n, rules = builtin_ruleset(args.case, args.delta)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    t0 = time.perf_counter()
    try:
        cm = apply_rules(pg, m, n, rules, delta=args.delta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    negatives = nonnegativity_report(cm)
    report = {
        "case": args.case,
        "m": m,
        "n": n,
        "total_before": str(cm.total_before()),
        "total_after": str(cm.total_after()),
        "expected_total": str(-2 * n),
        "conserved": cm.conserved(),
        "negative": [{"element": list(k), "charge": str(v)} for k, v in negatives],
    }
    csv_text = charge_map_csv(cm)
    RunStore(args.store).append("discharge", obj, {"case": args.case, "delta": args.delta}, report, time.perf_counter() - t0)
    if args.out:
        Path(args.out).write_text(csv_text)
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(csv_text)
        sys.stderr.write(json.dumps(report) + "\n")
    return EXIT_OK if cm.conserved() else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="groupedge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="structural report and edge-choice bound for a graph")
    a.add_argument("graph", help="graph6 string or path to graph6/JSON file")
    a.add_argument("--planar", action="store_true", help="assert the graph is planar")
    a.add_argument("--store", help="append a run record to this JSONL file")

    s = sub.add_parser("solve", help="solve an (A,L,f)-coloring instance")
    s.add_argument("instance")
    s.add_argument("--method", choices=("exact", "peel"), default="exact")
    s.add_argument("--i", type=int, default=None, help="peeling slack; default is list size minus max degree")
    s.add_argument("--out")
    s.add_argument("--store")

    q = sub.add_parser("search", help="sweep a graph6 catalog")
    q.add_argument("catalog")
    q.add_argument("--mode", choices=("conjecture1", "conjecture2-lite", "critical"), default="conjecture1")
    q.add_argument("--group", action="append", help="restrict to this group, e.g. Z4 or Z2xZ2 (repeatable)")
    q.add_argument("--max-order", type=int, default=4)
    q.add_argument("--k", "--max-k", dest="k", type=int, default=None)
    q.add_argument("--i", type=int, default=1)
    q.add_argument("--budget", type=int, default=20000, help="solver calls per decision before giving up")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out", help="JSONL run store")

    d = sub.add_parser("discharge", help="apply a builtin discharging rule set to an embedding")
    d.add_argument("embedding")
    d.add_argument("--case", choices=CASES, required=True)
    d.add_argument("--delta", type=int, default=None)
    d.add_argument("--out", help="write the charge CSV here")
    d.add_argument("--store")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    handlers = {"analyze": cmd_analyze, "solve": cmd_solve, "search": cmd_search, "discharge": cmd_discharge}
    try:
        return handlers[args.command](args, out)
    except (InputError, StoreCorruption) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
