"""Acceptance criteria 1-10; each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also collected in the "acceptance criteria" terminal summary section.
"""
import itertools
import random
import time

from conftest import brute_force_colorings, chromatic_number_oracle, named_plane_graph
from groupedge.abelian import Group, abelian_groups_of_order
from groupedge.catalog import (
    all_graphs,
    connected_graphs,
    cycle_graph,
    path_graph,
    random_graph,
    random_tree,
    random_two_degenerate,
    star_graph,
)
from groupedge.choosability import (
    SearchBudgetExceeded,
    criticality_obstructions,
    edge_variant,
    group_chromatic_number_bounded,
    groups_of_orders,
    is_A_colorable,
    is_group_k_choosable,
)
from groupedge.discharging import CASES, apply_rules, builtin_ruleset, initial_charges
from groupedge.graphcore import Graph, Orientation, line_graph
from groupedge.groupcolor import (
    ForbiddenAssignment,
    ListAssignment,
    PeelingStuck,
    gauge_transform,
    peel_and_color,
    peel_order,
    reverse_edge,
    solve_exact,
    verify_coloring,
)
from groupedge.planemb import random_plane_graph


def random_instance(g, grp, k, rng):
    """Random orientation, random f and random k-uniform lists on ``g``."""
    direction = {e: (e if rng.random() < 0.5 else (e[1], e[0])) for e in g.edges}
    values = {e: rng.choice(grp.elements) for e in g.edges}
    fa = ForbiddenAssignment(grp, Orientation(direction), values)
    la = ListAssignment.from_lists(grp, [rng.sample(grp.elements, k) for _ in range(g.n)])
    return fa, la


def edge_subgraphs(g):
    """Every subgraph of ``g`` with at least one edge, as edge subsets on the same vertex set."""
    for r in range(1, g.m + 1):
        for es in itertools.combinations(g.edges, r):
            yield g.edge_subgraph(es)


def canonical_form(g):
    """Isomorphism-invariant key of ``g`` with isolated vertices removed (small graphs only)."""
    core = [v for v in range(g.n) if g.degree(v)]
    h = g.induced(core)
    return h.n, min(
        tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in h.edges)) for p in itertools.permutations(range(h.n))
    )


# ---- 1 ----------------------------------------------------------------------


def test_criterion_1_paths_and_cycles(acceptance_report):
    got = {}
    for n in range(3, 7):
        got[f"P{n}"] = edge_variant(path_graph(n), "group_edge_choice", max_order=4, certify=False).value
        got[f"C{n}"] = edge_variant(cycle_graph(n), "group_edge_choice", max_order=4, certify=False).value
    want = {f"P{n}": 2 for n in range(3, 7)} | {f"C{n}": 3 for n in range(3, 7)}
    ok = got == want
    acceptance_report(1, ok, f"bounded group edge choice numbers {got}")
    assert ok


# ---- 2 ----------------------------------------------------------------------


def test_criterion_2_even_cycle(acceptance_report):
    c4 = cycle_graph(4)
    z2 = Group((2,))
    v = is_A_colorable(c4, z2, certify=False)
    witness_ok = (
        not v.holds
        and v.witness is not None
        and solve_exact(c4, v.witness.fa) is None
        and not any(verify_coloring(c4, v.witness.fa, None, c)[0] for c in brute_force_colorings(c4, z2))
    )
    larger = [grp for order in (3, 4) for grp in abelian_groups_of_order(order)]
    larger_ok = all(is_A_colorable(c4, grp, certify=False).holds for grp in larger)
    chi = group_chromatic_number_bounded(c4, 4, certify=False)
    ok = witness_ok and larger_ok and chi.value == 3 and not chi.exceeded
    f = {str(e): x for e, x in v.witness.fa.values.items()} if v.witness else None
    acceptance_report(2, ok, f"Z2 fails with f={f}; {[str(g) for g in larger]} hold; bounded chi_g(C4)={chi.value}")
    assert ok


# ---- 3 ----------------------------------------------------------------------


def test_criterion_3_forest_characterization(acceptance_report):
    groups = groups_of_orders(2, 4)
    graphs = connected_graphs(5)
    mismatches = []
    for g in graphs:
        holds = is_group_k_choosable(g, 2, groups, certify=False).holds
        if holds != g.is_forest():
            mismatches.append(g.edges)
    ok = not mismatches
    trees = sum(g.is_forest() for g in graphs)
    acceptance_report(3, ok, f"{len(graphs)} connected graphs (n<=5), {trees} trees; mismatches {mismatches}")
    assert ok


# ---- 4 ----------------------------------------------------------------------


def test_criterion_4_two_degenerate_peeling(acceptance_report):
    rng = random.Random(4)
    done = failures = 0
    while done < 200:
        g = random_two_degenerate(rng.randint(2, 12), rng, max_degree=4)
        if g.m == 0:
            continue
        k = g.max_degree + 1
        grp = rng.choice(groups_of_orders(k, 5))
        lg = line_graph(g).line_graph
        fa, la = random_instance(lg, grp, k, rng)
        try:
            c = peel_and_color(g, 1, fa, la)
            ok = verify_coloring(lg, fa, la, c)[0]
        except PeelingStuck:
            ok = False
        failures += not ok
        done += 1
    ok = failures == 0
    acceptance_report(4, ok, f"{done} random 2-degenerate instances, {failures} failures")
    assert ok


# ---- 5 ----------------------------------------------------------------------


def _degree_sum_oracle(g, i):
    """Every subgraph has an edge with degree sum at most Delta(g) + i + 1."""
    threshold = g.max_degree + i + 1
    for h in edge_subgraphs(g):
        if not any(h.degree(u) + h.degree(v) <= threshold for u, v in h.edges):
            return False
    return True


def _edge_choosable(g, i, memo, budget, max_order):
    """Bounded group (Delta+i)-edge-choosability; None when the sweep exceeds ``budget``."""
    key = canonical_form(g)
    if key not in memo:
        k = g.max_degree + i
        try:
            peel_order(g, i)
            memo[key] = True  # peeling plus greedy colours every instance
        except PeelingStuck:
            lg = line_graph(g).line_graph
            groups = groups_of_orders(k, max(k, max_order))
            try:
                memo[key] = is_group_k_choosable(lg, k, groups, max_instances=budget).holds
            except SearchBudgetExceeded:
                memo[key] = None
    return memo[key]


def _critical_graphs(graphs, i, budget, max_order):
    """Return (failing, critical, undecided) lists for bounded (Delta+i)-edge-choosability."""
    memo = {}
    failing, critical, undecided = [], [], []
    for g in graphs:
        status = _edge_choosable(g, i, memo, budget, max_order)
        if status is None:
            undecided.append(g)
        if status is not False:
            continue
        failing.append(g)
        isolated = any(g.degree(v) == 0 for v in range(g.n))
        proper = (h for h in edge_subgraphs(g) if h.m < g.m)
        if not isolated and all(_edge_choosable(h, i, memo, budget, max_order) is True for h in proper):
            critical.append(g)
    return failing, critical, undecided


def test_criterion_5_degree_sum_peeling(acceptance_report):
    rng = random.Random(5)
    # part A, i = 1: look for graphs beyond Delta + 1, then inspect critical ones
    catalog = [g for g in connected_graphs(5) if g.m]
    fail1, crit1, und1 = _critical_graphs(catalog, 1, budget=50_000, max_order=4)
    # i = 0 on n <= 4, where critical graphs exist
    fail0, crit0, und0 = _critical_graphs([g for g in all_graphs(4, 1) if g.m], 0, budget=10**6, max_order=4)
    obstructed = [g.edges for g in crit1 + crit0 if criticality_obstructions(g, 1 if g in crit1 else 0)]
    part_a = not fail1 and not obstructed and crit0

    # part B: peeling never sticks where the subgraph oracle holds (and sticks where it fails)
    disagreements = bad_colorings = peeled = 0
    for g in all_graphs(5, 1):
        if not g.m:
            continue
        for i in (0, 1):
            oracle = _degree_sum_oracle(g, i)
            try:
                peel_order(g, i)
                stuck = False
            except PeelingStuck as exc:
                stuck = True
                assert all(exc.core.degree(u) + exc.core.degree(v) > exc.threshold for u, v in exc.core.edges)
            disagreements += oracle == stuck
            if not stuck:
                k = g.max_degree + i
                lg = line_graph(g).line_graph
                grp = rng.choice(groups_of_orders(k, k + 1))
                fa, la = random_instance(lg, grp, k, rng)
                c = peel_and_color(g, i, fa, la)
                bad_colorings += not verify_coloring(lg, fa, la, c)[0]
                peeled += 1
    part_b = disagreements == 0 and bad_colorings == 0
    ok = part_a and part_b
    undecided = [g.edges for g in und1]
    acceptance_report(
        5,
        ok,
        f"i=1: {len(catalog)} graphs, {len(fail1)} beyond Delta+1, undecided within budget {undecided}; "
        f"i=0 (n<=4): critical graphs {[g.edges for g in crit0]}, {len(und0)} undecided, obstructed {obstructed}; "
        f"peeling vs oracle disagreements {disagreements}, {peeled} peeled colourings, {bad_colorings} invalid",
    )
    assert ok


# ---- 6, 7 ---------------------------------------------------------------------


def _embedding_corpus():
    rng = random.Random(6)
    out = [random_plane_graph(rng.randint(1, 12), rng) for _ in range(50)]
    return out + [named_plane_graph("cube"), named_plane_graph("triangle"), named_plane_graph("P3")]


def test_criterion_6_euler_totals(acceptance_report):
    corpus = _embedding_corpus()
    bad = []
    for m, n in ((2, 6), (3, 10)):
        for idx, pg in enumerate(corpus):
            total = initial_charges(pg, m, n).total_before()
            if total != -2 * n:
                bad.append((m, n, idx, total))
    ok = not bad
    acceptance_report(6, ok, f"{len(corpus)} embeddings x 2 charge systems, exact totals -12/-20; mismatches {bad}")
    assert ok


def test_criterion_7_conservation(acceptance_report):
    corpus = _embedding_corpus()
    bad = []
    for case in CASES:
        for idx, pg in enumerate(corpus):
            delta = max(3, pg.graph.max_degree) if case == "T5" else None
            m, n, rules = builtin_ruleset(case, delta)
            cm = apply_rules(pg, m, n, rules, delta=delta)
            if cm.total_after() != cm.total_before():
                bad.append((case, idx))
    ok = not bad
    acceptance_report(7, ok, f"{len(CASES)} rule sets x {len(corpus)} embeddings; non-conserving {bad}")
    assert ok


# ---- 8 ----------------------------------------------------------------------


def test_criterion_8_trees(acceptance_report):
    rng = random.Random(8)
    trees = []
    while len(trees) < 50:
        t = random_tree(rng.randint(4, 16), rng, max_degree=5)
        if 3 <= t.max_degree <= 5:
            trees.append(t)
    failures = []
    for t in trees:
        d = t.max_degree
        v = edge_variant(t, "k_edge_choosable", k=d, groups=groups_of_orders(d, d + 2))
        if not v.holds:
            failures.append(t.edges)
    # exhaustive sweeps (no degeneracy shortcut) on small trees agree
    double_star = Graph(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    small = [(star_graph(3), 3, 5), (star_graph(4), 4, 5), (double_star, 3, 4)]
    exhaustive = [
        edge_variant(t, "k_edge_choosable", k=d, groups=groups_of_orders(d, hi), certify=False).holds
        for t, d, hi in small
    ]
    ok = not failures and all(exhaustive)
    acceptance_report(
        8,
        ok,
        f"50 random trees (Delta 3..5) group Delta-edge-choosable over orders Delta..Delta+2; "
        f"failures {failures}; exhaustive cross-check {exhaustive}",
    )
    assert ok


# ---- 9 ----------------------------------------------------------------------


def test_criterion_9_gauge_orientation_pruning(acceptance_report):
    rng = random.Random(9)
    gauge_bad = orient_bad = sat = 0
    for _ in range(500):
        g = random_graph(rng.randint(1, 6), rng.uniform(0.3, 0.9), rng)
        grp = rng.choice(groups_of_orders(1, 4))
        k = rng.randint(1, grp.order)
        fa, la = random_instance(g, grp, k, rng)
        base = solve_exact(g, fa, la)
        sat += base is not None
        p = [rng.choice(grp.elements) for _ in range(g.n)]
        fa2, la2 = gauge_transform(g, fa, la, p)
        moved = solve_exact(g, fa2, la2)
        if (base is None) != (moved is None):
            gauge_bad += 1
        elif base is not None and not verify_coloring(g, fa2, la2, {v: grp.sub(x, p[v]) for v, x in base.items()})[0]:
            gauge_bad += 1
        fa3 = fa
        for e in g.edges:
            if rng.random() < 0.5:
                fa3 = reverse_edge(fa3, e)
        flipped = solve_exact(g, fa3, la)
        if (base is None) != (flipped is None) or (base is not None and not verify_coloring(g, fa3, la, base)[0]):
            orient_bad += 1

    small = [g for g in all_graphs(5, 1) if 1 <= g.m <= 4]
    groups = groups_of_orders(1, 3)
    prune_bad = []
    for g in small:
        for grp in groups:
            a = is_A_colorable(g, grp, prune=True, certify=False).holds
            b = is_A_colorable(g, grp, prune=False, certify=False).holds
            if a != b:
                prune_bad.append(("colorable", g.edges, str(grp)))
            for k in range(1, grp.order + 1):
                a = is_group_k_choosable(g, k, [grp], prune=True, certify=False).holds
                b = is_group_k_choosable(g, k, [grp], prune=False, certify=False).holds
                if a != b:
                    prune_bad.append(("choosable", g.edges, str(grp), k))
    ok = gauge_bad == 0 and orient_bad == 0 and not prune_bad
    acceptance_report(
        9,
        ok,
        f"500 random instances ({sat} SAT): gauge mismatches {gauge_bad}, orientation mismatches {orient_bad}; "
        f"pruned vs unpruned on {len(small)} graphs x {len(groups)} groups: mismatches {prune_bad}",
    )
    assert ok


# ---- 10 ---------------------------------------------------------------------


def test_criterion_10_zero_forbidden_function(acceptance_report):
    graphs = all_graphs(6)
    groups = groups_of_orders(1, 4)
    bad = []
    for g in graphs:
        chi = chromatic_number_oracle(g)
        for grp in groups:
            c = solve_exact(g, ForbiddenAssignment.zero(g, grp))
            if (c is not None) != (chi <= grp.order):
                bad.append((g.edges, str(grp)))
            elif c is not None and not verify_coloring(g, ForbiddenAssignment.zero(g, grp), None, c)[0]:
                bad.append((g.edges, str(grp), "invalid"))
    ok = not bad
    acceptance_report(10, ok, f"{len(graphs)} graphs (n<=6) x {len(groups)} groups; mismatches {bad[:5]}")
    assert ok
