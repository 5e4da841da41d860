import pytest

from conftest import nx_to_graph
import networkx as nx

from groupedge.abelian import abelian_groups_of_order, make_group
from groupedge.catalog import (
    all_graphs,
    complete_graph,
    connected_graphs,
    cycle_graph,
    path_graph,
    petersen_graph,
    random_tree,
    star_graph,
)
from groupedge.choosability import (
    InvalidQuantifierError,
    SearchBudgetExceeded,
    classify_bound,
    criticality_obstructions,
    edge_variant,
    group_chromatic_number_bounded,
    group_choice_number_bounded,
    groups_of_orders,
    is_A_colorable,
    is_group_k_choosable,
)
from groupedge.graphcore import Graph, line_graph
from groupedge.groupcolor import solve_exact, verify_coloring

Z2 = make_group([2])


def test_triangle_z2_fails_with_zero_witness():
    v = is_A_colorable(complete_graph(3), Z2, certify=False)
    assert not v
    assert set(v.witness.fa.values.values()) == {(0,)}
    assert solve_exact(v.witness.graph, v.witness.fa) is None


def test_c4_z2_fails():
    v = is_A_colorable(cycle_graph(4), Z2, certify=False)
    assert v.result == "fails"
    assert solve_exact(v.witness.graph, v.witness.fa) is None


def test_trees_are_colorable_over_every_group():
    import random

    rng = random.Random(3)
    for _ in range(10):
        t = random_tree(rng.randrange(2, 9), rng)
        for grp in groups_of_orders(2, 5):
            assert is_A_colorable(t, grp, certify=False)


def test_k_choosable_examples():
    assert is_group_k_choosable(path_graph(3), 2, groups_of_orders(2, 4), certify=False)
    v = is_group_k_choosable(cycle_graph(4), 2, [Z2], certify=False)
    assert not v and v.witness.la is not None
    assert is_group_k_choosable(Graph(1), 1, groups_of_orders(1, 3), certify=False)


def test_k_choosable_rejects_small_groups():
    with pytest.raises(InvalidQuantifierError):
        is_group_k_choosable(path_graph(3), 3, [Z2])


def test_budget_is_enforced():
    with pytest.raises(SearchBudgetExceeded):
        is_group_k_choosable(cycle_graph(6), 3, groups_of_orders(3, 4), certify=False, max_instances=10)


def test_certificate_short_circuits():
    v = is_group_k_choosable(cycle_graph(6), 3, groups_of_orders(3, 4))
    assert v and v.counts["certified_by"] == "degeneracy"


def test_bounded_chromatic_numbers():
    assert group_chromatic_number_bounded(cycle_graph(4), 5, certify=False).value == 3
    assert group_chromatic_number_bounded(complete_graph(3), 5, certify=False).value == 3
    assert group_chromatic_number_bounded(Graph(4), 5).value == 1


def test_bounded_choice_numbers():
    assert group_choice_number_bounded(random_tree(5), 4, certify=False).value == 2
    assert group_choice_number_bounded(cycle_graph(5), 4, certify=False).value == 3
    assert group_choice_number_bounded(Graph(1), 4).value == 1


def test_bounded_number_reports_exceeded():
    r = group_chromatic_number_bounded(complete_graph(4), 3)
    assert r.exceeded and r.value == 4 and "not checked" in r.caveat
    assert solve_exact(r.witness.graph, r.witness.fa) is None


def test_edge_variants():
    assert edge_variant(path_graph(4), "group_edge_choice", max_order=4, certify=False).value == 2
    assert edge_variant(cycle_graph(4), "group_edge_choice", max_order=4, certify=False).value == 3
    assert edge_variant(star_graph(3), "k_edge_choosable", k=3, groups=groups_of_orders(3, 4), certify=False)
    v = edge_variant(cycle_graph(4), "k_edge_choosable", k=2, groups=[Z2])
    assert not v and v.witness.source == cycle_graph(4)
    assert v.witness.to_json()["source_graph"]["edges"] == [list(e) for e in cycle_graph(4).edges]


def test_cycles_are_not_group_2_edge_choosable():
    for n in range(3, 8):
        v = edge_variant(cycle_graph(n), "k_edge_choosable", k=2, groups=groups_of_orders(2, 3))
        assert not v


def test_criticality_obstructions_examples():
    pendant = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    kinds = {o.kind for o in criticality_obstructions(pendant, 1)}
    assert "min-degree" in kinds
    assert criticality_obstructions(complete_graph(5), 0) == []
    obs = criticality_obstructions(cycle_graph(4), 1)
    assert sorted(o.where for o in obs if o.kind == "degree-sum") == list(cycle_graph(4).edges)
    assert any(o.kind == "disconnected" for o in criticality_obstructions(Graph(4, [(0, 1), (2, 3)]), 0))


# ---- classifier --------------------------------------------------------------


def test_classify_tree_is_tight():
    t = star_graph(4)
    r = classify_bound(t)
    assert r.predicted_bound == 4 and r.tight
    assert "T5" in {x.result_id for x in r.applicable_results}


def test_classify_dodecahedron():
    g = nx_to_graph(nx.dodecahedral_graph())
    r = classify_bound(g, planar_claim=True)
    ids = {x.result_id: x.bound for x in r.applicable_results}
    assert ids["planar-girth-5"] == 4
    assert ids["line-graph-brooks"] == 4
    assert "T5" not in ids
    assert r.predicted_bound == 4


def test_classify_k4_falls_back():
    r = classify_bound(complete_graph(4), planar_claim=True)
    ids = {x.result_id for x in r.applicable_results}
    assert not ids & {"T4-1", "T4-2", "T4-3", "T4-4"}
    assert r.predicted_bound == 4


def test_classify_petersen_without_planar_claim():
    r = classify_bound(petersen_graph())
    assert [x.result_id for x in r.applicable_results] == ["line-graph-brooks"]
    assert r.predicted_bound == 4
    r2 = classify_bound(petersen_graph(), planar_claim=True)
    assert "planar-girth-5" in {x.result_id for x in r2.applicable_results}


def test_classify_paths_and_cycles():
    assert classify_bound(path_graph(5)).predicted_bound == 2
    assert classify_bound(cycle_graph(7)).predicted_bound == 3
    assert classify_bound(Graph(3)).predicted_bound == 1


def test_classify_girth_threshold_for_max_degree():
    # Delta = 4 needs girth >= 4 + ceil(8/2) = 8; an 8-cycle with pendant paths qualifies
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 8), (0, 9)]
    g = Graph(10, edges)
    r = classify_bound(g, planar_claim=True)
    t5 = [x for x in r.applicable_results if x.result_id == "T5"]
    assert t5 and t5[0].hypotheses["delta_params"] == [4]
    assert r.predicted_bound == 4 and r.tight
    g7 = Graph(9, [(i, (i + 1) % 7) for i in range(7)] + [(0, 7), (0, 8)])
    assert "T5" not in {x.result_id for x in classify_bound(g7, planar_claim=True).applicable_results}


def test_classify_disconnected_uses_components():
    g = Graph(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6)])
    r = classify_bound(g)
    assert r.predicted_bound == 3
    assert all("component" in x.hypotheses for x in r.applicable_results)


@pytest.mark.parametrize("g", [x for x in all_graphs(6) if x.m], ids=lambda g: f"n{g.n}m{g.m}")
def test_prediction_never_below_max_degree(g):
    r = classify_bound(g, planar_claim=True)
    assert r.predicted_bound >= g.max_degree
    if g.is_connected():
        assert r.predicted_bound == min(x.bound for x in r.applicable_results)


# ---- consistency properties --------------------------------------------------

SMALL = [g for g in connected_graphs(4) if g.m]


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_monotone_in_k(g):
    for k in range(1, 4):
        groups = groups_of_orders(k, 4)
        if is_group_k_choosable(g, k, groups, certify=False, max_instances=50000):
            bigger = [h for h in groups if h.order >= k + 1]
            assert is_group_k_choosable(g, k + 1, bigger, certify=False, max_instances=50000)


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_fail_witnesses_reverify(g):
    for k in range(1, 4):
        v = is_group_k_choosable(g, k, groups_of_orders(k, 3), certify=False, max_instances=50000)
        if not v:
            w = v.witness
            assert solve_exact(w.graph, w.fa, w.la) is None


@pytest.mark.parametrize("g", [x for x in connected_graphs(4) if x.m], ids=lambda g: f"n{g.n}m{g.m}")
def test_computed_edge_choice_respects_prediction(g):
    r = classify_bound(g, planar_claim=True)
    lg = line_graph(g).line_graph
    bound = group_choice_number_bounded(lg, 4, max_instances=10**6)
    assert not bound.exceeded
    assert g.max_degree <= bound.value <= r.predicted_bound


def test_verdict_json_shape():
    v = is_A_colorable(complete_graph(3), Z2)
    data = v.to_json()
    assert data["result"] == "fails"
    assert data["groups_checked"] == [[2]]
    assert data["witness"]["f"] == [[0], [0], [0]]
