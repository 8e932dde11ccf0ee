import itertools

import pytest

from helpers import G5, K3, P3, STAR3, TWO_K2
from threshold_influence.catalog import graphs_upto
from threshold_influence.graph import CONSTANT, Graph, GraphBuilder, MAJORITY, UNANIMITY, complete_graph
from threshold_influence.oracles import decide_influence, solve_max_closed_exact, solve_max_open_exact
from threshold_influence.propagation import closed_mask, propagate, sigma_open
from threshold_influence.reductions import (
    add_directed_edge_gadget,
    add_ell_edge,
    basic_reduction,
    clique_reduction,
    constant_threshold_instance,
    constant_vertex_count,
    dks_reduction,
    generate,
    majority_hardness_instance,
    majority_vertex_count,
    verify_reduction,
)


def _active(out, seeds):
    inst = out.instance
    mask = closed_mask(inst.graph.masks, inst.thresholds.values, sum(1 << v for v in seeds))
    return {v for v in range(inst.n) if (mask >> v) & 1}


# -- basic ---------------------------------------------------------------------


def test_basic_shape_on_g5():
    out = basic_reduction(G5, 2)
    g = out.instance.graph
    # one top-bottom pair per vertex plus two crossing edges per source edge
    assert (g.n, g.m) == (10, 5 + 2 * 6)
    assert out.provenance[:2] == ["top(0)", "top(1)"] and out.provenance[5] == "bottom(0)"
    assert out.instance.thresholds.values[:5] == tuple(G5.degree(v) + 1 for v in range(5))
    assert out.instance.thresholds.values[5:] == (1,) * 5


def test_basic_forward_of_dominating_set_activates_all_in_two_rounds():
    out = basic_reduction(G5, 2)
    tr = propagate(out.instance.graph, out.instance.thresholds, out.forward_map([1, 3]))
    assert len(tr.final_closed) == 10
    assert len(tr.rounds) == 2


def test_basic_single_vertex():
    out = basic_reduction(Graph(1))
    assert out.instance.graph.edges == ((0, 1),)
    assert out.instance.thresholds.values == (1, 1)
    assert _active(out, [0]) == {0, 1}


def test_basic_no_dominating_vertex_means_no_full_activation():
    out = basic_reduction(G5, 1)
    res = solve_max_closed_exact(out.instance)
    assert res.closed_value < 10


def test_forward_map_rejects_out_of_range():
    with pytest.raises(ValueError):
        basic_reduction(G5).forward_map([7])


# -- gadgets --------------------------------------------------------------------


def _fragment(builder_fn):
    b = GraphBuilder()
    u = b.add_vertex("u", threshold=99)
    v = b.add_vertex("v", threshold=99)
    ids = builder_fn(b, u, v)
    return b.freeze(), [t for t in b.thresholds()], u, v, ids


def test_ell_edge_sizes():
    g, thr, u, v, ids = _fragment(lambda b, u, v: add_ell_edge(b, u, v, 1))
    assert len(ids) == 1 and g.degree(ids[0]) == 2
    g, thr, u, v, ids = _fragment(lambda b, u, v: add_ell_edge(b, u, v, 3))
    assert len(ids) == 3 and all(thr[w] == 1 for w in ids)
    tr = propagate(g, thr, [u])
    assert tr.rounds[0] == frozenset(ids)
    with pytest.raises(ValueError):
        add_ell_edge(GraphBuilder(), 0, 1, 0)


def test_directed_edge_gadget_direction():
    g, thr, u, v, (a, b, c, d) = _fragment(add_directed_edge_gadget)
    assert (thr[a], thr[b], thr[c], thr[d]) == (1, 1, 2, 1)
    assert g.n == 6
    tr = propagate(g, thr, [u])
    assert tr.rounds == (frozenset({a}), frozenset({b, d}), frozenset({c}))
    # c then counts towards v, which here has an unreachable threshold
    assert g.has_edge(c, v)
    assert propagate(g, thr, [v]).rounds == ()
    assert propagate(g, thr, []).rounds == ()


# -- majority -------------------------------------------------------------------


@pytest.mark.parametrize("L", [1, 2, 3])
def test_majority_yes_side(L):
    out = majority_hardness_instance(G5, 2, L)
    assert out.instance.thresholds.scheme == MAJORITY
    assert out.instance.k == 3
    act = _active(out, out.forward_map([1, 3]))
    grid = out.vertices_labelled("grid(")
    pend = out.vertices_labelled("pending(grid(")
    assert len(grid) == 5 * L and len(pend) == 25
    assert set(grid) | set(pend) <= act


def test_majority_no_side_on_two_disjoint_edges():
    out = majority_hardness_instance(TWO_K2, 1, 1)
    w = out.params["hub"]
    first_row = out.vertices_labelled("grid(")
    for other in range(out.instance.n):
        if other != w:
            assert not (_active(out, [w, other]) - {w, other}) & set(first_row)


def test_majority_vertex_tally():
    for g in graphs_upto(5, connected=True):
        if g.n < 2:
            continue
        for k, L in ((1, 1), (2, 3)):
            out = majority_hardness_instance(g, k, L)
            assert out.instance.n == majority_vertex_count(g.n, g.m, k, L) == out.params["vertex_count"]
            assert len(out.provenance) == out.instance.n


def test_majority_rejects_isolated_vertices():
    with pytest.raises(ValueError):
        majority_hardness_instance(Graph(3, [(0, 1)]), 1, 1)


# -- thresholds at most two --------------------------------------------------------


def test_constant_yes_side_on_path():
    out = constant_threshold_instance(P3, 1, 2, 3)
    act = _active(out, out.forward_map([1]))
    termini = [v for v, lab in enumerate(out.provenance) if lab.startswith("path(2,")]
    pend = out.vertices_labelled("pending(path(")
    assert len(termini) == 2 and len(pend) == 6
    assert set(termini) | set(pend) <= act


def test_constant_no_single_top_reaches_a_pendant():
    out = constant_threshold_instance(TWO_K2, 1, 1, 1)
    pend = set(out.vertices_labelled("pending("))
    for top in out.vertices_labelled("top("):
        assert not _active(out, [top]) & pend
    # seeding the path end itself does reach its pendant, so the claim is about tops
    terminus = out.vertices_labelled("path(3,")[0]
    assert _active(out, [terminus]) & pend


def test_constant_thresholds_bounded_and_tally():
    for g in graphs_upto(5):
        if g.n < 2:
            continue
        out = constant_threshold_instance(g, 1, 1, 1)
        assert out.instance.thresholds.scheme == CONSTANT
        assert max(out.instance.thresholds.values) <= 2
        assert out.instance.n == constant_vertex_count(g.n, g.m, 1, 1)


# -- clique ------------------------------------------------------------------------


def test_clique_path_k2():
    out = clique_reduction(P3, 2)
    assert out.instance.n == 9 and out.instance.ell == 3
    seeds = out.forward_map([0, 1])
    assert len(_active(out, seeds) - set(seeds)) == 3
    assert decide_influence(out.instance).answer


def test_clique_triangle_k3():
    out = clique_reduction(K3, 3)
    assert out.instance.ell == 12
    seeds = out.forward_map([0, 1, 2])
    assert len(_active(out, seeds) - set(seeds)) == 12


def test_clique_path_k3_is_no():
    out = clique_reduction(P3, 3)
    assert solve_max_open_exact(out.instance).open_value == 8
    assert not decide_influence(out.instance).answer


def test_clique_drops_isolated_sources():
    out = clique_reduction(Graph(3, [(0, 1)]), 2)
    assert [lab for lab in out.provenance if lab.startswith("copy")] == ["copy(0)", "copy(1)"]


def test_clique_equivalence_k4_samples():
    for g in (complete_graph(4), complete_graph(5), Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)])):
        rep = verify_reduction("clique", g, 4)
        assert rep.agree


# -- densest-k ---------------------------------------------------------------------


@pytest.mark.parametrize("g, k, value", [(K3, 2, 1), (Graph(4), 2, 0), (Graph(4), 1, 0), (STAR3, 2, 1)])
def test_dks_examples(g, k, value):
    out = dks_reduction(g, k)
    assert solve_max_open_exact(out.instance).open_value == value
    rep = verify_reduction("dks", g, k)
    assert rep.agree and rep.source_answer == value


def test_dks_pads_when_budget_covers_all_vertices():
    out = dks_reduction(K3, 3)
    assert out.params["padding"] == 1
    assert out.vertices_labelled("padding(") == [3]
    # seeding all three copies activates the edge-vertices but no guard
    seeds = out.forward_map([0, 1, 2])
    act = _active(out, seeds) - set(seeds)
    assert act == set(out.vertices_labelled("edge-vertex("))
    assert verify_reduction("dks", K3, 3).agree
    assert verify_reduction("dks", K3, 0).agree


def test_dks_exhaustive_including_large_budgets():
    for g in graphs_upto(4):
        for k in range(0, g.n + 2):
            rep = verify_reduction("dks", g, k)
            assert rep.agree, (g.edges, k, rep.record())


# -- harness ----------------------------------------------------------------------


def test_verify_examples():
    assert verify_reduction("basic", G5, 2).record()["agree"] is True
    rep = verify_reduction("clique", P3, 3)
    assert rep.agree and rep.source_answer == rep.target_answer == 0


def test_fault_injection_is_flagged():
    rep = verify_reduction("basic", G5, 2, fault=(0, 3))
    assert rep.agree is False
    assert rep.params["fault"] == "bottom(0)=3"
    # threshold 2 is not enough to break G5 at k=2: tops 1 and 2 both see bottom(0)
    assert verify_reduction("basic", G5, 2, fault=(0, 2)).agree


def test_fault_only_for_basic():
    with pytest.raises(ValueError):
        verify_reduction("clique", P3, 2, fault=(0, 2))


def test_cap_is_reported_not_raised():
    rep = verify_reduction("basic", G5, 2, cap=10)
    assert not rep.complete and rep.agree is None
    assert rep.target_error is not None


def test_generate_dispatch():
    assert generate("dks", K3, 1).kind == "dks"
    with pytest.raises(ValueError):
        generate("nope", K3, 1)


def test_provenance_text_one_line_per_vertex():
    out = clique_reduction(P3, 2)
    lines = out.provenance_text().splitlines()
    assert lines[0] == "0 copy(0)" and lines[3] == "3 edge-vertex(0,1,1)"
    assert len(lines) == out.instance.n
