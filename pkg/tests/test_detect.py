import pytest

from tuhyper import core, linalg
from tuhyper.core import Hypergraph, MixedHypergraph
from tuhyper.detect import (
    MixedOddCycleWitness,
    OddCycleWitness,
    OddTreeHouseWitness,
    compute_ocp,
    decide_unimodular_disjoint,
    decide_unimodular_mixed_disjoint,
    find_mixed_odd_cycle,
    find_mixed_odd_tree_house,
    find_odd_cycle,
    find_odd_tree_house,
    shortest_odd_cycles,
    verify_witness,
    witness_from_dict,
    witness_to_dict,
)
from tuhyper.errors import BudgetExceededError, InputError, NotDisjointError
from tuhyper.gen import GenConfig, Plant, generate

from _oracles import has_odd_cycle_exhaustive, ocp_exhaustive


def test_find_odd_cycle_triangle():
    w = find_odd_cycle(core.fixture("c3"))
    assert isinstance(w, OddCycleWitness) and len(w.vertices) == 3


def test_fig1_has_no_odd_cycle():
    # the length-3 cycle through the root is not a partial subhypergraph:
    # the root stays inside the size-4 edge that would form the third side
    assert find_odd_cycle(core.fixture("fig1")) is None


def test_fig2_has_neither_structure():
    g = core.fixture("fig2")
    assert find_odd_cycle(g) is None
    assert find_odd_tree_house(g) is None


def test_fig1_tree_house_found():
    w = find_odd_tree_house(core.fixture("fig1"))
    assert isinstance(w, OddTreeHouseWitness)
    assert w.hyperedge_id == 3
    assert all(len(p) == 2 for p in w.paths)


def test_planted_tree_house_found_and_verified():
    g, planted = generate(GenConfig(seed=42, n_vertices=10, n_small_edges=3,
                                    proper_edge_sizes=(),
                                    plant=Plant("odd-tree-house",
                                                path_lengths=(1, 1, 3))))
    assert verify_witness(g, planted)
    found = find_odd_tree_house(g)
    assert found is not None and verify_witness(g, found)


def test_find_odd_cycle_matches_exhaustive_oracle():
    agree = 0
    for seed in range(150):
        try:
            g, _ = generate(GenConfig(seed=9000 + seed, n_vertices=3 + seed % 4,
                                      n_small_edges=seed % 6,
                                      proper_edge_sizes=((), (3,), (4,))[seed % 3],
                                      disjoint=False))
        except InputError:
            continue
        assert (find_odd_cycle(g) is not None) == has_odd_cycle_exhaustive(g)
        agree += 1
    assert agree > 80


def test_verify_witness_rejects_corrupted_certificates():
    g = core.fixture("fig1")
    w = find_odd_tree_house(g)
    assert verify_witness(g, w)
    bad = OddTreeHouseWitness(w.root, w.leaves, w.paths,
                              ((3,),) + w.path_edge_ids[1:], w.hyperedge_id)
    assert not verify_witness(g, bad)
    c3 = core.fixture("c3")
    wc = find_odd_cycle(c3)
    assert not verify_witness(c3, OddCycleWitness(wc.vertices, (0, 1, 1)))
    assert not verify_witness(c3, OddCycleWitness((0, 1), wc.edge_ids[:2]))


def test_decide_examples():
    d1 = decide_unimodular_disjoint(core.fixture("fig1"))
    assert not d1.tu and isinstance(d1.witness, OddTreeHouseWitness)
    assert decide_unimodular_disjoint(core.fixture("c4")).tu
    with pytest.raises(NotDisjointError) as err:
        decide_unimodular_disjoint(core.fixture("fig2"))
    assert err.value.edge_a == 0 and err.value.edge_b == 1


def test_decide_mixed_examples():
    d = decide_unimodular_mixed_disjoint(core.fixture("fig5"))
    assert not d.tu
    assert decide_unimodular_mixed_disjoint(core.fixture("dir4")).tu
    d4 = decide_unimodular_mixed_disjoint(core.fixture("fig4-left"))
    assert not d4.tu and isinstance(d4.witness, MixedOddCycleWitness)
    assert abs(linalg.det_exact(core.incidence_matrix(core.fixture("fig4-left")))) == 2


def test_mixed_odd_cycle_of_length_two():
    d = MixedHypergraph.from_names(
        "uv", [(("u", "v"), ()), (("u",), ("v",))])
    w = find_mixed_odd_cycle(d)
    assert w is not None and len(w.vertices) == 2
    assert not linalg.is_tu_bruteforce(core.incidence_matrix(d))


def test_mixed_searches_respect_parity_targets():
    # a mixed tree house whose proper arc has mixed signs: path parities must
    # match the sign pattern, not simply be odd
    g, planted = generate(GenConfig(seed=7, n_vertices=9, n_small_edges=0,
                                    proper_edge_sizes=(), mixed=True,
                                    plant=Plant("mixed-odd-tree-house",
                                                path_lengths=(1, 2, 3))))
    assert verify_witness(g, planted)
    found = find_mixed_odd_tree_house(g)
    assert found is not None and verify_witness(g, found)


def test_shortest_odd_cycles_enumerates_all_minimum_length():
    g = Hypergraph.from_names(
        "abcde",
        [["a", "b"], ["b", "c"], ["a", "c"], ["c", "d"], ["d", "e"], ["c", "e"]])
    found = shortest_odd_cycles(g)
    assert len(found) == 2
    assert all(len(w.vertices) == 3 for w in found)


def test_budget_exhaustion_is_an_error():
    g, _ = generate(GenConfig(seed=3, n_vertices=9, n_small_edges=12,
                              proper_edge_sizes=(4,)))
    with pytest.raises(BudgetExceededError):
        find_odd_cycle(g, max_nodes=5)


def test_witness_json_round_trip():
    g = core.fixture("fig1")
    w = find_odd_tree_house(g)
    doc = witness_to_dict(g, w)
    assert witness_from_dict(g, doc) == w
    d = core.fixture("fig4-left")
    wm = find_mixed_odd_cycle(d)
    assert witness_from_dict(d, witness_to_dict(d, wm)) == wm


def test_witness_supports_are_two_mod_four():
    # necessity: forbidden structures are Eulerian with support 2 mod 4, and
    # their square incidence matrices have determinant +-2
    g = core.fixture("fig1")
    w = find_odd_tree_house(g)
    ids = [w.hyperedge_id] + [e for ids in w.path_edge_ids for e in ids]
    verts = sorted({v for p in w.paths for v in p})
    ind = core.induce(g, core.SubSelection(tuple(verts), tuple(sorted(ids))))
    m = core.incidence_matrix(ind.sub)
    assert core.support_size(m) % 4 == 2
    assert abs(linalg.det_exact(m)) == 2
    c3 = core.fixture("c3")
    assert abs(linalg.det_exact(core.incidence_matrix(c3))) == 2


def test_ocp_examples():
    assert compute_ocp(core.fixture("c3")) == 1
    two = Hypergraph.from_names(
        "abcdef",
        [["a", "b"], ["b", "c"], ["a", "c"], ["d", "e"], ["e", "f"], ["d", "f"]])
    assert compute_ocp(two) == 2
    assert compute_ocp(core.fixture("c4")) == 0
    with pytest.raises(InputError):
        compute_ocp(core.fixture("fig1"))


def test_ocp_matches_exhaustive_oracle():
    for seed in range(120):
        g, _ = generate(GenConfig(seed=500 + seed, n_vertices=4 + seed % 5,
                                  n_small_edges=2 + (seed * 3) % 9,
                                  proper_edge_sizes=()))
        simple = sorted({e for e in g.edges})
        gg = Hypergraph(g.names, tuple(simple))
        assert compute_ocp(gg) == ocp_exhaustive(list(gg.edges), gg.n_vertices)


def test_size_three_hypergraphs_tu_iff_no_odd_cycle():
    # for hyperedge sizes <= 3, unimodular iff no odd cycle
    count = 0
    for seed in range(250):
        try:
            g, _ = generate(GenConfig(seed=2000 + seed, n_vertices=3 + seed % 5,
                                      n_small_edges=seed % 6,
                                      proper_edge_sizes=((), (3,), (3, 3))[seed % 3],
                                      disjoint=False))
        except InputError:
            continue
        if g.n_vertices + g.n_edges > 15:
            continue
        tu = linalg.is_tu_bruteforce(core.incidence_matrix(g))
        assert tu == (find_odd_cycle(g) is None)
        count += 1
    assert count > 100
