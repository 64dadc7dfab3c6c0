import pytest

from tuhyper import core, quasi
from tuhyper.core import Hypergraph, SubSelection
from tuhyper.errors import InputError, InternalConsistencyError, PreconditionError
from tuhyper.detect import find_odd_cycle
from tuhyper.gen import GenConfig, Xoshiro256StarStar, generate
from tuhyper.quasi import QuasiEmbedding, add_edge, conflicts, inclusion, is_partial, restrict, verify_quasi, walk_parity_closed


def _five_cycle_into_host():
    # a 5-cycle mapped into a host whose long edge absorbs one cycle edge;
    # the host edge keeps an extra cycle vertex, so it is a conflict
    host = Hypergraph.from_names(
        ["u0", "u1", "u2", "u3", "u4"],
        [["u1", "u2"], ["u0", "u1"], ["u0", "u4"], ["u3", "u4"], ["u0", "u2", "u3"]])
    sub = Hypergraph.from_names(
        ["u0", "u1", "u2", "u3", "u4"],
        [["u1", "u2"], ["u0", "u1"], ["u0", "u4"], ["u3", "u4"], ["u2", "u3"]])
    return QuasiEmbedding(host, sub, (0, 1, 2, 3, 4))


def _six_cycle_into_host():
    # a 6-cycle whose opposite edges both map to one size-4 host edge
    host = Hypergraph.from_names(
        ["v0", "v1", "v2", "v3", "v4", "v5"],
        [["v0", "v1"], ["v1", "v2"], ["v3", "v4"], ["v4", "v5"],
         ["v0", "v2", "v3", "v5"]])
    sub = Hypergraph.from_names(
        ["v0", "v1", "v2", "v3", "v4", "v5"],
        [["v0", "v1"], ["v1", "v2"], ["v2", "v3"], ["v3", "v4"],
         ["v4", "v5"], ["v0", "v5"]])
    return QuasiEmbedding(host, sub, (0, 1, 4, 2, 3, 4))


def test_five_cycle_embedding_is_quasi():
    assert verify_quasi(_five_cycle_into_host())


def test_six_cycle_embedding_is_quasi():
    assert verify_quasi(_six_cycle_into_host())


def test_overlapping_preimages_violate_q2():
    host = Hypergraph.from_names("abc", [["a", "b", "c"]])
    sub = Hypergraph.from_names("abc", [["a", "b"], ["b", "c"]])
    assert not verify_quasi(QuasiEmbedding(host, sub, (0, 0)))


def test_vertex_removal_edge_is_a_conflict():
    q = _five_cycle_into_host()
    rep = conflicts(q)
    assert rep.conflicts == (4,)
    assert rep.witnesses == (4,)  # the {u2,u3} sub edge
    assert not is_partial(q)


def test_split_edge_is_a_conflict_too():
    # every preimage misses part of the host edge's trace, so splitting a
    # hyperedge into a matching is a conflict as well: were it conflict-free,
    # the embedding would be a partial subhypergraph, but the edge map here
    # is not even injective
    q = _six_cycle_into_host()
    rep = conflicts(q)
    assert rep.conflicts == (4,)
    assert not is_partial(q)


def test_inclusion_embeddings_are_partial():
    g = core.fixture("fig2")
    q = inclusion(g, SubSelection((0, 1, 2), (0, 2, 3)))
    assert verify_quasi(q)
    assert conflicts(q).conflicts == ()
    assert is_partial(q)


def test_dangling_references_rejected():
    host = Hypergraph.from_names("ab", [["a", "b"]])
    sub = Hypergraph.from_names(["a", "z"], [["a", "z"]])
    with pytest.raises(InputError):
        QuasiEmbedding(host, sub, (0,))
    sub2 = Hypergraph.from_names("ab", [["a", "b"]])
    with pytest.raises(InputError):
        QuasiEmbedding(host, sub2, (5,))


def test_restrict_full_selection_is_identity():
    q = _five_cycle_into_host()
    r = restrict(q, SubSelection(tuple(range(5)), tuple(range(5))))
    assert r.sub == q.sub and r.phi == q.phi


def test_restrict_never_grows_conflicts():
    rng = Xoshiro256StarStar(21)
    q = _five_cycle_into_host()
    base = set(conflicts(q).conflicts)
    for _ in range(50):
        us = tuple(sorted(rng.sample(range(5), 1 + rng.randrange(5))))
        fs = tuple(sorted(rng.sample(range(5), 1 + rng.randrange(5))))
        sel = SubSelection(us, fs)
        assert set(conflicts(restrict(q, sel)).conflicts) <= base


def test_restrict_avoiding_conflict_preimages_is_partial():
    q = _five_cycle_into_host()
    # drop the edge mapped into the conflict; what remains is partial
    r = restrict(q, SubSelection(tuple(range(5)), (0, 1, 2, 3)))
    assert is_partial(r)


def test_add_edge_preconditions():
    host = core.fixture("fig1")
    q = inclusion(host, SubSelection((0, 1), (0,)))
    with pytest.raises(PreconditionError):
        add_edge(q, 0)  # already in the image
    host2 = Hypergraph.from_names("abcd", [["a", "b"], ["c", "d"]])
    q2 = inclusion(host2, SubSelection((0, 1), (0,)))
    with pytest.raises(PreconditionError):
        add_edge(q2, 1)  # misses the sub entirely


def test_add_edge_closes_a_path_into_a_cycle():
    c4 = core.fixture("c4")
    path = inclusion(c4, SubSelection((0, 1, 2, 3), (0, 1, 2)))
    closed = add_edge(path, 3)
    assert is_partial(closed)
    assert closed.sub.n_edges == 4
    assert closed.phi == (0, 1, 2, 3)


def test_add_edge_preserves_conflicts_random():
    for trial in range(120):
        g, _ = generate(GenConfig(seed=600 + trial, n_vertices=4 + trial % 4,
                                  n_small_edges=2 + trial % 4,
                                  proper_edge_sizes=((3,), (4,))[trial % 2],
                                  disjoint=False))
        rng = Xoshiro256StarStar(trial)
        us = tuple(sorted(rng.sample(range(g.n_vertices),
                                     2 + rng.randrange(g.n_vertices - 1))))
        fs = tuple(sorted(rng.sample(range(g.n_edges),
                                     1 + rng.randrange(g.n_edges))))
        q = inclusion(g, SubSelection(us, fs))
        fresh = [e for e in range(g.n_edges)
                 if e not in q.phi and set(g.edges[e]) & set(us)]
        if not fresh:
            continue
        before = conflicts(q).conflicts
        assert conflicts(add_edge(q, fresh[0])).conflicts == before


def test_walk_parity_on_even_cycle_host():
    c4 = core.fixture("c4")
    path = inclusion(c4, SubSelection((0, 1, 2, 3), (0, 1, 2)))
    assert walk_parity_closed(path, 3) == 1


def test_walk_parity_two_disjoint_walks():
    # two paths closed by two host edges into one even closed walk
    host = Hypergraph.from_names(
        "abcdef",
        [["a", "b"], ["b", "c"], ["d", "e"], ["e", "f"], ["a", "d"], ["c", "f"]])
    both = inclusion(host, SubSelection(tuple(range(6)), (0, 1, 2, 3)))
    assert walk_parity_closed(both, 4, 5) == 0


def test_walk_parity_rejects_odd_cycle_host():
    host = Hypergraph.from_names(
        "abc", [["a", "b"], ["b", "c"], ["a", "c"]])
    path = inclusion(host, SubSelection((0, 1, 2), (0, 1)))
    with pytest.raises(PreconditionError):
        walk_parity_closed(path, 2)


def test_walk_parity_flags_violation_when_check_is_skipped():
    # force the closed-walk argument onto a host that does contain an odd
    # cycle: the parity mismatch must surface as an internal-consistency error
    host = Hypergraph.from_names(
        "abc", [["a", "b"], ["b", "c"], ["a", "c"]])
    path = inclusion(host, SubSelection((0, 1, 2), (0, 1)))
    with pytest.raises(InternalConsistencyError):
        walk_parity_closed(path, 2, host_odd_cycle_checked=True)


def test_walk_parity_rejects_bad_closing_edge():
    c4 = core.fixture("c4")
    path = inclusion(c4, SubSelection((0, 1, 2, 3), (0, 1, 2)))
    with pytest.raises(PreconditionError):
        walk_parity_closed(path, 1)  # already on the walk


def _simple_paths(g, start):
    # all simple paths from start, as (vertex tuple, edge tuple)
    out = []
    stack = [((start,), ())]
    while stack:
        vs, es = stack.pop()
        if len(vs) > 1:
            out.append((vs, es))
        for eid, edge in enumerate(g.edges):
            if len(edge) != 2 or eid in es or vs[-1] not in edge:
                continue
            nxt = edge[0] if edge[1] == vs[-1] else edge[1]
            if nxt in vs:
                continue
            stack.append((vs + (nxt,), es + (eid,)))
    return out


def test_closed_walk_parity_exhaustive_on_odd_cycle_free_hosts():
    checked = 0
    for trial in range(200):
        g, _ = generate(GenConfig(seed=800 + trial, n_vertices=4 + trial % 4,
                                  n_small_edges=3 + trial % 4,
                                  proper_edge_sizes=((), (4,))[trial % 2]))
        if find_odd_cycle(g) is not None:
            continue
        for start in range(g.n_vertices):
            for vs, es in _simple_paths(g, start):
                sel = SubSelection(tuple(sorted(vs)), tuple(sorted(es)))
                q = inclusion(g, sel)
                ends = {vs[0], vs[-1]}
                for eid, edge in enumerate(g.edges):
                    if eid in es:
                        continue
                    if set(edge) & set(vs) == ends:
                        assert walk_parity_closed(q, eid,
                                                  host_odd_cycle_checked=True) == 1
                        checked += 1
    assert checked > 50


def test_embedding_json_round_trip():
    q = _five_cycle_into_host()
    doc = quasi.embedding_to_dict(q)
    back = quasi.embedding_from_dict(q.host, doc)
    assert back.sub == q.sub and back.phi == q.phi
