"""Forbidden-structure detection: odd cycles and odd tree houses as partial
subhypergraphs, their mixed analogues, and the resulting unimodularity
decisions for disjoint instances.

The searches are complete backtracking over vertex sequences and host edges.
The defining subtlety is that an edge used by a witness must meet the
witness's *entire* vertex set in exactly the two vertices it connects; this
is enforced incrementally (every new vertex is checked against all committed
edges), so no incomplete shortcut is taken.  Every returned witness passes
`verify_witness`, a separate straight-line checker that shares no state with
the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Hypergraph, MixedHypergraph, overlapping_proper_edges
from .errors import (
    BudgetExceededError,
    InputError,
    InternalConsistencyError,
    NotDisjointError,
    SizeGuardError,
)

__all__ = [
    "OddCycleWitness",
    "OddTreeHouseWitness",
    "MixedOddCycleWitness",
    "MixedOddTreeHouseWitness",
    "Decision",
    "verify_witness",
    "witness_to_dict",
    "witness_from_dict",
    "find_odd_cycle",
    "find_odd_tree_house",
    "find_mixed_odd_cycle",
    "find_mixed_odd_tree_house",
    "shortest_odd_cycles",
    "decide_unimodular_disjoint",
    "decide_unimodular_mixed_disjoint",
    "compute_ocp",
    "DEFAULT_SEARCH_BUDGET",
]

DEFAULT_SEARCH_BUDGET = 5_000_000


@dataclass(frozen=True)
class OddCycleWitness:
    """Cycle v0,e0,v1,...,e_{k-1},v0 of odd length inside the host."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    kind = "odd-cycle"


@dataclass(frozen=True)
class OddTreeHouseWitness:
    """A size-4 edge trace {r,l1,l2,l3} plus three odd r-li-paths."""

    root: int
    leaves: tuple[int, int, int]
    paths: tuple[tuple[int, ...], ...]
    path_edge_ids: tuple[tuple[int, ...], ...]
    hyperedge_id: int

    kind = "odd-tree-house"


@dataclass(frozen=True)
class MixedOddCycleWitness:
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    kind = "mixed-odd-cycle"


@dataclass(frozen=True)
class MixedOddTreeHouseWitness:
    root: int
    leaves: tuple[int, int, int]
    paths: tuple[tuple[int, ...], ...]
    path_edge_ids: tuple[tuple[int, ...], ...]
    hyperedge_id: int

    kind = "mixed-odd-tree-house"


@dataclass(frozen=True)
class Decision:
    tu: bool
    witness: object | None = None


# ---------------------------------------------------------------------------
# Edge systems: one search core for unsigned and mixed hosts
# ---------------------------------------------------------------------------


class _System:
    """Host edges as (support, head) bitmasks; unsigned hosts are all-head."""

    __slots__ = ("n", "support", "head")

    def __init__(self, host):
        if isinstance(host, Hypergraph):
            self.n = host.n_vertices
            self.support = list(host.edge_masks)
            self.head = list(host.edge_masks)
        elif isinstance(host, MixedHypergraph):
            self.n = host.n_vertices
            self.support = list(host.support_masks)
            self.head = list(host.head_masks)
        else:
            raise InputError(f"expected a hypergraph, got {type(host).__name__}")

    def pair_parity(self, eid: int, a: int, b: int) -> int:
        """Parity of edge eid restricted to {a, b}: 1 iff both sides agree."""
        ha = (self.head[eid] >> a) & 1
        hb = (self.head[eid] >> b) & 1
        return 1 if ha == hb else 0


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceededError(
                "search budget exhausted; raise max_nodes to continue the exact search"
            )


def _bits_of(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _cycles_of_length(sys: _System, k: int, budget: _Budget):
    """All cycles of exactly k edges, canonically anchored, with parity.

    Yields (vertices, edge_ids, parity).  The anchor is the least cycle
    vertex; for k > 2 direction is fixed by second < last vertex, for k == 2
    by ascending edge ids.
    """
    m = len(sys.support)
    for anchor in range(sys.n):
        abit = 1 << anchor

        def grow(vs, ids, umask, forbid, par):
            budget.spend()
            c = vs[-1]
            cbit = 1 << c
            if len(vs) == k:
                for eid in range(m):
                    if eid in ids:
                        continue
                    if sys.support[eid] & umask != cbit | abit:
                        continue
                    if k == 2 and eid < ids[0]:
                        continue
                    if k > 2 and vs[1] > vs[-1]:
                        continue
                    yield vs, ids + [eid], par + sys.pair_parity(eid, c, anchor)
                return
            for eid in range(m):
                if eid in ids:
                    continue
                if sys.support[eid] & umask != cbit:
                    continue
                avail = sys.support[eid] & ~umask & ~forbid
                for u in _bits_of(avail):
                    if u <= anchor:
                        continue
                    yield from grow(vs + [u], ids + [eid], umask | (1 << u),
                                    forbid | sys.support[eid],
                                    par + sys.pair_parity(eid, c, u))

        yield from grow([anchor], [], abit, 0, 0)


def _find_cycle(host, *, odd_parity: bool, lengths, budget_nodes: int):
    sys = _System(host)
    budget = _Budget(budget_nodes)
    for k in lengths:
        for vs, ids, par in _cycles_of_length(sys, k, budget):
            if (par % 2 == 1) == odd_parity:
                return tuple(vs), tuple(ids)
    return None


def find_odd_cycle(g: Hypergraph, max_nodes: int = DEFAULT_SEARCH_BUDGET):
    """Shortest odd cycle in g as a partial subhypergraph, or None.

    Complete backtracking; exceeding the node budget raises, it never
    silently reports absence.
    """
    hit = _find_cycle(g, odd_parity=True, lengths=range(3, g.n_vertices + 1, 2),
                      budget_nodes=max_nodes)
    if hit is None:
        return None
    w = OddCycleWitness(*hit)
    if not verify_witness(g, w):
        raise InternalConsistencyError("odd-cycle-search", "search emitted an invalid witness")
    return w


def find_mixed_odd_cycle(d: MixedHypergraph, max_nodes: int = DEFAULT_SEARCH_BUDGET):
    """Shortest mixed odd cycle in d, or None; length-2 cycles are legal."""
    hit = _find_cycle(d, odd_parity=True, lengths=range(2, d.n_vertices + 1),
                      budget_nodes=max_nodes)
    if hit is None:
        return None
    w = MixedOddCycleWitness(*hit)
    if not verify_witness(d, w):
        raise InternalConsistencyError("mixed-odd-cycle-search", "search emitted an invalid witness")
    return w


def shortest_odd_cycles(g: Hypergraph, max_nodes: int = DEFAULT_SEARCH_BUDGET):
    """All odd cycles of minimum length, in search order (empty if none)."""
    sys = _System(g)
    budget = _Budget(max_nodes)
    for k in range(3, g.n_vertices + 1, 2):
        found = [
            OddCycleWitness(tuple(vs), tuple(ids))
            for vs, ids, par in _cycles_of_length(sys, k, budget)
            if par % 2 == 1
        ]
        if found:
            return found
    return []


def _tree_house_search(sys: _System, budget: _Budget):
    """First (root, leaves, paths, path_edge_ids, h_id) tree house, or None.

    Path i must close with parity equal to the parity of h restricted to
    {root, leaf_i}, so that each path-plus-h cycle is even.  For an all-head
    host this forces every path odd.
    """
    m = len(sys.support)
    for hid in range(m):
        hsup = sys.support[hid]
        content = list(_bits_of(hsup))
        if len(content) < 4:
            continue
        for quad in itertools.combinations(content, 4):
            qmask = 0
            for v in quad:
                qmask |= 1 << v
            for root in quad:
                leaves = tuple(v for v in quad if v != root)
                targets = tuple(sys.pair_parity(hid, root, leaf) for leaf in leaves)
                hit = _grow_paths(sys, budget, hid, hsup, root, leaves, targets,
                                  qmask, hsup, [], [])
                if hit is not None:
                    return (root, leaves, hit[0], hit[1], hid)
    return None


def _grow_paths(sys, budget, hid, hsup, root, leaves, targets, vt, forbid,
                done_paths, done_ids):
    i = len(done_paths)
    if i == 3:
        return tuple(done_paths), tuple(done_ids)
    leaf = leaves[i]
    lbit = 1 << leaf
    m = len(sys.support)

    def grow(path, ids, vt, forbid, par):
        budget.spend()
        c = path[-1]
        cbit = 1 << c
        for eid in range(m):
            if eid == hid or eid in ids or eid in done_used:
                continue
            trace = sys.support[eid] & vt
            if trace == cbit | lbit and c != leaf:
                if (par + sys.pair_parity(eid, c, leaf)) % 2 == targets[i] % 2:
                    hit = _grow_paths(sys, budget, hid, hsup, root, leaves, targets,
                                      vt, forbid | sys.support[eid],
                                      done_paths + [tuple(path + [leaf])],
                                      done_ids + [tuple(ids + [eid])])
                    if hit is not None:
                        return hit
            if trace != cbit:
                continue
            avail = sys.support[eid] & ~vt & ~forbid
            for u in _bits_of(avail):
                hit = grow(path + [u], ids + [eid], vt | (1 << u),
                           forbid | sys.support[eid], par + sys.pair_parity(eid, c, u))
                if hit is not None:
                    return hit
        return None

    done_used = {e for ids in done_ids for e in ids}
    return grow([root], [], vt, forbid, 0)


def find_odd_tree_house(g: Hypergraph, max_nodes: int = DEFAULT_SEARCH_BUDGET):
    """First odd tree house in g as a partial subhypergraph, or None."""
    hit = _tree_house_search(_System(g), _Budget(max_nodes))
    if hit is None:
        return None
    w = OddTreeHouseWitness(*hit)
    if not verify_witness(g, w):
        raise InternalConsistencyError("tree-house-search", "search emitted an invalid witness")
    return w


def find_mixed_odd_tree_house(d: MixedHypergraph, max_nodes: int = DEFAULT_SEARCH_BUDGET):
    """First mixed odd tree house in d as a partial subhypergraph, or None."""
    hit = _tree_house_search(_System(d), _Budget(max_nodes))
    if hit is None:
        return None
    w = MixedOddTreeHouseWitness(*hit)
    if not verify_witness(d, w):
        raise InternalConsistencyError("mixed-tree-house-search", "search emitted an invalid witness")
    return w


# ---------------------------------------------------------------------------
# Certificate checking (independent of the searches)
# ---------------------------------------------------------------------------


def _edge_support(host, eid: int) -> frozenset[int]:
    if isinstance(host, Hypergraph):
        return frozenset(host.edges[eid])
    return frozenset(host.support(eid))


def _restricted_parity(host: MixedHypergraph, eid: int, a: int, b: int) -> int:
    heads, _ = host.arcs[eid]
    return 1 if ((a in heads) == (b in heads)) else 0


def _check_cycle(host, vertices, edge_ids) -> bool:
    k = len(vertices)
    if k < 2 or len(edge_ids) != k:
        return False
    if len(set(vertices)) != k or len(set(edge_ids)) != k:
        return False
    if not all(0 <= e < (host.n_edges if isinstance(host, Hypergraph) else host.n_arcs)
               for e in edge_ids):
        return False
    vset = frozenset(vertices)
    for i in range(k):
        pair = {vertices[i], vertices[(i + 1) % k]}
        if _edge_support(host, edge_ids[i]) & vset != pair:
            return False
    return True


def _check_tree_house(host, w) -> bool:
    root, leaves, paths, pids, hid = w.root, w.leaves, w.paths, w.path_edge_ids, w.hyperedge_id
    if len(leaves) != 3 or len(paths) != 3 or len(pids) != 3:
        return False
    quad = {root, *leaves}
    if len(quad) != 4:
        return False
    n_edges = host.n_edges if isinstance(host, Hypergraph) else host.n_arcs
    all_ids = [hid]
    vt: set[int] = set()
    for i in range(3):
        path, ids = paths[i], pids[i]
        if len(path) < 2 or len(ids) != len(path) - 1:
            return False
        if path[0] != root or path[-1] != leaves[i]:
            return False
        if len(set(path)) != len(path):
            return False
        all_ids.extend(ids)
        vt.update(path)
    if len(set(all_ids)) != len(all_ids):
        return False
    if not all(0 <= e < n_edges for e in all_ids):
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            if (set(paths[i]) - {root}) & (set(paths[j]) - {root}):
                return False
    if _edge_support(host, hid) & vt != quad:
        return False
    for i in range(3):
        path, ids = paths[i], pids[i]
        for t, eid in enumerate(ids):
            if _edge_support(host, eid) & vt != {path[t], path[t + 1]}:
                return False
    return True


def verify_witness(host, w) -> bool:
    """Re-check a certificate against its host; independent of the searches."""
    if isinstance(w, OddCycleWitness):
        return (isinstance(host, Hypergraph) and len(w.vertices) % 2 == 1
                and len(w.vertices) >= 3 and _check_cycle(host, w.vertices, w.edge_ids))
    if isinstance(w, MixedOddCycleWitness):
        if not isinstance(host, MixedHypergraph):
            return False
        if not _check_cycle(host, w.vertices, w.edge_ids):
            return False
        k = len(w.vertices)
        parity = sum(
            _restricted_parity(host, w.edge_ids[i], w.vertices[i], w.vertices[(i + 1) % k])
            for i in range(k)
        )
        return parity % 2 == 1
    if isinstance(w, OddTreeHouseWitness):
        if not isinstance(host, Hypergraph) or not _check_tree_house(host, w):
            return False
        return all(len(p) % 2 == 0 for p in w.paths)  # odd edge count
    if isinstance(w, MixedOddTreeHouseWitness):
        if not isinstance(host, MixedHypergraph) or not _check_tree_house(host, w):
            return False
        for i in range(3):
            path, ids = w.paths[i], w.path_edge_ids[i]
            par = sum(_restricted_parity(host, ids[t], path[t], path[t + 1])
                      for t in range(len(ids)))
            par += _restricted_parity(host, w.hyperedge_id, w.root, w.leaves[i])
            if par % 2 != 0:
                return False
        return True
    raise InputError(f"unknown witness type {type(w).__name__}")


def witness_to_dict(host, w) -> dict:
    """JSON-ready certificate with vertex names and host edge ids."""
    names = host.names
    if isinstance(w, (OddCycleWitness, MixedOddCycleWitness)):
        return {
            "kind": w.kind,
            "vertices": [names[v] for v in w.vertices],
            "edge_ids": list(w.edge_ids),
        }
    if isinstance(w, (OddTreeHouseWitness, MixedOddTreeHouseWitness)):
        return {
            "kind": w.kind,
            "root": names[w.root],
            "leaves": [names[v] for v in w.leaves],
            "paths": [[names[v] for v in p] for p in w.paths],
            "path_edge_ids": [list(ids) for ids in w.path_edge_ids],
            "hyperedge_id": w.hyperedge_id,
        }
    raise InputError(f"unknown witness type {type(w).__name__}")


def witness_from_dict(host, doc: dict):
    """Parse a certificate produced by `witness_to_dict`."""
    try:
        kind = doc["kind"]
        if kind in ("odd-cycle", "mixed-odd-cycle"):
            vertices = tuple(host.vertex_id(nm) for nm in doc["vertices"])
            ids = tuple(int(e) for e in doc["edge_ids"])
            cls = OddCycleWitness if kind == "odd-cycle" else MixedOddCycleWitness
            return cls(vertices, ids)
        if kind in ("odd-tree-house", "mixed-odd-tree-house"):
            cls = OddTreeHouseWitness if kind == "odd-tree-house" else MixedOddTreeHouseWitness
            return cls(
                root=host.vertex_id(doc["root"]),
                leaves=tuple(host.vertex_id(nm) for nm in doc["leaves"]),
                paths=tuple(tuple(host.vertex_id(nm) for nm in p) for p in doc["paths"]),
                path_edge_ids=tuple(tuple(int(e) for e in ids) for ids in doc["path_edge_ids"]),
                hyperedge_id=int(doc["hyperedge_id"]),
            )
    except KeyError as exc:
        raise InputError(f"certificate is missing field {exc}") from None
    raise InputError(f"unknown certificate kind {doc.get('kind')!r}")


# ---------------------------------------------------------------------------
# Unimodularity decisions for disjoint instances
# ---------------------------------------------------------------------------


def _require_disjoint(g) -> None:
    pair = overlapping_proper_edges(g)
    if pair is not None:
        a, b = pair
        sup_a = sorted(g.names[v] for v in _edge_support(g, a))
        sup_b = sorted(g.names[v] for v in _edge_support(g, b))
        raise NotDisjointError(
            a, b,
            f"input is not disjoint: size->=4 edges {a} {sup_a} and {b} {sup_b} overlap",
        )


def decide_unimodular_disjoint(g: Hypergraph,
                               max_nodes: int = DEFAULT_SEARCH_BUDGET) -> Decision:
    """TU decision for a disjoint hypergraph via forbidden-structure search."""
    _require_disjoint(g)
    w = find_odd_cycle(g, max_nodes)
    if w is None:
        w = find_odd_tree_house(g, max_nodes)
    return Decision(tu=w is None, witness=w)


def decide_unimodular_mixed_disjoint(d: MixedHypergraph,
                                     max_nodes: int = DEFAULT_SEARCH_BUDGET) -> Decision:
    """TU decision for a disjoint mixed hypergraph via native mixed search."""
    _require_disjoint(d)
    w = find_mixed_odd_cycle(d, max_nodes)
    if w is None:
        w = find_mixed_odd_tree_house(d, max_nodes)
    return Decision(tu=w is None, witness=w)


# ---------------------------------------------------------------------------
# Odd cycle packing number (graphs only)
# ---------------------------------------------------------------------------


def compute_ocp(g: Hypergraph, max_vertices: int = 12) -> int:
    """Maximum number of vertex-disjoint odd cycles, by exhaustive packing.

    Any odd cycle contains a chordless odd cycle on a subset of its vertices,
    so packings by induced odd cycles are optimal and it suffices to search
    those.
    """
    if not g.is_graph():
        raise InputError("odd cycle packing is defined for graphs (all edges size 2)")
    n = g.n_vertices
    if n > max_vertices:
        raise SizeGuardError(f"desk-scale exceeded: {n} vertices > {max_vertices}")
    adj = [0] * n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def induces_cycle(mask: int) -> bool:
        members = list(_bits_of(mask))
        for v in members:
            if bin(adj[v] & mask).count("1") != 2:
                return False
        seen = 1 << members[0]
        frontier = [members[0]]
        while frontier:
            v = frontier.pop()
            for u in _bits_of(adj[v] & mask & ~seen):
                seen |= 1 << u
                frontier.append(u)
        return seen == mask

    cycles = [
        mask
        for size in range(3, n + 1, 2)
        for vs in itertools.combinations(range(n), size)
        if induces_cycle(mask := sum(1 << v for v in vs))
    ]

    memo: dict[int, int] = {}

    def best(mask: int) -> int:
        if mask not in memo:
            memo[mask] = max(
                (1 + best(mask & ~c) for c in cycles if c & mask == c), default=0
            )
        return memo[mask]

    return best((1 << n) - 1)
