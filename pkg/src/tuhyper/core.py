"""Hypergraph and mixed-hypergraph data model.

Vertices are dense integer ids 0..n-1; external labels are kept in a name
table so incidence matrices are deterministic: row order == vertex order,
column order == edge/arc order.  Hyperedges form a multiset realized as an
id-indexed sequence (the position is the edge id), so parallel edges are
first-class.  All types are immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import InputError

__all__ = [
    "Hypergraph",
    "MixedHypergraph",
    "SubSelection",
    "Induced",
    "incidence_matrix",
    "induce",
    "is_disjoint",
    "overlapping_proper_edges",
    "is_eulerian",
    "support_size",
    "as_mixed",
    "mixed_from_matrix",
    "fixture",
    "FIXTURE_NAMES",
    "load_instance",
    "instance_to_dict",
]


def _mask(vertex_ids) -> int:
    m = 0
    for v in vertex_ids:
        m |= 1 << v
    return m


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Hypergraph:
    """A vertex set plus a multiset of nonempty hyperedges."""

    names: tuple[str, ...]
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("vertex names must be unique")
        for eid, edge in enumerate(self.edges):
            if not edge:
                raise InputError(f"edge {eid} is empty")
            if list(edge) != sorted(set(edge)):
                raise InputError(f"edge {eid} must be a sorted duplicate-free tuple")
            if edge[0] < 0 or edge[-1] >= n:
                raise InputError(f"edge {eid} references an unknown vertex")
        object.__setattr__(self, "_masks", tuple(_mask(e) for e in self.edges))
        object.__setattr__(self, "_index", {nm: v for v, nm in enumerate(self.names)})

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_masks(self) -> tuple[int, ...]:
        return self._masks  # type: ignore[attr-defined]

    def vertex_id(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise InputError(f"unknown vertex name {name!r}") from None

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        bit = 1 << v
        return tuple(i for i, m in enumerate(self.edge_masks) if m & bit)

    def is_graph(self) -> bool:
        return all(len(e) == 2 for e in self.edges)

    @classmethod
    def from_names(cls, vertices, edges) -> "Hypergraph":
        names = tuple(str(v) for v in vertices)
        index = {nm: i for i, nm in enumerate(names)}
        if len(index) != len(names):
            raise InputError("vertex names must be unique")
        out = []
        for edge in edges:
            try:
                ids = sorted({index[str(v)] for v in edge})
            except KeyError as exc:
                raise InputError(f"edge {edge!r} references unknown vertex {exc}") from None
            out.append(tuple(ids))
        return cls(names, tuple(out))


@dataclass(frozen=True)
class MixedHypergraph:
    """A vertex set plus a multiset of hyperarcs (head set, tail set).

    Heads contribute +1 incidence entries, tails -1.  Head and tail sets are
    disjoint and not both empty.
    """

    names: tuple[str, ...]
    arcs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("vertex names must be unique")
        for aid, (heads, tails) in enumerate(self.arcs):
            for part in (heads, tails):
                if list(part) != sorted(set(part)):
                    raise InputError(f"arc {aid} sides must be sorted duplicate-free tuples")
                if part and (part[0] < 0 or part[-1] >= n):
                    raise InputError(f"arc {aid} references an unknown vertex")
            if not heads and not tails:
                raise InputError(f"arc {aid} is empty")
            if set(heads) & set(tails):
                raise InputError(f"arc {aid} has a vertex on both sides")
        object.__setattr__(self, "_smasks", tuple(_mask(s) for s, _ in self.arcs))
        object.__setattr__(self, "_tmasks", tuple(_mask(t) for _, t in self.arcs))
        object.__setattr__(self, "_index", {nm: v for v, nm in enumerate(self.names)})

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def head_masks(self) -> tuple[int, ...]:
        return self._smasks  # type: ignore[attr-defined]

    @property
    def tail_masks(self) -> tuple[int, ...]:
        return self._tmasks  # type: ignore[attr-defined]

    @property
    def support_masks(self) -> tuple[int, ...]:
        return tuple(s | t for s, t in zip(self.head_masks, self.tail_masks))

    def vertex_id(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise InputError(f"unknown vertex name {name!r}") from None

    def support(self, aid: int) -> tuple[int, ...]:
        heads, tails = self.arcs[aid]
        return tuple(sorted(heads + tails))

    def underlying(self) -> Hypergraph:
        return Hypergraph(self.names, tuple(self.support(a) for a in range(self.n_arcs)))

    @classmethod
    def from_names(cls, vertices, arcs) -> "MixedHypergraph":
        names = tuple(str(v) for v in vertices)
        index = {nm: i for i, nm in enumerate(names)}
        if len(index) != len(names):
            raise InputError("vertex names must be unique")
        out = []
        for heads, tails in arcs:
            try:
                s = tuple(sorted({index[str(v)] for v in heads}))
                t = tuple(sorted({index[str(v)] for v in tails}))
            except KeyError as exc:
                raise InputError(f"arc references unknown vertex {exc}") from None
            out.append((s, t))
        return cls(names, tuple(out))


@dataclass(frozen=True)
class SubSelection:
    """A vertex subset U and an edge-id subset F, both against a fixed host."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __post_init__(self):
        if list(self.vertices) != sorted(set(self.vertices)):
            raise InputError("selection vertices must be a sorted duplicate-free tuple")
        if list(self.edge_ids) != sorted(set(self.edge_ids)):
            raise InputError("selection edge ids must be a sorted duplicate-free tuple")

    def validate(self, g) -> None:
        n = g.n_vertices
        m = g.n_edges if isinstance(g, Hypergraph) else g.n_arcs
        if self.vertices and (self.vertices[0] < 0 or self.vertices[-1] >= n):
            raise InputError("selection references an unknown vertex")
        if self.edge_ids and (self.edge_ids[0] < 0 or self.edge_ids[-1] >= m):
            raise InputError("selection references an unknown edge id")


@dataclass(frozen=True)
class Induced:
    """Result of `induce`: the sub-hypergraph plus originating host edge ids."""

    sub: Hypergraph
    origin: tuple[int, ...]


def incidence_matrix(g) -> np.ndarray:
    """Vertex-by-edge incidence matrix; +1 heads, -1 tails, read-only int64."""
    if isinstance(g, Hypergraph):
        m = np.zeros((g.n_vertices, g.n_edges), dtype=np.int64)
        for j, edge in enumerate(g.edges):
            for v in edge:
                m[v, j] = 1
    elif isinstance(g, MixedHypergraph):
        m = np.zeros((g.n_vertices, g.n_arcs), dtype=np.int64)
        for j, (heads, tails) in enumerate(g.arcs):
            for v in heads:
                m[v, j] = 1
            for v in tails:
                m[v, j] = -1
    else:
        raise InputError(f"expected a hypergraph, got {type(g).__name__}")
    m.setflags(write=False)
    return m


def induce(g: Hypergraph, sel: SubSelection) -> Induced:
    """Restrict g to (U, F): keep vertices U and the traces f & U, f in F.

    Edges whose trace is empty are dropped.  Each surviving edge is tagged
    with its originating host edge id, so the result's incidence matrix is a
    submatrix of the host's.
    """
    sel.validate(g)
    if not isinstance(g, Hypergraph):
        raise InputError("induce expects a non-mixed hypergraph")
    umask = _mask(sel.vertices)
    renum = {v: i for i, v in enumerate(sel.vertices)}
    names = tuple(g.names[v] for v in sel.vertices)
    edges = []
    origin = []
    for eid in sel.edge_ids:
        if g.edge_masks[eid] & umask:
            edges.append(tuple(renum[v] for v in g.edges[eid] if v in renum))
            origin.append(eid)
    return Induced(Hypergraph(names, tuple(edges)), tuple(origin))


def overlapping_proper_edges(g) -> tuple[int, int] | None:
    """First pair of size->=4 hyperedges/arc supports sharing a vertex, if any."""
    masks = g.edge_masks if isinstance(g, Hypergraph) else g.support_masks
    big = [(i, m) for i, m in enumerate(masks) if bin(m).count("1") >= 4]
    for a in range(len(big)):
        for b in range(a + 1, len(big)):
            if big[a][1] & big[b][1]:
                return big[a][0], big[b][0]
    return None


def is_disjoint(g) -> bool:
    """True iff all hyperedges/arc supports of size >= 4 are pairwise disjoint."""
    return overlapping_proper_edges(g) is None


def is_eulerian(g) -> bool:
    """True iff every incidence row and column has an even number of nonzeros."""
    m = incidence_matrix(g)
    nz = m != 0
    return bool((nz.sum(axis=0) % 2 == 0).all() and (nz.sum(axis=1) % 2 == 0).all())


def support_size(m: np.ndarray) -> int:
    """Number of nonzero entries."""
    return int(np.count_nonzero(np.asarray(m)))


def as_mixed(g: Hypergraph) -> MixedHypergraph:
    """View an unsigned hypergraph as a mixed one with all tails empty."""
    return MixedHypergraph(g.names, tuple((e, ()) for e in g.edges))


def mixed_from_matrix(m: np.ndarray, names=None) -> MixedHypergraph:
    """Mixed hypergraph whose incidence matrix is the given {0,+-1} matrix."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise InputError("incidence matrix must be two-dimensional")
    if not np.isin(m, (-1, 0, 1)).all():
        raise InputError("incidence entries must be in {0, +1, -1}")
    rows, cols = m.shape
    if names is None:
        names = tuple(f"v{i}" for i in range(rows))
    arcs = []
    for j in range(cols):
        heads = tuple(int(i) for i in np.nonzero(m[:, j] == 1)[0])
        tails = tuple(int(i) for i in np.nonzero(m[:, j] == -1)[0])
        arcs.append((heads, tails))
    return MixedHypergraph(tuple(names), tuple(arcs))


# ---------------------------------------------------------------------------
# Instance files and named fixtures
# ---------------------------------------------------------------------------

FIXTURE_NAMES = ("fig1", "fig2", "fig4-left", "fig4-right", "fig5", "c3", "c4", "dir4")


def load_instance(doc) -> Hypergraph | MixedHypergraph:
    """Parse an instance from a JSON document (dict, JSON string, or path)."""
    if isinstance(doc, (str, bytes)):
        text = doc
        if isinstance(doc, str) and not doc.lstrip().startswith("{"):
            with open(doc, "r", encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputError("instance document must be an object with a 'vertices' key")
    if "edges" in doc:
        return Hypergraph.from_names(doc["vertices"], doc["edges"])
    if "arcs" in doc:
        arcs = [(a.get("plus", []), a.get("minus", [])) for a in doc["arcs"]]
        return MixedHypergraph.from_names(doc["vertices"], arcs)
    raise InputError("instance document needs an 'edges' or 'arcs' key")


def instance_to_dict(g) -> dict:
    """JSON-ready dict for a hypergraph or mixed hypergraph."""
    if isinstance(g, Hypergraph):
        return {
            "vertices": list(g.names),
            "edges": [[g.names[v] for v in e] for e in g.edges],
        }
    if isinstance(g, MixedHypergraph):
        return {
            "vertices": list(g.names),
            "arcs": [
                {"plus": [g.names[v] for v in s], "minus": [g.names[v] for v in t]}
                for s, t in g.arcs
            ],
        }
    raise InputError(f"expected a hypergraph, got {type(g).__name__}")


def fixture(name: str) -> Hypergraph | MixedHypergraph:
    """Load one of the named instances shipped with the package."""
    key = name.lower().replace("_", "-")
    if key not in FIXTURE_NAMES:
        raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    path = resources.files("tuhyper").joinpath("data", key.replace("-", "_") + ".json")
    return load_instance(json.loads(path.read_text(encoding="utf-8")))
