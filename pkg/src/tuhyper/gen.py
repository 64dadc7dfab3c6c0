"""Seeded generators for random and planted instances.

All randomness comes from xoshiro256** 1.0 seeded through splitmix64, with
the reference constants, so any implementation of that generator reproduces
the exact same instances from the same 64-bit seed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .core import Hypergraph, MixedHypergraph
from .detect import (
    MixedOddCycleWitness,
    MixedOddTreeHouseWitness,
    OddCycleWitness,
    OddTreeHouseWitness,
)
from .errors import InputError

__all__ = ["Xoshiro256StarStar", "GenConfig", "Plant", "generate",
           "config_to_dict", "config_from_dict"]

_MASK64 = (1 << 64) - 1


class Xoshiro256StarStar:
    """xoshiro256** 1.0 (Blackman & Vigna), 4x64-bit state, splitmix64 seeding."""

    def __init__(self, seed: int):
        self._s = []
        s = seed & _MASK64
        for _ in range(4):
            s = (s + 0x9E3779B97F4A7C15) & _MASK64
            z = s
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            self._s.append(z ^ (z >> 31))

    @staticmethod
    def _rotl(x: int, k: int) -> int:
        return ((x << k) | (x >> (64 - k))) & _MASK64

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (self._rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = self._rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), by unbiased rejection."""
        if n <= 0:
            raise InputError("randrange needs a positive bound")
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        if k > len(pool):
            raise InputError("sample larger than population")
        out = []
        for _ in range(k):
            out.append(pool.pop(self.randrange(len(pool))))
        return out

    def coin(self) -> int:
        return self.next_u64() >> 63


@dataclass(frozen=True)
class Plant:
    """Structure to embed: 'odd-cycle'/'mixed-odd-cycle' with `length`, or
    'odd-tree-house'/'mixed-odd-tree-house' with three odd `path_lengths`."""

    kind: str
    length: int = 0
    path_lengths: tuple[int, int, int] = (1, 1, 1)


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n_vertices: int
    n_small_edges: int = 0
    proper_edge_sizes: tuple[int, ...] = ()
    disjoint: bool = True
    mixed: bool = False
    plant: Plant | None = None


def config_to_dict(cfg: GenConfig) -> dict:
    """JSON-ready form of a generator config."""
    doc = asdict(cfg)
    doc["proper_edge_sizes"] = list(cfg.proper_edge_sizes)
    if cfg.plant is not None:
        doc["plant"]["path_lengths"] = list(cfg.plant.path_lengths)
    return doc


def config_from_dict(doc: dict) -> GenConfig:
    plant = doc.get("plant")
    return GenConfig(
        seed=int(doc["seed"]),
        n_vertices=int(doc["n_vertices"]),
        n_small_edges=int(doc.get("n_small_edges", 0)),
        proper_edge_sizes=tuple(int(x) for x in doc.get("proper_edge_sizes", ())),
        disjoint=bool(doc.get("disjoint", True)),
        mixed=bool(doc.get("mixed", False)),
        plant=None if plant is None else Plant(
            plant["kind"], int(plant.get("length", 0)),
            tuple(int(x) for x in plant.get("path_lengths", (1, 1, 1)))),
    )


def _random_arc_sides(rng, pair, parity: int):
    """Orient a support-2 arc to the requested parity with random signs."""
    a, b = pair
    if parity == 0:
        return ((a,), (b,)) if rng.coin() else ((b,), (a,))
    both = tuple(sorted((a, b)))
    return (both, ()) if rng.coin() else ((), both)


def _plant_unsigned(cfg: GenConfig, rng):
    p = cfg.plant
    if p.kind == "odd-cycle":
        k = p.length
        if k < 3 or k % 2 == 0:
            raise InputError("planted odd cycle needs odd length >= 3")
        if k > cfg.n_vertices:
            raise InputError("not enough vertices for the planted cycle")
        edges = [tuple(sorted((i, (i + 1) % k))) for i in range(k)]
        witness = OddCycleWitness(tuple(range(k)), tuple(range(k)))
        return edges, witness, set(range(k)), set()
    if p.kind == "odd-tree-house":
        lens = p.path_lengths
        if any(l < 1 or l % 2 == 0 for l in lens):
            raise InputError("planted tree house needs odd path lengths")
        need = 1 + sum(lens)
        if need > cfg.n_vertices:
            raise InputError("not enough vertices for the planted tree house")
        edges = []
        paths = []
        ids = []
        nxt = 4  # vertices 0..3 are root and leaves
        for i, length in enumerate(lens):
            seq = [0] + list(range(nxt, nxt + length - 1)) + [1 + i]
            nxt += length - 1
            paths.append(tuple(seq))
            ids.append(tuple(range(len(edges), len(edges) + length)))
            edges.extend(tuple(sorted((seq[t], seq[t + 1]))) for t in range(length))
        edges.append((0, 1, 2, 3))
        witness = OddTreeHouseWitness(0, (1, 2, 3), tuple(paths), tuple(ids),
                                      len(edges) - 1)
        used = {v for seq in paths for v in seq}
        return edges, witness, used, {0, 1, 2, 3}
    raise InputError(f"unknown plant kind {p.kind!r} for an unsigned instance")


def _plant_mixed(cfg: GenConfig, rng):
    p = cfg.plant
    if p.kind == "mixed-odd-cycle":
        k = p.length
        if k < 2 or k > cfg.n_vertices:
            raise InputError("planted mixed cycle needs 2 <= length <= n_vertices")
        parities = [rng.coin() for _ in range(k - 1)]
        parities.append((1 + sum(parities)) % 2)
        arcs = [
            _random_arc_sides(rng, (i, (i + 1) % k), parities[i]) for i in range(k)
        ]
        witness = MixedOddCycleWitness(tuple(range(k)), tuple(range(k)))
        return arcs, witness, set(range(k)), set()
    if p.kind == "mixed-odd-tree-house":
        lens = p.path_lengths
        if any(l < 1 for l in lens):
            raise InputError("planted tree house needs positive path lengths")
        need = 1 + sum(lens)
        if need > cfg.n_vertices:
            raise InputError("not enough vertices for the planted tree house")
        sides = [rng.coin() for _ in range(4)]  # h signs for r, l1, l2, l3
        heads = tuple(v for v in range(4) if sides[v])
        tails = tuple(v for v in range(4) if not sides[v])
        arcs = []
        paths = []
        ids = []
        nxt = 4
        for i, length in enumerate(lens):
            seq = [0] + list(range(nxt, nxt + length - 1)) + [1 + i]
            nxt += length - 1
            target = 0 if sides[0] == sides[1 + i] else 1
            parities = [rng.coin() for _ in range(length - 1)]
            parities.append((target + 1 + sum(parities)) % 2)
            ids.append(tuple(range(len(arcs), len(arcs) + length)))
            arcs.extend(
                _random_arc_sides(rng, (seq[t], seq[t + 1]), parities[t])
                for t in range(length)
            )
            paths.append(tuple(seq))
        arcs.append((heads, tails))
        witness = MixedOddTreeHouseWitness(0, (1, 2, 3), tuple(paths), tuple(ids),
                                           len(arcs) - 1)
        used = {v for seq in paths for v in seq}
        return arcs, witness, used, {0, 1, 2, 3}
    raise InputError(f"unknown plant kind {p.kind!r} for a mixed instance")


def generate(cfg: GenConfig):
    """Deterministic instance for a config; returns (instance, planted witness).

    Vertices are named v0..v{n-1}.  The planted structure (if any) comes
    first, then one hyperedge per entry of `proper_edge_sizes`, then
    `n_small_edges` random size-2 edges.  Under `disjoint`, generated
    size->=4 edges are drawn from pairwise disjoint vertex pools.
    """
    rng = Xoshiro256StarStar(cfg.seed)
    n = cfg.n_vertices
    if n <= 0:
        raise InputError("need at least one vertex")
    names = tuple(f"v{i}" for i in range(n))
    witness = None
    used_by_proper: set[int] = set()
    members: list = []
    if cfg.plant is not None:
        if cfg.mixed:
            members, witness, _, hverts = _plant_mixed(cfg, rng)
        else:
            members, witness, _, hverts = _plant_unsigned(cfg, rng)
        used_by_proper |= hverts
    for size in cfg.proper_edge_sizes:
        if size < 3:
            raise InputError("proper edge sizes must be >= 3")
        if cfg.disjoint and size >= 4:
            pool = [v for v in range(n) if v not in used_by_proper]
            if len(pool) < size:
                raise InputError("not enough vertices left for a disjoint proper edge")
            chosen = sorted(rng.sample(pool, size))
            used_by_proper |= set(chosen)
        else:
            chosen = sorted(rng.sample(range(n), size))
        if cfg.mixed:
            split = [rng.coin() for _ in chosen]
            heads = tuple(v for v, s in zip(chosen, split) if s)
            tails = tuple(v for v, s in zip(chosen, split) if not s)
            members.append((heads, tails))
        else:
            members.append(tuple(chosen))
    for _ in range(cfg.n_small_edges):
        if n < 2:
            raise InputError("size-2 edges need at least two vertices")
        a = rng.randrange(n)
        b = rng.randrange(n - 1)
        if b >= a:
            b += 1
        pair = tuple(sorted((a, b)))
        if cfg.mixed:
            members.append(_random_arc_sides(rng, pair, rng.coin()))
        else:
            members.append(pair)
    if cfg.mixed:
        return MixedHypergraph(names, tuple(members)), witness
    return Hypergraph(names, tuple(members)), witness
