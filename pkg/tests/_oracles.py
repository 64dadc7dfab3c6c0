"""Independent brute-force oracles used to pin expected values in the tests.

Everything here is deliberately naive (cofactor expansion, exhaustive
enumeration) and shares no code with the library paths it checks.
"""

from __future__ import annotations

import itertools

import numpy as np


def det_cofactor(m) -> int:
    """Determinant by Laplace expansion along the first row."""
    m = [list(map(int, row)) for row in np.asarray(m)]
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def delta_exhaustive(m) -> int:
    """Max |det| over every square submatrix, by cofactor expansion."""
    m = np.asarray(m)
    rows, cols = m.shape
    best = 0
    for k in range(1, min(rows, cols) + 1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                best = max(best, abs(det_cofactor(m[np.ix_(rs, cs)])))
    return best


def is_tu_cofactor(m) -> bool:
    return delta_exhaustive(m) <= 1


def ocp_exhaustive(edges: list[tuple[int, int]], n: int) -> int:
    """Max number of vertex-disjoint odd cycles, by free search over all
    simple cycles (not only chordless ones)."""
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)

    def simple_cycles_within(avail: frozenset[int]):
        seen_sets = set()
        for start in sorted(avail):
            stack = [(start, [start])]
            while stack:
                v, path = stack.pop()
                for u in sorted(adj[v]):
                    if u not in avail:
                        continue
                    if u == start and len(path) >= 3 and len(path) % 2 == 1:
                        key = frozenset(path)
                        if key not in seen_sets:
                            seen_sets.add(key)
                            yield key
                    elif u not in path and u > start:
                        stack.append((u, path + [u]))

    def best(avail: frozenset[int]) -> int:
        top = 0
        for cyc in simple_cycles_within(avail):
            top = max(top, 1 + best(avail - cyc))
        return top

    return best(frozenset(range(n)))


def has_odd_cycle_exhaustive(g) -> bool:
    """Odd cycle as a partial subhypergraph, by direct enumeration of vertex
    sequences and edge assignments."""
    n = g.n_vertices
    contents = [set(e) for e in g.edges]
    for k in range(3, n + 1, 2):
        for vs in itertools.permutations(range(n), k):
            if vs[0] != min(vs) or vs[1] > vs[-1]:
                continue
            vset = set(vs)
            needed = [
                {vs[i], vs[(i + 1) % k]} for i in range(k)
            ]
            candidates = [
                [e for e, c in enumerate(contents) if c & vset == need]
                for need in needed
            ]
            if _distinct_assignment(candidates):
                return True
    return False


def _distinct_assignment(candidates: list[list[int]], used=None) -> bool:
    if used is None:
        used = set()
    if not candidates:
        return True
    head, tail = candidates[0], candidates[1:]
    for e in head:
        if e not in used:
            if _distinct_assignment(tail, used | {e}):
                return True
    return False
