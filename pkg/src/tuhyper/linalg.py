"""Exact integer linear algebra: determinants, maximum subdeterminants,
brute-force TU / almost-TU tests, and both unimodularity criteria based on
support counts of Eulerian partial subhypergraphs.

Everything here is exact.  Single determinants use fraction-free elimination
over Python integers (no overflow ever); the batched enumeration path uses
the same elimination in int64, guarded by a Hadamard bound check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, MixedHypergraph, SubSelection, incidence_matrix
from .errors import InputError, SizeGuardError

__all__ = [
    "det_exact",
    "batch_det_exact",
    "DeltaResult",
    "max_abs_subdet",
    "is_tu_bruteforce",
    "tu_violation",
    "is_almost_tu",
    "CamionResult",
    "camion_unimodular",
    "camion_unimodular_mixed",
    "DEFAULT_MAX_DIMENSION_SUM",
]

# Exhaustive submatrix enumeration is exponential; reject inputs whose
# rows+cols exceed this unless the caller raises the guard explicitly.
DEFAULT_MAX_DIMENSION_SUM = 22

_CHUNK_CELLS = 4_000_000  # max int64 cells per enumeration batch


def det_exact(m) -> int:
    """Exact determinant via fraction-free elimination on Python integers."""
    a = [[int(x) for x in row] for row in np.asarray(m)]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise InputError("det_exact expects a square matrix")
    sign = 1
    prev = 1
    for i in range(n):
        pivot_row = next((j for j in range(i, n) if a[j][i] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != i:
            a[i], a[pivot_row] = a[pivot_row], a[i]
            sign = -sign
        pivot = a[i][i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] = (a[j][k] * pivot - a[j][i] * a[i][k]) // prev
            a[j][i] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def batch_det_exact(mats: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of small integer matrices.

    Fraction-free elimination; intermediate entries are minors of the input,
    so int64 arithmetic is exact as long as the Hadamard bound fits (the
    caller is responsible for that; every guard in this module implies it).
    """
    a = np.array(mats, dtype=np.int64, copy=True)
    b, n, n2 = a.shape
    if n != n2:
        raise InputError("batch_det_exact expects square matrices")
    if n == 0:
        return np.ones(b, dtype=np.int64)
    sign = np.ones(b, dtype=np.int64)
    prev = np.ones(b, dtype=np.int64)
    alive = np.ones(b, dtype=bool)
    for i in range(n):
        nz = a[:, i:, i] != 0
        alive &= nz.any(axis=1)
        rel = nz.argmax(axis=1)
        need = np.nonzero(alive & (rel > 0))[0]
        if need.size:
            j = rel[need] + i
            tmp = a[need, j].copy()
            a[need, j] = a[need, i]
            a[need, i] = tmp
            sign[need] = -sign[need]
        if i < n - 1:
            pivot = np.where(alive, a[:, i, i], 1)
            a[:, i + 1 :, i + 1 :] = (
                a[:, i + 1 :, i + 1 :] * pivot[:, None, None]
                - a[:, i + 1 :, i, None] * a[:, i, None, i + 1 :]
            ) // prev[:, None, None]
            prev = pivot
    return np.where(alive, sign * a[:, n - 1, n - 1], 0)


def _check_guard(m: np.ndarray, max_dimension_sum: int) -> None:
    rows, cols = m.shape
    if rows + cols > max_dimension_sum:
        raise SizeGuardError(
            f"desk-scale exceeded: matrix has rows+cols = {rows + cols} > "
            f"{max_dimension_sum}; raise max_dimension_sum to force the enumeration"
        )
    # int64 exactness for the batched path: Hadamard bound over any submatrix.
    norms = np.sqrt((np.asarray(m, dtype=np.float64) ** 2).sum(axis=0))
    bound = np.prod(np.sort(norms)[::-1][: min(rows, cols)].clip(min=1.0))
    if bound >= 2.0**62:
        raise SizeGuardError("entries too large for exact int64 enumeration")


def _subdet_batches(m: np.ndarray, order: int):
    """Yield (row_sets, col_sets, dets) for all order x order submatrices.

    Row subsets iterate lexicographically in the outer loop and column
    subsets in the inner one, so the concatenated stream is in lexicographic
    (rows, cols) order; witnesses derived from the first hit are canonical.
    """
    rows = np.array(list(itertools.combinations(range(m.shape[0]), order)), dtype=np.intp)
    cols = np.array(list(itertools.combinations(range(m.shape[1]), order)), dtype=np.intp)
    row_chunk = max(1, _CHUNK_CELLS // max(1, len(cols) * order * order))
    for start in range(0, len(rows), row_chunk):
        rsub = rows[start : start + row_chunk]
        sub = m[rsub[:, None, :, None], cols[None, :, None, :]]
        dets = batch_det_exact(sub.reshape(-1, order, order))
        yield rsub, cols, dets.reshape(len(rsub), len(cols))


@dataclass(frozen=True)
class DeltaResult:
    """Maximum absolute subdeterminant with a witnessing submatrix."""

    delta: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def max_abs_subdet(m, cap: int | None = None,
                   max_dimension_sum: int = DEFAULT_MAX_DIMENSION_SUM) -> DeltaResult:
    """Largest |det| over square submatrices up to order `cap`, with witness.

    Orders are scanned ascending and subsets lexicographically, and the
    witness is the first submatrix achieving the maximum in that order, so
    results are reproducible.
    """
    m = np.asarray(m, dtype=np.int64)
    _check_guard(m, max_dimension_sum)
    best = DeltaResult(0, (), ())
    top = min(m.shape)
    if cap is not None:
        top = min(top, cap)
    for order in range(1, top + 1):
        for rsub, cols, dets in _subdet_batches(m, order):
            mags = np.abs(dets)
            local = int(mags.max())
            if local > best.delta:
                i, j = np.unravel_index(int(np.argmax(mags == local)), mags.shape)
                best = DeltaResult(local, tuple(int(r) for r in rsub[i]),
                                   tuple(int(c) for c in cols[j]))
    return best


def tu_violation(m, max_dimension_sum: int = DEFAULT_MAX_DIMENSION_SUM):
    """First square submatrix (ascending order, lexicographic) with |det| >= 2.

    Returns (rows, cols, det) or None when the matrix is totally unimodular.
    """
    m = np.asarray(m, dtype=np.int64)
    _check_guard(m, max_dimension_sum)
    for order in range(1, min(m.shape) + 1):
        for rsub, cols, dets in _subdet_batches(m, order):
            bad = np.abs(dets) >= 2
            if bad.any():
                i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
                return (
                    tuple(int(r) for r in rsub[i]),
                    tuple(int(c) for c in cols[j]),
                    int(dets[i, j]),
                )
    return None


def is_tu_bruteforce(m, max_dimension_sum: int = DEFAULT_MAX_DIMENSION_SUM) -> bool:
    """True iff every square subdeterminant lies in {0, +1, -1}."""
    return tu_violation(m, max_dimension_sum) is None


def is_almost_tu(m, max_dimension_sum: int = DEFAULT_MAX_DIMENSION_SUM) -> bool:
    """True iff m is not TU but every proper submatrix is TU.

    A violating submatrix of a non-square matrix is always proper, so only
    square matrices can be almost TU: the whole matrix must be the unique
    violation.
    """
    m = np.asarray(m, dtype=np.int64)
    _check_guard(m, max_dimension_sum)
    rows, cols = m.shape
    if rows != cols or rows == 0:
        return False
    for order in range(1, rows):
        for _, _, dets in _subdet_batches(m, order):
            if (np.abs(dets) >= 2).any():
                return False
    return abs(det_exact(m)) >= 2


# ---------------------------------------------------------------------------
# Support-count unimodularity criteria
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CamionResult:
    """Outcome of a support-count criterion run.

    When `unimodular` is false, `witness` selects an Eulerian partial
    subhypergraph whose support count violates the divisibility condition;
    `value` is that count (unsigned case) or the signed entry sum (mixed).
    """

    unimodular: bool
    witness: SubSelection | None
    value: int | None


def _masks_by_size_then_value(n: int):
    masks = sorted(range(1, 1 << n), key=lambda m: (bin(m).count("1"), m))
    return masks


def _gf2_nullspace(columns: list[int]) -> list[int]:
    """Nullspace combination masks for GF(2) column vectors given as ints.

    Each returned int selects a subset of the input columns XOR-ing to zero.
    """
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j, vec in enumerate(columns):
        combo = 1 << j
        while vec:
            lead = vec.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = (vec, combo)
                break
            pvec, pcombo = pivots[lead]
            vec ^= pvec
            combo ^= pcombo
        else:
            basis.append(combo)
    return basis


def _eulerian_selections(masks: list[int], n_vertices: int, guard: int):
    """Yield (umask, edge_subset_mask) for Eulerian selections, smallest U first.

    `masks` are the vertex masks of the hyperedge supports.  For each vertex
    set U the admissible column sets are the GF(2) nullspace of the parity
    system "every vertex of U is covered an even number of times", restricted
    to edges whose trace in U is even and nonempty.
    """
    if n_vertices > guard:
        raise SizeGuardError(
            f"desk-scale exceeded: {n_vertices} vertices > {guard} for the "
            "Eulerian-subhypergraph enumeration"
        )
    for umask in _masks_by_size_then_value(n_vertices):
        cand = [(eid, m & umask) for eid, m in enumerate(masks)]
        cand = [(eid, t) for eid, t in cand if t and bin(t).count("1") % 2 == 0]
        if not cand:
            continue
        basis = _gf2_nullspace([t for _, t in cand])
        if not basis:
            continue
        ids = [eid for eid, _ in cand]
        for combo_bits in range(1, 1 << len(basis)):
            combo = 0
            cb = combo_bits
            k = 0
            while cb:
                if cb & 1:
                    combo ^= basis[k]
                cb >>= 1
                k += 1
            if combo:
                fmask = 0
                sel = combo
                while sel:
                    low = sel & -sel
                    fmask |= 1 << ids[low.bit_length() - 1]
                    sel ^= low
                yield umask, fmask


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def camion_unimodular(g: Hypergraph, max_vertices: int = 16) -> CamionResult:
    """Support-count unimodularity test for unsigned hypergraphs.

    The matrix is totally unimodular iff every Eulerian partial subhypergraph
    has support size divisible by four; the first violating selection (by
    vertex-set size, then lexicographic) is returned as the witness.
    """
    masks = list(g.edge_masks)
    for umask, fmask in _eulerian_selections(masks, g.n_vertices, max_vertices):
        supp = sum(bin(masks[e] & umask).count("1") for e in _mask_to_tuple(fmask))
        if supp % 4 != 0:
            sel = SubSelection(_mask_to_tuple(umask), _mask_to_tuple(fmask))
            return CamionResult(False, sel, supp)
    return CamionResult(True, None, None)


def camion_unimodular_mixed(d: MixedHypergraph, max_vertices: int = 16) -> CamionResult:
    """Entry-sum unimodularity test for mixed hypergraphs.

    The matrix is totally unimodular iff every Eulerian partial subhypergraph
    with as many vertices as arcs has entry sum divisible by four.  Arcs with
    empty trace in U act as zero columns and may pad the selection to make it
    square.
    """
    supports = list(d.support_masks)
    heads = list(d.head_masks)
    tails = list(d.tail_masks)
    for umask, fmask in _eulerian_selections(supports, d.n_vertices, max_vertices):
        chosen = _mask_to_tuple(fmask)
        u_size = bin(umask).count("1")
        zero_arcs = [a for a in range(d.n_arcs) if supports[a] & umask == 0]
        if not (len(chosen) <= u_size <= len(chosen) + len(zero_arcs)):
            continue
        total = sum(
            bin(heads[a] & umask).count("1") - bin(tails[a] & umask).count("1")
            for a in chosen
        )
        if total % 4 != 0:
            pad = tuple(zero_arcs[: u_size - len(chosen)])
            sel = SubSelection(_mask_to_tuple(umask), tuple(sorted(chosen + pad)))
            return CamionResult(False, sel, total)
    return CamionResult(True, None, None)


def incidence_tu(g, max_dimension_sum: int = DEFAULT_MAX_DIMENSION_SUM) -> bool:
    """Brute-force TU check straight from a (mixed) hypergraph."""
    return is_tu_bruteforce(incidence_matrix(g), max_dimension_sum)
