"""Prime-field rank of large integer matrices.

Strategy: reduce mod a ~2^21 prime, split the nonzero pattern into
connected components (the maps built from weight bases are block diagonal
after row/column permutation, and components recover the finest such
splitting), then eliminate each block densely.

Dense elimination keeps all values in float64: entries stay in (-p, p),
so products are < 2^43 and a panel-sized accumulation of 256 of them
stays below 2^53 — every intermediate is an exactly-represented integer.
Trailing updates are BLAS matrix products, which is what makes the
desk-scale tables tractable.

Ranks mod p lower-bound the rational rank; agreement of two independent
primes is reported as the certification level "two-prime".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .scalars import MODULAR_PRIMES

PANEL = 256
_SMALL = 64  # blocks up to this size skip the panel machinery


@dataclass
class RankResult:
    rank: int
    certification: str  # "exact" | "two-prime" | "uncertified"
    primes: list[int] = field(default_factory=list)
    ranks: list[int] = field(default_factory=list)


def _apply_panel_ops(L, invs, X, p):
    """Replay the panel's row operations on the pivot rows' trailing parts.

    Row i receives the multiplier subtractions against the already-final
    earlier rows, then its own normalization.  Each row is reduced before
    scaling so every product stays below 2^53.
    """
    k = L.shape[0]
    for i in range(k):
        if i:
            X[i] = np.fmod(X[i] - L[i, :i] @ X[:i], p)
        X[i] = np.fmod(X[i] * invs[i], p)
    return X


def rank_dense_modp(A, p: int) -> int:
    """Rank of a dense integer matrix mod p.  A is destroyed.

    A must be float64 with integral values in (-p, p).
    """
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    if m < n:
        A = np.ascontiguousarray(A.T)
        m, n = n, m
    fr = 0
    c = 0
    while fr < m and c < n:
        w = min(PANEL, n - c)
        piv_cols = []
        invs = []
        k = 0
        for j in range(c, c + w):
            col = A[fr + k:, j]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            pr = fr + k + nz[0]
            if pr != fr + k:
                A[[fr + k, pr], :] = A[[pr, fr + k], :]
            inv = pow(int(A[fr + k, j]) % p, p - 2, p)
            A[fr + k, j: c + w] = np.fmod(A[fr + k, j: c + w] * inv, p)
            below = A[fr + k + 1:, j]
            if below.size and np.any(below):
                mult = below.copy()
                A[fr + k + 1:, j + 1: c + w] = np.fmod(
                    A[fr + k + 1:, j + 1: c + w]
                    - np.outer(mult, A[fr + k, j + 1: c + w]), p)
                A[fr + k + 1:, j] = mult  # keep multipliers for the update
            piv_cols.append(j)
            invs.append(inv)
            k += 1
        if k and n - (c + w) > 0:
            # propagate the panel's row operations to the trailing columns
            L11 = np.eye(k)
            for i in range(1, k):
                L11[i, :i] = A[fr + i, piv_cols[:i]]
            U12 = _apply_panel_ops(L11, invs, A[fr: fr + k, c + w:].copy(), p)
            A[fr: fr + k, c + w:] = U12
            if m - (fr + k) > 0:
                L21 = np.ascontiguousarray(A[fr + k:, piv_cols])
                _gemm_sub_modp(A, fr + k, c + w, L21, U12, p)
        fr += k
        c += w
    return fr


def _gemm_sub_modp(A, row0, col0, L, U, p, chunk=2048):
    """A[row0:, col0:] -= L @ U, reduced mod p, in column chunks."""
    ncols = A.shape[1] - col0
    for s in range(0, ncols, chunk):
        e = min(s + chunk, ncols)
        block = A[row0:, col0 + s: col0 + e]
        block -= L @ U[:, s:e]
        np.fmod(block, p, out=block)


def _rank_small_modp(A, p: int) -> int:
    """Unblocked elimination for small blocks (float64, same invariants)."""
    m, n = A.shape
    r = 0
    for j in range(n):
        nz = np.nonzero(A[r:, j])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            A[[r, pr], :] = A[[pr, r], :]
        inv = pow(int(A[r, j]) % p, p - 2, p)
        A[r, j:] = np.fmod(A[r, j:] * inv, p)
        below = A[r + 1:, j]
        mask = below != 0
        if mask.any():
            A[r + 1:, j:][mask] = np.fmod(
                A[r + 1:, j:][mask] - np.outer(below[mask], A[r, j:]), p)
        r += 1
        if r == m:
            break
    return r


def split_components(mat: sp.spmatrix):
    """Connected components of the bipartite row/column graph.

    Returns a list of (row_indices, col_indices) pairs covering every
    row/column that carries a nonzero entry.
    """
    mat = mat.tocsr()
    m, n = mat.shape
    graph = sp.bmat([[None, mat], [mat.T, None]], format="csr")
    ncomp, labels = connected_components(graph, directed=False)
    comps = {}
    coo = mat.tocoo()
    seen = np.zeros(ncomp, dtype=bool)
    seen[labels[np.unique(coo.row)]] = True
    for comp in np.nonzero(seen)[0]:
        comps[comp] = None
    row_labels = labels[:m]
    col_labels = labels[m:]
    out = []
    for comp in comps:
        rows = np.nonzero(row_labels == comp)[0]
        cols = np.nonzero(col_labels == comp)[0]
        out.append((rows, cols))
    return out


def estimate_cost(mat: sp.spmatrix):
    """(predicted elimination work, largest dense block size) after splitting."""
    total = 0
    biggest = 0
    for rows, cols in split_components(mat):
        r, c = len(rows), len(cols)
        total += min(r, c) * r * c
        biggest = max(biggest, r * c)
    return total, biggest


def rank_modp(mat: sp.spmatrix, p: int) -> int:
    """Rank of a sparse integer matrix mod one prime."""
    mat = mat.tocsr().astype(np.int64)
    mat.data = mat.data % p
    mat.eliminate_zeros()
    if mat.nnz == 0:
        return 0
    rank = 0
    for rows, cols in split_components(mat):
        block = mat[rows][:, cols].toarray().astype(np.float64)
        if min(block.shape) == 0:
            continue
        if max(block.shape) <= _SMALL:
            rank += _rank_small_modp(block, p)
        else:
            rank += rank_dense_modp(block, p)
    return rank


def modular_rank(mat: sp.spmatrix, primes=None, max_primes: int = 4) -> RankResult:
    """Rank with two-prime certification.

    Draws primes from a fixed pool until two of them agree on the running
    maximum rank; the result is marked "uncertified" if that never happens.
    Modular ranks only ever under-shoot the rational rank, so the maximum
    is the best available lower bound either way.
    """
    pool = list(primes) if primes else list(MODULAR_PRIMES)
    ranks, used = [], []
    for p in pool[:max_primes]:
        used.append(p)
        ranks.append(rank_modp(mat, p))
        best = max(ranks)
        if ranks.count(best) >= 2:
            return RankResult(best, "two-prime", used, ranks)
    return RankResult(max(ranks), "uncertified", used, ranks)


def exact_rank(mat: sp.spmatrix) -> RankResult:
    """Exact rational rank via per-component fraction-free elimination."""
    from .linalg import rank_bareiss
    mat = mat.tocsr().astype(object)
    rank = 0
    for rows, cols in split_components(mat):
        block = mat[rows][:, cols].toarray()
        rank += rank_bareiss([[int(x) for x in row] for row in block])
    return RankResult(rank, "exact")
