"""Koszul flattening maps and the border-rank lower bounds they induce.

For T in A (x) B (x) C the map acts B* (x) Lambda^p A -> Lambda^(p+1) A (x) C:
beta_j (x) e_S  |->  sum_(i,k) T(i,j,k) (e_i ^ e_S) (x) c_k.

The rank of this map divided by binom(dim A - 1, p) lower-bounds the border
rank.  Bases of the exterior powers are index subsets in colexicographic
order; wedge signs come from sorted-insertion parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from . import modular
from .tensor3 import Tensor3, restrict_generic

#: matrices whose predicted elimination work exceeds this are skipped
DEFAULT_COST_BUDGET = int(1.2e12)
#: memory guard: largest dense block (entries) we will materialize
DEFAULT_BLOCK_ENTRIES = int(2.4e8)


@dataclass
class KoszulReport:
    p: int
    k: int | None
    source_dim: int
    target_dim: int
    rank: int | None
    kernel: int | None
    bound: int | None
    certification: str
    status: str = "ok"  # "ok" | "skipped: size budget"
    primes: list[int] = field(default_factory=list)
    ranks: list[int] = field(default_factory=list)

    def row(self):
        return (self.p, self.k, (self.source_dim, self.target_dim),
                self.kernel, self.bound)


def colex_subsets(n: int, p: int):
    """All p-subsets of range(n) in colexicographic order."""
    subs = list(combinations(range(n), p))
    subs.sort(key=lambda s: s[::-1])
    return subs


def wedge_insert(i: int, sub: tuple):
    """(sign, merged subset) for e_i ^ e_sub, or (0, None) when i is in sub."""
    if i in sub:
        return 0, None
    pos = sum(1 for x in sub if x < i)
    merged = tuple(sorted(sub + (i,)))
    return (-1) ** pos, merged


def koszul_map(t: Tensor3, p: int) -> sp.csr_matrix:
    """Sparse integer matrix of the flattening composed with wedge insertion.

    Rows index Lambda^(p+1) A (x) C, columns index B* (x) Lambda^p A;
    the matrix maps column vectors (source = columns).
    """
    a, b, c = t.dims
    if not 0 <= p <= a - 1:
        raise ValueError(f"p={p} out of range for dim A = {a}")
    subs_p = colex_subsets(a, p)
    subs_q = colex_subsets(a, p + 1)
    idx_q = {s: i for i, s in enumerate(subs_q)}
    rows, cols, vals = [], [], []
    n_p = len(subs_p)
    for i, j, k, v in t.nonzero():
        for s_idx, sub in enumerate(subs_p):
            sign, merged = wedge_insert(i, sub)
            if sign == 0:
                continue
            rows.append(idx_q[merged] * c + k)
            cols.append(j * n_p + s_idx)
            vals.append(sign * int(v))
    shape = (len(subs_q) * c, b * n_p)
    m = sp.coo_matrix((vals, (rows, cols)), shape=shape, dtype=np.int64)
    return m.tocsr()


@dataclass
class RankPolicy:
    """How ranks are computed and when a row is skipped."""
    exact: bool = False
    cost_budget: int = DEFAULT_COST_BUDGET
    block_entries: int = DEFAULT_BLOCK_ENTRIES
    primes: list | None = None


def koszul_bound(t: Tensor3, p: int, k: int | None = None, seed: int = 0,
                 policy: RankPolicy | None = None) -> KoszulReport:
    """One table row: build the map (optionally after generic restriction),
    compute its rank, and form the border-rank bound."""
    policy = policy or RankPolicy()
    work = restrict_generic(t, "A", k, seed) if k is not None else t
    a_eff = work.dims[0]
    m = koszul_map(work, p)
    source, target = m.shape[1], m.shape[0]
    cost, biggest = modular.estimate_cost(m)
    if cost > policy.cost_budget or biggest > policy.block_entries:
        return KoszulReport(p, k, source, target, None, None, None,
                            certification="none", status="skipped: size budget")
    if policy.exact:
        res = modular.exact_rank(m)
    else:
        res = modular.modular_rank(m, primes=policy.primes)
    denom = math.comb(a_eff - 1, p)
    bound = -(-res.rank // denom)  # ceil division
    return KoszulReport(p, k, source, target, res.rank, source - res.rank,
                        bound, res.certification, primes=res.primes,
                        ranks=res.ranks)


def koszul_table(t: Tensor3, p_range, k_rule=None, seed: int = 0,
                 policy: RankPolicy | None = None) -> list[KoszulReport]:
    """Rows for p in p_range; k_rule None (unrestricted) or "2p+1"."""
    out = []
    for p in p_range:
        if k_rule is None:
            k = None
        elif k_rule == "2p+1":
            k = 2 * p + 1
        else:
            raise ValueError(f"unknown k rule {k_rule!r}")
        out.append(koszul_bound(t, p, k, seed, policy))
    return out
