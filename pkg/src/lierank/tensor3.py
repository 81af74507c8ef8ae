"""Dense order-3 tensors over a pluggable scalar domain.

Entries are stored flat, index (i*b + j)*c + k for dims (a, b, c).  The
tensors here are small (at most 15^3); the flattening and Koszul matrices
built from them are what get large, and those live in sparse form.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, mat_rank, rref
from .scalars import Cyclo6

FACTORS = ("A", "B", "C")


@dataclass
class Tensor3:
    dims: tuple[int, int, int]
    entries: list
    provenance: str = ""

    def __post_init__(self):
        a, b, c = self.dims
        if len(self.entries) != a * b * c:
            raise ValueError("entry count does not match dims")

    @staticmethod
    def zeros(dims, provenance=""):
        a, b, c = dims
        return Tensor3(tuple(dims), [0] * (a * b * c), provenance)

    @staticmethod
    def from_structure_constants(g, field_kind="rational"):
        a = g.dim
        t = Tensor3.zeros((a, a, a), provenance=f"T_{g.name}")
        for (i, j), coeffs in g.structure_constants.items():
            for k, v in coeffs.items():
                t.set(i, j, k, t._convert(v, field_kind))
        if field_kind == "cyclo6":
            t.entries = [Cyclo6.of(x) for x in t.entries]
        elif field_kind == "f64":
            t.entries = [float(x) for x in t.entries]
        return t

    @staticmethod
    def _convert(v, field_kind):
        if field_kind in ("rational", "fp"):
            return v
        if field_kind == "cyclo6":
            return Cyclo6.of(v)
        if field_kind == "f64":
            return float(v)
        raise ValueError(f"unknown field kind {field_kind!r}")

    def idx(self, i, j, k):
        a, b, c = self.dims
        return (i * b + j) * c + k

    def at(self, i, j, k):
        return self.entries[self.idx(i, j, k)]

    def set(self, i, j, k, v):
        self.entries[self.idx(i, j, k)] = v

    def nonzero(self):
        """Yields (i, j, k, value) over nonzero entries."""
        a, b, c = self.dims
        for flat, v in enumerate(self.entries):
            if not _is_zero(v):
                k = flat % c
                j = (flat // c) % b
                i = flat // (b * c)
                yield i, j, k, v

    def copy(self):
        return Tensor3(self.dims, list(self.entries), self.provenance)

    def map_entries(self, f):
        return Tensor3(self.dims, [f(x) for x in self.entries], self.provenance)


def _is_zero(v):
    if isinstance(v, Cyclo6):
        return v.is_zero()
    return v == 0


def flatten(t: Tensor3, factor: str) -> Matrix:
    """Coordinate flattening as a map from the chosen factor's dual.

    Columns index the chosen factor (the source); rows index the product of
    the remaining two factors, row-major in the order they appear in (A,B,C).
    """
    a, b, c = t.dims
    if factor == "A":
        rows, cols = b * c, a
        ent = [0] * (rows * cols)
        for i, j, k, v in t.nonzero():
            ent[(j * c + k) * cols + i] = v
    elif factor == "B":
        rows, cols = a * c, b
        ent = [0] * (rows * cols)
        for i, j, k, v in t.nonzero():
            ent[(i * c + k) * cols + j] = v
    elif factor == "C":
        rows, cols = a * b, c
        ent = [0] * (rows * cols)
        for i, j, k, v in t.nonzero():
            ent[(i * b + j) * cols + k] = v
    else:
        raise ValueError(f"factor must be one of {FACTORS}")
    return Matrix(rows, cols, ent)


def is_concise(t: Tensor3) -> dict:
    """Per-factor conciseness: flattening rank equals the factor dimension."""
    out = {}
    for f, d in zip(FACTORS, t.dims):
        out[f] = mat_rank(flatten(t, f)) == d
    return out


def apply_to_axis(t: Tensor3, factor: str, m_rows) -> Tensor3:
    """Contract a (new_dim x old_dim) exact matrix into the chosen axis."""
    a, b, c = t.dims
    new = len(m_rows)
    axis = FACTORS.index(factor)
    old = t.dims[axis]
    if any(len(r) != old for r in m_rows):
        raise ValueError("matrix width does not match factor dim")
    dims = list(t.dims)
    dims[axis] = new
    out = Tensor3.zeros(tuple(dims), provenance=t.provenance + f"|{factor}x{new}")
    for i, j, k, v in t.nonzero():
        pos = (i, j, k)[axis]
        for r in range(new):
            coeff = m_rows[r][pos]
            if _is_zero(coeff):
                continue
            tgt = [i, j, k]
            tgt[axis] = r
            out.set(*tgt, out.at(*tgt) + coeff * v)
    return out


def restrict_factor(t: Tensor3, factor: str, annihilated) -> Tensor3:
    """Quotient the chosen factor by the span of the annihilated vectors.

    Realized by completing span(annihilated) to a basis and dropping the
    coordinates along the span: reduce the span to echelon form, then map
    x -> (x - sum of pivot-coordinate multiples of the echelon rows),
    keeping the non-pivot coordinates.
    """
    if not annihilated:
        return t.copy()
    axis_dim = t.dims[FACTORS.index(factor)]
    vecs = [[Fraction(x) for x in v] for v in annihilated]
    if any(len(v) != axis_dim for v in vecs):
        raise ValueError("annihilated vectors have wrong dimension")
    red, pivots = rref(vecs)
    if len(red) != len(vecs):
        raise ValueError("annihilated vectors are linearly dependent")
    keep = [j for j in range(axis_dim) if j not in set(pivots)]
    # quotient map rows: coordinate j of x minus the echelon correction
    rows = []
    for j in keep:
        row = [Fraction(0)] * axis_dim
        row[j] = Fraction(1)
        for r, pc in zip(red, pivots):
            row[pc] -= r[j]
        rows.append(row)
    rows = [_clear_denominators(r) for r in rows]
    return apply_to_axis(t, factor, rows)


def _clear_denominators(row):
    den = 1
    for x in row:
        f = Fraction(x)
        den = den * f.denominator // _gcd(den, f.denominator)
    return [int(Fraction(x) * den) for x in row]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def restrict_generic(t: Tensor3, factor: str, k: int, seed: int) -> Tensor3:
    """Compose the chosen factor with a seeded random full-rank k x dim matrix.

    Entries are small integers in [-9, 9] so downstream ranks stay exact;
    rank deficiency is ruled out by resampling.
    """
    axis_dim = t.dims[FACTORS.index(factor)]
    if k > axis_dim:
        raise ValueError(f"k={k} exceeds factor dim {axis_dim}")
    rng = random.Random(seed)
    while True:
        m = [[rng.randint(-9, 9) for _ in range(axis_dim)] for _ in range(k)]
        from .linalg import rank_bareiss
        if rank_bareiss(m) == k:
            return apply_to_axis(t, factor, m)


def permute_factors(t: Tensor3, perm) -> Tensor3:
    """Re-index factors: new tensor S with S[x] = T[x applied to perm].

    `perm` maps new axis position -> old axis position, e.g. (1, 0, 2)
    swaps the first two factors.
    """
    perm = tuple(perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError("perm must be a permutation of (0, 1, 2)")
    dims = tuple(t.dims[perm[s]] for s in range(3))
    out = Tensor3.zeros(dims, provenance=t.provenance + f"|perm{perm}")
    for i, j, k, v in t.nonzero():
        old = (i, j, k)
        new = tuple(old[perm[s]] for s in range(3))
        out.set(*new, v)
    return out


def tensor_to_json(t: Tensor3, field_name: str, basis_labels=None) -> str:
    ent = []
    for i, j, k, v in t.nonzero():
        ent.append([i, j, k, _scalar_str(v)])
    doc = {"dims": list(t.dims), "field": field_name, "entries": ent}
    if basis_labels is not None:
        doc["basis_labels"] = list(basis_labels)
    return json.dumps(doc, indent=1)


def tensor_from_json(text: str) -> Tensor3:
    doc = json.loads(text)
    t = Tensor3.zeros(tuple(doc["dims"]))
    kind = doc.get("field", "rational")
    for i, j, k, s in doc["entries"]:
        t.set(i, j, k, _scalar_parse(s, kind))
    return t


def _scalar_str(v):
    if isinstance(v, Cyclo6):
        return f"{v.a};{v.b}"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _scalar_parse(s, kind):
    if kind == "cyclo6":
        a, b = s.split(";")
        return Cyclo6(Fraction(a), Fraction(b))
    if kind == "f64":
        return float(s)
    return Fraction(s) if "/" in s else int(s)


def rank_one(a_vec, b_vec, c_vec, provenance="rank1") -> Tensor3:
    dims = (len(a_vec), len(b_vec), len(c_vec))
    t = Tensor3.zeros(dims, provenance)
    for i, x in enumerate(a_vec):
        if _is_zero(x):
            continue
        for j, y in enumerate(b_vec):
            if _is_zero(y):
                continue
            xy = x * y
            for k, z in enumerate(c_vec):
                if _is_zero(z):
                    continue
                t.set(i, j, k, t.at(i, j, k) + xy * z)
    return t


def add(t1: Tensor3, t2: Tensor3) -> Tensor3:
    if t1.dims != t2.dims:
        raise ValueError("dimension mismatch")
    return Tensor3(t1.dims, [x + y for x, y in zip(t1.entries, t2.entries)],
                   t1.provenance)
