"""Classical Lie algebras sl_n and so_n with weight bases.

Basis order rule (shared by both families): walk the matrix positions in
row-major order; an off-diagonal position (i,j) contributes its root vector,
a diagonal position (i,i) contributes the i-th Cartan element when one
exists, and positions past the last Cartan are skipped.  For sl_3 this
reproduces the slice layout (h1, e12, e13, e21, h2, e23, e31, e32) used by
the frozen slice fixtures.

so_n is realized in split form (antidiagonal bilinear form), so its Cartan
subalgebra is diagonal and all weights are integral.  Weight coordinates are
eigenvalues against `weight_coroots`: the Cartan basis itself for sl_n
(fundamental-weight coordinates) and epsilon-coordinates for so_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix, solve_in_span


@dataclass
class LieAlgebra:
    name: str
    dim: int
    ss_rank: int
    basis_labels: list[str]
    basis_matrices: list[list[list[int]]]  # dim x (n x n) integer matrices
    structure_constants: dict  # (i, j) -> {k: coeff}
    cartan_indices: list[int]
    raising_indices: list[int]  # simple raising operators first
    weights: list[tuple[int, ...]]
    weight_coroots: list[list[list[int]]] = field(default_factory=list)

    def bracket_coords(self, i: int, j: int) -> dict:
        """Structure constants of [b_i, b_j] as a sparse {k: coeff} map."""
        return self.structure_constants.get((i, j), {})

    def ad_matrix(self, i: int) -> list[list[int]]:
        """Matrix of ad(b_i) on basis coordinates: column j holds [b_i, b_j]."""
        m = [[0] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_coords(i, j).items():
                m[k][j] = c
        return m

    def simple_raising_indices(self) -> list[int]:
        return self.raising_indices[: self.ss_rank]

    def trace_form(self) -> list[list[int]]:
        """Gram matrix G[i][j] = tr(b_i b_j) of the trace pairing."""
        n = len(self.basis_matrices[0])
        g = [[0] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            bi = self.basis_matrices[i]
            for j in range(self.dim):
                bj = self.basis_matrices[j]
                g[i][j] = sum(bi[r][c] * bj[c][r] for r in range(n) for c in range(n))
        return g


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _commutator(a, b):
    return _mat_sub(_mat_mul(a, b), _mat_mul(b, a))


def _expand_in_basis(m, basis):
    """Coordinates of matrix m in the given basis (exact; raises if outside)."""
    n = len(m)
    flat_basis = [[bm[r][c] for r in range(n) for c in range(n)] for bm in basis]
    target = [m[r][c] for r in range(n) for c in range(n)]
    coeffs = solve_in_span(flat_basis, target)
    if coeffs is None:
        raise ValueError("matrix does not lie in the algebra span")
    out = {}
    for k, c in enumerate(coeffs):
        if c != 0:
            if c.denominator != 1:
                raise ValueError("non-integer structure constant")
            out[k] = int(c)
    return out


def _finish(name, n, ss_rank, labels, basis, cartan_idx, raising_idx, coroots):
    dim = len(basis)
    constants = {}
    for i in range(dim):
        for j in range(dim):
            comm = _commutator(basis[i], basis[j])
            coeffs = _expand_in_basis(comm, basis)
            if coeffs:
                constants[(i, j)] = coeffs
    weights = []
    for j in range(dim):
        coord = []
        for h in coroots:
            comm = _commutator(h, basis[j])
            coeffs = _expand_in_basis(comm, basis)
            if not coeffs:
                coord.append(0)
            elif set(coeffs) == {j}:
                coord.append(coeffs[j])
            else:
                raise ValueError("basis vector is not a Cartan eigenvector")
        weights.append(tuple(coord))
    return LieAlgebra(
        name=name, dim=dim, ss_rank=ss_rank, basis_labels=labels,
        basis_matrices=basis, structure_constants=constants,
        cartan_indices=cartan_idx, raising_indices=raising_idx,
        weights=weights, weight_coroots=coroots)


def _unit(n, i, j):
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def build_sl(n: int) -> LieAlgebra:
    """sl_n in the weight basis {e_i^j (i != j), h_i = e_i^i - e_(i+1)^(i+1)}."""
    if n < 2:
        raise ValueError("sl_n needs n >= 2")
    basis, labels = [], []
    cartan_idx, positions = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                if i < n:
                    h = _unit(n, i - 1, i - 1)
                    h[i][i] = -1
                    cartan_idx.append(len(basis))
                    basis.append(h)
                    labels.append(f"h{i}")
                    positions.append((i, i))
            else:
                basis.append(_unit(n, i - 1, j - 1))
                labels.append(f"e{i}{j}")
                positions.append((i, j))
    # simple raising operators e_i^(i+1) first, then the other strict uppers
    idx_of = {pos: k for k, pos in enumerate(positions)}
    raising = [idx_of[(i, i + 1)] for i in range(1, n)]
    raising += [idx_of[(i, j)] for (i, j) in positions
                if i < j and j != i + 1]
    coroots = [basis[k] for k in cartan_idx]
    return _finish(f"sl{n}", n, n - 1, labels, basis, cartan_idx, raising, coroots)


def build_so(n: int) -> LieAlgebra:
    """so_n for the antidiagonal form: X such that X^T J + J X = 0.

    Basis vectors are F_ij = e_i^j - e_(n+1-j)^(n+1-i) for positions with
    i + j <= n, plus the diagonal Cartans h_i = e_i^i - e_(n+1-i)^(n+1-i).
    Weights are epsilon-coordinates (eigenvalues of the diagonal Cartans).
    """
    if n < 3:
        raise ValueError("so_n needs n >= 3")
    rank = n // 2
    basis, labels, cartan_idx, positions = [], [], [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                if i <= rank:
                    m = _unit(n, i - 1, i - 1)
                    m[n - i][n - i] = -1
                    cartan_idx.append(len(basis))
                    basis.append(m)
                    labels.append(f"h{i}")
                    positions.append((i, i))
            elif i + j <= n:
                m = _unit(n, i - 1, j - 1)
                m[n - j][n - i] -= 1
                basis.append(m)
                labels.append(f"F{i}{j}")
                positions.append((i, j))
    coroots = [basis[k] for k in cartan_idx]
    # positive roots: first nonzero epsilon-coordinate positive
    def eps_weight(m):
        out = []
        for h in coroots:
            comm = _commutator(h, m)
            flat = [(r, c) for r in range(n) for c in range(n) if m[r][c] != 0]
            r0, c0 = flat[0]
            out.append(comm[r0][c0] // m[r0][c0])
        return tuple(out)

    weights = {k: eps_weight(basis[k]) for k in range(len(basis))
               if k not in cartan_idx}
    positive = [k for k, w in weights.items()
                if next((x for x in w if x != 0), 0) > 0]
    height = {}
    simple = _simple_roots_so(n, rank)
    for k in positive:
        height[k] = _root_height(weights[k], simple)
    positive.sort(key=lambda k: (height[k], weights[k]))
    return _finish(f"so{n}", n, rank, labels, basis, cartan_idx, positive, coroots)


def _simple_roots_so(n, rank):
    """Simple roots of so_n in epsilon-coordinates (split form)."""
    simple = []
    for i in range(rank - 1):
        r = [0] * rank
        r[i], r[i + 1] = 1, -1
        simple.append(tuple(r))
    last = [0] * rank
    if n % 2 == 1:  # B_rank: short root eps_rank
        last[rank - 1] = 1
    else:  # D_rank: eps_(rank-1) + eps_rank
        if rank >= 2:
            last[rank - 2] = 1
        last[rank - 1] = 1
    simple.append(tuple(last))
    return simple


def _root_height(w, simple):
    """Sum of coefficients of w over the simple roots (exact solve)."""
    coeffs = solve_in_span([list(s) for s in simple], list(w))
    if coeffs is None:
        raise ValueError(f"{w} is not in the root lattice span")
    return sum(coeffs)


def structure_tensor(g: LieAlgebra, field_kind: str = "rational"):
    """Dense order-3 structure tensor with entry (i,j,k) = A_ij^k."""
    from .tensor3 import Tensor3  # local import to avoid a cycle
    return Tensor3.from_structure_constants(g, field_kind)


def dual_identification(g: LieAlgebra) -> Matrix:
    """Coordinate matrix of X -> -X^T in the algebra's basis."""
    n = len(g.basis_matrices[0])
    cols = []
    for bm in g.basis_matrices:
        neg_t = [[-bm[c][r] for c in range(n)] for r in range(n)]
        coeffs = _expand_in_basis(neg_t, g.basis_matrices)
        col = [0] * g.dim
        for k, c in coeffs.items():
            col[k] = c
        cols.append(col)
    return Matrix(g.dim, g.dim,
                  [cols[j][i] for i in range(g.dim) for j in range(g.dim)])


def raising_action(g: LieAlgebra, raiser: int, signature) -> Matrix:
    """Action of basis vector `raiser` on a tensor product of modules.

    `signature` lists one tag per tensor factor: 'adjoint' acts by ad,
    'dual' by the negative transpose of ad (the coadjoint action).  The
    result acts on coordinates of the tensor product, factors ordered as
    given, indices row-major.
    """
    if raiser not in range(g.dim):
        raise ValueError(f"invalid basis index {raiser}")
    ad = g.ad_matrix(raiser)
    mats = []
    for tag in signature:
        if tag == "adjoint":
            mats.append(ad)
        elif tag == "dual":
            mats.append([[-ad[j][i] for j in range(g.dim)] for i in range(g.dim)])
        else:
            raise ValueError(f"unknown factor tag {tag!r}")
    dim_total = g.dim ** len(mats)
    entries = [0] * (dim_total * dim_total)
    strides = [g.dim ** (len(mats) - 1 - s) for s in range(len(mats))]
    # Leibniz rule: sum over factors of (I x ... x M_s x ... x I)
    for s, m in enumerate(mats):
        stride = strides[s]
        for col in range(dim_total):
            j = (col // stride) % g.dim
            base = col - j * stride
            for i in range(g.dim):
                if m[i][j]:
                    row = base + i * stride
                    entries[row * dim_total + col] += m[i][j]
    return Matrix(dim_total, dim_total, entries)


def module_weights(g: LieAlgebra, signature) -> list[tuple[int, ...]]:
    """Weight of each product-basis vector, row-major over the factors."""
    factor_wts = []
    for tag in signature:
        if tag == "adjoint":
            factor_wts.append(g.weights)
        elif tag == "dual":
            factor_wts.append([tuple(-x for x in w) for w in g.weights])
        else:
            raise ValueError(f"unknown factor tag {tag!r}")
    out = []
    total = g.dim ** len(signature)
    for flat in range(total):
        w = [0] * g.ss_rank
        for s in range(len(signature)):
            pos = (flat // (g.dim ** (len(signature) - 1 - s))) % g.dim
            fw = factor_wts[s][pos]
            w = [a + b for a, b in zip(w, fw)]
        out.append(tuple(w))
    return out
