"""Integral (and mod-p) homology of finite simplicial sets.

Chains are normalized: the degree-k module is free on the nondegenerate
k-generators and faces landing on degenerate simplices contribute zero to
the boundary.  Homology groups come with explicit cycle representatives,
which makes induced maps computable; the isomorphism test presents the
kernel and cokernel of an induced map and reduces those presentations,
so torsion is handled exactly rather than by comparing invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .snf import IntMatrix, smith_normal_form
from .sset import SimplicialMap, SimplicialSet

Z = 0  # coefficient tag: 0 means the integers, p >= 2 means Z/p


# ---------------------------------------------------------------------------
# Chain complexes
# ---------------------------------------------------------------------------

@dataclass
class ChainComplex:
    """Boundary matrices of the normalized chains, indexed by generators."""

    max_dim: int
    gens: dict[int, tuple]            # degree -> ordered generator ids
    index: dict[int, dict[Any, int]]  # degree -> generator -> column
    boundaries: dict[int, IntMatrix]  # k -> matrix C_k -> C_{k-1}
    ring: int = Z

    def dim(self, k: int) -> int:
        return len(self.gens.get(k, ()))

    def boundary(self, k: int) -> IntMatrix:
        """The boundary map out of degree k (zero matrix off the range)."""
        if k in self.boundaries:
            return self.boundaries[k]
        rows = self.dim(k - 1)
        return IntMatrix(rows, self.dim(k))


def normalized_chains(X: SimplicialSet, ring: int = Z) -> ChainComplex:
    """Normalized chain complex of X; verifies that boundaries compose to zero."""
    key = ("chains", ring)
    if key in X._cache:
        return X._cache[key]
    gens = {k: X.gens(k) for k in range(X.max_dim + 1)}
    index = {k: {g: t for t, g in enumerate(gens[k])} for k in gens}
    boundaries = {}
    for k in range(1, X.max_dim + 1):
        m = IntMatrix(len(gens[k - 1]), len(gens[k]))
        for j, g in enumerate(gens[k]):
            col: dict[int, int] = {}
            sign = 1
            for r in X.faces[g]:
                if not r.is_degenerate():
                    i = index[k - 1][r.gen]
                    col[i] = col.get(i, 0) + sign
                sign = -sign
            for i, v in col.items():
                m[i, j] = v
        boundaries[k] = m
    for k in range(2, X.max_dim + 1):
        if not boundaries[k - 1].matmul(boundaries[k]).is_zero():
            raise ValueError(f"boundary squared is nonzero in degree {k}")
    cc = ChainComplex(X.max_dim, gens, index, boundaries, ring)
    X._cache[key] = cc
    return cc


# ---------------------------------------------------------------------------
# Homology groups over Z
# ---------------------------------------------------------------------------

@dataclass
class HomologyGroup:
    """Rank, invariant factors and explicit cycle representatives."""

    degree: int
    free_rank: int
    torsion: list[int]
    basis: list[dict[Any, int]]  # cycles as generator -> coefficient
    valid: bool
    ring: int = Z

    @property
    def invariants(self) -> list[int]:
        """Per basis element: its order (0 for infinite)."""
        return self.torsion + [0] * self.free_rank

    def summary(self) -> tuple[int, tuple[int, ...]]:
        return (self.free_rank, tuple(self.torsion))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return f"H_{self.degree} = " + (" + ".join(parts) if parts else "0")


class _DegreeData:
    """SNF bookkeeping for one degree of one complex (integer coefficients)."""

    def __init__(self, cc: ChainComplex, k: int):
        self.k = k
        self.n = cc.dim(k)
        d_k = cc.boundary(k) if k >= 1 else IntMatrix(0, self.n)
        d_k1 = cc.boundary(k + 1)
        self.snf1 = smith_normal_form(d_k)
        self.rank1 = self.snf1.rank
        self.z = self.n - self.rank1
        y = IntMatrix(self.z, d_k1.ncols)
        v1_inv = self.snf1.v_inv
        for j in range(d_k1.ncols):
            col = d_k1.column(j)
            t = v1_inv.apply(col)
            for i, v in t.items():
                if i < self.rank1:
                    raise ValueError("boundary image is not a cycle")
                y[i - self.rank1, j] = v
        self.snf2 = smith_normal_form(y)
        self.rank2 = self.snf2.rank
        # generator j of ker/im has order diag[j] (0 beyond the rank);
        # order-1 generators are dropped.
        orders = list(self.snf2.diagonal) + [0] * (self.z - len(self.snf2.diagonal))
        self.kept = [j for j in range(self.z) if orders[j] != 1]
        self.orders = [orders[j] for j in self.kept]

    def cycle_of(self, j: int) -> dict[int, int]:
        """The j-th kept generator as a cycle in chain coordinates."""
        col = self.snf2.u_inv.column(self.kept[j])
        shifted = {self.rank1 + i: v for i, v in col.items()}
        return self.snf1.v.apply(shifted)

    def coords(self, w: dict[int, int]) -> list[int]:
        """Coordinates of a cycle in the kept homology generators."""
        t = self.snf1.v_inv.apply(w)
        if any(i < self.rank1 for i in t):
            raise ValueError("vector is not a cycle")
        y = {i - self.rank1: v for i, v in t.items()}
        c = self.snf2.u.apply(y)
        out = []
        for pos, j in enumerate(self.kept):
            v = c.get(j, 0)
            d = self.orders[pos]
            out.append(v % d if d else v)
        return out


def _degree_data(X: SimplicialSet, k: int) -> _DegreeData:
    key = ("hdata", k)
    if key not in X._cache:
        X._cache[key] = _DegreeData(normalized_chains(X), k)
    return X._cache[key]


def homology(X: SimplicialSet, k: int, coefficients: int = Z) -> HomologyGroup:
    """H_k of X; valid is False above the truncation-guaranteed range."""
    valid = k <= X.max_dim - 1
    if k < 0 or k > X.max_dim:
        return HomologyGroup(k, 0, [], [], valid, coefficients)
    key = ("hom", k, coefficients)
    if key in X._cache:
        return X._cache[key]
    if coefficients:
        group = _homology_mod_p(X, k, coefficients, valid)
    else:
        data = _degree_data(X, k)
        cc = normalized_chains(X)
        torsion = [d for d in data.orders if d > 1]
        free_rank = sum(1 for d in data.orders if d == 0)
        basis = []
        for j in range(len(data.kept)):
            cyc = data.cycle_of(j)
            basis.append({cc.gens[k][i]: v for i, v in cyc.items()})
        group = HomologyGroup(k, free_rank, torsion, basis, valid)
    X._cache[key] = group
    return group


def homology_table(X: SimplicialSet, up_to: int, coefficients: int = Z) -> list[HomologyGroup]:
    return [homology(X, k, coefficients) for k in range(up_to + 1)]


def is_acyclic(X: SimplicialSet, up_to: int, coefficients: int = Z) -> bool:
    """True when the reduced homology vanishes through the given degree."""
    if X.is_empty():
        return False
    h0 = homology(X, 0, coefficients)
    if h0.summary() != (1, ()):
        return False
    return all(homology(X, k, coefficients).is_trivial() for k in range(1, up_to + 1))


# ---------------------------------------------------------------------------
# Induced maps and the isomorphism test
# ---------------------------------------------------------------------------

def chain_map_matrix(f: SimplicialMap, k: int) -> IntMatrix:
    """The degree-k chain map: images through f, degenerate images dropped."""
    cs, ct = normalized_chains(f.source), normalized_chains(f.target)
    m = IntMatrix(ct.dim(k), cs.dim(k))
    for j, g in enumerate(cs.gens.get(k, ())):
        r = f.assignment[g]
        if not r.is_degenerate():
            m[ct.index[k][r.gen], j] = 1
    return m


@dataclass
class InducedMap:
    """Images of the source homology basis in target homology coordinates."""

    degree: int
    matrix: list[list[int]]       # one column per source generator
    src_invariants: list[int]     # order per source generator (0 = infinite)
    dst_invariants: list[int]
    ring: int = Z

    def compose(self, other: "InducedMap") -> "InducedMap":
        """self after other, reducing torsion coordinates."""
        cols = []
        for col in other.matrix:
            out = [0] * len(self.dst_invariants)
            for t, v in enumerate(col):
                for i in range(len(out)):
                    out[i] += self.matrix[t][i] * v
            cols.append(_reduce_coords(out, self.dst_invariants))
        return InducedMap(self.degree, cols, other.src_invariants,
                          self.dst_invariants, self.ring)


def _reduce_coords(col: list[int], invariants: list[int]) -> list[int]:
    return [v % d if d else v for v, d in zip(col, invariants)]


def induced(f: SimplicialMap, k: int, coefficients: int = Z) -> InducedMap:
    """The map induced by f on degree-k homology."""
    if coefficients:
        return _induced_mod_p(f, k, coefficients)
    src, dst = _degree_data(f.source, k), _degree_data(f.target, k)
    t = chain_map_matrix(f, k)
    cols = []
    for j in range(len(src.kept)):
        w = t.apply(src.cycle_of(j))
        cols.append(_reduce_coords(dst.coords(w), dst.orders))
    return InducedMap(k, cols, list(src.orders), list(dst.orders))


def _column_matrix(cols: list[dict[int, int]], nrows: int) -> IntMatrix:
    m = IntMatrix(nrows, len(cols))
    for j, col in enumerate(cols):
        for i, v in col.items():
            m[i, j] = v
    return m


def _presentation_trivial(rel: IntMatrix) -> tuple[bool, list[int]]:
    """Is the cokernel of a relation matrix the trivial group?"""
    form = smith_normal_form(rel)
    factors = form.invariant_factors()
    trivial = form.rank == rel.nrows and all(d == 1 for d in factors)
    return trivial, [d for d in factors if d != 1] + [0] * (rel.nrows - form.rank)


def induced_map_kernel_cokernel(ind: InducedMap) -> tuple[list[int], list[int]]:
    """Invariant factors (0 = Z) of the kernel and cokernel presentations."""
    m_x, m_y = len(ind.src_invariants), len(ind.dst_invariants)
    mat = IntMatrix(m_y, m_x)
    for j, col in enumerate(ind.matrix):
        for i, v in enumerate(col):
            if v:
                mat[i, j] = v
    rel_x = IntMatrix(m_x, m_x)
    for j, d in enumerate(ind.src_invariants):
        if d:
            rel_x[j, j] = d
    rel_y = IntMatrix(m_y, m_y)
    for j, d in enumerate(ind.dst_invariants):
        if d:
            rel_y[j, j] = d

    # cokernel: Z^{m_y} modulo the image of [matrix | target relations]
    coker_rel = IntMatrix(m_y, m_x + m_y)
    for i, j, v in mat.entries():
        coker_rel[i, j] = v
    for i, j, v in rel_y.entries():
        coker_rel[i, m_x + j] = v
    _, coker = _presentation_trivial(coker_rel)

    # kernel: lattice of x with (matrix)x in im(target relations), modulo
    # the source relations.  Generators: projections of the block kernel
    # plus the source relation columns; relations: their syzygies plus the
    # statement that source relations vanish.
    block = IntMatrix(m_y, m_x + m_x + m_y)
    for i, j, v in mat.entries():
        block[i, j] = v
    for i, j, v in mat.matmul(rel_x).entries():
        block[i, m_x + j] = v
    for i, j, v in rel_y.entries():
        block[i, 2 * m_x + j] = v
    # generator list: w_j = x-part of block-kernel columns restricted to the
    # first m_x coordinates, and r_j = rel_x columns
    kform = smith_normal_form(block)
    wcols = []
    for col in kform.kernel_columns():
        proj = {}
        for i, v in col.items():
            if i < m_x:
                proj[i] = proj.get(i, 0) + v
            elif i < 2 * m_x:
                # contribution of rel_x-shaped solution columns
                d = ind.src_invariants[i - m_x]
                if d:
                    proj[i - m_x] = proj.get(i - m_x, 0) + v * d
        wcols.append({i: v for i, v in proj.items() if v})
    rcols = [rel_x.column(j) for j in range(m_x)]
    gens = wcols + rcols
    gmat = _column_matrix(gens, m_x)
    syz = smith_normal_form(gmat).kernel_columns()
    s = len(gens)
    pres = IntMatrix(s, len(syz) + m_x)
    for j, col in enumerate(syz):
        for i, v in col.items():
            pres[i, j] = v
    for j in range(m_x):
        pres[len(wcols) + j, len(syz) + j] = 1
    _, kernel = _presentation_trivial(pres)
    return kernel, coker


@dataclass
class IsoCertificate:
    degree: int
    src: tuple[int, tuple[int, ...]]
    dst: tuple[int, tuple[int, ...]]
    kernel: list[int]
    cokernel: list[int]
    ok: bool


def is_homology_iso(f: SimplicialMap, up_to: int,
                    coefficients: int = Z) -> tuple[bool, list[IsoCertificate]]:
    """Degree-by-degree isomorphism test through explicit induced maps."""
    certificates = []
    verdict = True
    for k in range(up_to + 1):
        hs = homology(f.source, k, coefficients)
        ht = homology(f.target, k, coefficients)
        ind = induced(f, k, coefficients)
        if coefficients:
            ok = _gfp_invertible(ind, coefficients)
            kernel = [] if ok else [coefficients]
            coker = []
        else:
            kernel, coker = induced_map_kernel_cokernel(ind)
            ok = not kernel and not coker
        certificates.append(IsoCertificate(k, hs.summary(), ht.summary(),
                                           kernel, coker, ok))
        verdict = verdict and ok
    return verdict, certificates


# ---------------------------------------------------------------------------
# Mod-p coefficients
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class _GFpSolver:
    """Dense row-reduction workspace over Z/p, p prime."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"coefficients must be the integers or Z/p for a prime p, not {p}")
        self.p = p

    def rref(self, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
        p = self.p
        rows = [[v % p for v in r] for r in rows]
        pivots = []
        r = 0
        ncols = len(rows[0]) if rows else 0
        for c in range(ncols):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = pow(rows[r][c], p - 2, p)
            rows[r] = [(v * inv) % p for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    coef = rows[i][c]
                    rows[i] = [(a - coef * b) % p for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows, pivots

    def kernel_basis(self, mat: list[list[int]], ncols: int) -> list[list[int]]:
        if not mat:
            return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
        rows, pivots = self.rref(mat)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for c in free:
            vec = [0] * ncols
            vec[c] = 1
            for r, pc in enumerate(pivots):
                vec[pc] = (-rows[r][c]) % self.p
            basis.append(vec)
        return basis

    def solve(self, cols: list[list[int]], w: list[int]) -> list[int] | None:
        """One solution of (columns) x = w, or None."""
        n = len(w)
        aug = [[cols[j][i] for j in range(len(cols))] + [w[i]] for i in range(n)]
        rows, pivots = self.rref(aug)
        sol = [0] * len(cols)
        for r, pc in enumerate(pivots):
            if pc == len(cols):
                return None
            sol[pc] = rows[r][len(cols)]
        return sol


class _GFpData:
    """Homology data over Z/p for one space and degree."""

    def __init__(self, X: SimplicialSet, k: int, p: int):
        cc = normalized_chains(X)
        self.p = p
        self.n = cc.dim(k)
        solver = _GFpSolver(p)
        d_k = cc.boundary(k) if k >= 1 else IntMatrix(0, self.n)
        rows = [[d_k[i, j] % p for j in range(self.n)] for i in range(d_k.nrows)]
        kernel = solver.kernel_basis(rows, self.n)
        d_k1 = cc.boundary(k + 1)
        img = [[d_k1[i, j] % p for i in range(self.n)] for j in range(d_k1.ncols)]
        # grow an image basis, then extend by kernel vectors; the extension
        # vectors represent homology classes
        basis: list[list[int]] = []
        echelon: list[list[int]] = []
        self.img_size = 0

        def try_add(vec) -> bool:
            row = list(vec)
            for e in echelon:
                lead = next(i for i, v in enumerate(e) if v)
                if row[lead]:
                    c = row[lead]
                    row = [(a - c * b) % p for a, b in zip(row, e)]
            if any(row):
                lead = next(i for i, v in enumerate(row) if v)
                inv = pow(row[lead], p - 2, p)
                echelon.append([(v * inv) % p for v in row])
                basis.append(list(vec))
                return True
            return False

        for vec in img:
            if try_add(vec):
                self.img_size += 1
        self.hom_gens = [vec for vec in kernel if try_add(vec)]
        self.basis = basis  # image basis followed by homology generators
        self.solver = solver

    def coords(self, w: list[int]) -> list[int]:
        cols = [[c[i] for i in range(self.n)] for c in self.basis]
        sol = self.solver.solve(cols, [v % self.p for v in w])
        if sol is None:
            raise ValueError("vector is not a cycle mod p")
        return sol[self.img_size:]


def _gfp_data(X: SimplicialSet, k: int, p: int) -> _GFpData:
    key = ("gfp", k, p)
    if key not in X._cache:
        X._cache[key] = _GFpData(X, k, p)
    return X._cache[key]


def _homology_mod_p(X: SimplicialSet, k: int, p: int, valid: bool) -> HomologyGroup:
    data = _gfp_data(X, k, p)
    cc = normalized_chains(X)
    basis = []
    for vec in data.hom_gens:
        basis.append({cc.gens[k][i]: v for i, v in enumerate(vec) if v})
    return HomologyGroup(k, len(data.hom_gens), [], basis, valid, p)


def _induced_mod_p(f: SimplicialMap, k: int, p: int) -> InducedMap:
    src, dst = _gfp_data(f.source, k, p), _gfp_data(f.target, k, p)
    t = chain_map_matrix(f, k)
    cols = []
    for vec in src.hom_gens:
        w = t.apply({i: v for i, v in enumerate(vec) if v})
        dense = [0] * dst.n
        for i, v in w.items():
            dense[i] = v % p
        cols.append(dst.coords(dense))
    inv = [p] * len(src.hom_gens)
    return InducedMap(k, cols, inv, [p] * len(dst.hom_gens), p)


def _gfp_invertible(ind: InducedMap, p: int) -> bool:
    m, n = len(ind.dst_invariants), len(ind.src_invariants)
    if m != n:
        return False
    if n == 0:
        return True
    rows = [[ind.matrix[j][i] % p for j in range(n)] for i in range(m)]
    _, pivots = _GFpSolver(p).rref(rows)
    return len(pivots) == n
