"""Finite-field module oracle for (valued) quivers.

Modules are species representations: the space at vertex i is a vector space
over D_i = F_{q^{d_i}} and the map along an arrow h is a D_{t(h)}-linear map
M_h (x) V_{s(h)} -> V_{t(h)}, stored as a base-field matrix of shape
(d_t n_t) x (m_h n_s).  For trivial valuations this is an ordinary quiver
representation.

Catalogs list exactly one representative per isomorphism class of each
requested dimension vector.  Completeness is certified exactly, never
assumed: breadth-first orbit enumeration partitions the whole representation
space, and synthesized catalogs (known indecomposable families) must pass
the mass formula sum |G|/|Aut M| = |rep space| whenever the space is small
enough to count.  Classification of arbitrary modules against a catalog goes
through Hom-dimension profiles against a separating probe set, which the
build step verifies to be injective on every dimension slice.
"""

from __future__ import annotations

import itertools
import json
import os
from fractions import Fraction

from .cartan import euler_form

#: default resource bound: refuse when q^(total module dimension) > 2^budget
DEFAULT_BUDGET = 8

#: documented fixed defining polynomials, low-degree coefficients first
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (3, 3): (1, 2, 0, 1),     # x^3 + 2x + 1
    (5, 2): (2, 0, 1),        # x^2 + 2
    (7, 2): (1, 0, 1),        # x^2 + 1
}


class BudgetError(RuntimeError):
    """An enumeration request exceeded the configured resource budget."""


class OracleError(RuntimeError):
    """An internal consistency check of the oracle failed."""


# ---------------------------------------------------------------------------
# finite fields, elements encoded as integers 0..q-1 (base-p digit vectors)
# ---------------------------------------------------------------------------

class GF:
    """The finite field F_{p^deg} with a fixed defining polynomial.

    Elements are integers whose base-p digits are the polynomial coefficients,
    so 0 and 1 are the additive and multiplicative units and, for deg > 1,
    the integer p encodes the generator x.
    """

    def __init__(self, p, deg=1):
        self.p = p
        self.deg = deg
        self.q = p ** deg
        if deg == 1:
            self._red = None
        else:
            if (p, deg) not in IRREDUCIBLE:
                raise ValueError("no defining polynomial on record for GF(%d^%d)" % (p, deg))
            self._red = IRREDUCIBLE[(p, deg)]
        self._mul = [[self._mul_slow(a, b) for b in range(self.q)] for a in range(self.q)]
        self._add = [[self._add_slow(a, b) for b in range(self.q)] for a in range(self.q)]
        self._neg = [self._neg_slow(a) for a in range(self.q)]
        self._inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def coords(self, a):
        out = []
        for _ in range(self.deg):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coords(self, cs):
        a = 0
        for c in reversed(cs):
            a = a * self.p + (c % self.p)
        return a

    def _add_slow(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords(tuple((x + y) % self.p for x, y in zip(ca, cb)))

    def _neg_slow(self, a):
        return self.from_coords(tuple((-x) % self.p for x in self.coords(a)))

    def _mul_slow(self, a, b):
        if self.deg == 1:
            return (a * b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * self.deg - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce by the defining polynomial (monic)
        red = self._red
        for k in range(len(prod) - 1, self.deg - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(self.deg):
                    prod[k - self.deg + j] = (prod[k - self.deg + j] - c * red[j]) % self.p
        return self.from_coords(tuple(prod[: self.deg]))

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self._inv[a]

    def mult_matrix(self, a):
        """deg x deg matrix over F_p of multiplication by a, basis 1, x, ..."""
        cols = []
        col_elt = a
        gen = self.p if self.deg > 1 else 1
        for _ in range(self.deg):
            cols.append(self.coords(col_elt))
            col_elt = self.mul(col_elt, gen)
        return tuple(tuple(cols[j][i] for j in range(self.deg)) for i in range(self.deg))

    def __repr__(self):
        return "GF(%d)" % self.q if self.deg == 1 else "GF(%d^%d)" % (self.p, self.deg)


_FIELDS = {}


def field(p, deg=1):
    key = (p, deg)
    if key not in _FIELDS:
        _FIELDS[key] = GF(p, deg)
    return _FIELDS[key]


def gl_order(q, n):
    """|GL_n(F_q)|."""
    out = 1
    for j in range(n):
        out *= q ** n - q ** j
    return out


# ---------------------------------------------------------------------------
# matrices over a GF, stored as tuples of tuples of element codes
# ---------------------------------------------------------------------------

def m_zero(r, c):
    return tuple((0,) * c for _ in range(r))

def m_id(F, n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

def m_add(F, A, B):
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))

def m_mul(F, A, B):
    if not A or not B:
        return m_zero(len(A), len(B[0]) if B else 0)
    cols = len(B[0])
    inner = len(B)
    Bt = tuple(tuple(B[k][j] for k in range(inner)) for j in range(cols))
    mul = F._mul
    add = F._add
    out = []
    for ra in A:
        row = []
        for cb in Bt:
            s = 0
            for a, b in zip(ra, cb):
                if a and b:
                    s = add[s][mul[a][b]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)

def m_scale(F, c, A):
    return tuple(tuple(F.mul(c, a) for a in row) for row in A)

def m_stack(rows_list):
    out = []
    for rows in rows_list:
        out.extend(rows)
    return tuple(out)

def m_transpose(A):
    if not A:
        return ()
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


def rref(F, A):
    """Row-reduce; returns (R, pivot_columns)."""
    R = [list(row) for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if R[rr][c]:
                piv = rr
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for rr in range(rows):
            if rr != r and R[rr][c]:
                f = R[rr][c]
                R[rr] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[rr], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in R), tuple(pivots)


def m_rank(F, A):
    return len(rref(F, A)[1])


def kernel_basis(F, A):
    """Basis of the right kernel {x : A x = 0}, as rows."""
    if not A:
        return ()
    cols = len(A[0])
    R, pivots = rref(F, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = F.neg(R[r][fc])
        basis.append(tuple(vec))
    return tuple(basis)


def in_rowspace(F, R, pivots, v):
    """Membership of v in the row space given its rref R with pivot columns."""
    v = list(v)
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, R[r])]
    return not any(v)


def rowspace_coords(F, rows, v):
    """Coefficients x with x . rows = v, or None if v is outside the span."""
    if not rows:
        return () if not any(v) else None
    A = m_transpose(rows)
    aug = tuple(row + (val,) for row, val in zip(A, v))
    R, pivots = rref(F, aug)
    ncols = len(rows)
    if ncols in pivots:
        return None
    sol = [0] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = R[r][ncols]
    # consistency: rows may be dependent; verify
    chk = [0] * len(v)
    for coef, row in zip(sol, rows):
        if coef:
            chk = [F.add(x, F.mul(coef, y)) for x, y in zip(chk, row)]
    if tuple(chk) != tuple(v):
        return None
    return tuple(sol)


def subspaces(F, n, k):
    """All k-dimensional subspaces of F^n as reduced-echelon basis rows."""
    if k == 0:
        yield ()
        return
    if k > n:
        return
    for pivots in itertools.combinations(range(n), k):
        free_slots = []
        for i in range(k):
            for c in range(pivots[i] + 1, n):
                if c not in pivots:
                    free_slots.append((i, c))
        for vals in itertools.product(range(F.q), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = 1
            for (i, c), v in zip(free_slots, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def all_subspaces(F, n):
    for k in range(n + 1):
        yield from subspaces(F, n, k)


# ---------------------------------------------------------------------------
# finite modules
# ---------------------------------------------------------------------------

class FiniteModule:
    """A species representation of a valued-quiver shape over a finite field.

    dims[i] is the dimension of the vertex space over D_i; maps[h] is the
    base-field matrix of the structure map of arrow h, of shape
    (d_t * n_t) x (m_h * n_s).
    """

    __slots__ = ("shape", "F", "dims", "maps", "_key")

    def __init__(self, shape, F, dims, maps):
        self.shape = shape
        self.F = F
        self.dims = tuple(int(x) for x in dims)
        self.maps = {h.id: tuple(tuple(int(x) for x in row) for row in maps[h.id])
                     for h in shape.arrows}
        self._key = None
        for h in shape.arrows:
            s, t = shape.index[h.src], shape.index[h.tgt]
            rows = shape.d[h.tgt] * self.dims[t]
            cols = h.m * self.dims[s]
            mat = self.maps[h.id]
            if len(mat) != rows or (rows and len(mat[0]) != cols):
                raise ValueError("map of arrow %r has the wrong shape" % (h.id,))

    def key(self):
        if self._key is None:
            self._key = (self.dims, tuple(self.maps[h.id] for h in self.shape.arrows))
        return self._key

    def dim_k(self):
        """Total dimension over the base field."""
        return sum(self.shape.d[i] * self.dims[self.shape.index[i]]
                   for i in self.shape.vertices)

    def vertex_field(self, i):
        d = self.shape.d[i]
        return self.F if d == 1 else field(self.F.p, self.F.deg * d)

    def __repr__(self):
        return "FiniteModule(dim=%s over GF(%d))" % (self.dims, self.F.q)


def zero_module(shape, F):
    dims = (0,) * len(shape.vertices)
    return FiniteModule(shape, F, dims, {h.id: () for h in shape.arrows})


def simple_module(shape, F, vertex):
    dims = [0] * len(shape.vertices)
    dims[shape.index[vertex]] = 1
    maps = {}
    for h in shape.arrows:
        s, t = shape.index[h.src], shape.index[h.tgt]
        rows = shape.d[h.tgt] * dims[t]
        cols = h.m * dims[s]
        maps[h.id] = tuple((0,) * cols for _ in range(rows))
    return FiniteModule(shape, F, dims, maps)


def direct_sum(M, N):
    shape, F = M.shape, M.F
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    maps = {}
    for h in shape.arrows:
        s, t = shape.index[h.src], shape.index[h.tgt]
        d_t = shape.d[h.tgt]
        A, B = M.maps[h.id], N.maps[h.id]
        ra, ca = d_t * M.dims[t], h.m * M.dims[s]
        rb, cb = d_t * N.dims[t], h.m * N.dims[s]
        # the source space is m_h blocks of the vertex space; interleave
        # blockwise so the summand structure is preserved per block
        rows = []
        blocks_a = ca // max(h.m, 1) if h.m else 0
        na_s, nb_s = M.dims[s], N.dims[s]
        ds = shape.d[h.src]
        for r in range(ra + rb):
            src_is_a = r < ra
            src_row = A[r] if src_is_a else B[r - ra]
            row = []
            for u in range(h.m // ds if ds else 0):
                # block u of A-source columns then of B-source columns
                if src_is_a:
                    row.extend(src_row[u * ds * na_s:(u + 1) * ds * na_s])
                    row.extend([0] * (ds * nb_s))
                else:
                    row.extend([0] * (ds * na_s))
                    row.extend(src_row[u * ds * nb_s:(u + 1) * ds * nb_s])
            rows.append(tuple(row))
        maps[h.id] = tuple(rows)
    return FiniteModule(shape, F, dims, maps)


def module_from_plain(shape, F, dims, plain_maps):
    """Build a module of a trivially valued shape from ordinary matrices."""
    return FiniteModule(shape, F, dims, plain_maps)


# -- Hom spaces -------------------------------------------------------------

def _unknown_patterns(shape, F, dims_N, dims_M):
    """Base-field matrix patterns of the Hom-space unknowns, per vertex.

    Unknown (i, a, b, c): entry (a,b) of f_i gets the c-th power of the
    generator of D_i; its base-field pattern is mult_matrix placed at block
    (a, b).  Returns (count, index_of, patterns) with patterns[i] a list of
    base-field matrices.
    """
    patterns = {}
    offsets = {}
    total = 0
    for i in shape.vertices:
        ii = shape.index[i]
        d = shape.d[i]
        Di = F if d == 1 else field(F.p, F.deg * d)
        rows_n, cols_n = dims_N[ii], dims_M[ii]
        plist = []
        gen = Di.p if d > 1 else 1
        powers = [1]
        for _ in range(d - 1):
            powers.append(Di.mul(powers[-1], gen))
        for a in range(rows_n):
            for b in range(cols_n):
                for c in range(d):
                    blk = Di.mult_matrix(powers[c]) if d > 1 else ((1,),)
                    mat = [[0] * (d * cols_n) for _ in range(d * rows_n)]
                    for r in range(d):
                        for cc in range(d):
                            mat[a * d + r][b * d + cc] = blk[r][cc]
                    plist.append(tuple(tuple(r) for r in mat))
        patterns[i] = plist
        offsets[i] = total
        total += len(plist)
    return total, offsets, patterns


def hom_space(M, N):
    """Base-field basis of Hom(M, N); each element is {vertex: base matrix}.

    The returned matrices are the base-field forms f_i^p of shape
    (d_i n_i^N) x (d_i n_i^M); the count equals dim_k Hom(M, N).
    """
    shape, F = M.shape, M.F
    total, offsets, patterns = _unknown_patterns(shape, F, N.dims, M.dims)
    if total == 0:
        return []
    rows = []
    for h in shape.arrows:
        s, t = h.src, h.tgt
        si, ti = shape.index[s], shape.index[t]
        ds = shape.d[s]
        blocks = h.m // ds
        thM, thN = M.maps[h.id], N.maps[h.id]
        n_eq_rows = shape.d[t] * N.dims[ti]
        n_eq_cols = h.m * M.dims[si]
        if n_eq_rows * n_eq_cols == 0:
            continue
        # condition f_t . thM - thN . (I (x) f_s) = 0; s != t since no loops
        contributions = {}
        for idx, pat in enumerate(patterns[t]):
            contributions[offsets[t] + idx] = m_mul(F, pat, thM)
        for idx, pat in enumerate(patterns[s]):
            lifted = _block_diag(F, pat, blocks)
            contrib = m_mul(F, thN, lifted)
            contributions[offsets[s] + idx] = tuple(tuple(F.neg(x) for x in row)
                                                    for row in contrib)
        for r in range(n_eq_rows):
            for c in range(n_eq_cols):
                row = [0] * total
                for u, contrib in contributions.items():
                    row[u] = contrib[r][c]
                rows.append(tuple(row))
    if not rows:
        sols = tuple(tuple(1 if j == k else 0 for j in range(total)) for k in range(total))
    else:
        sols = kernel_basis(F, tuple(rows))
    out = []
    for vec in sols:
        fs = {}
        for i in shape.vertices:
            ii = shape.index[i]
            d = shape.d[i]
            rn, cn = N.dims[ii], M.dims[ii]
            mat = [[0] * (d * cn) for _ in range(d * rn)]
            for idx, pat in enumerate(patterns[i]):
                coef = vec[offsets[i] + idx]
                if coef:
                    for r in range(d * rn):
                        for c in range(d * cn):
                            if pat[r][c]:
                                mat[r][c] = F.add(mat[r][c], F.mul(coef, pat[r][c]))
            fs[i] = tuple(tuple(r) for r in mat)
        out.append(fs)
    return out


def _block_diag(F, mat, blocks):
    if blocks == 1:
        return mat
    r = len(mat)
    c = len(mat[0]) if r else 0
    out = [[0] * (c * blocks) for _ in range(r * blocks)]
    for u in range(blocks):
        for i in range(r):
            for j in range(c):
                out[u * r + i][u * c + j] = mat[i][j]
    return tuple(tuple(row) for row in out)


def hom_dim(M, N):
    """dim_k Hom(M, N) over the base field."""
    return len(hom_space(M, N))


def end_dim(M):
    return hom_dim(M, M)


def ext_dim(M, N):
    """dim_k Ext^1(M, N) = dim Hom - <dim M, dim N> (hereditary)."""
    e = hom_dim(M, N) - _euler(M.shape, M.dims, N.dims)
    if e < 0:
        raise OracleError("negative Ext dimension; Euler identity violated")
    return e


def _euler(shape, x, y):
    if hasattr(shape, "euler"):
        return shape.euler(x, y)
    return euler_form(shape, x, y)


def is_invertible_hom(M, N, f):
    shape, F = M.shape, M.F
    for i in shape.vertices:
        mat = f[i]
        n = len(mat)
        if n != (len(mat[0]) if n else 0):
            return False
        if n and m_rank(F, mat) != n:
            return False
    return True


def is_isomorphic(M, N):
    """Exhaustive isomorphism test: search an invertible homomorphism."""
    if M.dims != N.dims:
        return False
    basis = hom_space(M, N)
    h = len(basis)
    if h != hom_dim(N, M):
        return False
    F = M.F
    shape = M.shape
    if h == 0:
        return M.dim_k() == 0
    if F.q ** h > 2 ** 22:
        raise BudgetError("isomorphism search space q^%d too large" % h)
    for coeffs in itertools.product(range(F.q), repeat=h):
        f = {}
        for i in shape.vertices:
            acc = None
            for c, b in zip(coeffs, basis):
                if c:
                    term = m_scale(F, c, b[i])
                    acc = term if acc is None else m_add(F, acc, term)
            if acc is None:
                acc = m_zero(len(basis[0][i]), len(basis[0][i][0]) if basis[0][i] else 0)
            f[i] = acc
        if is_invertible_hom(M, N, f):
            return True
    return False


def aut_order_brute(M):
    """|Aut M| by enumerating the endomorphism space (small modules only)."""
    basis = hom_space(M, M)
    h = len(basis)
    F = M.F
    if F.q ** h > 2 ** 20:
        raise BudgetError("automorphism count space q^%d too large" % h)
    count = 0
    shape = M.shape
    for coeffs in itertools.product(range(F.q), repeat=h):
        f = {}
        ok = True
        for i in shape.vertices:
            acc = None
            for c, b in zip(coeffs, basis):
                if c:
                    term = m_scale(F, c, b[i])
                    acc = term if acc is None else m_add(F, acc, term)
            n = shape.d[i] * M.dims[shape.index[i]]
            if acc is None:
                acc = m_zero(n, n)
            f[i] = acc
            if n and m_rank(F, acc) != n:
                ok = False
                break
        if ok:
            count += 1
    return count


# -- submodules, subquotients ------------------------------------------------

def _expand_rows_over_base(F, Di, d, rows, n):
    """Base-field expansion of D_i-basis rows: row j yields rows g^a * r_j.

    Base-field coordinates of D_i^n use per-coordinate blocks of size d, and
    the expanded row of (j, a) sits at index j*d + a, matching the standard
    encoding of D_i^(w) for the subspace itself.
    """
    if d == 1:
        return tuple(tuple(r) for r in rows)
    gen = Di.p
    out = []
    for r in rows:
        cur = tuple(r)
        for _a in range(d):
            fp_row = []
            for x in cur:
                fp_row.extend(Di.coords(x))
            out.append(tuple(fp_row))
            cur = tuple(Di.mul(gen, x) for x in cur)
    return tuple(out)


class SubspaceTuple:
    """A tuple of D_i-subspaces, with cached base-field data."""

    __slots__ = ("rows", "fp_rows", "fp_rref", "dims")

    def __init__(self, module, rows):
        shape, F = module.shape, module.F
        self.rows = rows
        self.fp_rows = {}
        self.fp_rref = {}
        dims = []
        for i in shape.vertices:
            ii = shape.index[i]
            d = shape.d[i]
            Di = module.vertex_field(i)
            rws = rows[i]
            dims.append(len(rws))
            fp = _expand_rows_over_base(F, Di, d, rws, module.dims[ii])
            self.fp_rows[i] = fp
            self.fp_rref[i] = rref(F, fp) if fp else ((), ())
        self.dims = tuple(dims)


def _source_basis_vectors(module, h, fp_rows_s):
    """Base-field vectors of the source space M_h (x) W_s inside M_h (x) V_s."""
    shape = module.shape
    s = h.src
    si = shape.index[s]
    ds = shape.d[s]
    blocks = h.m // ds
    n_amb = ds * module.dims[si]
    out = []
    for u in range(blocks):
        for row in fp_rows_s:
            vec = [0] * (blocks * n_amb)
            vec[u * n_amb:(u + 1) * n_amb] = row
            out.append(tuple(vec))
    return out


def is_submodule(module, sub):
    """Arrow stability of a SubspaceTuple."""
    shape, F = module.shape, module.F
    for h in shape.arrows:
        th = module.maps[h.id]
        if not th or not th[0]:
            continue
        R, piv = sub.fp_rref[h.tgt]
        for vec in _source_basis_vectors(module, h, sub.fp_rows[h.src]):
            img = _mat_vec(F, th, vec)
            if not any(img):
                continue
            if not piv or not in_rowspace(F, R, piv, img):
                return False
    return True


def _mat_vec(F, A, v):
    mul = F._mul
    add = F._add
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add[s][mul[a][b]]
        out.append(s)
    return tuple(out)


def sub_quotient(module, sub):
    """The (submodule, quotient) pair of modules determined by SubspaceTuple."""
    shape, F = module.shape, module.F
    # per vertex: full base-field basis rows = expanded W rows then expanded
    # complement rows (unit D_i-rows at the non-pivot D_i-coordinates)
    comp_rows = {}
    full_rows = {}
    for i in shape.vertices:
        ii = shape.index[i]
        Di = module.vertex_field(i)
        d = shape.d[i]
        n = module.dims[ii]
        wrows = sub.rows[i]
        pivots = set()
        if wrows:
            _, piv = rref(Di, wrows)
            pivots = set(piv)
        comp = tuple(tuple(1 if c == j else 0 for c in range(n))
                     for j in range(n) if j not in pivots)
        comp_rows[i] = comp
        full = sub.fp_rows[i] + _expand_rows_over_base(F, Di, d, comp, n)
        full_rows[i] = full
    sub_dims = [0] * len(shape.vertices)
    quo_dims = [0] * len(shape.vertices)
    for i in shape.vertices:
        ii = shape.index[i]
        sub_dims[ii] = len(sub.rows[i])
        quo_dims[ii] = module.dims[ii] - len(sub.rows[i])
    sub_maps = {}
    quo_maps = {}
    for h in shape.arrows:
        s, t = h.src, h.tgt
        si, ti = shape.index[s], shape.index[t]
        ds, dt = shape.d[s], shape.d[t]
        blocks = h.m // ds
        th = module.maps[h.id]
        w_t = len(sub.rows[t])
        n_t = module.dims[ti]
        # columns of the submodule map: images of M (x) W_s basis vectors
        sub_cols = []
        for vec in _source_basis_vectors(module, h, sub.fp_rows[s]):
            img = _mat_vec(F, th, vec)
            coords = rowspace_coords(F, full_rows[t], img) if any(img) else (0,) * (dt * n_t)
            if coords is None:
                raise OracleError("submodule image left the span; stability was not checked")
            sub_cols.append(coords[: dt * w_t])
        sub_maps[h.id] = m_transpose(tuple(sub_cols)) if sub_cols else \
            tuple(() for _ in range(dt * w_t)) if dt * w_t else ()
        # quotient map: images of complement basis vectors, complement part
        Ds = module.vertex_field(s)
        comp_fp = _expand_rows_over_base(F, Ds, ds, comp_rows[s], module.dims[si])
        quo_cols = []
        for vec in _source_basis_vectors(module, h, comp_fp):
            img = _mat_vec(F, th, vec)
            coords = rowspace_coords(F, full_rows[t], img) if any(img) else (0,) * (dt * n_t)
            if coords is None:
                raise OracleError("image not expressible in the full basis")
            quo_cols.append(coords[dt * w_t:])
        nq_t = dt * quo_dims[ti]
        quo_maps[h.id] = m_transpose(tuple(quo_cols)) if quo_cols else \
            tuple(() for _ in range(nq_t)) if nq_t else ()
    # fix empty shapes
    for h in shape.arrows:
        s, t = h.src, h.tgt
        si, ti = shape.index[s], shape.index[t]
        dt = shape.d[t]
        r_s, c_s = dt * sub_dims[ti], h.m * sub_dims[si]
        if not sub_maps[h.id] or len(sub_maps[h.id]) != r_s:
            sub_maps[h.id] = tuple((0,) * c_s for _ in range(r_s))
        r_q, c_q = dt * quo_dims[ti], h.m * quo_dims[si]
        if not quo_maps[h.id] or len(quo_maps[h.id]) != r_q:
            quo_maps[h.id] = tuple((0,) * c_q for _ in range(r_q))
    S = FiniteModule(shape, F, sub_dims, sub_maps)
    Q = FiniteModule(shape, F, quo_dims, quo_maps)
    return S, Q


def submodule_tuples(module):
    """All arrow-stable tuples of D_i-subspaces of the module."""
    shape = module.shape
    per_vertex = []
    for i in shape.vertices:
        ii = shape.index[i]
        Di = module.vertex_field(i)
        per_vertex.append(list(all_subspaces(Di, module.dims[ii])))
    for combo in itertools.product(*per_vertex):
        rows = {i: combo[n] for n, i in enumerate(shape.vertices)}
        st = SubspaceTuple(module, rows)
        if is_submodule(module, st):
            yield st


# ---------------------------------------------------------------------------
# enumeration: breadth-first orbit search and synthesized families
# ---------------------------------------------------------------------------

def _arrow_shapes(shape, dims):
    out = {}
    for h in shape.arrows:
        s, t = shape.index[h.src], shape.index[h.tgt]
        out[h.id] = (shape.d[h.tgt] * dims[t], h.m * dims[s])
    return out


def _state_count(shape, F, dims):
    total = 0
    for r, c in _arrow_shapes(shape, dims).values():
        total += r * c
    return F.q ** total


def _iter_states(shape, F, dims):
    """All arrow-map tuples, in deterministic order."""
    shapes = [(h.id, _arrow_shapes(shape, dims)[h.id]) for h in shape.arrows]
    entry_counts = [r * c for _, (r, c) in shapes]
    for codes in itertools.product(*(itertools.product(range(F.q), repeat=n)
                                     for n in entry_counts)):
        maps = {}
        for (hid, (r, c)), flat in zip(shapes, codes):
            maps[hid] = tuple(tuple(flat[i * c + j] for j in range(c)) for i in range(r))
        yield maps


def _is_nilpotent_state(shape, F, dims, maps):
    """Nilpotency of the composite around the cycle (cyclic shapes only)."""
    verts = list(shape.vertices)
    n0 = dims[0]
    if n0 == 0:
        # start from any vertex with nonzero dimension
        for k, i in enumerate(verts):
            if dims[k]:
                verts = verts[k:] + verts[:k]
                n0 = dims[k]
                break
        else:
            return True
    by_src = {h.src: h for h in shape.arrows}
    comp = m_id(F, n0)
    cur = verts[0]
    for _ in range(len(verts)):
        h = by_src[cur]
        comp = m_mul(F, maps[h.id], comp) if comp else ()
        cur = h.tgt
    total = sum(dims)
    power = comp
    for _ in range(max(total.bit_length(), 1)):
        power = m_mul(F, power, power)
    return not any(any(row) for row in power)


def _gl_generators(Di, n):
    """Small generating set of GL_n(D_i): transvections and one scaling."""
    gens = []
    if n == 0:
        return gens
    for a in range(n):
        for b in range(n):
            if a != b:
                g = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
                g[a][b] = 1
                gens.append(tuple(tuple(r) for r in g))
    prim = _primitive_element(Di)
    if prim != 1:
        g = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        g[0][0] = prim
        gens.append(tuple(tuple(r) for r in g))
    return gens


def _primitive_element(F):
    for a in range(2 - (F.q == 2), F.q):
        x = a
        seen = set()
        while x not in seen:
            seen.add(x)
            x = F.mul(x, a)
        if len(seen) == F.q - 1:
            return a
    return 1


def _fp_form(F, Di, d, mat):
    """Base-field form of a D_i-matrix (blocks are mult matrices)."""
    if d == 1:
        return mat
    r = len(mat)
    c = len(mat[0]) if r else 0
    out = [[0] * (c * d) for _ in range(r * d)]
    for i in range(r):
        for j in range(c):
            blk = Di.mult_matrix(mat[i][j])
            for a in range(d):
                for b in range(d):
                    out[i * d + a][j * d + b] = blk[a][b]
    return tuple(tuple(row) for row in out)


def _m_inv(F, A):
    n = len(A)
    aug = tuple(tuple(A[i]) + tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    R, piv = rref(F, aug)
    if list(piv) != list(range(n)):
        raise ValueError("matrix is not invertible")
    return tuple(tuple(R[i][n:]) for i in range(n))


def enumerate_bfs(shape, F, dims):
    """Orbit representatives by exhaustive breadth-first search.

    Returns a list of (maps, orbit_size) with maps the minimal state of its
    orbit; together the orbits partition the whole (nilpotent, for cyclic
    shapes) representation space.
    """
    for h in shape.arrows:
        if shape.d[h.tgt] != 1 and (shape.d[h.src] != shape.d[h.tgt] or h.m != shape.d[h.tgt]):
            raise NotImplementedError(
                "BFS enumeration with equivariance constraints is not implemented")
    nilpotent = getattr(shape, "nilpotent", False)
    # generator actions: (arrow -> left matrix or None, arrow -> right matrix or None)
    actions = []
    for i in shape.vertices:
        ii = shape.index[i]
        d = shape.d[i]
        Di = F if d == 1 else field(F.p, F.deg * d)
        for g in _gl_generators(Di, dims[ii]):
            g_fp = _fp_form(F, Di, d, g)
            ginv_fp = _m_inv(F, g_fp)
            left = {}
            right = {}
            for h in shape.arrows:
                if h.tgt == i:
                    left[h.id] = g_fp
                if h.src == i:
                    blocks = h.m // shape.d[h.src]
                    right[h.id] = _block_diag(F, ginv_fp, blocks)
            if left or right:
                actions.append((left, right))
    reps = []
    visited = set()
    arrow_ids = [h.id for h in shape.arrows]

    def encode(maps):
        return tuple(maps[a] for a in arrow_ids)

    n_states = 0
    for maps in _iter_states(shape, F, dims):
        if nilpotent and not _is_nilpotent_state(shape, F, dims, maps):
            continue
        n_states += 1
        key = encode(maps)
        if key in visited:
            continue
        orbit = {key}
        frontier = [maps]
        while frontier:
            cur = frontier.pop()
            for left, right in actions:
                new = dict(cur)
                for hid, g in left.items():
                    new[hid] = m_mul(F, g, new[hid])
                for hid, g in right.items():
                    new[hid] = m_mul(F, new[hid], g)
                k = encode(new)
                if k not in orbit:
                    orbit.add(k)
                    frontier.append(new)
        visited |= orbit
        rep_key = min(orbit)
        reps.append(({a: m for a, m in zip(arrow_ids, rep_key)}, len(orbit)))
    if len(visited) != n_states:
        raise OracleError("BFS orbits do not partition the state space")
    return reps


# -- polynomial helpers over GF (for Kronecker regular families) -------------

def poly_mul_gf(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return tuple(out)


def poly_pow_gf(F, a, n):
    out = (1,)
    for _ in range(n):
        out = poly_mul_gf(F, out, a)
    return out


def poly_rem_gf(F, a, b):
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if not a[da]:
            a.pop()
            continue
        f = F.mul(a[da], inv)
        for j in range(db + 1):
            a[da - db + j] = F.sub(a[da - db + j], F.mul(f, b[j]))
        while a and not a[-1]:
            a.pop()
    return tuple(a)


def monic_irreducibles(F, max_deg):
    """All monic irreducible polynomials of degree 1..max_deg, low coeffs first."""
    by_deg = {d: [] for d in range(1, max_deg + 1)}
    for d in range(1, max_deg + 1):
        for tail in itertools.product(range(F.q), repeat=d):
            p = tuple(tail) + (1,)
            irred = True
            for dd in range(1, d // 2 + 1):
                for g in by_deg[dd]:
                    if not poly_rem_gf(F, p, g):
                        irred = False
                        break
                if not irred:
                    break
            if irred:
                by_deg[d].append(p)
    return by_deg


def companion(F, p):
    """Companion matrix of a monic polynomial."""
    n = len(p) - 1
    out = [[0] * n for _ in range(n)]
    for i in range(1, n):
        out[i][i - 1] = 1
    for i in range(n):
        out[i][n - 1] = F.neg(p[i])
    return tuple(tuple(r) for r in out)


# -- synthesizers -------------------------------------------------------------

def synth_a1(shape, F, dims):
    """Single vertex, no arrows: one class per dimension."""
    n = dims[0]
    M = FiniteModule(shape, F, dims, {})
    key = ("s",)
    return [SynthClass(M, ((key, n),) if n else ())]


class SynthClass:
    """A synthesized class: representative plus decomposition by indec keys."""

    __slots__ = ("module", "decomposition")

    def __init__(self, module, decomposition):
        self.module = module
        self.decomposition = tuple(decomposition)


def kronecker_indec(shape, F, key):
    """Representative of a Kronecker indecomposable from its family key."""
    a_id, b_id = shape.arrows[0].id, shape.arrows[1].id
    kind = key[0]
    if kind == "pp":
        n = key[1]
        dims = (n, n + 1)
        A = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n + 1))
        B = tuple(tuple(1 if i == j + 1 else 0 for j in range(n)) for i in range(n + 1))
        return FiniteModule(shape, F, dims, {a_id: A, b_id: B})
    if kind == "pi":
        n = key[1]
        dims = (n + 1, n)
        A = tuple(tuple(1 if i == j else 0 for j in range(n + 1)) for i in range(n))
        B = tuple(tuple(1 if i + 1 == j else 0 for j in range(n + 1)) for i in range(n))
        return FiniteModule(shape, F, dims, {a_id: A, b_id: B})
    if kind == "reg":
        p, ell = key[1], key[2]
        n = (len(p) - 1) * ell
        A = m_id(F, n)
        B = companion(F, poly_pow_gf(F, p, ell))
        return FiniteModule(shape, F, (n, n), {a_id: A, b_id: B})
    if kind == "reginf":
        ell = key[1]
        A = companion(F, poly_pow_gf(F, (0, 1), ell))
        B = m_id(F, ell)
        return FiniteModule(shape, F, (ell, ell), {a_id: A, b_id: B})
    raise ValueError("unknown Kronecker indec key %r" % (key,))


def kronecker_indec_keys(F, dims):
    """All Kronecker indecomposable family keys of a given dimension vector."""
    a, b = dims
    keys = []
    if b == a + 1:
        keys.append(("pp", a))
    if a == b + 1:
        keys.append(("pi", b))
    if a == b and a > 0:
        n = a
        irred = monic_irreducibles(F, n)
        for d in range(1, n + 1):
            if n % d:
                continue
            ell = n // d
            for p in irred[d]:
                keys.append(("reg", p, ell))
        keys.append(("reginf", n))
    return keys


def _key_str(key):
    return repr(key)


def synth_kronecker(shape, F, dims):
    """All classes of a Kronecker dimension vector as sums of indec families."""
    a, b = dims
    all_keys = []
    key_dims = []
    for x in range(a + 1):
        for y in range(b + 1):
            if (x, y) == (0, 0) or x > a or y > b:
                continue
            for key in kronecker_indec_keys(F, (x, y)):
                all_keys.append(key)
                key_dims.append((x, y))
    order = sorted(range(len(all_keys)), key=lambda i: _key_str(all_keys[i]))
    all_keys = [all_keys[i] for i in order]
    key_dims = [key_dims[i] for i in order]
    out = []

    def rec(start, remaining, chosen):
        if remaining == (0, 0):
            mods = None
            for key, mult in chosen:
                m = kronecker_indec(shape, F, key)
                for _ in range(mult):
                    mods = m if mods is None else direct_sum(mods, m)
            if mods is None:
                mods = zero_module(shape, F)
            out.append(SynthClass(mods, tuple(chosen)))
            return
        if start >= len(all_keys):
            return
        dk = key_dims[start]
        max_mult = 0
        if dk[0] <= remaining[0] and dk[1] <= remaining[1]:
            max_mult = min(remaining[0] // dk[0] if dk[0] else a + b,
                           remaining[1] // dk[1] if dk[1] else a + b)
        for mult in range(max_mult, -1, -1):
            rest = (remaining[0] - mult * dk[0], remaining[1] - mult * dk[1])
            rec(start + 1, rest, chosen + [(all_keys[start], mult)] if mult else chosen)

    rec(0, (a, b), [])
    return out


# ---------------------------------------------------------------------------
# catalogs
# ---------------------------------------------------------------------------

class ClassInfo:
    __slots__ = ("cid", "module", "dims", "indec", "decomposition", "synth_key",
                 "end", "aut", "res", "defect")

    def __init__(self, cid, module, dims):
        self.cid = cid
        self.module = module
        self.dims = dims
        self.indec = False
        self.decomposition = ()       # tuple of (indec cid, mult)
        self.synth_key = None
        self.end = None               # dim_k End
        self.aut = None               # |Aut|
        self.res = None               # residue degree of End/rad, indecs only
        self.defect = None            # 'pp' | 'reg' | 'pi' for indecs, affine shapes


def _dims_closure(requested):
    seen = set()
    for dims in requested:
        ranges = [range(x + 1) for x in dims]
        for t in itertools.product(*ranges):
            seen.add(t)
    return sorted(seen, key=lambda t: (sum(t), t))


class IsoClassCatalog:
    """One representative per isomorphism class for a set of dimension vectors.

    Built either by exhaustive orbit enumeration or from a synthesizer of
    known families; in both cases the exact mass formula
    sum |G| / |Aut M| = |representation space| certifies completeness on
    every dimension vector small enough to count (and orbit enumeration
    certifies it unconditionally).
    """

    def __init__(self, shape, F, dims_list, synthesizer=None, budget=DEFAULT_BUDGET,
                 mass_budget=2 ** 17, cache_dir=None):
        self.shape = shape
        self.F = F
        self.dims_list = _dims_closure(dims_list)
        self.classes = []
        self.by_dim = {}
        self.indec_ids = []
        self._pair_hom = {}
        self._classify_cache = {}
        self._scan_cache = {}
        self.probes_by_dim = {}
        self._profiles_vs_probes = {}
        self.mass_checked = []
        self.cache_dir = cache_dir
        self.mass_budget = mass_budget
        self.delta = None
        if not getattr(shape, "nilpotent", False):
            from .cartan import ValuedQuiver, cartan_of, is_affine, min_delta
            if isinstance(shape, ValuedQuiver):
                datum = cartan_of(shape)
                if is_affine(datum):
                    self.delta = min_delta(datum)
        if not (cache_dir and self._load_cache()):
            self._build(synthesizer, budget)
            if cache_dir:
                self._save_cache()
        self._finish_probes()

    # -- construction ---------------------------------------------------

    def _group_order(self, dims):
        out = 1
        for i in self.shape.vertices:
            ii = self.shape.index[i]
            out *= gl_order(self.F.q ** self.shape.d[i], dims[ii])
        return out

    def _build(self, synthesizer, budget):
        shape, F = self.shape, self.F
        for dims in self.dims_list:
            total_dim = sum(shape.d[i] * dims[shape.index[i]] for i in shape.vertices)
            if F.q ** total_dim > 2 ** budget:
                raise BudgetError(
                    "dimension vector %s over GF(%d) exceeds budget 2^%d"
                    % (dims, F.q, budget))
            start = len(self.classes)
            if synthesizer is not None:
                self._build_dim_synth(dims, synthesizer)
            else:
                self._build_dim_bfs(dims)
            self.by_dim[dims] = list(range(start, len(self.classes)))
            self._mass_check(dims)

    def _build_dim_synth(self, dims, synthesizer):
        sclasses = synthesizer(self.shape, self.F, dims)
        sclasses.sort(key=lambda sc: _key_str(sc.decomposition))
        key_to_cid = getattr(self, "_synth_key_to_cid", None)
        if key_to_cid is None:
            key_to_cid = self._synth_key_to_cid = {}
        for sc in sclasses:
            cid = len(self.classes)
            info = ClassInfo(cid, sc.module, dims)
            if len(sc.decomposition) == 1 and sc.decomposition[0][1] == 1:
                info.indec = True
                info.synth_key = sc.decomposition[0][0]
                key_to_cid[info.synth_key] = cid
                self.indec_ids.append(cid)
                info.decomposition = ((cid, 1),)
                self._finish_indec(info)
            else:
                dec = tuple(sorted(((key_to_cid[k], m) for k, m in sc.decomposition)))
                for icid, _ in dec:
                    if not self.classes[icid].indec:
                        raise OracleError("synth decomposition references a decomposable")
                info.decomposition = dec
                self._finish_decomposable(info)
            self.classes.append(info)

    def _build_dim_bfs(self, dims):
        shape, F = self.shape, self.F
        reps = enumerate_bfs(shape, F, dims)
        reps.sort(key=lambda ro: tuple(ro[0][h.id] for h in shape.arrows))
        for maps, orbit_size in reps:
            cid = len(self.classes)
            M = FiniteModule(shape, F, dims, maps)
            info = ClassInfo(cid, M, dims)
            dec = self._solve_decomposition(M)
            if dec is None:
                info.indec = True
                self.indec_ids.append(cid)
                info.decomposition = ((cid, 1),)
                self._finish_indec(info)
            else:
                info.decomposition = dec
                self._finish_decomposable(info)
            g = self._group_order(dims)
            if g % info.aut or g // info.aut != orbit_size:
                raise OracleError(
                    "orbit size %d does not match |G|/|Aut| for class %d"
                    % (orbit_size, cid))
            self.classes.append(info)

    def _solve_decomposition(self, M):
        """Unique expression of M as a sum of already known indecs, or None.

        Homomorphism dimensions are additive in the target, so the profile of
        M against every known indec pins the multiplicities; the solver
        enumerates all solutions and insists on uniqueness.
        """
        if all(x == 0 for x in M.dims):
            return ()
        cands = [cid for cid in self.indec_ids
                 if all(x <= y for x, y in zip(self.classes[cid].dims, M.dims))]
        if not cands:
            return None
        profile = [hom_dim(self.classes[p].module, M) for p in self.indec_ids]
        target_dims = M.dims
        solutions = []

        def rec(idx, remaining, chosen):
            if len(solutions) > 1:
                return
            if all(x == 0 for x in remaining):
                vec = {cid: m for cid, m in chosen if m}
                for p_idx, p in enumerate(self.indec_ids):
                    s = sum(m * self._pair(p, cid) for cid, m in vec.items())
                    if s != profile[p_idx]:
                        return
                solutions.append(tuple(sorted(vec.items())))
                return
            if idx >= len(cands):
                return
            cid = cands[idx]
            d = self.classes[cid].dims
            mx = min((r // x for r, x in zip(remaining, d) if x), default=0)
            if all(x == 0 for x in d):
                mx = 0
            for m in range(mx, -1, -1):
                rest = tuple(r - m * x for r, x in zip(remaining, d))
                rec(idx + 1, rest, chosen + [(cid, m)])

        rec(0, target_dims, [])
        if not solutions:
            return None
        if len(solutions) > 1:
            raise OracleError("decomposition of a module is not determined by profiles")
        return solutions[0]

    def _pair(self, p_cid, x_cid):
        """dim Hom(indec p, indec x), cached."""
        key = (p_cid, x_cid)
        if key not in self._pair_hom:
            self._pair_hom[key] = hom_dim(self.classes[p_cid].module,
                                          self.classes[x_cid].module)
        return self._pair_hom[key]

    def _finish_indec(self, info):
        info.end = end_dim(info.module)
        info.aut = aut_order_brute(info.module)
        q = self.F.q
        res = None
        for r in range(1, info.end + 1):
            if info.end - r >= 0 and (q ** r - 1) * q ** (info.end - r) == info.aut:
                if res is not None:
                    raise OracleError("residue degree of a local ring is ambiguous")
                res = r
        if res is None:
            raise OracleError("class %d is not local; indec detection failed" % info.cid)
        info.res = res
        if self.delta is not None:
            dfc = _euler(self.shape, self.delta, info.dims)
            info.defect = "pp" if dfc < 0 else ("pi" if dfc > 0 else "reg")

    def _finish_decomposable(self, info):
        q = self.F.q
        end = 0
        for cid1, m1 in info.decomposition:
            for cid2, m2 in info.decomposition:
                end += m1 * m2 * self._pair(cid1, cid2)
        info.end = end
        aut = 1
        sq_sum = 0
        for cid, m in info.decomposition:
            r = self.classes[cid].res
            Q = q ** r
            for j in range(m):
                aut *= Q ** m - Q ** j
            sq_sum += m * m * r
        info.aut = aut * q ** (end - sq_sum)

    def _mass_check(self, dims):
        n_states = _state_count(self.shape, self.F, dims)
        if n_states > self.mass_budget:
            return
        if getattr(self.shape, "nilpotent", False):
            count = 0
            for maps in _iter_states(self.shape, self.F, dims):
                if _is_nilpotent_state(self.shape, self.F, dims, maps):
                    count += 1
            n_states = count
        g = self._group_order(dims)
        total = 0
        for cid in self.by_dim[dims]:
            aut = self.classes[cid].aut
            if g % aut:
                raise OracleError("|Aut| does not divide |G| at class %d" % cid)
            total += g // aut
        if total != n_states:
            raise OracleError(
                "mass check failed at %s over GF(%d): %d orbits counted vs %d states"
                % (dims, self.F.q, total, n_states))
        self.mass_checked.append(dims)

    def _finish_probes(self):
        """Choose, per dimension vector, a separating probe set of indecs."""
        for dims, cids in self.by_dim.items():
            if len(cids) < 2:
                self.probes_by_dim[dims] = []
                for cid in cids:
                    self._profiles_vs_probes[cid] = ()
                continue
            probes = []
            def prof(cid):
                return tuple(self._class_profile_entry(cid, p) for p in probes)
            remaining = True
            cand_iter = iter(self.indec_ids)
            while remaining:
                seen = {}
                remaining = False
                for cid in cids:
                    key = prof(cid)
                    if key in seen:
                        remaining = True
                        break
                    seen[key] = cid
                if remaining:
                    nxt = next(cand_iter, None)
                    if nxt is None:
                        raise OracleError(
                            "profiles do not separate the classes at %s" % (dims,))
                    probes.append(nxt)
            self.probes_by_dim[dims] = probes
            for cid in cids:
                self._profiles_vs_probes[cid] = prof(cid)

    def _class_profile_entry(self, cid, probe_cid):
        """dim Hom(probe, class) via additivity over the decomposition."""
        return sum(m * self._pair(probe_cid, icid)
                   for icid, m in self.classes[cid].decomposition)

    # -- queries ----------------------------------------------------------

    def class_at(self, cid):
        return self.classes[cid]

    def classes_of_dim(self, dims):
        return [self.classes[cid] for cid in self.by_dim.get(tuple(dims), ())]

    def classify(self, module):
        """The catalog class id of a module (dims must be cataloged)."""
        dims = module.dims
        if dims not in self.by_dim:
            raise KeyError("dimension vector %s is not cataloged" % (dims,))
        cids = self.by_dim[dims]
        if len(cids) == 1:
            return cids[0]
        key = module.key()
        if key in self._classify_cache:
            return self._classify_cache[key]
        probes = self.probes_by_dim[dims]
        prof = tuple(hom_dim(self.classes[p].module, module) for p in probes)
        match = None
        for cid in cids:
            if self._profiles_vs_probes[cid] == prof:
                if match is not None:
                    raise OracleError("ambiguous classification at %s" % (dims,))
                match = cid
        if match is None:
            raise OracleError("module of dims %s matches no catalog class" % (dims,))
        self._classify_cache[key] = match
        return match

    def decompose(self, module_or_cid):
        """Multiset of indecomposable class ids."""
        if isinstance(module_or_cid, FiniteModule):
            cid = self.classify(module_or_cid)
        else:
            cid = module_or_cid
        return self.classes[cid].decomposition

    def defect_class(self, cid):
        info = self.classes[cid]
        if self.delta is None:
            raise ValueError("defect classes need an affine valued quiver")
        if not info.indec:
            raise ValueError("defect classes are defined for indecomposables")
        return {"pp": "preprojective", "reg": "regular", "pi": "preinjective"}[info.defect]

    # -- submodule scans and Hall numbers ----------------------------------

    def scan_dim(self, dims):
        """For every class L of this dimension: counts of (quotient, sub) ids."""
        dims = tuple(dims)
        if dims in self._scan_cache:
            return self._scan_cache[dims]
        loaded = self._load_scan(dims) if self.cache_dir else None
        if loaded is not None:
            self._scan_cache[dims] = loaded
            return loaded
        out = {}
        for cid in self.by_dim[dims]:
            L = self.classes[cid].module
            counts = {}
            for st in submodule_tuples(L):
                S, Q = sub_quotient(L, st)
                key = (self.classify(Q), self.classify(S))
                counts[key] = counts.get(key, 0) + 1
            out[cid] = counts
        self._scan_cache[dims] = out
        if self.cache_dir:
            self._save_scan(dims, out)
        return out

    def hall_number(self, l_cid, m_cid, n_cid):
        """g^L_{MN}: submodules of L isomorphic to N with quotient M."""
        L = self.classes[l_cid]
        M = self.classes[m_cid]
        N = self.classes[n_cid]
        if tuple(a + b for a, b in zip(M.dims, N.dims)) != L.dims:
            raise ValueError("dim L must equal dim M + dim N")
        return self.scan_dim(L.dims).get(l_cid, {}).get((m_cid, n_cid), 0)

    # -- tubes --------------------------------------------------------------

    def regular_indec_ids(self):
        return [cid for cid in self.indec_ids if self.classes[cid].defect == "reg"]

    def is_regular_class(self, cid):
        return all(self.classes[icid].defect == "reg"
                   for icid, _ in self.classes[cid].decomposition)

    def regular_simple_ids(self):
        """Regular indecomposables with no proper nonzero regular submodule."""
        out = []
        for cid in self.regular_indec_ids():
            R = self.classes[cid].module
            simple = True
            for st in submodule_tuples(R):
                k = sum(st.dims)
                if k == 0 or st.dims == R.dims:
                    continue
                S, _ = sub_quotient(R, st)
                if self.is_regular_class(self.classify(S)):
                    simple = False
                    break
            if simple:
                out.append(cid)
        return out

    def tube_structure(self):
        """Tubes: tau-orbits of regular simples, nonhomogeneous ones first.

        tau X is detected as the unique regular simple Y with Ext^1(X, Y)
        nonzero (the almost split sequence ending at X), cross-checked on
        trivially valued shapes against the Coxeter transformation.
        """
        simples = self.regular_simple_ids()
        tau = {}
        for cid in simples:
            X = self.classes[cid].module
            targets = [oth for oth in simples
                       if ext_dim(X, self.classes[oth].module) > 0]
            if len(targets) != 1:
                raise OracleError("AR translate of class %d is not unique" % cid)
            tau[cid] = targets[0]
        cox = self._coxeter_matrix()
        if cox is not None:
            for cid, tcid in tau.items():
                predicted = _apply_int_matrix(cox, self.classes[cid].dims)
                if predicted != self.classes[tcid].dims:
                    raise OracleError("tau contradicts the Coxeter transformation")
        seen = set()
        tubes = []
        for cid in simples:
            if cid in seen:
                continue
            orbit = [cid]
            seen.add(cid)
            nxt = tau[cid]
            while nxt not in seen:
                orbit.append(nxt)
                seen.add(nxt)
                nxt = tau[nxt]
            start = min(range(len(orbit)), key=lambda k: orbit[k])
            orbit = orbit[start:] + orbit[:start]
            tubes.append({"rank": len(orbit), "simples": orbit})
        tubes.sort(key=lambda t: (-t["rank"],
                                  tuple(sorted(self.classes[c].dims for c in t["simples"]))))
        return tubes

    def _coxeter_matrix(self):
        """Integer Coxeter matrix -E^-T E for trivially valued shapes."""
        sh = self.shape
        if any(sh.d[i] != 1 for i in sh.vertices):
            return None
        n = len(sh.vertices)
        E = [[Fraction(_euler(sh, _unit(n, a), _unit(n, b))) for b in range(n)]
             for a in range(n)]
        Einv = _frac_inverse(E)
        if Einv is None:
            return None
        cox = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                s = sum(-Einv[c][a] * E[c][b] for c in range(n))
                if s.denominator != 1:
                    return None
                cox[a][b] = int(s)
        return cox

    # -- caching -------------------------------------------------------------

    def _cache_key(self):
        import hashlib
        blob = "%s|%d|%s|v3" % (self.shape.key(), self.F.q,
                                ";".join(map(str, self.dims_list)))
        return hashlib.sha256(blob.encode()).hexdigest()[:24]

    def _cat_path(self):
        return os.path.join(self.cache_dir, "cat_%s.json" % self._cache_key())

    def _scan_path(self, dims):
        return os.path.join(self.cache_dir,
                            "scan_%s_%s.json" % (self._cache_key(),
                                                 "-".join(map(str, dims))))

    def _save_cache(self):
        os.makedirs(self.cache_dir, exist_ok=True)
        payload = {
            "schema": 1,
            "classes": [
                {
                    "dims": list(c.dims),
                    "maps": {h.id: [list(r) for r in c.module.maps[h.id]]
                             for h in self.shape.arrows},
                    "indec": c.indec,
                    "decomposition": [list(x) for x in c.decomposition],
                    "synth_key": _key_to_json(c.synth_key),
                    "end": c.end,
                    "aut": c.aut,
                    "res": c.res,
                    "defect": c.defect,
                } for c in self.classes
            ],
            "by_dim": {",".join(map(str, k)): v for k, v in self.by_dim.items()},
            "mass_checked": [list(d) for d in self.mass_checked],
        }
        path = self._cat_path()
        if not os.path.exists(path):
            with open(path, "w") as fh:
                fh.write(json.dumps(payload, sort_keys=True, separators=(",", ":")))

    def _load_cache(self):
        path = self._cat_path()
        if not os.path.exists(path):
            return False
        with open(path) as fh:
            payload = json.loads(fh.read())
        for n, c in enumerate(payload["classes"]):
            dims = tuple(c["dims"])
            maps = {hid: tuple(tuple(r) for r in rows) for hid, rows in c["maps"].items()}
            M = FiniteModule(self.shape, self.F, dims, maps)
            info = ClassInfo(n, M, dims)
            info.indec = c["indec"]
            info.decomposition = tuple(tuple(x) for x in c["decomposition"])
            info.synth_key = _key_from_json(c["synth_key"])
            info.end = c["end"]
            info.aut = c["aut"]
            info.res = c["res"]
            info.defect = c["defect"]
            self.classes.append(info)
            if info.indec:
                self.indec_ids.append(n)
        self.by_dim = {tuple(int(x) for x in k.split(",")) if k else (): v
                       for k, v in payload["by_dim"].items()}
        self.mass_checked = [tuple(d) for d in payload["mass_checked"]]
        return True

    def _save_scan(self, dims, out):
        os.makedirs(self.cache_dir, exist_ok=True)
        payload = {str(cid): {"%d,%d" % k: v for k, v in counts.items()}
                   for cid, counts in out.items()}
        path = self._scan_path(dims)
        if not os.path.exists(path):
            with open(path, "w") as fh:
                fh.write(json.dumps(payload, sort_keys=True, separators=(",", ":")))

    def _load_scan(self, dims):
        path = self._scan_path(dims)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            payload = json.loads(fh.read())
        out = {}
        for cid, counts in payload.items():
            out[int(cid)] = {tuple(int(x) for x in k.split(",")): v
                             for k, v in counts.items()}
        return out


def _unit(n, a):
    return tuple(1 if i == a else 0 for i in range(n))


def _apply_int_matrix(mat, vec):
    n = len(vec)
    return tuple(sum(mat[a][b] * vec[b] for b in range(n)) for a in range(n))


def _frac_inverse(A):
    n = len(A)
    aug = [list(A[i]) + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = None
        for r in range(c, n):
            if aug[r][c]:
                piv = r
                break
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        f = aug[c][c]
        aug[c] = [x / f for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                g = aug[r][c]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _key_to_json(key):
    if key is None:
        return None
    return [list(x) if isinstance(x, tuple) else x for x in key]


def _key_from_json(key):
    if key is None:
        return None
    return tuple(tuple(x) if isinstance(x, list) else x for x in key)


# ---------------------------------------------------------------------------
# module-level spec operations (catalog-free, for small direct use)
# ---------------------------------------------------------------------------

def enumerate_modules(shape, F, dims, budget=DEFAULT_BUDGET):
    """One representative per isomorphism class of the given dimension vector."""
    total_dim = sum(shape.d[i] * dims[shape.index[i]] for i in shape.vertices)
    if F.q ** total_dim > 2 ** budget:
        raise BudgetError("dimension vector %s over GF(%d) exceeds budget 2^%d"
                          % (tuple(dims), F.q, budget))
    return [FiniteModule(shape, F, tuple(dims), maps)
            for maps, _ in enumerate_bfs(shape, F, tuple(dims))]


def hall_number(L, M, N):
    """g^L_{MN} by exhaustive submodule enumeration and isomorphism tests."""
    if tuple(a + b for a, b in zip(M.dims, N.dims)) != L.dims:
        raise ValueError("dim L must equal dim M + dim N")
    count = 0
    for st in submodule_tuples(L):
        if st.dims != N.dims:
            continue
        S, Q = sub_quotient(L, st)
        if is_isomorphic(S, N) and is_isomorphic(Q, M):
            count += 1
    return count
