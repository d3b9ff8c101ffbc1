"""Admissible triples and Kashiwara operators on graded slices of H^0.

For a vertex i, epsilon is the left derivation (the u_i-component of the
Green coproduct) and phi is left multiplication by u_i; they satisfy
eps phi = v_i^2 phi eps + 1, so the slice decomposes as P = (+) phi^(N) P(0)
and the string-shifting operators are defined by exact linear algebra over
Q(v).  No completions, no approximations: every identity here is an
equality of vectors of rational functions.
"""

from __future__ import annotations

from .laurent import LaurentPoly, RationalV, in_lattice, quantum_factorial
from .modrep import BudgetError, OracleError
from .pbwbasis import PbwIndex


class AdmissibleTriple:
    """(P, eps_i, phi_i) for one vertex of a composition context."""

    def __init__(self, ctx, vertex):
        self.ctx = ctx
        self.vertex = vertex
        self.e_i = tuple(1 if i == vertex else 0 for i in ctx.shape.vertices)
        self.d_i = ctx.shape.d[vertex]
        self._phi_cache = {}
        self._eps_cache = {}
        self._p0_cache = {}

    # -- raw operators in N coordinates -----------------------------------

    def _check_cap(self, nu):
        if any(x > c for x, c in zip(nu, self.ctx.cap)):
            raise BudgetError("slice %s exceeds the context cap %s"
                              % (nu, self.ctx.cap))

    def phi_on_index(self, a):
        """u_i * N(a) expanded in N coordinates."""
        key = a.key()
        if key not in self._phi_cache:
            nu = self.ctx.grading_of(a)
            target = tuple(x + y for x, y in zip(nu, self.e_i))
            self._check_cap(target)
            prod = self.ctx.alg.u(self.vertex) * self.ctx.N_element(a)
            self._phi_cache[key] = self.ctx.expand_in_N(prod)
        return self._phi_cache[key]

    def eps_on_index(self, a):
        """The left derivation of N(a), expanded in N coordinates."""
        key = a.key()
        if key not in self._eps_cache:
            image = self.ctx.alg.derive_left(self.vertex, self.ctx.N_element(a))
            self._eps_cache[key] = self.ctx.expand_in_N(image)
        return self._eps_cache[key]

    def phi(self, coords):
        return _apply(self.phi_on_index, coords)

    def eps(self, coords):
        return _apply(self.eps_on_index, coords)

    def phi_divided(self, coords, n):
        """phi^(n) = phi^n / [n]!_{v_i}."""
        out = dict(coords)
        for _ in range(n):
            out = self.phi(out)
        fact = RationalV(quantum_factorial(n, self.d_i))
        return {k: v / fact for k, v in out.items()}

    # -- verification of the defining relations -----------------------------

    def check_relation(self, nu):
        """eps phi = v_i^2 phi eps + 1 on the full slice of grading nu."""
        self._check_cap(tuple(x + y for x, y in zip(nu, self.e_i)))
        vi2 = RationalV(LaurentPoly.v_power(2 * self.d_i))
        for a in self.ctx.indices_of_grading(nu):
            x = {a: RationalV(1)}
            lhs = self.eps(self.phi(x))
            rhs = _add(_scale(self.phi(self.eps(x)), vi2), x)
            if not _eq(lhs, rhs):
                return False
        return True

    def check_divided_relation(self, nu, n):
        """eps phi^(N) = v_i^(2N) phi^(N) eps + v_i^(N-1) phi^(N-1)."""
        target = tuple(x + n * y for x, y in zip(nu, self.e_i))
        self._check_cap(target)
        vi2N = RationalV(LaurentPoly.v_power(2 * n * self.d_i))
        viN1 = RationalV(LaurentPoly.v_power((n - 1) * self.d_i))
        for a in self.ctx.indices_of_grading(nu):
            x = {a: RationalV(1)}
            lhs = self.eps(self.phi_divided(x, n))
            rhs = _add(_scale(self.phi_divided(self.eps(x), n), vi2N),
                       _scale(self.phi_divided(x, n - 1), viN1))
            if not _eq(lhs, rhs):
                return False
        return True

    # -- string decomposition ------------------------------------------------

    def p0_basis(self, nu):
        """A basis of P(0) = ker(eps) on the slice, as N-coordinate dicts."""
        nu = tuple(nu)
        if nu in self._p0_cache:
            return self._p0_cache[nu]
        indices = self.ctx.indices_of_grading(nu)
        images = [self.eps_on_index(a) for a in indices]
        keys = sorted({k for img in images for k in img}, key=lambda a: repr(a.key()))
        rows = [[img.get(k, RationalV(0)) for img in images] for k in keys]
        basis = []
        for vec in _kernel(rows, len(indices)):
            basis.append({a: c for a, c in zip(indices, vec) if not c.is_zero()})
        self._p0_cache[nu] = basis
        return basis

    def string_decompose(self, coords):
        """x = sum phi^(N) y_N with eps(y_N) = 0, exactly; returns [(N, y_N)].

        Solved as one linear system over Q(v); the reconstruction residual is
        checked to be identically zero.
        """
        if not coords:
            return []
        nu = _grading_of(self.ctx, coords)
        columns = []
        tags = []
        ncap = 0
        while all(x - ncap * e >= 0 for x, e in zip(nu, self.e_i)):
            ncap += 1
        for n in range(ncap):
            base_nu = tuple(x - n * e for x, e in zip(nu, self.e_i))
            for bi, y in enumerate(self.p0_basis(base_nu)):
                columns.append(self.phi_divided(y, n))
                tags.append((n, bi))
        from .pbwbasis import _solve_in_span
        sol, ok = _solve_in_span(columns, coords)
        if not ok:
            raise OracleError("string decomposition failed: slice not saturated")
        out = {}
        for (n, bi), c in zip(tags, sol):
            if c.is_zero():
                continue
            y = self.p0_basis(tuple(x - n * e for x, e in zip(nu, self.e_i)))[bi]
            acc = out.setdefault(n, {})
            for k, v in y.items():
                acc[k] = acc.get(k, RationalV(0)) + c * v
        result = []
        for n, y in sorted(out.items()):
            y = {k: v for k, v in y.items() if not v.is_zero()}
            if y:
                result.append((n, y))
        # exact reconstruction check
        recon = {}
        for n, y in result:
            recon = _add(recon, self.phi_divided(y, n))
        if not _eq(recon, coords):
            raise OracleError("string decomposition does not reassemble")
        return result

    def etilde(self, coords):
        """Shift the string decomposition down by one."""
        out = {}
        for n, y in self.string_decompose(coords):
            if n == 0:
                continue
            out = _add(out, self.phi_divided(y, n - 1))
        return out

    def phitilde(self, coords):
        """Shift the string decomposition up by one (may hit the cap)."""
        out = {}
        for n, y in self.string_decompose(coords):
            out = _add(out, self.phi_divided(y, n + 1))
        return out


def check_lattice_stability(triple, nu, include_phi=True):
    """Kashiwara operators preserve the crystal lattice on the slice.

    For each N(a) of the slice, the N-coordinates of etilde(N(a)) (and of
    phitilde(N(a)) when the raised slice is within the cap) must lie in
    Q[[v^-1]] cap Q(v), decided exactly.  Returns the list of violations.
    """
    ctx = triple.ctx
    failures = []
    for a in ctx.indices_of_grading(nu):
        x = {a: RationalV(1)}
        images = [("etilde", triple.etilde(x))]
        if include_phi:
            target = tuple(p + e for p, e in zip(nu, triple.e_i))
            if all(t <= c for t, c in zip(target, ctx.cap)):
                images.append(("phitilde", triple.phitilde(x)))
        for tag, img in images:
            for b, c in img.items():
                if not in_lattice(c, strict=False):
                    failures.append((tag, a, b, c))
    return failures


def verify_sink_identity(ctx, a):
    """The sink vertex acts on c_-(0) by pure divided powers.

    With i_0 the sink and N = c_-(0): eps_{i_0}(N(c^|-, t_lambda)) = 0 and
    phitilde^N of it equals N(c, t_lambda) exactly.
    """
    i0 = ctx.seq.vertex(0)
    triple = AdmissibleTriple(ctx, i0)
    n_mult = dict(a.cminus).get(0, 0)
    reduced = PbwIndex(tuple((t, m) for t, m in a.cminus if t != 0),
                       a.c0, a.cplus, a.lam)
    base = {reduced: RationalV(1)}
    eps_img = triple.eps(base)
    if eps_img:
        return False
    lifted = triple.phi_divided(base, n_mult)
    return lifted == {a: RationalV(1)}


# -- small dict-vector helpers (N coordinates over Q(v)) --------------------

def _apply(op_on_index, coords):
    out = {}
    for a, c in coords.items():
        for b, v in op_on_index(a).items():
            s = out.get(b, RationalV(0)) + c * v
            if s.is_zero():
                out.pop(b, None)
            else:
                out[b] = s
    return out


def _add(x, y):
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, RationalV(0)) + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _scale(x, c):
    return {k: v * c for k, v in x.items()}


def _eq(x, y):
    return _is_zero(_add(x, _scale(y, RationalV(-1))))


def _is_zero(x):
    return all(v.is_zero() for v in x.values())


def _grading_of(ctx, coords):
    gradings = {ctx.grading_of(a) for a in coords}
    if len(gradings) != 1:
        raise ValueError("coordinates mix gradings")
    return gradings.pop()


def _kernel(rows, ncols):
    """Right kernel of a matrix with RationalV entries, as coefficient rows."""
    A = [list(r) for r in rows]
    nrows = len(A)
    pivots = []
    row = 0
    for c in range(ncols):
        pr = None
        for r in range(row, nrows):
            if not A[r][c].is_zero():
                pr = r
                break
        if pr is None:
            continue
        A[row], A[pr] = A[pr], A[row]
        inv = A[row][c]
        A[row] = [x / inv for x in A[row]]
        for r in range(nrows):
            if r != row and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [RationalV(0)] * ncols
        vec[fc] = RationalV(1)
        for r, pc in enumerate(pivots):
            vec[pc] = RationalV(0) - A[r][fc]
        basis.append(vec)
    return basis
