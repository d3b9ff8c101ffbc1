"""Valued quivers, folding, Cartan data, Euler forms and real-root sequences.

Dimension vectors are plain tuples of ints aligned with the quiver's vertex
order.  All root-system arithmetic is exact integer arithmetic; affineness is
decided by an exact rational semidefiniteness test, never numerically.
"""

from __future__ import annotations

from fractions import Fraction


class Arrow:
    __slots__ = ("id", "src", "tgt", "m")

    def __init__(self, aid, src, tgt, m=1):
        self.id = aid
        self.src = src
        self.tgt = tgt
        self.m = int(m)

    def __repr__(self):
        return "Arrow(%r, %r -> %r, m=%d)" % (self.id, self.src, self.tgt, self.m)


class Quiver:
    """A finite quiver without loops or oriented cycles."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(a, s, t) if not isinstance(a, Arrow) else a
                            for (a, s, t) in arrows) if arrows and not isinstance(arrows[0], Arrow) \
            else tuple(arrows)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for h in self.arrows:
            if h.src not in vset or h.tgt not in vset:
                raise ValueError("arrow %r has an endpoint outside the vertex set" % (h.id,))
            if h.src == h.tgt:
                raise ValueError("loop at vertex %r" % (h.src,))
        if _has_cycle(self.vertices, [(h.src, h.tgt) for h in self.arrows]):
            raise ValueError("quiver has an oriented cycle")


class QuiverAutomorphism:
    """A pair of permutations compatible with sources and targets."""

    def __init__(self, quiver, vertex_perm, arrow_perm):
        self.quiver = quiver
        self.vertex_perm = dict(vertex_perm)
        self.arrow_perm = dict(arrow_perm)
        if set(self.vertex_perm) != set(quiver.vertices) or \
                set(self.vertex_perm.values()) != set(quiver.vertices):
            raise ValueError("vertex_perm is not a permutation of the vertices")
        aids = {h.id for h in quiver.arrows}
        if set(self.arrow_perm) != aids or set(self.arrow_perm.values()) != aids:
            raise ValueError("arrow_perm is not a permutation of the arrows")
        by_id = {h.id: h for h in quiver.arrows}
        for h in quiver.arrows:
            img = by_id[self.arrow_perm[h.id]]
            if img.src != self.vertex_perm[h.src] or img.tgt != self.vertex_perm[h.tgt]:
                raise ValueError("permutations do not commute with source/target at arrow %r" % (h.id,))

    @staticmethod
    def identity(quiver):
        return QuiverAutomorphism(quiver,
                                  {i: i for i in quiver.vertices},
                                  {h.id: h.id for h in quiver.arrows})


class ValuedQuiver:
    """A valued quiver: vertex valuations d_i, arrow valuations m_h.

    m_h must be a common multiple of d at both endpoints; no loops, acyclic.
    """

    def __init__(self, vertices, d, arrows):
        self.vertices = tuple(vertices)
        self.index = {i: n for n, i in enumerate(self.vertices)}
        self.d = {i: int(d[i]) for i in self.vertices}
        self.arrows = tuple(h if isinstance(h, Arrow) else Arrow(*h) for h in arrows)
        for i, di in self.d.items():
            if di < 1:
                raise ValueError("vertex valuation at %r must be positive" % (i,))
        for h in self.arrows:
            if h.src == h.tgt:
                raise ValueError("loop at vertex %r" % (h.src,))
            if h.m % self.d[h.src] or h.m % self.d[h.tgt]:
                raise ValueError("arrow valuation m=%d at %r is not a common multiple of d" % (h.m, h.id))
        if _has_cycle(self.vertices, [(h.src, h.tgt) for h in self.arrows]):
            raise ValueError("valued quiver has an oriented cycle")

    @property
    def n(self):
        return len(self.vertices)

    def unit_vector(self, i):
        e = [0] * self.n
        e[self.index[i]] = 1
        return tuple(e)

    def sinks(self):
        srcs = {h.src for h in self.arrows}
        return [i for i in self.vertices if i not in srcs]

    def reverse_at(self, i):
        """The valued quiver with all arrows at vertex i reversed."""
        arrows = [Arrow(h.id, h.tgt, h.src, h.m) if i in (h.src, h.tgt) else h
                  for h in self.arrows]
        return ValuedQuiver(self.vertices, self.d, arrows)

    #: module categories over acyclic quivers have no nilpotency condition
    nilpotent = False

    def euler(self, x, y):
        return euler_form(self, x, y)

    def key(self):
        """Deterministic structural key, used for cache file names."""
        return "V[%s]A[%s]" % (
            ",".join("%s:%d" % (i, self.d[i]) for i in self.vertices),
            ",".join("%s:%s>%s:%d" % (h.id, h.src, h.tgt, h.m) for h in self.arrows),
        )

    def __repr__(self):
        return "ValuedQuiver(%s)" % self.key()


def _has_cycle(vertices, edges):
    out = {i: [] for i in vertices}
    indeg = {i: 0 for i in vertices}
    for s, t in edges:
        out[s].append(t)
        indeg[t] += 1
    stack = [i for i in vertices if indeg[i] == 0]
    seen = 0
    while stack:
        i = stack.pop()
        seen += 1
        for j in out[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    return seen != len(vertices)


def fold(quiver, auto):
    """Fold a quiver along an automorphism into a valued quiver.

    Vertices/arrows of the result are the orbits; valuations are orbit sizes.
    Folding must not create a loop (an arrow inside a single vertex orbit).
    """

    def orbit(perm, x):
        o = [x]
        y = perm[x]
        while y != x:
            o.append(y)
            y = perm[y]
        return tuple(sorted(o, key=str))

    v_orbits = {}
    for i in quiver.vertices:
        v_orbits[i] = orbit(auto.vertex_perm, i)
    distinct_v = sorted(set(v_orbits.values()), key=str)
    names = {o: o[0] if len(o) == 1 else "+".join(str(x) for x in o) for o in distinct_v}
    d = {names[o]: len(o) for o in distinct_v}

    by_id = {h.id: h for h in quiver.arrows}
    a_orbits = sorted({orbit(auto.arrow_perm, h.id) for h in quiver.arrows}, key=str)
    arrows = []
    for o in a_orbits:
        h = by_id[o[0]]
        src = names[v_orbits[h.src]]
        tgt = names[v_orbits[h.tgt]]
        if src == tgt:
            raise ValueError("folding creates a loop at orbit %r" % (src,))
        aid = o[0] if len(o) == 1 else "+".join(str(x) for x in o)
        arrows.append(Arrow(aid, src, tgt, len(o)))
    return ValuedQuiver([names[o] for o in distinct_v], d, arrows)


class CartanDatum:
    """Index set I with matrices C (Cartan) and D (symmetrizer)."""

    def __init__(self, index, C, D):
        self.index = tuple(index)
        self.pos = {i: n for n, i in enumerate(self.index)}
        self.C = tuple(tuple(int(x) for x in row) for row in C)
        self.D = tuple(int(x) for x in D)
        n = len(self.index)
        for a in range(n):
            if self.C[a][a] != 2:
                raise ValueError("C has a diagonal entry != 2")
            if self.D[a] < 1:
                raise ValueError("D must have positive diagonal")
            for b in range(n):
                if a != b and self.C[a][b] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if self.D[a] * self.C[a][b] != self.D[b] * self.C[b][a]:
                    raise ValueError("DC is not symmetric")

    @property
    def n(self):
        return len(self.index)

    def sym(self, a, b):
        """(i,j) entry of the symmetric form DC, by position."""
        return self.D[a] * self.C[a][b]

    def sym_form(self, x, y):
        return sum(x[a] * self.D[a] * self.C[a][b] * y[b]
                   for a in range(self.n) for b in range(self.n))

    def d_of(self, i):
        return self.D[self.pos[i]]


def cartan_of(vq):
    """The Cartan datum of a valued quiver: C_ij = -sum m_h / d_i, D = diag(d)."""
    n = vq.n
    C = [[0] * n for _ in range(n)]
    for a in range(n):
        C[a][a] = 2
    for h in vq.arrows:
        a, b = vq.index[h.src], vq.index[h.tgt]
        # arrows between i and j contribute in both matrix slots
        C[a][b] -= h.m // vq.d[vq.vertices[a]]
        C[b][a] -= h.m // vq.d[vq.vertices[b]]
    D = [vq.d[i] for i in vq.vertices]
    return CartanDatum(vq.vertices, C, D)


def euler_form(vq, x, y):
    """<x,y> = sum d_i x_i y_i - sum_h m_h x_{s(h)} y_{t(h)}."""
    total = sum(vq.d[i] * x[vq.index[i]] * y[vq.index[i]] for i in vq.vertices)
    for h in vq.arrows:
        total -= h.m * x[vq.index[h.src]] * y[vq.index[h.tgt]]
    return total


def sym_form(vq, x, y):
    return euler_form(vq, x, y) + euler_form(vq, y, x)


def reflect(datum, i, x):
    """Simple reflection s_i(x) = x - (2(x,i)/(i,i)) i."""
    a = datum.pos[i]
    pairing = sum(x[b] * datum.sym(b, a) for b in range(datum.n))
    coeff = Fraction(2 * pairing, datum.sym(a, a))
    if coeff.denominator != 1:
        raise ArithmeticError("reflection produced a non-integer coefficient")
    out = list(x)
    out[a] -= int(coeff)
    return tuple(out)


def _symmetric_kernel_and_psd(datum):
    """Exact (kernel_basis, is_psd) for the symmetric matrix DC.

    Symmetric Gaussian elimination over Q: a negative pivot or a zero pivot
    with a nonzero row falsifies positive semidefiniteness.
    """
    n = datum.n
    A = [[Fraction(datum.sym(a, b)) for b in range(n)] for a in range(n)]
    # track row operations to recover the kernel
    T = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    psd = True
    kernel_rows = []
    rows = list(range(n))
    for a in rows:
        piv = A[a][a]
        if piv < 0:
            psd = False
            break
        if piv == 0:
            if any(A[a][b] != 0 for b in range(n)):
                # zero diagonal with nonzero row: indefinite
                if any(A[a][b] != 0 for b in range(a, n)):
                    psd = False
                    break
            kernel_rows.append(a)
            continue
        for r in range(a + 1, n):
            f = A[r][a] / piv
            if f == 0:
                continue
            for c in range(n):
                A[r][c] -= f * A[a][c]
                T[r][c] -= f * T[a][c]
    if not psd:
        return [], False
    kernel = []
    for a in kernel_rows:
        # the recorded row operations express a vanishing combination of rows
        vec = T[a]
        den = 1
        for x in vec:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in vec]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        if g:
            ints = [x // g for x in ints]
        kernel.append(tuple(ints))
    return kernel, True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a if a else 1


def is_affine(datum):
    """True iff DC is positive semidefinite with a 1-dimensional kernel."""
    kernel, psd = _symmetric_kernel_and_psd(datum)
    return psd and len(kernel) == 1


def is_finite_type(datum):
    kernel, psd = _symmetric_kernel_and_psd(datum)
    return psd and len(kernel) == 0


def min_delta(datum):
    """The primitive positive integer kernel vector of an affine datum."""
    kernel, psd = _symmetric_kernel_and_psd(datum)
    if not psd or len(kernel) != 1:
        raise ValueError("min_delta requires an affine Cartan datum")
    vec = kernel[0]
    if all(x <= 0 for x in vec):
        vec = tuple(-x for x in vec)
    if not all(x > 0 for x in vec):
        raise ArithmeticError("kernel vector of an affine datum must be sign-definite")
    return vec


class AdmissibleSequence:
    """The doubly infinite periodic extension of a total sink ordering.

    base_order = (i_0, i_-1, ..., i_-(n-1)) lists all vertices, each a sink
    at its turn; i_t for arbitrary t is the periodic extension.  Validity of
    the source side and reducedness (positivity of beta_t) are checked on a
    finite window.
    """

    def __init__(self, vq, base_order, check_window_periods=3):
        self.vq = vq
        self.base_order = tuple(base_order)
        if sorted(self.base_order, key=str) != sorted(vq.vertices, key=str):
            raise ValueError("base_order must list every vertex exactly once")
        g = vq
        for i in self.base_order:
            if i not in {x for x in g.vertices if x not in {h.src for h in g.arrows}}:
                raise ValueError("%r is not a sink at its turn in the base order" % (i,))
            g = g.reverse_at(i)
        # positive side: the periodic extension must be an admissible source sequence
        g = vq
        for t in range(1, len(self.base_order) * check_window_periods + 1):
            i = self.vertex(t)
            if i in {h.tgt for h in g.arrows}:
                raise ValueError("%r is not a source at step %d of the positive side" % (i, t))
            g = g.reverse_at(i)
        self.datum = cartan_of(vq)
        self._window = check_window_periods * len(self.base_order)
        # For finite type the doubly infinite word is never reduced, so the
        # window check must not run: beta raises lazily when roots run out,
        # which is what root listings rely on to terminate.
        if not is_finite_type(self.datum):
            for t in range(-self._window, self._window + 1):
                self.beta(t)  # raises on a negative root, i.e. a non-reduced word

    def vertex(self, t):
        """i_t of the doubly infinite sequence."""
        return self.base_order[(-t) % len(self.base_order)]

    def beta(self, t):
        """The positive real root beta_t attached to position t."""
        if abs(t) > 10 * self._window:
            raise ValueError("beta_t requested far outside the verified window")
        x = self.vq.unit_vector(self.vertex(t))
        if t <= 0:
            for s in range(t + 1, 1):
                x = reflect(self.datum, self.vertex(s), x)
        else:
            for s in range(t - 1, 0, -1):
                x = reflect(self.datum, self.vertex(s), x)
        if any(c < 0 for c in x) or all(c == 0 for c in x):
            raise ValueError("beta_%d is not a positive root; the sequence is not reduced there" % t)
        return x


def admissible_of(vq):
    """The admissible sequence obtained from a topological sink ordering.

    Among the available sinks the smallest id is taken first, so the result
    is deterministic.
    """
    order = []
    g = vq
    remaining = set(vq.vertices)
    while remaining:
        sinks = sorted((i for i in g.sinks() if i in remaining), key=str)
        if not sinks:
            raise ValueError("no sink available; quiver is not acyclic")
        i = sinks[0]
        order.append(i)
        remaining.discard(i)
        g = g.reverse_at(i)
    return AdmissibleSequence(vq, order)


def beta(seq, datum, t):
    """Module-level convenience wrapper; datum must match the sequence's quiver."""
    if datum.index != seq.datum.index or datum.C != seq.datum.C:
        raise ValueError("Cartan datum does not match the admissible sequence")
    return seq.beta(t)


# -- plain text quiver format ------------------------------------------

def parse_quiver(text):
    """Parse the textual quiver format.

    One ``vertex <id> [d=<int>]`` line per vertex and one
    ``arrow <id> <src> <tgt> [m=<int>]`` line per arrow; blank lines and
    lines starting with '#' are ignored.
    """
    vertices = []
    d = {}
    arrows = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) < 2:
                raise ValueError("line %d: vertex needs an id" % ln)
            vid = parts[1]
            dv = 1
            for p in parts[2:]:
                if p.startswith("d="):
                    dv = int(p[2:])
                else:
                    raise ValueError("line %d: unknown vertex option %r" % (ln, p))
            vertices.append(vid)
            d[vid] = dv
        elif parts[0] == "arrow":
            if len(parts) < 4:
                raise ValueError("line %d: arrow needs id, source and target" % ln)
            aid, src, tgt = parts[1], parts[2], parts[3]
            m = None
            for p in parts[4:]:
                if p.startswith("m="):
                    m = int(p[2:])
                else:
                    raise ValueError("line %d: unknown arrow option %r" % (ln, p))
            arrows.append((aid, src, tgt, m))
        else:
            raise ValueError("line %d: expected 'vertex' or 'arrow', got %r" % (ln, parts[0]))
    fixed = []
    for aid, src, tgt, m in arrows:
        if m is None:
            m = _lcm(d.get(src, 1), d.get(tgt, 1))
        fixed.append(Arrow(aid, src, tgt, m))
    return ValuedQuiver(vertices, d, fixed)


def _lcm(a, b):
    return a * b // _gcd(a, b)


# -- built-in quivers ----------------------------------------------------

def builtin_quiver(name):
    """Quivers used by the shipped contexts and the test suite."""
    if name == "a1":
        return ValuedQuiver(("1",), {"1": 1}, ())
    if name == "a2":
        return ValuedQuiver(("1", "2"), {"1": 1, "2": 1}, (Arrow("a", "1", "2"),))
    if name == "kronecker":
        return ValuedQuiver(("1", "2"), {"1": 1, "2": 1},
                            (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    if name == "a2tilde":
        return ValuedQuiver(("1", "2", "3"), {"1": 1, "2": 1, "3": 1},
                            (Arrow("a", "1", "3"), Arrow("b", "2", "3"), Arrow("c", "1", "2")))
    if name == "c2tilde-folded":
        # fold of the A3 path 1 -> 2 <- 3 along the swap of the two ends
        q = Quiver(("1", "2", "3"), ((Arrow("a", "1", "2")), (Arrow("b", "3", "2"))))
        sigma = QuiverAutomorphism(q, {"1": "3", "3": "1", "2": "2"}, {"a": "b", "b": "a"})
        return fold(q, sigma)
    raise ValueError("unknown built-in quiver %r" % (name,))
