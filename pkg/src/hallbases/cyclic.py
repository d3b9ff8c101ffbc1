"""Multisegment calculus for nilpotent representations of the cyclic quiver.

Segments [i;l) are uniserial modules with top S_i covering the vertices
i, i+1, ..., i+l-1 (cyclically, 1-based); a multisegment is a finite
multiset of segments and indexes an isomorphism class of nilpotent
representations independently of the ground field.

The generic-extension product is computed by the single-step rule
[j;1) o pi = pi - [j+1;l0) + [j;l0+1) with l0 the maximal length of a
segment of pi starting at j+1 (l0 = 0 meaning a plain insertion), applied
once per unit of multiplicity.  Words of one-box letters evaluate right to
left; word_of peels letters off with backtracking and is specified by the
round-trip contract diamond_word(word_of(pi)) == pi.
"""

from __future__ import annotations

import itertools

from .cartan import Arrow, euler_form
from .laurent import LaurentPoly, RationalV, in_lattice
from .modrep import FiniteModule, IsoClassCatalog, OracleError, SynthClass, field, hom_dim


class CyclicQuiver:
    """The cyclic quiver K_r with arrows i -> i+1; nilpotent representations."""

    nilpotent = True

    def __init__(self, r):
        if r < 2:
            raise ValueError("cyclic shapes need rank >= 2")
        self.r = r
        self.vertices = tuple(str(i) for i in range(1, r + 1))
        self.index = {v: n for n, v in enumerate(self.vertices)}
        self.d = {v: 1 for v in self.vertices}
        self.arrows = tuple(Arrow("a%d" % i, str(i), str(i % r + 1), 1)
                            for i in range(1, r + 1))

    @property
    def n(self):
        return self.r

    def euler(self, x, y):
        return euler_form(self, x, y)

    def unit_vector(self, i):
        e = [0] * self.r
        e[self.index[i]] = 1
        return tuple(e)

    def key(self):
        return "K%d" % self.r

    def __repr__(self):
        return "CyclicQuiver(%d)" % self.r


_SHAPES = {}


def cyclic_shape(r):
    if r not in _SHAPES:
        _SHAPES[r] = CyclicQuiver(r)
    return _SHAPES[r]


class Multisegment:
    """A finite multiset of cyclic segments pi_{i,l} [i;l), vertices 1..r."""

    __slots__ = ("r", "entries", "_key")

    def __init__(self, r, entries=None):
        self.r = r
        d = {}
        if entries:
            for (i, l), m in (entries.items() if isinstance(entries, dict) else entries):
                if not (1 <= i <= r and l >= 1):
                    raise ValueError("segment [%d;%d) out of range for rank %d" % (i, l, r))
                if m < 0:
                    raise ValueError("negative multiplicity")
                if m:
                    d[(i, l)] = d.get((i, l), 0) + m
        self.entries = d
        self._key = (r, tuple(sorted(d.items())))

    @staticmethod
    def zero(r):
        return Multisegment(r)

    @staticmethod
    def segment(r, i, l, mult=1):
        return Multisegment(r, {(i, l): mult})

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Multisegment) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def multiplicity(self, i, l):
        return self.entries.get((i, l), 0)

    def total_boxes(self):
        return sum(l * m for (_, l), m in self.entries.items())

    def dim_vector(self):
        dims = [0] * self.r
        for (i, l), m in self.entries.items():
            for t in range(l):
                dims[(i - 1 + t) % self.r] += m
        return tuple(dims)

    def add_segment(self, i, l, mult=1):
        d = dict(self.entries)
        d[(i, l)] = d.get((i, l), 0) + mult
        if d[(i, l)] == 0:
            del d[(i, l)]
        elif d[(i, l)] < 0:
            raise ValueError("multiplicity went negative at [%d;%d)" % (i, l))
        return Multisegment(self.r, d)

    def is_aperiodic(self):
        """For every length l some vertex i has pi_{i,l} = 0."""
        lengths = {l for (_, l) in self.entries}
        for l in lengths:
            if all(self.entries.get((i, l), 0) > 0 for i in range(1, self.r + 1)):
                return False
        return True

    def __str__(self):
        if not self.entries:
            return "r=%d; 0" % self.r
        body = "; ".join("%d:%d x%d" % (i, l, m)
                         for (i, l), m in sorted(self.entries.items()))
        return "r=%d; %s" % (self.r, body)

    def __repr__(self):
        return "Multisegment(%s)" % str(self)


def parse_multisegment(text):
    """Parse the text format ``r=2; 1:2 x1; 2:1 x3``."""
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts or not parts[0].startswith("r="):
        raise ValueError("multisegment text must start with r=<rank>")
    r = int(parts[0][2:])
    entries = {}
    for p in parts[1:]:
        if p == "0":
            continue
        seg, _, mult = p.partition("x")
        i, _, l = seg.strip().partition(":")
        entries[(int(i), int(l))] = entries.get((int(i), int(l)), 0) + int(mult or "1")
    return Multisegment(r, entries)


# ---------------------------------------------------------------------------
# generic extensions
# ---------------------------------------------------------------------------

def diamond_step(j, pi):
    """[j;1) o pi: extend the longest segment starting at j+1, or insert.

    The published condition 'l0 maximal with pi_{j+1,l0} <= 0' cannot be
    meant literally; this is the generic-extension reading, which reproduces
    the displayed two-sided computation of the folding homomorphism.
    """
    r = pi.r
    nxt = j % r + 1
    l0 = 0
    for (i, l) in pi.entries:
        if i == nxt and l > l0:
            l0 = l
    if l0 == 0:
        return pi.add_segment(j, 1)
    return pi.add_segment(nxt, l0, -1).add_segment(j, l0 + 1)


def diamond_word(word, r):
    """Evaluate a word ((vertex, mult), ...) right to left by single steps."""
    pi = Multisegment.zero(r)
    for j, a in reversed(list(word)):
        for _ in range(a):
            pi = diamond_step(j, pi)
    return pi


_WORD_MEMO = {}


def word_of(pi):
    """A word of one-box letters evaluating to pi; requires pi aperiodic.

    Peels the outermost letter with backtracking: [j;l) can be the segment
    created last iff no longer segment starts at j+1, and the remainder must
    stay aperiodic.  The result satisfies diamond_word(word_of(pi)) == pi.
    """
    if not pi.is_aperiodic():
        raise ValueError("word_of is defined for aperiodic multisegments only")
    letters = _peel(pi)
    if letters is None:
        raise OracleError("aperiodic multisegment %s has no word" % pi)
    # merge adjacent letters at the same vertex into one multiplicity
    word = []
    for j in letters:
        if word and word[-1][0] == j:
            word[-1] = (j, word[-1][1] + 1)
        else:
            word.append((j, 1))
    return tuple(word)


def _peel(pi):
    if pi.total_boxes() == 0:
        return ()
    key = pi.key()
    if key in _WORD_MEMO:
        return _WORD_MEMO[key]
    result = None
    r = pi.r
    for j in range(1, r + 1):
        nxt = j % r + 1
        max_next = max((l for (i, l) in pi.entries if i == nxt), default=0)
        lengths = sorted((l for (i, l) in pi.entries if i == j), reverse=True)
        for l in lengths:
            # inverting one step: the created segment [j;l) must have been
            # the extension of the longest segment at j+1 (or an insertion)
            if l == 1:
                if max_next != 0:
                    continue
                smaller = pi.add_segment(j, 1, -1)
            else:
                if max_next > l - 1:
                    continue
                smaller = pi.add_segment(j, l, -1).add_segment(nxt, l - 1)
            if not smaller.is_aperiodic():
                continue
            rest = _peel(smaller)
            if rest is not None:
                result = (j,) + rest
                break
        if result is not None:
            break
    _WORD_MEMO[key] = result
    return result


def eta_fold(pi):
    """The rank-doubling map sending [i;l) to [i;l) + [i+r;l), linearly."""
    r = pi.r
    entries = {}
    for (i, l), m in pi.entries.items():
        entries[(i, l)] = entries.get((i, l), 0) + m
        entries[(i + r, l)] = entries.get((i + r, l), 0) + m
    return Multisegment(2 * r, entries)


def multisegments_of_dim(r, dims):
    """All multisegments of the cyclic quiver K_r with the given dim vector."""
    dims = tuple(dims)
    total = sum(dims)
    segs = []
    for i in range(1, r + 1):
        for l in range(1, total + 1):
            d = Multisegment.segment(r, i, l).dim_vector()
            if all(a <= b for a, b in zip(d, dims)):
                segs.append(((i, l), d))
    out = []

    def rec(idx, remaining, chosen):
        if all(x == 0 for x in remaining):
            out.append(Multisegment(r, dict(chosen)))
            return
        if idx >= len(segs):
            return
        (seg, d) = segs[idx]
        mx = min((rm // dd for rm, dd in zip(remaining, d) if dd), default=0)
        for m in range(mx, -1, -1):
            rest = tuple(rm - m * dd for rm, dd in zip(remaining, d))
            if any(x < 0 for x in rest):
                continue
            if m:
                chosen[seg] = m
            rec(idx + 1, rest, chosen)
            chosen.pop(seg, None)

    rec(0, dims, {})
    return out


# ---------------------------------------------------------------------------
# modules and the Hom oracle
# ---------------------------------------------------------------------------

def build_module(shape, F, pi):
    """The nilpotent representation M(pi): a sum of uniserial chains."""
    r = shape.r
    basis = [[] for _ in range(r)]  # per vertex: list of (block, step)
    blocks = []
    b = 0
    for (i, l), m in sorted(pi.entries.items()):
        for _ in range(m):
            blocks.append((i, l))
            for t in range(l):
                basis[(i - 1 + t) % r].append((b, t))
            b += 1
    dims = tuple(len(basis[k]) for k in range(r))
    pos = [{bt: n for n, bt in enumerate(basis[k])} for k in range(r)]
    maps = {}
    for h in shape.arrows:
        s = shape.index[h.src]
        t = shape.index[h.tgt]
        mat = [[0] * dims[s] for _ in range(dims[t])]
        for (blk, step) in basis[s]:
            i0, l0 = blocks[blk]
            if step + 1 < l0:
                mat[pos[t][(blk, step + 1)]][pos[s][(blk, step)]] = 1
        maps[h.id] = tuple(tuple(row) for row in mat)
    return FiniteModule(shape, F, dims, maps)


def synth_cyclic(shape, F, dims):
    """Synthesizer: one class per multisegment of the dimension vector."""
    out = []
    for pi in multisegments_of_dim(shape.r, dims):
        dec = []
        mods = None
        for (i, l), m in sorted(pi.entries.items()):
            seg_mod = build_module(shape, F, Multisegment.segment(shape.r, i, l))
            dec.append((("seg", i, l), m))
            for _ in range(m):
                mods = seg_mod if mods is None else _dsum(mods, seg_mod)
        if mods is None:
            from .modrep import zero_module
            mods = zero_module(shape, F)
        out.append(SynthClass(mods, tuple(dec)))
    return out


def _dsum(a, b):
    from .modrep import direct_sum
    return direct_sum(a, b)


_HOM_MEMO = {}


def hom_dim_ms(pi1, pi2):
    """dim Hom(M(pi1), M(pi2)), oracle-computed over F2 and asserted over F3.

    The value is field independent; computing it over two fields and
    demanding agreement is the cross-check that guards the whole
    multisegment layer.
    """
    key = (pi1.key(), pi2.key())
    if key in _HOM_MEMO:
        return _HOM_MEMO[key]
    shape = cyclic_shape(pi1.r)
    vals = []
    for q in (2, 3):
        F = field(q)
        vals.append(hom_dim(build_module(shape, F, pi1), build_module(shape, F, pi2)))
    if vals[0] != vals[1]:
        raise OracleError("Hom dimension between %s and %s is field dependent"
                          % (pi1, pi2))
    _HOM_MEMO[key] = vals[0]
    return vals[0]


def leq_G(pi1, pi2):
    """The degeneration order: pi1 <=_G pi2 iff same dimension vector and
    dim Hom(sigma, pi1) >= dim Hom(sigma, pi2) for all test segments sigma."""
    if pi1.r != pi2.r:
        raise ValueError("rank mismatch")
    if pi1.dim_vector() != pi2.dim_vector():
        return False
    r = pi1.r
    max_l = max(pi1.total_boxes(), 1)
    for i in range(1, r + 1):
        for l in range(1, max_l + 1):
            sigma = Multisegment.segment(r, i, l)
            if hom_dim_ms(sigma, pi1) < hom_dim_ms(sigma, pi2):
                return False
    return True


# ---------------------------------------------------------------------------
# the generic cyclic Hall algebra and the canonical basis
# ---------------------------------------------------------------------------

class CyclicLabeler:
    """Classes of nilpotent K_r representations are labeled by multisegments."""

    def __init__(self, r):
        self.r = r

    def label_of(self, catalog, cid):
        info = catalog.classes[cid]
        entries = {}
        for icid, m in info.decomposition:
            key = catalog.classes[icid].synth_key
            if key is None or key[0] != "seg":
                raise OracleError("cyclic labeling needs synthesized catalogs")
            entries[(key[1], key[2])] = entries.get((key[1], key[2]), 0) + m
        return ("Pi", tuple(sorted(entries.items())))

    def to_multisegment(self, label):
        return Multisegment(self.r, dict(label[1]))

    def of_multisegment(self, pi):
        return ("Pi", tuple(sorted(pi.entries.items())))


def cyclic_generic_algebra(r, cap, fit_fields=(2, 3, 4), verify_field=5,
                           escalation=((2, 3, 4, 5), 7), cache_dir=None,
                           mass_budget=2 ** 17):
    """The generic Hall algebra of nilpotent K_r representations up to cap."""
    from .hall import GenericHallAlgebra
    shape = cyclic_shape(r)
    fields_needed = sorted(set(fit_fields) | {verify_field} |
                           (set(escalation[0]) | {escalation[1]} if escalation else set()))
    catalogs = {}
    for q in fields_needed:
        F = field(*_prime_power(q))
        catalogs[q] = IsoClassCatalog(shape, F, [tuple(cap)], synthesizer=synth_cyclic,
                                      budget=40, mass_budget=mass_budget,
                                      cache_dir=cache_dir)
    return GenericHallAlgebra(shape, catalogs, CyclicLabeler(r), fit_fields,
                              verify_field, escalation=escalation)


def _prime_power(q):
    for p in (2, 3, 5, 7, 11, 13):
        d = 0
        x = q
        while x % p == 0:
            x //= p
            d += 1
        if x == 1 and d:
            return (p, d)
    raise ValueError("q = %d is not a recognized prime power" % q)


class CyclicCanonicalBasis:
    """Monomial, PBW and canonical bases of the composition algebra of K_r.

    For every aperiodic multisegment pi of a grading within the cap:

    - m(pi): the product of divided powers along word_of(pi); it equals
      <M(pi)> plus strictly <_G-smaller angle-basis terms,
    - E(pi): the elimination of aperiodic lower terms from m(pi),
    - B(pi): the bar-invariant element E(pi) + sum g E(pi') with
      g in v^-1 Q[v^-1].

    All coefficients are exact elements of Q(v).
    """

    def __init__(self, r, cap, **kwargs):
        self.r = r
        self.cap = tuple(cap)
        self.alg = cyclic_generic_algebra(r, cap, **kwargs)
        self.labeler = self.alg.labeler
        self.E = {}
        self.B = {}
        self.monomials = {}
        self.mono_E_coords = {}
        self.bar_E = {}
        self.order_by_grading = {}
        for dims in sorted(itertools.product(*(range(c + 1) for c in self.cap))):
            self._build_grading(dims)

    # angle coordinates: {pi-key: RationalV} relative to <M(pi)>

    def _to_angle(self, elt):
        out = {}
        for label, c in elt.coeffs.items():
            data = self.alg.label_data(label)
            pi = self.labeler.to_multisegment(label)
            shift = RationalV(LaurentPoly.v_power(data["dim_k"] - data["end"]))
            out[pi] = c * shift
        return out

    def _build_grading(self, dims):
        alg = self.alg
        labels = alg.labels_of_dim(dims)
        pis = [self.labeler.to_multisegment(l) for l in labels]
        apers = [pi for pi in pis if pi.is_aperiodic()]
        order = _topo_order(apers, leq_G)
        self.order_by_grading[dims] = order
        for pi in order:
            word = word_of(pi)
            if diamond_word(word, self.r) != pi:
                raise OracleError("word round-trip failed for %s" % pi)
            mono = alg.monomial_elt(tuple((str(j), a) for j, a in word))
            angle = self._to_angle(mono)
            self.monomials[pi] = angle
            if angle.get(pi) != RationalV(1):
                raise OracleError("monomial of %s is not unitriangular" % pi)
            for pi2 in angle:
                if pi2 != pi and not (leq_G(pi2, pi) and pi2 != pi):
                    raise OracleError(
                        "monomial of %s has support %s outside the order ideal"
                        % (pi, pi2))
            # eliminate aperiodic lower terms, tracking E-coordinates
            residual = dict(angle)
            coords = {pi: RationalV(1)}
            for prev in reversed(order[: order.index(pi)]):
                c = residual.get(prev)
                if c is None or c.is_zero():
                    continue
                for k, v in self.E[prev].items():
                    residual[k] = residual.get(k, RationalV(0)) - c * v
                    if residual[k].is_zero():
                        del residual[k]
                coords[prev] = c
            for k in residual:
                if k != pi and k.is_aperiodic():
                    raise OracleError("elimination left aperiodic residue %s below %s"
                                      % (k, pi))
            self.E[pi] = residual
            self.mono_E_coords[pi] = coords
        from .hall import bar_invariant_solve, bar_matrix_from_monomials
        bar_e = bar_matrix_from_monomials(order, {pi: self.mono_E_coords[pi]
                                                  for pi in order})
        self.bar_E.update(bar_e)
        for pi in order:
            self.B[pi] = bar_invariant_solve(pi, order, self.bar_E)

    def _bar_of(self, coords):
        from .hall import apply_bar
        return apply_bar(coords, self.bar_E)

    def B_in_angle(self, pi):
        """B(pi) expanded in the <M(pi')> coordinates."""
        out = {}
        for pi2, c in self.B[pi].items():
            for k, v in self.E[pi2].items():
                out[k] = out.get(k, RationalV(0)) + c * v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def check_bar_invariant(self, pi):
        diff = self._bar_of(self.B[pi])
        for k, v in self.B[pi].items():
            diff[k] = diff.get(k, RationalV(0)) - v
        return all(v.is_zero() for v in diff.values())


def _topo_order(items, leq):
    """A deterministic linear extension of a partial order given by leq."""
    items = sorted(items, key=lambda pi: pi.key())
    out = []
    placed = set()
    while len(out) < len(items):
        progressed = False
        for pi in items:
            if pi.key() in placed:
                continue
            if all(other.key() in placed or not (leq(other, pi) and other != pi)
                   for other in items):
                out.append(pi)
                placed.add(pi.key())
                progressed = True
        if not progressed:
            raise OracleError("order has a cycle; not a partial order")
    return out


def canonical_cyclic(r, cap, **kwargs):
    """The cyclic canonical basis as a map: aperiodic pi -> <M>-coordinates.

    Convenience wrapper around CyclicCanonicalBasis; every value is the
    expansion of B(pi) in the angle basis, bar-invariance re-checked.
    """
    basis = CyclicCanonicalBasis(r, cap, **kwargs)
    out = {}
    for pi in basis.B:
        if not basis.check_bar_invariant(pi):
            raise OracleError("B(%s) failed its bar-invariance re-check" % pi)
        out[pi] = basis.B_in_angle(pi)
    return out
