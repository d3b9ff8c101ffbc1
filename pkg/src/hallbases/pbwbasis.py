"""The extended composition algebra H^0 in PBW coordinates.

The index set pairs a triple (c_-, c_0, c_+) -- preprojective and
preinjective real-root multiplicities and one multisegment per
nonhomogeneous tube -- with a partition t_lambda for the homogeneous part.
N(c, t_lambda) is the ordered product
<M(c_-)> * <M(c_0)> * S_lambda * <M(c_+)>; monomials, the triangular PBW
basis E and the bar-invariant basis C are built on top of it by exact
unitriangular eliminations in Q(v).
"""

from __future__ import annotations

import itertools

from .cartan import admissible_of, builtin_quiver, cartan_of, is_affine, min_delta
from .cyclic import Multisegment, leq_G, word_of
from .hall import (
    GenericHallAlgebra,
    apply_bar,
    bar_invariant_solve,
    bar_matrix_from_monomials,
)
from .laurent import LaurentPoly, RationalV, in_lattice
from .modrep import IsoClassCatalog, OracleError, field, synth_kronecker
from .symfun import SymmetricLayer, check_partition, partitions_of


# ---------------------------------------------------------------------------
# labels for classes of an affine valued quiver
# ---------------------------------------------------------------------------

class AffineLabeler:
    """Field-independent labels: preprojective/preinjective root positions,
    per-tube multisegments, and homogeneous (degree, partition) points."""

    def __init__(self, shape, seq, window=10):
        self.shape = shape
        self.seq = seq
        self.window = window
        self.beta_pp = {}
        self.beta_pi = {}
        for t in range(0, -window - 1, -1):
            try:
                self.beta_pp[seq.beta(t)] = t
            except ValueError:
                break
        for t in range(1, window + 1):
            try:
                self.beta_pi[seq.beta(t)] = t
            except ValueError:
                break
        self._tube_cache = {}

    def _tube_data(self, catalog):
        q = catalog.F.q
        if q in self._tube_cache:
            return self._tube_cache[q]
        tubes = [t for t in catalog.tube_structure() if t["rank"] >= 2]
        # field-independent rotation anchor: start each tube at the simple
        # with the lexicographically smallest dimension vector
        anchored = []
        for t in tubes:
            dims = [catalog.classes[c].dims for c in t["simples"]]
            if len(set(dims)) != len(dims):
                raise OracleError("tube simples share a dimension vector; "
                                  "no canonical anchor")
            start = min(range(len(dims)), key=lambda k: dims[k])
            anchored.append(t["simples"][start:] + t["simples"][:start])
        anchored.sort(key=lambda simples: tuple(catalog.classes[c].dims for c in simples))
        members = {}
        for ti, simples in enumerate(anchored):
            r = len(simples)
            sdims = [catalog.classes[c].dims for c in simples]
            for cid in catalog.regular_indec_ids():
                tops = [j for j, lc in enumerate(simples) if catalog._pair(cid, lc) > 0]
                if not tops:
                    continue
                if len(tops) != 1:
                    raise OracleError("nonhomogeneous module has a non-simple top")
                i = tops[0]
                # accumulate simple dims cyclically from the top until they match
                dims = catalog.classes[cid].dims
                acc = tuple(0 for _ in dims)
                l = None
                for step in range(1, 12 * r + 1):
                    acc = tuple(a + b for a, b in zip(acc, sdims[(i + step - 1) % r]))
                    if acc == dims:
                        l = step
                        break
                if l is None:
                    raise OracleError("tube member has inconsistent dimensions")
                members[cid] = (ti, i + 1, l)
        self._tube_cache[q] = (anchored, members)
        return self._tube_cache[q]

    def n_tubes(self, catalog):
        return len(self._tube_data(catalog)[0])

    def tube_simple_dims(self, catalog):
        anchored, _ = self._tube_data(catalog)
        return [[catalog.classes[c].dims for c in simples] for simples in anchored]

    def label_of(self, catalog, cid):
        anchored, members = self._tube_data(catalog)
        info = catalog.classes[cid]
        pp = {}
        pi = {}
        nh = [dict() for _ in anchored]
        h_parts = []  # (icid, mult) of homogeneous regular summands
        for icid, mult in info.decomposition:
            idec = catalog.classes[icid]
            if idec.defect == "pp":
                t = self.beta_pp.get(idec.dims)
                if t is None:
                    raise OracleError("preprojective %s outside the root window"
                                      % (idec.dims,))
                pp[t] = pp.get(t, 0) + mult
            elif idec.defect == "pi":
                t = self.beta_pi.get(idec.dims)
                if t is None:
                    raise OracleError("preinjective %s outside the root window"
                                      % (idec.dims,))
                pi[t] = pi.get(t, 0) + mult
            elif icid in members:
                ti, i, l = members[icid]
                nh[ti][(i, l)] = nh[ti].get((i, l), 0) + mult
            else:
                h_parts.append((icid, mult))
        h_tuple = self._group_points(catalog, h_parts)
        return ("L",
                tuple(sorted(pp.items())),
                tuple(tuple(sorted(t.items())) for t in nh),
                h_tuple,
                tuple(sorted(pi.items())))

    def _group_points(self, catalog, h_parts):
        """Group homogeneous summands by point; record (degree, partition)."""
        delta = catalog.delta
        groups = []
        for icid, mult in h_parts:
            for g in groups:
                if catalog._pair(g[0][0], icid) > 0:
                    g.append((icid, mult))
                    break
            else:
                groups.append([(icid, mult)])
        entries = {}
        for g in groups:
            # the point degree is the minimal delta-multiple in the same tube
            cands = [icid for icid in catalog.regular_indec_ids()
                     if icid not in self._tube_data(catalog)[1]
                     and catalog._pair(icid, g[0][0]) > 0]
            degs = []
            for icid in cands:
                dims = catalog.classes[icid].dims
                m = dims[0] // delta[0] if delta[0] else 0
                if tuple(m * x for x in delta) != dims:
                    raise OracleError("homogeneous regular with non-delta dims")
                degs.append(m)
            dz = min(degs)
            lam = []
            for icid, mult in g:
                dims = catalog.classes[icid].dims
                m = dims[0] // delta[0]
                if m % dz:
                    raise OracleError("tube member length is not a multiple of deg z")
                lam.extend([m // dz] * mult)
            lam = tuple(sorted(lam, reverse=True))
            entries[(dz, lam)] = entries.get((dz, lam), 0) + 1
        return tuple(sorted(entries.items()))

    def is_homogeneous_label(self, label):
        _, pp, nh, _h, pi = label
        return not pp and not pi and all(not t for t in nh)


# ---------------------------------------------------------------------------
# PBW indices and the order
# ---------------------------------------------------------------------------

class PbwIndex:
    """(c_-, c_0, c_+; t_lambda): finitely supported root multiplicities,
    per-tube multisegments, and a partition."""

    __slots__ = ("cminus", "c0", "cplus", "lam", "_key")

    def __init__(self, cminus=(), c0=(), cplus=(), lam=()):
        self.cminus = tuple(sorted((int(t), int(m)) for t, m in cminus if m))
        self.cplus = tuple(sorted((int(t), int(m)) for t, m in cplus if m))
        self.c0 = tuple(tuple(sorted(((i, l), m) for (i, l), m in part if m))
                        for part in c0)
        self.lam = check_partition(lam)
        if any(t > 0 for t, _ in self.cminus):
            raise ValueError("c_- is supported on t <= 0")
        if any(t <= 0 for t, _ in self.cplus):
            raise ValueError("c_+ is supported on t > 0")
        self._key = (self.cminus, self.c0, self.cplus, self.lam)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, PbwIndex) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def is_aperiodic(self, ranks):
        for part, r in zip(self.c0, ranks):
            if not Multisegment(r, dict(part)).is_aperiodic():
                return False
        return True

    def __str__(self):
        bits = []
        if self.cminus:
            bits.append("c-=" + ",".join("b%d^%d" % (t, m) for t, m in self.cminus))
        for n, part in enumerate(self.c0):
            if part:
                bits.append("T%d=" % n + ",".join("[%d;%d)x%d" % (i, l, m)
                                                  for (i, l), m in part))
        if self.lam:
            bits.append("lam=" + repr(list(self.lam)))
        if self.cplus:
            bits.append("c+=" + ",".join("b%d^%d" % (t, m) for t, m in self.cplus))
        return "(" + " | ".join(bits) + ")" if bits else "(0)"

    __repr__ = __str__


def _lex_geq_minus(a, b):
    """c_- >=_L d_-: scanning t = 0, -1, -2, ... the first difference is larger."""
    da, db = dict(a), dict(b)
    ts = sorted(set(da) | set(db), reverse=True)
    for t in ts:
        x, y = da.get(t, 0), db.get(t, 0)
        if x != y:
            return x > y
    return True


def _lex_geq_plus(a, b):
    """c_+ >=_L d_+: scanning t = 1, 2, 3, ..."""
    da, db = dict(a), dict(b)
    ts = sorted(set(da) | set(db))
    for t in ts:
        x, y = da.get(t, 0), db.get(t, 0)
        if x != y:
            return x > y
    return True


def prec(a, b, ranks):
    """The strict partial order a < b on one graded piece of the index set."""
    if a == b:
        return False
    # clause (a): a's boundary parts lexicographically dominate b's
    geq_m = _lex_geq_minus(a.cminus, b.cminus)
    geq_p = _lex_geq_plus(a.cplus, b.cplus)
    if geq_m and geq_p and (a.cminus != b.cminus or a.cplus != b.cplus):
        return True
    if a.cminus != b.cminus or a.cplus != b.cplus:
        return False
    # clause (b): fewer delta's in the homogeneous part
    if sum(a.lam) != sum(b.lam):
        return sum(a.lam) < sum(b.lam)
    # clause (c): strictly more degenerate tube components
    if a.c0 != b.c0:
        leq_all = True
        strict = False
        for pa, pb, r in zip(a.c0, b.c0, ranks):
            ma = Multisegment(r, dict(pa))
            mb = Multisegment(r, dict(pb))
            if ma == mb:
                continue
            if leq_G(ma, mb):
                strict = True
            else:
                leq_all = False
                break
        return leq_all and strict
    # final clause: at equal (c, |lambda|), the lex-bigger partition is lower
    return a.lam > b.lam


# ---------------------------------------------------------------------------
# composition-algebra contexts
# ---------------------------------------------------------------------------

class CompositionContext:
    """Everything needed to compute bases of H^0 for one affine valued quiver."""

    def __init__(self, name, shape, cap, synthesizer=None,
                 fit_fields=(2, 3, 4), verify_field=5, escalation=((2, 3, 4, 5), 7),
                 cache_dir=None, window=10, budget=30, mass_budget=2 ** 17):
        self.name = name
        self.shape = shape
        self.cap = tuple(cap)
        self.datum = cartan_of(shape)
        if not is_affine(self.datum):
            raise ValueError("composition contexts require an affine quiver")
        self.delta = min_delta(self.datum)
        self.seq = admissible_of(shape)
        self.labeler = AffineLabeler(shape, self.seq, window=window)
        fields_needed = sorted(set(fit_fields) | {verify_field} |
                               (set(escalation[0]) | {escalation[1]}
                                if escalation else set()))
        self.catalogs = {}
        for q in fields_needed:
            self.catalogs[q] = IsoClassCatalog(
                shape, _field_of(q), [self.cap], synthesizer=synthesizer,
                budget=budget, mass_budget=mass_budget, cache_dir=cache_dir)
        self.alg = GenericHallAlgebra(shape, self.catalogs, self.labeler,
                                      fit_fields, verify_field, escalation=escalation)
        max_m = min((c // d for c, d in zip(self.cap, self.delta)), default=0)
        self.symmetric = SymmetricLayer(self.alg, self.delta, max_m) if max_m >= 0 else None
        q0 = fields_needed[0]
        self.tube_ranks = [len(simples) for simples in
                           self.labeler.tube_simple_dims(self.catalogs[q0])]
        self.tube_dims = self.labeler.tube_simple_dims(self.catalogs[q0])
        # vertex order for monomials: sources first, no arrows backwards
        self.vertex_order = _topological_vertices(shape)
        self._indices_cache = {}
        self._basis_cache = {}

    # -- index enumeration -------------------------------------------------

    def beta(self, t):
        return self.seq.beta(t)

    def indices_of_grading(self, nu):
        nu = tuple(nu)
        if nu in self._indices_cache:
            return self._indices_cache[nu]
        out = []
        minus_parts = self._boundary_options(nu, positive=False)
        for cminus, used_m in minus_parts:
            rest1 = tuple(a - b for a, b in zip(nu, used_m))
            for cplus, used_p in self._boundary_options(rest1, positive=True):
                rest2 = tuple(a - b for a, b in zip(rest1, used_p))
                for c0, used_0 in self._tube_options(rest2):
                    rest3 = tuple(a - b for a, b in zip(rest2, used_0))
                    m = _delta_multiple(rest3, self.delta)
                    if m is None:
                        continue
                    for lam in partitions_of(m):
                        out.append(PbwIndex(cminus, c0, cplus, lam))
        out.sort(key=lambda a: repr(a.key()))
        self._indices_cache[nu] = out
        return out

    def _boundary_options(self, bound, positive):
        """Multisets of beta_t (t > 0 or t <= 0) with dim sum <= bound."""
        roots = []
        t = 1 if positive else 0
        while True:
            try:
                b = self.beta(t)
            except ValueError:
                break
            if all(x <= y for x, y in zip(b, bound)):
                roots.append((t, b))
            if sum(b) > sum(bound):
                break
            t += 1 if positive else -1
            if abs(t) > 40:
                break
        results = []

        def rec(idx, remaining, chosen):
            if idx == len(roots):
                used = tuple(a - b for a, b in zip(bound, remaining))
                results.append((tuple(chosen), used))
                return
            t, b = roots[idx]
            mx = min((r // x for r, x in zip(remaining, b) if x), default=0)
            for mult in range(mx, -1, -1):
                rest = tuple(r - mult * x for r, x in zip(remaining, b))
                if mult:
                    chosen.append((t, mult))
                rec(idx + 1, rest, chosen)
                if mult:
                    chosen.pop()

        rec(0, bound, [])
        return results

    def _tube_options(self, bound):
        """Tuples of per-tube multisegments with ambient dim sum <= bound."""
        per_tube = []
        for ti, r in enumerate(self.tube_ranks):
            opts = []
            segs = []
            for i in range(1, r + 1):
                for l in range(1, sum(bound) + 1):
                    d = self._tube_segment_dim(ti, i, l)
                    if all(x <= y for x, y in zip(d, bound)):
                        segs.append(((i, l), d))

            def rec(idx, remaining, chosen, segs=segs, opts=opts):
                if idx == len(segs):
                    used = tuple(a - b for a, b in zip(bound, remaining))
                    opts.append((tuple(chosen), used))
                    return
                (seg, d) = segs[idx]
                mx = min((r2 // x for r2, x in zip(remaining, d) if x), default=0)
                for mult in range(mx, -1, -1):
                    rest = tuple(r2 - mult * x for r2, x in zip(remaining, d))
                    if mult:
                        chosen.append((seg, mult))
                    rec(idx + 1, rest, chosen)
                    if mult:
                        chosen.pop()

            rec(0, bound, [])
            per_tube.append(opts)
        out = []
        for combo in itertools.product(*per_tube):
            total = tuple(0 for _ in bound)
            parts = []
            ok = True
            for part, used in combo:
                total = tuple(a + b for a, b in zip(total, used))
                parts.append(part)
                if any(x > y for x, y in zip(total, bound)):
                    ok = False
                    break
            if ok:
                out.append((tuple(parts), total))
        if not self.tube_ranks:
            out = [((), tuple(0 for _ in bound))]
        return out

    def _tube_segment_dim(self, ti, i, l):
        dims = self.tube_dims[ti]
        r = len(dims)
        acc = tuple(0 for _ in dims[0])
        for step in range(l):
            acc = tuple(a + b for a, b in zip(acc, dims[(i - 1 + step) % r]))
        return acc

    def grading_of(self, index):
        n = len(self.shape.vertices)
        total = [0] * n
        for t, m in index.cminus:
            b = self.beta(t)
            total = [a + m * x for a, x in zip(total, b)]
        for t, m in index.cplus:
            b = self.beta(t)
            total = [a + m * x for a, x in zip(total, b)]
        for ti, part in enumerate(index.c0):
            for (i, l), m in part:
                d = self._tube_segment_dim(ti, i, l)
                total = [a + m * x for a, x in zip(total, d)]
        total = [a + sum(index.lam) * x for a, x in zip(total, self.delta)]
        return tuple(total)

    # -- the four factors and N ---------------------------------------------

    def _boundary_label(self, part, positive):
        if positive:
            return ("L", (), tuple(() for _ in self.tube_ranks), (), tuple(part))
        return ("L", tuple(part), tuple(() for _ in self.tube_ranks), (), ())

    def _tube_label(self, c0):
        return ("L", (), tuple(c0), (), ())

    def angle_boundary(self, part, positive):
        """<M(c_-)> or <M(c_+)> as a label element."""
        if not part:
            return self.alg.unit()
        dims = [0] * len(self.shape.vertices)
        for t, m in part:
            b = self.beta(t)
            dims = [a + m * x for a, x in zip(dims, b)]
        return self.alg.angle_elt(tuple(dims), self._boundary_label(part, positive))

    def angle_tube(self, c0):
        if all(not part for part in c0):
            return self.alg.unit()
        dims = [0] * len(self.shape.vertices)
        for ti, part in enumerate(c0):
            for (i, l), m in part:
                d = self._tube_segment_dim(ti, i, l)
                dims = [a + m * x for a, x in zip(dims, d)]
        return self.alg.angle_elt(tuple(dims), self._tube_label(c0))

    def N_element(self, index):
        """N(c, t_lambda) = <M(c_-)> * <M(c_0)> * S_lambda * <M(c_+)>."""
        out = self.angle_boundary(index.cminus, positive=False)
        out = out * self.angle_tube(index.c0)
        out = out * self.symmetric.S(index.lam)
        out = out * self.angle_boundary(index.cplus, positive=True)
        return out

    # -- monomials ----------------------------------------------------------

    def dim_word(self, nu):
        """The word of m^nu: divided powers along the source-first order."""
        return tuple((i, nu[self.shape.index[i]]) for i in self.vertex_order
                     if nu[self.shape.index[i]])

    def monomial_word(self, index):
        word = []
        for t, m in sorted(index.cminus, reverse=True):   # beta_0 first
            word.extend(self.dim_word(tuple(m * x for x in self.beta(t))))
        for ti, part in enumerate(index.c0):
            if not part:
                continue
            pi = Multisegment(self.tube_ranks[ti], dict(part))
            for j, a in word_of(pi):
                word.extend(self.dim_word(
                    tuple(a * x for x in self._tube_segment_dim(ti, j, 1))))
        for part_size in index.lam:
            word.extend(self.dim_word(tuple(part_size * x for x in self.delta)))
        for t, m in sorted(index.cplus, reverse=True):    # ... beta_2, beta_1 last
            word.extend(self.dim_word(tuple(m * x for x in self.beta(t))))
        return tuple(word)

    def monomial(self, index):
        """m^omega(index) as a GenericElement with its word recorded."""
        word = self.monomial_word(index)
        return GenericElement(self, self.grading_of(index),
                              self.expand_in_N(self.alg.monomial_elt(word)),
                              monomial_expr=word)

    # -- expansion in the N basis -------------------------------------------

    def expand_in_N(self, elt):
        """Exact coordinates of a label element in the N basis of its slice."""
        if elt.is_zero():
            return {}
        nu = elt.grading
        indices = self.indices_of_grading(nu)
        columns = [self.N_element(a).coeffs for a in indices]
        coords, ok = _solve_in_span(columns, elt.coeffs)
        if not ok:
            raise OracleError("element of grading %s lies outside the N-span" % (nu,))
        return {a: c for a, c in zip(indices, coords) if not c.is_zero()}

    def mult_N(self, a1, a2):
        """N(a1) * N(a2) expanded back in N coordinates, with support checks."""
        prod = self.N_element(a1) * self.N_element(a2)
        coords = self.expand_in_N(prod)
        for a, c in coords.items():
            if not _lex_geq_minus(a.cminus, a1.cminus):
                raise OracleError("product support violates c_- >=_L at %s" % (a,))
            if not _lex_geq_plus(a.cplus, a2.cplus):
                raise OracleError("product support violates c_+ >=_L at %s" % (a,))
            if not c.is_polynomial():
                raise OracleError("product coefficient at %s is not in A'" % (a,))
        target = tuple(x + y for x, y in zip(self.grading_of(a1), self.grading_of(a2)))
        return GenericElement(self, target, coords)

    # -- E and C bases --------------------------------------------------------

    def basis_of_grading(self, nu):
        """The slice data: indices, order, monomials, E, bar matrix and C."""
        nu = tuple(nu)
        if nu in self._basis_cache:
            return self._basis_cache[nu]
        indices = self.indices_of_grading(nu)
        apers = [a for a in indices if a.is_aperiodic(self.tube_ranks)]
        order = _topo_order_indices(apers, lambda x, y: prec(x, y, self.tube_ranks))
        monos = {}
        E = {}
        mono_E = {}
        for a in order:
            mono = self.monomial(a)
            coords = dict(mono.coords)
            if coords.get(a) != RationalV(1):
                raise OracleError("monomial of %s is not unitriangular" % (a,))
            for b in coords:
                if b != a and not prec(b, a, self.tube_ranks):
                    raise OracleError(
                        "monomial of %s supports %s, which is not below it" % (a, b))
            monos[a] = mono
            residual = coords
            e_coords = {a: RationalV(1)}
            for a2 in reversed(order[: order.index(a)]):
                c = residual.get(a2)
                if c is None or c.is_zero():
                    continue
                if not c.is_polynomial():
                    raise OracleError("elimination coefficient at %s not in A'" % (a2,))
                for k, v in E[a2].items():
                    residual[k] = residual.get(k, RationalV(0)) - c * v
                    if residual[k].is_zero():
                        del residual[k]
                e_coords[a2] = c
            for b, c in residual.items():
                if b != a and b.is_aperiodic(self.tube_ranks):
                    raise OracleError("elimination left aperiodic residue %s" % (b,))
                if not c.is_polynomial():
                    raise OracleError("PBW coefficient at %s not in A'" % (b,))
            E[a] = residual
            mono_E[a] = e_coords
        bar_E = bar_matrix_from_monomials(order, mono_E)
        C = {a: bar_invariant_solve(a, order, bar_E) for a in order}
        data = {"indices": indices, "aperiodic": order, "monomials": monos,
                "E": E, "mono_E": mono_E, "bar_E": bar_E, "C": C}
        self._basis_cache[nu] = data
        return data

    def E_in_N(self, nu, a):
        return self.basis_of_grading(nu)["E"][a]

    def C_in_N(self, nu, a):
        """C(a) expanded in N coordinates."""
        data = self.basis_of_grading(nu)
        out = {}
        for a2, c in data["C"][a].items():
            for k, v in data["E"][a2].items():
                out[k] = out.get(k, RationalV(0)) + c * v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def check_bar_involution(self, nu):
        """R bar(R) = Id for the bar matrix on E."""
        data = self.basis_of_grading(nu)
        for a in data["aperiodic"]:
            twice = apply_bar(apply_bar({a: RationalV(1)}, data["bar_E"]),
                              data["bar_E"])
            if twice != {a: RationalV(1)}:
                return False
        return True

    def check_C_bar_invariant(self, nu, a):
        data = self.basis_of_grading(nu)
        image = apply_bar(data["C"][a], data["bar_E"])
        return image == data["C"][a]

    def monomial_to_C(self, nu, a):
        """Coefficients h with m^omega(a) = C(a) + sum h C(a'), all in A'."""
        data = self.basis_of_grading(nu)
        residual = dict(data["mono_E"][a])
        order = data["aperiodic"]
        out = {}
        for a2 in reversed(order[: order.index(a) + 1]):
            c = residual.get(a2)
            if c is None or c.is_zero():
                continue
            out[a2] = c
            for k, v in data["C"][a2].items():
                residual[k] = residual.get(k, RationalV(0)) - c * v
                if residual[k].is_zero():
                    del residual[k]
        if residual:
            raise OracleError("monomial did not reduce to the C basis")
        for a2, c in out.items():
            if not c.is_polynomial():
                raise OracleError("C-transition coefficient at %s not in A'" % (a2,))
        return out

    # -- inner products -------------------------------------------------------

    def inner_N(self, a1, a2):
        return self.alg.inner(self.N_element(a1), self.N_element(a2))

    def verify_almost_orthogonal(self, nu):
        """(N(a), N(a')) - delta_{aa'} in v^-1 Q[[v^-1]], decided by poles."""
        indices = self.indices_of_grading(nu)
        failures = []
        for i, a1 in enumerate(indices):
            for a2 in indices[i:]:
                val = self.inner_N(a1, a2)
                if a1 == a2:
                    val = val - RationalV(1)
                if not in_lattice(val, strict=True):
                    failures.append((a1, a2, val))
        return failures


class GenericElement:
    """An element of H^0 in PBW coordinates, optionally with its word."""

    __slots__ = ("ctx", "grading", "coords", "monomial_expr")

    def __init__(self, ctx, grading, coords, monomial_expr=None):
        self.ctx = ctx
        self.grading = grading
        self.coords = {a: c for a, c in coords.items() if not c.is_zero()}
        self.monomial_expr = monomial_expr

    def coefficient(self, index):
        return self.coords.get(index, RationalV(0))

    def __repr__(self):
        body = "; ".join("%s: %s" % (a, c) for a, c in
                         sorted(self.coords.items(), key=lambda kv: repr(kv[0].key())))
        return "GenericElement(%s | %s)" % (self.grading, body)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _field_of(q):
    for p in (2, 3, 5, 7):
        d = 0
        x = q
        while x % p == 0:
            x //= p
            d += 1
        if x == 1 and d:
            return field(p, d)
    raise ValueError("q = %d is not a small prime power" % q)


def _delta_multiple(dims, delta):
    """m with dims = m * delta, or None."""
    if all(x == 0 for x in dims):
        return 0
    for m in range(1, max(dims) + 1):
        if tuple(m * x for x in delta) == tuple(dims):
            return m
    return None


def _topological_vertices(shape):
    order = []
    remaining = set(shape.vertices)
    arrows = [(h.src, h.tgt) for h in shape.arrows]
    while remaining:
        sources = sorted((i for i in remaining
                          if not any(t == i and s in remaining for s, t in arrows)),
                         key=str)
        if not sources:
            raise ValueError("shape is not acyclic")
        order.append(sources[0])
        remaining.discard(sources[0])
    return tuple(order)


def _topo_order_indices(items, strict_less):
    items = sorted(items, key=lambda a: repr(a.key()))
    out = []
    placed = set()
    while len(out) < len(items):
        progressed = False
        for a in items:
            if a.key() in placed:
                continue
            if all(b.key() in placed or not strict_less(b, a) for b in items):
                out.append(a)
                placed.add(a.key())
                progressed = True
        if not progressed:
            raise OracleError("the order on indices has a cycle")
    return out


def _solve_in_span(columns, target):
    """Solve sum x_j col_j = target over Q(v); returns (coeffs, consistent).

    Insists on full column rank (the N-elements are a basis of their span).
    """
    keys = sorted({k for col in columns for k in col} | set(target), key=repr)
    nrows, ncols = len(keys), len(columns)
    A = [[columns[j].get(k, RationalV(0)) for j in range(ncols)] +
         [target.get(k, RationalV(0))] for k in keys]
    row = 0
    piv_rows = []
    for c in range(ncols):
        pr = None
        for r in range(row, nrows):
            if not A[r][c].is_zero():
                pr = r
                break
        if pr is None:
            raise OracleError("N-basis columns are linearly dependent")
        A[row], A[pr] = A[pr], A[row]
        inv = A[row][c]
        A[row] = [x / inv for x in A[row]]
        for r in range(nrows):
            if r != row and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        piv_rows.append(row)
        row += 1
    for r in range(row, nrows):
        if not A[r][ncols].is_zero():
            return [], False
    coeffs = [A[piv_rows[c]][ncols] for c in range(ncols)]
    return coeffs, True


# ---------------------------------------------------------------------------
# built-in contexts
# ---------------------------------------------------------------------------

_CONTEXTS = {}

#: documented grading caps of the shipped desk-scale contexts
CONTEXT_CAPS = {
    "kronecker": (2, 2),
    "a2tilde": (1, 1, 1),
}


def get_context(name, cache_dir=None):
    key = (name, cache_dir)
    if key in _CONTEXTS:
        return _CONTEXTS[key]
    if name == "kronecker":
        ctx = CompositionContext("kronecker", builtin_quiver("kronecker"),
                                 CONTEXT_CAPS[name], synthesizer=synth_kronecker,
                                 cache_dir=cache_dir)
    elif name == "a2tilde":
        ctx = CompositionContext("a2tilde", builtin_quiver("a2tilde"),
                                 CONTEXT_CAPS[name], cache_dir=cache_dir)
    else:
        raise ValueError("no composition context named %r" % (name,))
    _CONTEXTS[key] = ctx
    return ctx
