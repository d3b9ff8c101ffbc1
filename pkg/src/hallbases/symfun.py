"""Partitions, Kostka numbers and the symmetric-function layer of H^0.

H_m is the sum of v^(-dim_k M) [M] over homogeneous regular classes of
dimension vector m * delta; S_lambda is the Jacobi-Trudi determinant
det(H_{lambda_t - t + t'}).  The determinant only makes sense because the
H_m commute, which is verified in the algebra rather than assumed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .laurent import LaurentPoly, RationalV


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def check_partition(lam):
    lam = tuple(int(x) for x in lam)
    if any(x <= 0 for x in lam):
        raise ValueError("partition parts must be positive")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError("partition parts must be weakly decreasing")
    return lam


def partitions_of(n):
    """All partitions of n, in descending lexicographic order."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, mx, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(mx, remaining), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return out


def lex_less(lam, mu):
    """Strict lexicographic order on partitions of the same size."""
    lam, mu = check_partition(lam), check_partition(mu)
    return lam < mu


def dominance_leq(lam, mu):
    """lam <=_dom mu: partial sums of lam never exceed those of mu."""
    lam, mu = check_partition(lam), check_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of the same size")
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a > b:
            return False
    return True


def kostka(lam, mu):
    """The number of semistandard Young tableaux of shape lam and content mu."""
    lam, mu = check_partition(lam), check_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("shape and content must have equal size")
    if not lam:
        return 1
    rows = len(lam)
    remaining = list(mu)
    tableau = [[0] * lam[r] for r in range(rows)]
    cells = [(r, c) for r in range(rows) for c in range(lam[r])]

    def rec(idx):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        lo = tableau[r][c - 1] if c else 1
        total = 0
        for val in range(max(lo, r + 1), len(mu) + 1):
            if remaining[val - 1] == 0:
                continue
            if r and lam[r - 1] > c and tableau[r - 1][c] >= val:
                continue
            tableau[r][c] = val
            remaining[val - 1] -= 1
            total += rec(idx + 1)
            remaining[val - 1] += 1
            tableau[r][c] = 0
        return total

    return rec(0)


# ---------------------------------------------------------------------------
# the commuting-symbol ring Z[H_1, H_2, ...]
# ---------------------------------------------------------------------------

class HPoly:
    """A polynomial in commuting symbols H_1, H_2, ...; monomials are sorted
    tuples of indices."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(sorted(mono, reverse=True))] = c

    @staticmethod
    def zero():
        return HPoly()

    @staticmethod
    def one():
        return HPoly({(): 1})

    @staticmethod
    def h(m):
        if m < 0:
            return HPoly.zero()
        if m == 0:
            return HPoly.one()
        return HPoly({(m,): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        p = HPoly.__new__(HPoly)
        p.terms = out
        return p

    def __neg__(self):
        p = HPoly.__new__(HPoly)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2, reverse=True))
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        p = HPoly.__new__(HPoly)
        p.terms = out
        return p

    def __eq__(self, other):
        return isinstance(other, HPoly) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*H%s" % (c, list(m)) for m, c in sorted(self.terms.items()))


def jacobi_trudi(lam):
    """S_lambda = det(H_{lambda_t - t + t'}) as an HPoly, H_0 = 1, H_neg = 0."""
    lam = check_partition(lam)
    s = len(lam)
    if s == 0:
        return HPoly.one()
    total = HPoly.zero()
    for perm in itertools.permutations(range(s)):
        sign = _perm_sign(perm)
        term = HPoly.one()
        for t in range(s):
            term = term * HPoly.h(lam[t] - t - 1 + perm[t] + 1)
        total = total + (term if sign > 0 else -term)
    return total


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def h_to_s_matrix(n):
    """Coefficients of H_mu over the S_lambda basis for |mu| = n.

    Returns {(lam, mu): coefficient}; classically the coefficient is the
    Kostka number K_{lam, mu}, which is what the tests assert.
    """
    lams = partitions_of(n)
    s_polys = {lam: jacobi_trudi(lam) for lam in lams}
    out = {}
    for mu in lams:
        h_mu = HPoly.one()
        for part in mu:
            h_mu = h_mu * HPoly.h(part)
        # solve h_mu = sum c_lam s_lam by peeling leading monomials: S_lambda
        # is H_lambda plus monomials strictly dominance-above lambda, so the
        # extraction runs in ascending lex order
        residual = h_mu
        coeffs = {}
        for lam in reversed(lams):
            c = residual.terms.get(lam, Fraction(0))
            coeffs[lam] = c
            if c:
                residual = residual - HPoly({(): c}) * s_polys[lam]
        if residual.terms:
            raise ArithmeticError("h-to-s expansion did not terminate")
        for lam, c in coeffs.items():
            if c:
                out[(lam, mu)] = c
    return out


# ---------------------------------------------------------------------------
# H_m and S_lambda inside a generic Hall algebra
# ---------------------------------------------------------------------------

def homogeneous_labels(alg, dims):
    """Labels at dims whose classes are purely homogeneous regular."""
    return [label for label in alg.labels_of_dim(dims)
            if alg.labeler.is_homogeneous_label(label)]


def H_element(alg, delta, m):
    """H_m = sum over homogeneous regular classes of dim m*delta of
    v^(-dim_k M) [M], as a label element; H_0 = 1."""
    if m == 0:
        return alg.unit()
    dims = tuple(m * x for x in delta)
    coeffs = {}
    for label in homogeneous_labels(alg, dims):
        data = alg.label_data(label)
        coeffs[label] = RationalV(LaurentPoly.v_power(-data["dim_k"]))
    out = _label_elt_sum(alg, dims, coeffs)
    return out


def _label_elt_sum(alg, dims, coeffs):
    from .hall import LabelElement
    return LabelElement(alg, tuple(dims), coeffs)


class SymmetricLayer:
    """Cached H_m / S_lambda evaluation with verified commutation."""

    def __init__(self, alg, delta, max_m):
        self.alg = alg
        self.delta = tuple(delta)
        self.max_m = max_m
        self._H = {0: alg.unit()}
        self._S = {}
        for m in range(1, max_m + 1):
            self._H[m] = H_element(alg, delta, m)
        # the determinant is only well-defined because the H_m commute
        for a in range(1, max_m + 1):
            for b in range(a, max_m + 1):
                if a + b <= max_m:
                    left = self._H[a] * self._H[b]
                    right = self._H[b] * self._H[a]
                    if (left - right).coeffs:
                        raise ArithmeticError("H_%d and H_%d do not commute" % (a, b))

    def H(self, m):
        return self._H[m]

    def S(self, lam):
        lam = check_partition(lam)
        if lam in self._S:
            return self._S[lam]
        if sum(lam) > self.max_m:
            raise ValueError("partition weight %d exceeds the layer cap %d"
                             % (sum(lam), self.max_m))
        poly = jacobi_trudi(lam)
        total = None
        for mono, c in poly.terms.items():
            term = self.alg.unit().scale(RationalV(LaurentPoly.const(c)))
            for m in mono:
                term = term * self._H[m]
            total = term if total is None else total + term
        if total is None:
            total = self.alg.zero_elt()
        self._S[lam] = total
        return total
