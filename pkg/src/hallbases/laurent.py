"""Exact Laurent polynomials and rational functions in a single variable v.

Everything downstream (Hall numbers, basis transitions, inner products) is a
statement about elements of Q[v,v^-1] or Q(v), so coefficients are
``fractions.Fraction`` throughout and no floating point is ever used.

A Laurent polynomial is stored as a dict {exponent: coefficient} with no zero
coefficients.  Rational functions keep a reduced numerator/denominator pair
with the denominator normalized to be an ordinary polynomial (valuation 0)
whose top coefficient is 1, so equality is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction

#: default truncation order for series expansions at v = infinity
DEFAULT_SERIES_ORDER = 10


class LaurentPoly:
    """A Laurent polynomial sum c_e * v^e with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    d[int(e)] = c
        self.coeffs = d

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c):
        return LaurentPoly({0: Fraction(c)})

    @staticmethod
    def v_power(e, c=1):
        return LaurentPoly({int(e): Fraction(c)})

    # -- ring structure -----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, Fraction(0)) + c
            if s == 0:
                d.pop(e, None)
            else:
                d[e] = s
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = d.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    d.pop(e, None)
                else:
                    d[e] = s
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not defined")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- inspection ----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Top exponent, or None for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else None

    def valuation(self):
        """Bottom exponent, or None for the zero polynomial."""
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, e):
        return self.coeffs.get(e, Fraction(0))

    def is_bar_symmetric(self):
        return self == self.bar()

    def has_integer_coeffs(self):
        return all(c.denominator == 1 for c in self.coeffs.values())

    def in_minus_lattice(self, strict=True):
        """True iff all exponents are < 0 (strict) resp. <= 0."""
        top = self.degree()
        if top is None:
            return True
        return top < 0 if strict else top <= 0

    # -- operations ----------------------------------------------------

    def bar(self):
        """The involution v -> v^-1 (negate every exponent)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {-e: c for e, c in self.coeffs.items()}
        return out

    def subs_v_squared(self, q):
        """Reduce modulo v^2 - q: rewrite v^e = q^(e//2) * v^(e mod 2).

        Returns a pair (c0, c1) of Fractions with self = c0 + c1*v under the
        identification v^2 = q.  This is how per-field identities (where
        v = sqrt(q)) are checked exactly.
        """
        q = Fraction(q)
        c0 = Fraction(0)
        c1 = Fraction(0)
        for e, c in self.coeffs.items():
            r = e % 2  # python: always 0 or 1, also for negative e
            k = (e - r) // 2
            val = c * q ** k
            if r == 0:
                c0 += val
            else:
                c1 += val
        return c0, c1

    def subs(self, value):
        """Evaluate at v = value (exact Fraction arithmetic)."""
        value = Fraction(value)
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * value ** e
        return total

    def shift(self, k):
        """Multiply by v^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return out

    def divexact(self, other):
        """Exact division; raises ValueError if the division leaves a remainder."""
        other = _coerce(other)
        q, r = _divmod_laurent(self, other)
        if not r.is_zero():
            raise ValueError("division of %s by %s is not exact" % (self, other))
        return q

    def __str__(self):
        """Canonical text form: terms c*v^e joined by ' + ', exponents decreasing."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            parts.append("%s*v^%d" % (self.coeffs[e], e))
        return " + ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError("cannot coerce %r to LaurentPoly" % (x,))


def _divmod_laurent(a, b):
    """Division with remainder after clearing v-valuations.

    Shifts both operands to ordinary polynomials, does schoolbook division,
    and shifts back, so v^-3 / v^-1 etc. work as expected.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero(), LaurentPoly.zero()
    sa = -a.valuation()
    sb = -b.valuation()
    A = dict(a.shift(sa).coeffs)
    B = b.shift(sb).coeffs
    db = max(B)
    lead = B[db]
    Q = {}
    while A:
        da = max(A)
        if da < db:
            break
        f = A[da] / lead
        Q[da - db] = f
        for e, c in B.items():
            s = A.get(e + da - db, Fraction(0)) - f * c
            if s == 0:
                A.pop(e + da - db, None)
            else:
                A[e + da - db] = s
    quot = LaurentPoly(Q).shift(sb - sa)
    rem = LaurentPoly(A).shift(-sa)
    return quot, rem


def poly_gcd(a, b):
    """Monic gcd of two Laurent polynomials (v-power factors are discarded)."""
    a = a.shift(-a.valuation()) if not a.is_zero() else a
    b = b.shift(-b.valuation()) if not b.is_zero() else b
    while not b.is_zero():
        _, r = _divmod_laurent(a, b)
        a, b = b, r
        if not b.is_zero():
            b = b.shift(-b.valuation())
    if a.is_zero():
        return LaurentPoly.one()
    return a.divexact(LaurentPoly.const(a.coeffs[a.degree()]))


class RationalV:
    """An element of Q(v) as a reduced fraction num/den of Laurent polynomials.

    Normalization: den is an ordinary polynomial (valuation 0), monic at its
    top exponent, and gcd(num, den) = 1, so equal values compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _coerce(num)
        den = LaurentPoly.one() if den is None else _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.one()
            return
        if den == LaurentPoly.one():
            self.num = num
            self.den = den
            return
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = num.divexact(g)
            den = den.divexact(g)
        # fold the v-power of den into num and make den monic on top
        shift = den.valuation()
        den = den.shift(-shift)
        num = num.shift(-shift)
        lead = den.coeffs[den.degree()]
        if lead != 1:
            inv = LaurentPoly.const(Fraction(1) / lead)
            den = den * inv
            num = num * inv
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p):
        return RationalV(p)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == LaurentPoly.one()

    def as_poly(self):
        """Return the underlying LaurentPoly; raises if there is a true denominator."""
        if not self.is_polynomial():
            raise ValueError("%s is not a Laurent polynomial" % self)
        return self.num

    def __add__(self, other):
        other = _coerce_rational(other)
        return RationalV(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RationalV.__new__(RationalV)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-_coerce_rational(other))

    def __rsub__(self, other):
        return _coerce_rational(other) - self

    def __mul__(self, other):
        other = _coerce_rational(other)
        return RationalV(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rational(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        return RationalV(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rational(other) / self

    def __eq__(self, other):
        try:
            other = _coerce_rational(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def bar(self):
        return RationalV(self.num.bar(), self.den.bar())

    def top_exponent(self):
        """Exponent of the leading term of the expansion at v = infinity.

        Exact: the leading coefficients of num and den never cancel, so this
        is deg(num) - deg(den).  None for the zero function.
        """
        if self.is_zero():
            return None
        return self.num.degree() - self.den.degree()

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "RationalV(%s)" % str(self)


def _coerce_rational(x):
    if isinstance(x, RationalV):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RationalV(_coerce(x))
    raise TypeError("cannot coerce %r to RationalV" % (x,))


class SeriesTail:
    """Truncated expansion of an element of Q(v) in descending powers of v.

    terms: list of (exponent, Fraction) pairs, descending and exact down to
    exponent -truncation_order.
    """

    __slots__ = ("terms", "truncation_order")

    def __init__(self, terms, truncation_order):
        self.terms = [(int(e), Fraction(c)) for e, c in terms if c != 0]
        self.terms.sort(key=lambda t: -t[0])
        self.truncation_order = int(truncation_order)

    def top_exponent(self):
        return self.terms[0][0] if self.terms else None

    def coefficient(self, e):
        for exp, c in self.terms:
            if exp == e:
                return c
        return Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, SeriesTail):
            return NotImplemented
        return self.terms == other.terms and self.truncation_order == other.truncation_order

    def __str__(self):
        if not self.terms:
            return "O(v^-%d)" % self.truncation_order
        body = " + ".join("%s*v^%d" % (c, e) for e, c in self.terms)
        return "%s + O(v^-%d)" % (body, self.truncation_order)

    __repr__ = __str__


def bar(f):
    """Bar involution on LaurentPoly or RationalV: v -> v^-1."""
    return f.bar()


def quantum_int(p, d=1):
    """Balanced quantum integer [p] in the variable x = v^d.

    [p] = (x^p - x^-p)/(x - x^-1) = x^(p-1) + x^(p-3) + ... + x^(1-p).
    """
    if p < 0:
        raise ValueError("quantum_int requires p >= 0, got %d" % p)
    if d <= 0:
        raise ValueError("quantum_int requires d >= 1, got %d" % d)
    return LaurentPoly({d * (p - 1 - 2 * j): 1 for j in range(p)})


def quantum_factorial(p, d=1):
    """[p]! = [p][p-1]...[1] in the variable v^d; [0]! = 1."""
    if p < 0:
        raise ValueError("quantum_factorial requires p >= 0, got %d" % p)
    out = LaurentPoly.one()
    for j in range(2, p + 1):
        out = out * quantum_int(j, d)
    return out


def gauss_binom(n, k, d=1):
    """Gaussian binomial [n choose k] in the variable v^d (exact division)."""
    if not 0 <= k <= n:
        raise ValueError("gauss_binom requires 0 <= k <= n, got (%d, %d)" % (n, k))
    num = quantum_factorial(n, d)
    den = quantum_factorial(k, d) * quantum_factorial(n - k, d)
    return num.divexact(den)


def expand_at_infinity(r, order=None):
    """Exact expansion of r in Q(v) in descending powers of v, down to v^-order.

    Writes num = v^N n(u), den = v^D d(u) with u = v^-1 and d(0) != 0, and
    expands the power series n(u)/d(u).  The top exponent of the result is
    exactly N - D, which is how poles at infinity are detected.
    """
    if order is None:
        order = DEFAULT_SERIES_ORDER
    r = _coerce_rational(r)
    if r.is_zero():
        return SeriesTail([], order)
    N = r.num.degree()
    D = r.den.degree()
    # coefficients of n(u) and d(u): index j holds the coefficient of u^j
    n_len = N - r.num.valuation() + 1
    n_u = [r.num[N - j] for j in range(n_len)]
    d_len = D - r.den.valuation() + 1
    d_u = [r.den[D - j] for j in range(d_len)]
    # series division n(u)/d(u) up to u^(order + N - D)
    k_max = order + N - D
    if k_max < 0:
        return SeriesTail([], order)
    inv0 = Fraction(1) / d_u[0]
    t = []
    for k in range(k_max + 1):
        s = n_u[k] if k < len(n_u) else Fraction(0)
        for j in range(1, min(k, len(d_u) - 1) + 1):
            s -= d_u[j] * t[k - j]
        t.append(s * inv0)
    terms = [(N - D - k, t[k]) for k in range(k_max + 1) if t[k] != 0]
    return SeriesTail(terms, order)


def in_lattice(r, strict=False, order=None):
    """Membership in Q[[v^-1]] cap Q(v) (strict: in v^-1 Q[[v^-1]] cap Q(v)).

    Decided exactly by pole analysis at v = infinity: the criterion is that
    the top exponent deg(num) - deg(den) is <= 0 (strict: <= -1).  The order
    argument is accepted for interface uniformity but the answer never
    depends on a truncation.
    """
    r = _coerce_rational(r)
    top = r.top_exponent()
    if top is None:
        return True
    return top < 0 if strict else top <= 0
