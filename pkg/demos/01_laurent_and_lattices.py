# Exact Laurent-polynomial arithmetic: the coefficient ring of everything.
#
# All basis transitions in this package live in Q[v, v^-1] or Q(v); this
# script walks through the primitives: the bar involution, quantum integers
# and Gaussian binomials, series expansion at v = infinity, and the exact
# lattice-membership test used for the "almost orthogonal" statements.

from fractions import Fraction

from hallbases.laurent import (
    LaurentPoly,
    RationalV,
    bar,
    expand_at_infinity,
    gauss_binom,
    in_lattice,
    quantum_factorial,
    quantum_int,
)

v = LaurentPoly.v_power

print("== bar involution ==")
p = 3 * v(2) - v(-1)
print("p          =", p)
print("bar(p)     =", bar(p))
print("bar(bar p) =", bar(bar(p)))

print()
print("== quantum integers and binomials ==")
print("[2]        =", quantum_int(2))
print("[3]        =", quantum_int(3))
print("[2]_{v^2}  =", quantum_int(2, 2))
print("[3]!       =", quantum_factorial(3))
print("[4 2]      =", gauss_binom(4, 2))
print("symmetric under bar:", gauss_binom(4, 2).is_bar_symmetric())

print()
print("== expansion at v = infinity ==")
geom = RationalV(LaurentPoly.one(), LaurentPoly.one() - v(-2))
print("1/(1 - v^-2) =", expand_at_infinity(geom, 8))

walk = RationalV(v(1), v(1) - 1)
print("v/(v - 1)    =", expand_at_infinity(walk, 4))

print()
print("== lattice membership, decided by poles (no truncation involved) ==")
print("1/(1-v^-2) in Q[[v^-1]]        :", in_lattice(geom))
print("1/(1-v^-2) in v^-1 Q[[v^-1]]   :", in_lattice(geom, strict=True))
print("v + 1      in Q[[v^-1]]        :", in_lattice(RationalV(v(1) + 1)))
strict = RationalV(v(-1), LaurentPoly.one() - v(-1))
print("v^-1/(1-v^-1) strictly negative:", in_lattice(strict, strict=True))

print()
print("== exact rationals only: no floats anywhere ==")
half = RationalV(LaurentPoly.const(Fraction(1, 2)))
print("(1/2) * 2 =", half * 2)
