# The PBW, monomial and bar-invariant bases of H^0 for the Kronecker quiver.
#
# All structure constants are polynomials in q fitted over several finite
# fields and verified on a held-out one, so every statement below is an
# exact identity in Q(v) with q = v^2.

from hallbases.laurent import RationalV, expand_at_infinity
from hallbases.pbwbasis import PbwIndex, get_context
from hallbases.symfun import kostka

ctx = get_context("kronecker")
print("context: %s, delta = %s, cap = %s" % (ctx.name, ctx.delta, ctx.cap))

print()
print("== the index set of the grading 2*delta ==")
for a in ctx.indices_of_grading((2, 2)):
    print("  ", a)

print()
print("== a monomial expands with Kostka coefficients ==")
lam_idx = {a.lam: a for a in ctx.indices_of_grading((2, 2))
           if not a.cminus and not a.cplus}
mono = ctx.monomial(lam_idx[(1, 1)])
print("word of m^omega(0, t_(1,1)):", mono.monomial_expr)
for a, c in sorted(mono.coords.items(), key=lambda kv: str(kv[0])):
    print("   %s : %s" % (a, c))
print("coefficient at t_(2) is kostka(shape (2), content (1,1)) =",
      kostka((2,), (1, 1)))

print()
print("== triangular PBW basis E and bar-invariant basis C ==")
data = ctx.basis_of_grading((2, 2))
a = lam_idx[(1, 1)]
print("E(0,t_(1,1)) N-coords:",
      {str(k): str(v) for k, v in data["E"][a].items()})
print("C(0,t_(1,1)) E-coords:",
      {str(k): str(v) for k, v in data["C"][a].items()})
print("bar(C) = C:", ctx.check_C_bar_invariant((2, 2), a))
print("bar matrix squares to the identity:", ctx.check_bar_involution((2, 2)))

print()
print("== almost orthogonality, decided by pole analysis ==")
fails = ctx.verify_almost_orthogonal((2, 2))
print("failing pairs at 2*delta:", len(fails))
val = ctx.inner_N(lam_idx[(2,)], lam_idx[(2,)])
print("(N(0,t_(2)), N(0,t_(2))) =", val)
print("   expansion:", expand_at_infinity(val, 6))

print()
print("== products of N come back with lexicographic support bounds ==")
e0 = PbwIndex(cminus=((0, 1),))
e1 = PbwIndex(cplus=((1, 1),))
out = ctx.mult_N(e1, e0)
for a, c in sorted(out.coords.items(), key=lambda kv: str(kv[0])):
    print("   %s : %s" % (a, c))
