# Kashiwara operators on graded slices of H^0: admissible triples, string
# decompositions, lattice stability and the sink identity.

from hallbases.kashiwara import (
    AdmissibleTriple,
    check_lattice_stability,
    verify_sink_identity,
)
from hallbases.laurent import RationalV
from hallbases.pbwbasis import PbwIndex, get_context

ctx = get_context("kronecker")
tri = AdmissibleTriple(ctx, "2")

print("== the defining relation eps phi = v_i^2 phi eps + 1 ==")
for nu in [(0, 0), (1, 0), (0, 1), (1, 1)]:
    print("  slice %s: %s" % (nu, tri.check_relation(nu)))

print()
print("== string decompositions ==")
x = {PbwIndex(cminus=((0, 2),)): RationalV(1)}  # <S_2 + S_2> = u_2^(2)
for n, y in tri.string_decompose(x):
    print("  phi^(%d) applied to %s" % (n, {str(k): str(v) for k, v in y.items()}))

mixed = {a: RationalV(1) for a in ctx.indices_of_grading((1, 1))}
print("a full (1,1) slice vector decomposes as:")
for n, y in tri.string_decompose(mixed):
    print("  N = %d part: %s" % (n, {str(k): str(v) for k, v in y.items()}))

print()
print("== etilde and phitilde are inverse string shifts ==")
a = ctx.indices_of_grading((1, 1))[0]
x = {a: RationalV(1)}
up = tri.phitilde(x)
print("phitilde(N(%s)) = %s" % (a, {str(k): str(v) for k, v in up.items()}))
print("etilde undoes it:", tri.etilde(up) == x)

print()
print("== the operators preserve the crystal lattice ==")
for nu in [(1, 1), (2, 1), (2, 2)]:
    fails = check_lattice_stability(tri, nu)
    print("  slice %s: %d violations" % (nu, len(fails)))

print()
print("== the sink vertex acts by pure divided powers ==")
for a in ctx.indices_of_grading((2, 2)):
    print("  %s: %s" % (a, verify_sink_identity(ctx, a)))
