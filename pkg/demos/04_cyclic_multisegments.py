# Multisegment calculus on the cyclic quiver: generic extensions, words,
# the rank-doubling map, and the Deng-Du-Xiao canonical basis.

from hallbases.cyclic import (
    CyclicCanonicalBasis,
    Multisegment,
    diamond_step,
    diamond_word,
    eta_fold,
    hom_dim_ms,
    leq_G,
    word_of,
)

seg = Multisegment.segment

print("== the one-box product ==")
print("[1;1) o 0     =", diamond_step(1, Multisegment.zero(2)))
print("[1;1) o [2;1) =", diamond_step(1, seg(2, 2, 1)), " (stacking on top)")
print("[2;1) o [1;1) =", diamond_step(2, seg(2, 1, 1)), " (indices wrap mod r)")

print()
print("== words and the round-trip contract ==")
pi = Multisegment(2, {(1, 2): 1, (1, 1): 1})
w = word_of(pi)
print("pi       =", pi)
print("word     =", w)
print("evaluate =", diamond_word(w, 2))

print()
print("== the degeneration order through the Hom oracle ==")
ss = Multisegment(2, {(1, 1): 1, (2, 1): 1})
print("hom(S1+S2 -> [1;2)) =", hom_dim_ms(ss, seg(2, 1, 2)))
print("S1+S2 <=_G [1;2):", leq_G(ss, seg(2, 1, 2)))
print("[1;2) <=_G S1+S2:", leq_G(seg(2, 1, 2), ss))

print()
print("== the rank-doubling homomorphism ==")
print("eta([1;1))          =", eta_fold(seg(2, 1, 1)))
lhs = eta_fold(diamond_step(1, seg(2, 2, 1)))
rhs = diamond_step(1, diamond_step(3, eta_fold(seg(2, 2, 1))))
print("eta([1;1) o [2;1))  =", lhs)
print("eta([1;1)) o eta(.) =", rhs)
print("homomorphism:", lhs == rhs)

print()
print("== the canonical basis of the rank-2 composition algebra ==")
basis = CyclicCanonicalBasis(2, (1, 1))
for pi in sorted(basis.B, key=str):
    ang = basis.B_in_angle(pi)
    coords = ", ".join("%s <%s>" % (c, p) for p, c in sorted(ang.items(), key=lambda kv: str(kv[0])))
    print("B(%s) = %s   bar-invariant: %s" % (pi, coords, basis.check_bar_invariant(pi)))
