"""Exact symbolic computation of affine composition-algebra bases.

Subpackage overview:

- laurent    exact arithmetic in Q[v, v^-1] and Q(v), bar involution, series
- cartan     valued quivers, folding, Cartan data, Euler forms, real roots
- modrep     finite-field module oracle: catalogs, Hom/Ext, Hall numbers, tubes
- hall       per-field twisted Hall algebras and the generic (symbolic) layer
- cyclic     multisegment calculus for nilpotent cyclic-quiver modules
- symfun     partitions, Kostka numbers, H_m / S_lambda inside a Hall algebra
- pbwbasis   index set, order, N / monomial / E / C bases of H^0
- kashiwara  admissible triples, string decompositions, lattice checks
- cli        command-line front end emitting JSON reports
"""

__version__ = "0.1.0"
