"""Trace axioms at two levels.

A trace on a monoidal category checks out (or fails) with the usual
equations; the same data viewed as a 2-cell out of the loop coend in Prof
fails in the same places.  Sliding turns into well-definedness on classes,
tightening into naturality.
"""

from profcat.corpus import discrete_abelian, idempotent_monoid, left_zero_monoid, z2_group
from profcat.monoidal import validate_monoidal
from profcat.traced import (cat_level_verdict, check_traced_pseudomonoid, loop_coend,
                            trace_two_cell, validate_trace_axioms)

for ex in (discrete_abelian(3), z2_group(), idempotent_monoid()):
    print(ex.name, validate_trace_axioms(ex.trace, balanced=True).passed)

# the left-zero monoid {1, x, y} with Tr = id
ex = left_zero_monoid()
T = ex.trace
C = T.base.base
print(validate_monoidal(T.base).laws_failed())  # the only bifunctor is f⊗g = g
rep = validate_trace_axioms(T)
print(rep.laws_failed())
v = rep.first("sli")
A, B, X, X2, h, p = v.witness
print("sliding fails at h =", C.morphisms[h], "p =", C.morphisms[p])

# Tr(h;(1⊗p)) and Tr((1⊗p);h) by hand
M = T.base
print(C.morphisms[T.tr(A, B, X, C.compose(h, M.mor(M.id(B), p)))],
      C.morphisms[T.tr(A, B, X2, C.compose(M.mor(M.id(A), p), h))])

# the loop coend: the domain the trace must factor through
classes, _ = loop_coend(M, 0, 0)
print([[C.morphisms[f] for _, f in cls] for cls in classes])

_, prof = trace_two_cell(T)
print(prof.laws_failed())
print(cat_level_verdict(T, balanced=True),
      check_traced_pseudomonoid(T, balanced=True).passed)
