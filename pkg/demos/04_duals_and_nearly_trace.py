"""Duals give a nearly-trace; a braiding turns it into a trace.

On the Z_2-graded example the twist is not the identity, and twisting the
derived trace gives a second, different trace.
"""

from profcat.corpus import discrete_abelian, walking_arrow, z2_graded
from profcat.duality import (check_gamma_invertible, check_nearly_tracing_axioms,
                             compare_with_textbook, derive_trace, nearly_trace,
                             search_dualities, twisted_trace, validate_autonomous)
from profcat.traced import validate_trace_axioms

D = discrete_abelian(3).duality
print(D.dual)  # a* = -a
print(validate_autonomous(D).passed, check_gamma_invertible(D.base).passed)
print(check_nearly_tracing_axioms(D).passed)
M = D.base
print(nearly_trace(D, M.id(M.ob(1, 2)), 1, 1, 2) == M.id(1))  # snake

# no duals on the meet-semilattice 0 <= 1
W = walking_arrow().monoidal
print(search_dualities(W))
print(check_gamma_invertible(W).violations[0])

# derived trace, and the textbook formula for comparison
ex = z2_graded()
T1 = derive_trace(ex.duality)
print(compare_with_textbook(ex.duality, T1))  # []
T2 = twisted_trace(T1)
C = ex.category
for k in sorted(T1.assign):
    if T1.assign[k] != T2.assign[k]:
        A, B, X, f = k
        print("X =", C.objects[X], "f =", C.morphisms[f], ":",
              C.morphisms[T1.assign[k]], "vs", C.morphisms[T2.assign[k]])
print(validate_trace_axioms(T1).passed, validate_trace_axioms(T2).passed)
# yanking against θ picks out the twisted one
print(validate_trace_axioms(T1, balanced=True).laws_failed(),
      validate_trace_axioms(T2, balanced=True).passed)
