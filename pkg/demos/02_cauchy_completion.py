"""Right adjoints in Prof are representable exactly over Cauchy complete bases.

The monoid {1, e} with e·e = e has an idempotent that does not split, and
the module eM is a left adjoint that is not of the form F^*.  In the Karoubi
envelope e splits and the same module becomes representable.
"""

from profcat.corpus import IDEMPOTENT, monoid_category
from profcat.fincat import cauchy_report, idempotents, karoubi_envelope, splitting
from profcat.profcalc import (AdjunctionWitness, find_representation, find_right_adjoint,
                              module_profunctor)

M = monoid_category(*IDEMPOTENT)
print(M.objects, M.morphisms)
print(cauchy_report(M).laws_failed())

e = M.morphism_id("e")
eM = module_profunctor(M, 0, [e])  # elements {e}, acted on by multiplication
print(isinstance(find_right_adjoint(eM), AdjunctionWitness))  # True
print(find_representation(eM).reason)  # 2 != 1

K, emb = karoubi_envelope(M)
print(K.objects)
print(K.morphisms)
print(cauchy_report(K).passed)

for idem in idempotents(K):
    b, r, s = splitting(K, idem)
    print(K.morphisms[idem.morphism], "splits through", K.objects[b],
          "as", K.morphisms[r], ";", K.morphisms[s])

# eM again, now as the ideal of Hom(-, {1}) generated by e
one = K.object_id("{1}")
eK = K.morphism_id("e:{1}->{1}")
ideal = sorted({K.compose(g, eK) for a in range(K.n_obj) for g in K.hom(a, one)})
rep = find_representation(module_profunctor(K, one, ideal))
print(bool(rep), rep.iso.is_invertible())
print(K.objects[rep.functor.obj_map[0]])  # {e}, the split object
