"""Profunctors as set-valued matrices, composed by a coend.

Run with ``python3 demos/01_profunctor_composition.py``.
"""

import numpy as np

from profcat.corpus import discrete_category, poset_category
from profcat.profcalc import (Profunctor, check_two_cell, compose, compose_profunctors,
                              hom_profunctor, structural_iso)


def sizes(P):
    out = np.zeros((P.dom.n_obj, P.cod.n_obj), dtype=int)
    for c, d in P.loc:
        out[c, d] += 1
    return out


# Over a discrete base only identities act, so composing is a matrix product
# of cardinalities.
D = discrete_category(["0", "1"])


def from_sizes(m):
    fibers = {(c, d): list(range(k)) for (c, d), k in np.ndenumerate(m) if k}
    return Profunctor.from_fibers(D, D, fibers, lambda f, c, d, x: x, lambda g, c, d, x: x)


G = from_sizes(np.array([[1, 0], [0, 2]]))
F = from_sizes(np.array([[2, 1], [0, 1]]))
print(sizes(compose(G, F)))
print(sizes(G) @ sizes(F))  # same

# On the walking arrow 0 -> 1 the coend identifies things.
A = poset_category(["0", "1"], lambda i, j: i <= j)
H = hom_profunctor(A)
HH, pres = compose_profunctors(H, H)
print(len(pres.generators), "generators")
print(sizes(HH))  # Hom◇Hom has the sizes of Hom again

# the unitor Hom◇P => P is the action map, and it is invertible and natural
lam = structural_iso("left_unit", H)
print(lam.is_invertible(), check_two_cell(lam).passed)

a = structural_iso("assoc", H, H, H)
print(sizes(a.source).tolist(), sizes(a.target).tolist(), a.is_invertible())
