"""*-autonomous data, trace rotation and invertible distributors.

The Łukasiewicz chain is *-autonomous but carries no trace, so rotation is
refused and the distributor criterion is out of hypothesis.  Compact closed
examples (⅋ = ⊗) rotate, round-trip, and have invertible distributors.
"""

from profcat.corpus import discrete_abelian, lukasiewicz_chain, z2_group
from profcat.staraut import (PreconditionError, RotationalTrace, check_delta_invertible,
                             check_left_par_trace, rotate_trace, unrotate_trace,
                             validate_star_autonomous, white_frobenius)

chain = lukasiewicz_chain(3)
S = chain.star
print(S.base.objects, S.negation)
print(validate_star_autonomous(S).passed)
try:
    rotate_trace(S, None)
except PreconditionError as exc:
    print("refused:", exc)
print(check_delta_invertible(S, None, None).notes)

for ex in (discrete_abelian(2), z2_group()):
    S = ex.star
    RT = RotationalTrace.from_trace(ex.trace)
    LT = rotate_trace(S, RT)
    print(ex.name, check_left_par_trace(S, LT).passed,
          unrotate_trace(S, LT).assign == RT.assign)
    W = white_frobenius(S, RT, LT)
    print("  white Frobenius natural:", W.report.passed, "stages", W.stages)
    rep = check_delta_invertible(S, RT, LT)
    print("  distributors:", rep.notes, rep.passed)
