"""The eight acceptance criteria, one PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (building_blocks, naive_coend_classes, profunctor_family, right_ideals,  # noqa: E402
                     sizes, small_categories)
from profcat.corpus import (IDEMPOTENT, corpus, discrete_abelian, idempotent_monoid,  # noqa: E402
                            left_zero_monoid, monoid_category, z2_group)
from profcat.duality import (check_nearly_tracing_axioms, derive_trace, nearly_trace,  # noqa: E402
                             validate_autonomous)
from profcat.fincat import all_functors, cauchy_report, karoubi_envelope  # noqa: E402
from profcat.monoidal import validate_balanced, validate_monoidal  # noqa: E402
from profcat.profcalc import (AdjunctionWitness, check_adjunction, check_two_cell,  # noqa: E402
                              compose, embed_functor, find_representation, find_right_adjoint,
                              module_profunctor, structural_iso)
from profcat.staraut import (RotationalTrace, check_delta_invertible,  # noqa: E402
                             check_left_par_trace, rotate_trace, unrotate_trace)
from profcat.traced import (cat_level_verdict, check_traced_pseudomonoid,  # noqa: E402
                            validate_trace_axioms)


def c1_coend_composition():
    for C in small_categories().values():
        assert C.n_obj <= 3 and C.n_mor <= 8
        for P in profunctor_family(C, C, max_elements=50):
            for kind in ("left_unit", "right_unit"):
                cell = structural_iso(kind, P)
                if not (cell.is_invertible() and check_two_cell(cell).passed):
                    return False, f"{kind} on {P.n} elements over {C.objects}"
        blocks = building_blocks(C, C)
        for G, F in itertools.product(blocks, repeat=2):
            if sizes(compose(G, F)) != naive_coend_classes(G, F):
                return False, f"class counts over {C.objects}"
        for H, G, F in itertools.product(blocks, repeat=3):
            a = structural_iso("assoc", H, G, F)
            if sizes(a.source) != sizes(a.target) or a.bijectivity_failures():
                return False, f"associator over {C.objects}"
    return True, ""


def c2_embedding_adjunctions():
    cats = [ex.category for ex in corpus() if ex.category.n_obj <= 3]
    n = 0
    for S, T in itertools.product(cats, repeat=2):
        for F in all_functors(S, T):
            w = check_adjunction(embed_functor(F, "covariant"), embed_functor(F, "contravariant"))
            if not isinstance(w, AdjunctionWitness):
                return False, f"no adjunction for {F.obj_map}"
            n += 1
    return n > 0, f"{n} functors"


def c3_cauchy():
    base = monoid_category(*IDEMPOTENT)
    for C, complete in ((base, False), (karoubi_envelope(base)[0], True)):
        counter = 0
        for x in range(C.n_obj):
            for ideal in right_ideals(C, x):
                M = module_profunctor(C, x, ideal)
                adj = isinstance(find_right_adjoint(M), AdjunctionWitness)
                rep = bool(find_representation(M))
                if rep and not adj:
                    return False, "representable without right adjoint"
                counter += adj and not rep
        if cauchy_report(C).passed != complete or (counter == 0) != complete:
            return False, f"{C.objects}: complete={complete}, counterexamples={counter}"
    return True, ""


def c4_cat_prof_agreement():
    exs = [discrete_abelian(2), discrete_abelian(3), z2_group(), idempotent_monoid(),
           left_zero_monoid()]
    for ex in exs:
        cat = cat_level_verdict(ex.trace, balanced=True)
        prof = check_traced_pseudomonoid(ex.trace, balanced=True).passed
        if cat != prof or cat != (ex.name != "left_zero{1,x,y}"):
            return False, f"{ex.name}: Cat {cat}, Prof {prof}"
    return True, ""


def c5_nearly_tracing():
    for ex in corpus():
        D = ex.duality
        if D is None or not validate_monoidal(D.base).passed or not validate_autonomous(D).passed:
            continue
        if not check_nearly_tracing_axioms(D).passed:
            return False, f"NTr on {ex.name}"
        if not validate_trace_axioms(derive_trace(D), balanced=D.base.symmetric_twist).passed:
            return False, f"derived trace on {ex.name}"
    return True, ""


def _compact_with_trace():
    return [ex for ex in corpus() if ex.star is not None and ex.trace is not None
            and ex.duality is not None]


def c6_rotation():
    exs = _compact_with_trace()
    for ex in exs:
        RT = RotationalTrace.from_trace(ex.trace)
        LT = rotate_trace(ex.star, RT)
        if not check_left_par_trace(ex.star, LT).passed:
            return False, f"LTr axioms on {ex.name}"
        if unrotate_trace(ex.star, LT).assign != RT.assign:
            return False, f"round trip on {ex.name}"
    return len(exs) > 0, f"{len(exs)} examples"


def c7_delta():
    held = 0
    for ex in _compact_with_trace():
        RT = RotationalTrace.from_trace(ex.trace)
        rep = check_delta_invertible(ex.star, RT, rotate_trace(ex.star, RT))
        if "hypotheses hold" in rep.notes:
            held += 1
            if not rep.passed:
                return False, f"{ex.name}: {rep.laws_failed()}"
    return held > 0, "hypotheses never hold"


def c8_negative_witnesses():
    # left-zero sliding
    T = left_zero_monoid().trace
    M, C = T.base, T.base.base
    v = validate_trace_axioms(T).first("sli")
    A, B, X, X2, h, p = (int(w) for w in v.witness)
    if T.tr(A, B, X, C.compose(h, M.mor(M.id(B), p))) == \
            T.tr(A, B, X2, C.compose(M.mor(M.id(A), p), h)):
        return False, "sliding witness does not replay"
    # corrupted associator
    M = z2_group().monoidal
    C, s = M.base, M.base.morphism_id("s")
    bad = M.with_(alpha={k: s for k in M.alpha})
    v = validate_monoidal(bad).first("pentagon")
    a, b, c, d = (int(w) for w in v.witness)
    al, t = bad.alpha, C.table
    lhs = t[al[M.ob(a, b), c, d], al[a, b, M.ob(c, d)]]
    rhs = t[t[bad.mor(al[a, b, c], C.identity[d]), al[a, M.ob(b, c), d]],
            bad.mor(C.identity[a], al[b, c, d])]
    if lhs == rhs:
        return False, "pentagon witness does not replay"
    # broken coeval
    D = z2_group().duality
    broken = D.with_(coeval={0: s})
    v = check_nearly_tracing_axioms(broken).first("NTr-van-I")
    if v is None:
        return False, "broken coeval not caught by NTr-van-I"
    A, B, X = (int(w) for w in v.witness)
    f = C.morphism_id(v.detail)
    inv = C.inverse
    if nearly_trace(broken, f, A, B, X) == C.chain(inv(M.rho[A]), f, M.rho[B]):
        return False, "vanishing witness does not replay"
    # twist on the unit
    bad = M.with_(twist={0: s})
    v = validate_balanced(bad).first("twist unit")
    if v is None or bad.twist[int(v.witness[0])] == C.identity[M.unit]:
        return False, "twist unit witness does not replay"
    return True, ""


CRITERIA = [
    (1, "coend composition: unitors, associator, class counts", c1_coend_composition, 10),
    (2, "embedding adjunctions F^* ⊣ F_*", c2_embedding_adjunctions, 30),
    (3, "Cauchy criterion on {1,e} and its Karoubi envelope", c3_cauchy, 5),
    (4, "Cat-level and Prof-level trace verdicts agree", c4_cat_prof_agreement, 30),
    (5, "nearly tracing axioms and derived trace", c5_nearly_tracing, 10),
    (6, "trace rotation and round trip", c6_rotation, 10),
    (7, "distributor inverses under the hypotheses", c7_delta, 10),
    (8, "designed failures name the law with a replayable witness", c8_negative_witnesses, 30),
]


def evaluate(fn, limit):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if ok and dt >= limit:
        ok, detail = False, f"over the {limit} s limit"
    return ok, detail, dt


def line(n, title, ok, detail, dt):
    tail = f" -- {detail}" if detail and not ok else ""
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} ({dt:.2f} s){tail}"


@pytest.mark.parametrize("n,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, fn, limit, capsys):
    ok, detail, dt = evaluate(fn, limit)
    with capsys.disabled():
        print("\n" + line(n, title, ok, detail, dt))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, title, fn, limit in CRITERIA:
        ok, detail, dt = evaluate(fn, limit)
        print(line(n, title, ok, detail, dt))
        failed += not ok
    sys.exit(1 if failed else 0)
