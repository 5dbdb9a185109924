import dataclasses
import itertools

import pytest

from profcat.corpus import (corpus, discrete_abelian, idempotent_monoid, karoubi_of,
                            left_zero_monoid, z2_graded, z2_group)
from profcat.fincat import StructuralError
from profcat.monoidal import (check_pseudomonoid_laws, is_symmetric, to_pseudomonoid_in_prof,
                              validate_balanced, validate_braided, validate_monoidal)
from profcat.profcalc import corrupt_swap


def pentagon_failures(M):
    """Reference pentagon, written against the raw tables."""
    C, t = M.base, M.base.table
    out = []
    for a, b, c, d in itertools.product(range(C.n_obj), repeat=4):
        al = M.alpha
        lhs = t[al[M.ob(a, b), c, d], al[a, b, M.ob(c, d)]]
        x = t[M.mor(al[a, b, c], C.identity[d]), al[a, M.ob(b, c), d]]
        rhs = t[x, M.mor(C.identity[a], al[b, c, d])]
        if lhs != rhs:
            out.append((a, b, c, d))
    return out


GOOD = ["discrete_abelian(2)", "discrete_abelian(3)", "group Z_2", "monoid{1,e}",
        "karoubi(monoid{1,e})", "walking_arrow", "lukasiewicz_chain(3)", "z2_graded"]


@pytest.fixture(scope="module")
def examples():
    return {ex.name: ex for ex in corpus()}


@pytest.mark.parametrize("name", GOOD)
def test_corpus_monoidal_passes(examples, name):
    M = examples[name].monoidal
    assert validate_monoidal(M).passed
    assert validate_braided(M).passed
    assert validate_balanced(M).passed


def test_left_zero_rho_not_natural():
    M = left_zero_monoid().monoidal
    rep = validate_monoidal(M)
    # f ⊗ 1 = 1 under the second projection, so ρ natural would force f = 1
    C = M.base
    expect = [f for f in range(C.n_mor) if C.compose(M.mor(f, M.id(0)), M.rho[0]) != f]
    assert [C.morphisms[f] for f in expect] == ["x", "y"]
    assert rep.laws_failed() == ["rho naturality"]
    assert [int(v.witness[0]) for v in rep.violations] == expect


def test_left_zero_braiding_not_natural():
    rep = validate_braided(left_zero_monoid().monoidal)
    assert "sigma naturality" in rep.laws_failed()


def test_corrupted_alpha_breaks_pentagon():
    M = z2_group().monoidal
    s = M.base.morphism_id("s")
    bad = M.with_(alpha={k: s for k in M.alpha})
    rep = validate_monoidal(bad)
    expect = pentagon_failures(bad)
    assert expect and rep.first("pentagon") is not None
    assert [tuple(int(x) for x in v.witness) for v in rep.violations if v.law == "pentagon"] == expect


def test_wrong_typed_component_is_structural():
    M = z2_graded().monoidal
    with pytest.raises(StructuralError):
        validate_monoidal(M.with_(rho={0: M.id(0), 1: M.id(0)}))


def test_twist_on_unit_must_be_identity():
    M = z2_group().monoidal
    s = M.base.morphism_id("s")
    rep = validate_balanced(M.with_(twist={0: s}))
    assert rep.first("twist unit").witness == (0,)


def test_non_natural_twist():
    M = left_zero_monoid().monoidal
    x = M.base.morphism_id("x")
    rep = validate_balanced(M.with_(twist={0: x}))
    assert "twist naturality" in rep.laws_failed()


def test_identity_twist_forces_symmetry(examples):
    for name in GOOD:
        M = examples[name].monoidal
        if M.symmetric_twist and validate_balanced(M).passed:
            assert is_symmetric(M)


def test_mult_fibers_on_discrete_z2():
    M = discrete_abelian(2).monoidal
    P = to_pseudomonoid_in_prof(M)
    # mult(c; (a, b)) = Hom(c, a⊗b): singleton exactly when c = a + b
    for c, ab in itertools.product(range(2), range(4)):
        a, b = divmod(ab, 2)
        assert len(P.mult.fiber(c, ab)) == (1 if c == (a + b) % 2 else 0)


def test_mult_on_idempotent_monoid_has_two_elements():
    P = to_pseudomonoid_in_prof(idempotent_monoid().monoidal)
    assert len(P.mult.fiber(0, 0)) == 2


@pytest.mark.parametrize("name", GOOD + ["left_zero{1,x,y}"])
def test_soundness_bridge_on_corpus(examples, name):
    M = examples[name].monoidal
    cat = validate_monoidal(M).passed
    prof = check_pseudomonoid_laws(to_pseudomonoid_in_prof(M)).passed
    assert cat == prof == (name != "left_zero{1,x,y}")


def test_soundness_bridge_on_corrupted_alpha():
    for ex in (z2_group(), z2_graded(), karoubi_of(idempotent_monoid())):
        M = ex.monoidal
        C = M.base
        for key in sorted(M.alpha):
            f = M.alpha[key]
            a = C.src[f]
            for g in C.hom(a, a):
                if g == C.identity[a] or not C.is_iso(g):
                    continue
                bad = M.with_(alpha={**M.alpha, key: C.compose(g, f)})
                cat = validate_monoidal(bad).passed
                prof = check_pseudomonoid_laws(to_pseudomonoid_in_prof(bad), adjoints=False).passed
                assert cat == prof, (ex.name, key)


def test_corrupted_alpha2_swap_is_caught():
    P = to_pseudomonoid_in_prof(idempotent_monoid().monoidal)
    A = P.alpha2.source
    fiber = next(f for f in (A.fiber(c, d) for c, d in set(A.loc)) if len(f) >= 2)
    bad = dataclasses.replace(P, alpha2=corrupt_swap(P.alpha2, fiber[0], fiber[1]))
    rep = check_pseudomonoid_laws(bad, adjoints=False)
    assert not rep.passed
    assert set(rep.laws_failed()) & {"alpha2 naturality (right action)",
                                     "alpha2 naturality (left action)", "pentagon",
                                     "alpha2 natural"}
    assert rep.violations[0].witness


def test_left_zero_prof_failure_is_rho2():
    rep = check_pseudomonoid_laws(to_pseudomonoid_in_prof(left_zero_monoid().monoidal))
    assert rep.laws_failed()[0].startswith("rho2")
