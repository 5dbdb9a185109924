import itertools

import pytest

from profcat.corpus import (corpus, discrete_abelian, idempotent_monoid, walking_arrow,
                            z2_graded, z2_group)
from profcat.duality import (DualityStructure, check_gamma_invertible, check_nearly_tracing_axioms,
                             compare_with_textbook, derive_trace, nearly_trace, search_dualities,
                             twisted_trace, validate_autonomous)
from profcat.fincat import StructuralError
from profcat.monoidal import validate_monoidal
from profcat.traced import validate_trace_axioms

VALID = ["discrete_abelian(2)", "discrete_abelian(3)", "group Z_2", "monoid{1,e}",
         "karoubi(monoid{1,e})", "z2_graded"]


@pytest.fixture(scope="module")
def examples():
    return {ex.name: ex for ex in corpus()}


def brute_has_dual(M, a):
    """Some (s, eval, coeval) of the right types satisfying both snakes."""
    C, t, inv, al = M.base, M.mor, M.base.inverse, M.alpha
    for s in range(C.n_obj):
        for ev, co in itertools.product(C.hom(M.ob(s, a), M.unit), C.hom(M.unit, M.ob(a, s))):
            one = C.chain(inv(M.lambda_[a]), t(co, M.id(a)), al[a, s, a], t(M.id(a), ev), M.rho[a])
            two = C.chain(inv(M.rho[s]), t(M.id(s), co), inv(al[s, a, s]), t(ev, M.id(s)),
                          M.lambda_[s])
            if one == M.id(a) and two == M.id(s):
                return True
    return False


@pytest.mark.parametrize("name", VALID)
def test_corpus_duals_validate(examples, name):
    D = examples[name].duality
    assert validate_autonomous(D).passed
    assert isinstance(search_dualities(D.base), DualityStructure)


def test_walking_arrow_has_no_dual_for_zero():
    M = walking_arrow().monoidal
    assert search_dualities(M) == {0: "no dual object with eval/coeval satisfying the snakes"}
    # coeval_0 would need 1 -> min(0, s) = 0
    assert [brute_has_dual(M, a) for a in range(2)] == [False, True]


def test_gamma_fails_on_poset_meet():
    rep = check_gamma_invertible(walking_arrow().monoidal)
    v = rep.first("γ_L bijective")
    assert v is not None and v.detail == "not surjective"
    assert tuple(int(x) for x in v.witness) == (1, 0, 0, 0)


@pytest.mark.parametrize("name", [ex.name for ex in corpus()])
def test_gamma_invertible_iff_duals_exist(examples, name):
    M = examples[name].monoidal
    if M.base.n_obj > 3 or not validate_monoidal(M).passed:
        pytest.skip("outside the ≤3 object, valid monoidal range")
    brute = all(brute_has_dual(M, a) for a in range(M.base.n_obj))
    assert check_gamma_invertible(M).passed == brute


def test_gamma_invertible_on_discrete_and_idempotent():
    assert check_gamma_invertible(discrete_abelian(2).monoidal).passed
    assert check_gamma_invertible(idempotent_monoid().monoidal).passed


def test_wrong_typed_eval_is_structural():
    D = discrete_abelian(2).duality
    with pytest.raises(StructuralError):
        validate_autonomous(D.with_(eval={0: D.base.id(0), 1: D.base.id(1)}))


def test_nearly_trace_of_identity_is_identity():
    D = discrete_abelian(3).duality
    M = D.base
    for a, x in itertools.product(range(3), repeat=2):
        assert nearly_trace(D, M.id(M.ob(a, x)), a, a, x) == M.id(a)


def test_nearly_trace_on_idempotent_monoid():
    D = idempotent_monoid().duality
    e = D.base.base.morphism_id("e")
    assert nearly_trace(D, e, 0, 0, 0) == e


def test_nearly_trace_type_mismatch():
    D = discrete_abelian(2).duality
    with pytest.raises(StructuralError):
        nearly_trace(D, D.base.id(0), 0, 0, 1)


@pytest.mark.parametrize("name", VALID)
def test_nearly_tracing_axioms_hold(examples, name):
    assert check_nearly_tracing_axioms(examples[name].duality).passed


def test_broken_coeval_is_localized():
    D = z2_group().duality
    s = D.base.base.morphism_id("s")
    bad = D.with_(coeval={0: s})
    assert not validate_autonomous(bad).passed
    rep = check_nearly_tracing_axioms(bad)
    assert rep.laws_failed()[0] == "NTr-van-I"
    assert "NTr-sup" not in rep.laws_failed()


@pytest.mark.parametrize("name", VALID)
def test_derived_trace_passes_the_suite(examples, name):
    D = examples[name].duality
    T = derive_trace(D)
    # yanking with θ is only expected when the twist is trivial
    assert validate_trace_axioms(T, balanced=D.base.symmetric_twist).passed
    assert compare_with_textbook(D, T) == []


def test_derive_trace_needs_braiding():
    D = discrete_abelian(2).duality
    with pytest.raises(StructuralError):
        derive_trace(D.with_(base=D.base.with_(braiding=None)))


def test_twist_gives_a_second_trace():
    ex = z2_graded()
    T1 = derive_trace(ex.duality)
    T2 = twisted_trace(T1)
    assert validate_trace_axioms(T1).passed and validate_trace_axioms(T2).passed
    differ = sorted(k for k in T1.assign if T1.assign[k] != T2.assign[k])
    assert differ[0] == (0, 0, 1, 2)
    # balanced yanking tells them apart: only the twisted one has Tr(σ) = θ
    assert validate_trace_axioms(T2, balanced=True).passed
    assert not validate_trace_axioms(T1, balanced=True).passed


def test_derived_trace_on_group_z2_is_identity():
    T = derive_trace(z2_group().duality)
    assert all(k[3] == v for k, v in T.assign.items())
