import itertools

import pytest

from profcat.corpus import corpus, discrete_abelian, lukasiewicz_chain, z2_group
from profcat.fincat import StructuralError
from profcat.staraut import (FrobeniusStageError, PreconditionError, RotationalTrace,
                             check_delta_invertible, check_left_par_trace, from_compact,
                             out_of_hypothesis, rotate_trace, unrotate_trace,
                             validate_star_autonomous, white_frobenius)

COMPACT = ["discrete_abelian(2)", "discrete_abelian(3)", "group Z_2", "monoid{1,e}",
           "karoubi(monoid{1,e})"]


@pytest.fixture(scope="module")
def examples():
    return {ex.name: ex for ex in corpus()}


def traces(ex):
    RT = RotationalTrace.from_trace(ex.trace)
    return RT, rotate_trace(ex.star, RT)


def chain_inequalities_hold(n):
    """The chain laws as plain inequalities on 0..n."""
    tens = lambda a, b: max(0, a + b - n)  # noqa: E731
    par = lambda a, b: min(n, a + b)  # noqa: E731
    pts = range(n + 1)
    for a, b, c in itertools.product(pts, repeat=3):
        if tens(a, par(b, c)) > par(tens(a, b), c) or tens(par(a, b), c) > par(a, tens(b, c)):
            return False
    return all(tens(a, n - a) <= 0 and n <= par(n - a, a) for a in pts)


def test_chain_validates():
    assert chain_inequalities_hold(3)
    assert validate_star_autonomous(lukasiewicz_chain(3).star).passed


def test_missing_delta_names_the_triple():
    S = lukasiewicz_chain(3).star
    dr = dict(S.delta_R)
    del dr[1, 2, 3]
    with pytest.raises(StructuralError, match=r"deltaR at \(1/3,2/3,1\)"):
        validate_star_autonomous(S.with_(delta_R=dr))


def test_chain_admits_no_trace():
    # A⊗X <= B⊗X for A=1, B=0, X=0, yet 1 <= 0 fails: no Tr of that instance exists
    n = 3
    bad = [(a, b, x) for a, b, x in itertools.product(range(n + 1), repeat=3)
           if max(0, a + x - n) <= max(0, b + x - n) and a > b]
    assert (n, 0, 0) in bad
    with pytest.raises(PreconditionError):
        rotate_trace(lukasiewicz_chain(n).star, None)


def test_chain_delta_is_out_of_hypothesis():
    rep = check_delta_invertible(lukasiewicz_chain(3).star, None, None)
    assert out_of_hypothesis(rep)
    assert rep.passed and rep.checked == []


@pytest.mark.parametrize("name", COMPACT)
def test_compact_degeneracy(examples, name):
    ex = examples[name]
    D = ex.duality
    S = from_compact(D.base, D.dual, D.eval, D.coeval)
    assert validate_star_autonomous(S).passed


@pytest.mark.parametrize("name", COMPACT)
def test_rotation_is_a_left_par_trace(examples, name):
    ex = examples[name]
    _, LT = traces(ex)
    assert LT.side == "left_par"
    assert check_left_par_trace(ex.star, LT).passed


@pytest.mark.parametrize("name", COMPACT)
def test_rotation_round_trip(examples, name):
    ex = examples[name]
    RT, LT = traces(ex)
    assert unrotate_trace(ex.star, LT).assign == RT.assign


def test_rotation_of_identity_on_discrete():
    ex = discrete_abelian(3)
    _, LT = traces(ex)
    M = ex.star.par_side
    for a, x in itertools.product(range(3), repeat=2):
        assert LT.tr(a, a, x, M.id(M.ob(x, a))) == M.id(a)


def test_rotation_on_group_z2_equals_original():
    ex = z2_group()
    RT, LT = traces(ex)
    assert LT.assign == RT.assign == {(0, 0, 0, 0): 0, (0, 0, 0, 1): 1}


def test_corrupted_left_trace_fails_van():
    ex = z2_group()
    _, LT = traces(ex)
    bad = RotationalTrace("left_par", LT.structure, {**LT.assign, (0, 0, 0, 0): 1})
    assert "⅋-van-⊥" in check_left_par_trace(ex.star, bad).laws_failed()


def test_rotate_rejects_wrong_side():
    ex = z2_group()
    _, LT = traces(ex)
    with pytest.raises(StructuralError):
        rotate_trace(ex.star, LT)


@pytest.mark.parametrize("name", COMPACT)
def test_white_frobenius_is_natural_and_invertible(examples, name):
    ex = examples[name]
    RT, LT = traces(ex)
    W = white_frobenius(ex.star, RT, LT)
    assert W.report.passed and W.cell.is_invertible()
    assert W.stages == ["mix", "RTr", "LTr"]


def test_white_frobenius_names_failing_stage():
    ex = z2_group()
    RT, LT = traces(ex)
    bad = RotationalTrace("right_tensor", RT.structure, {**RT.assign, (0, 0, 0, 0): 1})
    with pytest.raises(FrobeniusStageError) as info:
        white_frobenius(ex.star, bad, LT)
    assert info.value.stage == "RTr"


@pytest.mark.parametrize("name", COMPACT)
def test_delta_inverts_when_hypotheses_hold(examples, name):
    ex = examples[name]
    RT, LT = traces(ex)
    rep = check_delta_invertible(ex.star, RT, LT)
    assert "hypotheses hold" in rep.notes
    assert "deltaR;deltaR' = id" in rep.checked and rep.passed


def test_wrong_typed_delta_is_structural():
    S = z2_group().star
    C = S.base
    with pytest.raises(StructuralError):
        validate_star_autonomous(S.with_(delta_L={**S.delta_L, (0, 0, 0): C.n_mor}))
