import itertools

import pytest

from profcat.corpus import (discrete_abelian, idempotent_monoid, karoubi_of, left_zero_monoid,
                            z2_graded, z2_group)
from profcat.fincat import StructuralError
from profcat.traced import (AxiomUniverse, TraceStructure, cat_level_verdict,
                            check_traced_pseudomonoid, loop_coend, trace_from_function,
                            trace_two_cell, validate_trace_axioms)


def naive_loop_classes(M, A, B):
    """Sliding classes by fixpoint merging of Python sets."""
    C = M.base
    gens = [(Z, f) for Z in range(C.n_obj) for f in C.hom(M.ob(A, Z), M.ob(B, Z))]
    block = {g: frozenset([g]) for g in gens}
    moves = []
    for p in range(C.n_mor):
        Z2, Z = C.src[p], C.dst[p]
        for h in C.hom(M.ob(A, Z), M.ob(B, Z2)):
            moves.append(((Z, C.compose(h, M.mor(M.id(B), p))),
                          (Z2, C.compose(M.mor(M.id(A), p), h))))
    changed = True
    while changed:
        changed = False
        for u, v in moves:
            if block[u] is not block[v]:
                merged = block[u] | block[v]
                for g in merged:
                    block[g] = merged
                changed = True
    return sorted(sorted(b) for b in set(block.values()))


def test_forced_trace_on_discrete_z3():
    T = discrete_abelian(3).trace
    assert validate_trace_axioms(T, balanced=True).passed


def test_van_i_forces_identity_on_group_z2():
    M = z2_group().monoidal
    C = M.base
    passing = []
    for vals in itertools.product(range(2), repeat=2):
        T = trace_from_function(M, lambda A, B, X, f: vals[f])
        if validate_trace_axioms(T, balanced=True).passed:
            passing.append(vals)
    assert passing == [(0, 1)]  # Tr(1) = 1, Tr(s) = s
    assert C.morphisms == ("1", "s")


def test_left_zero_sliding_witness():
    T = left_zero_monoid().trace
    C = T.base.base
    rep = validate_trace_axioms(T)
    v = rep.first("sli")
    A, B, X, X2, h, p = v.witness
    assert (C.morphisms[h], C.morphisms[p]) == ("x", "y")
    # replay: Tr(h;(1⊗p)) = x·y = x and Tr((1⊗p);h) = y·x = y
    M = T.base
    lhs = T.tr(A, B, X, C.compose(h, M.mor(M.id(B), p)))
    rhs = T.tr(A, B, X2, C.compose(M.mor(M.id(A), p), h))
    assert (C.morphisms[lhs], C.morphisms[rhs]) == ("x", "y")


def test_partial_trace_is_structural():
    T = z2_group().trace
    key = next(iter(T.assign))
    assign = {k: v for k, v in T.assign.items() if k != key}
    with pytest.raises(StructuralError):
        validate_trace_axioms(TraceStructure(T.base, assign))


def test_universe_restricts_instances():
    T = left_zero_monoid().trace
    C = T.base.base
    U = AxiomUniverse([0], [C.morphism_id("1"), C.morphism_id("x")])
    assert validate_trace_axioms(T, U).first("sli") is None


def test_loop_coend_discrete_z2():
    M = discrete_abelian(2).monoidal
    classes, _ = loop_coend(M, 0, 0)
    assert len(classes) == 2
    assert loop_coend(M, 0, 1)[0] == []


@pytest.mark.parametrize("make", [idempotent_monoid, left_zero_monoid, z2_graded,
                                  lambda: karoubi_of(idempotent_monoid())])
def test_loop_coend_matches_naive_merging(make):
    M = make().monoidal
    n = M.base.n_obj
    for A, B in itertools.product(range(n), repeat=2):
        classes, _ = loop_coend(M, A, B)
        assert sorted(sorted(c) for c in classes) == naive_loop_classes(M, A, B)


def test_loop_coend_idempotent_monoid_has_two_classes():
    classes, _ = loop_coend(idempotent_monoid().monoidal, 0, 0)
    assert [[f for _, f in c] for c in classes] == [[0], [1]]


def test_trace_cell_on_forced_trace():
    cell, rep = trace_two_cell(discrete_abelian(3).trace)
    assert rep.passed


def test_trace_cell_names_sliding_and_tightening():
    cell, rep = trace_two_cell(left_zero_monoid().trace)
    assert rep.laws_failed() == ["well-definedness (sli)", "naturality (tight)"]


@pytest.mark.parametrize("make", [discrete_abelian, z2_group, idempotent_monoid,
                                  left_zero_monoid])
def test_cat_and_prof_verdicts_agree(make):
    ex = make(2) if make is discrete_abelian else make()
    T = ex.trace
    cat = cat_level_verdict(T, balanced=True)
    rep = check_traced_pseudomonoid(T, balanced=True)
    assert rep.first("agreement with Cat-level suite") is None
    assert rep.passed == cat == (make is not left_zero_monoid)


def single_injections(T):
    C = T.base.base
    for key, g in sorted(T.assign.items()):
        A, B = key[:2]
        for g2 in C.hom(A, B):
            if g2 != g:
                yield key, T.with_value(key, g2)


@pytest.mark.parametrize("make", [lambda: karoubi_of(idempotent_monoid()), z2_graded])
def test_injection_invariant(make):
    T0 = make().trace
    seen_sli = False
    for key, T in single_injections(T0):
        cat = validate_trace_axioms(T, balanced=True)
        _, prof = trace_two_cell(T)
        sli, tight = "sli" in cat.laws_failed(), "tight" in cat.laws_failed()
        assert ("well-definedness (sli)" in prof.laws_failed()) == sli, key
        assert ("naturality (tight)" in prof.laws_failed()) == tight, key
        seen_sli |= sli
        full = check_traced_pseudomonoid(T, balanced=True)
        assert full.first("agreement with Cat-level suite") is None, key
    assert seen_sli or make is z2_graded


def test_symmetric_group_yanks():
    T = z2_group().trace
    rep = check_traced_pseudomonoid(T, balanced=True)
    assert "Tr-yank" in rep.checked and rep.passed
