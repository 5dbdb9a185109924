import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from profcat.corpus import IDEMPOTENT, LEFT_ZERO, discrete_category, monoid_category, poset_category
from profcat.fincat import (
    FiniteCategory, Functor, StructuralError, all_functors, cauchy_report, idempotents,
    is_full_and_faithful, karoubi_envelope, op_category, product_category, splitting,
    validate_category, validate_functor,
)


def arrow():
    return poset_category(["0", "1"], lambda i, j: i <= j)


def test_one_object_minimal():
    C = FiniteCategory.build(["a"], [("id_a", "a", "a")], {("id_a", "id_a"): "id_a"})
    assert (C.n_obj, C.n_mor) == (1, 1)
    assert validate_category(C).passed


def test_identity_composites_are_filled_in():
    C = FiniteCategory.build(["a", "b"], [("1a", "a", "a"), ("1b", "b", "b"), ("f", "a", "b")],
                             {}, {"a": "1a", "b": "1b"})
    f = C.morphism_id("f")
    assert C.compose(C.identity[0], f) == f and C.compose(f, C.identity[1]) == f
    assert C.hom(1, 0) == []


def test_non_associative_table_is_reported():
    # 1 is the identity; x;x = y, x;y = y, y;x = y, y;y = x
    table = np.array([[0, 1, 2], [1, 2, 2], [2, 2, 1]])
    C = FiniteCategory.from_arrays(["pt"], ["1", "x", "y"], [0] * 3, [0] * 3, [0], table)
    rep = validate_category(C)
    bad = [(f, g, h) for f, g, h in itertools.product(range(3), repeat=3)
           if table[table[f, g], h] != table[f, table[g, h]]]
    assert bad
    assert rep.laws_failed() == ["associativity"]
    assert len(rep.violations) == len(bad)
    assert tuple(int(w) for w in rep.first("associativity").witness) == bad[0]


def test_identity_law_violation():
    table = np.array([[1, 1], [1, 1]])
    C = FiniteCategory.from_arrays(["pt"], ["1", "e"], [0, 0], [0, 0], [0], table)
    assert "identity" in validate_category(C).laws_failed()


def test_dangling_names_raise():
    with pytest.raises(StructuralError):
        FiniteCategory.build(["a"], [("f", "a", "b")], {})
    with pytest.raises(StructuralError):
        FiniteCategory.build(["a"], [("f", "a", "a")], {("f", "g"): "f"})


def test_budget_truncates():
    C = monoid_category(*LEFT_ZERO)
    rep = validate_category(C, max_triples=3)
    assert rep.truncated and rep.passed


def test_karoubi_of_idempotent_monoid():
    C = monoid_category(*IDEMPOTENT)
    K, emb = karoubi_envelope(C)
    # brute force: objects are idempotents, morphisms p -> q are f with p;f;q = f
    t = C.table
    idem = [e for e in range(2) if t[e, e] == e]
    mors = [(p, q, f) for p in idem for q in idem for f in range(2) if t[t[p, f], q] == f]
    assert (K.n_obj, K.n_mor) == (len(idem), len(mors)) == (2, 5)
    assert validate_category(K).passed
    assert validate_functor(emb).passed
    assert is_full_and_faithful(emb)


def test_cauchy_report_on_monoid_and_envelope():
    C = monoid_category(*IDEMPOTENT)
    rep = cauchy_report(C)
    assert rep.laws_failed() == ["idempotent splits"]
    assert [int(x) for x in rep.first("idempotent splits").witness] == [0, 1]
    K, _ = karoubi_envelope(C)
    assert cauchy_report(K).passed
    for e in idempotents(K):
        b, r, s = splitting(K, e)
        assert K.compose(r, s) == e.morphism and K.compose(s, r) == K.identity[b]


def test_all_functors_arrow_to_arrow():
    A = arrow()
    fs = all_functors(A, A)
    # brute force: object maps with Hom(F0, F1) nonempty; thin, so one choice each
    expect = sum(1 for a, b in itertools.product(range(2), repeat=2) if A.hom(a, b))
    assert len(fs) == expect == 3
    assert all(validate_functor(F).passed for F in fs)


def test_functor_violation_is_reported():
    A = arrow()
    u = A.morphism_id("0≤1")
    bad = Functor(A, A, (0, 1), tuple(u if m == A.identity[0] else m for m in range(A.n_mor)))
    assert not validate_functor(bad).passed


def test_op_and_product():
    A = arrow()
    assert validate_category(op_category(A)).passed
    assert op_category(A).hom(1, 0) == A.hom(0, 1)
    P = product_category(A, discrete_category(["x", "y"]))
    assert (P.n_obj, P.n_mor) == (4, 6)
    assert validate_category(P).passed


@st.composite
def posets(draw):
    n = draw(st.integers(1, 4))
    rel = {(i, i) for i in range(n)}
    for i, j in itertools.combinations(range(n), 2):
        if draw(st.booleans()):
            rel.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return n, rel


@settings(max_examples=40, deadline=None)
@given(posets())
def test_posets_validate_and_are_cauchy_complete(p):
    n, rel = p
    C = poset_category([str(i) for i in range(n)], lambda i, j: (i, j) in rel)
    assert C.n_mor == len(rel)
    assert validate_category(C).passed
    assert cauchy_report(C).passed
    K, emb = karoubi_envelope(C)
    assert (K.n_obj, K.n_mor) == (C.n_obj, C.n_mor)
    assert is_full_and_faithful(emb)
