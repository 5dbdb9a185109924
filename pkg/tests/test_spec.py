import json
from pathlib import Path

import pytest

from profcat.corpus import corpus
from profcat.fincat import validate_category
from profcat.monoidal import validate_monoidal
from profcat.profcalc import check_profunctor
from profcat.spec import (SpecError, build, generate_example, machine_json, parse_spec, serialize,
                          to_machine)
from profcat.traced import validate_trace_axioms

DATA = Path(__file__).parent / "data"

EXPRESSIONS = ["discrete_abelian(2)", "discrete_abelian(3)", "lukasiewicz_chain(3)",
               "one_object_monoid(idempotent)", "one_object_monoid(left_zero)",
               "one_object_monoid(z2)", "one_object_monoid(1,e;e,e)",
               "karoubi_of(one_object_monoid(idempotent))", "walking_arrow", "poset2_meet",
               "z2_graded"]

NON_ASSOC = """\
objects: pt
morphisms: 1: pt->pt, x: pt->pt, y: pt->pt
identity: pt=1
compose: x;x=y, x;y=y, y;x=y, y;y=x
"""


def error_at(text):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    return info.value.line, info.value.col, info.value.message


def test_minimal_inline_document():
    doc = parse_spec("objects: a; morphisms: 1: a->a; identity: a=1  # one line")
    C = build(doc).category
    assert (C.objects, C.morphisms) == (("a",), ("1",))
    assert validate_category(C).passed


def test_identity_inferred_from_compose():
    C = build(parse_spec("objects: a; morphisms: id_a: a->a; compose: id_a;id_a=id_a")).category
    assert C.identity[0] == C.morphism_id("id_a")


def test_comments_and_repeated_sections():
    doc = parse_spec("# header\nobjects: a\nobjects: b\n"
                     "morphisms: 1a: a->a, 1b: b->b\nmorphisms: f: a->b  # arrow\n"
                     "identity: a=1a, b=1b\n")
    assert doc.values("objects") == [("a",), ("b",)]
    assert build(doc).category.n_mor == 3


@pytest.mark.parametrize("expr", EXPRESSIONS)
def test_round_trip(expr):
    doc = generate_example(expr)
    text = serialize(doc)
    again = parse_spec(text)
    assert serialize(again) == text
    assert to_machine(again) == to_machine(doc)
    assert json.loads(machine_json(doc)) == to_machine(doc)


def test_undeclared_reference_position():
    assert error_at("objects: a\nmorphisms: f: a->b") == (2, 12, "undeclared object 'b'")


def test_duplicate_declaration():
    assert error_at("objects: a, a") == (1, 13, "duplicate declaration of 'a'")


def test_arity_error():
    line, _, msg = error_at("objects: a\nmorphisms: 1: a->a\nidentity: a=1\ncompose: 1;1;1=1")
    assert line == 4 and msg == "malformed name '1;1'"


def test_unknown_section():
    assert error_at("objects: a\nfoo: x")[:2] == (2, 1)


def test_non_associative_table_is_reported():
    C = build(parse_spec(NON_ASSOC)).category
    rep = validate_category(C)
    assert rep.laws_failed() == ["associativity"]
    assert rep.violations[0].witness


def test_generate_rejects_bad_arguments():
    from profcat.fincat import StructuralError
    for bad in ("discrete_abelian(0)", "discrete_abelian(x)", "nonsense", "one_object_monoid(1,e;e)"):
        with pytest.raises(StructuralError):
            generate_example(bad)


def test_karoubi_of_a_file(tmp_path):
    p = tmp_path / "idem.cat"
    p.write_text(serialize(generate_example("one_object_monoid(idempotent)")))
    doc = generate_example(f"karoubi_of({p})")
    assert build(doc).category.n_mor == 5


@pytest.mark.parametrize("ex", corpus(), ids=lambda e: e.name)
def test_build_preserves_verdicts(ex):
    doc = parse_spec(serialize(generate_example_for(ex)))
    b = build(doc)
    assert validate_category(b.category).passed
    assert validate_monoidal(b.monoidal).passed == validate_monoidal(ex.monoidal).passed
    if ex.trace is not None:
        assert validate_trace_axioms(b.trace).passed == validate_trace_axioms(ex.trace).passed
    assert (b.star is None) == (ex.star is None)


def generate_example_for(ex):
    from profcat.spec import document_from
    return document_from(ex.category, ex.monoidal, ex.trace, ex.duality, ex.star, name=ex.name)


def test_profunctor_blocks_build():
    b = build(parse_spec((DATA / "em_module.cat").read_text()))
    M = b.profunctors["M"]
    assert M.n == 1 and check_profunctor(M).passed
    pair = build(parse_spec((DATA / "compose_pair.cat").read_text())).profunctors
    assert sorted(pair) == ["P", "Q"]
