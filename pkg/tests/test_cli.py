import inspect
import json
import sys
from pathlib import Path

import pytest

from profcat import duality, fincat, monoidal, profcalc, staraut, traced
from profcat.cli import COMMANDS, main, run_command
from profcat.spec import generate_example, parse_spec, serialize

DATA = Path(__file__).parent / "data"

GENERATED = ["discrete_abelian(2)", "discrete_abelian(3)", "one_object_monoid(z2)",
             "one_object_monoid(idempotent)", "one_object_monoid(left_zero)",
             "karoubi_of(one_object_monoid(idempotent))", "walking_arrow",
             "lukasiewicz_chain(3)", "z2_graded"]


@pytest.fixture
def spec_file(tmp_path):
    def make(expr_or_text, name="x.cat"):
        p = tmp_path / name
        text = expr_or_text if ":" in expr_or_text else serialize(generate_example(expr_or_text))
        p.write_text(text, encoding="utf-8")
        return str(p)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_trace_passes_on_discrete_z3(spec_file, capsys):
    code, out = run(capsys, "check-trace", spec_file("discrete_abelian(3)"))
    assert code == 0
    assert out.splitlines()[-1] == "result: PASS"


def test_left_zero_sliding_witness(spec_file, capsys):
    code, out = run(capsys, "check-trace", spec_file("one_object_monoid(left_zero)"))
    assert code == 1
    assert "  FAIL sli [2] witness (pt, pt, pt, pt, x, y)" in out.splitlines()


def test_em_module_not_representable(capsys):
    code, out = run(capsys, "prof-represent", str(DATA / "em_module.cat"))
    assert code == 1
    assert "NotRepresentable: |Hom(pt,pt)| = 2 != 1 = |P(pt,*)|" in out
    assert "witness (*, pt, m, pt, 2, 1)" in out


def test_prof_compose_fixture(capsys):
    code, out = run(capsys, "prof-compose", str(DATA / "compose_pair.cat"))
    assert code == 0
    assert "fiber sizes [[2, 1], [0, 2]]" in out


def test_missing_section(spec_file, capsys):
    code, out = run(capsys, "check-trace", spec_file("lukasiewicz_chain(3)"))
    assert code == 2
    assert "ERROR: missing section [trace]" in out


def test_parse_error_exit_code(spec_file, capsys):
    code, out = run(capsys, "check-category", spec_file("objects: a\nmorphisms: f: a->b\n"))
    assert code == 2
    assert "line 2, col 12: undeclared object 'b'" in out


def test_missing_file(tmp_path, capsys):
    code, _ = run(capsys, "check-category", str(tmp_path / "nope.cat"))
    assert code == 2


def test_rotation_refused_on_chain(spec_file, capsys):
    path = spec_file("lukasiewicz_chain(3)")
    assert run(capsys, "rotate-trace", path)[0] == 2
    code, out = run(capsys, "check-delta", path)
    assert code == 0 and "OUT-OF-HYPOTHESIS" in out
    assert "  SKIP delta invertibility" in out.splitlines()


def test_twist_on_unit_is_named(spec_file, capsys):
    text = serialize(generate_example("one_object_monoid(z2)"))
    lines = [ln for ln in text.splitlines() if not ln.startswith("theta:")]
    path = spec_file("\n".join(lines + ["theta: pt=s"]) + "\n")
    code, out = run(capsys, "check-balanced", path)
    assert code == 1
    assert "  FAIL twist unit [1] witness (pt)" in out.splitlines()


def test_truncation_is_flagged(spec_file, capsys):
    path = spec_file("karoubi_of(one_object_monoid(idempotent))")
    code, out = run(capsys, "check-category", path, "--max-triples", "5")
    assert "TRUNCATED" in out
    code, out = run(capsys, "check-category", path, "--max-triples", "5", "--format", "machine")
    assert json.loads(out)["sections"][0]["truncated"] is True


def test_output_is_deterministic(spec_file, tmp_path, capsys):
    path = spec_file("z2_graded")
    outs = []
    for i in range(2):
        o = tmp_path / f"out{i}.txt"
        main(["derive-trace", path, "--out", str(o)])
        outs.append(o.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_machine_mirror_agrees_with_text(spec_file):
    doc = parse_spec(Path(spec_file("one_object_monoid(left_zero)")).read_text())
    r = run_command(doc, "check-trace")
    mirror = json.loads(r.machine)
    statuses = [f"{x['status']} {x['law']}" for s in mirror["sections"] for x in s["laws"]]
    text = [ln.strip() for ln in r.text.splitlines() if ln.startswith("  PASS") or ln.startswith("  FAIL")]
    assert [" ".join(t.split()[:2]) for t in text] == [" ".join(s.split()[:2]) for s in statuses]
    for s in mirror["sections"]:
        for x in s["laws"]:
            if x["status"] == "FAIL":
                assert f"witness ({', '.join(x['witness'])})" in r.text
    assert mirror["result"] == "FAIL" and mirror["exit_code"] == 1


def test_derive_trace_emits_a_section(spec_file):
    text = Path(spec_file("discrete_abelian(2)")).read_text()
    r = run_command(parse_spec(text), "derive-trace")
    assert r.exit_code == 0 and r.emitted.startswith("trace:")
    # the emitted section slots back into the source document
    stripped = "\n".join(ln for ln in text.splitlines() if not ln.startswith("trace:"))
    again = parse_spec(stripped + "\n" + r.emitted)
    assert sorted(again.values("trace")) == sorted(parse_spec(text).values("trace"))


def test_generate_command(capsys):
    code, out = run(capsys, "generate", "one_object_monoid(idempotent)")
    assert code == 0
    C = parse_spec(out)
    assert C.values("objects") == [("pt",)]
    assert run(capsys, "generate", "discrete_abelian(99)")[0] == 2


def _validators():
    out = []
    for m in (fincat, profcalc, monoidal, traced, duality, staraut):
        for n, f in inspect.getmembers(m, inspect.isfunction):
            if f.__module__ == m.__name__ and not n.startswith("_") and \
                    "ValidationReport" in str(inspect.signature(f).return_annotation):
                out.append(f)
    return out


def test_every_validator_is_reachable():
    docs = [generate_example(e) for e in GENERATED]
    docs += [parse_spec((DATA / n).read_text()) for n in ("em_module.cat", "compose_pair.cat")]
    called = set()

    def prof(frame, event, arg):
        if event == "call":
            called.add(frame.f_code)

    sys.setprofile(prof)
    try:
        for doc in docs:
            for cmd in COMMANDS:
                run_command(doc, cmd)
    finally:
        sys.setprofile(None)
    missing = [f.__name__ for f in _validators() if f.__code__ not in called]
    assert missing == []
    assert len(_validators()) >= 18
