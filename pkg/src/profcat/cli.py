"""Command-line front end.

``profcat <command> <specfile> [--max-triples N] [--format text|machine] [--out FILE]``

Exit status: 0 when every checked law holds, 1 on a law failure, 2 on a
parse, structural or precondition error.  ``profcat generate <expr>`` writes
a corpus example as catspec text.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .fincat import (DEFAULT_MAX_TRIPLES, Elem, FiniteCategory, Mor, Ob, StructuralError,
                     ValidationReport, cauchy_report, validate_category)
from .profcalc import (CoherenceError, Profunctor, check_profunctor, check_two_cell,
                       compose_profunctors, find_representation, find_right_adjoint,
                       structural_iso)
from .spec import (SpecDocument, build, document_from, generate_example, machine_json,
                   parse_spec, serialize)


@dataclass
class LawStatus:
    law: str
    status: str  # PASS, FAIL or SKIP
    count: int = 0
    witness: tuple[str, ...] = ()
    detail: str = ""


@dataclass
class SectionResult:
    title: str
    laws: list[LawStatus] = field(default_factory=list)
    truncated: bool = False
    notes: list[str] = field(default_factory=list)


@dataclass
class RenderedReport:
    command: str
    spec: str
    sections: list[SectionResult] = field(default_factory=list)
    emitted: str | None = None
    error: str | None = None
    exit_code: int = 0
    text: str = ""
    machine: str = ""


class _Namer:
    """Turns tagged ids in witness tuples into declared names."""

    def __init__(self, C: FiniteCategory, P: Profunctor | None = None):
        self.C, self.P = C, P

    def __call__(self, w) -> str:
        C = self.C
        if isinstance(w, Ob) and 0 <= w < C.n_obj:
            return C.objects[w]
        if isinstance(w, Mor) and 0 <= w < C.n_mor:
            return C.morphisms[w]
        if isinstance(w, Elem):
            if self.P is not None and 0 <= w < self.P.n:
                return str(self.P.labels[w])
            return f"#{int(w)}"
        if isinstance(w, tuple):
            return "(" + ", ".join(self(x) for x in w) + ")"
        return str(w)


def section_from(title: str, rep: ValidationReport, namer: _Namer) -> SectionResult:
    laws = []
    for law in rep.checked + rep.laws_failed():
        if law not in laws:
            laws.append(law)
    out = SectionResult(title, truncated=rep.truncated, notes=list(rep.notes))
    for law in laws:
        vs = [v for v in rep.violations if v.law == law]
        if vs:
            out.laws.append(LawStatus(law, "FAIL", len(vs),
                                      tuple(namer(x) for x in vs[0].witness), vs[0].detail))
        else:
            out.laws.append(LawStatus(law, "PASS"))
    if not laws:
        # nothing was evaluated when the operation's hypotheses are absent
        skipped = any(n.startswith("OUT-OF-HYPOTHESIS") for n in rep.notes)
        out.laws.append(LawStatus(rep.name or title, "SKIP" if skipped else "PASS"))
    return out


# ---------------------------------------------------------------- commands

class _Run:
    def __init__(self, doc: SpecDocument, max_triples: int | None):
        self.doc = doc
        self.max_triples = max_triples
        self.built = build(doc)
        self.C = self.built.category
        self.sections: list[SectionResult] = []
        self.emitted: str | None = None

    def add(self, title: str, rep: ValidationReport, P: Profunctor | None = None) -> None:
        self.sections.append(section_from(title, rep, _Namer(self.C, P)))

    def need(self, attr: str, *sections: str):
        value = getattr(self.built, attr)
        if value is None:
            self.doc.require(*sections)
            raise StructuralError(f"missing section [{sections[0]}]")
        return value


def _check_category(r: _Run) -> None:
    r.add("category", validate_category(r.C, r.max_triples))


def _check_monoidal(r: _Run) -> None:
    from .monoidal import validate_monoidal
    r.add("monoidal", validate_monoidal(r.need("monoidal", "tensor"), r.max_triples))


def _check_braided(r: _Run) -> None:
    from .monoidal import validate_braided
    M = r.need("monoidal", "tensor")
    if M.braiding is None:
        r.doc.require("sigma")
    r.add("braided", validate_braided(M, r.max_triples))


def _check_balanced(r: _Run) -> None:
    from .monoidal import validate_balanced
    M = r.need("monoidal", "tensor")
    r.doc.require("sigma", "theta")
    r.add("balanced", validate_balanced(M, r.max_triples))


def _balanced(M) -> bool:
    # yanking is checked whenever a braiding and twist are present
    return M.braiding is not None and M.twist is not None


def _check_trace(r: _Run) -> None:
    from .traced import trace_two_cell, validate_trace_axioms
    T = r.need("trace", "tensor", "trace")
    r.add("trace axioms", validate_trace_axioms(T, balanced=_balanced(T.base),
                                                max_triples=r.max_triples))
    cell, rep = trace_two_cell(T)
    r.add("trace as a 2-cell out of the loop coend", rep)


def _check_pseudomonoid(r: _Run) -> None:
    from .monoidal import check_pseudomonoid_laws, to_pseudomonoid_in_prof
    from .traced import check_traced_pseudomonoid
    M = r.need("monoidal", "tensor")
    r.add("pseudomonoid in Prof", check_pseudomonoid_laws(to_pseudomonoid_in_prof(M)))
    if r.built.trace is not None:
        r.add("traced pseudomonoid", check_traced_pseudomonoid(r.built.trace,
                                                               balanced=_balanced(M)))


def _check_autonomous(r: _Run) -> None:
    from .duality import check_gamma_invertible, check_nearly_tracing_axioms, validate_autonomous
    D = r.need("duality", "tensor", "dual")
    r.add("autonomous", validate_autonomous(D))
    r.add("gamma", check_gamma_invertible(D.base))
    r.add("nearly tracing", check_nearly_tracing_axioms(D))


def _derive_trace(r: _Run) -> None:
    from .duality import compare_with_textbook, derive_trace, twisted_trace
    from .traced import validate_trace_axioms
    D = r.need("duality", "tensor", "dual")
    T = derive_trace(D)
    # the derived trace yanks to the identity, so θ = 1 is the only twist it fits
    yank = _balanced(D.base) and D.base.symmetric_twist
    r.add("derived trace", validate_trace_axioms(T, balanced=yank, max_triples=r.max_triples))
    diff = compare_with_textbook(D, T)
    rep = ValidationReport("textbook")
    rep.checked.append("agrees with the textbook trace")
    for inst in diff[:1]:
        rep.add("agrees with the textbook trace", tuple(inst))
    r.add("textbook comparison", rep)
    if _balanced(D.base) and not D.base.symmetric_twist:
        r.add("twisted trace", validate_trace_axioms(twisted_trace(T), balanced=True,
                                                     max_triples=r.max_triples))
    doc = document_from(r.C, trace=T)
    r.emitted = "".join(line + "\n" for line in serialize(doc).splitlines()
                        if line.startswith("trace:"))


def _check_star(r: _Run) -> None:
    from .staraut import check_left_par_trace, validate_star_autonomous
    S = r.need("star", "tensor", "par")
    r.add("*-autonomous", validate_star_autonomous(S, r.max_triples))
    if r.built.ltrace is not None:
        r.add("left ⅋-trace", check_left_par_trace(S, r.built.ltrace))


def _rotate_trace(r: _Run) -> None:
    from .staraut import RotationalTrace, check_left_par_trace, rotate_trace, unrotate_trace
    S = r.need("star", "tensor", "par")
    T = r.need("trace", "tensor", "trace")
    RT = RotationalTrace.from_trace(T)
    LT = rotate_trace(S, RT)
    r.add("rotated left ⅋-trace", check_left_par_trace(S, LT))
    back = unrotate_trace(S, LT)
    rep = ValidationReport("round trip")
    rep.checked.append("right→left→right round trip")
    for key in sorted(RT.assign):
        if back.assign.get(key) != RT.assign[key]:
            A, B, X, f = key
            rep.add("right→left→right round trip", (Ob(A), Ob(B), Ob(X), Mor(f)))
    r.add("round trip", rep)
    doc = document_from(r.C, ltrace=LT)
    r.emitted = "".join(line + "\n" for line in serialize(doc).splitlines()
                        if line.startswith("ltrace:"))


def _check_delta(r: _Run) -> None:
    from .staraut import (PreconditionError, RotationalTrace, check_delta_invertible,
                          rotate_trace)
    S = r.need("star", "tensor", "par")
    RT = RotationalTrace.from_trace(r.built.trace) if r.built.trace is not None else None
    LT = r.built.ltrace
    if LT is None and RT is not None:
        try:
            LT = rotate_trace(S, RT)
        except PreconditionError:
            LT = None
    r.add("delta", check_delta_invertible(S, RT, LT))


def _prof_list(r: _Run) -> list[tuple[str, Profunctor]]:
    if not r.built.profunctors:
        raise StructuralError("missing section [profunctor]")
    return list(r.built.profunctors.items())


def _cell_report(title: str, kind: str, *ops: Profunctor) -> ValidationReport:
    rep = ValidationReport(title)
    rep.checked.append(f"{title} bijective")
    try:
        cell = structural_iso(kind, *ops)
    except CoherenceError as exc:
        rep.add(f"{title} bijective", (), str(exc))
        return rep
    rep.extend(check_two_cell(cell), prefix=f"{title} ")
    return rep


def _prof_compose(r: _Run) -> None:
    profs = _prof_list(r)
    for name, P in profs:
        r.add(f"profunctor {name}", check_profunctor(P), P)
    for name, P in profs:
        rep = ValidationReport("units")
        rep.extend(_cell_report("left unitor", "left_unit", P))
        rep.extend(_cell_report("right unitor", "right_unit", P))
        r.add(f"unit laws for {name}", rep, P)
    chain = [profs[0]]
    for name, P in profs[1:]:
        if P.dom is chain[-1][1].cod:
            chain.append((name, P))
    for (n1, G), (n2, F) in zip(chain, chain[1:]):
        Q, pres = compose_profunctors(G, F)
        rep = ValidationReport("composite")
        rep.checked.append("composite is a profunctor")
        rep.extend(check_profunctor(Q))
        sizes = [[len(Q.fiber(c, d)) for d in range(Q.cod.n_obj)] for c in range(Q.dom.n_obj)]
        rep.notes.append(f"{n1}◇{n2}: {len(pres.generators)} generators, "
                         f"{len(pres.classes)} classes, fiber sizes {sizes}")
        r.add(f"composite {n1}◇{n2}", rep)
    if len(chain) >= 3:
        (a, H), (b, G), (c, F) = chain[:3]
        r.add(f"associator for {a},{b},{c}", _cell_report("associator", "assoc", H, G, F))


def _prof_represent(r: _Run) -> None:
    cauchy = cauchy_report(r.C)
    r.add("base Cauchy completeness", cauchy)
    for name, P in _prof_list(r):
        rep = ValidationReport("representability")
        rep.checked.append("representable")
        res = find_representation(P)
        if res:
            F = res.functor
            rep.notes.append(f"{name} ≅ F^* with F on objects "
                             + ", ".join(f"{P.cod.objects[y]}↦{P.dom.objects[F.ob(y)]}"
                                         for y in range(P.cod.n_obj)))
        else:
            y, x, u, x2, nh, npx = res.witness if len(res.witness) == 6 else (res.obj,) + (None,) * 5
            # objects live in two categories here, so name them directly
            w = (P.cod.objects[y],) if x is None else (
                P.cod.objects[y], P.dom.objects[x], str(P.labels[u]), P.dom.objects[x2], nh, npx)
            rep.add("representable", w, f"NotRepresentable: {res.reason}")
        adj = find_right_adjoint(P)
        has_adj = not isinstance(adj, ValidationReport)
        rep.notes.append(f"{name} has a right adjoint: {'yes' if has_adj else 'no'}")
        # every left adjoint out of a Cauchy complete base is representable
        rep.checked.append("Cauchy criterion")
        if P.dom is r.C and has_adj and not res and cauchy.passed:
            rep.add("Cauchy criterion", (), "left adjoint over a Cauchy complete base "
                    "is not representable")
        r.add(f"representability of {name}", rep, P)


COMMANDS = {
    "check-category": _check_category,
    "check-monoidal": _check_monoidal,
    "check-braided": _check_braided,
    "check-balanced": _check_balanced,
    "check-trace": _check_trace,
    "check-pseudomonoid": _check_pseudomonoid,
    "check-autonomous": _check_autonomous,
    "derive-trace": _derive_trace,
    "check-star": _check_star,
    "rotate-trace": _rotate_trace,
    "check-delta": _check_delta,
    "prof-compose": _prof_compose,
    "prof-represent": _prof_represent,
}


def run_command(doc: SpecDocument, command: str, max_triples: int | None = DEFAULT_MAX_TRIPLES
                ) -> RenderedReport:
    from .staraut import PreconditionError

    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    out = RenderedReport(command, doc.name)
    try:
        r = _Run(doc, max_triples)
        COMMANDS[command](r)
        out.sections, out.emitted = r.sections, r.emitted
        failed = any(law.status == "FAIL" for s in r.sections for law in s.laws)
        out.exit_code = 1 if failed else 0
    except PreconditionError as exc:
        out.error, out.exit_code = f"REFUSED: {exc}", 2
    except StructuralError as exc:
        out.error, out.exit_code = f"ERROR: {exc}", 2
    render_report(out)
    return out


def _mirror(r: RenderedReport) -> dict:
    return {
        "command": r.command,
        "spec": r.spec,
        "sections": [
            {"title": s.title, "truncated": s.truncated, "notes": s.notes,
             "laws": [{"law": x.law, "status": x.status, "count": x.count,
                       "witness": list(x.witness), "detail": x.detail} for x in s.laws]}
            for s in r.sections
        ],
        "emitted": r.emitted,
        "error": r.error,
        "exit_code": r.exit_code,
        "result": _verdict(r),
    }


def _verdict(r: RenderedReport) -> str:
    if r.error:
        return "ERROR"
    return "FAIL" if r.exit_code else "PASS"


def render_report(r: RenderedReport) -> tuple[str, str]:
    """Fill in ``r.text`` and ``r.machine`` and return both."""
    lines = [f"command: {r.command}", f"spec: {r.spec}"]
    for s in r.sections:
        lines.append(f"[{s.title}]")
        for x in s.laws:
            if x.status != "FAIL":
                lines.append(f"  {x.status} {x.law}")
            else:
                w = "(" + ", ".join(x.witness) + ")"
                extra = f" -- {x.detail}" if x.detail else ""
                lines.append(f"  FAIL {x.law} [{x.count}] witness {w}{extra}")
        if s.truncated:
            lines.append("  TRUNCATED budget exhausted; later instances unchecked")
        for note in s.notes:
            lines.append(f"  note: {note}")
    if r.error:
        lines.append(r.error)
    if r.emitted:
        lines.append("emitted:")
        lines.extend("  " + ln for ln in r.emitted.splitlines())
    lines.append(f"result: {_verdict(r)}")
    r.text = "\n".join(lines) + "\n"
    r.machine = json.dumps(_mirror(r), sort_keys=True, ensure_ascii=False, indent=1) + "\n"
    return r.text, r.machine


def _error_report(command: str, msg: str) -> RenderedReport:
    out = RenderedReport(command, "", error=f"ERROR: {msg}", exit_code=2)
    render_report(out)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="profcat", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS) + ["generate"])
    parser.add_argument("specfile", help="catspec file (for generate: an example expression)")
    parser.add_argument("--max-triples", type=int, default=DEFAULT_MAX_TRIPLES)
    parser.add_argument("--format", choices=["text", "machine"], default="text")
    parser.add_argument("--out")
    parser.add_argument("--seed", type=int, default=0, help="reserved; every check is exhaustive")
    args = parser.parse_args(argv)

    if args.command == "generate":
        try:
            doc = generate_example(args.specfile)
            body = machine_json(doc) + "\n" if args.format == "machine" else serialize(doc)
            code = 0
        except (StructuralError, OSError) as exc:
            rep = _error_report("generate", str(exc))
            body = rep.machine if args.format == "machine" else rep.text
            code = 2
    else:
        try:
            with open(args.specfile, encoding="utf-8") as fh:
                doc = parse_spec(fh.read())
            rep = run_command(doc, args.command, args.max_triples)
        except (StructuralError, OSError, UnicodeDecodeError) as exc:
            rep = _error_report(args.command, str(exc))
        body = rep.machine if args.format == "machine" else rep.text
        code = rep.exit_code
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
