"""The catspec text format.

A document is a sequence of lines ``section: entry, entry, ...``.  Several
sections may share a line when separated by ``;`` (``objects: a; morphisms:
id_a: a->a``).  A section may be repeated; its entries accumulate.  ``#``
starts a comment.

Entry grammar per section::

    objects        a
    morphisms      f: a->b
    identity       a=f
    compose        f;g=h                   (f first, then g)
    tensor, par    a*b=c   f*g=h           (par uses + instead of *)
    unit, bottom   a
    alpha, deltaL, deltaR, par_alpha       (a,b,c)=m
    sigma, par_sigma                       (a,b)=m
    lambda, rho, theta, eval, coeval, mixed_cup, mixed_cap,
    par_lambda, par_rho, par_theta         a=m
    dual, negation                         a=b
    trace          Tr[X](f)=g              (A and B are read off g)
    ltrace         LTr[X](f)=g

Profunctor blocks::

    profunctor P: base -> point
    P.elements: x@a|*                      element x of P(a, *)
    P.ract: f@x=y                          f acting on x from the right
    P.lact: g@x=y

``point`` is the terminal category with object ``*`` and morphism ``id_*``.
Identity actions are implied.  The machine mirror (:func:`to_machine`) is a
JSON tree keyed by the same section names.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .fincat import FiniteCategory, StructuralError
from .monoidal import MonoidalStructure, tensor_from_functions
from .profcalc import Profunctor, terminal_category

SECTION_ORDER = [
    "objects", "morphisms", "identity", "compose",
    "tensor", "unit", "alpha", "lambda", "rho", "sigma", "theta",
    "trace", "dual", "eval", "coeval",
    "par", "bottom", "par_alpha", "par_lambda", "par_rho", "par_sigma", "par_theta",
    "negation", "deltaL", "deltaR", "mixed_cup", "mixed_cap", "ltrace",
]

_MAP3 = {"alpha", "deltaL", "deltaR", "par_alpha"}
_MAP2 = {"sigma", "par_sigma"}
_MAP1 = {"identity", "lambda", "rho", "theta", "eval", "coeval", "mixed_cup", "mixed_cap",
         "par_lambda", "par_rho", "par_theta"}
_OBMAP = {"dual", "negation"}
_SINGLE = {"unit", "bottom"}

NAME_RE = re.compile(r"[^\s,;=*+@|\[\]()#]+")
_FORBIDDEN = set(" \t,;=*+@|[]()#")
_HEAD_RE = re.compile(
    r"\s*(?:name|profunctor\s+\S+|[A-Za-z_]\w*\.(?:elements|ract|lact)|"
    + "|".join(SECTION_ORDER) + r")\s*:")


class SpecError(StructuralError):
    """Syntax or reference error at a position of the source text."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, col {col}: {message}" if line else message)


@dataclass(frozen=True)
class Entry:
    values: tuple[str, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass
class ProfunctorBlock:
    dom: str
    cod: str
    elements: list[Entry] = field(default_factory=list)
    ract: list[Entry] = field(default_factory=list)
    lact: list[Entry] = field(default_factory=list)
    line: int = field(default=0, compare=False)


@dataclass
class SpecDocument:
    name: str = ""
    sections: dict[str, list[Entry]] = field(default_factory=dict)
    profunctors: dict[str, ProfunctorBlock] = field(default_factory=dict)

    def has(self, section: str) -> bool:
        return bool(self.sections.get(section))

    def require(self, *sections: str) -> None:
        for s in sections:
            if not self.has(s):
                raise StructuralError(f"missing section [{s}]")

    def values(self, section: str) -> list[tuple[str, ...]]:
        return [e.values for e in self.sections.get(section, [])]


# ------------------------------------------------------------------ parsing

def _split_top(s: str, sep: str, base: int) -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets; keep the column of each piece."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((s[start:i], base + start))
            start = i + 1
    out.append((s[start:], base + start))
    return out


def _chunks(line: str) -> list[tuple[str, int]]:
    cuts = [0]
    for m in re.finditer(";", line):
        if _HEAD_RE.match(line, m.end()):
            cuts.append(m.end())
    cuts.append(len(line) + 1)
    return [(line[a:b - 1] if b <= len(line) else line[a:], a) for a, b in zip(cuts, cuts[1:])]


class _Parser:
    def __init__(self):
        self.doc = SpecDocument()
        self.objects: set[str] = set()
        self.morphisms: set[str] = set()
        self.keys: dict[str, set] = {}

    # names -----------------------------------------------------------
    def name(self, s: str, line: int, col: int, kind: str | None = None) -> str:
        s = s.strip()
        if not s or not NAME_RE.fullmatch(s):
            raise SpecError(f"malformed name {s!r}", line, col)
        if kind == "ob" and s not in self.objects:
            raise SpecError(f"undeclared object {s!r}", line, col)
        if kind == "mor" and s not in self.morphisms:
            raise SpecError(f"undeclared morphism {s!r}", line, col)
        return s

    def key_once(self, section: str, key, line: int, col: int) -> None:
        seen = self.keys.setdefault(section, set())
        if key in seen:
            raise SpecError(f"duplicate declaration in [{section}] for {key!r}", line, col)
        seen.add(key)

    # sections --------------------------------------------------------
    def entry(self, section: str, text: str, line: int, col: int) -> Entry:
        t = text.strip()
        col += len(text) - len(text.lstrip())
        if section == "objects":
            a = self.name(t, line, col)
            if ":" in a or "->" in a:
                raise SpecError(f"object name {a!r} may not contain ':' or '->'", line, col)
            if a in self.objects or a in self.morphisms:
                raise SpecError(f"duplicate declaration of {a!r}", line, col)
            self.objects.add(a)
            return Entry((a,), line, col)
        if section == "morphisms":
            m = re.fullmatch(r"(.+):\s*([^:]+?)\s*->\s*([^:]+?)", t)
            if not m:
                raise SpecError(f"expected 'name: src->dst', got {t!r}", line, col)
            f = self.name(m.group(1), line, col)
            if f in self.objects or f in self.morphisms:
                raise SpecError(f"duplicate declaration of {f!r}", line, col)
            a = self.name(m.group(2), line, col, "ob")
            b = self.name(m.group(3), line, col, "ob")
            self.morphisms.add(f)
            return Entry((f, a, b), line, col)
        if section == "compose":
            lhs, eq, h = t.rpartition("=")
            f, semi, g = lhs.partition(";")
            if not eq or not semi:
                raise SpecError(f"expected 'f;g=h', got {t!r}", line, col)
            vals = tuple(self.name(x, line, col, "mor") for x in (f, g, h))
            self.key_once(section, vals[:2], line, col)
            return Entry(vals, line, col)
        if section in ("tensor", "par"):
            op = "*" if section == "tensor" else "+"
            lhs, eq, z = t.rpartition("=")
            x, o, y = lhs.partition(op)
            if not eq or not o:
                raise SpecError(f"expected 'x{op}y=z', got {t!r}", line, col)
            x, y, z = (self.name(v, line, col) for v in (x, y, z))
            if x in self.objects and y in self.objects:
                kind = "ob"
            elif x in self.morphisms and y in self.morphisms:
                kind = "mor"
            else:
                raise SpecError(f"[{section}] entry mixes undeclared or unlike names: {t!r}",
                                line, col)
            self.name(z, line, col, kind)
            self.key_once(section, (x, y), line, col)
            return Entry((x, y, z), line, col)
        if section in _SINGLE:
            if section in self.keys:
                raise SpecError(f"duplicate declaration of [{section}]", line, col)
            self.keys[section] = {t}
            return Entry((self.name(t, line, col, "ob"),), line, col)
        if section in ("trace", "ltrace"):
            tag = "Tr" if section == "trace" else "LTr"
            m = re.fullmatch(tag + r"\[([^\]]*)\]\((.*)\)\s*=\s*(.*)", t)
            if not m:
                raise SpecError(f"expected '{tag}[X](f)=g', got {t!r}", line, col)
            vals = (self.name(m.group(1), line, col, "ob"), self.name(m.group(2), line, col, "mor"),
                    self.name(m.group(3), line, col, "mor"))
            self.key_once(section, vals, line, col)
            return Entry(vals, line, col)
        arity = 3 if section in _MAP3 else 2 if section in _MAP2 else 1
        lhs, eq, v = t.rpartition("=")
        if not eq:
            raise SpecError(f"expected 'key=value' in [{section}], got {t!r}", line, col)
        lhs = lhs.strip()
        if lhs.startswith("(") and lhs.endswith(")"):
            keys = lhs[1:-1].split(",")
        else:
            keys = [lhs]
        if len(keys) != arity:
            raise SpecError(f"arity mismatch in [{section}]: expected {arity} object(s), "
                            f"got {len(keys)}", line, col)
        keys = tuple(self.name(k, line, col, "ob") for k in keys)
        value = self.name(v, line, col, "ob" if section in _OBMAP else "mor")
        self.key_once(section, keys, line, col)
        return Entry(keys + (value,), line, col)

    def prof_entry(self, pname: str, part: str, text: str, line: int, col: int) -> Entry:
        block = self.doc.profunctors[pname]
        t = text.strip()
        cats = {"base": (self.objects, self.morphisms), "point": ({"*"}, {"id_*"})}
        elems = self.keys.setdefault(f"{pname}.elements", set())
        if part == "elements":
            m = re.fullmatch(r"([^@]+)@([^|]+)\|(.+)", t)
            if not m:
                raise SpecError(f"expected 'x@c|d', got {t!r}", line, col)
            x = self.name(m.group(1), line, col)
            c, d = m.group(2).strip(), m.group(3).strip()
            if c not in cats[block.dom][0]:
                raise SpecError(f"undeclared object {c!r}", line, col)
            if d not in cats[block.cod][0]:
                raise SpecError(f"undeclared object {d!r}", line, col)
            if x in elems:
                raise SpecError(f"duplicate declaration of element {x!r}", line, col)
            elems.add(x)
            return Entry((x, c, d), line, col)
        m = re.fullmatch(r"([^@]+)@([^=]+)=(.+)", t)
        if not m:
            raise SpecError(f"expected 'f@x=y', got {t!r}", line, col)
        f, x, y = (s.strip() for s in m.groups())
        side = block.dom if part == "ract" else block.cod
        if f not in cats[side][1]:
            raise SpecError(f"undeclared morphism {f!r}", line, col)
        for e in (x, y):
            if e not in elems:
                raise SpecError(f"undeclared element {e!r}", line, col)
        self.key_once(f"{pname}.{part}", (f, x), line, col)
        return Entry((f, x, y), line, col)

    def chunk(self, text: str, line: int, col: int) -> None:
        head, colon, body = text.partition(":")
        if not colon:
            raise SpecError(f"expected 'section: entries', got {text.strip()!r}", line, col + 1)
        head_s = head.strip()
        bcol = col + len(head) + 2
        if head_s == "name":
            if self.doc.name:
                raise SpecError("duplicate declaration of [name]", line, col + 1)
            self.doc.name = body.strip()
            return
        m = re.fullmatch(r"profunctor\s+(\S+)", head_s)
        if m:
            pname = m.group(1)
            if pname in self.doc.profunctors:
                raise SpecError(f"duplicate declaration of profunctor {pname!r}", line, col + 1)
            dm = re.fullmatch(r"\s*(base|point)\s*->\s*(base|point)\s*", body)
            if not dm:
                raise SpecError("expected 'base|point -> base|point'", line, bcol)
            if "base" in dm.groups() and not self.objects:
                raise SpecError("profunctor over an undeclared base", line, bcol)
            self.doc.profunctors[pname] = ProfunctorBlock(dm.group(1), dm.group(2), line=line)
            return
        m = re.fullmatch(r"(\S+)\.(elements|ract|lact)", head_s)
        if m:
            pname, part = m.groups()
            if pname not in self.doc.profunctors:
                raise SpecError(f"undeclared profunctor {pname!r}", line, col + 1)
            target = getattr(self.doc.profunctors[pname], part)
            for piece, pc in _split_top(body, ",", bcol):
                if piece.strip():
                    target.append(self.prof_entry(pname, part, piece, line, pc))
            return
        if head_s not in SECTION_ORDER:
            raise SpecError(f"unknown section {head_s!r}", line, col + 1)
        entries = self.doc.sections.setdefault(head_s, [])
        for piece, pc in _split_top(body, ",", bcol):
            if piece.strip():
                entries.append(self.entry(head_s, piece, line, pc))


def parse_spec(text: str) -> SpecDocument:
    """Parse catspec text; raises :class:`SpecError` at the first problem."""
    p = _Parser()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        for chunk, col in _chunks(line):
            if chunk.strip():
                p.chunk(chunk, lineno, col)
    doc = p.doc
    doc.sections = {s: doc.sections[s] for s in SECTION_ORDER if s in doc.sections}
    return doc


# ------------------------------------------------------------ serializing

def _fmt(section: str, v: tuple[str, ...]) -> str:
    if section == "objects":
        return v[0]
    if section == "morphisms":
        return f"{v[0]}: {v[1]}->{v[2]}"
    if section == "compose":
        return f"{v[0]};{v[1]}={v[2]}"
    if section in ("tensor", "par"):
        op = "*" if section == "tensor" else "+"
        return f"{v[0]}{op}{v[1]}={v[2]}"
    if section in _SINGLE:
        return v[0]
    if section in ("trace", "ltrace"):
        tag = "Tr" if section == "trace" else "LTr"
        return f"{tag}[{v[0]}]({v[1]})={v[2]}"
    if len(v) == 2:
        return f"{v[0]}={v[1]}"
    return f"({','.join(v[:-1])})={v[-1]}"


def serialize(doc: SpecDocument, per_line: int = 8) -> str:
    lines = []
    if doc.name:
        lines.append(f"name: {doc.name}")
    for s in SECTION_ORDER:
        vals = doc.values(s)
        for i in range(0, len(vals), per_line):
            lines.append(f"{s}: " + ", ".join(_fmt(s, v) for v in vals[i:i + per_line]))
    for pname, b in doc.profunctors.items():
        lines.append(f"profunctor {pname}: {b.dom} -> {b.cod}")
        for part, fmt in (("elements", "{}@{}|{}"), ("ract", "{}@{}={}"), ("lact", "{}@{}={}")):
            vals = [e.values for e in getattr(b, part)]
            for i in range(0, len(vals), per_line):
                lines.append(f"{pname}.{part}: " + ", ".join(fmt.format(*v) for v in vals[i:i + per_line]))
    return "\n".join(lines) + "\n"


def to_machine(doc: SpecDocument) -> dict:
    return {
        "name": doc.name,
        "sections": {s: [list(v) for v in doc.values(s)] for s in SECTION_ORDER if doc.has(s)},
        "profunctors": {
            p: {"dom": b.dom, "cod": b.cod,
                "elements": [list(e.values) for e in b.elements],
                "ract": [list(e.values) for e in b.ract],
                "lact": [list(e.values) for e in b.lact]}
            for p, b in doc.profunctors.items()
        },
    }


def machine_json(doc: SpecDocument) -> str:
    return json.dumps(to_machine(doc), sort_keys=True, ensure_ascii=False, indent=1)


# ---------------------------------------------------------------- building

@dataclass(eq=False)
class Built:
    """Structures assembled from a document; ``None`` where sections are absent."""

    doc: SpecDocument
    category: FiniteCategory
    monoidal: MonoidalStructure | None = None
    trace: object = None
    duality: object = None
    star: object = None
    ltrace: object = None
    profunctors: dict[str, Profunctor] = field(default_factory=dict)


def _err(entry: Entry, msg: str) -> SpecError:
    return SpecError(msg, entry.line, entry.col)


def build_category(doc: SpecDocument) -> FiniteCategory:
    doc.require("objects", "morphisms")
    objs = [v[0] for v in doc.values("objects")]
    mors = doc.values("morphisms")
    comp = {(f, g): h for f, g, h in doc.values("compose")}
    ident = {a: f for a, f in doc.values("identity")} or None
    return FiniteCategory.build(objs, mors, comp, ident)


def _monoidal(doc: SpecDocument, C: FiniteCategory, side: str) -> MonoidalStructure:
    p = "" if side == "tensor" else "par_"
    unit_s = "unit" if side == "tensor" else "bottom"
    doc.require(side, unit_s, p + "alpha", p + "lambda", p + "rho")
    ob = C.object_id
    mo = C.morphism_id
    obt, mot = {}, {}
    for e in doc.sections[side]:
        x, y, z = e.values
        if x in C.objects:
            obt[ob(x), ob(y)] = ob(z)
        else:
            mot[mo(x), mo(y)] = mo(z)

    def lookup(table, key, what):
        try:
            return table[key]
        except KeyError:
            names = C.objects if what == "object" else C.morphisms
            raise StructuralError(
                f"[{side}] undefined on {what} pair ({names[key[0]]},{names[key[1]]})") from None

    tensor = tensor_from_functions(C, lambda a, b: lookup(obt, (a, b), "object"),
                                   lambda f, g: lookup(mot, (f, g), "morphism"))
    alpha = {(ob(a), ob(b), ob(c)): mo(m) for a, b, c, m in doc.values(p + "alpha")}
    lam = {ob(a): mo(m) for a, m in doc.values(p + "lambda")}
    rho = {ob(a): mo(m) for a, m in doc.values(p + "rho")}
    br = {(ob(a), ob(b)): mo(m) for a, b, m in doc.values(p + "sigma")} or None
    tw = {ob(a): mo(m) for a, m in doc.values(p + "theta")} or None
    unit = ob(doc.values(unit_s)[0][0])
    return MonoidalStructure(C, tensor, unit, alpha, lam, rho, br, tw,
                             doc.name or "spec" if side == "tensor" else f"⅋ of {doc.name}")


def _assign(doc: SpecDocument, C: FiniteCategory, section: str) -> dict:
    out = {}
    for e in doc.sections.get(section, []):
        X, f, g = e.values
        gi = C.morphism_id(g)
        out[C.src[gi], C.dst[gi], C.object_id(X), C.morphism_id(f)] = gi
    return out


def _point() -> FiniteCategory:
    return terminal_category()


def build_profunctor(block: ProfunctorBlock, pname: str, C: FiniteCategory,
                     point: FiniteCategory) -> Profunctor:
    cats = {"base": C, "point": point}
    D, E = cats[block.dom], cats[block.cod]
    fibers: dict[tuple[int, int], list[str]] = {}
    for e in block.elements:
        x, c, d = e.values
        fibers.setdefault((D.object_id(c), E.object_id(d)), []).append(x)
    rt = {(e.values[0], e.values[1]): e.values[2] for e in block.ract}
    lt = {(e.values[0], e.values[1]): e.values[2] for e in block.lact}

    def act(table, cat, which):
        def fn(f, c, d, x):
            if cat.identity[cat.src[f]] == f:
                return x
            try:
                return table[cat.morphisms[f], x]
            except KeyError:
                raise StructuralError(
                    f"profunctor {pname}: {which} action of {cat.morphisms[f]} on {x} "
                    "is not declared") from None
        return fn

    return Profunctor.from_fibers(D, E, fibers, act(rt, D, "right"), act(lt, E, "left"), name=pname)


def build(doc: SpecDocument) -> Built:
    """Assemble every structure the document declares."""
    from .duality import DualityStructure
    from .staraut import RotationalTrace, StarAutonomousStructure
    from .traced import TraceStructure

    C = build_category(doc)
    out = Built(doc, C)
    ob, mo = C.object_id, C.morphism_id
    if doc.has("tensor"):
        M = _monoidal(doc, C, "tensor")
        out.monoidal = M
        if doc.has("trace"):
            out.trace = TraceStructure(M, _assign(doc, C, "trace"), "spec")
        if doc.has("dual"):
            doc.require("eval", "coeval")
            out.duality = DualityStructure(
                M, {ob(a): ob(b) for a, b in doc.values("dual")},
                {ob(a): mo(m) for a, m in doc.values("eval")},
                {ob(a): mo(m) for a, m in doc.values("coeval")})
        if doc.has("par"):
            P = _monoidal(doc, C, "par")
            doc.require("negation", "deltaL", "deltaR", "mixed_cup", "mixed_cap")
            out.star = StarAutonomousStructure(
                M, P, {ob(a): ob(b) for a, b in doc.values("negation")},
                {ob(a): mo(m) for a, m in doc.values("mixed_cup")},
                {ob(a): mo(m) for a, m in doc.values("mixed_cap")},
                {(ob(a), ob(b), ob(c)): mo(m) for a, b, c, m in doc.values("deltaL")},
                {(ob(a), ob(b), ob(c)): mo(m) for a, b, c, m in doc.values("deltaR")},
                doc.name)
            if doc.has("ltrace"):
                out.ltrace = RotationalTrace("left_par", P, _assign(doc, C, "ltrace"))
    if doc.profunctors:
        point = _point()
        out.profunctors = {p: build_profunctor(b, p, C, point) for p, b in doc.profunctors.items()}
    return out


# ------------------------------------------------------------- generating

def _ents(rows) -> list[Entry]:
    return [Entry(tuple(r)) for r in rows]


def _monoidal_sections(M: MonoidalStructure, p: str, binop: str, unit_s: str) -> dict:
    C = M.base
    O, N = C.objects, C.morphisms
    n, m = C.n_obj, C.n_mor
    rows = [(O[a], O[b], O[M.ob(a, b)]) for a in range(n) for b in range(n)]
    rows += [(N[f], N[g], N[M.mor(f, g)]) for f in range(m) for g in range(m)]
    sec = {binop: rows, unit_s: [(O[M.unit],)],
           p + "alpha": [(O[a], O[b], O[c], N[v]) for (a, b, c), v in sorted(M.alpha.items())],
           p + "lambda": [(O[a], N[v]) for a, v in sorted(M.lambda_.items())],
           p + "rho": [(O[a], N[v]) for a, v in sorted(M.rho.items())]}
    if M.braiding is not None:
        sec[p + "sigma"] = [(O[a], O[b], N[v]) for (a, b), v in sorted(M.braiding.items())]
    if M.twist is not None:
        sec[p + "theta"] = [(O[a], N[v]) for a, v in sorted(M.twist.items())]
    return sec


def _trace_rows(C: FiniteCategory, assign: dict) -> list[tuple[str, str, str]]:
    return [(C.objects[X], C.morphisms[f], C.morphisms[g])
            for (A, B, X, f), g in sorted(assign.items())]


def document_from(category: FiniteCategory, monoidal=None, trace=None, duality=None,
                  star=None, ltrace=None, name: str = "") -> SpecDocument:
    """Serialize in-memory structures to a document."""
    C = category
    for s in list(C.objects) + list(C.morphisms):
        if not s or _FORBIDDEN & set(s):
            raise StructuralError(f"name {s!r} cannot be written in catspec")
    O, N = C.objects, C.morphisms
    sec: dict[str, list] = {
        "objects": [(a,) for a in O],
        "morphisms": [(N[f], O[C.src[f]], O[C.dst[f]]) for f in range(C.n_mor)],
        "identity": [(O[a], N[C.identity[a]]) for a in range(C.n_obj)],
        "compose": [(N[f], N[g], N[C.compose(f, g)]) for f in range(C.n_mor)
                    for g in range(C.n_mor) if C.dst[f] == C.src[g]],
    }
    if monoidal is not None:
        sec.update(_monoidal_sections(monoidal, "", "tensor", "unit"))
    if trace is not None:
        sec["trace"] = _trace_rows(C, trace.assign)
    if duality is not None:
        sec["dual"] = [(O[a], O[b]) for a, b in sorted(duality.dual.items())]
        sec["eval"] = [(O[a], N[v]) for a, v in sorted(duality.eval.items())]
        sec["coeval"] = [(O[a], N[v]) for a, v in sorted(duality.coeval.items())]
    if star is not None:
        sec.update(_monoidal_sections(star.par_side, "par_", "par", "bottom"))
        sec["negation"] = [(O[a], O[b]) for a, b in sorted(star.negation.items())]
        for s, tab in (("deltaL", star.delta_L), ("deltaR", star.delta_R)):
            sec[s] = [(O[a], O[b], O[c], N[v]) for (a, b, c), v in sorted(tab.items())]
        sec["mixed_cup"] = [(O[a], N[v]) for a, v in sorted(star.mixed_cup.items())]
        sec["mixed_cap"] = [(O[a], N[v]) for a, v in sorted(star.mixed_cap.items())]
    if ltrace is not None:
        sec["ltrace"] = _trace_rows(C, ltrace.assign)
    return SpecDocument(name, {s: _ents(sec[s]) for s in SECTION_ORDER if s in sec})


_PRESETS = {"idempotent": "IDEMPOTENT", "left_zero": "LEFT_ZERO", "z2": "Z2_GROUP"}


def generate_example(expr: str) -> SpecDocument:
    """Corpus example as a document.

    ``expr`` is one of ``discrete_abelian(n)``, ``one_object_monoid(preset)``
    with preset ``idempotent``, ``left_zero`` or ``z2``,
    ``one_object_monoid(1,e;e,e)`` (rows of a table whose first row names the
    elements), ``karoubi_of(<expr or path>)``, ``lukasiewicz_chain(n)``,
    ``walking_arrow``, ``poset2_meet`` or ``z2_graded``.
    """
    from . import corpus

    m = re.fullmatch(r"\s*(\w+)\s*(?:\((.*)\))?\s*", expr)
    if not m:
        raise StructuralError(f"cannot read example expression {expr!r}")
    head, arg = m.group(1), (m.group(2) or "").strip()
    if head in ("discrete_abelian", "lukasiewicz_chain"):
        try:
            n = int(arg)
        except ValueError:
            raise StructuralError(f"{head} needs an integer argument") from None
        if not 1 <= n <= 12:
            raise StructuralError("n must lie in 1..12")
        ex = getattr(corpus, head)(n)
    elif head == "one_object_monoid":
        if arg in _PRESETS:
            ex = {"idempotent": corpus.idempotent_monoid, "left_zero": corpus.left_zero_monoid,
                  "z2": corpus.z2_group}[arg]()
        else:
            rows = [r.split(",") for r in arg.split(";")]
            elements = [s.strip() for s in rows[0]]
            idx = {e: i for i, e in enumerate(elements)}
            try:
                table = [[idx[s.strip()] for s in r] for r in rows]
            except KeyError as exc:
                raise StructuralError(f"unknown element {exc.args[0]!r} in table") from None
            if len(table) != len(elements) or any(len(r) != len(elements) for r in table):
                raise StructuralError("monoid table must be square")
            # the first row is the unit row, so it doubles as the element list
            ex = corpus.one_object_monoid(elements, table)
    elif head == "karoubi_of":
        inner = _example_from_arg(arg)
        ex = corpus.karoubi_of(inner)
    elif head in ("walking_arrow", "poset2_meet", "z2_graded") and not arg:
        ex = getattr(corpus, head)()
    else:
        raise StructuralError(f"unknown example {expr!r}")
    return document_from(ex.category, ex.monoidal, ex.trace, ex.duality, ex.star, name=ex.name)


def _example_from_arg(arg: str):
    """Inner argument of ``karoubi_of``: an expression or a spec file path."""
    from .corpus import Example

    if re.fullmatch(r"\w+\s*(\(.*\))?", arg):
        doc = generate_example(arg)
    else:
        with open(arg, encoding="utf-8") as fh:
            doc = parse_spec(fh.read())
    b = build(doc)
    return Example(doc.name or arg, b.category, b.monoidal, b.trace, b.duality, b.star)
