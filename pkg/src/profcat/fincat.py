"""Finite categories, functors, and idempotent completion.

Objects and morphisms are dense integers.  Composition is diagrammatic:
``C.compose(f, g)`` means "first ``f``, then ``g``" and is defined exactly
when ``dst(f) == src(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_MAX_TRIPLES = 10**4


class StructuralError(ValueError):
    """Malformed input: dangling ids, partial tables, wrong typing.

    Kept apart from law violations, which end up in a ValidationReport.
    """


class Ob(int):
    """Object id tag used inside witness tuples."""

    def __repr__(self):
        return f"Ob({int(self)})"


class Mor(int):
    """Morphism id tag used inside witness tuples."""

    def __repr__(self):
        return f"Mor({int(self)})"


class Elem(int):
    """Profunctor element id tag used inside witness tuples."""

    def __repr__(self):
        return f"Elem({int(self)})"


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple = ()
    detail: str = ""


@dataclass
class ValidationReport:
    """Outcome of a law check.  ``passed`` iff no violations were recorded."""

    name: str = ""
    violations: list[Violation] = field(default_factory=list)
    truncated: bool = False
    notes: list[str] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, law: str, witness: Iterable = (), detail: str = "") -> None:
        self.violations.append(Violation(law, tuple(witness), detail))

    def laws_failed(self) -> list[str]:
        seen = []
        for v in self.violations:
            if v.law not in seen:
                seen.append(v.law)
        return seen

    def first(self, law: str) -> Violation | None:
        for v in self.violations:
            if v.law == law:
                return v
        return None

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness, v.detail))
        self.truncated |= other.truncated
        self.notes.extend(other.notes)
        self.checked.extend(prefix + c for c in other.checked)

    def __bool__(self):
        return self.passed


class _Budget:
    """Counts checked instances; flips ``report.truncated`` when exhausted."""

    def __init__(self, report: ValidationReport, limit: int | None):
        self.report = report
        self.limit = limit
        self.used = 0

    def take(self) -> bool:
        if self.limit is not None and self.used >= self.limit:
            self.report.truncated = True
            return False
        self.used += 1
        return True


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: tuple[int, ...]
    dst: tuple[int, ...]
    identity: tuple[int, ...]
    table: np.ndarray  # (n_mor, n_mor), -1 where undefined

    @classmethod
    def build(
        cls,
        objects: Sequence[str],
        morphisms: Sequence[tuple[str, str, str]],
        compose: Mapping[tuple[str, str], str],
        identity: Mapping[str, str] | None = None,
    ) -> "FiniteCategory":
        """Build from names; ``morphisms`` holds ``(name, src, dst)`` triples.

        Identities are inferred from the composition table when not given;
        when given, their composites may be omitted from ``compose``.
        Raises StructuralError on dangling names or a partial table.
        """
        objects = tuple(objects)
        oid = {o: i for i, o in enumerate(objects)}
        if len(oid) != len(objects):
            raise StructuralError("duplicate object name")
        names = tuple(m[0] for m in morphisms)
        mid = {m: i for i, m in enumerate(names)}
        if len(mid) != len(names):
            raise StructuralError("duplicate morphism name")
        try:
            src = tuple(oid[m[1]] for m in morphisms)
            dst = tuple(oid[m[2]] for m in morphisms)
        except KeyError as exc:
            raise StructuralError(f"morphism refers to undeclared object {exc}") from None
        n = len(names)
        table = np.full((n, n), -1, dtype=np.int64)
        for (f, g), h in compose.items():
            for name in (f, g, h):
                if name not in mid:
                    raise StructuralError(f"compose refers to undeclared morphism {name!r}")
            table[mid[f], mid[g]] = mid[h]
        if identity is None:
            ids = _infer_identities(len(objects), src, dst, table)
        else:
            try:
                ids = tuple(mid[identity[o]] for o in objects)
            except KeyError as exc:
                raise StructuralError(f"missing identity for {exc}") from None
            for a, i in enumerate(ids):
                for f in range(n):
                    if src[f] == a and table[i, f] < 0:
                        table[i, f] = f
                    if dst[f] == a and table[f, i] < 0:
                        table[f, i] = f
        return cls.from_arrays(objects, names, src, dst, ids, table)

    @classmethod
    def from_arrays(cls, objects, morphisms, src, dst, identity, table) -> "FiniteCategory":
        n_obj, n_mor = len(objects), len(morphisms)
        table = np.asarray(table, dtype=np.int64).copy()
        if table.shape != (n_mor, n_mor):
            raise StructuralError("composition table has the wrong shape")
        if len(src) != n_mor or len(dst) != n_mor or len(identity) != n_obj:
            raise StructuralError("src/dst/identity tables are not total")
        for v in (*src, *dst):
            if not 0 <= v < n_obj:
                raise StructuralError(f"dangling object id {v}")
        for v in identity:
            if not 0 <= v < n_mor:
                raise StructuralError(f"dangling identity id {v}")
        if table.size and (table.max() >= n_mor or table.min() < -1):
            raise StructuralError("composition table contains a dangling morphism id")
        for f in range(n_mor):
            for g in range(n_mor):
                if dst[f] == src[g] and table[f, g] < 0:
                    raise StructuralError(
                        f"compose({morphisms[f]}, {morphisms[g]}) is missing"
                    )
        table.flags.writeable = False
        return cls(tuple(objects), tuple(morphisms), tuple(src), tuple(dst),
                   tuple(identity), table)

    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.morphisms)

    def compose(self, f: int, g: int) -> int:
        h = int(self.table[f, g])
        if h < 0:
            raise StructuralError(
                f"{self.morphisms[f]} and {self.morphisms[g]} are not composable"
            )
        return h

    def chain(self, *fs: int) -> int:
        """Diagrammatic composite of a path ``f1 ; f2 ; ...``."""
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(out, f)
        return out

    @cached_property
    def _homs(self) -> dict[tuple[int, int], list[int]]:
        homs: dict[tuple[int, int], list[int]] = {
            (a, b): [] for a in range(self.n_obj) for b in range(self.n_obj)
        }
        for f in range(self.n_mor):
            homs[self.src[f], self.dst[f]].append(f)
        return homs

    def hom(self, a: int, b: int) -> list[int]:
        return self._homs[a, b]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        inv = []
        for f in range(self.n_mor):
            a, b = self.src[f], self.dst[f]
            found = -1
            for g in self.hom(b, a):
                if self.table[f, g] == self.identity[a] and self.table[g, f] == self.identity[b]:
                    found = g
                    break
            inv.append(found)
        return tuple(inv)

    def inverse(self, f: int) -> int:
        g = self._inverses[f]
        if g < 0:
            raise StructuralError(f"{self.morphisms[f]} is not invertible")
        return g

    def is_iso(self, f: int) -> bool:
        return self._inverses[f] >= 0

    def object_id(self, name: str) -> int:
        return self.objects.index(name)

    def morphism_id(self, name: str) -> int:
        return self.morphisms.index(name)

    def same_as(self, other: "FiniteCategory") -> bool:
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.src == other.src
            and self.dst == other.dst
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self):
        return f"FiniteCategory({self.n_obj} objects, {self.n_mor} morphisms)"


def _infer_identities(n_obj, src, dst, table) -> tuple[int, ...]:
    ids = []
    n = len(src)
    for a in range(n_obj):
        cands = []
        for e in range(n):
            if src[e] != a or dst[e] != a:
                continue
            ok = all(table[e, g] == g for g in range(n) if src[g] == a) and all(
                table[f, e] == f for f in range(n) if dst[f] == a
            )
            if ok:
                cands.append(e)
        if len(cands) != 1:
            raise StructuralError(f"cannot infer the identity of object #{a}")
        ids.append(cands[0])
    return tuple(ids)


@dataclass(frozen=True, eq=False)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.obj_map) != self.source.n_obj or len(self.mor_map) != self.source.n_mor:
            raise StructuralError("functor maps are not total")
        if any(not 0 <= o < self.target.n_obj for o in self.obj_map):
            raise StructuralError("functor object map leaves the target")
        if any(not 0 <= m < self.target.n_mor for m in self.mor_map):
            raise StructuralError("functor morphism map leaves the target")

    def ob(self, a: int) -> int:
        return self.obj_map[a]

    def __call__(self, f: int) -> int:
        return self.mor_map[f]


@dataclass(frozen=True)
class Idempotent:
    carrier: int
    morphism: int


# ---------------------------------------------------------------- validators


def validate_category(C: FiniteCategory, max_triples: int | None = DEFAULT_MAX_TRIPLES) -> ValidationReport:
    rep = ValidationReport("category")
    rep.checked += ["typing", "identity", "associativity"]
    t = C.table
    for a, e in enumerate(C.identity):
        if C.src[e] != a or C.dst[e] != a:
            rep.add("typing", (Ob(a), Mor(e)), "identity has wrong endpoints")
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            h = t[f, g]
            if C.dst[f] != C.src[g]:
                if h >= 0:
                    rep.add("typing", (Mor(f), Mor(g)), "composite of non-composable pair")
            elif C.src[h] != C.src[f] or C.dst[h] != C.dst[g]:
                rep.add("typing", (Mor(f), Mor(g)), "composite has wrong endpoints")
    if not rep.passed:
        return rep
    for f in range(C.n_mor):
        a, b = C.src[f], C.dst[f]
        if t[C.identity[a], f] != f:
            rep.add("identity", (Ob(a), Mor(f)), "id ; f != f")
        if t[f, C.identity[b]] != f:
            rep.add("identity", (Mor(f), Ob(b)), "f ; id != f")
    budget = _Budget(rep, max_triples)
    for f in range(C.n_mor):
        for g in _outgoing(C, C.dst[f]):
            fg = t[f, g]
            for h in _outgoing(C, C.dst[g]):
                if not budget.take():
                    return rep
                if t[fg, h] != t[f, t[g, h]]:
                    rep.add("associativity", (Mor(f), Mor(g), Mor(h)))
    return rep


def _outgoing(C: FiniteCategory, a: int) -> list[int]:
    return [f for b in range(C.n_obj) for f in C.hom(a, b)]


def validate_functor(F: Functor) -> ValidationReport:
    rep = ValidationReport("functor")
    rep.checked += ["endpoints", "identities", "composition"]
    C, D = F.source, F.target
    for f in range(C.n_mor):
        Ff = F(f)
        if D.src[Ff] != F.ob(C.src[f]) or D.dst[Ff] != F.ob(C.dst[f]):
            rep.add("endpoints", (Mor(f),))
    if not rep.passed:
        return rep
    for a in range(C.n_obj):
        if F(C.identity[a]) != D.identity[F.ob(a)]:
            rep.add("identities", (Ob(a),))
    for f in range(C.n_mor):
        for g in _outgoing(C, C.dst[f]):
            if F(C.compose(f, g)) != D.compose(F(f), F(g)):
                rep.add("composition", (Mor(f), Mor(g)))
    return rep


# -------------------------------------------------------------- constructions


def op_category(C: FiniteCategory) -> FiniteCategory:
    return FiniteCategory.from_arrays(C.objects, C.morphisms, C.dst, C.src, C.identity, C.table.T)


def product_category(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    """Pairs of objects and morphisms; ``(a, b)`` gets id ``a * |D| + b``."""
    nD, mD = D.n_obj, D.n_mor
    objects = [f"({a},{b})" for a in C.objects for b in D.objects]
    morphisms = [f"({f},{g})" for f in C.morphisms for g in D.morphisms]
    src = [C.src[f] * nD + D.src[g] for f in range(C.n_mor) for g in range(mD)]
    dst = [C.dst[f] * nD + D.dst[g] for f in range(C.n_mor) for g in range(mD)]
    ident = [C.identity[a] * mD + D.identity[b] for a in range(C.n_obj) for b in range(nD)]
    tc, td = C.table, D.table
    table = np.full((len(morphisms),) * 2, -1, dtype=np.int64)
    for f1, f2 in itertools.product(range(C.n_mor), repeat=2):
        h1 = tc[f1, f2]
        if h1 < 0:
            continue
        row = table[f1 * mD:(f1 + 1) * mD]
        sub = np.where(td >= 0, h1 * mD + td, -1)
        row[:, f2 * mD:(f2 + 1) * mD] = sub
    return FiniteCategory.from_arrays(objects, morphisms, src, dst, ident, table)


def pair_ob(D: FiniteCategory, a: int, b: int) -> int:
    """Id of object ``(a, b)`` in ``product_category(C, D)``."""
    return a * D.n_obj + b


def pair_mor(D: FiniteCategory, f: int, g: int) -> int:
    return f * D.n_mor + g


def split_ob(D: FiniteCategory, x: int) -> tuple[int, int]:
    return divmod(x, D.n_obj)


def split_mor(D: FiniteCategory, x: int) -> tuple[int, int]:
    return divmod(x, D.n_mor)


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_obj)), tuple(range(C.n_mor)))


def idempotents(C: FiniteCategory) -> list[Idempotent]:
    return [
        Idempotent(a, e)
        for a in range(C.n_obj)
        for e in C.hom(a, a)
        if C.table[e, e] == e
    ]


def karoubi_envelope(C: FiniteCategory) -> tuple[FiniteCategory, Functor]:
    """Idempotent completion together with the full embedding ``a -> id_a``."""
    K, emb, _, _ = karoubi_parts(C)
    return K, emb


def karoubi_parts(C: FiniteCategory):
    """``karoubi_envelope`` plus the idempotent of each object and the
    ``(source, target, underlying morphism)`` triple of each morphism."""
    idem = idempotents(C)
    index = {(p.carrier, p.morphism): i for i, p in enumerate(idem)}
    t = C.table
    mors: list[tuple[int, int, int]] = []  # (source idempotent, target idempotent, f)
    for i, p in enumerate(idem):
        for j, q in enumerate(idem):
            for f in C.hom(p.carrier, q.carrier):
                if t[t[p.morphism, f], q.morphism] == f:
                    mors.append((i, j, f))
    mid = {m: k for k, m in enumerate(mors)}
    n = len(mors)
    table = np.full((n, n), -1, dtype=np.int64)
    for k1, (i, j, f) in enumerate(mors):
        for k2, (j2, l, g) in enumerate(mors):
            if j == j2:
                table[k1, k2] = mid[i, l, t[f, g]]
    objects = [f"{{{C.morphisms[p.morphism]}}}" for p in idem]
    names = [f"{C.morphisms[f]}:{objects[i]}->{objects[j]}" for (i, j, f) in mors]
    ident = [mid[i, i, p.morphism] for i, p in enumerate(idem)]
    K = FiniteCategory.from_arrays(
        objects, names, [m[0] for m in mors], [m[1] for m in mors], ident, table
    )
    emb = Functor(
        C, K,
        tuple(index[a, C.identity[a]] for a in range(C.n_obj)),
        tuple(mid[index[C.src[f], C.identity[C.src[f]]], index[C.dst[f], C.identity[C.dst[f]]], f]
              for f in range(C.n_mor)),
    )
    return K, emb, idem, mors


def splitting(C: FiniteCategory, e: Idempotent) -> tuple[int, int, int] | None:
    """Search ``(b, r, s)`` with ``r ; s == e`` and ``s ; r == id_b``."""
    a, t = e.carrier, C.table
    for b in range(C.n_obj):
        for r in C.hom(a, b):
            for s in C.hom(b, a):
                if t[r, s] == e.morphism and t[s, r] == C.identity[b]:
                    return b, r, s
    return None


def cauchy_report(C: FiniteCategory) -> ValidationReport:
    rep = ValidationReport("cauchy")
    rep.checked.append("idempotent splits")
    for e in idempotents(C):
        if splitting(C, e) is None:
            rep.add("idempotent splits", (Ob(e.carrier), Mor(e.morphism)))
    return rep


def is_full_and_faithful(F: Functor) -> bool:
    C, D = F.source, F.target
    for a in range(C.n_obj):
        for b in range(C.n_obj):
            image = sorted(F(f) for f in C.hom(a, b))
            if image != sorted(D.hom(F.ob(a), F.ob(b))) or len(set(image)) != len(image):
                return False
    return True


def all_functors(C: FiniteCategory, D: FiniteCategory, limit: int = 10**5) -> list[Functor]:
    """Every functor ``C -> D``, by backtracking on morphism images."""
    out: list[Functor] = []
    order = list(range(C.n_mor))
    for obj_map in itertools.product(range(D.n_obj), repeat=C.n_obj):
        cand = [D.hom(obj_map[C.src[f]], obj_map[C.dst[f]]) for f in order]
        if any(not c for c in cand):
            continue
        for a in range(C.n_obj):
            cand[C.identity[a]] = [D.identity[obj_map[a]]]
        for mor_map in itertools.product(*cand):
            ok = True
            for f in range(C.n_mor):
                for g in _outgoing(C, C.dst[f]):
                    if mor_map[C.table[f, g]] != D.table[mor_map[f], mor_map[g]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(Functor(C, D, tuple(obj_map), tuple(mor_map)))
                if len(out) >= limit:
                    return out
    return out
