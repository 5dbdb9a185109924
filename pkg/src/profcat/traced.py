"""Traces on finite monoidal categories.

``Tr^X_{A,B}`` sends ``f: A⊗X -> B⊗X`` to a morphism ``A -> B``.  The
axioms are checked in their non-strict forms, with associators and unitors
inserted explicitly:

* tightening: ``Tr((u⊗1);h;(v⊗1)) = u;Tr(h);v``
* sliding: ``Tr^X(h;(1⊗p)) = Tr^{X'}((1⊗p);h)`` for ``p: X' -> X``
* vanishing: ``Tr^I(f) = ρ⁻¹;f;ρ`` and
  ``Tr^X(Tr^Y(g)) = Tr^{X⊗Y}(α⁻¹;g;α)``
* superposing: ``g⊗Tr^X(f) = Tr^X(α;(g⊗f);α⁻¹)``
* yanking (balanced case): ``Tr^X_{X,X}(σ_{X,X}) = θ_X``

The Prof-level view is the 2-cell ``∫^Z Hom(-⊗Z, =⊗Z) ⇒ Hom(-, =)``, whose
source is built here as an explicit union-find quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .fincat import Mor, Ob, StructuralError, ValidationReport, _Budget
from .monoidal import MonoidalStructure, validate_balanced
from .profcalc import CoendPresentation, Profunctor, TwoCell, hom_profunctor
from .unionfind import UnionFind


@dataclass(frozen=True, eq=False)
class TraceStructure:
    base: MonoidalStructure
    assign: dict[tuple[int, int, int, int], int]  # (A, B, X, f) -> Tr^X_{A,B}(f)
    name: str = ""

    def tr(self, A: int, B: int, X: int, f: int) -> int:
        try:
            return self.assign[A, B, X, f]
        except KeyError:
            C = self.base.base
            raise StructuralError(
                f"trace undefined at Tr[{C.objects[X]}]({C.morphisms[f]}) "
                f"with A={C.objects[A]}, B={C.objects[B]}") from None

    def with_value(self, key, value) -> "TraceStructure":
        assign = dict(self.assign)
        assign[key] = value
        return TraceStructure(self.base, assign, self.name + "~")


@dataclass(frozen=True)
class AxiomUniverse:
    objects: tuple[int, ...]
    morphisms: tuple[int, ...]


def full_universe(M: MonoidalStructure) -> AxiomUniverse:
    return AxiomUniverse(tuple(range(M.base.n_obj)), tuple(range(M.base.n_mor)))


def trace_instances(M: MonoidalStructure, U: AxiomUniverse | None = None):
    """All ``(A, B, X, f)`` with ``f: A⊗X -> B⊗X`` inside the universe."""
    U = U or full_universe(M)
    mset = set(U.morphisms)
    for A, B, X in itertools.product(U.objects, repeat=3):
        for f in M.base.hom(M.ob(A, X), M.ob(B, X)):
            if f in mset:
                yield A, B, X, f


def trace_from_function(M: MonoidalStructure, fn, name: str = "") -> TraceStructure:
    """Tabulate ``fn(A, B, X, f)`` over every instance."""
    return TraceStructure(M, {k: fn(*k) for k in trace_instances(M)}, name)


def check_trace_typing(T: TraceStructure, U: AxiomUniverse | None = None) -> None:
    C = T.base.base
    for A, B, X, f in trace_instances(T.base, U):
        g = T.tr(A, B, X, f)
        if not 0 <= g < C.n_mor or C.src[g] != A or C.dst[g] != B:
            raise StructuralError(f"Tr[{C.objects[X]}]({C.morphisms[f]}) is not typed "
                                  f"{C.objects[A]} -> {C.objects[B]}")


def validate_trace_axioms(T: TraceStructure, U: AxiomUniverse | None = None,
                          balanced: bool = False,
                          max_triples: int | None = 10**4) -> ValidationReport:
    M = T.base
    C = M.base
    U = U or full_universe(M)
    check_trace_typing(T, U)
    obs, mors = U.objects, set(U.morphisms)
    t, ch, tr, al = M.mor, C.chain, T.tr, M.alpha
    inv, I = C.inverse, M.unit
    rep = ValidationReport("trace axioms")
    rep.checked += ["tight", "sli", "van-I", "van-⊗", "sup"] + (["yank"] if balanced else [])
    budget = _Budget(rep, max_triples)
    inst = list(trace_instances(M, U))

    # tightening
    for A, B, X, h in inst:
        iX = M.id(X)
        for u in (u for a2 in obs for u in C.hom(a2, A) if u in mors):
            for v in (v for b2 in obs for v in C.hom(B, b2) if v in mors):
                if not budget.take():
                    break
                lhs = tr(C.src[u], C.dst[v], X, ch(t(u, iX), h, t(v, iX)))
                if lhs != ch(u, tr(A, B, X, h), v):
                    rep.add("tight", (Ob(A), Ob(B), Ob(X), Mor(h), Mor(u), Mor(v)))
    # sliding, h: A⊗X -> B⊗X' and p: X' -> X
    for A, B, X, X2 in itertools.product(obs, repeat=4):
        ps = [p for p in C.hom(X2, X) if p in mors]
        if not ps:
            continue
        for h in C.hom(M.ob(A, X), M.ob(B, X2)):
            if h not in mors:
                continue
            for p in ps:
                if not budget.take():
                    break
                lhs = tr(A, B, X, ch(h, t(M.id(B), p)))
                rhs = tr(A, B, X2, ch(t(M.id(A), p), h))
                if lhs != rhs:
                    rep.add("sli", (Ob(A), Ob(B), Ob(X), Ob(X2), Mor(h), Mor(p)))
    # vanishing along I
    if I in obs:
        for A, B in itertools.product(obs, repeat=2):
            for f in C.hom(M.ob(A, I), M.ob(B, I)):
                if f in mors and tr(A, B, I, f) != ch(inv(M.rho[A]), f, M.rho[B]):
                    rep.add("van-I", (Ob(A), Ob(B), Mor(f)))
    # vanishing along X⊗Y
    for A, B, X, Y in itertools.product(obs, repeat=4):
        XY = M.ob(X, Y)
        for g in C.hom(M.ob(M.ob(A, X), Y), M.ob(M.ob(B, X), Y)):
            if g not in mors or not budget.take():
                continue
            lhs = tr(A, B, X, tr(M.ob(A, X), M.ob(B, X), Y, g))
            rhs = tr(A, B, XY, ch(inv(al[A, X, Y]), g, al[B, X, Y]))
            if lhs != rhs:
                rep.add("van-⊗", (Ob(A), Ob(B), Ob(X), Ob(Y), Mor(g)))
    # superposing
    for A, B, X, f in inst:
        for g in mors:
            if not budget.take():
                break
            Cc, D = C.src[g], C.dst[g]
            lhs = t(g, tr(A, B, X, f))
            rhs = tr(M.ob(Cc, A), M.ob(D, B), X, ch(al[Cc, A, X], t(g, f), inv(al[D, B, X])))
            if lhs != rhs:
                rep.add("sup", (Ob(A), Ob(B), Ob(X), Mor(f), Mor(g)))
    if balanced:
        if M.braiding is None or M.twist is None:
            raise StructuralError("yanking needs a braiding and a twist")
        for X in obs:
            if tr(X, X, X, M.braiding[X, X]) != M.twist[X]:
                rep.add("yank", (Ob(X),))
    return rep


# --------------------------------------------------------------- loop coend


@dataclass(eq=False)
class LoopCoend:
    """``∫^Z Hom(A⊗Z, B⊗Z)`` over every pair ``(A, B)`` at once."""

    profunctor: Profunctor | None  # None when tightening is not well defined
    presentation: CoendPresentation
    fiber_classes: dict[tuple[int, int], list[int]]
    problems: list[str] = field(default_factory=list)


def _loop_generators(M: MonoidalStructure, A: int, B: int):
    C = M.base
    return [(Z, f) for Z in range(C.n_obj) for f in C.hom(M.ob(A, Z), M.ob(B, Z))]


def loop_coend(M: MonoidalStructure, A: int, B: int) -> tuple[list[list[tuple[int, int]]], UnionFind]:
    """Classes of ``(Z, f: A⊗Z -> B⊗Z)`` under the sliding moves."""
    C = M.base
    gens = _loop_generators(M, A, B)
    index = {g: i for i, g in enumerate(gens)}
    uf = UnionFind(len(gens))
    t, ch = M.mor, C.chain
    for p in range(C.n_mor):
        Z2, Z = C.src[p], C.dst[p]
        for h in C.hom(M.ob(A, Z), M.ob(B, Z2)):
            uf.union(index[Z, ch(h, t(M.id(B), p))], index[Z2, ch(t(M.id(A), p), h)])
    classes = sorted(uf.classes().values())
    return [[gens[i] for i in cl] for cl in classes], uf


def build_loop_coend(M: MonoidalStructure) -> LoopCoend:
    """Assemble the source profunctor of the trace 2-cell.

    Right and left actions are the tightening actions
    ``[Z, f] ↦ [Z, (u⊗1);f]`` and ``[Z, f] ↦ [Z, f;(v⊗1)]``.
    """
    C = M.base
    n = C.n_obj
    generators, cls, classes, index = [], [], {}, {}
    fibers: dict[tuple[int, int], list] = {}
    fiber_classes: dict[tuple[int, int], list[int]] = {}
    lookup: dict[tuple[int, int, int, int], tuple] = {}
    for A, B in itertools.product(range(n), repeat=2):
        cl, _ = loop_coend(M, A, B)
        for members in cl:
            rep = members[0]
            fibers.setdefault((A, B), []).append(rep)
            for Z, f in members:
                lookup[A, B, Z, f] = rep
    problems: list[str] = []
    t, ch = M.mor, C.chain

    def act(kind, m, A, B, rep):
        images = set()
        for (Z, f) in _members(A, B, rep):
            if kind == "r":
                g = ch(t(m, M.id(Z)), f)
                images.add(lookup[C.src[m], B, Z, g])
            else:
                g = ch(f, t(m, M.id(Z)))
                images.add(lookup[A, C.dst[m], Z, g])
        if len(images) != 1:
            problems.append(f"tightening action of {C.morphisms[m]} is not well defined")
        return min(images)

    members_of: dict[tuple[int, int, tuple], list] = {}
    for (A, B, Z, f), rep in lookup.items():
        members_of.setdefault((A, B, rep), []).append((Z, f))

    def _members(A, B, rep):
        return members_of[A, B, rep]

    P = Profunctor.from_fibers(
        C, C, fibers,
        lambda u, A, B, rep: act("r", u, A, B, rep),
        lambda v, A, B, rep: act("l", v, A, B, rep),
        name="Loop",
    )
    for e, (A, B) in enumerate(P.loc):
        fiber_classes.setdefault((A, B), []).append(e)
        members = sorted(members_of[A, B, P.labels[e]])
        classes[e] = []
        for Z, f in members:
            index[Z, f, A, B] = len(generators)
            classes[e].append(len(generators))
            generators.append((Z, f, (A, B)))
            cls.append(e)
    pres = CoendPresentation(generators, index, cls, classes)
    P.coend = pres
    return LoopCoend(P, pres, fiber_classes, problems)


def trace_two_cell(T: TraceStructure) -> tuple[TwoCell, ValidationReport]:
    """The 2-cell ``Loop ⇒ Hom`` defined on class representatives.

    Well-definedness on classes certifies sliding; naturality, checked on
    every generator, certifies tightening.
    """
    M = T.base
    C = M.base
    H = hom_profunctor(C)
    L = build_loop_coend(M)
    P, pres = L.profunctor, L.presentation
    rep = ValidationReport("trace 2-cell")
    rep.checked += ["well-definedness (sli)", "naturality (tight)"]
    for prob in L.problems:
        rep.notes.append(prob)
    comp = np.empty(P.n, dtype=np.int64)
    for e, members in pres.classes.items():
        A, B = P.loc[e]
        vals = []
        for g in members:
            Z, f, _ = pres.generators[g]
            vals.append((T.tr(A, B, Z, f), Z, f))
        comp[e] = H.element(A, B, vals[0][0])
        for v, Z, f in vals[1:]:
            if v != vals[0][0]:
                rep.add("well-definedness (sli)",
                        (Ob(A), Ob(B), Ob(vals[0][1]), Mor(vals[0][2]), Ob(Z), Mor(f)))
                break
    t, ch = M.mor, C.chain
    for e, members in pres.classes.items():
        A, B = P.loc[e]
        for g in members:
            Z, f, _ = pres.generators[g]
            trf = T.tr(A, B, Z, f)
            for u in (u for a2 in range(C.n_obj) for u in C.hom(a2, A)):
                if T.tr(C.src[u], B, Z, ch(t(u, M.id(Z)), f)) != ch(u, trf):
                    rep.add("naturality (tight)", (Ob(A), Ob(B), Ob(Z), Mor(f), Mor(u)))
            for v in (v for b2 in range(C.n_obj) for v in C.hom(B, b2)):
                if T.tr(A, C.dst[v], Z, ch(f, t(v, M.id(Z)))) != ch(trf, v):
                    rep.add("naturality (tight)", (Ob(A), Ob(B), Ob(Z), Mor(f), Mor(v)))
    return TwoCell(P, H, comp, "Tr"), rep


def check_traced_pseudomonoid(T: TraceStructure, U: AxiomUniverse | None = None,
                              balanced: bool = False) -> ValidationReport:
    """Presentation equations evaluated on loop-coend classes through the
    trace 2-cell, together with its well-definedness and naturality.

    The verdict is compared with the Cat-level suite and the comparison is
    recorded in ``notes``; a disagreement is reported as a violation.
    """
    M = T.base
    C = M.base
    cell, rep = trace_two_cell(T)
    rep.name = "traced pseudomonoid"
    rep.checked += ["Tr-van-I", "Tr-van-⊗", "Tr-sup"] + (["Tr-yank"] if balanced else [])
    P, pres = cell.source, cell.source.coend
    H = cell.target

    def tr_class(A, B, Z, f):
        e = pres.cls[pres.index[Z, f, A, B]]
        return H.labels[int(cell.components[e])]

    t, ch, inv, al, I = M.mor, C.chain, C.inverse, M.alpha, M.unit
    # Tr-van-I: Hom ⇒ Loop (along I) ⇒ Hom is the identity
    for A, B in itertools.product(range(C.n_obj), repeat=2):
        for f in C.hom(A, B):
            loop = ch(M.rho[A], f, inv(M.rho[B]))
            if tr_class(A, B, I, loop) != f:
                rep.add("Tr-van-I", (Ob(A), Ob(B), Mor(f)))
    # Tr-van-⊗: merging two loops equals tracing twice
    for A, B, X, Y in itertools.product(range(C.n_obj), repeat=4):
        for g in C.hom(M.ob(M.ob(A, X), Y), M.ob(M.ob(B, X), Y)):
            inner = tr_class(M.ob(A, X), M.ob(B, X), Y, g)
            lhs = tr_class(A, B, X, inner)
            rhs = tr_class(A, B, M.ob(X, Y), ch(inv(al[A, X, Y]), g, al[B, X, Y]))
            if lhs != rhs:
                rep.add("Tr-van-⊗", (Ob(A), Ob(B), Ob(X), Ob(Y), Mor(g)))
    # Tr-sup: the external action g ⊠ [X, f] is traced to g⊗Tr[X, f]
    for e, members in pres.classes.items():
        A, B = P.loc[e]
        Z, f, _ = pres.generators[members[0]]
        val = H.labels[int(cell.components[e])]
        for g in range(C.n_mor):
            Cc, D = C.src[g], C.dst[g]
            moved = ch(al[Cc, A, Z], t(g, f), inv(al[D, B, Z]))
            if tr_class(M.ob(Cc, A), M.ob(D, B), Z, moved) != t(g, val):
                rep.add("Tr-sup", (Ob(A), Ob(B), Ob(Z), Mor(f), Mor(g)))
    if balanced:
        for X in range(C.n_obj):
            if tr_class(X, X, X, M.braiding[X, X]) != M.twist[X]:
                rep.add("Tr-yank", (Ob(X),))
    cat = cat_level_verdict(T, U, balanced)
    rep.notes.append(f"Cat-level suite: {'pass' if cat else 'fail'}")
    if cat != rep.passed:
        rep.add("agreement with Cat-level suite", (), f"Cat {cat}, Prof {rep.passed}")
    return rep


def cat_level_verdict(T: TraceStructure, U: AxiomUniverse | None = None,
                      balanced: bool = False) -> bool:
    if balanced and not validate_balanced(T.base).passed:
        return False
    return validate_trace_axioms(T, U, balanced).passed
