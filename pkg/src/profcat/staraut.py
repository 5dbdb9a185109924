"""*-autonomous structure as a linearly distributive category with negation.

Data: two monoidal structures ``⊗, I`` and ``⅋, ⊥`` on one base, negation
``A ↦ A*``, mixed units ``cup_A: I -> A*⅋A`` and ``cap_A: A⊗A* -> ⊥``, and
distributors ``δ_L: A⊗(B⅋C) -> (A⊗B)⅋C``, ``δ_R: (A⅋B)⊗C -> A⅋(B⊗C)``.

Trace rotation works in the mix setting ``⊥ = I`` where

    c_{X,A} = (1_X ⊗ (λ^⅋_A)⁻¹) ; δ_L(X, ⊥, A) ; (ρ^⊗_X ⅋ 1_A) : X⊗A -> X⅋A

is invertible.  A right ⊗-trace ``RT`` then yields the left ⅋-trace

    LT^X(f) = RT^X(σ_{A,X} ; c_{X,A} ; f ; c⁻¹_{X,B} ; σ_{X,B}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .fincat import (
    FiniteCategory,
    Functor,
    Mor,
    Ob,
    StructuralError,
    ValidationReport,
    _Budget,
    product_category,
    split_mor,
    split_ob,
)
from .monoidal import MonoidalStructure, tensor_from_functions, validate_monoidal
from .profcalc import TwoCell, check_two_cell, embed_functor
from .traced import AxiomUniverse, TraceStructure, full_universe, validate_trace_axioms


class PreconditionError(ValueError):
    """An operation's hypotheses do not hold on the given input."""


class FrobeniusStageError(PreconditionError):
    def __init__(self, stage: str, detail: str):
        super().__init__(f"white Frobenius construction failed at stage {stage}: {detail}")
        self.stage = stage
        self.detail = detail


@dataclass(frozen=True, eq=False)
class StarAutonomousStructure:
    tensor_side: MonoidalStructure
    par_side: MonoidalStructure
    negation: dict[int, int]
    mixed_cup: dict[int, int]  # I -> A*⅋A
    mixed_cap: dict[int, int]  # A⊗A* -> ⊥
    delta_L: dict[tuple[int, int, int], int]
    delta_R: dict[tuple[int, int, int], int]
    name: str = ""

    @property
    def base(self) -> FiniteCategory:
        return self.tensor_side.base

    def with_(self, **changes) -> "StarAutonomousStructure":
        fields = dict(tensor_side=self.tensor_side, par_side=self.par_side,
                      negation=self.negation, mixed_cup=self.mixed_cup,
                      mixed_cap=self.mixed_cap, delta_L=self.delta_L,
                      delta_R=self.delta_R, name=self.name)
        fields.update(changes)
        return StarAutonomousStructure(**fields)


@dataclass(frozen=True, eq=False)
class RotationalTrace:
    side: str  # "right_tensor" or "left_par"
    structure: MonoidalStructure  # the side the loop runs along
    assign: dict[tuple[int, int, int, int], int]  # (A, B, X, f) -> trace

    def tr(self, A: int, B: int, X: int, f: int) -> int:
        try:
            return self.assign[A, B, X, f]
        except KeyError:
            C = self.structure.base
            raise StructuralError(
                f"{self.side} trace undefined at X={C.objects[X]}, f={C.morphisms[f]}") from None

    @classmethod
    def from_trace(cls, T: TraceStructure) -> "RotationalTrace":
        return cls("right_tensor", T.base, dict(T.assign))

    def as_trace_structure(self) -> TraceStructure:
        """View as an ordinary trace; a left ⅋-trace is a right trace for the
        reversed ⅋ (``a ⊗' b = b ⅋ a``)."""
        if self.side == "right_tensor":
            return TraceStructure(self.structure, self.assign, "RTr")
        return TraceStructure(reversed_structure(self.structure), self.assign, "LTr")


def reversed_structure(P: MonoidalStructure) -> MonoidalStructure:
    """``a ⊗' b = b ⅋ a`` with the induced structure maps."""
    C = P.base
    tensor = tensor_from_functions(C, lambda a, b: P.ob(b, a), lambda f, g: P.mor(g, f))
    inv = C.inverse
    n = C.n_obj
    alpha = {(a, b, c): inv(P.alpha[c, b, a]) for a, b, c in itertools.product(range(n), repeat=3)}
    br = None
    if P.braiding is not None:
        br = {(a, b): P.braiding[b, a] for a, b in itertools.product(range(n), repeat=2)}
    return MonoidalStructure(C, tensor, P.unit, alpha, dict(P.rho), dict(P.lambda_), br,
                             P.twist, P.name + "^rev")


# ------------------------------------------------------------ validation


def _typed(C: FiniteCategory, f: int | None, src: int, dst: int, what: str) -> None:
    if f is None or not 0 <= f < C.n_mor or C.src[f] != src or C.dst[f] != dst:
        raise StructuralError(f"{what} missing or wrongly typed")


def check_star_types(S: StarAutonomousStructure) -> None:
    T, P = S.tensor_side, S.par_side
    C = S.base
    if P.base is not C and not P.base.same_as(C):
        raise StructuralError("⊗ and ⅋ live on different categories")
    names = C.objects
    for a, b, c in itertools.product(range(C.n_obj), repeat=3):
        tag = f"({names[a]},{names[b]},{names[c]})"
        _typed(C, S.delta_L.get((a, b, c)), T.ob(a, P.ob(b, c)), P.ob(T.ob(a, b), c),
               f"deltaL at {tag}")
        _typed(C, S.delta_R.get((a, b, c)), T.ob(P.ob(a, b), c), P.ob(a, T.ob(b, c)),
               f"deltaR at {tag}")
    for a in range(C.n_obj):
        if a not in S.negation:
            raise StructuralError(f"negation missing at {names[a]}")
        s = S.negation[a]
        _typed(C, S.mixed_cup.get(a), T.unit, P.ob(s, a), f"mixed_cup at {names[a]}")
        _typed(C, S.mixed_cap.get(a), T.ob(a, s), P.unit, f"mixed_cap at {names[a]}")


def validate_star_autonomous(S: StarAutonomousStructure,
                             max_triples: int | None = 10**4) -> ValidationReport:
    check_star_types(S)
    T, P = S.tensor_side, S.par_side
    C = S.base
    rep = ValidationReport("*-autonomous")
    rep.extend(validate_monoidal(T, max_triples), prefix="⊗ ")
    rep.extend(validate_monoidal(P, max_triples), prefix="⅋ ")
    rep.checked += ["deltaL naturality", "deltaR naturality", "mixed snake (1)", "mixed snake (2)"]
    t, p, ch, inv = T.mor, P.mor, C.chain, C.inverse
    budget = _Budget(rep, max_triples)
    for f, g, h in itertools.product(range(C.n_mor), repeat=3):
        if not budget.take():
            break
        a, b, c = C.src[f], C.src[g], C.src[h]
        a2, b2, c2 = C.dst[f], C.dst[g], C.dst[h]
        if ch(t(f, p(g, h)), S.delta_L[a2, b2, c2]) != ch(S.delta_L[a, b, c], p(t(f, g), h)):
            rep.add("deltaL naturality", (Mor(f), Mor(g), Mor(h)))
        if ch(t(p(f, g), h), S.delta_R[a2, b2, c2]) != ch(S.delta_R[a, b, c], p(f, t(g, h))):
            rep.add("deltaR naturality", (Mor(f), Mor(g), Mor(h)))
    for a in range(C.n_obj):
        s = S.negation[a]
        one = ch(inv(T.rho[a]), t(C.identity[a], S.mixed_cup[a]), S.delta_L[a, s, a],
                 p(S.mixed_cap[a], C.identity[a]), P.lambda_[a])
        if one != C.identity[a]:
            rep.add("mixed snake (1)", (Ob(a),))
        two = ch(inv(T.lambda_[s]), t(S.mixed_cup[a], C.identity[s]), S.delta_R[s, a, s],
                 p(C.identity[s], S.mixed_cap[a]), P.rho[s])
        if two != C.identity[s]:
            rep.add("mixed snake (2)", (Ob(a),))
    return rep


def from_compact(M: MonoidalStructure, dual: dict[int, int], eval_: dict[int, int],
                 coeval: dict[int, int]) -> StarAutonomousStructure:
    """Degenerate *-autonomous structure ``⅋ := ⊗``, ``⊥ := I`` on a
    symmetric compact closed category."""
    C = M.base
    n = C.n_obj
    if M.braiding is None:
        raise StructuralError("compact closed input needs a braiding")
    inv = C.inverse
    dl = {(a, b, c): inv(M.alpha[a, b, c]) for a, b, c in itertools.product(range(n), repeat=3)}
    dr = {(a, b, c): M.alpha[a, b, c] for a, b, c in itertools.product(range(n), repeat=3)}
    # cup_A: I -> A*⊗A is coeval followed by the braiding; cap_A: A⊗A* -> I
    cup = {a: C.compose(coeval[a], M.braiding[a, dual[a]]) for a in range(n)}
    cap = {a: C.compose(M.braiding[a, dual[a]], eval_[a]) for a in range(n)}
    return StarAutonomousStructure(M, M, dict(dual), cup, cap, dl, dr, M.name + " (⅋=⊗)")


# --------------------------------------------------------------- rotation


def _mix_maps(S: StarAutonomousStructure) -> dict[tuple[int, int], int]:
    T, P = S.tensor_side, S.par_side
    C = S.base
    if P.unit != T.unit:
        raise PreconditionError("rotation needs ⊥ = I (mix case)")
    if T.braiding is None:
        raise PreconditionError("rotation needs a braiding on ⊗")
    out = {}
    bot = P.unit
    for X, A in itertools.product(range(C.n_obj), repeat=2):
        c = C.chain(T.mor(C.identity[X], C.inverse(P.lambda_[A])), S.delta_L[X, bot, A],
                    P.mor(T.rho[X], C.identity[A]))
        if not C.is_iso(c):
            raise PreconditionError(f"mix map at ({C.objects[X]},{C.objects[A]}) is not invertible")
        out[X, A] = c
    return out


def _left_instances(P: MonoidalStructure):
    C = P.base
    for A, B, X in itertools.product(range(C.n_obj), repeat=3):
        for f in C.hom(P.ob(X, A), P.ob(X, B)):
            yield A, B, X, f


def rotate_trace(S: StarAutonomousStructure, RT: RotationalTrace | None) -> RotationalTrace:
    if RT is None:
        raise PreconditionError("no right ⊗-trace supplied (the input has no trace)")
    if RT.side != "right_tensor":
        raise StructuralError("rotate_trace expects a right ⊗-trace")
    c = _mix_maps(S)
    T, P = S.tensor_side, S.par_side
    C = S.base
    s, inv = T.braiding, C.inverse
    assign = {}
    for A, B, X, f in _left_instances(P):
        g = C.chain(s[A, X], c[X, A], f, inv(c[X, B]), s[X, B])
        assign[A, B, X, f] = RT.tr(A, B, X, g)
    return RotationalTrace("left_par", P, assign)


def unrotate_trace(S: StarAutonomousStructure, LT: RotationalTrace) -> RotationalTrace:
    """Inverse of rotate_trace: ``RT^X(g) = LT^X(c⁻¹;σ⁻¹;g;σ⁻¹;c)``."""
    if LT.side != "left_par":
        raise StructuralError("unrotate_trace expects a left ⅋-trace")
    c = _mix_maps(S)
    T = S.tensor_side
    C = S.base
    s, inv = T.braiding, C.inverse
    assign = {}
    for A, B, X in itertools.product(range(C.n_obj), repeat=3):
        for g in C.hom(T.ob(A, X), T.ob(B, X)):
            f = C.chain(inv(c[X, A]), inv(s[A, X]), g, inv(s[X, B]), c[X, B])
            assign[A, B, X, g] = LT.tr(A, B, X, f)
    return RotationalTrace("right_tensor", T, assign)


def check_left_par_trace(S: StarAutonomousStructure, LT: RotationalTrace,
                         U: AxiomUniverse | None = None) -> ValidationReport:
    """The trace axioms for ⅋ with the loop on the left.

    Checked as the right-trace axioms of the reversed ⅋, which spells out to
    ``LT^⊥(f) = (λ^⅋)⁻¹;f;λ^⅋``, ``LT^X(LT^Y(g)) = LT^{Y⅋X}(α;g;α⁻¹)``,
    ``LT(f)⅋g = LT(α⁻¹;(f⅋g);α)``, plus tightening and sliding.
    """
    T = LT.as_trace_structure()
    inner = validate_trace_axioms(T, U or full_universe(T.base))
    rep = ValidationReport("left ⅋-trace axioms", truncated=inner.truncated)
    rename = {"van-I": "⅋-van-⊥", "van-⊗": "⅋-van-⅋", "sup": "⅋-sup",
              "tight": "⅋-tight", "sli": "⅋-sli"}
    rep.checked += [rename[x] for x in inner.checked]
    for v in inner.violations:
        rep.add(rename.get(v.law, v.law), v.witness, v.detail)
    return rep


# ------------------------------------------------------- white Frobenius


@dataclass(eq=False)
class WhiteFrobenius:
    components: dict[tuple[int, int, int], int]  # A⅋(B⊗C) -> (A⅋B)⊗C
    cell: TwoCell
    report: ValidationReport
    stages: list[str] = field(default_factory=list)


def _triple_functor(S: StarAutonomousStructure, which: str) -> Functor:
    """``(a, (b, c)) ↦ a⅋(b⊗c)`` (``src``) or ``(a⅋b)⊗c`` (``dst``)."""
    T, P = S.tensor_side, S.par_side
    C = S.base
    CC = product_category(C, C)
    C3 = product_category(C, CC)
    obj_map, mor_map = [], []
    for x in range(C3.n_obj):
        a, bc = split_ob(CC, x)
        b, c = split_ob(C, bc)
        obj_map.append(P.ob(a, T.ob(b, c)) if which == "src" else T.ob(P.ob(a, b), c))
    for x in range(C3.n_mor):
        f, gh = split_mor(CC, x)
        g, h = split_mor(C, gh)
        mor_map.append(P.mor(f, T.mor(g, h)) if which == "src" else T.mor(P.mor(f, g), h))
    return Functor(C3, C, tuple(obj_map), tuple(mor_map))


def white_frobenius(S: StarAutonomousStructure, RT: RotationalTrace | None,
                    LT: RotationalTrace | None) -> WhiteFrobenius:
    """``ω_{A,B,C}: A⅋(B⊗C) -> (A⅋B)⊗C`` in three stages.

    ``mix``: ``q = c⁻¹;α⁻¹;(c⊗1)`` through the mix maps;
    ``RTr``: ``ω₁ = RT^D(σ_{D,D};(q⊗1_D))`` with ``D = A⅋(B⊗C)``;
    ``LTr``: ``ω = LT^D(σ^⅋_{D,D};(1_D⅋ω₁))``.
    The traced stages collapse to ``q`` exactly when the traces yank; a
    failing stage aborts with FrobeniusStageError naming it.
    """
    if RT is None or LT is None:
        raise FrobeniusStageError("RTr" if RT is None else "LTr", "trace not supplied")
    T, P = S.tensor_side, S.par_side
    C = S.base
    try:
        c = _mix_maps(S)
    except PreconditionError as exc:
        raise FrobeniusStageError("mix", str(exc)) from None
    if P.braiding is None:
        raise FrobeniusStageError("LTr", "⅋ has no braiding")
    inv = C.inverse
    comps = {}
    stages = ["mix", "RTr", "LTr"]
    for A, B, Cc in itertools.product(range(C.n_obj), repeat=3):
        BC = T.ob(B, Cc)
        D = P.ob(A, BC)
        E = T.ob(P.ob(A, B), Cc)
        q = C.chain(inv(c[A, BC]), inv(T.alpha[A, B, Cc]), T.mor(c[A, B], C.identity[Cc]))
        try:
            w1 = RT.tr(D, E, D, C.chain(T.braiding[D, D], T.mor(q, C.identity[D])))
        except StructuralError as exc:
            raise FrobeniusStageError("RTr", str(exc)) from None
        if w1 != q:
            raise FrobeniusStageError(
                "RTr", f"RTr does not yank at {C.objects[D]} (triple "
                       f"{C.objects[A]},{C.objects[B]},{C.objects[Cc]})")
        try:
            w = LT.tr(D, E, D, C.chain(P.braiding[D, D], P.mor(C.identity[D], w1)))
        except StructuralError as exc:
            raise FrobeniusStageError("LTr", str(exc)) from None
        if w != w1:
            raise FrobeniusStageError(
                "LTr", f"LTr does not yank at {C.objects[D]} (triple "
                       f"{C.objects[A]},{C.objects[B]},{C.objects[Cc]})")
        comps[A, B, Cc] = w
    # as a 2-cell: postcomposition Hom(x, A⅋(B⊗C)) ⇒ Hom(x, (A⅋B)⊗C)
    Fs = embed_functor(_triple_functor(S, "src"), "covariant")
    Ft = embed_functor(_triple_functor(S, "dst"), "covariant")
    CC = product_category(C, C)
    comp = np.empty(Fs.n, dtype=np.int64)
    for e, (x, abc) in enumerate(Fs.loc):
        a, bc = split_ob(CC, abc)
        b, cc = split_ob(C, bc)
        comp[e] = Ft.element(x, abc, C.compose(Fs.labels[e], comps[a, b, cc]))
    cell = TwoCell(Fs, Ft, comp, "ω")
    report = check_two_cell(cell)
    report.name = "white Frobenius naturality"
    return WhiteFrobenius(comps, cell, report, stages)


def check_delta_invertible(S: StarAutonomousStructure, RT: RotationalTrace | None,
                           LT: RotationalTrace | None) -> ValidationReport:
    """Hypotheses ``ω_{A,B,I};ρ^⊗ = 1⅋ρ^⊗`` and
    ``ω_{⊥,B,C};(λ^⅋⊗1) = λ^⅋``, then ``δ_R;ω = 1`` and ``ω;δ_R = 1``."""
    rep = ValidationReport("delta invertibility")
    try:
        W = white_frobenius(S, RT, LT)
    except PreconditionError as exc:
        rep.notes.append(f"OUT-OF-HYPOTHESIS: {exc}")
        return rep
    T, P = S.tensor_side, S.par_side
    C = S.base
    n = C.n_obj
    I, bot = T.unit, P.unit
    w = W.components
    rep.extend(W.report)
    hyp = ValidationReport()
    for A, B in itertools.product(range(n), repeat=2):
        lhs = C.compose(w[A, B, I], T.rho[P.ob(A, B)])
        if lhs != P.mor(C.identity[A], T.rho[B]):
            hyp.add("hypothesis ε⊗-sup", (Ob(A), Ob(B)))
    for B, Cc in itertools.product(range(n), repeat=2):
        lhs = C.compose(w[bot, B, Cc], T.mor(P.lambda_[B], C.identity[Cc]))
        if lhs != P.lambda_[T.ob(B, Cc)]:
            hyp.add("hypothesis ε⅋-sup", (Ob(B), Ob(Cc)))
    rep.checked += ["hypothesis ε⊗-sup", "hypothesis ε⅋-sup", "deltaR;deltaR' = id",
                    "deltaR';deltaR = id"]
    if not hyp.passed:
        rep.extend(hyp)
        rep.notes.append("hypotheses fail; the inverse composites are not asserted")
        return rep
    rep.notes.append("hypotheses hold")
    for A, B, Cc in itertools.product(range(n), repeat=3):
        d = S.delta_R[A, B, Cc]
        back = w[A, B, Cc]
        if C.compose(d, back) != C.identity[C.src[d]]:
            rep.add("deltaR;deltaR' = id", (Ob(A), Ob(B), Ob(Cc)))
        if C.compose(back, d) != C.identity[C.dst[d]]:
            rep.add("deltaR';deltaR = id", (Ob(A), Ob(B), Ob(Cc)))
    return rep


def out_of_hypothesis(rep: ValidationReport) -> bool:
    return any(n.startswith("OUT-OF-HYPOTHESIS") for n in rep.notes)


def mix_maps(S: StarAutonomousStructure) -> dict[tuple[int, int], int]:
    return _mix_maps(S)

