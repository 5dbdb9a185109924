"""Duals, the nearly-tracing operator and the trace of a braided autonomous
category.

Convention: ``eval_A: A*⊗A -> I`` and ``coeval_A: I -> A⊗A*``.  The snake
equations read

    λ⁻¹;(coeval⊗1);α;(1⊗eval);ρ = 1_A
    ρ⁻¹;(1⊗coeval);α⁻¹;(eval⊗1);λ = 1_{A*}
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import Functor, Ob, StructuralError, ValidationReport, pair_ob, product_category, split_ob
from .monoidal import MonoidalStructure, _reassoc_functor
from .profcalc import (
    TwoCell,
    compose,
    embed_functor,
    external_product,
    hom_profunctor,
    induced_cell,
    restrict,
)
from .traced import (
    AxiomUniverse,
    TraceStructure,
    full_universe,
    trace_from_function,
    trace_instances,
)


@dataclass(frozen=True, eq=False)
class DualityStructure:
    base: MonoidalStructure
    dual: dict[int, int]
    eval: dict[int, int]
    coeval: dict[int, int]

    def with_(self, **changes) -> "DualityStructure":
        fields = dict(base=self.base, dual=self.dual, eval=self.eval, coeval=self.coeval)
        fields.update(changes)
        return DualityStructure(**fields)


def check_duality_types(D: DualityStructure) -> None:
    M, C = D.base, D.base.base
    for a in range(C.n_obj):
        for table, what in ((D.dual, "dual"), (D.eval, "eval"), (D.coeval, "coeval")):
            if a not in table:
                raise StructuralError(f"{what} missing at {C.objects[a]}")
        s = D.dual[a]
        ev, co = D.eval[a], D.coeval[a]
        if (C.src[ev], C.dst[ev]) != (M.ob(s, a), M.unit):
            raise StructuralError(f"eval at {C.objects[a]} has the wrong type")
        if (C.src[co], C.dst[co]) != (M.unit, M.ob(a, s)):
            raise StructuralError(f"coeval at {C.objects[a]} has the wrong type")


def _snakes(M: MonoidalStructure, a: int, s: int, ev: int, co: int) -> tuple[bool, bool]:
    C = M.base
    t, ch, inv, al = M.mor, C.chain, C.inverse, M.alpha
    one = ch(inv(M.lambda_[a]), t(co, M.id(a)), al[a, s, a], t(M.id(a), ev), M.rho[a])
    two = ch(inv(M.rho[s]), t(M.id(s), co), inv(al[s, a, s]), t(ev, M.id(s)), M.lambda_[s])
    return one == M.id(a), two == M.id(s)


def validate_autonomous(D: DualityStructure) -> ValidationReport:
    check_duality_types(D)
    M = D.base
    rep = ValidationReport("autonomous")
    rep.checked += ["snake (1)", "snake (2)"]
    for a in range(M.base.n_obj):
        one, two = _snakes(M, a, D.dual[a], D.eval[a], D.coeval[a])
        if not one:
            rep.add("snake (1)", (Ob(a),))
        if not two:
            rep.add("snake (2)", (Ob(a),))
    return rep


def search_dualities(M: MonoidalStructure) -> DualityStructure | dict[int, str]:
    """Exhaustive per-object search; returns the failing objects otherwise."""
    C = M.base
    dual, ev_, co_ = {}, {}, {}
    missing = {}
    for a in range(C.n_obj):
        found = None
        for s in range(C.n_obj):
            for ev in C.hom(M.ob(s, a), M.unit):
                for co in C.hom(M.unit, M.ob(a, s)):
                    if all(_snakes(M, a, s, ev, co)):
                        found = (s, ev, co)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            missing[a] = "no dual object with eval/coeval satisfying the snakes"
        else:
            dual[a], ev_[a], co_[a] = found
    if missing:
        return missing
    return DualityStructure(M, dual, ev_, co_)


# ---------------------------------------------------------------- gamma


def _inverse_functor(F: Functor) -> Functor:
    inv_o = [0] * F.target.n_obj
    inv_m = [0] * F.target.n_mor
    for a, b in enumerate(F.obj_map):
        inv_o[b] = a
    for f, g in enumerate(F.mor_map):
        inv_m[g] = f
    return Functor(F.target, F.source, tuple(inv_o), tuple(inv_m))


def gamma_cells(M: MonoidalStructure) -> tuple[TwoCell, TwoCell]:
    """``γ_L`` and ``γ_R`` as 2-cells ``C×C ⇸ C×C`` into ``mult_* ◇ mult``.

    ``γ_L`` sends ``∫^x Hom(a, c⊗x) × Hom(x⊗b, d)`` to ``Hom(a⊗b, c⊗d)`` by
    ``(u, k, m, v) ↦ (u⊗k);α;(m⊗v)``; ``γ_R`` sends
    ``∫^x Hom(b, x⊗d) × Hom(a⊗x, c)`` by ``(k, u, v, m) ↦ (k⊗u);α⁻¹;(v⊗m)``.
    """
    C = M.base
    H = hom_profunctor(C)
    CC = product_category(C, C)
    mult = embed_functor(M.tensor, "covariant")
    mult_lower = embed_functor(M.tensor, "contravariant")
    target = compose(mult_lower, mult)
    tp = target.coend
    to_right = _reassoc_functor(C)  # (C×C)×C -> C×(C×C)
    to_left = _inverse_functor(to_right)

    def land(a, b, c, d, w):
        ab = M.ob(a, b)
        x = mult_lower.element(pair_ob(C, a, b), ab, M.id(ab))
        y = mult.element(ab, pair_ob(C, c, d), w)
        return tp.element_of(x, y)

    # γ_L
    left_raw = external_product(mult, H)  # ((a,b), ((c,x),b'))
    left = restrict(left_raw, None, to_left)  # ((a,b), (c,(x,b')))
    right = external_product(H, mult_lower)  # ((c,(x,b')), (c',d))
    src_L = compose(left, right)

    def gen_L(bridge, x, y):
        e_u, e_k = left.labels[x]
        e_m, e_v = right.labels[y]
        u, k = mult.labels[e_u], H.labels[e_k]
        m, v = H.labels[e_m], mult_lower.labels[e_v]
        ab = left.loc[x][0]
        a, b = split_ob(C, ab)
        c = C.src[m]
        xb = split_ob(CC, bridge)[1]
        xx, b2 = split_ob(C, xb)
        w = C.chain(M.mor(u, k), M.alpha[c, xx, b2], M.mor(m, v))
        return land(a, b, C.dst[m], C.dst[v], w)

    gL, _ = induced_cell(src_L, target, gen_L, "γ_L")

    # γ_R
    r_raw = external_product(H, mult)  # ((a,b), (a',(x,d)))
    r_left = restrict(r_raw, None, to_right)  # ((a,b), ((a',x),d))
    r_right = external_product(mult_lower, H)  # (((a',x),d), (c,d'))
    src_R = compose(r_left, r_right)

    def gen_R(bridge, x, y):
        e_k, e_u = r_left.labels[x]
        e_v, e_m = r_right.labels[y]
        k, u = H.labels[e_k], mult.labels[e_u]
        v, m = mult_lower.labels[e_v], H.labels[e_m]
        a, b = split_ob(C, r_left.loc[x][0])
        a2x, d = split_ob(C, bridge)
        a2, xx = split_ob(C, a2x)
        w = C.chain(M.mor(k, u), C.inverse(M.alpha[a2, xx, d]), M.mor(v, m))
        return land(a, b, C.dst[v], C.dst[m], w)

    gR, _ = induced_cell(src_R, target, gen_R, "γ_R")
    return gL, gR


def check_gamma_invertible(M: MonoidalStructure) -> ValidationReport:
    C = M.base
    rep = ValidationReport("gamma invertibility")
    rep.checked += ["γ_L bijective", "γ_R bijective"]
    for name, cell in zip(("γ_L", "γ_R"), gamma_cells(M)):
        for ab, cd, why in cell.bijectivity_failures()[:1]:
            a, b = split_ob(C, ab)
            c, d = split_ob(C, cd)
            rep.add(f"{name} bijective", (Ob(a), Ob(b), Ob(c), Ob(d)), why)
    return rep


# ------------------------------------------------------------ nearly trace


def nearly_trace(D: DualityStructure, f: int, A: int, B: int, X: int,
                 pairing: int | None = None) -> int:
    """``ρ⁻¹;(1⊗coeval_X);α⁻¹;(f⊗1);α;(1⊗pair);ρ`` with ``pair: X⊗X* -> I``.

    The default pairing is ``eval_{X*}``, available when ``X** = X``.
    """
    M, C = D.base, D.base.base
    s = D.dual[X]
    if C.src[f] != M.ob(A, X) or C.dst[f] != M.ob(B, X):
        raise StructuralError("nearly_trace: f is not typed A⊗X -> B⊗X")
    if pairing is None:
        if D.dual[s] != X:
            raise StructuralError("default pairing needs X** = X; pass a pairing")
        pairing = D.eval[s]
    if (C.src[pairing], C.dst[pairing]) != (M.ob(X, s), M.unit):
        raise StructuralError("pairing is not typed X⊗X* -> I")
    t, ch, inv, al = M.mor, C.chain, C.inverse, M.alpha
    return ch(inv(M.rho[A]), t(M.id(A), D.coeval[X]), inv(al[A, X, s]), t(f, M.id(s)),
              al[B, X, s], t(M.id(B), pairing), M.rho[B])


def check_nearly_tracing_axioms(D: DualityStructure, U: AxiomUniverse | None = None) -> ValidationReport:
    M, C = D.base, D.base.base
    U = U or full_universe(M)
    t, ch, inv, al, I = M.mor, C.chain, C.inverse, M.alpha, M.unit
    mors = set(U.morphisms)
    nt = lambda A, B, X, f: nearly_trace(D, f, A, B, X)  # noqa: E731
    rep = ValidationReport("nearly-tracing axioms")
    rep.checked += ["NTr-van-I", "NTr-van-⊗", "NTr-sup"]
    if I in U.objects:
        for A, B in itertools.product(U.objects, repeat=2):
            for f in C.hom(M.ob(A, I), M.ob(B, I)):
                if f in mors and nt(A, B, I, f) != ch(inv(M.rho[A]), f, M.rho[B]):
                    rep.add("NTr-van-I", (Ob(A), Ob(B), Ob(I)), C.morphisms[f])
    for A, B, X, Y in itertools.product(U.objects, repeat=4):
        for g in C.hom(M.ob(M.ob(A, X), Y), M.ob(M.ob(B, X), Y)):
            if g not in mors:
                continue
            lhs = nt(A, B, X, nt(M.ob(A, X), M.ob(B, X), Y, g))
            rhs = nt(A, B, M.ob(X, Y), ch(inv(al[A, X, Y]), g, al[B, X, Y]))
            if lhs != rhs:
                rep.add("NTr-van-⊗", (Ob(A), Ob(B), Ob(X), Ob(Y)), C.morphisms[g])
    for A, B, X, f in trace_instances(M, U):
        for g in mors:
            Cc, Dd = C.src[g], C.dst[g]
            lhs = t(g, nt(A, B, X, f))
            rhs = nt(M.ob(Cc, A), M.ob(Dd, B), X, ch(al[Cc, A, X], t(g, f), inv(al[Dd, B, X])))
            if lhs != rhs:
                rep.add("NTr-sup", (Ob(A), Ob(B), Ob(X)), f"{C.morphisms[f]}, {C.morphisms[g]}")
    return rep


def derive_trace(D: DualityStructure) -> TraceStructure:
    """Trace from duals and a braiding: the nearly trace of ``f`` with the
    pairing ``σ_{X,X*};eval_X``, i.e. the braiding bends the loop back."""
    M, C = D.base, D.base.base
    if M.braiding is None:
        raise StructuralError("derive_trace needs a braiding")

    def fn(A, B, X, f):
        return nearly_trace(D, f, A, B, X, C.compose(M.braiding[X, D.dual[X]], D.eval[X]))

    return trace_from_function(M, fn, "derived")


def textbook_trace(D: DualityStructure, A: int, B: int, X: int, f: int) -> int:
    """One-line formula
    ``ρ⁻¹;(1⊗coeval);α⁻¹;(f⊗1);α;(1⊗σ);(1⊗eval);ρ``, for comparison."""
    M, C = D.base, D.base.base
    s = D.dual[X]
    t, inv, al = M.mor, C.inverse, M.alpha
    return C.chain(inv(M.rho[A]), t(M.id(A), D.coeval[X]), inv(al[A, X, s]), t(f, M.id(s)),
                   al[B, X, s], t(M.id(B), M.braiding[X, s]), t(M.id(B), D.eval[X]), M.rho[B])


def twisted_trace(T: TraceStructure) -> TraceStructure:
    """``Tr'(f) = Tr(f;(1⊗θ_X))``, a second trace when θ is nontrivial."""
    M, C = T.base, T.base.base
    if M.twist is None:
        raise StructuralError("twisted_trace needs a twist")
    return trace_from_function(
        M, lambda A, B, X, f: T.tr(A, B, X, C.compose(f, M.mor(M.id(B), M.twist[X]))),
        "twisted")


def compare_with_textbook(D: DualityStructure, T: TraceStructure | None = None) -> list[tuple]:
    """Instances where the derived trace and the one-line formula differ."""
    T = T or derive_trace(D)
    return [k for k in trace_instances(D.base) if T.tr(*k) != textbook_trace(D, *k)]
