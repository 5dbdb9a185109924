"""Small categories with the structure they support.

Each builder returns an :class:`Example` holding whatever layers exist:
monoidal structure (with braiding and twist), a trace, duals and
*-autonomous data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .duality import DualityStructure, derive_trace, search_dualities, twisted_trace
from .fincat import FiniteCategory, StructuralError, karoubi_parts
from .monoidal import MonoidalStructure, strict_structure, tensor_from_functions
from .staraut import StarAutonomousStructure, from_compact
from .traced import TraceStructure, trace_from_function


@dataclass(eq=False)
class Example:
    name: str
    category: FiniteCategory
    monoidal: MonoidalStructure | None = None
    trace: TraceStructure | None = None
    duality: DualityStructure | None = None
    star: StarAutonomousStructure | None = None
    notes: list[str] = field(default_factory=list)


def discrete_category(names: list[str]) -> FiniteCategory:
    ids = [f"id_{a}" for a in names]
    return FiniteCategory.build(names, [(i, a, a) for i, a in zip(ids, names)], {},
                                dict(zip(names, ids)))


def poset_category(names: list[str], leq) -> FiniteCategory:
    """Thin category with a morphism ``a≤b`` whenever ``leq(i, j)``."""
    n = len(names)
    mors = [(f"{names[i]}≤{names[j]}", names[i], names[j])
            for i in range(n) for j in range(n) if leq(i, j)]
    comp = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        if leq(i, j) and leq(j, k):
            comp[f"{names[i]}≤{names[j]}", f"{names[j]}≤{names[k]}"] = f"{names[i]}≤{names[k]}"
    return FiniteCategory.build(names, mors, comp)


def _thin_mor(C: FiniteCategory, a: int, b: int) -> int:
    hom = C.hom(a, b)
    if not hom:
        raise StructuralError(f"no morphism {C.objects[a]} -> {C.objects[b]}")
    return hom[0]


def _thin_monoidal(C: FiniteCategory, ob_fn, unit: int, name: str) -> MonoidalStructure:
    tensor = tensor_from_functions(
        C, ob_fn, lambda f, g: _thin_mor(C, ob_fn(C.src[f], C.src[g]), ob_fn(C.dst[f], C.dst[g])))
    return strict_structure(C, tensor, unit, symmetric=True, name=name)


def discrete_abelian(n: int) -> Example:
    """Objects ``Z_n``, only identities, ``a⊗b = a+b``; compact closed."""
    if not 1 <= n <= 12:
        raise ValueError("n must lie in 1..12")
    C = discrete_category([str(a) for a in range(n)])
    tensor = tensor_from_functions(C, lambda a, b: (a + b) % n, lambda f, g: (f + g) % n)
    M = strict_structure(C, tensor, 0, name=f"discrete Z_{n}")
    T = trace_from_function(M, lambda A, B, X, f: C.identity[A], "forced")
    D = DualityStructure(M, {a: (-a) % n for a in range(n)}, {a: 0 for a in range(n)},
                         {a: 0 for a in range(n)})
    S = from_compact(M, D.dual, D.eval, D.coeval)
    return Example(f"discrete_abelian({n})", C, M, T, D, S)


LEFT_ZERO = (["1", "x", "y"], [[0, 1, 2], [1, 1, 1], [2, 2, 2]])
IDEMPOTENT = (["1", "e"], [[0, 1], [1, 1]])
Z2_GROUP = (["1", "s"], [[0, 1], [1, 0]])


def monoid_category(elements: list[str], table: list[list[int]]) -> FiniteCategory:
    """One-object category; ``compose(f, g)`` is the product ``f·g``."""
    n = len(elements)
    if any(table[0][i] != i or table[i][0] != i for i in range(n)):
        raise StructuralError("element 0 must be the unit of the table")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise StructuralError(f"table is not associative at ({elements[a]},{elements[b]},{elements[c]})")
    comp = {(elements[a], elements[b]): elements[table[a][b]]
            for a, b in itertools.product(range(n), repeat=2)}
    return FiniteCategory.build(["pt"], [(e, "pt", "pt") for e in elements], comp, {"pt": elements[0]})


def one_object_monoid(elements: list[str], table: list[list[int]], tensor: str = "product",
                      name: str | None = None) -> Example:
    """Monoid as a one-object category.

    ``tensor="product"`` uses ``f⊗g = f·g`` (needs a commutative table);
    ``tensor="right"`` uses ``f⊗g = g``, the only bifunctor available for
    some non-commutative tables.  The trace is ``Tr(f) = f``.
    """
    C = monoid_category(elements, table)
    name = name or f"one_object_monoid({','.join(elements)})"
    if tensor == "product":
        T_ = tensor_from_functions(C, lambda a, b: 0, lambda f, g: table[f][g])
    elif tensor == "right":
        T_ = tensor_from_functions(C, lambda a, b: 0, lambda f, g: g)
    else:
        raise ValueError(f"unknown tensor {tensor!r}")
    M = strict_structure(C, T_, 0, name=name)
    T = trace_from_function(M, lambda A, B, X, f: f, "identity")
    ex = Example(name, C, M, T)
    commutative = all(table[a][b] == table[b][a] for a in range(len(elements)) for b in range(len(elements)))
    if tensor == "product" and commutative:
        D = DualityStructure(M, {0: 0}, {0: 0}, {0: 0})
        ex.duality = D
        ex.star = from_compact(M, D.dual, D.eval, D.coeval)
    return ex


def left_zero_monoid() -> Example:
    ex = one_object_monoid(*LEFT_ZERO, tensor="right", name="left_zero{1,x,y}")
    ex.notes.append("the only tensor is the second projection; ρ is not natural")
    return ex


def idempotent_monoid() -> Example:
    return one_object_monoid(*IDEMPOTENT, name="monoid{1,e}")


def z2_group() -> Example:
    return one_object_monoid(*Z2_GROUP, name="group Z_2")


def karoubi_of(ex: Example) -> Example:
    """Envelope with the monoidal structure, trace and duals transported
    along the idempotents."""
    C = ex.category
    K, emb, idem, mors = karoubi_parts(C)
    if ex.monoidal is None:
        return Example(f"karoubi({ex.name})", K)
    M = ex.monoidal
    obj_of = {(p.carrier, p.morphism): i for i, p in enumerate(idem)}
    mor_of = {m: k for k, m in enumerate(mors)}

    def kmor(i, j, f):
        return mor_of[i, j, f]

    def ob_fn(i, j):
        p, q = idem[i], idem[j]
        return obj_of[M.ob(p.carrier, q.carrier), M.mor(p.morphism, q.morphism)]

    def mor_fn(f, g):
        i, j, u = mors[f]
        k, l, v = mors[g]
        return kmor(ob_fn(i, k), ob_fn(j, l), M.mor(u, v))

    tensor = tensor_from_functions(K, ob_fn, mor_fn)
    n = K.n_obj
    unit = obj_of[M.unit, M.id(M.unit)]
    ch = C.chain

    def ob_t(i, j):
        return ob_fn(i, j)

    def e(i):
        return idem[i].morphism

    alpha, lam, rho, br, tw = {}, {}, {}, {}, {}
    for i, j, k in itertools.product(range(n), repeat=3):
        a, b, c = idem[i].carrier, idem[j].carrier, idem[k].carrier
        src, dst = ob_t(ob_t(i, j), k), ob_t(i, ob_t(j, k))
        alpha[i, j, k] = kmor(src, dst, ch(M.alpha[a, b, c], e(dst)))
    for i in range(n):
        a = idem[i].carrier
        lam[i] = kmor(ob_t(unit, i), i, ch(M.lambda_[a], e(i)))
        rho[i] = kmor(ob_t(i, unit), i, ch(M.rho[a], e(i)))
        if M.twist is not None:
            tw[i] = kmor(i, i, ch(M.twist[a], e(i)))
    if M.braiding is not None:
        for i, j in itertools.product(range(n), repeat=2):
            a, b = idem[i].carrier, idem[j].carrier
            br[i, j] = kmor(ob_t(i, j), ob_t(j, i), ch(M.braiding[a, b], e(ob_t(j, i))))
    KM = MonoidalStructure(K, tensor, unit, alpha, lam, rho, br or None, tw or None,
                           f"karoubi({M.name})")
    out = Example(f"karoubi({ex.name})", K, KM)
    if ex.trace is not None:
        T = ex.trace

        def tr(A, B, X, f):
            i, j, u = mors[f]
            g = T.tr(idem[A].carrier, idem[B].carrier, idem[X].carrier, u)
            return kmor(A, B, ch(e(A), g, e(B)))

        out.trace = trace_from_function(KM, tr, "transported")
    found = search_dualities(KM)
    if isinstance(found, DualityStructure):
        out.duality = found
        if KM.braiding is not None:
            out.star = from_compact(KM, found.dual, found.eval, found.coeval)
    del emb
    return out


def walking_arrow() -> Example:
    """The poset ``0 <= 1`` with ``⊗ = min`` and ``I = 1``."""
    C = poset_category(["0", "1"], lambda i, j: i <= j)
    M = _thin_monoidal(C, min, 1, "walking arrow (meet)")
    return Example("walking_arrow", C, M)


def poset2_meet() -> Example:
    ex = walking_arrow()
    ex.name = "poset2_meet"
    return ex


def lukasiewicz_chain(n: int) -> Example:
    """Chain ``0 < 1 < ... < n`` read as ``k/n``: ``a⊗b = max(0, a+b-n)``
    with ``I = n``, ``a⅋b = min(n, a+b)`` with ``⊥ = 0``, negation ``n-a``."""
    if not 1 <= n <= 12:
        raise ValueError("n must lie in 1..12")
    names = ["0"] + [f"{k}/{n}" for k in range(1, n)] + ["1"]
    C = poset_category(names, lambda i, j: i <= j)
    T = _thin_monoidal(C, lambda a, b: max(0, a + b - n), n, f"Łukasiewicz ⊗ ({n})")
    P = _thin_monoidal(C, lambda a, b: min(n, a + b), 0, f"Łukasiewicz ⅋ ({n})")
    N = n + 1
    dl, dr = {}, {}
    for a, b, c in itertools.product(range(N), repeat=3):
        dl[a, b, c] = _thin_mor(C, T.ob(a, P.ob(b, c)), P.ob(T.ob(a, b), c))
        dr[a, b, c] = _thin_mor(C, T.ob(P.ob(a, b), c), P.ob(a, T.ob(b, c)))
    neg = {a: n - a for a in range(N)}
    cup = {a: _thin_mor(C, n, P.ob(n - a, a)) for a in range(N)}
    cap = {a: _thin_mor(C, T.ob(a, n - a), 0) for a in range(N)}
    S = StarAutonomousStructure(T, P, neg, cup, cap, dl, dr, f"lukasiewicz_chain({n})")
    ex = Example(f"lukasiewicz_chain({n})", C, T, star=S)
    ex.notes.append("no trace: A⊗X <= B⊗X does not force A <= B")
    return ex


def z2_graded() -> Example:
    """Objects ``Z_2`` with ``Hom(a, a) = {1, s}`` and ``θ_a = s^a``.

    Symmetric (``σ = 1``) but with a nontrivial twist, so twisting the
    derived trace gives a second, different trace.
    """
    names = ["0", "1"]
    mors = [("1_0", "0", "0"), ("s_0", "0", "0"), ("1_1", "1", "1"), ("s_1", "1", "1")]
    comp = {}
    for a in (0, 1):
        for x, y in itertools.product((0, 1), repeat=2):
            comp[mors[2 * a + x][0], mors[2 * a + y][0]] = mors[2 * a + (x ^ y)][0]
    C = FiniteCategory.build(names, [(m, s, d) for m, s, d in mors], comp)

    def mor_fn(f, g):
        a, x = divmod(f, 2)
        b, y = divmod(g, 2)
        return 2 * (a ^ b) + (x ^ y)

    tensor = tensor_from_functions(C, lambda a, b: a ^ b, mor_fn)
    M = strict_structure(C, tensor, 0, name="Z_2-graded")
    M = M.with_(twist={0: 0, 1: 3})
    D = DualityStructure(M, {0: 0, 1: 1}, {0: 0, 1: 0}, {0: 0, 1: 0})
    ex = Example("z2_graded", C, M, duality=D)
    # balanced yank wants Tr(σ_{X,X}) = θ_X, so the twisted trace is the one to keep
    ex.trace = twisted_trace(derive_trace(D))
    ex.notes.append("with θ = 1 instead, derive_trace itself is the balanced trace")
    return ex


def corpus() -> list[Example]:
    """The fixed corpus used by the property checks."""
    return [discrete_abelian(2), discrete_abelian(3), z2_group(), idempotent_monoid(),
            left_zero_monoid(), karoubi_of(idempotent_monoid()), walking_arrow(),
            lukasiewicz_chain(3), z2_graded()]


BUILDERS = {
    "discrete_abelian": discrete_abelian,
    "one_object_monoid": one_object_monoid,
    "left_zero": left_zero_monoid,
    "idempotent_monoid": idempotent_monoid,
    "z2_group": z2_group,
    "karoubi_of": karoubi_of,
    "lukasiewicz_chain": lukasiewicz_chain,
    "walking_arrow": walking_arrow,
    "poset2_meet": poset2_meet,
    "z2_graded": z2_graded,
}
