"""Profunctors between finite categories and their coend calculus.

A profunctor ``P`` from ``C`` to ``D`` stores finite element sets ``P(c, d)``
with a right action of ``C`` (``ract(f, x)`` for ``f: c' -> c``, landing in
``P(c', d)``) and a left action of ``D`` (``lact(g, x)`` for ``g: d -> d'``,
landing in ``P(c, d')``).  ``Hom_C`` is the profunctor with
``ract = precompose`` and ``lact = postcompose``.

``compose_profunctors(G, F)`` realises ``∫^b G(c, b) × F(b, d)``, so
``G.cod`` must be ``F.dom``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Mapping

import numpy as np

from .fincat import (
    Elem,
    FiniteCategory,
    Functor,
    Mor,
    Ob,
    StructuralError,
    ValidationReport,
    identity_functor,
    pair_ob,
    product_category,
    split_mor,
)
from .unionfind import UnionFind


class CoherenceError(AssertionError):
    """An induced action or cell was not constant on a coend class."""


@dataclass(eq=False)
class CoendPresentation:
    """Generators ``(b, x, y)`` of a composite and their quotient classes."""

    generators: list[tuple[int, int, int]]
    index: dict[tuple[int, int], int]
    cls: list[int]  # generator -> element id of the composite
    classes: dict[int, list[int]]  # element id -> generator indices, least first

    def element_of(self, x: int, y: int) -> int:
        return self.cls[self.index[x, y]]

    def representative(self, elem: int) -> tuple[int, int, int]:
        return self.generators[self.classes[elem][0]]


@dataclass(eq=False)
class Profunctor:
    dom: FiniteCategory
    cod: FiniteCategory
    loc: tuple[tuple[int, int], ...]
    labels: tuple[Hashable, ...]
    ract: np.ndarray  # (dom.n_mor, n); -1 where the morphism does not act
    lact: np.ndarray  # (cod.n_mor, n)
    name: str = ""
    coend: CoendPresentation | None = None
    factors: tuple["Profunctor", "Profunctor"] | None = None
    _index: dict = field(default_factory=dict, repr=False)
    _fibers: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i, (c, d) in enumerate(self.loc):
            self._index[c, d, self.labels[i]] = i
            self._fibers.setdefault((c, d), []).append(i)

    @classmethod
    def from_fibers(
        cls,
        dom: FiniteCategory,
        cod: FiniteCategory,
        fibers: Mapping[tuple[int, int], list[Hashable]],
        ract_fn: Callable[[int, int, int, Hashable], Hashable],
        lact_fn: Callable[[int, int, int, Hashable], Hashable],
        name: str = "",
    ) -> "Profunctor":
        """Assemble from labelled fibers.

        ``ract_fn(f, c, d, label)`` returns the label of ``f`` acting on the
        element ``label`` of ``P(c, d)`` (with ``c == dst(f)``);
        ``lact_fn(g, c, d, label)`` likewise with ``d == src(g)``.
        """
        loc, labels = [], []
        for c in range(dom.n_obj):
            for d in range(cod.n_obj):
                for lab in fibers.get((c, d), ()):
                    loc.append((c, d))
                    labels.append(lab)
        index = {(c, d, lab): i for i, ((c, d), lab) in enumerate(zip(loc, labels))}
        if len(index) != len(labels):
            raise StructuralError("duplicate element label inside one fiber")
        n = len(labels)
        ract = np.full((dom.n_mor, n), -1, dtype=np.int64)
        lact = np.full((cod.n_mor, n), -1, dtype=np.int64)
        for i, ((c, d), lab) in enumerate(zip(loc, labels)):
            for f in _into(dom, c):
                key = (dom.src[f], d, ract_fn(f, c, d, lab))
                if key not in index:
                    raise StructuralError(f"right action of {dom.morphisms[f]} leaves the element sets")
                ract[f, i] = index[key]
            for g in _outof(cod, d):
                key = (c, cod.dst[g], lact_fn(g, c, d, lab))
                if key not in index:
                    raise StructuralError(f"left action of {cod.morphisms[g]} leaves the element sets")
                lact[g, i] = index[key]
        return cls(dom, cod, tuple(loc), tuple(labels), ract, lact, name)

    @property
    def n(self) -> int:
        return len(self.labels)

    def fiber(self, c: int, d: int) -> list[int]:
        return self._fibers.get((c, d), [])

    def element(self, c: int, d: int, label: Hashable) -> int:
        return self._index[c, d, label]

    def sizes(self) -> np.ndarray:
        out = np.zeros((self.dom.n_obj, self.cod.n_obj), dtype=np.int64)
        for c, d in self.loc:
            out[c, d] += 1
        return out

    def act_right(self, f: int, e: int) -> int:
        r = int(self.ract[f, e])
        if r < 0:
            raise StructuralError("right action on an element of the wrong fiber")
        return r

    def act_left(self, g: int, e: int) -> int:
        r = int(self.lact[g, e])
        if r < 0:
            raise StructuralError("left action on an element of the wrong fiber")
        return r

    def __repr__(self):
        return f"Profunctor({self.name or '?'}: {self.n} elements)"


def _into(C: FiniteCategory, c: int) -> list[int]:
    return [f for a in range(C.n_obj) for f in C.hom(a, c)]


def _outof(C: FiniteCategory, d: int) -> list[int]:
    return [g for b in range(C.n_obj) for g in C.hom(d, b)]


def check_profunctor(P: Profunctor) -> ValidationReport:
    """Functoriality of both actions and their commutation."""
    rep = ValidationReport("profunctor")
    rep.checked += ["ract identity", "lact identity", "ract composition",
                    "lact composition", "actions commute"]
    C, D = P.dom, P.cod
    for e, (c, d) in enumerate(P.loc):
        if P.ract[C.identity[c], e] != e:
            rep.add("ract identity", (Elem(e),))
        if P.lact[D.identity[d], e] != e:
            rep.add("lact identity", (Elem(e),))
        for f2 in _into(C, c):
            x = P.ract[f2, e]
            for f1 in _into(C, C.src[f2]):
                if P.ract[C.compose(f1, f2), e] != P.ract[f1, x]:
                    rep.add("ract composition", (Mor(f1), Mor(f2), Elem(e)))
        for g1 in _outof(D, d):
            x = P.lact[g1, e]
            for g2 in _outof(D, D.dst[g1]):
                if P.lact[D.compose(g1, g2), e] != P.lact[g2, x]:
                    rep.add("lact composition", (Mor(g1), Mor(g2), Elem(e)))
        for f in _into(C, c):
            for g in _outof(D, d):
                if P.lact[g, P.ract[f, e]] != P.ract[f, P.lact[g, e]]:
                    rep.add("actions commute", (Mor(f), Mor(g), Elem(e)))
    return rep


# ------------------------------------------------------------- basic shapes


def hom_profunctor(C: FiniteCategory) -> Profunctor:
    memo = C.__dict__.setdefault("_hom_profunctor", [])
    if memo:
        return memo[0]
    fibers = {(a, b): list(C.hom(a, b)) for a in range(C.n_obj) for b in range(C.n_obj)}
    P = Profunctor.from_fibers(
        C, C, fibers,
        lambda f, c, d, h: int(C.table[f, h]),
        lambda g, c, d, h: int(C.table[h, g]),
        name="Hom",
    )
    memo.append(P)
    return P


def embed_functor(F: Functor, variance: str = "covariant") -> Profunctor:
    """``covariant``: ``F^*`` from ``F.target`` to ``F.source`` with
    ``F^*(d, c) = Hom(d, F c)``.  ``contravariant``: ``F_*`` from
    ``F.source`` to ``F.target`` with ``F_*(c, d) = Hom(F c, d)``."""
    C, D = F.source, F.target
    t = D.table
    if variance == "covariant":
        fibers = {(d, c): list(D.hom(d, F.ob(c))) for d in range(D.n_obj) for c in range(C.n_obj)}
        return Profunctor.from_fibers(
            D, C, fibers,
            lambda f, d, c, h: int(t[f, h]),
            lambda g, d, c, h: int(t[h, F(g)]),
            name="F^*",
        )
    if variance == "contravariant":
        fibers = {(c, d): list(D.hom(F.ob(c), d)) for c in range(C.n_obj) for d in range(D.n_obj)}
        return Profunctor.from_fibers(
            C, D, fibers,
            lambda f, c, d, h: int(t[F(f), h]),
            lambda g, c, d, h: int(t[h, g]),
            name="F_*",
        )
    raise ValueError(f"unknown variance {variance!r}")


def empty_profunctor(C: FiniteCategory, D: FiniteCategory) -> Profunctor:
    return Profunctor.from_fibers(C, D, {}, None, None, name="0")


def restrict(P: Profunctor, dom_functor: Functor | None = None,
             cod_functor: Functor | None = None) -> Profunctor:
    """Pull ``P`` back along functors into its domain and codomain."""
    F = dom_functor or identity_functor(P.dom)
    G = cod_functor or identity_functor(P.cod)
    if not F.target is P.dom and not F.target.same_as(P.dom):
        raise StructuralError("restriction functor does not land in the domain")
    if not G.target is P.cod and not G.target.same_as(P.cod):
        raise StructuralError("restriction functor does not land in the codomain")
    fibers = {
        (c, d): [P.labels[e] for e in P.fiber(F.ob(c), G.ob(d))]
        for c in range(F.source.n_obj) for d in range(G.source.n_obj)
    }

    def ract(f, c, d, lab):
        return P.labels[P.ract[F(f), P.element(F.ob(c), G.ob(d), lab)]]

    def lact(g, c, d, lab):
        return P.labels[P.lact[G(g), P.element(F.ob(c), G.ob(d), lab)]]

    return Profunctor.from_fibers(F.source, G.source, fibers, ract, lact, name=f"{P.name}|")


def external_product(P: Profunctor, Q: Profunctor) -> Profunctor:
    """``(P ⊠ Q)((c, c'), (d, d')) = P(c, d) × Q(c', d')``."""
    key = ("ext", id(Q))
    if key in P._cache:
        return P._cache[key][1]
    dom = product_category(P.dom, Q.dom)
    cod = product_category(P.cod, Q.cod)
    fibers: dict[tuple[int, int], list] = {}
    for e1, (c, d) in enumerate(P.loc):
        for e2, (c2, d2) in enumerate(Q.loc):
            fibers.setdefault((pair_ob(Q.dom, c, c2), pair_ob(Q.cod, d, d2)), []).append((e1, e2))

    def ract(f, c, d, lab):
        f1, f2 = split_mor(Q.dom, f)
        return int(P.ract[f1, lab[0]]), int(Q.ract[f2, lab[1]])

    def lact(g, c, d, lab):
        g1, g2 = split_mor(Q.cod, g)
        return int(P.lact[g1, lab[0]]), int(Q.lact[g2, lab[1]])

    R = Profunctor.from_fibers(dom, cod, fibers, ract, lact, name=f"({P.name}⊠{Q.name})")
    P._cache[key] = (Q, R)
    return R


# ------------------------------------------------------------------- coends


def _same_category(A: FiniteCategory, B: FiniteCategory) -> bool:
    return A is B or A.same_as(B)


def compose_profunctors(G: Profunctor, F: Profunctor) -> tuple[Profunctor, CoendPresentation]:
    """``(G ◇ F)(c, d) = ∫^b G(c, b) × F(b, d)``, quotiented by union-find.

    Moves: ``(β·x, y) ~ (x, y·β)`` for every ``β: b -> b'`` with ``x`` in
    ``G(c, b)`` and ``y`` in ``F(b', d)``.  Induced actions are checked to be
    constant on classes.  Results are memoised per operand pair.
    """
    key = ("compose", id(F))
    if key in G._cache:
        R = G._cache[key][1]
        return R, R.coend
    if not _same_category(G.cod, F.dom):
        raise StructuralError("compose_profunctors: G.cod must equal F.dom")
    B = G.cod
    gens: list[tuple[int, int, int]] = []
    index: dict[tuple[int, int], int] = {}
    by_bridge_F: dict[int, list[int]] = {}
    for y, (b, d) in enumerate(F.loc):
        by_bridge_F.setdefault(b, []).append(y)
    for x, (c, b) in enumerate(G.loc):
        for y in by_bridge_F.get(b, ()):
            index[x, y] = len(gens)
            gens.append((b, x, y))
    uf = UnionFind(len(gens))
    for x, (c, b) in enumerate(G.loc):
        for beta in _outof(B, b):
            bx = int(G.lact[beta, x])
            for y2 in by_bridge_F.get(B.dst[beta], ()):
                uf.union(index[bx, y2], index[x, int(F.ract[beta, y2])])
    raw = uf.classes()
    # classes ordered by fiber, then by least generator
    def fiber_of(g):
        _, x, y = gens[g]
        return G.loc[x][0], F.loc[y][1]

    roots = sorted(raw, key=lambda r: (fiber_of(r), r))
    cls = [0] * len(gens)
    classes: dict[int, list[int]] = {}
    for eid, r in enumerate(roots):
        classes[eid] = raw[r]
        for g in raw[r]:
            cls[g] = eid
    pres = CoendPresentation(gens, index, cls, classes)
    n = len(roots)
    loc = tuple(fiber_of(r) for r in roots)
    labels = tuple((gens[r][1], gens[r][2]) for r in roots)
    ract = np.full((G.dom.n_mor, n), -1, dtype=np.int64)
    lact = np.full((F.cod.n_mor, n), -1, dtype=np.int64)
    for eid, members in classes.items():
        c, d = loc[eid]
        for f in _into(G.dom, c):
            images = {cls[index[int(G.ract[f, gens[g][1]]), gens[g][2]]] for g in members}
            if len(images) != 1:
                raise CoherenceError("right action is not well defined on a coend class")
            ract[f, eid] = images.pop()
        for g_ in _outof(F.cod, d):
            images = {cls[index[gens[g][1], int(F.lact[g_, gens[g][2]])]] for g in members}
            if len(images) != 1:
                raise CoherenceError("left action is not well defined on a coend class")
            lact[g_, eid] = images.pop()
    R = Profunctor(G.dom, F.cod, loc, labels, ract, lact,
                   name=f"({G.name}◇{F.name})", coend=pres, factors=(G, F))
    G._cache[key] = (F, R)
    return R, pres


def compose(G: Profunctor, F: Profunctor) -> Profunctor:
    return compose_profunctors(G, F)[0]


# ---------------------------------------------------------------- 2-cells


@dataclass(eq=False)
class TwoCell:
    source: Profunctor
    target: Profunctor
    components: np.ndarray  # source element -> target element
    name: str = ""

    def __call__(self, e: int) -> int:
        return int(self.components[e])

    def equals(self, other: "TwoCell") -> bool:
        return (self.source is other.source and self.target is other.target
                and np.array_equal(self.components, other.components))

    def is_invertible(self) -> bool:
        comp = self.components
        return (self.source.n == self.target.n and len(set(comp.tolist())) == len(comp))

    def bijectivity_failures(self) -> list[tuple[int, int, str]]:
        """Fibers ``(c, d)`` where the component is not a bijection."""
        out = []
        keys = set(self.source._fibers) | set(self.target._fibers)
        for c, d in sorted(keys):
            image = [int(self.components[e]) for e in self.source.fiber(c, d)]
            tgt = self.target.fiber(c, d)
            if len(set(image)) != len(image):
                out.append((c, d, "not injective"))
            elif len(image) != len(tgt):
                out.append((c, d, "not surjective"))
        return out


def _check_cell_shape(t: TwoCell) -> None:
    S, T = t.source, t.target
    if not (_same_category(S.dom, T.dom) and _same_category(S.cod, T.cod)):
        raise StructuralError("2-cell between profunctors of different type")
    if len(t.components) != S.n:
        raise StructuralError("2-cell component is not total")
    for e, (c, d) in enumerate(S.loc):
        te = int(t.components[e])
        if not 0 <= te < T.n or T.loc[te] != (c, d):
            raise StructuralError(f"2-cell component at element {e} leaves its fiber")


def check_two_cell(t: TwoCell) -> ValidationReport:
    _check_cell_shape(t)
    rep = ValidationReport("two-cell naturality")
    rep.checked += ["naturality (right action)", "naturality (left action)"]
    S, T, comp = t.source, t.target, t.components
    for e, (c, d) in enumerate(S.loc):
        te = comp[e]
        for f in _into(S.dom, c):
            if comp[S.ract[f, e]] != T.ract[f, te]:
                rep.add("naturality (right action)", (Mor(f), Elem(e)))
        for g in _outof(S.cod, d):
            if comp[S.lact[g, e]] != T.lact[g, te]:
                rep.add("naturality (left action)", (Mor(g), Elem(e)))
    return rep


def identity_cell(P: Profunctor) -> TwoCell:
    return TwoCell(P, P, np.arange(P.n, dtype=np.int64), "id")


def vcompose(*cells: TwoCell) -> TwoCell:
    """Vertical composite, applied left to right."""
    out = cells[0]
    for t in cells[1:]:
        if t.source is not out.target:
            raise StructuralError("vertical composite of non-matching 2-cells")
        out = TwoCell(out.source, t.target, t.components[out.components], f"{out.name};{t.name}")
    return out


def invert(t: TwoCell) -> TwoCell:
    if not t.is_invertible():
        raise StructuralError("2-cell is not invertible")
    inv = np.empty_like(t.components)
    inv[t.components] = np.arange(len(t.components))
    return TwoCell(t.target, t.source, inv, f"{t.name}^-1")


def induced_cell(source: Profunctor, target: Profunctor,
                 gen_map: Callable[[int, int, int], int], name: str = "",
                 strict: bool = True) -> tuple[TwoCell, list[tuple[int, int]]]:
    """Cell out of a composite defined on coend generators.

    ``gen_map(b, x, y)`` returns a target element.  Returns the cell (valued
    at the least generator of each class) and the list of generator pairs
    where the value differs inside one class.  With ``strict`` a mismatch
    raises CoherenceError.
    """
    pres = source.coend
    comp = np.empty(source.n, dtype=np.int64)
    bad = []
    for eid, members in pres.classes.items():
        first = members[0]
        v = gen_map(*pres.generators[first])
        comp[eid] = v
        for g in members[1:]:
            if gen_map(*pres.generators[g]) != v:
                bad.append((first, g))
    if bad and strict:
        raise CoherenceError(f"{name}: not constant on a coend class")
    return TwoCell(source, target, comp, name), bad


def whisker_left(G: Profunctor, t: TwoCell) -> TwoCell:
    """``G ◇ t : G ◇ S ⇒ G ◇ T``."""
    src, _ = compose_profunctors(G, t.source)
    tgt, tp = compose_profunctors(G, t.target)
    cell, _ = induced_cell(src, tgt, lambda b, x, y: tp.element_of(x, int(t.components[y])),
                           f"{G.name}◁{t.name}")
    return cell


def whisker_right(t: TwoCell, F: Profunctor) -> TwoCell:
    """``t ◇ F : S ◇ F ⇒ T ◇ F``."""
    src, _ = compose_profunctors(t.source, F)
    tgt, tp = compose_profunctors(t.target, F)
    cell, _ = induced_cell(src, tgt, lambda b, x, y: tp.element_of(int(t.components[x]), y),
                           f"{t.name}▷{F.name}")
    return cell


def structural_iso(kind: str, *operands: Profunctor) -> TwoCell:
    """Unitors ``Hom ◇ P ⇒ P`` / ``P ◇ Hom ⇒ P`` and the associator
    ``(H ◇ G) ◇ F ⇒ H ◇ (G ◇ F)``; invertibility is verified."""
    if kind == "left_unit":
        (P,) = operands
        H = hom_profunctor(P.dom)
        src, _ = compose_profunctors(H, P)
        cell, _ = induced_cell(src, P, lambda b, h, y: int(P.ract[H.labels[h], y]), "λ")
    elif kind == "right_unit":
        (P,) = operands
        H = hom_profunctor(P.cod)
        src, _ = compose_profunctors(P, H)
        cell, _ = induced_cell(src, P, lambda b, x, h: int(P.lact[H.labels[h], x]), "ρ")
    elif kind == "assoc":
        H, G, F = operands
        HG, hg = compose_profunctors(H, G)
        src, _ = compose_profunctors(HG, F)
        GF, gf = compose_profunctors(G, F)
        tgt, tp = compose_profunctors(H, GF)
        comp = np.empty(src.n, dtype=np.int64)
        for eid, members in src.coend.classes.items():
            values = set()
            for g in members:
                _, k, y = src.coend.generators[g]
                for g2 in hg.classes[k]:
                    _, x, z = hg.generators[g2]
                    values.add(tp.element_of(x, gf.element_of(z, y)))
            if len(values) != 1:
                raise CoherenceError("associator is not well defined")
            comp[eid] = values.pop()
        cell = TwoCell(src, tgt, comp, "α")
    else:
        raise ValueError(f"unknown structural iso {kind!r}")
    if not cell.is_invertible():
        raise CoherenceError(f"structural iso {kind} is not invertible")
    return cell


def corrupt_swap(t: TwoCell, e1: int, e2: int) -> TwoCell:
    """Copy of ``t`` with the images of two source elements exchanged."""
    comp = t.components.copy()
    comp[e1], comp[e2] = comp[e2], comp[e1]
    return TwoCell(t.source, t.target, comp, f"{t.name}~")


# ------------------------------------------------------- search for 2-cells


def natural_maps(S: Profunctor, T: Profunctor, limit: int | None = None) -> Iterator[np.ndarray]:
    """All natural transformations ``S ⇒ T``, by backtracking with propagation."""
    n = S.n
    edges: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for e, (c, d) in enumerate(S.loc):
        for f in _into(S.dom, c):
            edges[e].append((0, f, int(S.ract[f, e])))
        for g in _outof(S.cod, d):
            edges[e].append((1, g, int(S.lact[g, e])))
    comp = np.full(n, -1, dtype=np.int64)
    count = 0

    def assign(e, v):
        stack, done = [(e, v)], []
        while stack:
            a, va = stack.pop()
            if comp[a] >= 0:
                if comp[a] != va:
                    for x in done:
                        comp[x] = -1
                    return None
                continue
            comp[a] = va
            done.append(a)
            for kind, m, a2 in edges[a]:
                v2 = int(T.ract[m, va]) if kind == 0 else int(T.lact[m, va])
                stack.append((a2, v2))
        return done

    def rec(start):
        nonlocal count
        e = start
        while e < n and comp[e] >= 0:
            e += 1
        if e == n:
            count += 1
            yield comp.copy()
            return
        for v in T.fiber(*S.loc[e]):
            done = assign(e, v)
            if done is None:
                continue
            yield from rec(e + 1)
            for x in done:
                comp[x] = -1
            if limit is not None and count >= limit:
                return

    yield from rec(0)


# ----------------------------------------------------------- adjunctions


@dataclass(eq=False)
class AdjunctionWitness:
    left: Profunctor
    right: Profunctor
    unit: TwoCell  # Hom_{left.cod} ⇒ right ◇ left
    counit: TwoCell  # left ◇ right ⇒ Hom_{left.dom}


def _triangles(L: Profunctor, R: Profunctor, unit: TwoCell, counit: TwoCell) -> ValidationReport:
    rep = ValidationReport("adjunction triangles")
    rep.checked += ["triangle (left)", "triangle (right)"]
    HX, HY = hom_profunctor(L.dom), hom_profunctor(L.cod)
    try:
        tri_L = vcompose(
            invert(structural_iso("right_unit", L)),
            whisker_left(L, unit),
            invert(structural_iso("assoc", L, R, L)),
            whisker_right(counit, L),
            structural_iso("left_unit", L),
        )
        tri_R = vcompose(
            invert(structural_iso("left_unit", R)),
            whisker_right(unit, R),
            structural_iso("assoc", R, L, R),
            whisker_left(R, counit),
            structural_iso("right_unit", R),
        )
    except CoherenceError as exc:
        rep.add("unit/counit well-defined", (), str(exc))
        return rep
    for e in np.nonzero(tri_L.components != np.arange(L.n))[0][:1]:
        rep.add("triangle (left)", (Elem(int(e)),))
    for e in np.nonzero(tri_R.components != np.arange(R.n))[0][:1]:
        rep.add("triangle (right)", (Elem(int(e)),))
    del HX, HY
    return rep


def check_adjunction(L: Profunctor, R: Profunctor, mode: str = "search",
                     unit: TwoCell | None = None, counit: TwoCell | None = None,
                     limit: int = 10**5):
    """``verify``: report on the given unit/counit.  ``search``: enumerate
    natural units and counits, returning an AdjunctionWitness or a failing
    ValidationReport."""
    if not (_same_category(L.dom, R.cod) and _same_category(L.cod, R.dom)):
        raise StructuralError("adjunction candidates have mismatched types")
    RL = compose(R, L)
    LR = compose(L, R)
    HY, HX = hom_profunctor(L.cod), hom_profunctor(L.dom)
    if mode == "verify":
        rep = ValidationReport("adjunction")
        for name, t in (("unit", unit), ("counit", counit)):
            r = check_two_cell(t)
            rep.extend(r, prefix=f"{name} ")
        if rep.passed:
            rep.extend(_triangles(L, R, unit, counit))
        return rep
    if mode != "search":
        raise ValueError(f"unknown mode {mode!r}")
    rep = ValidationReport("adjunction search")
    rep.checked.append("exists unit/counit")
    counits = list(natural_maps(LR, HX, limit=limit))
    tried = 0
    for u in natural_maps(HY, RL, limit=limit):
        ut = TwoCell(HY, RL, u, "η")
        for c in counits:
            tried += 1
            if tried > limit:
                rep.truncated = True
                rep.add("exists unit/counit", (), "search budget exhausted")
                return rep
            ct = TwoCell(LR, HX, c, "ε")
            if _triangles(L, R, ut, ct).passed:
                return AdjunctionWitness(L, R, ut, ct)
    detail = "no natural unit" if not any(True for _ in natural_maps(HY, RL, limit=1)) else (
        "no natural counit" if not counits else "no pair satisfies the triangles")
    rep.add("exists unit/counit", (), detail)
    return rep


def _presheaf_maps(L: Profunctor, y: int, x: int) -> list[tuple[int, ...]]:
    """Natural maps ``L(-, y) ⇒ Hom_X(-, x)`` as tuples over ``column(y)``."""
    X = L.dom
    column = [e for e, (c, d) in enumerate(L.loc) if d == y]
    pos = {e: i for i, e in enumerate(column)}
    vals = [-1] * len(column)
    out = []

    def assign(i, v):
        stack, done = [(i, v)], []
        while stack:
            a, va = stack.pop()
            if vals[a] >= 0:
                if vals[a] != va:
                    for z in done:
                        vals[z] = -1
                    return None
                continue
            vals[a] = va
            done.append(a)
            e = column[a]
            for f in _into(X, L.loc[e][0]):
                stack.append((pos[int(L.ract[f, e])], int(X.table[f, va])))
        return done

    def rec(i):
        while i < len(column) and vals[i] >= 0:
            i += 1
        if i == len(column):
            out.append(tuple(vals))
            return
        for v in X.hom(L.loc[column[i]][0], x):
            done = assign(i, v)
            if done is None:
                continue
            rec(i + 1)
            for z in done:
                vals[z] = -1

    rec(0)
    return out


def right_adjoint_candidate(L: Profunctor) -> Profunctor:
    """``R(y, x) = Nat(L(-, y), Hom(-, x))``, the only possible right adjoint."""
    X, Y = L.dom, L.cod
    columns = {y: [e for e, (c, d) in enumerate(L.loc) if d == y] for y in range(Y.n_obj)}
    fibers = {(y, x): _presheaf_maps(L, y, x) for y in range(Y.n_obj) for x in range(X.n_obj)}

    def ract(g, y, x, tau):  # g: y' -> y
        y2 = Y.src[g]
        col = columns[y]
        pos = {e: i for i, e in enumerate(col)}
        return tuple(tau[pos[int(L.lact[g, e])]] for e in columns[y2])

    def lact(h, y, x, tau):
        return tuple(int(X.table[v, h]) for v in tau)

    return Profunctor.from_fibers(Y, X, fibers, ract, lact, name="R")


def find_right_adjoint(L: Profunctor, limit: int = 10**5):
    """AdjunctionWitness with the canonical candidate, or a failing report."""
    return check_adjunction(L, right_adjoint_candidate(L), "search", limit=limit)


# -------------------------------------------------------- representability


@dataclass(eq=False)
class Representation:
    functor: Functor  # F: P.cod -> P.dom with P ≅ F^*
    universal: tuple[int, ...]  # universal element of P(F y, y) per y
    iso: TwoCell  # F^* ⇒ P


@dataclass
class NotRepresentable:
    obj: int
    reason: str
    witness: tuple = ()

    def __bool__(self):
        return False


def find_representation(P: Profunctor):
    """Search ``F`` with ``P(x, y) ≅ Hom(x, F y)`` naturally."""
    X, Y = P.dom, P.cod
    universal = []
    targets = []
    for y in range(Y.n_obj):
        found = None
        first_failure = None
        for x in range(X.n_obj):
            for u in P.fiber(x, y):
                ok = True
                for x2 in range(X.n_obj):
                    homs = X.hom(x2, x)
                    image = {int(P.ract[h, u]) for h in homs}
                    if len(image) != len(homs) or len(homs) != len(P.fiber(x2, y)):
                        ok = False
                        if first_failure is None:
                            first_failure = (Ob(x), Elem(u), Ob(x2), len(homs), len(P.fiber(x2, y)))
                        break
                if ok:
                    found = (x, u)
                    break
            if found:
                break
        if found is None:
            if first_failure is None:
                return NotRepresentable(y, "no candidate element", (Ob(y),))
            x, u, x2, nh, npx = first_failure
            return NotRepresentable(
                y, f"|Hom({X.objects[x2]},{X.objects[x]})| = {nh} != {npx} = "
                f"|P({X.objects[x2]},{Y.objects[y]})|",
                (Ob(y), x, u, x2, nh, npx))
        targets.append(found[0])
        universal.append(found[1])
    mor_map = []
    for g in range(Y.n_mor):
        y, y2 = Y.src[g], Y.dst[g]
        want = int(P.lact[g, universal[y]])
        hs = [h for h in X.hom(targets[y], targets[y2]) if P.ract[h, universal[y2]] == want]
        mor_map.append(hs[0])
    F = Functor(Y, X, tuple(targets), tuple(mor_map))
    Fstar = embed_functor(F, "covariant")
    comp = np.array(
        [int(P.ract[Fstar.labels[e], universal[Fstar.loc[e][1]]]) for e in range(Fstar.n)],
        dtype=np.int64)
    iso = TwoCell(Fstar, P, comp, "rep")
    return Representation(F, tuple(universal), iso)


def terminal_category() -> FiniteCategory:
    return FiniteCategory.from_arrays(["*"], ["id_*"], [0], [0], [0], [[0]])


def module_profunctor(C: FiniteCategory, obj: int, elements: list[int]) -> Profunctor:
    """Sub-profunctor of ``Hom(-, obj)`` on a right ideal, as ``C ⇸ 1``.

    ``elements`` must be closed under precomposition; the {e}-module of a
    one-object monoid is ``module_profunctor(C, 0, [e])``.
    """
    one = terminal_category()
    closed = set(elements)
    for e in elements:
        for f in _into(C, C.src[e]):
            if int(C.table[f, e]) not in closed:
                raise StructuralError("element set is not closed under the right action")
    fibers = {(c, 0): [e for e in elements if C.src[e] == c] for c in range(C.n_obj)}
    return Profunctor.from_fibers(
        C, one, fibers,
        lambda f, c, d, e: int(C.table[f, e]),
        lambda g, c, d, e: e,
        name="M",
    )


def all_pairs(P: Profunctor):
    return itertools.product(range(P.dom.n_obj), range(P.cod.n_obj))
