"""Left cosets, double cosets, the X_{H,K} action and the comma category."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .action import GSet, action_groupoid
from .groupoid import (FiniteGroupoid, NotWideError, Subgroupoid, Violation,
                       connected_components, coset_classes, product,
                       subgroupoid_components)
from .unionfind import UnionFind


def _require_wide(*subs: Subgroupoid):
    for H in subs:
        if not H.wide:
            raise NotWideError("double cosets are only defined here for wide subgroupoids")


@dataclass(frozen=True, eq=False)
class LeftCosetGSet(GSet):
    """``G/H`` as a G-set.  ``classes[x][c]`` lists the morphisms in coset
    ``c`` of ``Mor_G(-, x)``; ``coset_of[g] = (cod g, c)``."""

    classes: tuple[tuple[tuple[int, ...], ...], ...] = ()
    coset_of: tuple[tuple[int, int], ...] = ()


def left_cosets(G: FiniteGroupoid, H: Subgroupoid) -> LeftCosetGSet:
    _require_wide(H)
    classes = tuple(tuple(coset_classes(G, H, x)) for x in G.objects)
    coset_of = [None] * G.morphism_count
    for x, cls in enumerate(classes):
        for c, members in enumerate(cls):
            for a in members:
                coset_of[a] = (x, c)
    action = []
    for g in G.morphisms:
        row = []
        for members in classes[G.dom[g]]:
            images = {coset_of[G.compose(g, a)][1] for a in members}
            if len(images) != 1:
                raise AssertionError(f"coset action of {g} is not well defined")
            row.append(images.pop())
        action.append(tuple(row))
    return LeftCosetGSet(G, tuple(len(c) for c in classes), tuple(action),
                         classes, tuple(coset_of))


@dataclass(frozen=True, eq=False)
class DoubleCosetPartition:
    base: FiniteGroupoid
    h: Subgroupoid
    k: Subgroupoid
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


def double_cosets(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid) -> DoubleCosetPartition:
    """Partition of ``G_1`` into the classes ``HgK``.

    Closing under left multiplication by H and right multiplication by K
    separately reaches every ``h g k``; blocks are ordered by their lowest
    member, which is also the representative.
    """
    _require_wide(H, K)
    uf = UnionFind(G.morphism_count)
    for g in G.morphisms:
        for h in H.outgoing[G.cod[g]]:
            uf.union(g, G.compose(h, g))
        for k in K.incoming[G.dom[g]]:
            uf.union(g, G.compose(g, k))
    blocks = tuple(tuple(b) for b in uf.classes())
    block_of = [0] * G.morphism_count
    for i, b in enumerate(blocks):
        for g in b:
            block_of[g] = i
    return DoubleCosetPartition(G, H, K, blocks, tuple(block_of))


def _component_of(H: Subgroupoid) -> dict[int, list[int]]:
    out = {}
    for comp in subgroupoid_components(H):
        for x in comp:
            out[x] = comp
    return out


def double_coset_size_formula(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid, g: int) -> int:
    """``delta_g * |H_{cod g}| * |K_{dom g}|`` with ``delta_g`` the product of
    the object counts of the H-component of ``cod g`` and the K-component
    of ``dom g``.

    This counts the composable pairs ``(h, k)``, so it equals ``|HgK|`` only
    when ``h g k`` is injective in ``(h, k)``; compare
    :func:`double_coset_size_corrected`.
    """
    _require_wide(H, K)
    lam = _component_of(H)[G.cod[g]]
    mu = _component_of(K)[G.dom[g]]
    return len(lam) * len(mu) * H.isotropy_order(G.cod[g]) * K.isotropy_order(G.dom[g])


def overlap_order(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid, g: int) -> int:
    """``|H_{cod g}  ∩  g K_{dom g} g^-1|``."""
    y, x = G.cod[g], G.dom[g]
    gi = G.inverse[g]
    conj = {G.compose(g, G.compose(k, gi)) for k in K.outgoing[x] if G.cod[k] == x}
    return sum(1 for h in H.outgoing[y] if G.cod[h] == y and h in conj)


def double_coset_size_corrected(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid, g: int) -> int:
    """The pair count divided by the order of the intersection subgroup,
    which is the true size of ``HgK``."""
    count = double_coset_size_formula(G, H, K, g)
    ov = overlap_order(G, H, K, g)
    q, r = divmod(count, ov)
    if r:
        raise AssertionError("pair count not divisible by the overlap order")
    return q


class SizeMismatch(NamedTuple):
    morphism: int
    formula: int
    block_size: int


def size_formula_check(G, H, K, corrected: bool = False) -> list[SizeMismatch]:
    part = double_cosets(G, H, K)
    f = double_coset_size_corrected if corrected else double_coset_size_formula
    out = []
    for g in G.morphisms:
        size = len(part.blocks[part.block_of[g]])
        value = f(G, H, K, g)
        if value != size:
            out.append(SizeMismatch(g, value, size))
    return out


@dataclass(frozen=True, eq=False)
class XHKAction:
    """``X_{H,K}`` over ``H x K``: the fiber at ``(s, t)`` is ``G(t, s)``
    and ``(h, k)`` sends ``g`` to ``h g k^-1``.

    ``elements[o]`` lists the G-morphisms forming the fiber over product
    object ``o``; ``h_objects``/``k_objects`` and ``h_morphisms``/
    ``k_morphisms`` translate product coordinates back to G indices.
    """

    gset: GSet
    elements: tuple[tuple[int, ...], ...]
    h_objects: tuple[int, ...]
    k_objects: tuple[int, ...]
    h_morphisms: tuple[int, ...]
    k_morphisms: tuple[int, ...]

    def object_pair(self, o: int) -> tuple[int, int]:
        si, ti = divmod(o, len(self.k_objects))
        return self.h_objects[si], self.k_objects[ti]

    def morphism_pair(self, a: int) -> tuple[int, int]:
        hi, ki = divmod(a, len(self.k_morphisms))
        return self.h_morphisms[hi], self.k_morphisms[ki]


def x_hk_action(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid) -> XHKAction:
    Hg, hobj, hmor = H.embedded
    Kg, kobj, kmor = K.embedded
    PG = product(Hg, Kg)
    mK = len(kmor)
    elements = []
    for s in hobj:
        for t in kobj:
            elements.append(G.hom(t, s))
    pos = [{g: i for i, g in enumerate(els)} for els in elements]
    action = []
    for a in PG.morphisms:
        hi, ki = divmod(a, mK)
        h, k = hmor[hi], kmor[ki]
        src = PG.dom[a]
        tgt = PG.cod[a]
        kinv = G.inverse[k]
        action.append(tuple(pos[tgt][G.compose(h, G.compose(g, kinv))]
                            for g in elements[src]))
    sizes = tuple(len(e) for e in elements)
    return XHKAction(GSet(PG, sizes, tuple(action)), tuple(elements),
                     hobj, kobj, hmor, kmor)


@dataclass(frozen=True)
class CommaCategory:
    """``Incl_K / Incl_H``: objects are morphisms ``g: t -> s`` of G with
    ``t`` in K and ``s`` in H; a morphism ``(k, h): g -> g'`` satisfies
    ``g' k = h g``."""

    groupoid: FiniteGroupoid
    object_label: tuple[int, ...]
    morphism_label: tuple[tuple[int, int, int], ...]  # (source g, k, h)


def comma_category(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid) -> CommaCategory:
    objs = tuple(g for g in G.morphisms if G.dom[g] in K.objects and G.cod[g] in H.objects)
    opos = {g: i for i, g in enumerate(objs)}
    labels = []
    for g in objs:
        for k in K.outgoing[G.dom[g]]:
            for h in H.outgoing[G.cod[g]]:
                labels.append((g, k, h))
    mpos = {lab: i for i, lab in enumerate(labels)}

    def target(g, k, h):
        return G.compose(h, G.compose(g, G.inverse[k]))

    dom = [opos[g] for g, _, _ in labels]
    cod = [opos[target(*lab)] for lab in labels]
    ident = [mpos[g, G.identity[G.dom[g]], G.identity[G.cod[g]]] for g in objs]
    inv = [mpos[target(g, k, h), G.inverse[k], G.inverse[h]] for g, k, h in labels]
    by_source: dict[int, list[int]] = {}
    for i, (g, _, _) in enumerate(labels):
        by_source.setdefault(g, []).append(i)
    table = {}
    for a, (g, k, h) in enumerate(labels):
        g2 = target(g, k, h)
        for b in by_source.get(g2, ()):
            _, k2, h2 = labels[b]
            table[b, a] = mpos[g, G.compose(k2, k), G.compose(h2, h)]
    grp = FiniteGroupoid(len(objs), tuple(dom), tuple(cod), tuple(ident), tuple(inv), table)
    return CommaCategory(grp, objs, tuple(labels))


def comma_iso_check(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid) -> list[Violation]:
    """Check that ``<(s,t), g> -> g`` and ``(h, k) -> (k, h)`` is an
    isomorphism from the action groupoid of X_{H,K} onto the comma category."""
    X = x_hk_action(G, H, K)
    AG = action_groupoid(X.gset)
    CC = comma_category(G, H, K)
    A, C = AG.groupoid, CC.groupoid
    out = []
    cpos = {g: i for i, g in enumerate(CC.object_label)}
    mpos = {lab: i for i, lab in enumerate(CC.morphism_label)}
    fobj = []
    for o, i in AG.object_label:
        fobj.append(cpos.get(X.elements[o][i], -1))
    fmor = []
    for a in A.morphisms:
        h, k = X.morphism_pair(AG.morphism_label[a])
        src_obj = A.dom[a]
        o, i = AG.object_label[src_obj]
        fmor.append(mpos.get((X.elements[o][i], k, h), -1))
    if -1 in fobj or sorted(fobj) != list(C.objects):
        out.append(Violation("object-bijection", (len(fobj), C.object_count)))
    if -1 in fmor or sorted(fmor) != list(C.morphisms):
        out.append(Violation("morphism-bijection", (len(fmor), C.morphism_count)))
    if out:
        return out
    for a in A.morphisms:
        if C.dom[fmor[a]] != fobj[A.dom[a]] or C.cod[fmor[a]] != fobj[A.cod[a]]:
            out.append(Violation("endpoints", (a,)))
    for (a2, a1), c in A.table.items():
        if C.table.get((fmor[a2], fmor[a1])) != fmor[c]:
            out.append(Violation("composition", (a2, a1)))
    return out


def comma_component_count(G, H, K) -> int:
    return len(connected_components(comma_category(G, H, K).groupoid))
