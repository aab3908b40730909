"""Finite groupoids as dense integer tables.

Objects are ``0..n-1`` and morphisms ``0..m-1``.  ``compose(g2, g1)`` is
"g2 after g1" and is defined exactly when ``cod[g1] == dom[g2]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .unionfind import UnionFind


class GroupoidError(ValueError):
    pass


class NotWideError(GroupoidError):
    pass


class DisconnectedError(GroupoidError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    object_count: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identity: tuple[int, ...]
    inverse: tuple[int, ...]
    table: Mapping[tuple[int, int], int] = field(repr=False)

    def __post_init__(self):
        n, m = self.object_count, len(self.dom)
        if n < 1:
            raise GroupoidError("the empty groupoid is excluded")
        if len(self.cod) != m or len(self.inverse) != m:
            raise GroupoidError("dom, cod and inv must all have one entry per morphism")
        if len(self.identity) != n:
            raise GroupoidError("id must have one entry per object")
        for name, seq, bound in (("dom", self.dom, n), ("cod", self.cod, n),
                                 ("id", self.identity, m), ("inv", self.inverse, m)):
            for i, v in enumerate(seq):
                if not 0 <= v < bound:
                    raise GroupoidError(f"{name}[{i}] = {v} out of range [0,{bound})")

    @property
    def morphism_count(self) -> int:
        return len(self.dom)

    @property
    def objects(self) -> range:
        return range(self.object_count)

    @property
    def morphisms(self) -> range:
        return range(len(self.dom))

    def compose(self, g2: int, g1: int) -> int:
        """``g2 . g1``; raises KeyError when the pair is not composable."""
        return self.table[g2, g1]

    @cached_property
    def outgoing(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.objects]
        for g in self.morphisms:
            out[self.dom[g]].append(g)
        return tuple(map(tuple, out))

    @cached_property
    def incoming(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in self.objects]
        for g in self.morphisms:
            inc[self.cod[g]].append(g)
        return tuple(map(tuple, inc))

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for g in self.morphisms:
            homs.setdefault((self.dom[g], self.cod[g]), []).append(g)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._homs.get((x, y), ())

    def is_endo(self, g: int) -> bool:
        return self.dom[g] == self.cod[g]

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (self.object_count == other.object_count and self.dom == other.dom
                and self.cod == other.cod and self.identity == other.identity
                and self.inverse == other.inverse and dict(self.table) == dict(other.table))

    __hash__ = None

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.object_count}, morphisms={self.morphism_count})"


class Violation(NamedTuple):
    axiom: str
    witness: tuple[int, ...]
    detail: str = ""

    def __str__(self):
        w = ",".join(map(str, self.witness))
        return f"{self.axiom}({w})" + (f": {self.detail}" if self.detail else "")


def validate(G: FiniteGroupoid) -> list[Violation]:
    """Exhaustively check every category and groupoid axiom.

    Returns the violations found, each naming the axiom and the witnessing
    indices; an empty list means ``G`` is a groupoid.
    """
    report: list[Violation] = []
    dom, cod, ident, inv = G.dom, G.cod, G.identity, G.inverse
    for x in G.objects:
        e = ident[x]
        if dom[e] != x or cod[e] != x:
            report.append(Violation("identity-endpoints", (x, e)))
    for (g2, g1), c in G.table.items():
        if not (0 <= g1 < G.morphism_count and 0 <= g2 < G.morphism_count):
            report.append(Violation("table-range", (g2, g1)))
        elif cod[g1] != dom[g2]:
            report.append(Violation("not-composable", (g2, g1), "entry for a non-composable pair"))
        elif not 0 <= c < G.morphism_count or dom[c] != dom[g1] or cod[c] != cod[g2]:
            report.append(Violation("compose-endpoints", (g2, g1, c)))
    for g1 in G.morphisms:
        for g2 in G.outgoing[cod[g1]]:
            if (g2, g1) not in G.table:
                report.append(Violation("missing-composite", (g2, g1)))
    table = G.table
    for g in G.morphisms:
        if table.get((g, ident[dom[g]])) != g:
            report.append(Violation("identity", (g, ident[dom[g]]), "g . id != g"))
        if table.get((ident[cod[g]], g)) != g:
            report.append(Violation("identity", (ident[cod[g]], g), "id . g != g"))
        h = inv[g]
        if dom[h] != cod[g] or cod[h] != dom[g]:
            report.append(Violation("inverse-endpoints", (g, h)))
            continue
        if table.get((h, g)) != ident[dom[g]]:
            report.append(Violation("inverse", (h, g), "inv(g) . g != id"))
        if table.get((g, h)) != ident[cod[g]]:
            report.append(Violation("inverse", (g, h), "g . inv(g) != id"))
    for f in G.morphisms:
        for g in G.outgoing[cod[f]]:
            gf = table.get((g, f))
            if gf is None:
                continue
            for h in G.outgoing[cod[g]]:
                hg = table.get((h, g))
                if hg is None:
                    continue
                left = table.get((h, gf))
                right = table.get((hg, f))
                if left != right:
                    report.append(Violation("associativity", (h, g, f),
                                            f"h(gf)={left} but (hg)f={right}"))
    return report


# --- constructors -----------------------------------------------------------

def pair_groupoid(n: int) -> FiniteGroupoid:
    """Pair(n): one morphism ``x*n + y`` from x to y for every ordered pair."""
    if n < 1:
        raise GroupoidError("Pair(0) is the empty groupoid")
    dom, cod, inv = [], [], []
    for x in range(n):
        for y in range(n):
            dom.append(x)
            cod.append(y)
            inv.append(y * n + x)
    table = {(y * n + z, x * n + y): x * n + z
             for x in range(n) for y in range(n) for z in range(n)}
    return FiniteGroupoid(n, tuple(dom), tuple(cod),
                          tuple(x * n + x for x in range(n)), tuple(inv), table)


def group_as_groupoid(table: Sequence[Sequence[int]]) -> FiniteGroupoid:
    """One-object groupoid of a group given by its Cayley table.

    ``table[a][b]`` is the product ``a b``.  Raises GroupoidError naming the
    first failing triple (lexicographic scan) or element.
    """
    n = len(table)
    if n == 0:
        raise GroupoidError("empty Cayley table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise GroupoidError(f"row {a} has length {len(row)}, expected {n}")
        for b, c in enumerate(row):
            if not 0 <= c < n:
                raise GroupoidError(f"entry ({a},{b}) = {c} out of range")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupoidError(f"not associative at triple ({a},{b},{c})")
    units = [e for e in range(n)
             if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not units:
        raise GroupoidError("no identity element")
    e = units[0]
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if not cands:
            raise GroupoidError(f"element {a} has no inverse")
        inv.append(cands[0])
    comp = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid(1, (0,) * n, (0,) * n, (e,), tuple(inv), comp)


def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_elements(n: int) -> list[tuple[int, ...]]:
    """Permutations of ``range(n)`` in lexicographic order (identity first)."""
    return list(itertools.permutations(range(n)))


def symmetric_table(n: int) -> list[list[int]]:
    perms = symmetric_elements(n)
    pos = {p: i for i, p in enumerate(perms)}
    # (p q)(i) = p(q(i)): q acts first, matching "g2 after g1"
    return [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]


def cyclic_group(n: int) -> FiniteGroupoid:
    return group_as_groupoid(cyclic_table(n))


def symmetric_group(n: int) -> FiniteGroupoid:
    return group_as_groupoid(symmetric_table(n))


def product(A: FiniteGroupoid, B: FiniteGroupoid) -> FiniteGroupoid:
    """Direct product; object ``(x, y)`` is ``x*nB + y``, morphism ``(a, b)`` is ``a*mB + b``."""
    nB, mB = B.object_count, B.morphism_count
    dom, cod, inv = [], [], []
    for a in A.morphisms:
        for b in B.morphisms:
            dom.append(A.dom[a] * nB + B.dom[b])
            cod.append(A.cod[a] * nB + B.cod[b])
            inv.append(A.inverse[a] * mB + B.inverse[b])
    ident = tuple(A.identity[x] * mB + B.identity[y]
                  for x in A.objects for y in B.objects)
    table = {}
    for (a2, a1), a in A.table.items():
        for (b2, b1), b in B.table.items():
            table[a2 * mB + b2, a1 * mB + b1] = a * mB + b
    return FiniteGroupoid(A.object_count * nB, tuple(dom), tuple(cod), ident, tuple(inv), table)


def coproduct(A: FiniteGroupoid, B: FiniteGroupoid) -> FiniteGroupoid:
    """Disjoint union; B's objects and morphisms are shifted past A's."""
    n, m = A.object_count, A.morphism_count
    table = dict(A.table)
    table.update({(g2 + m, g1 + m): c + m for (g2, g1), c in B.table.items()})
    return FiniteGroupoid(
        n + B.object_count,
        A.dom + tuple(x + n for x in B.dom),
        A.cod + tuple(x + n for x in B.cod),
        A.identity + tuple(g + m for g in B.identity),
        A.inverse + tuple(g + m for g in B.inverse),
        table,
    )


# --- subgroupoids -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subgroupoid:
    """A subset of a parent's objects and morphisms closed under the
    groupoid operations.  The invariants are checked on construction."""

    parent: FiniteGroupoid
    objects: frozenset[int]
    morphisms: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "morphisms", frozenset(self.morphisms))
        bad = subgroupoid_violations(self.parent, self.objects, self.morphisms)
        if bad:
            raise GroupoidError("not a subgroupoid: " + "; ".join(map(str, bad[:5])))

    @property
    def wide(self) -> bool:
        return len(self.objects) == self.parent.object_count

    def __contains__(self, g: int) -> bool:
        return g in self.morphisms

    def __eq__(self, other):
        if not isinstance(other, Subgroupoid):
            return NotImplemented
        return (self.parent is other.parent or self.parent == other.parent) and \
            self.objects == other.objects and self.morphisms == other.morphisms

    __hash__ = None

    @cached_property
    def incoming(self) -> dict[int, tuple[int, ...]]:
        """Morphisms of this subgroupoid grouped by codomain."""
        inc: dict[int, list[int]] = {x: [] for x in self.objects}
        for g in sorted(self.morphisms):
            inc[self.parent.cod[g]].append(g)
        return {x: tuple(v) for x, v in inc.items()}

    @cached_property
    def outgoing(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {x: [] for x in self.objects}
        for g in sorted(self.morphisms):
            out[self.parent.dom[g]].append(g)
        return {x: tuple(v) for x, v in out.items()}

    def isotropy_order(self, x: int) -> int:
        P = self.parent
        return sum(1 for g in self.outgoing[x] if P.cod[g] == x)

    @cached_property
    def embedded(self) -> tuple[FiniteGroupoid, tuple[int, ...], tuple[int, ...]]:
        """``(groupoid, object_map, morphism_map)``; maps send the standalone
        groupoid's indices to parent indices, both in increasing order."""
        P = self.parent
        objs = tuple(sorted(self.objects))
        mors = tuple(sorted(self.morphisms))
        opos = {x: i for i, x in enumerate(objs)}
        mpos = {g: i for i, g in enumerate(mors)}
        table = {}
        for g1 in mors:
            for g2 in self.outgoing[P.cod[g1]]:
                table[mpos[g2], mpos[g1]] = mpos[P.compose(g2, g1)]
        G = FiniteGroupoid(
            len(objs),
            tuple(opos[P.dom[g]] for g in mors),
            tuple(opos[P.cod[g]] for g in mors),
            tuple(mpos[P.identity[x]] for x in objs),
            tuple(mpos[P.inverse[g]] for g in mors),
            table,
        )
        return G, objs, mors

    def as_groupoid(self) -> FiniteGroupoid:
        return self.embedded[0]


def subgroupoid_violations(P: FiniteGroupoid, objects: Iterable[int],
                           morphisms: Iterable[int]) -> list[Violation]:
    objs, mors = set(objects), set(morphisms)
    out = []
    for x in sorted(objs):
        if not 0 <= x < P.object_count:
            out.append(Violation("object-range", (x,)))
        elif P.identity[x] not in mors:
            out.append(Violation("missing-identity", (x, P.identity[x])))
    for g in sorted(mors):
        if not 0 <= g < P.morphism_count:
            out.append(Violation("morphism-range", (g,)))
            continue
        if P.dom[g] not in objs or P.cod[g] not in objs:
            out.append(Violation("endpoint-outside", (g,)))
        if P.inverse[g] not in mors:
            out.append(Violation("inverse-closure", (g, P.inverse[g])))
    for g1 in sorted(mors):
        if not 0 <= g1 < P.morphism_count:
            continue
        for g2 in P.outgoing[P.cod[g1]]:
            if g2 in mors and P.compose(g2, g1) not in mors:
                out.append(Violation("compose-closure", (g2, g1, P.compose(g2, g1))))
    return out


def full_subgroupoid(G: FiniteGroupoid, objects: Iterable[int]) -> Subgroupoid:
    objs = frozenset(objects)
    mors = frozenset(g for g in G.morphisms if G.dom[g] in objs and G.cod[g] in objs)
    return Subgroupoid(G, objs, mors)


def whole(G: FiniteGroupoid) -> Subgroupoid:
    return Subgroupoid(G, frozenset(G.objects), frozenset(G.morphisms))


def discrete(G: FiniteGroupoid) -> Subgroupoid:
    """The wide subgroupoid of identities."""
    return Subgroupoid(G, frozenset(G.objects), frozenset(G.identity))


def iso_subgroupoid(G: FiniteGroupoid) -> Subgroupoid:
    """Iso G as a wide subgroupoid of G."""
    return Subgroupoid(G, frozenset(G.objects),
                       frozenset(g for g in G.morphisms if G.is_endo(g)))


def iso_bundle(G: FiniteGroupoid) -> FiniteGroupoid:
    return iso_subgroupoid(G).as_groupoid()


def hom_set(G: FiniteGroupoid, x: int, y: int) -> tuple[int, ...]:
    _check_object(G, x)
    _check_object(G, y)
    return G.hom(x, y)


def isotropy(G: FiniteGroupoid, x: int) -> Subgroupoid:
    _check_object(G, x)
    return Subgroupoid(G, frozenset({x}), frozenset(G.hom(x, x)))


def _check_object(G: FiniteGroupoid, x: int):
    if not 0 <= x < G.object_count:
        raise IndexError(f"object {x} out of range [0,{G.object_count})")


def closure(G: FiniteGroupoid, seed: Iterable[int], make_wide: bool = False) -> Subgroupoid:
    """Smallest subgroupoid containing ``seed`` (and every identity if ``make_wide``)."""
    mors: set[int] = set()
    objs: set[int] = set(G.objects) if make_wide else set()
    for g in seed:
        if not 0 <= g < G.morphism_count:
            raise IndexError(f"morphism {g} out of range")
        objs.update((G.dom[g], G.cod[g]))
    work = [G.identity[x] for x in objs]
    for g in seed:
        work += [g, G.inverse[g]]
    by_dom: dict[int, set[int]] = {}
    by_cod: dict[int, set[int]] = {}
    while work:
        g = work.pop()
        if g in mors:
            continue
        mors.add(g)
        by_dom.setdefault(G.dom[g], set()).add(g)
        by_cod.setdefault(G.cod[g], set()).add(g)
        if G.inverse[g] not in mors:
            work.append(G.inverse[g])
        for h in list(by_dom.get(G.cod[g], ())):
            work.append(G.compose(h, g))
        for f in list(by_cod.get(G.dom[g], ())):
            work.append(G.compose(g, f))
    return Subgroupoid(G, frozenset(objs), frozenset(mors))


# --- components and structure ----------------------------------------------

@dataclass(frozen=True)
class ComponentDecomposition:
    component_of_object: tuple[int, ...]
    components: tuple[Subgroupoid, ...]

    def __len__(self):
        return len(self.components)


def connected_components(G: FiniteGroupoid) -> ComponentDecomposition:
    """Union-find over dom/cod; components are numbered by their least object."""
    uf = UnionFind(G.object_count)
    for g in G.morphisms:
        uf.union(G.dom[g], G.cod[g])
    classes = uf.classes()
    label = [0] * G.object_count
    for i, block in enumerate(classes):
        for x in block:
            label[x] = i
    return ComponentDecomposition(tuple(label),
                                  tuple(full_subgroupoid(G, b) for b in classes))


def subgroupoid_components(H: Subgroupoid) -> list[list[int]]:
    """Object classes of a subgroupoid's connected components, sorted."""
    P = H.parent
    objs = sorted(H.objects)
    pos = {x: i for i, x in enumerate(objs)}
    uf = UnionFind(len(objs))
    for g in H.morphisms:
        uf.union(pos[P.dom[g]], pos[P.cod[g]])
    return [[objs[i] for i in block] for block in uf.classes()]


def is_connected(G: FiniteGroupoid) -> bool:
    return len(connected_components(G)) == 1


@dataclass(frozen=True)
class StructureIso:
    """Mutually inverse functors ``G <-> G_x x Pair(G_0)``.

    Objects of the product are ``y`` (pairs ``(0, y)``), morphisms are
    ``u*n*n + (y*n + z)`` for ``u`` in the isotropy group and ``(y, z)`` in
    the pair groupoid.
    """

    source: FiniteGroupoid
    base_object: int
    group: FiniteGroupoid
    target: FiniteGroupoid
    transfer: tuple[int, ...]
    forward: tuple[int, ...]
    backward: tuple[int, ...]

    def check(self) -> list[Violation]:
        return _check_iso(self.source, self.target, self.forward, self.backward)


def _functor_violations(A: FiniteGroupoid, B: FiniteGroupoid,
                        fmor: Sequence[int], name: str) -> list[Violation]:
    out = []
    for (g2, g1), c in A.table.items():
        if B.table.get((fmor[g2], fmor[g1])) != fmor[c]:
            out.append(Violation(f"{name}-composition", (g2, g1)))
    for x in A.objects:
        if not B.is_endo(fmor[A.identity[x]]) or fmor[A.identity[x]] not in B.identity:
            out.append(Violation(f"{name}-identity", (x,)))
    return out


def _check_iso(A, B, fwd, bwd) -> list[Violation]:
    out = _functor_violations(A, B, fwd, "forward") + _functor_violations(B, A, bwd, "backward")
    for g in A.morphisms:
        if bwd[fwd[g]] != g:
            out.append(Violation("roundtrip-source", (g,)))
    for g in B.morphisms:
        if fwd[bwd[g]] != g:
            out.append(Violation("roundtrip-target", (g,)))
    return out


def structure_decomposition(G: FiniteGroupoid, x: int) -> StructureIso:
    """Witness ``G ~= G_x x Pair(G_0)`` for connected G.

    The transfer morphism ``f_y: x -> y`` is the lowest-index element of
    ``hom(x, y)``.  ``g: y -> z`` goes to ``(f_z^-1 g f_y, (y, z))``.
    """
    _check_object(G, x)
    if not is_connected(G):
        raise DisconnectedError("structure decomposition needs a connected groupoid")
    n = G.object_count
    iso = isotropy(G, x)
    group, _, gmors = iso.embedded
    gpos = {g: i for i, g in enumerate(gmors)}
    target = product(group, pair_groupoid(n))
    transfer = tuple(min(G.hom(x, y)) for y in G.objects)
    inv, comp = G.inverse, G.compose
    forward = []
    for g in G.morphisms:
        y, z = G.dom[g], G.cod[g]
        u = comp(inv[transfer[z]], comp(g, transfer[y]))
        forward.append(gpos[u] * n * n + y * n + z)
    backward = []
    for t in target.morphisms:
        u, yz = divmod(t, n * n)
        y, z = divmod(yz, n)
        backward.append(comp(transfer[z], comp(gmors[u], inv[transfer[y]])))
    return StructureIso(G, x, group, target, transfer, tuple(forward), tuple(backward))


# --- cosets and index -------------------------------------------------------

def coset_classes(G: FiniteGroupoid, H: Subgroupoid, x: int) -> list[tuple[int, ...]]:
    """Classes of ``Mor_G(-, x)`` under ``a ~ b  iff  a^-1 b in H``.

    The class of ``a`` is ``{a h : h in H, cod h = dom a}``.  Classes are
    sorted member tuples ordered by their lowest morphism index.
    """
    seen: set[int] = set()
    classes = []
    for a in G.incoming[x]:
        if a in seen:
            continue
        cls = tuple(sorted({G.compose(a, h) for h in H.incoming.get(G.dom[a], ())}))
        seen.update(cls)
        classes.append(cls)
    return sorted(classes)


class IndexResult(NamedTuple):
    index: int
    per_object: tuple[int, ...]
    wide_objects: int
    base_object: int
    component_bases: tuple[int, ...]
    terms: tuple[Fraction, ...]

    @property
    def formula(self) -> Fraction:
        return self.wide_objects * sum(self.terms, Fraction(0))

    def formula_text(self) -> str:
        return f"{self.wide_objects} * ({'+'.join(str(t) for t in self.terms)})"


def index(G: FiniteGroupoid, H: Subgroupoid) -> IndexResult:
    """Number of left cosets of a wide H in a connected G, with the
    closed form ``|H_0| * sum_i |G_e| / |H_{e_i}|`` over H's components."""
    if not H.wide:
        raise NotWideError("index needs a wide subgroupoid")
    if not is_connected(G):
        raise DisconnectedError("index formula needs a connected groupoid")
    per = tuple(len(coset_classes(G, H, x)) for x in G.objects)
    e = 0
    g_e = len(G.hom(e, e))
    bases = tuple(c[0] for c in subgroupoid_components(H))
    terms = tuple(Fraction(g_e, H.isotropy_order(b)) for b in bases)
    return IndexResult(sum(per), per, len(H.objects), e, bases, terms)


def generating_morphisms(G: FiniteGroupoid) -> tuple[int, ...]:
    """A generating set: per component, the isotropy group at the least
    object plus one morphism from it to every other object.

    Any ``g: y -> z`` equals ``f_z u f_y^-1`` with ``u`` in that isotropy
    group, so a condition closed under composition and inverses that holds
    on this set holds on all of ``G_1``.
    """
    gens: set[int] = set()
    for comp in connected_components(G).components:
        x = min(comp.objects)
        gens.update(G.hom(x, x))
        for y in comp.objects:
            gens.add(min(G.hom(x, y)))
    return tuple(sorted(gens))
