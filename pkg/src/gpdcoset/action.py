"""Groupoid actions (functors into finite sets) and orbit counting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

from .groupoid import (FiniteGroupoid, Subgroupoid, Violation, connected_components,
                       _check_object)


@dataclass(frozen=True, eq=False)
class GSet:
    """``X: G -> set``.  ``X(x) = range(carrier_size[x])`` and
    ``action[g][i]`` is the image of ``i`` under ``X(g)``."""

    base: FiniteGroupoid
    carrier_size: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]

    def __call__(self, g: int, x: int) -> int:
        return self.action[g][x]

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.carrier_size:
            out.append(acc)
            acc += s
        return tuple(out)

    @property
    def total_size(self) -> int:
        return sum(self.carrier_size)

    def __eq__(self, other):
        if not isinstance(other, GSet):
            return NotImplemented
        return (self.base == other.base and self.carrier_size == other.carrier_size
                and self.action == other.action)

    __hash__ = None


def validate_gset(X: GSet) -> list[Violation]:
    G = X.base
    out = []
    if len(X.carrier_size) != G.object_count or len(X.action) != G.morphism_count:
        return [Violation("shape", (len(X.carrier_size), len(X.action)))]
    for g in G.morphisms:
        a, n_in, n_out = X.action[g], X.carrier_size[G.dom[g]], X.carrier_size[G.cod[g]]
        if len(a) != n_in or n_in != n_out or sorted(a) != list(range(n_out)):
            out.append(Violation("bijection", (g,)))
    if out:
        return out
    for x in G.objects:
        if list(X.action[G.identity[x]]) != list(range(X.carrier_size[x])):
            out.append(Violation("identity", (x,)))
    for (g2, g1), c in G.table.items():
        a1, a2 = X.action[g1], X.action[g2]
        if tuple(a2[a1[i]] for i in range(len(a1))) != X.action[c]:
            out.append(Violation("functoriality", (g2, g1)))
    return out


def terminal_gset(G: FiniteGroupoid) -> GSet:
    """The constant one-point G-set."""
    return GSet(G, (1,) * G.object_count, ((0,),) * G.morphism_count)


def is_transitive(X: GSet) -> bool:
    return len(orbits(X)) == 1


@dataclass(frozen=True)
class ActionGroupoid:
    """Category of elements of X.

    Object ``offsets[x] + i`` is ``<x, i>``; the morphism for ``(g, i)`` goes
    from ``<dom g, i>`` to ``<cod g, X(g)(i)>``.
    """

    groupoid: FiniteGroupoid
    object_label: tuple[tuple[int, int], ...]
    morphism_label: tuple[int, ...]
    morphism_element: tuple[int, ...]


def action_groupoid(X: GSet) -> ActionGroupoid:
    G = X.base
    off = X.offsets
    dom, cod, mlabel, melem = [], [], [], []
    mor_start = []
    for g in G.morphisms:
        mor_start.append(len(dom))
        x, y = G.dom[g], G.cod[g]
        for i in range(X.carrier_size[x]):
            dom.append(off[x] + i)
            cod.append(off[y] + X.action[g][i])
            mlabel.append(g)
            melem.append(i)

    def idx(g, i):
        return mor_start[g] + i

    inv = [idx(G.inverse[mlabel[a]], X.action[mlabel[a]][melem[a]]) for a in range(len(dom))]
    ident = [idx(G.identity[x], i) for x in G.objects for i in range(X.carrier_size[x])]
    table = {}
    for a in range(len(dom)):
        g1, i = mlabel[a], melem[a]
        j = X.action[g1][i]
        for g2 in G.outgoing[G.cod[g1]]:
            table[idx(g2, j), a] = idx(G.compose(g2, g1), i)
    labels = tuple((x, i) for x in G.objects for i in range(X.carrier_size[x]))
    grp = FiniteGroupoid(len(labels), tuple(dom), tuple(cod), tuple(ident), tuple(inv), table)
    return ActionGroupoid(grp, labels, tuple(mlabel), tuple(melem))


def orbits(X: GSet) -> list[list[tuple[int, int]]]:
    """Orbits as sorted lists of ``(object, element)`` labels, computed as
    the connected components of the action groupoid."""
    AG = action_groupoid(X)
    comps = connected_components(AG.groupoid)
    return [[AG.object_label[o] for o in sorted(c.objects)] for c in comps.components]


def stabilizer(X: GSet, x: int, i: int) -> Subgroupoid:
    G = X.base
    _check_object(G, x)
    if not 0 <= i < X.carrier_size[x]:
        raise IndexError(f"element {i} out of range for X({x})")
    return Subgroupoid(G, frozenset({x}),
                       frozenset(g for g in G.hom(x, x) if X.action[g][i] == i))


def fix(X: GSet, g: int) -> list[int]:
    G = X.base
    if not G.is_endo(g):
        raise ValueError(f"morphism {g} is not an endomorphism")
    return [i for i, j in enumerate(X.action[g]) if i == j]


def cf_count(X: GSet) -> Fraction:
    """Average number of fixed points over all of ``(Iso G)_1``.

    Returned as an exact rational without asserting integrality: when the
    base groupoid is disconnected the average need not be the orbit count
    (see :func:`cf_count_componentwise`).
    """
    G = X.base
    endos = [g for g in G.morphisms if G.is_endo(g)]
    return Fraction(sum(len(fix(X, g)) for g in endos), len(endos))


def cf_count_componentwise(X: GSet) -> Fraction:
    """Fixed-point average taken separately on each connected component of
    the base and summed; equals the orbit count for every G-set."""
    G = X.base
    total = Fraction(0)
    for comp in connected_components(G).components:
        endos = [g for g in comp.morphisms if G.is_endo(g)]
        total += Fraction(sum(len(fix(X, g)) for g in endos), len(endos))
    return total


class CFReport(NamedTuple):
    orbits: int
    cf: Fraction
    cf_componentwise: Fraction

    @property
    def ok(self) -> bool:
        return self.cf == self.orbits

    @property
    def componentwise_ok(self) -> bool:
        return self.cf_componentwise == self.orbits


def cauchy_frobenius_check(X: GSet) -> CFReport:
    return CFReport(len(orbits(X)), cf_count(X), cf_count_componentwise(X))


def orbit_stabilizer_check(X: GSet) -> list[Violation]:
    """For each object x and each orbit meeting X(x), the stabilizer
    orders over that orbit's points in X(x) must sum to ``|G_x|``."""
    G = X.base
    out = []
    for n, orbit in enumerate(orbits(X)):
        per_obj: dict[int, int] = {}
        for x, i in orbit:
            per_obj[x] = per_obj.get(x, 0) + sum(
                1 for g in G.hom(x, x) if X.action[g][i] == i)
        for x, total in per_obj.items():
            if total != len(G.hom(x, x)):
                out.append(Violation("orbit-stabilizer", (n, x), f"{total} != {len(G.hom(x, x))}"))
    return out


def gset_from_permutations(G: FiniteGroupoid, sizes: Sequence[int],
                           perms: Sequence[Sequence[int]]) -> GSet:
    return GSet(G, tuple(sizes), tuple(tuple(p) for p in perms))
