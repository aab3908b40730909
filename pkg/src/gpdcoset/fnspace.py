"""Double-coset invariant functions, the functor Y_H and the maps S and T.

A function ``G_1 -> Q(i)`` is a dense tuple indexed by morphism.  ``Y_H(x)``
is the space of functions on ``Mor_G(-, x)`` that are constant on right
H-cosets, with basis the coset indicators; ``g`` acts by ``f -> f(g^-1 -)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .coset import DoubleCosetPartition, double_cosets, left_cosets
from .groupoid import FiniteGroupoid, NotWideError, Subgroupoid, Violation
from .linalg import Echelon, matmul
from .linrep import (NaturalTransformation, Representation, is_natural,
                     natural_transformations, permutation_rep)
from .scalars import Scalar, simplify
from .unionfind import UnionFind

Function = tuple[Scalar, ...]


class FunctionSpaceError(ValueError):
    pass


def _require_wide(*subs: Subgroupoid):
    for H in subs:
        if not H.wide:
            raise NotWideError("expected a wide subgroupoid")


@dataclass(frozen=True, eq=False)
class InvariantFunctionSpace:
    base: FiniteGroupoid
    h: Subgroupoid
    k: Subgroupoid
    partition: DoubleCosetPartition
    basis: tuple[Function, ...]
    constraint_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def invariance_pairs(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid) -> set[tuple[int, int]]:
    """Pairs ``(g, h^-1 g k)`` over all triples with ``cod h = cod g`` and
    ``dom g = cod k``; trivial pairs are dropped."""
    pairs = set()
    for g in G.morphisms:
        for h in H.incoming[G.cod[g]]:
            hg = G.compose(G.inverse[h], g)
            for k in K.incoming[G.dom[g]]:
                t = G.compose(hg, k)
                if t != g:
                    pairs.add((min(g, t), max(g, t)))
    return pairs


def invariant_function_space(G: FiniteGroupoid, H: Subgroupoid,
                             K: Subgroupoid) -> InvariantFunctionSpace:
    """Indicator basis from the double cosets, and the dimension of the
    solution space of ``phi(h^-1 g k) = phi(g)`` found by elimination."""
    _require_wide(H, K)
    part = double_cosets(G, H, K)
    basis = tuple(tuple(1 if part.block_of[g] == b else 0 for g in G.morphisms)
                  for b in range(len(part)))
    ech = Echelon().extend({a: 1, b: -1} for a, b in sorted(invariance_pairs(G, H, K)))
    return InvariantFunctionSpace(G, H, K, part, basis, G.morphism_count - ech.rank)


def invariance_violations(G, H, K, phi: Sequence[Scalar]) -> list[tuple[int, int]]:
    return sorted((a, b) for a, b in invariance_pairs(G, H, K) if phi[a] != phi[b])


# --- Y_H ----------------------------------------------------------------------

def right_cosets_of(G: FiniteGroupoid, H: Subgroupoid, x: int) -> list[list[int]]:
    """Orbits of ``Mor_G(-, x)`` under ``a -> a h``, by smallest member."""
    inc = G.incoming[x]
    pos = {a: i for i, a in enumerate(inc)}
    uf = UnionFind(len(inc))
    for a in inc:
        for h in H.incoming[G.dom[a]]:
            uf.union(pos[a], pos[G.compose(a, h)])
    return [[inc[i] for i in block] for block in uf.classes()]


@dataclass(frozen=True, eq=False)
class YRep(Representation):
    """``basis_label[x][c]`` is the representative (lowest morphism) of the
    coset whose indicator is basis vector ``c`` at ``x``."""

    basis_label: tuple[tuple[int, ...], ...] = ()
    cosets: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def coset_index(self, x: int, g: int) -> int:
        for c, members in enumerate(self.cosets[x]):
            if g in members:
                return c
        raise KeyError(g)

    def indicator(self, x: int, c: int) -> dict[int, Scalar]:
        return {a: 1 for a in self.cosets[x][c]}

    def coordinates(self, x: int, f: dict[int, Scalar]) -> list[Scalar]:
        """Coordinates of a right-invariant function on ``Mor_G(-, x)``."""
        out = []
        for members in self.cosets[x]:
            first = f.get(members[0], 0)
            if any(f.get(a, 0) != first for a in members[1:]):
                raise FunctionSpaceError("function is not right H-invariant")
            out.append(first)
        return out


def y_rep(G: FiniteGroupoid, H: Subgroupoid) -> YRep:
    """The representation ``x -> Y_H(x)`` with ``g`` acting by ``f(g^-1 -)``."""
    _require_wide(H)
    cosets = tuple(tuple(tuple(c) for c in right_cosets_of(G, H, x)) for x in G.objects)
    dims = tuple(len(c) for c in cosets)
    labels = tuple(tuple(c[0] for c in cs) for cs in cosets)
    proto = YRep(G, dims, (), labels, cosets)
    mats = []
    for g in G.morphisms:
        x, y = G.dom[g], G.cod[g]
        gi = G.inverse[g]
        cols = []
        for c in range(dims[x]):
            f = proto.indicator(x, c)
            moved = {a: f.get(G.compose(gi, a), 0) for a in G.incoming[y]}
            cols.append(proto.coordinates(y, moved))
        mats.append(tuple(tuple(cols[j][i] for j in range(dims[x])) for i in range(dims[y])))
    return YRep(G, dims, tuple(mats), labels, cosets)


def theta_iso_check(G: FiniteGroupoid, H: Subgroupoid) -> list[Violation]:
    """``theta_x: C[G/H](x) -> Y_H(x)``, ``gH -> delta_{gH}``; checks each
    component is invertible and every naturality square commutes."""
    L = left_cosets(G, H)
    C = permutation_rep(L)
    Y = y_rep(G, H)
    out = []
    theta = []
    for x in G.objects:
        if C.dim[x] != Y.dim[x]:
            out.append(Violation("dimension", (x,), f"{C.dim[x]} != {Y.dim[x]}"))
            theta.append(None)
            continue
        cols = [Y.coordinates(x, {a: 1 for a in members}) for members in L.classes[x]]
        M = tuple(tuple(cols[j][i] for j in range(C.dim[x])) for i in range(Y.dim[x]))
        rows = [{j: v for j, v in enumerate(r) if v} for r in M]
        if Echelon().extend(rows).rank != C.dim[x]:
            out.append(Violation("not-bijective", (x,)))
        theta.append(M)
    if out:
        return out
    for g in G.morphisms:
        x, y = G.dom[g], G.cod[g]
        if matmul(theta[y], C.mat[g]) != matmul(Y.mat[g], theta[x]):
            out.append(Violation("naturality", (g,)))
    return out


# --- S and T ------------------------------------------------------------------

def iso_bundle_size(G: FiniteGroupoid) -> int:
    return sum(1 for g in G.morphisms if G.is_endo(g))


def s_map(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid, phi: Sequence[Scalar],
          YH: YRep | None = None, YK: YRep | None = None) -> NaturalTransformation:
    """``S(phi)_x(f)(g) = (1/|(Iso G)_1|) sum_{a in Mor(-, x)} phi(a^-1 g) f(a)``."""
    _require_wide(H, K)
    if len(phi) != G.morphism_count:
        raise FunctionSpaceError("function has the wrong length")
    bad = invariance_violations(G, H, K, phi)
    if bad:
        raise FunctionSpaceError(f"function is not double-coset invariant at {bad[0]}")
    YH = YH or y_rep(G, H)
    YK = YK or y_rep(G, K)
    scale = Fraction(1, iso_bundle_size(G))
    comp, inv = G.compose, G.inverse
    comps = []
    for x in G.objects:
        cols = []
        for c in range(YH.dim[x]):
            coset = YH.cosets[x][c]
            # unscaled sums; K-invariance of the output is checked by coordinates()
            out = {g: sum((phi[comp(inv[a], g)] for a in coset), 0) for g in G.incoming[x]}
            cols.append([simplify(v * scale) for v in YK.coordinates(x, out)])
        comps.append(tuple(tuple(cols[j][i] for j in range(YH.dim[x]))
                           for i in range(YK.dim[x])))
    return NaturalTransformation(tuple(comps))


def delta_value(G: FiniteGroupoid, H: Subgroupoid, x: int, corrected: bool = False) -> Fraction:
    """Height of ``delta_x`` on ``H(-, x)``.

    Literally ``|G_x| / |H_x|``.  The corrected height
    ``|(Iso G)_1| / |H(-, x)|`` is the one that makes ``T`` a left inverse
    of ``S`` when H or G is disconnected.
    """
    if corrected:
        return Fraction(iso_bundle_size(G), len(H.incoming[x]))
    return Fraction(len(G.hom(x, x)), H.isotropy_order(x))


def t_map(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid, psi: NaturalTransformation,
          YH: YRep | None = None, YK: YRep | None = None,
          corrected: bool = False) -> Function:
    """``T(psi)(g) = psi_{cod g}(delta_{cod g})(g)``."""
    _require_wide(H, K)
    YH = YH or y_rep(G, H)
    YK = YK or y_rep(G, K)
    if not is_natural(YH, YK, psi, all_morphisms=False):
        raise FunctionSpaceError("psi is not a natural transformation Y_H -> Y_K")
    values = []
    for g in G.morphisms:
        x = G.cod[g]
        col = YH.coset_index(x, G.identity[x])
        row = YK.coset_index(x, g)
        values.append(simplify(delta_value(G, H, x, corrected) * psi.components[x][row][col]))
    phi = tuple(values)
    bad = invariance_violations(G, H, K, phi)
    if bad:
        raise FunctionSpaceError(f"T(psi) is not double-coset invariant at {bad[0]}")
    return phi


class RoundTripFailure(NamedTuple):
    direction: str
    item: int
    detail: str


def ts_check(G, H, K, corrected: bool = False) -> list[RoundTripFailure]:
    """``T(S(phi)) = phi`` on the double-coset indicator basis."""
    YH, YK = y_rep(G, H), y_rep(G, K)
    space = invariant_function_space(G, H, K)
    out = []
    for i, phi in enumerate(space.basis):
        back = t_map(G, H, K, s_map(G, H, K, phi, YH, YK), YH, YK, corrected)
        if back != phi:
            ratios = sorted({str(simplify(b / Fraction(p))) for b, p in zip(back, phi) if p})
            out.append(RoundTripFailure("TS", i, "T(S(phi)) / phi = " + ",".join(ratios)))
    return out


def st_check(G, H, K, corrected: bool = False) -> list[RoundTripFailure]:
    """``S(T(psi)) = psi`` on the null-space basis of the intertwiner system."""
    YH, YK = y_rep(G, H), y_rep(G, K)
    out = []
    for i, psi in enumerate(natural_transformations(YH, YK)):
        back = s_map(G, H, K, t_map(G, H, K, psi, YH, YK, corrected), YH, YK)
        if back != psi:
            out.append(RoundTripFailure("ST", i, "S(T(psi)) != psi"))
    return out
