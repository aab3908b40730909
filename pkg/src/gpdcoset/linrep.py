"""Exact linear representations of finite groupoids.

A representation stores, for every morphism ``g``, a ``dim[cod g] x
dim[dom g]`` matrix (tuple of row tuples) over Q(i).  Induction along a wide
inclusion is computed as the pointwise left Kan extension: a colimit over
the comma category ``Incl / x``, i.e. a quotient of a direct sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .action import GSet
from .groupoid import (FiniteGroupoid, NotWideError, Subgroupoid, Violation,
                       connected_components, generating_morphisms)
from .linalg import Echelon, identity, matmul, trace
from .scalars import GaussianRational, Scalar, as_gaussian, conj, simplify
from .unionfind import UnionFind

Matrix = tuple[tuple[Scalar, ...], ...]


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    base: FiniteGroupoid
    dim: tuple[int, ...]
    mat: tuple[Matrix, ...]

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.base == other.base and self.dim == other.dim and self.mat == other.mat

    __hash__ = None


def _zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def validate_rep(R: Representation) -> list[Violation]:
    G = R.base
    out = []
    if len(R.dim) != G.object_count or len(R.mat) != G.morphism_count:
        return [Violation("shape", (len(R.dim), len(R.mat)))]
    for g in G.morphisms:
        M = R.mat[g]
        rows, cols = R.dim[G.cod[g]], R.dim[G.dom[g]]
        if len(M) != rows or any(len(r) != cols for r in M):
            out.append(Violation("matrix-shape", (g,)))
    if out:
        return out
    for x in G.objects:
        if R.mat[G.identity[x]] != identity(R.dim[x]):
            out.append(Violation("identity", (x,)))
    for (g2, g1), c in G.table.items():
        if matmul(R.mat[g2], R.mat[g1]) != R.mat[c]:
            out.append(Violation("functoriality", (g2, g1)))
    return out


def trivial_rep(G: FiniteGroupoid) -> Representation:
    return Representation(G, (1,) * G.object_count, (((1,),),) * G.morphism_count)


def permutation_matrix(images: Sequence[int], size_out: int) -> Matrix:
    """Column ``i`` has its single 1 in row ``images[i]``."""
    rows = [[0] * len(images) for _ in range(size_out)]
    for i, j in enumerate(images):
        rows[j][i] = 1
    return tuple(map(tuple, rows))


def permutation_rep(X: GSet) -> Representation:
    G = X.base
    return Representation(G, X.carrier_size,
                          tuple(permutation_matrix(X.action[g], X.carrier_size[G.cod[g]])
                                for g in G.morphisms))


@dataclass(frozen=True)
class Character:
    base: FiniteGroupoid
    values: tuple[Scalar, ...]

    def __getitem__(self, g: int) -> Scalar:
        return self.values[g]


def character(R: Representation) -> Character:
    """Trace of each morphism acting on the total space; morphisms between
    distinct objects act block-off-diagonally and have trace 0."""
    G = R.base
    return Character(G, tuple(simplify(trace(R.mat[g])) if G.is_endo(g) else Fraction(0)
                              for g in G.morphisms))


def _same_base(R1: Representation, R2: Representation):
    if R1.base is not R2.base and R1.base != R2.base:
        raise RepresentationError("representations live over different groupoids")


def _object_pairings(c1: Character, c2: Character) -> list[Scalar]:
    G = c1.base
    out = []
    for x in G.objects:
        endos = G.hom(x, x)
        s = sum((c1[g] * conj(c2[g]) for g in endos), Fraction(0))
        out.append(s / len(endos))
    return out


def char_inner_product(R1: Representation, R2: Representation) -> GaussianRational:
    """``(1/|G_0|) sum_x (1/|G_x|) sum_{g in G_x} chi1(g) conj(chi2(g))``."""
    _same_base(R1, R2)
    per = _object_pairings(character(R1), character(R2))
    return as_gaussian(sum(per, Fraction(0)) / len(per))


def char_inner_product_componentwise(R1: Representation, R2: Representation) -> GaussianRational:
    """Per-object pairings averaged within each connected component and
    summed over components; this is the normalisation under which the
    pairing equals the intertwiner dimension on any groupoid."""
    _same_base(R1, R2)
    per = _object_pairings(character(R1), character(R2))
    total = Fraction(0)
    for comp in connected_components(R1.base).components:
        total = total + sum((per[x] for x in comp.objects), Fraction(0)) / len(comp.objects)
    return as_gaussian(total)


class NaturalTransformation(NamedTuple):
    """Per-object matrices ``components[x]: R(x) -> R'(x)``."""

    components: tuple[Matrix, ...]


def _unknown_layout(R1: Representation, R2: Representation):
    offs, acc = [], 0
    for x in R1.base.objects:
        offs.append(acc)
        acc += R2.dim[x] * R1.dim[x]
    return offs, acc


def intertwiner_equations(R1: Representation, R2: Representation, all_morphisms: bool = False):
    """Rows of ``phi_{cod g} A_g - B_g phi_{dom g} = 0``.

    By default ``g`` ranges over :func:`generating_morphisms`, which has the
    same solution space as ranging over every morphism (naturality squares
    compose) at a fraction of the equations.  Unknown
    ``offs[x] + i*dim1[x] + j`` is entry ``(i, j)`` of ``phi_x``.
    """
    _same_base(R1, R2)
    G = R1.base
    offs, n = _unknown_layout(R1, R2)
    rows = []
    for g in (G.morphisms if all_morphisms else generating_morphisms(G)):
        x, y = G.dom[g], G.cod[g]
        A, B = R1.mat[g], R2.mat[g]
        d1x, d1y, d2x, d2y = R1.dim[x], R1.dim[y], R2.dim[x], R2.dim[y]
        for i in range(d2y):
            for j in range(d1x):
                row: dict[int, Scalar] = {}
                for l in range(d1y):
                    a = A[l][j]
                    if a:
                        c = offs[y] + i * d1y + l
                        row[c] = row.get(c, 0) + a
                for l in range(d2x):
                    b = B[i][l]
                    if b:
                        c = offs[x] + l * d1x + j
                        row[c] = row.get(c, 0) - b
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows, n


def natural_transformations(R1: Representation, R2: Representation) -> list[NaturalTransformation]:
    """Basis of ``Nat(R1, R2)`` from the null space of the intertwiner system."""
    rows, n = intertwiner_equations(R1, R2)
    basis = Echelon().extend(rows).nullspace(n)
    return [vector_to_nat(R1, R2, v) for v in basis]


def nat_space_dim(R1: Representation, R2: Representation, all_morphisms: bool = False) -> int:
    rows, n = intertwiner_equations(R1, R2, all_morphisms)
    return n - Echelon().extend(rows).rank


def vector_to_nat(R1, R2, vec) -> NaturalTransformation:
    offs, _ = _unknown_layout(R1, R2)
    comps = []
    for x in R1.base.objects:
        d1, d2 = R1.dim[x], R2.dim[x]
        comps.append(tuple(tuple(vec.get(offs[x] + i * d1 + j, 0) for j in range(d1))
                           for i in range(d2)))
    return NaturalTransformation(tuple(comps))


def is_natural(R1: Representation, R2: Representation, phi: NaturalTransformation,
               all_morphisms: bool = True) -> bool:
    G = R1.base
    for g in (G.morphisms if all_morphisms else generating_morphisms(G)):
        x, y = G.dom[g], G.cod[g]
        if matmul(phi.components[y], R1.mat[g]) != matmul(R2.mat[g], phi.components[x]):
            return False
    return True


def restrict(R: Representation, H: Subgroupoid) -> Representation:
    """Restriction along ``H -> base``, as a representation of ``H.as_groupoid()``."""
    if H.parent is not R.base and H.parent != R.base:
        raise RepresentationError("subgroupoid of a different groupoid")
    Hg, objs, mors = H.embedded
    return Representation(Hg, tuple(R.dim[x] for x in objs), tuple(R.mat[g] for g in mors))


# --- induction --------------------------------------------------------------

def _check_induction(G: FiniteGroupoid, H: Subgroupoid, base: FiniteGroupoid):
    if not H.wide:
        raise NotWideError("induction is implemented along wide inclusions only")
    if H.parent is not G and H.parent != G:
        raise RepresentationError("H is not a subgroupoid of G")
    if base != H.as_groupoid():
        raise RepresentationError("input must live over H.as_groupoid()")


@dataclass(frozen=True, eq=False)
class InducedGSet(GSet):
    """Induced G-set.  ``classes[x][c]`` lists the pairs ``(leg, element)``
    of ``coprod_{l: H-object -> x} X(dom l)`` glued into element ``c``."""

    classes: tuple[tuple[tuple[tuple[int, int], ...], ...], ...] = ()


def induce_gset(G: FiniteGroupoid, H: Subgroupoid, X: GSet) -> InducedGSet:
    """Colimit of ``Incl/x -> H -> set`` at each object ``x``.

    Elements are pairs ``(l, e)`` with ``l`` a leg into ``x`` and ``e`` in
    ``X(dom l)``, glued along ``(k h, e) ~ (k, X(h) e)`` for ``h`` in H.
    """
    _check_induction(G, H, X.base)
    _, _, hmor = H.embedded
    hpos = {h: i for i, h in enumerate(hmor)}
    all_classes = []
    class_of: dict[tuple[int, int], tuple[int, int]] = {}
    for x in G.objects:
        pairs = [(l, e) for l in G.incoming[x] for e in range(X.carrier_size[G.dom[l]])]
        ppos = {p: i for i, p in enumerate(pairs)}
        uf = UnionFind(len(pairs))
        for k in G.incoming[x]:
            for h in H.incoming[G.dom[k]]:
                act = X.action[hpos[h]]
                kh = G.compose(k, h)
                for e in range(len(act)):
                    uf.union(ppos[kh, e], ppos[k, act[e]])
        cls = tuple(tuple(pairs[i] for i in block) for block in uf.classes())
        for c, members in enumerate(cls):
            for p in members:
                class_of[p] = (x, c)
        all_classes.append(cls)
    action = []
    for u in G.morphisms:
        row = []
        for members in all_classes[G.dom[u]]:
            images = {class_of[G.compose(u, l), e][1] for l, e in members}
            if len(images) != 1:
                raise AssertionError(f"induced action of {u} is not well defined")
            row.append(images.pop())
        action.append(tuple(row))
    return InducedGSet(G, tuple(len(c) for c in all_classes), tuple(action),
                       tuple(all_classes))


@dataclass(frozen=True, eq=False)
class InducedRepresentation(Representation):
    """``basis[x]`` lists the ``(leg, coordinate)`` pairs whose classes form
    the chosen basis of the fiber at ``x``."""

    basis: tuple[tuple[tuple[int, int], ...], ...] = ()


def induce_rep(G: FiniteGroupoid, H: Subgroupoid, R: Representation) -> InducedRepresentation:
    """Left Kan extension of ``R`` along the inclusion of a wide H.

    The fiber at ``x`` is ``(+)_{l -> x} R(dom l)`` modulo the span of
    ``e_{kh} (x) v - e_k (x) R(h) v``.  Relations pivot on their highest
    coordinate so the surviving basis is the lowest-index coordinates.
    """
    _check_induction(G, H, R.base)
    _, hobj, hmor = H.embedded
    hpos = {h: i for i, h in enumerate(hmor)}
    opos = {x: i for i, x in enumerate(hobj)}

    fibers = []
    for x in G.objects:
        legs = G.incoming[x]
        start, acc = {}, 0
        for l in legs:
            start[l] = acc
            acc += R.dim[opos[G.dom[l]]]
        ech = Echelon(high_pivots=True)
        for k in legs:
            for h in H.incoming[G.dom[k]]:
                M = R.mat[hpos[h]]
                kh = G.compose(k, h)
                for v in range(R.dim[opos[G.dom[h]]]):
                    rel: dict[int, Scalar] = {start[kh] + v: 1}
                    for r in range(len(M)):
                        if M[r][v]:
                            c = start[k] + r
                            rel[c] = rel.get(c, 0) - M[r][v]
                    ech.add(rel)
        coords = [(l, v) for l in legs for v in range(R.dim[opos[G.dom[l]]])]
        free = [i for i in range(acc) if i not in ech.rows]
        fibers.append((start, ech, free, coords))

    mats = []
    for u in G.morphisms:
        sx, _, free_x, coords_x = fibers[G.dom[u]]
        sy, ech_y, free_y, _ = fibers[G.cod[u]]
        col_of = {c: i for i, c in enumerate(free_y)}
        cols = []
        for i in free_x:
            l, v = coords_x[i]
            rem = ech_y.reduce({sy[G.compose(u, l)] + v: 1})
            col = [0] * len(free_y)
            for c, val in rem.items():
                col[col_of[c]] = simplify(val)
            cols.append(col)
        mats.append(tuple(tuple(cols[j][i] for j in range(len(free_x)))
                          for i in range(len(free_y))))
    dims = tuple(len(f[2]) for f in fibers)
    basis = tuple(tuple(f[3][i] for i in f[2]) for f in fibers)
    return InducedRepresentation(G, dims, tuple(mats), basis)


def induced_coset_bijection(G: FiniteGroupoid, H: Subgroupoid):
    """Match ``induce_gset(G, H, terminal)`` with ``G/H`` fiberwise.

    Each induced element is a class of legs; it is sent to the coset that
    contains those legs.  Returns ``(mapping, violations)`` where
    ``mapping[x][c]`` is the coset index of induced element ``c`` at ``x``.
    """
    from .action import terminal_gset
    from .coset import left_cosets

    ind = induce_gset(G, H, terminal_gset(H.as_groupoid()))
    cos = left_cosets(G, H)
    out, mapping = [], []
    for x in G.objects:
        row = []
        for c, members in enumerate(ind.classes[x]):
            targets = {cos.coset_of[l][1] for l, _ in members}
            if len(targets) != 1:
                out.append(Violation("legs-split", (x, c)))
            row.append(min(targets))
        if sorted(row) != list(range(cos.carrier_size[x])):
            out.append(Violation("not-bijective", (x,)))
        mapping.append(tuple(row))
    if out:
        return tuple(mapping), out
    for u in G.morphisms:
        x = G.dom[u]
        for c in range(ind.carrier_size[x]):
            if mapping[G.cod[u]][ind.action[u][c]] != cos.action[u][mapping[x][c]]:
                out.append(Violation("not-equivariant", (u, c)))
    return tuple(mapping), out
