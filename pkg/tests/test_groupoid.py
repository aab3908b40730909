from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import groupoid_with_wide_pair, groupoids, s3_transposition
from gpdcoset.groupoid import (DisconnectedError, FiniteGroupoid, GroupoidError, NotWideError,
                               Subgroupoid, closure, connected_components, coproduct, coset_classes,
                               cyclic_group, discrete, full_subgroupoid, generating_morphisms,
                               group_as_groupoid, index, is_connected, iso_bundle,
                               iso_subgroupoid, isotropy, pair_groupoid, product,
                               structure_decomposition, symmetric_group, validate, whole)


def test_pair_groupoid_shape():
    P = pair_groupoid(2)
    assert (P.object_count, P.morphism_count) == (2, 4)
    assert all(len(P.hom(x, y)) == 1 for x in range(3) for y in range(2) if x < 2)
    assert validate(pair_groupoid(3)) == []


def test_empty_groupoid_rejected():
    with pytest.raises(GroupoidError):
        pair_groupoid(0)


@pytest.mark.parametrize("G", [cyclic_group(4), symmetric_group(3), pair_groupoid(3),
                               product(cyclic_group(2), pair_groupoid(2)),
                               coproduct(symmetric_group(3), pair_groupoid(2))])
def test_constructors_validate(G):
    assert validate(G) == []


def test_symmetric_group_identity_first_and_order():
    S3 = symmetric_group(3)
    assert S3.identity == (0,)
    assert S3.morphism_count == 6
    # the transposition of 0 and 1 is an involution
    assert S3.compose(2, 2) == 0


def test_cayley_table_errors_name_the_problem():
    with pytest.raises(GroupoidError, match="associative"):
        group_as_groupoid([[0, 1, 1], [1, 0, 2], [1, 2, 0]])
    with pytest.raises(GroupoidError, match="identity"):
        group_as_groupoid([[0, 0], [0, 0]])


def test_validate_reports_non_associative_patch():
    G = cyclic_group(3)
    table = dict(G.table)
    table[1, 1] = 0  # 1+1 should be 2
    bad = validate(FiniteGroupoid(1, G.dom, G.cod, G.identity, G.inverse, table))
    axioms = {v.axiom for v in bad}
    assert "associativity" in axioms
    assert any(v.axiom == "associativity" and len(v.witness) == 3 for v in bad)


def test_validate_reports_missing_composite():
    P = pair_groupoid(2)
    table = dict(P.table)
    del table[1, 0]
    bad = validate(FiniteGroupoid(2, P.dom, P.cod, P.identity, P.inverse, table))
    assert ("missing-composite", (1, 0)) in {(v.axiom, v.witness) for v in bad}


@given(groupoids)
def test_hom_sets_of_connected_objects_have_isotropy_size(G):
    for comp in oracles.components(G):
        x = min(comp)
        for y in comp:
            for z in comp:
                assert len(G.hom(y, z)) == len(G.hom(x, x))


@given(groupoids)
def test_components_match_oracle(G):
    ours = {frozenset(c.objects) for c in connected_components(G).components}
    assert ours == {frozenset(c) for c in oracles.components(G)}


@given(groupoids, st.lists(st.integers(0, 10**6), max_size=3), st.booleans())
def test_closure_is_the_least_subgroupoid(G, raw, wide):
    seeds = [s % G.morphism_count for s in raw]
    H = closure(G, seeds, make_wide=wide)
    assert set(seeds) <= H.morphisms
    assert closure(G, H.morphisms, make_wide=wide) == H
    # least: naive saturation by composites and inverses reaches exactly H
    mors = set(seeds) | {G.identity[x] for x in (G.objects if wide else
                                               {G.dom[g] for g in seeds} | {G.cod[g] for g in seeds})}
    while True:
        new = {G.inverse[g] for g in mors} | {G.table[a, b] for a in mors for b in mors
                                               if (a, b) in G.table}
        if new <= mors:
            break
        mors |= new
    assert mors == set(H.morphisms)


def test_subgroupoid_invariants_are_enforced():
    P = pair_groupoid(2)
    with pytest.raises(GroupoidError, match="inverse-closure"):
        Subgroupoid(P, frozenset({0, 1}), frozenset({0, 3, 1}))


def test_iso_bundle_and_isotropy():
    G = product(cyclic_group(2), pair_groupoid(2))
    assert iso_bundle(G).morphism_count == 4
    assert len(isotropy(G, 1).morphisms) == 2
    assert iso_subgroupoid(G).wide


@given(groupoids)
def test_structure_decomposition_round_trips(G):
    for comp in connected_components(G).components:
        sub = comp.as_groupoid()
        for x in sub.objects:
            w = structure_decomposition(sub, x)
            assert w.check() == []
            assert w.target.morphism_count == sub.morphism_count


def test_structure_decomposition_needs_connected():
    with pytest.raises(DisconnectedError):
        structure_decomposition(coproduct(cyclic_group(2), pair_groupoid(1)), 0)


def test_generating_morphisms_generate():
    G = coproduct(product(symmetric_group(3), pair_groupoid(2)), cyclic_group(3))
    gens = generating_morphisms(G)
    assert closure(G, gens, make_wide=True) == whole(G)


def test_index_spot_value_pair2_discrete():
    P = pair_groupoid(2)
    r = index(P, discrete(P))
    assert r.index == 4
    assert r.formula == 4
    assert r.formula_text() == "2 * (1+1)"


def test_index_s3_transposition():
    G, H = s3_transposition()
    assert index(G, H).index == 3


def test_index_preconditions():
    P = pair_groupoid(2)
    with pytest.raises(NotWideError):
        index(P, full_subgroupoid(P, [0]))
    with pytest.raises(DisconnectedError):
        G = coproduct(P, P)
        index(G, discrete(G))


@given(groupoid_with_wide_pair())
def test_coset_classes_match_oracle(inst):
    G, H, _ = inst
    for x in G.objects:
        assert set(map(frozenset, coset_classes(G, H, x))) == oracles.left_cosets_at(G, H, x)


@given(groupoid_with_wide_pair())
def test_index_formula_on_connected_groupoids(inst):
    G, H, _ = inst
    if not is_connected(G):
        return
    total = sum(len(oracles.left_cosets_at(G, H, x)) for x in G.objects)
    r = index(G, H)
    assert r.index == total
    assert r.formula == Fraction(total)
