import pytest
from hypothesis import given, strategies as st

from gpdcoset.builder import ExpressionError, build, gen_random
from gpdcoset.groupoid import (connected_components, coproduct, cyclic_group, pair_groupoid,
                               product, subgroupoid_violations, symmetric_group, validate)
from gpdcoset.textio import serialize_groupoid, serialize_subgroupoid


def test_builder_expressions():
    assert build("pair(2)") == pair_groupoid(2)
    assert build(" product( sym(3) , pair(2) ) ") == product(symmetric_group(3), pair_groupoid(2))
    assert build("coproduct(cyclic(2),pair(1))") == coproduct(cyclic_group(2), pair_groupoid(1))


def test_builder_file_atom():
    seen = []
    G = build("product(file(a/b.gpd),cyclic(2))", lambda p: seen.append(p) or pair_groupoid(2))
    assert seen == ["a/b.gpd"]
    assert G.object_count == 2


@pytest.mark.parametrize("bad", ["pair(0)", "pair(2", "bogus(1)", "product(pair(1))",
                                 "pair(1) pair(2)", "", "pair(x)"])
def test_builder_errors(bad):
    with pytest.raises(ExpressionError):
        build(bad)


@given(st.integers(0, 10**9), st.integers(1, 5), st.integers(1, 6))
def test_gen_random_is_deterministic_and_valid(seed, mo, mg):
    a, b = gen_random(seed, mo, mg), gen_random(seed, mo, mg)
    assert serialize_groupoid(a.groupoid) == serialize_groupoid(b.groupoid)
    assert serialize_subgroupoid(a.h) == serialize_subgroupoid(b.h)
    assert serialize_subgroupoid(a.k) == serialize_subgroupoid(b.k)
    G = a.groupoid
    assert validate(G) == []
    assert G.object_count <= mo
    assert 1 <= len(connected_components(G)) <= 3
    for S in (a.h, a.k):
        assert S.wide
        assert subgroupoid_violations(G, S.objects, S.morphisms) == []


def test_gen_random_reaches_sym3():
    exprs = {gen_random(s, 3, 6).expression for s in range(200)}
    assert any("sym(3)" in e for e in exprs)
    assert not any("sym(3)" in gen_random(s, 3, 5).expression for s in range(200))
