import pytest
from hypothesis import given

from conftest import groupoid_with_wide_pair, groupoids, s3_transposition
from gpdcoset.coset import double_cosets, left_cosets
from gpdcoset.fnspace import invariant_function_space, s_map
from gpdcoset.groupoid import cyclic_group, pair_groupoid
from gpdcoset.linrep import Representation, permutation_rep
from gpdcoset.scalars import GaussianRational
from gpdcoset.textio import (ParseError, ValidationError, parse_function, parse_groupoid,
                             parse_gset, parse_nat, parse_partition, parse_rep, parse_subgroupoid,
                             serialize_function, serialize_groupoid, serialize_gset, serialize_nat,
                             serialize_partition, serialize_rep, serialize_subgroupoid)

PAIR2 = """\
# Pair(2)
objects: 2
morphisms: 4
dom: 0 0 1 1
cod: 0 1 0 1
id: 0 3
inv: 0 2 1 3
compose:
0 0 0
1 0 1
2 1 0
3 1 1
0 2 2
1 2 3
2 3 2
3 3 3
"""


def test_parse_pair2_file():
    G = parse_groupoid(PAIR2)
    assert (G.object_count, G.morphism_count) == (2, 4)
    assert G == pair_groupoid(2)


@given(groupoids)
def test_groupoid_round_trip_is_byte_identical(G):
    text = serialize_groupoid(G)
    H = parse_groupoid(text)
    assert H == G
    assert serialize_groupoid(H) == text


def test_missing_compose_entry_names_the_pair():
    text = PAIR2.replace("\n1 0 1\n", "\n")
    with pytest.raises(ParseError, match=r"\(1, 0\)") as e:
        parse_groupoid(text, "p.gpd")
    assert e.value.line == 8


def test_duplicate_key_is_line_numbered():
    text = PAIR2.replace("id: 0 3\n", "id: 0 3\nid: 0 3\n")
    with pytest.raises(ParseError, match="duplicate key 'id'") as e:
        parse_groupoid(text)
    assert e.value.line == 7


def test_non_associative_patch_fails_validation():
    G = cyclic_group(3)
    text = serialize_groupoid(G).replace("1 1 2\n", "1 1 0\n")
    with pytest.raises(ValidationError) as e:
        parse_groupoid(text)
    assert any(v.axiom == "associativity" for v in e.value.violations)


@pytest.mark.parametrize("bad,msg", [
    ("objects: x\n", "natural"),
    ("bogus: 1\n", "unknown key"),
    ("dom: 0 0 1\n", "expected 4"),
])
def test_malformed_headers(bad, msg):
    key = bad.split(":")[0]
    lines = [l for l in PAIR2.splitlines(True) if not l.startswith(key + ":")]
    with pytest.raises(ParseError, match=msg):
        parse_groupoid(bad + "".join(lines))


@given(groupoid_with_wide_pair())
def test_subgroupoid_and_gset_round_trip(inst):
    G, H, _ = inst
    text = serialize_subgroupoid(H)
    assert parse_subgroupoid(text, G) == H
    X = left_cosets(G, H)
    text = serialize_gset(X)
    Y = parse_gset(text, G)
    assert (Y.carrier_size, Y.action) == (X.carrier_size, X.action)
    assert serialize_gset(Y) == text


def test_rep_round_trip_with_complex_entries():
    C4 = cyclic_group(4)
    i = GaussianRational(0, 1)
    R = Representation(C4, (1,), tuple(((i ** k,),) for k in range(4)))
    text = serialize_rep(R)
    assert "mat 1:\n0+1*i" in text
    assert parse_rep(text, C4) == R
    G, H = s3_transposition()
    P = permutation_rep(left_cosets(G, H))
    assert parse_rep(serialize_rep(P), G) == P


def test_rep_shape_checked():
    C2 = cyclic_group(2)
    with pytest.raises(ParseError, match="1x1"):
        parse_rep("rep over: -\ndims: 1\nmat 0:\n1 0\nmat 1:\n1\n", C2)


def test_function_nat_and_partition_round_trip():
    G, H = s3_transposition()
    space = invariant_function_space(G, H, H)
    phi = space.basis[1]
    assert parse_function(serialize_function(phi)) == phi
    nat = s_map(G, H, H, phi)
    assert parse_nat(serialize_nat(nat)) == nat
    part = double_cosets(G, H, H)
    text = serialize_partition(part)
    assert text == "block 0: 0 2\nblock 1: 1 3 4 5\n"
    assert tuple(parse_partition(text)) == part.blocks


def test_gset_loads_its_base_from_header(tmp_path):
    (tmp_path / "c2.gpd").write_text(serialize_groupoid(cyclic_group(2)))
    text = "gset over: c2.gpd\nsizes: 2\nact 0: 0 1\nact 1: 1 0\n"
    X = parse_gset(text, path=str(tmp_path / "swap.gset"))
    assert X.action == ((0, 1), (1, 0))
