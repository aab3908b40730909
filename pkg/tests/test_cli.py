import json
from importlib import resources

import pytest

from gpdcoset.cli import main
from gpdcoset.textio import parse_groupoid, parse_subgroupoid

DATA = resources.files("gpdcoset") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_double_cosets_pair2_discrete(capsys):
    code, out, _ = run(capsys, "double-cosets", "pair(2)", "--h", "discrete", "--k", "discrete")
    assert code == 0
    assert out.splitlines()[0] == "double cosets = 4"
    assert sum(l.startswith("block ") for l in out.splitlines()) == 4


def test_cf_on_swap_gset(capsys):
    code, out, _ = run(capsys, "cf", str(DATA / "c2.gpd"), "--gset", str(DATA / "swap.gset"))
    assert code == 0
    assert "orbits = 1" in out.splitlines()
    assert "fixed-point average = 1" in out.splitlines()


def test_index_prints_value_and_formula(capsys):
    code, out, _ = run(capsys, "index", "pair(2)", "--h", "discrete")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index = 4"
    assert "2 * (1+1)" in lines[1]


def test_records_format_before_or_after_command(capsys):
    for argv in (["--format", "records", "info", "sym(3)"], ["info", "sym(3)", "--format", "records"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        recs = [json.loads(l) for l in out.splitlines()]
        assert {"kind": "info", "key": "morphisms", "value": 6} in recs


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", str(DATA / "pair2.gpd"))[0] == 0
    bad = tmp_path / "bad.gpd"
    text = (DATA / "c2.gpd").read_text()
    bad.write_text(text.replace("inv: 0 1", "inv: 1 0"))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "invalid" in out


def test_input_errors_exit_two(capsys):
    code, _, err = run(capsys, "info", "pair(0")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "index", "pair(2)", "--h", "missing.sub")
    assert code == 2


def test_gen_is_deterministic_and_writes_files(capsys, tmp_path):
    a = run(capsys, "gen", "--seed", "7")[1]
    b = run(capsys, "--seed", "7", "gen")[1]
    assert a == b and a.startswith("# expression: ")
    assert run(capsys, "gen", "--seed", "7", "--out", str(tmp_path))[0] == 0
    G = parse_groupoid((tmp_path / "G.gpd").read_text())
    H = parse_subgroupoid((tmp_path / "H.sub").read_text(), G)
    assert H.wide


def test_verify_single_instance(capsys):
    code, out, _ = run(capsys, "verify", "sym(3)", "--h", "closure:2", "--k", "closure:2")
    lines = out.splitlines()
    assert lines[-1].endswith("checks OK")
    assert any(l.startswith("FAIL double-coset-size ") for l in lines)
    assert code == 1


def test_characters_on_connected_groupoid(capsys):
    code, out, _ = run(capsys, "characters", "sym(3)", "--h", "closure:2")
    assert code == 0
    assert "<C[G/H],C[G/H]> = 2  per-component = 2  intertwiners = 2" in out


@pytest.mark.parametrize("argv", [["components", "coproduct(cyclic(2),pair(2))"]])
def test_components(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.splitlines() == ["component 0: 0", "component 1: 1 2"]
