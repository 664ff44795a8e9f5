import json
import os

import pytest

from linkhom.main import main

CHAINS = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "chains")


def chain_path(name):
    return os.path.join(CHAINS, name)


def test_demo(capsys):
    assert main(["demo", "counterexample"]) == 0
    out = capsys.readouterr().out
    assert "fiber dim at t=0: 4, generic dim: 3, rm: 3, NOT FLAT" in out
    assert "condition III at t=0: FAIL" in out


def test_demo_json(capsys):
    assert main(["demo", "counterexample", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['format_version'] == 1
    assert doc['solve']['fiber_dims'] == [{'point': 't=0', 'dim': 4}]
    assert 'generated_at' not in doc


def test_timestamps(capsys):
    assert main(["demo", "counterexample", "--timestamps"]) == 0
    assert capsys.readouterr().out.startswith("generated: ")


@pytest.mark.parametrize("args,code", [
    (["check", chain_path("identity.chain")], 0),
    (["check", chain_path("counterexample.chain")], 1),
    (["solve", chain_path("counterexample.chain")], 2),
    (["solve", chain_path("counterexample.chain"), "--expect-failure"], 0),
    (["solve", chain_path("identity.chain"), "--expect-failure"], 2),
    (["solve", chain_path("split_roots.chain"), "--cross-check"], 0),
    (["structure", chain_path("counterexample.chain"), "--point", "0"], 1),
    (["structure", chain_path("split_roots.chain"), "--point", "t=1"], 0),
    (["structure", chain_path("identity.chain"), "--point", "generic"], 0),
    (["check", chain_path("does_not_exist.chain")], 3),
])
def test_exit_codes(args, code):
    assert main(args) == code


def test_check_reports_extra_point(capsys):
    assert main(["check", chain_path("counterexample.chain"), "--point", "t=1/2"]) == 1
    out = capsys.readouterr().out
    assert "warning: t=1/2 is not a special point" in out


def test_solve_basis_json(capsys):
    assert main(["solve", chain_path("identity.chain"), "--basis", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['is_vector_bundle'] and doc['rm'] == 2
    assert len(doc['kernel_basis']) == 2


def test_parse_error_points_at_source(tmp_path, capsys):
    bad = tmp_path / "bad.chain"
    bad.write_text('{\n  "r": 1,\n  "wrong": 2\n}\n', encoding='utf-8')
    assert main(["check", str(bad)]) == 3
    err = capsys.readouterr().err
    assert "bad.chain:3:2" in err
    assert "Parse Error" in err


@pytest.mark.parametrize("content,where", [
    (b'{\n  "r": 1,\n  "s": "\\x"\n}\n', "bad.chain:3:8"),
    (b'{\n  "r": \xff\xfe1\n}\n', "bad.chain:2:7"),
])
def test_undecodable_input_exits_3(tmp_path, capsys, content, where):
    bad = tmp_path / "bad.chain"
    bad.write_bytes(content)
    assert main(["check", str(bad)]) == 3
    err = capsys.readouterr().err
    assert where in err
    assert "Parse Error" in err


def test_usage_error_exits_3():
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 3


def test_bad_point_argument():
    with pytest.raises(SystemExit) as info:
        main(["check", chain_path("identity.chain"), "--point", "t=1/0"])
    assert info.value.code == 3


def test_gen_then_check(tmp_path, capsys):
    out = tmp_path / "valid.chain"
    assert main(["gen", "--r", "1", "--m", "3", "--m1", "2", "--n", "3", "--s", "t^2 - t",
                 "--seed", "3", "--out", str(out)]) == 0
    assert "// expect: check=0 solve=0" in out.read_text(encoding='utf-8')
    assert main(["check", str(out)]) == 0
    assert main(["solve", str(out)]) == 0


def test_gen_broken(tmp_path):
    out = tmp_path / "broken.chain"
    assert main(["gen", "--r", "1", "--m", "3", "--m1", "1", "--n", "3", "--s", "t^2",
                 "--break", "III", "--out", str(out)]) == 0
    assert main(["check", str(out)]) == 1
    assert main(["structure", str(out), "--point", "0"]) == 1


def test_gen_to_stdout(capsys):
    assert main(["gen", "--r", "1", "--m", "2", "--m1", "1", "--n", "2", "--s", "t"]) == 0
    assert capsys.readouterr().out.lstrip().startswith("// generated by linkhom gen")


def test_gen_infeasible(capsys):
    assert main(["gen", "--r", "1", "--m", "2", "--m1", "1", "--n", "3", "--s", "t",
                 "--break", "III"]) == 3
    assert "Infeasible Target" in capsys.readouterr().err
