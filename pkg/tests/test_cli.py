import json

import pytest

from clusterchar.cli import main


@pytest.fixture()
def a2_file(tmp_path):
    p = tmp_path / "a2.quiver"
    p.write_text("2\n1 2\n")
    return str(p)


@pytest.fixture()
def a3_file(tmp_path):
    p = tmp_path / "a3.quiver"
    p.write_text("3\n1 2\n2 3\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_quiver_validate(capsys, a2_file):
    code, out, _ = run(capsys, "quiver", "validate", a2_file)
    assert code == 0 and "valid quiver: 2 vertices" in out


def test_quiver_validate_json_input(capsys, tmp_path):
    p = tmp_path / "q.json"
    p.write_text(json.dumps({"n": 2, "arrows": [[1, 2]]}))
    code, out, _ = run(capsys, "quiver", "validate", str(p), "--json")
    assert code == 0
    assert json.loads(out) == {"valid": True, "n": 2, "arrows": [[1, 2]]}


def test_quiver_validate_loop_exits_1(capsys, tmp_path):
    p = tmp_path / "bad.quiver"
    p.write_text("1\n1 1\n")
    code, _, err = run(capsys, "quiver", "validate", str(p))
    assert code == 1 and "LoopFound" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "quiver", "validate", "/nonexistent.quiver")
    assert code == 2


def test_usage_error_exits_2(capsys, a2_file):
    code, _, err = run(capsys, "cc", a2_file, "--dim", "1,0,0")
    assert code == 2


def test_cc_dim(capsys, a2_file):
    code, out, _ = run(capsys, "cc", a2_file, "--dim", "1,0")
    assert code == 0 and out.strip() == "(1+x2)/x1"
    code, out, _ = run(capsys, "cc", a2_file, "--dim", "0,0")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "cc", a2_file, "--dim", "1,1")
    assert code == 0 and out.strip() == "(1+x2+x1)/(x1*x2)"


def test_cc_rep_file(capsys, a2_file, tmp_path):
    rep = {
        "quiver": {"n": 2, "arrows": [[1, 2]]},
        "field": "Q",
        "dims": [1, 1],
        "maps": [[[1]]],
    }
    p = tmp_path / "rep.json"
    p.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "cc", a2_file, "--rep", str(p))
    assert code == 0 and out.strip() == "(1+x2+x1)/(x1*x2)"


def test_genchar_values_and_cache_determinism(capsys, a2_file, tmp_path):
    cache = str(tmp_path / "chars.json")
    code1, out1, _ = run(capsys, "genchar", a2_file, "--gamma", "0,-1", "--cache", cache)
    assert code1 == 0 and out1.strip() == "x2"
    code2, out2, _ = run(capsys, "genchar", a2_file, "--gamma", "0,-1", "--cache", cache)
    assert code2 == 0 and out2 == out1
    with open(cache) as fh:
        assert len(json.load(fh)) == 1


def test_genchar_json_mode(capsys, a2_file):
    code, out, _ = run(capsys, "genchar", a2_file, "--gamma", "1,-1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {"nvars": 2, "terms": [{"coef": 1, "exp": [-1, 0]}, {"coef": 1, "exp": [-1, 1]}]}


def test_gendecomp_and_vgendecomp(capsys, a2_file):
    code, out, _ = run(capsys, "gendecomp", a2_file, "--dim", "2,1")
    assert code == 0 and out.strip() == "(1, 0) + (1, 1)"
    code, out, _ = run(capsys, "vgendecomp", a2_file, "--alpha=-1,0", "--json")
    assert code == 0
    assert json.loads(out) == {"betas": [[0, 1]], "gamma": [1, 0]}


def test_mutate(capsys, a2_file):
    code, out, _ = run(capsys, "mutate", a2_file, "--at", "1")
    assert code == 0
    assert "x1 = (1+x2)/x1" in out


def test_enumerate_json(capsys, a2_file):
    code, out, _ = run(capsys, "enumerate", a2_file, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["clusters"] == 5 and data["variables"] == 5 and data["closed"] is True
    assert len(data["variables_list"]) == 5


def test_byte_identical_stdout(capsys, a3_file):
    _, out1, _ = run(capsys, "genchar", a3_file, "--gamma", "1,0,-1", "--rng-seed", "77")
    _, out2, _ = run(capsys, "genchar", a3_file, "--gamma", "1,0,-1", "--rng-seed", "77")
    assert out1 == out2


def test_verify_subcommand(capsys, a3_file):
    code, out, _ = run(capsys, "verify", "cone-table-a3", a3_file)
    assert code == 0
    assert out.strip().endswith("PASS 9/9")


def test_config_file(capsys, a2_file, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("rng_seed = 99\nsample_bound = 6\n# comment\n")
    code, out, _ = run(capsys, "cc", a2_file, "--dim", "1,0", "--config", str(cfg))
    assert code == 0 and out.strip() == "(1+x2)/x1"


def test_config_env_var(capsys, a2_file, tmp_path, monkeypatch):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("rng_seed = 4242\n")
    monkeypatch.setenv("CLUSTERCHAR_CONFIG", str(cfg))
    code, out, _ = run(capsys, "genchar", a2_file, "--gamma", "1,0")
    assert code == 0 and out.strip() == "(1+x2+x1)/(x1*x2)"


def test_verify_failure_exits_1(capsys, a2_file):
    # monomial-containment requires the Kronecker quiver
    code, out, _ = run(capsys, "verify", "monomial-containment", a2_file)
    assert code == 1
    assert "FAIL" in out
