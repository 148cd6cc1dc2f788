import json

import pytest

from qsetalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_header_echoes_config(capsys):
    code, out, _ = run(capsys, "--seed", "5", "sets", "code", "{}")
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("# qsetalg sets |")
    assert "seed=5" in first and "mode=exact" in first


def test_sets_operations(capsys):
    code, out, _ = run(capsys, "sets", "xor", "{{},{{}}}", "{{}}")
    assert code == 0
    assert out.splitlines()[1] == "{{{}}}"
    code, out, _ = run(capsys, "sets", "or", "{{}}", "{{}}")
    assert out.splitlines()[1] == "OM"
    code, out, _ = run(capsys, "sets", "decode", "11")
    assert out.splitlines()[1] == "{{},{{}},{{},{{}}}}"
    code, out, _ = run(capsys, "sets", "info", "{{},{{}}}")
    assert out.splitlines()[1] == "code=3 grade=2 rank=2"
    code, out, _ = run(capsys, "sets", "enumerate", "2")
    assert len(out.splitlines()) == 5


def test_sets_usage_errors(capsys):
    code, _, err = run(capsys, "sets", "xor", "{}")
    assert code == 2
    assert "error:" in err
    code, _, err = run(capsys, "sets", "decode", "x")
    assert code == 2


def test_qset_pipeline(tmp_path, capsys):
    code, out, _ = run(capsys, "qset", "embed", "{{},{{}}}")
    assert code == 0
    payload = out.splitlines()[1]
    assert json.loads(payload) == [["{{},{{}}}", 1, 1]]
    a = tmp_path / "a.json"
    a.write_text(payload)
    code, out, _ = run(capsys, "qset", "grassmann", str(a), str(a))
    assert code == 0
    assert json.loads(out.splitlines()[1]) == []
    code, out, _ = run(
        capsys, "qset", "clifford", str(a), str(a), "--rank", "2",
        "--metric", "hyperbolic",
    )
    assert code == 0
    code, out, _ = run(capsys, "qset", "norm", str(a), "--rank", "2")
    assert out.splitlines()[1] == "0"
    code, out, _ = run(capsys, "qset", "signature", "--rank", "3")
    assert out.splitlines()[1] == "dimension=16 plus=4 minus=4 zero=8"


def test_qset_bad_file(capsys, tmp_path):
    missing = tmp_path / "nope.json"
    code, _, err = run(capsys, "qset", "norm", str(missing), "--rank", "2")
    assert code == 2
    assert "cannot read" in err


def test_gamma_and_out_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QSETALG_OUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "gamma", "2", "1", "--json", "g.json")
    assert code == 0
    assert "anticommutator defect=0" in out
    data = json.loads((tmp_path / "g.json").read_text())
    assert data["dim"] == 2
    assert data["eta"] == [1, 1, -1]


def test_structure_killing_contract(capsys):
    code, out, _ = run(capsys, "structure", "so3")
    assert code == 0
    assert "classification: semisimple" in out
    code, out, _ = run(capsys, "killing", "so3")
    assert "det = -8" in out
    code, out, _ = run(capsys, "contract", "so21", "--eps", "1/100")
    assert code == 0
    assert "limit classification: nilpotent" in out
    assert "PASS" in out
    code, _, err = run(capsys, "structure", "nosuch")
    assert code == 2
    code, _, err = run(capsys, "contract", "so3")
    assert code == 2
    assert "no default weights" in err


def test_contract_custom_weights(capsys):
    code, out, _ = run(
        capsys, "contract", "so3", "--weights", "1/2,1/2,1"
    )
    assert code == 0
    assert "limit classification: nilpotent" in out


def test_yang_commands(capsys):
    code, out, _ = run(capsys, "yang", "table", "--preset", "3-3")
    assert code == 0
    assert "mu signature (3, 1)" in out
    code, out, _ = run(capsys, "yang", "contract")
    assert code == 0
    assert out.count("PASS") == 5
    code, out, _ = run(capsys, "yang", "defect", "--capacity", "100")
    assert code == 0
    assert "worst defect: 1/200" in out
    code, _, err = run(capsys, "yang", "defect", "--capacity", "99")
    assert code == 2
    code, out, _ = run(capsys, "yang", "units")
    assert "action: N^-1*ebar*xbar" in out
    code, out, _ = run(
        capsys, "yang", "accumulate", "--frame", "feynman", "--steps", "2"
    )
    assert code == 0
    assert "t (square -1, unit i*lstep)" in out


def test_palev_commands(capsys):
    code, out, _ = run(capsys, "palev", "deviation", "--capacity", "4")
    assert code == 0
    assert "level 1: deviation 1/2" in out
    code, out, _ = run(capsys, "palev", "ladder", "--capacity", "3")
    assert "1, 1/3, -1/3, -1" in out
    code, out, _ = run(capsys, "palev", "exclusion", "--capacity", "6")
    assert code == 0
    assert "|adag^6| = 720" in out
    assert "|adag^7| = 0" in out
    code, out, _ = run(
        capsys, "palev", "carriers", "--capacity", "4", "--preset", "spin21"
    )
    assert code == 0
    code, out, _ = run(
        capsys, "palev", "normal-order", "--system", "h1", "--word", "p,q,q"
    )
    assert code == 0
    assert "q*q*p" in out
    code, _, err = run(
        capsys, "palev", "normal-order", "--system", "nosuch", "--word", "p,q"
    )
    assert code == 2


def test_net_commands(capsys, tmp_path):
    from qsetalg.vertexnet import GammaVertex, IotaNode, VertexNetwork

    g = GammaVertex(2, 1)
    trace = VertexNetwork(
        [g], edges=[((0, "dual"), (0, "spinor"))], open_legs=[(0, "vector")]
    )
    f = tmp_path / "trace.json"
    f.write_text(json.dumps(trace.to_json()))
    code, out, _ = run(capsys, "net", "eval", str(f))
    assert code == 0
    assert "[0, 0, 0]" in out
    code, out, _ = run(capsys, "net", "check", str(f))
    assert code == 0
    assert "PASS" in out
    code, out, _ = run(capsys, "net", "parity", str(f))
    assert code == 0

    bad = VertexNetwork(
        [IotaNode(2, 2)], edges=[], open_legs=[(0, "out"), (0, "in")]
    )
    f2 = tmp_path / "iota.json"
    f2.write_text(json.dumps(bad.to_json()))
    code, out, _ = run(capsys, "net", "parity", str(f2))
    assert code == 1
    assert "FLAG" in out
    code, _, err = run(capsys, "net", "eval", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_all_passes_and_repeats_bytewise(capsys):
    code, out1, _ = run(capsys, "verify-all")
    assert code == 0
    code, out2, _ = run(capsys, "verify-all")
    assert out1 == out2
    assert "result: 13/13 checks passed" in out1


def test_verify_all_float_mode(capsys):
    code, out, _ = run(
        capsys, "--mode", "float", "--tolerance", "1e-9", "verify-all"
    )
    assert code == 0
    assert "mode=float" in out


def test_argparse_usage_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 2


def test_bad_config_is_usage_error(capsys):
    code, _, err = run(capsys, "--mode", "exact", "--tolerance", "-3", "verify-all")
    assert code == 2
