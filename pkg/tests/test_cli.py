import json

import pytest

from sumprod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    assert data["schema"] == 1 and data["command"] == argv[0]
    return data


def test_ring_check(capsys):
    data = run_json(capsys, "ring-check", "--ring", "m2f2")
    assert data["ok"] and not data["commutative"] and data["one"] == 9
    assert data["units"] == [6, 7, 9, 11, 13, 14]


def test_setop_sum_and_symbolic_input(capsys):
    data = run_json(capsys, "setop", "--ring", "gf9", "--op", "sum", "--set", "{1,α}")
    assert data["result"] == [2, 4, 6]  # 2, 1+α, 2α


@pytest.mark.parametrize("op", ["difference", "product", "iterated-sum", "iterated-product", "energy"])
def test_setop_variants(capsys, op):
    run_json(capsys, "setop", "--ring", "z7", "--op", op, "--set", "{1,2,4}")


def test_sr_fixture(capsys):
    data = run_json(capsys, "sr", "--ring", "gf9", "--set", "{0,1,2}", "--tau", "5")
    assert data["sr"]["members"] == [0, 1, 2]


def test_structure_and_freiman(capsys):
    d = run_json(capsys, "structure", "--ring", "gf9", "--set", "{α,2α}", "--mode", "hom-unit", "--a", "α", "--tau", "5")
    assert d["certificate"]["variant"] == "DilatedSubring" and d["certificate"]["normalizes"] and d["validated"]
    f = run_json(capsys, "freiman", "--ring", "gf9", "--set", "{α,2α}")
    assert f["model"]["size"] == 3 and f["model"]["phi_is_identity"]


def test_set_file_and_ruzsa(capsys, tmp_path):
    p = tmp_path / "sets.txt"
    p.write_text("# two sets\n{0,1,2,3}\n{0,1}\n")
    d = run_json(capsys, "ruzsa", "--ring", "z12", "--set-file", str(p), "--op", "cover")
    assert d["witness"]["X"] == [0, 2] and d["validated"]


def test_out_file(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, stdout, _ = run(capsys, "--out", str(out), "growth", "--ring", "z7", "--set", "{1,2}")
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["command"] == "growth"


def test_exit_codes(capsys):
    assert run(capsys, "growth", "--ring", "z7")[0] == 1  # no set
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "growth", "--ring", "nope", "--set", "{1}")[0] == 1
    code, _, err = run(capsys, "structure", "--ring", "z11", "--set", "{1,2,3}", "--k", "1")
    assert code == 2 and "hypothesis" in err


def test_sweep_and_export(capsys, tmp_path):
    args = ["sweep", "--recipe", "inhom", "--rings", "z7,gf9", "--gen", "random:3", "--seed", "5", "--count", "2"]
    one = run(capsys, *args, "--threads", "1")[1]
    many = run(capsys, *args, "--threads", "4")[1]
    assert one == many
    data = json.loads(one)
    assert [r["instance_id"] for r in data["rows"]] == [0, 1, 2, 3]
    assert "wall_time" not in data["rows"][0]
    src = tmp_path / "sweep.json"
    src.write_text(one)
    code, csv_text, _ = run(capsys, "export", "--input", str(src))
    assert code == 0
    lines = csv_text.strip().splitlines()
    assert lines[0] == "instance_id,ring,card_A,K_inhom,K_hom,outcome,ratio" and len(lines) == 5


def test_export_empty(capsys, tmp_path):
    src = tmp_path / "empty.json"
    src.write_text(json.dumps({"schema": 1, "rows": []}))
    assert run(capsys, "export", "--input", str(src))[0] == 1
