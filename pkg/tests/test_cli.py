import json

from wcoset.cli import main
from wcoset.report import render_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_duality_pass(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "duality", "--pair", "sl", "--n", "2",
                     "--k1", "-14/5", "--max-degree", "4", "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["status"] == "pass"
    assert obj["command"] == "duality"
    degrees = [r["degree"] for r in obj["per_degree"]]
    assert degrees == [0, 1, 2, 3, 4]
    assert all(r["equal"] for r in obj["per_degree"])


def test_duality_excluded_level(capsys):
    code, _, err = run(capsys, "duality", "--pair", "sl", "--n", "2", "--k1", "-3")
    assert code == 2
    assert "excluded set" in err and "K1" in err
    code, _, err = run(capsys, "duality", "--pair", "sl", "--n", "2", "--k1", "-3/2")
    assert code == 2
    assert "excluded set" in err and "S1" in err


def test_duality_admissible_warns(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "duality", "--pair", "sl", "--n", "2",
                       "--k1", "-1/2", "--max-degree", "2", "--out", str(out))
    assert code == 0
    assert "admissible" in err


def test_json_round_trip_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        code, _, _ = run(capsys, "norm", "--pair", "so", "--n", "2",
                         "--seed", "5", "--out", str(out))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    obj = json.loads(a.read_text())
    assert render_json(obj) == a.read_bytes()


def test_kernel_csv(tmp_path, capsys):
    out = tmp_path / "k.csv"
    code, _, _ = run(capsys, "kernel", "--key", "rank1-ff", "--k1", "7/2",
                     "--max-degree", "6", "--format", "csv", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "degree,dim"
    assert [int(l.split(",")[1]) for l in lines[1:]] == [1, 0, 1, 1, 2, 2, 4]


def test_duality_csv_header(tmp_path, capsys):
    out = tmp_path / "d.csv"
    code, _, _ = run(capsys, "duality", "--pair", "so", "--n", "2", "--k1", "-5/2",
                     "--max-degree", "2", "--format", "csv", "--out", str(out))
    assert code == 0
    assert out.read_text().splitlines()[0] == "degree,dim_left,dim_right,equal"


def test_text_format_status_last(capsys):
    code, out, _ = run(capsys, "norm", "--pair", "sl", "--n", "2", "--format", "text")
    assert code == 0
    assert out.strip().splitlines()[-1] == "status: pass"


def test_gram_symbolic(capsys):
    code, out, _ = run(capsys, "gram", "--pair", "so", "--n", "3", "--symbolic")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_ks_check_cli(capsys):
    code, out, _ = run(capsys, "ks-check", "--pair", "sl", "--n", "2", "--symbolic")
    assert code == 0
    code, _, _ = run(capsys, "ks-check", "--pair", "sl", "--n", "2",
                     "--k2", "3", "--perturb", "drop-psi")
    assert code == 1


def test_resolution_cli(capsys):
    code, out, _ = run(capsys, "resolution", "--k1", "7/2", "--k2", "1/3",
                       "--max-degree", "2", "--terms", "1")
    assert code == 0
    obj = json.loads(out)
    assert [r["dim_left"] for r in obj["per_degree"]] == [1, 4, 12]


def test_negative_controls_exit_1(capsys):
    for name in ("drop-dc", "flip-companion", "drop-psi"):
        code, out, _ = run(capsys, "verify", "--control", name)
        assert code == 1, name


def test_bad_level_parse(capsys):
    code, _, _ = run(capsys, "duality", "--pair", "sl", "--n", "2", "--k1", "nope")
    assert code == 2


def test_cap_exit_3(capsys):
    code, _, err = run(capsys, "resolution", "--k1", "7/2", "--k2", "1/3",
                       "--max-degree", "3", "--cap", "10")
    assert code == 3
    assert "cap" in err


def test_config_file(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "wcoset.cfg"
    cfg.write_text("max-degree = 2\nseed = 9\nout-dir = .\ncap = 20000\n")
    monkeypatch.setenv("WCOSET_CONFIG", str(cfg))
    out = tmp_path / "d.json"
    code, _, _ = run(capsys, "duality", "--pair", "sl", "--n", "2",
                     "--k1", "-14/5", "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert [r["degree"] for r in obj["per_degree"]] == [0, 1, 2]
    # flags override the config
    code, _, _ = run(capsys, "duality", "--pair", "sl", "--n", "2",
                     "--k1", "-14/5", "--max-degree", "3", "--out", str(out))
    assert json.loads(out.read_text())["per_degree"][-1]["degree"] == 3


def test_bad_config_key(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("max_degree = 2\n")
    monkeypatch.setenv("WCOSET_CONFIG", str(cfg))
    code, _, err = run(capsys, "norm", "--pair", "sl", "--n", "1")
    assert code == 2


def test_catalog_lists_keys(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    obj = json.loads(out)
    ids = [i["id"] for i in obj["items"]]
    assert "subregular-sl:3:coset" in ids and "wakimoto-gl11" in ids
