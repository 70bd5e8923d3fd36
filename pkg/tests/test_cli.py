import json

import pytest

from cp2q.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "z[2]*z[1]")
    assert code == 0 and out.strip() == "(q^-1) * u31*u32"


def test_normal_form_json(capsys):
    code, out, _ = run(capsys, "normal-form", "z[1]*zs[1] + z[2]*zs[2] + z[3]*zs[3]", "--format", "json")
    assert code == 0 and json.loads(out)["normal_form"] == "1"


def test_normal_form_parse_error(capsys):
    code, _, err = run(capsys, "normal-form", "u[1,4]")
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "bogus")
    assert code == 2


def test_bad_q(capsys):
    code, _, err = run(capsys, "verify", "qcoeff", "--q", "1.5")
    assert code == 2


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "qcoeff", "--quick")
    rep = json.loads(out)
    assert code == 0
    assert rep["suite"] == "qcoeff" and "config" in rep
    for c in rep["checks"]:
        assert {"name", "anchor", "status"} <= set(c) and c["status"] in ("pass", "fail")


def test_verify_exterior(capsys):
    # the suite includes the (anti)holomorphic Hodge sign check, which fails for c3 < 0
    code, out, _ = run(capsys, "verify", "exterior", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "suite,name,anchor,status,residual,value"
    assert any("associativity on basis triples" in l and ",pass," in l for l in lines)
    assert code == 1


def test_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "algebra", "--quick", "--seed", "4")
    _, b, _ = run(capsys, "verify", "algebra", "--quick", "--seed", "4")
    assert a == b


def test_chern(capsys):
    code, out, _ = run(capsys, "chern", "--N", "2", "--q", "0.5")
    res = json.loads(out)
    assert code == 0
    assert (res["rank"], res["c1"], res["c2"]) == (1, 2, 3)
    assert {"N", "q", "cutoff", "traces", "tails"} <= set(res)


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--N", "1", "--nmax", "2", "--q", "0.5", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[1].split(",")[3] == "2.5"


def test_qchern(capsys):
    code, out, _ = run(capsys, "qchern", "--Nmax", "1", "--q", "0.5", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["N"] for r in rows] == [-1, 0, 1]
    assert set(rows[0]) == {"N", "tau2_ratio", "tau4_ratio", "phi_ch0", "chi0_ch0"}


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('format = "text"\nquick = true\n')
    code, out, _ = run(capsys, "verify", "qcoeff", "--config", str(cfg))
    assert code == 0 and out.strip().endswith("checks passed")
    code, out, _ = run(capsys, "verify", "qcoeff", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["suite"] == "qcoeff"


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text("colour = 3\n")
    code, _, _ = run(capsys, "verify", "qcoeff", "--config", str(cfg))
    assert code == 2


def test_resource_exit(capsys):
    code, _, err = run(capsys, "chern", "--N", "3", "--q", "0.5", "--cutoff", "2")
    assert code == 3 and json.loads(err)["error"] == "InconclusivePairing"


def test_golden_dir(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", "qcoeff", "--quick", "--golden-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "v1" / "q0.5_p200_r12" / "qcoeff.json").exists()
