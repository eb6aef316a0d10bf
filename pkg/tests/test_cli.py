import csv
import io
import json
import math

import pytest

from qprlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_hesse(capsys):
    code, out, _ = run(capsys, "analyze", "--dim", "3", "--frame", "sic-minus", "--fiducial-t", "0")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert abs(rep["N"] - 1 / 3) < 1e-12
    assert abs(rep["N_U"] - 1) < 1e-12
    assert abs(rep["N_C"] - 5 / 3) < 1e-12
    assert rep["within_bounds"] is True


def test_analyze_wootters_d4(capsys):
    code, out, _ = run(capsys, "analyze", "--dim", "4", "--frame", "wootters")
    rep = json.loads(out)
    assert code == 0
    assert abs(rep["N"] - 0.5) < 1e-12 and abs(rep["N_U"] - 2) < 1e-12
    assert abs(rep["N_C"] - (2 + math.sqrt(3) / 2)) < 1e-12


def test_analyze_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--dim", "2", "--frame", "wootters", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][:5] == ["dim", "kind", "N", "N_U", "N_C"]
    assert rows[1][1] == "wootters"


def test_bad_fiducial_file_exits_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 3, "tol": 1e-10, "amplitudes": [[0.9, 0], [0, 0], [0, 0]]}))
    code, _, err = run(capsys, "analyze", "--dim", "3", "--frame", "sic-minus", "--fiducial-file", str(bad))
    assert code == 3
    assert "unit norm" in err


def test_unparseable_fiducial_exits_4(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("dim 3\ntol 1e-10\n1 0\n")
    assert run(capsys, "analyze", "--dim", "3", "--fiducial-file", str(bad))[0] == 4
    assert run(capsys, "analyze", "--dim", "3", "--fiducial-file", str(tmp_path / "missing.txt"))[0] == 4


def test_not_a_sic_exits_3(capsys, tmp_path):
    bad = tmp_path / "flat.txt"
    bad.write_text("dim 3\ntol 1e-10\n1 0\n0 0\n0 0\n")
    assert run(capsys, "validate-sic", "--dim", "3", "--fiducial-file", str(bad))[0] == 3


def test_missing_fiducial_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "--dim", "5", "--frame", "sic-minus")
    assert code == 2
    assert "--fiducial-file" in err


def test_argparse_errors_exit_2(capsys):
    for argv in (["analyze", "--dim", "1"], ["verify", "--which", "thm9"], ["bogus"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    assert run(capsys, "scan-d3", "--steps", "1")[0] == 2


def test_data_dir_fiducial(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", "--dim", "5", "--frame", "sic-minus", "--data-dir", data_dir)
    assert code == 0
    rep = json.loads(out)
    assert abs(rep["N"] - (math.sqrt(6) - 1) / 5) < 1e-6


def test_data_dir_from_environment(capsys, data_dir, monkeypatch):
    monkeypatch.setenv("QPRLAB_DATA", data_dir)
    assert run(capsys, "analyze", "--dim", "4", "--frame", "sic-plus")[0] == 0


def test_verify_thm5(capsys):
    code, out, err = run(capsys, "verify", "--which", "thm5", "--dim", "3", "--samples", "1000", "--seed", "7")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    assert "PASS" in err and "FAIL" not in err


def test_verify_thm2(capsys):
    code, out, _ = run(capsys, "verify", "--which", "thm2", "--dim", "3")
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["thm2 sic-plus count = d^2"]["value"] == 9


def test_verify_lemmas_d5(capsys):
    code, out, _ = run(capsys, "verify", "--which", "lemmas", "--dim", "5", "--samples", "2000")
    assert code == 0
    for c in json.loads(out)["checks"]:
        assert c["passed"]


@pytest.mark.parametrize("which", ["thm1", "thm3", "thm4", "thm6", "born"])
def test_verify_other_suites(capsys, which):
    assert run(capsys, "verify", "--which", which, "--dim", "2", "--samples", "200")[0] == 0


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--which", "born", "--dim", "2", "--samples", "10", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "name,passed,value,bound,detail"


def test_verify_is_byte_identical(capsys):
    argv = ("verify", "--which", "thm3", "--dim", "3", "--samples", "300", "--seed", "5")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--threads", "4")
    assert first == second


def test_analyze_is_byte_identical(capsys):
    argv = ("analyze", "--dim", "3", "--frame", "custom", "--seed", "4")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_scan_d3(capsys):
    code, out, _ = run(capsys, "scan-d3", "--steps", "10")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert out.splitlines()[0] == "t,N,N_U,N_C,sic_ok,hw_covariant,label"
    assert len(rows) == 10
    assert rows[0]["label"] == "hesse"
    for r in rows:
        assert abs(float(r["N"]) - 1 / 3) < 1e-9
        assert abs(float(r["N_U"]) - 1) < 1e-9
        assert abs(float(r["N_C"]) - 5 / 3) < 1e-9
        assert r["sic_ok"] == "true" and r["hw_covariant"] == "true"


@pytest.mark.parametrize("d,key,value", [
    (2, "N_minus", (math.sqrt(3) - 1) / 2),
    (2, "N_plus", (math.sqrt(3) - 1) / 2),
    (3, "NU_upper", 7 / 3),
    (6, "wootters_NU", 5),
])
def test_bounds(capsys, d, key, value):
    code, out, _ = run(capsys, "bounds", "--dim", str(d))
    assert code == 0
    assert abs(json.loads(out)[key] - value) < 1e-12


def test_validate_sic_builtin(capsys):
    code, out, _ = run(capsys, "validate-sic", "--dim", "3", "--fiducial-t", "0.3")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_export_frame_round_trip(capsys, tmp_path):
    from qprlab.frames import frame_from_dict, validate_nqpr

    path = tmp_path / "frame.json"
    code, out, _ = run(capsys, "export-frame", "--dim", "3", "--frame", "wootters", "-o", str(path))
    assert code == 0 and out == ""
    f = frame_from_dict(json.loads(path.read_text()))
    assert f.kind == "wootters" and validate_nqpr(f).passed


def test_floats_use_17_digits(capsys):
    _, out, _ = run(capsys, "bounds", "--dim", "3")
    assert '"N_minus": 0.33333333333333331' in out
