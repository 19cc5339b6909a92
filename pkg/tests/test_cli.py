import json

import pytest

from btuples import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bnum_single(capsys):
    code, out, _ = run_cli(capsys, "bnum", "--field", "quadratic:-1", "--n", "3")
    assert code == 0 and out == "0\n"
    code, out, _ = run_cli(capsys, "bnum", "--field", "quadratic:-1", "--n", "2")
    assert code == 0 and out == "1\n"


def test_bnum_window(capsys):
    code, out, _ = run_cli(capsys, "bnum", "--field", "quadratic:-1", "--lo", "1", "--hi", "10")
    assert code == 0 and out == "1101100111\n"


def test_count(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--field", "quadratic:-1", "--family", "1,0:1,1", "--x", "50"
    )
    assert code == 0 and out == "10\n"


def test_gamma(capsys):
    code, out, _ = run_cli(
        capsys, "gamma", "--field", "quadratic:-1", "--family", "1,0:1,3"
    )
    assert code == 0 and out == "Pi'={3} gamma=5/3\n"


def test_bound(capsys):
    code, out, _ = run_cli(
        capsys, "bound", "--field", "quadratic:-1", "--family", "1,0:1,1",
        "--x", "100", "--y", "10",
    )
    assert code == 0 and out == "1000/9\n"


def test_field_info(capsys):
    code, out, _ = run_cli(capsys, "field-info", "--field", "cyclotomic:8", "--p", "17")
    assert code == 0
    assert "degree=4" in out and "p=17 f=1" in out


def test_landau_and_tauberian(capsys):
    code, out, _ = run_cli(capsys, "tauberian", "--field", "quadratic:-1", "--t", "10")
    assert code == 0 and out.startswith("1.95238095238")
    code, out, _ = run_cli(capsys, "landau", "--field", "quadratic:-1", "--x", "1000")
    assert code == 0 and float(out) > 0


def test_verify_prop_output(capsys):
    code, out, _ = run_cli(
        capsys, "verify-prop", "--field", "quadratic:-1", "--family", "1,0:1,1",
        "--p", "3", "--alpha-max", "3",
    )
    assert code == 0
    assert out.count("PASS") == 5 and "FAIL" not in out


def test_domain_errors_exit_one(capsys):
    code, _, err = run_cli(capsys, "bnum", "--field", "quadratic:4", "--n", "3")
    assert code == 1 and "squarefree" in err
    code, _, err = run_cli(
        capsys, "count", "--field", "quadratic:-1", "--family", "1,0:2,0", "--x", "5"
    )
    assert code == 1 and "cross product" in err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--field", "quadratic:-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_scan_stdout_and_files(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "scan", "--field", "quadratic:-1", "--family", "1,0:1,1",
        "--grid", "100,1000",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,S,bound_num,bound_den,ratio,exponent_fit"
    assert lines[1].startswith("100,19,")

    csv_path = tmp_path / "scan.csv"
    json_path = tmp_path / "scan.json"
    code, _, _ = run_cli(
        capsys, "scan", "--field", "quadratic:-1", "--family", "1,0:1,1",
        "--grid", "100,1000", "--csv", str(csv_path), "--json", str(json_path),
    )
    assert code == 0
    assert csv_path.read_text().strip().split("\n")[0] == lines[0]
    doc = json.loads(json_path.read_text())
    assert doc["field"] == "quadratic:-1"
    assert "generated_at" in doc
    assert doc["rows"][0]["S"] == 19


def test_scan_deterministic_bytes(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        code, _, _ = run_cli(
            capsys, "scan", "--field", "quadratic:-1", "--family", "1,0:1,1",
            "--grid", "100,1000,10000", "--seed", "0", "--csv", str(path),
        )
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_file_with_flag_override(capsys, tmp_path):
    config = tmp_path / "exp.cfg"
    config.write_text(
        "# twins experiment\n"
        "field = quadratic:-1\n"
        "family = 1,0:1,1\n"
        "grid = 100,1000\n"
        "y_rule = sqrt\n"
        "seed = 0\n"
    )
    code, out, _ = run_cli(capsys, "--config", str(config), "scan")
    assert code == 0
    assert out.strip().split("\n")[1].startswith("100,19,")

    # a flag overrides the config value
    code, out2, _ = run_cli(
        capsys, "--config", str(config), "scan", "--family", "1,0:1,2"
    )
    assert code == 0
    assert out2 != out

    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    code, _, err = run_cli(capsys, "--config", str(bad), "scan")
    assert code == 1 and "unknown config key" in err


def test_scan_fixed_y_rule(capsys):
    code, out, _ = run_cli(
        capsys, "scan", "--field", "quadratic:-1", "--family", "1,0:1,1",
        "--grid", "100,200", "--y-rule", "fixed:10",
    )
    assert code == 0
    assert out.strip().split("\n")[1].split(",")[2:4] == ["1000", "9"]
