import warnings
from pathlib import Path

import pytest

from wordalg.cli import emit_report, run
from wordalg.monalg import HorizonWarning

REPO_MORPHISMS = Path(__file__).resolve().parent.parent / "morphisms"

SUB_XY = "x y\nx -> xy\ny -> yyx\nweights: 1 2\n"
TM = "x y\nx -> xy\ny -> yx\nweights: 1 2\n"


@pytest.fixture()
def sub_xy_file(tmp_path):
    path = tmp_path / "sub_xy.morph"
    path.write_text(SUB_XY)
    return str(path)


@pytest.fixture()
def tm_file(tmp_path):
    path = tmp_path / "tm.morph"
    path.write_text(TM)
    return str(path)


@pytest.fixture(autouse=True)
def _quiet_horizon_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HorizonWarning)
        yield


def _record(capsys):
    out = capsys.readouterr().out.strip()
    rec = {}
    for line in out.splitlines():
        key, _, value = line.partition(": ")
        rec[key] = value
    return out, rec


def test_emit_report_is_flat_key_value():
    assert emit_report({"a": "1", "b": "x,y"}) == "a: 1\nb: x,y"


def test_word_command(sub_xy_file, capsys):
    code = run(["word", "--spec", sub_xy_file, "--start", "x", "--length", "5"])
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == "xyyyx"


def test_analyze_command(sub_xy_file, capsys):
    code = run(["analyze", "--spec", sub_xy_file])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["matrix"] == "1,1;1,2"
    assert rec["det"] == "1"
    assert rec["primitive"] == "true"


def test_certify_command_positive(sub_xy_file, capsys):
    code = run(["certify", "--spec", sub_xy_file, "--weights", "1,2", "--u", "xyy"])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["verdict"] == "CERTIFIED"
    assert rec["gcd_sequence"] == "5,13"


def test_certify_command_negative(tm_file, capsys):
    code = run(["certify", "--spec", tm_file, "--weights", "1,2"])
    out, rec = _record(capsys)
    assert code == 1
    assert rec["verdict"] == "NOT_APPLICABLE"
    assert rec["reason"] == "det=0"


def test_scan_command(tm_file, capsys):
    code = run(["scan", "--spec", tm_file, "--dmax", "4", "--horizons", "1000,5000"])
    out, rec = _record(capsys)
    assert code == 1  # flagged differences mean a negative verdict
    assert "3" in rec["flagged"].split(",")


def test_scan_command_certified(sub_xy_file, capsys):
    code = run(["scan", "--spec", sub_xy_file, "--dmax", "4", "--horizons", "1000,5000"])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["flagged"] == ""


def test_free_command_cubes(capsys):
    code = run([
        "free", "--view", "cubes", "--letters", "xyzw",
        "--gens", "1*x + 1*y;1*z + 1*w", "--Lfree", "3",
    ])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["freeness_verdict"] == "independent"
    assert rec["rank"] == "14"


def test_free_command_tilde_with_primed_names(capsys):
    code = run([
        "free", "--view", "tilde", "--horizon", "20000",
        "--gens", "1*x + 1*y;1*x' + 1*y'", "--Lfree", "3",
    ])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["freeness_verdict"] == "independent"
    assert rec["rank"] == "14"


def test_free_command_dependent(capsys):
    code = run([
        "free", "--view", "free", "--letters", "xy",
        "--gens", "1*x;2*x", "--Lfree", "2",
    ])
    out, rec = _record(capsys)
    assert code == 1
    assert rec["freeness_verdict"] == "dependent"


def test_theorem32_command(capsys):
    code = run(["theorem32", "--horizon", "20000", "--Lfree", "3", "--dmax", "4"])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["all_clear"] == "true"
    assert rec["certificate_verdict"] == "CERTIFIED"
    assert rec["sum_sets_equal"] == "true"


def test_rowen_command(capsys):
    code = run(["rowen", "--N", "512", "--horizon", "10000", "--maxlen", "5"])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["bits_match_substitution"] == "true"
    assert rec["word_prefix_16"] == "yxxyxyyxxyyxyxxy"
    assert rec["nilpotency_index_a"] == "3"
    assert rec["nilpotency_index_b"] == "3"
    assert rec["correspondence_mismatches"] == "0"


def test_rowen_command_single_word(capsys):
    code = run(["rowen", "--N", "512", "--horizon", "10000", "--word", "aaa"])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["word_zero"] == "true"  # aaa maps to yyy, never a factor
    assert rec["word_matches_factor_rule"] == "true"


def test_growth_command(capsys):
    code = run(["growth", "--nvalues", "64,128", "--horizon", "20000"])
    out, rec = _record(capsys)
    assert code == 0
    assert rec["quadratic"] == "true"


def test_growth_command_periodic_control(capsys):
    code = run(["growth", "--nvalues", "64,128", "--horizon", "20000", "--periodic", "xy"])
    out, rec = _record(capsys)
    assert code == 1
    assert rec["quadratic"] == "false"


def test_reports_are_byte_identical(sub_xy_file, capsys):
    run(["certify", "--spec", sub_xy_file, "--weights", "1,2"])
    first = capsys.readouterr().out
    run(["certify", "--spec", sub_xy_file, "--weights", "1,2"])
    second = capsys.readouterr().out
    assert first == second


def test_usage_errors_exit_two(tmp_path, capsys):
    assert run(["certify", "--no-such-flag"]) == 2
    assert run(["nosuchcommand"]) == 2
    bad = tmp_path / "bad.morph"
    bad.write_text("x y\nx = xy\n")
    assert run(["certify", "--spec", str(bad), "--weights", "1,2"]) == 2
    missing = tmp_path / "missing.morph"
    assert run(["certify", "--spec", str(missing), "--weights", "1,2"]) == 2
    capsys.readouterr()


def test_bundled_morphism_files(capsys):
    for name, expected in (("sub_xy.morph", 0), ("sub_xyz.morph", 0), ("thue_morse.morph", 1)):
        path = REPO_MORPHISMS / name
        code = run(["certify", "--spec", str(path)])
        capsys.readouterr()
        assert code == expected
