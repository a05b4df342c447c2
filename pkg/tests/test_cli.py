import json
import subprocess
import sys

import pytest

from gonalis import fixtures
from gonalis.cli import JobConfig, main, render, run

DATA = {name: str(fixtures.curve_path(name)) for name in
        ("sextic3nodes", "quintic_smooth_g6", "hyperelliptic_g3", "bielliptic_g6", "genus10_canonical")}


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_betti_json(capsys):
    code, out = _run(capsys, "betti", "--in", DATA["sextic3nodes"])
    assert code == 0
    result = json.loads(out.out)
    assert result["genus"] == 7 and result["linear_colength"] == 2
    assert result["rows"][1][1:4] == [10, 16, 9]


def test_betti_pretty_uses_dashes(capsys):
    code, out = _run(capsys, "betti", "--in", DATA["sextic3nodes"], "--pretty")
    assert code == 0
    assert "-" in out.out and "16" in out.out and not out.out.lstrip().startswith("{")


def test_missing_file_exits_with_input_error(capsys, tmp_path):
    code, out = _run(capsys, "betti", "--in", str(tmp_path / "nope.txt"))
    assert code == 1 and "cannot read" in out.err


def test_parse_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("field GF 10007\nplane 4\nF = x^4 + y^4 +\n")
    code, out = _run(capsys, "gonal", "--in", str(bad))
    assert code == 1 and "line 3" in out.err


def test_plane_quintic_is_not_applicable(capsys):
    code, out = _run(capsys, "radparam", "--in", DATA["quintic_smooth_g6"])
    result = json.loads(out.out)
    assert code == 2 and result["error"] == "plane_quintic" and result["bounds"] == [4, 4]


def test_hyperelliptic_gonal(capsys):
    code, out = _run(capsys, "gonal", "--in", DATA["hyperelliptic_g3"])
    assert code == 0 and json.loads(out.out)["gonality"] == 2


def test_budget_exhaustion_reports_bounds():
    code, result = run(JobConfig("goneric", DATA["genus10_canonical"], budget_minutes=0.002))
    assert code == 3 and result["bounds"] == [3, 6]


def test_tetragonal_with_field_override(capsys):
    code, out = _run(capsys, "tetragonal", "--in", DATA["sextic3nodes"], "--field", "GF 10007")
    result = json.loads(out.out)
    assert code == 0 and result["class"] == "delpezzo" and len(result["pencils"]) == 3
    assert all(p["gonality"] == 4 for p in result["pencils"])


def test_lie_on_scroll_type(capsys):
    code, out = _run(capsys, "lie", "--type", "1,2,4")
    result = json.loads(out.out)
    assert code == 0 and result["module_dims"] == [2, 3, 5] and result["lie_dim"] == 14


def test_scroll_check_command(capsys):
    code, out = _run(capsys, "scroll-check", "--type", "2,3")
    assert code == 0 and json.loads(out.out)["ok"]


@pytest.mark.parametrize("command, name", [("radparam", "sextic3nodes"), ("tetragonal", "bielliptic_g6")])
def test_repeated_runs_are_byte_identical(command, name):
    texts = []
    for _ in range(2):
        config = JobConfig(command, DATA[name])
        code, result = run(config)
        assert code == 0
        texts.append(render(config, result))
    assert texts[0] == texts[1]


def test_console_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "gonalis.cli", "radparam", "--in", DATA["sextic3nodes"],
                           "--samples", "4", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["validation"]["samples"] == 4


def test_bad_seed_is_rejected():
    with pytest.raises(SystemExit):
        main(["betti", "--seed", "-1"])
