import json
import subprocess
import sys

import pytest

from cli_cases import CASES, GOLDEN, run


@pytest.mark.parametrize("name,argv,want", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, want):
    code, out = run(argv)
    assert code == want
    assert out == (GOLDEN / f"{name}.out").read_text()


def test_error_reports_json_path():
    code, out = run(["grade", "--input", str(GOLDEN.parent / "data" / "bad_point.json")])
    assert code == 1
    assert json.loads(out)["path"] == "$.generators[1].point[1]"


def test_repeat_runs_identical():
    argv = CASES[0][1]
    assert run(argv) == run(argv)


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "multifilt.cli", "solvable-cone", "--weights",
                        str(GOLDEN.parent / "data" / "weights_pm.json")], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["lineality"] == [[1]]
