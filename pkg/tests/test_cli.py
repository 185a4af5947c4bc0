import io
import json
import subprocess
import sys

import pytest

from conftest import INSTANCES
from uniform_lpt import acceptance
from uniform_lpt.analysis import rho
from uniform_lpt.cli import run
from uniform_lpt.model import load_instance


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


GRAHAM = INSTANCES / "graham-m2.json"


def test_rho_six_decimals():
    assert call("rho", "--m", 3) == (0, "1.383673\n", "")
    assert call("rho", "--m", 2)[1] == "1.280776\n"


def test_rho_table_formats():
    code, out, _ = call("rho", "--m", 5, "--table")
    assert code == 0 and "1.459107" in out and len(out.splitlines()) == 6
    code, out, _ = call("rho", "--m", 3, "--table", "--format", "csv")
    assert out.splitlines()[0] == "m,rho_m,graham,gis"
    code, out, _ = call("rho", "--m", 4, "--format", "json")
    assert json.loads(out) == {"m": 4, "rho": rho(4)}


def test_ratio_graham():
    code, out, err = call("ratio", GRAHAM)
    assert code == 0 and err == ""
    assert "7/6 ~ 1.166667" in out


def test_gen_worst_then_ratio(tmp_path):
    target = tmp_path / "gis.json"
    assert call("gen-worst", "--m", 2, "-o", target)[0] == 0
    code, out, _ = call("ratio", target, "--format", "json")
    assert json.loads(out)["ratio"] == pytest.approx(1.280776, abs=1e-6)
    code, out, _ = call("gen-worst", "--m", 3)
    assert out == (INSTANCES / "gis-m3.json").read_text()


def test_lpt_and_opt():
    code, out, _ = call("lpt", GRAHAM, "--format", "json")
    data = json.loads(out)
    assert data["makespan"] == 7.0 and data["assignment"] == [1, 2, 1, 2, 1]
    code, out, _ = call("opt", GRAHAM)
    assert code == 0 and "makespan 6.000000" in out
    code, out, _ = call("opt", GRAHAM, "--method", "enumerate", "--format", "csv")
    assert out.splitlines()[0] == "processor,speed,tasks,load,finish"


def test_opt_unproven_exit_code(tmp_path):
    path = tmp_path / "big.json"
    path.write_text(json.dumps({"speeds": [5, 4, 3, 2, 1], "tasks": [9, 8, 7, 6, 5, 4, 3, 3, 2, 2, 1, 1]}))
    code, out, _ = call("opt", path, "--node-budget", 5)
    assert code == 1 and "UNPROVEN" in out


def test_certify_text_and_json():
    code, out, _ = call("certify", INSTANCES / "gis-m3.json")
    assert code == 0 and out.startswith("verdict consistent-with-minimality")
    code, out, _ = call("certify", INSTANCES / "gis-m3.json", "--format", "json")
    assert json.loads(out)["verdict"] == "consistent-with-minimality"


def test_validate():
    assert call("validate", GRAHAM)[0] == 0
    assert call("validate", INSTANCES / "degenerate-unsorted.json")[0] == 1


@pytest.mark.parametrize("name, message", [
    ("degenerate-no-processors.json", "m must be >= 1"),
    ("degenerate-unsorted.json", "speeds not non-increasing"),
    ("degenerate-zero-task.json", "size 0"),
])
def test_bad_input_exits_2_on_stderr(name, message):
    code, out, err = call("ratio", INSTANCES / name)
    assert code == 2 and out == "" and message in err


def test_missing_file_and_usage_errors():
    assert call("ratio", "/nonexistent.json")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("rho")[0] == 2
    assert call("search", "--m", 2, "--n-max", 3, "--tol", "0")[0] == 2
    assert call("search", "--m", 2, "--n-max", 3, "--restarts", 0)[0] == 2


def test_search_json_byte_identical():
    argv = ("search", "--m", 2, "--n-max", 3, "--restarts", 4, "--steps", 20, "--seed", 9, "--format", "json")
    first = call(*argv)
    assert first[0] == 0
    assert call(*argv) == first
    data = json.loads(first[1])
    assert set(data) >= {"best_ratio", "ratio_bound", "exceeded", "best_instance"}
    assert '"best_ratio": ' in first[1]


def test_seed_env_fallback(monkeypatch):
    argv = ("search", "--m", 2, "--n-max", 3, "--restarts", 3, "--steps", 10, "--format", "json")
    monkeypatch.setenv("UNIFORM_LPT_SEED", "5")
    from_env = call(*argv)
    explicit = call(*argv, "--seed", 5)
    assert from_env == explicit
    monkeypatch.setenv("UNIFORM_LPT_SEED", "oops")
    assert call(*argv)[0] == 2


def test_ceiling():
    code, out, _ = call("ceiling", "--m", 3, "--n", 4, "--samples", 200, "--format", "json")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_selects_levels():
    assert [c.key for c in acceptance.select("quick")] == [1, 2, 3, 4, 5, 8, 9, 10]
    assert [c.key for c in acceptance.select("full")] == list(range(1, 11))


def test_verify_exit_codes(monkeypatch):
    cheap = [c for c in acceptance.CRITERIA if c.key in (1, 4)]
    monkeypatch.setattr(acceptance, "select", lambda level: cheap)
    code, out, _ = call("verify", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = call("verify")
    assert code == 0 and out.splitlines()[0].startswith("PASS [ 1]")
    broken = cheap + [acceptance.Criterion(99, "always fails", "quick", lambda seed: (False, "no"))]
    monkeypatch.setattr(acceptance, "select", lambda level: broken)
    code, out, _ = call("verify")
    assert code == 1 and "FAIL [99] always fails" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "uniform_lpt", "rho", "--m", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1.280776\n"


def test_corpus_files_match_generator():
    for m in range(2, 6):
        assert load_instance(INSTANCES / f"gis-m{m}.json").sizes[-1] == 1.0
