import io
import json
import math
import shutil
import subprocess

import numpy as np
import pytest

from retrodyn import (
    LyapunovCoeffs,
    ModelParams,
    State,
    SweepGrid,
    inner_equilibrium,
    stability_map,
    w_value,
)
from retrodyn.cli import main

P1 = {"a": 1, "a_I": 2, "b11": 1, "b12": 0, "b21": 0, "b22": 1,
      "alpha": 0, "m": 1, "k": 1, "sigma": 2}
P2 = {"a": 1, "a_I": 2, "b11": 1, "b12": 0.1, "b21": 0.1, "b22": 1,
      "alpha": 0.5, "m": 0.5, "k": 1, "sigma": 1}
P3 = {"a": 1, "a_I": 1, "b11": 1, "b12": 0, "b21": 0, "b22": 1,
      "alpha": 0, "m": 2, "k": 1, "sigma": 2}
PU = {"a": 1, "a_I": 0.5, "b11": 0.1, "b12": 0.01, "b21": 0.01, "b22": 0.1,
      "alpha": 2, "m": 2, "k": 30, "sigma": 0.2}

# frozen in test_lyapunov.py as well
P2_RHS_AS_WRITTEN = 0.003562797296871674
P2_RHS_CORRECTED = 0.0014014375690521148


def _model(payload):
    return ModelParams(**payload)


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_equilibria_p1(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P1})
    code, out, err = run_cli(["--config", cfg, "equilibria"], capsys)
    assert code == 0
    records = [json.loads(line) for line in out.strip().split("\n")]
    assert len(records) == 4
    assert records[0]["kind"] == "inner"
    assert (records[0]["C"], records[0]["I"], records[0]["V"]) == (1.0, 0.5, 0.25)
    assert records[0]["residual"] == 0.0
    assert [r["kind"] for r in records[1:]] == ["extinction", "uninfected_only", "infected_only"]


def test_equilibria_no_inner(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P3})
    code, out, err = run_cli(["--config", cfg, "equilibria"], capsys)
    assert code == 1
    records = [json.loads(line) for line in out.strip().split("\n")]
    assert [r["kind"] for r in records] == ["extinction", "uninfected_only"]


@pytest.mark.parametrize(
    "payload",
    [
        {"params": {k: v for k, v in P1.items() if k != "sigma"}},
        {"params": dict(P1, extra=1.0)},
        {"params": P1, "spurious": {}},
        {"params": dict(P1, a=True)},
        {"params": dict(P1, m="fast")},
        {},
    ],
)
def test_config_errors_exit_2(tmp_path, capsys, payload):
    cfg = write_config(tmp_path, payload)
    code, out, err = run_cli(["--config", cfg, "equilibria"], capsys)
    assert code == 2
    assert "error:" in err


def test_bad_json_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(["--config", str(path), "equilibria"], capsys)
    assert code == 2
    assert "not valid JSON" in err


def test_missing_file_exit_2(tmp_path, capsys):
    code, _, err = run_cli(["--config", str(tmp_path / "absent.json"), "equilibria"], capsys)
    assert code == 2


def test_usage_errors_exit_2(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P1})
    with pytest.raises(SystemExit) as exc:
        main(["--config", cfg])  # no command
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--config", cfg, "frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_simulate_header_and_rows(tmp_path, capsys):
    cfg = write_config(tmp_path, {
        "params": P2,
        "initial_state": {"C": 1.0, "I": 1.0, "V": 1.0},
        "integration": {"t_end": 1.0, "dt": 0.25},
    })
    code, out, _ = run_cli(["--config", cfg, "simulate"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,C,I,V"
    assert len(lines) == 6
    assert [float(tok) for tok in lines[1].split(",")] == [0.0, 1.0, 1.0, 1.0]


def test_simulate_closed_form(tmp_path, capsys):
    decay = dict(P1, sigma=2)
    cfg = write_config(tmp_path, {
        "params": decay,
        "initial_state": {"C": 0.0, "I": 0.0, "V": 1.0},
        "integration": {"t_end": 1.0, "dt": 0.001},
    })
    code, out, _ = run_cli(["--config", cfg, "simulate"], capsys)
    assert code == 0
    last = out.strip().split("\n")[-1].split(",")
    assert float(last[0]) == 1.0
    assert abs(float(last[3]) - math.exp(-2.0)) < 1e-8


def test_simulate_equilibrium_start_is_constant(tmp_path, capsys):
    eq = inner_equilibrium(_model(P2))
    cfg = write_config(tmp_path, {
        "params": P2,
        "initial_state": {"C": eq.point.C, "I": eq.point.I, "V": eq.point.V},
        "integration": {"t_end": 2.0, "dt": 0.5},
    })
    code, out, _ = run_cli(["--config", cfg, "simulate"], capsys)
    assert code == 0
    rows = [[float(tok) for tok in line.split(",")] for line in out.strip().split("\n")[1:]]
    base = rows[0][1:]
    for row in rows:
        assert max(abs(a - b) for a, b in zip(row[1:], base)) < 1e-12


def test_simulate_missing_section_exit_2(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P2, "initial_state": {"C": 1, "I": 1, "V": 1}})
    code, _, err = run_cli(["--config", cfg, "simulate"], capsys)
    assert code == 2
    assert "integration" in err


def test_simulate_budget_exhausted_exit_3(tmp_path, capsys):
    cfg = write_config(tmp_path, {
        "params": P2,
        "initial_state": {"C": 1.0, "I": 1.0, "V": 1.0},
        "integration": {"t_end": 1.0, "dt": 0.01, "max_steps": 1},
    })
    code, _, err = run_cli(["--config", cfg, "simulate"], capsys)
    assert code == 3
    assert "max_steps" in err


def test_stability_p1(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P1})
    code, out, _ = run_cli(["--config", cfg, "stability"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["equilibrium"]["kind"] == "inner"
    rh = rec["routh_hurwitz"]
    assert (rh["p"], rh["q"], rh["r"]) == (4.0, 5.0, 2.0)
    assert rh["verdict"] == "Stable"
    assert rh["margins"] == [4.0, 2.0, 18.0]
    c4 = rec["condition4"]
    assert c4["variant"] == "corrected"
    assert c4["rhs"] == 0.0 and c4["lhs"] == 2.0 and c4["holds"] is True
    search = rec["coefficient_search"]
    assert search["found"] is True
    assert search["D"] == 1.0
    assert all(m > 0.0 for m in search["minors"])


def test_stability_variant_flag(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P2})
    code, out, _ = run_cli(["--config", cfg, "stability", "--variant", "as-written"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["condition4"]["variant"] == "as-written"
    assert rec["condition4"]["rhs"] == P2_RHS_AS_WRITTEN

    code, out, _ = run_cli(["--config", cfg, "stability"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["condition4"]["variant"] == "corrected"
    assert rec["condition4"]["rhs"] == P2_RHS_CORRECTED


def test_stability_unstable_exit_1(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": PU})
    code, out, _ = run_cli(["--config", cfg, "stability"], capsys)
    assert code == 1
    rec = json.loads(out)
    assert rec["routh_hurwitz"]["verdict"] == "Unstable"
    assert rec["coefficient_search"]["found"] is False


def test_stability_no_inner_exit_1(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P3})
    code, out, err = run_cli(["--config", cfg, "stability"], capsys)
    assert code == 1
    assert out == ""
    assert "no coexistence equilibrium" in err


def test_sweep_matches_library(tmp_path, capsys):
    sweep = {"alpha_values": [0.1, 0.5], "k_values": [1.0, 2.0]}
    cfg = write_config(tmp_path, {"params": P2, "sweep": sweep})
    code, out, _ = run_cli(["--config", cfg, "sweep"], capsys)
    assert code == 0

    grid = SweepGrid(base=_model(P2), alpha_values=sweep["alpha_values"],
                     k_values=sweep["k_values"])
    buf = io.StringIO()
    stability_map(grid).write_csv(buf)
    assert out == buf.getvalue()


def test_sweep_missing_section_exit_2(tmp_path, capsys):
    cfg = write_config(tmp_path, {"params": P2})
    code, _, err = run_cli(["--config", cfg, "sweep"], capsys)
    assert code == 2
    assert "sweep" in err


def test_lyapunov_trace_columns(tmp_path, capsys):
    coeffs = {"A": 1.0, "B": 2.0, "D": 3.0}
    cfg = write_config(tmp_path, {
        "params": P2,
        "initial_state": {"C": 1.0, "I": 1.0, "V": 1.0},
        "integration": {"t_end": 1.0, "dt": 0.25},
        "lyapunov": coeffs,
    })
    code, out, _ = run_cli(["--config", cfg, "lyapunov"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,C,I,V,W,Wdot"
    # %.17g survives the float round-trip bit for bit
    w0 = float(lines[1].split(",")[4])
    eq = inner_equilibrium(_model(P2))
    assert w0 == w_value(LyapunovCoeffs(**coeffs), eq, State(1.0, 1.0, 1.0))


def test_lyapunov_requires_coeff_section(tmp_path, capsys):
    cfg = write_config(tmp_path, {
        "params": P2,
        "initial_state": {"C": 1.0, "I": 1.0, "V": 1.0},
        "integration": {"t_end": 1.0, "dt": 0.25},
    })
    code, _, err = run_cli(["--config", cfg, "lyapunov"], capsys)
    assert code == 2
    assert "lyapunov" in err


def test_lyapunov_no_inner_exit_1(tmp_path, capsys):
    cfg = write_config(tmp_path, {
        "params": P3,
        "initial_state": {"C": 1.0, "I": 1.0, "V": 1.0},
        "integration": {"t_end": 1.0, "dt": 0.25},
        "lyapunov": {"A": 1.0, "B": 1.0, "D": 1.0},
    })
    code, out, err = run_cli(["--config", cfg, "lyapunov"], capsys)
    assert code == 1
    assert "nothing to trace" in err


def test_lyapunov_flat_at_equilibrium(tmp_path, capsys):
    eq = inner_equilibrium(_model(P2))
    cfg = write_config(tmp_path, {
        "params": P2,
        "initial_state": {"C": eq.point.C, "I": eq.point.I, "V": eq.point.V},
        "integration": {"t_end": 2.0, "dt": 0.5},
        "lyapunov": {"A": 1.0, "B": 1.0, "D": 1.0},
    })
    code, out, _ = run_cli(["--config", cfg, "lyapunov"], capsys)
    assert code == 0
    w_col = np.array([float(line.split(",")[4]) for line in out.strip().split("\n")[1:]])
    assert abs(w_col).max() < 1e-12


def test_installed_entry_point(tmp_path):
    exe = shutil.which("retrodyn")
    if exe is None:
        pytest.skip("entry point not on PATH")
    cfg = write_config(tmp_path, {"params": P1})
    proc = subprocess.run([exe, "--config", cfg, "equilibria"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.strip().split("\n")[0])["kind"] == "inner"
