"""Command line front end: flags, config merge, exit codes, output
determinism."""

import csv
import io
import json
import subprocess
import sys

import pytest

from superint.cli import main

# ten-line simulate run shared by the CSV shape tests
SIM_ARGS = ["simulate", "--family", "ttw", "--k", "3/2", "--steps", "10",
            "--dt", "0.001"]


def run_main(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_simulate_csv_schema(capsys):
    code, out, err = run_main(SIM_ARGS, capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    head = rows[0]
    assert head[:10] == ["t", "chart", "q1", "q2", "p1", "p2",
                         "H_re", "H_im", "L2_re", "L2_im"]
    # constant columns come in re/im pairs after the fixed block
    assert len(head) > 10 and len(head) % 2 == 0
    assert all(len(r) == len(head) for r in rows[1:])
    assert len(rows) == 12   # header + 11 states


def test_simulate_steps_zero_single_row(capsys):
    code, out, _ = run_main(["simulate", "--family", "ttw", "--k", "1/1",
                             "--steps", "0"], capsys)
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == 2


def test_simulate_missing_k_exits_2(capsys):
    code, _, err = run_main(["simulate", "--family", "ttw"], capsys)
    assert code == 2
    assert "missing --k" in err


def test_simulate_rejects_bad_flag_combos(capsys):
    code, _, err = run_main(["simulate", "--family", "ttw", "--k", "2/4"],
                            capsys)
    assert code == 2
    assert "lowest terms" in err
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--family", "nope", "--k", "1/1"])
    assert exc.value.code == 2
    code, _, _ = run_main(["simulate", "--family", "ttw", "--k", "1/1",
                           "--dt", "-0.5"], capsys)
    assert code == 2


def test_simulate_integration_abort_exits_1(capsys, tmp_path):
    # the orbit start sits on the barrier slope with a coarse step
    code, _, err = run_main(
        ["simulate", "--family", "ttw", "--k", "2/1", "--start",
         "1.0,0.0001,0.0,-0.5", "--chart", "polar", "--dt", "0.01",
         "--steps", "50"], capsys)
    assert code == 1
    assert "aborted" in err


def test_simulate_byte_determinism(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(SIM_ARGS + ["--out", str(out1)]) == 0
    assert main(SIM_ARGS + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_config_file_merge_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"family": "ttw", "k": "3/2", "steps": 7,
                               "a": 2, "b": "0.5", "c": 1}))
    code, out, _ = run_main(["simulate", "--config", str(cfg),
                             "--steps", "2"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 4   # header + 3: flag wins


def test_config_unknown_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"nope": 1}))
    code, _, err = run_main(["simulate", "--k", "1/1", "--config", str(cfg)],
                            capsys)
    assert code == 2
    assert "unknown config keys" in err


def test_verify_constants_passes_and_is_deterministic(tmp_path):
    args = ["verify-constants", "--family", "ttw", "--k", "3/2",
            "--points", "12", "--seed", "11"]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rep = json.loads(out1.read_text())
    assert rep["suite"] == "verify-constants"
    assert all(c["status"] == "pass" for c in rep["checks"])
    kinds = " ".join(c["name"] for c in rep["checks"])
    assert "pair identities" in kinds
    assert "purity" in kinds
    assert "independence" in kinds


def test_verify_constants_holo(capsys):
    code, out, _ = run_main(["verify-constants", "--family", "holo",
                             "--k", "2/1", "--points", "6"], capsys)
    assert code == 0


def test_corrupted_normalizer_hook_fails(capsys):
    code, out, err = run_main(
        ["verify-constants", "--family", "ttw", "--k", "1/2",
         "--points", "4", "--corrupt-normalizer"], capsys)
    assert code == 1
    assert "FAIL" in err


def test_verify_algebra_reports_orders(tmp_path, capsys):
    code, out, _ = run_main(["verify-algebra", "ttw-general", "1", "2"],
                            capsys)
    assert code == 0
    rep = json.loads(out)
    names = " ".join(c["name"] for c in rep["checks"])
    assert "momentum order 5" in names
    assert "momentum order 6" in names


def test_verify_algebra_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify-algebra", "nope"])
    assert exc.value.code == 2


def test_verify_algebra_index_on_wrong_suite(capsys):
    code, _, err = run_main(["verify-algebra", "models", "1", "2"], capsys)
    assert code == 2


def test_scan_orbits_table_and_flags(capsys):
    code, out, _ = run_main(
        ["scan-orbits", "--k-list", "1,1.414213562", "--n-starts", "1",
         "--horizon", "6"], capsys)
    assert code == 0
    table = json.loads(out)
    cells = table["cells"]
    assert len(cells) == 2
    assert cells[0]["rational"] is True
    assert cells[1]["rational"] is False
    assert cells[1]["k"] == "1.414213562"


def test_scan_orbits_empty_list_exits_2(capsys):
    code, _, err = run_main(["scan-orbits", "--k-list", ""], capsys)
    assert code == 2


def test_repair_targets(capsys):
    for target in ("c2-classical", "k2-holo", "c2-quantum"):
        code, out, _ = run_main(["repair", target], capsys)
        assert code == 0
        cert = json.loads(out)
        assert cert["target"] == target
        assert cert["residual"] == "0"
        assert cert["coefficients"]


def test_repair_unknown_target_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["repair", "bogus"])
    assert exc.value.code == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superint.cli", "simulate", "--family", "ttw",
         "--k", "1/1", "--steps", "2"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("t,chart,q1,q2,p1,p2,")
