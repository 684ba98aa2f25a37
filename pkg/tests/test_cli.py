import json
import subprocess
import sys
from dataclasses import replace
from fractions import Fraction as F

import pytest

from lotdp import Instance, Supplier, instance_to_json, structural_oracle
from lotdp import cli


def write_instance(path, inst):
    path.write_text(json.dumps(instance_to_json(inst)) + "\n")
    return str(path)


@pytest.fixture
def golden_file(golden, tmp_path):
    return write_instance(tmp_path / "golden.json", golden)


class TestSolve:
    def test_golden(self, golden_file, capsys):
        assert cli.main(["solve", golden_file]) == 0
        out = capsys.readouterr()
        doc = json.loads(out.out)
        assert doc["objective"] == {"num": 35, "den": 2}
        assert doc["deliveries"] == [
            {"supplier": 1, "volume": {"num": 5, "den": 2}},
            {"supplier": 2, "volume": {"num": 5, "den": 2}},
        ]
        report = json.loads(out.err)
        assert report["best_H"] == 2
        assert [h["H"] for h in report["per_H"]] == [1, 2]

    def test_pretty_adds_decimal_approximations(self, golden_file, capsys):
        assert cli.main(["solve", "--pretty", golden_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["objective"]["approx"] == 17.5

    def test_out_flag_writes_file(self, golden_file, tmp_path, capsys):
        target = tmp_path / "solution.json"
        assert cli.main(["solve", "--out", str(target), golden_file]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["objective"] == {"num": 35, "den": 2}

    def test_trace_csv_on_stderr(self, golden_file, capsys):
        assert cli.main(["solve", "--trace", golden_file]) == 0
        err = capsys.readouterr().err
        assert "H,phi_nP_num,phi_nP_den,cells,micros" in err
        assert "\n1,35,2," in err

    def test_mode_override(self, golden_file, capsys):
        assert cli.main(["solve", "--mode", "multi", golden_file]) == 0
        report = json.loads(capsys.readouterr().err)
        assert report["kind"] == "multi-aggregated"

    def test_infeasible_instance_exits_2(self, tmp_path, capsys):
        inst = Instance(suppliers=(Supplier(1, 1, 1, 3),), P=50)
        path = write_instance(tmp_path / "too_big.json", inst)
        assert cli.main(["solve", path]) == 2
        err = capsys.readouterr().err
        assert "capacity" in err and "demand" in err

    def test_missing_file_exits_1(self, tmp_path, capsys):
        assert cli.main(["solve", str(tmp_path / "nope.json")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_malformed_json_exits_1(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{"P": 5,,}\n')
        assert cli.main(["solve", str(path)]) == 1
        assert "line 1" in capsys.readouterr().err

    def test_missing_field_exits_1(self, tmp_path, capsys):
        path = tmp_path / "partial.json"
        path.write_text(json.dumps({"P": 5, "lambda": 1, "c_hold": 1, "mode": "single"}))
        assert cli.main(["solve", str(path)]) == 1
        assert "suppliers" in capsys.readouterr().err

    def test_empty_supplier_list_exits_1(self, tmp_path, capsys):
        inst = Instance(suppliers=(), P=5)
        path = write_instance(tmp_path / "empty.json", inst)
        assert cli.main(["solve", path]) == 1
        assert "supplier" in capsys.readouterr().err

    def test_cell_budget_env_var(self, golden_file, capsys, monkeypatch):
        monkeypatch.setenv("LOTDP_MAX_CELLS", "10")
        assert cli.main(["solve", golden_file]) == 1
        assert "cell" in capsys.readouterr().err

    def test_bad_cell_budget_env_var(self, golden_file, capsys, monkeypatch):
        monkeypatch.setenv("LOTDP_MAX_CELLS", "many")
        assert cli.main(["solve", golden_file]) == 1
        assert "LOTDP_MAX_CELLS" in capsys.readouterr().err


class TestVerify:
    def test_file_agreement(self, golden_file, capsys):
        assert cli.main(["verify", golden_file]) == 0
        out = capsys.readouterr().out
        for line in ("dp: 35/2", "structural: 35/2", "grid: 35/2", "agreement: yes"):
            assert line in out

    def test_seed_batch(self, capsys):
        assert cli.main(["verify", "--seed-batch", "20", "--seed", "3"]) == 0
        assert "20/20 agree" in capsys.readouterr().out

    def test_needs_some_input(self, capsys):
        assert cli.main(["verify"]) == 1

    def test_refuses_large_instances(self, tmp_path, capsys):
        inst = Instance(suppliers=(Supplier(1, 1, 1, 3),) * 9, P=5)
        path = write_instance(tmp_path / "wide.json", inst)
        assert cli.main(["verify", path]) == 1
        assert "refuses" in capsys.readouterr().err

    def test_disagreement_exits_3(self, golden_file, capsys, monkeypatch):
        def skewed(inst, **kwargs):
            sol = structural_oracle(inst, **kwargs)
            return replace(sol, objective=sol.objective + 1)

        monkeypatch.setattr(cli, "structural_oracle", skewed)
        assert cli.main(["verify", golden_file]) == 3
        assert "disagreement" in capsys.readouterr().err


class TestGen:
    def test_same_seed_same_bytes(self, capsys):
        assert cli.main(["gen", "--seed", "9"]) == 0
        first = capsys.readouterr().out
        assert cli.main(["gen", "--seed", "9"]) == 0
        assert capsys.readouterr().out == first
        assert cli.main(["gen", "--seed", "10"]) == 0
        assert capsys.readouterr().out != first

    def test_supplier_count_flag(self, capsys):
        assert cli.main(["gen", "--n", "3", "--seed", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["suppliers"]) == 3

    def test_generated_instances_solve(self, tmp_path, capsys):
        path = tmp_path / "inst.json"
        assert cli.main(["gen", "--seed", "5", "--out", str(path)]) == 0
        assert cli.main(["solve", str(path)]) == 0

    def test_infeasible_flag_round_trips_to_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        assert cli.main(["gen", "--seed", "5", "--infeasible", "--out", str(path)]) == 0
        assert cli.main(["solve", str(path)]) == 2


class TestBench:
    def test_sweep_with_explicit_values(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert cli.main(["bench", "--sweep", "P", "--values", "12,24", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n,P,c_hold,cells,wall_micros,objective_num,objective_den"
        assert len(lines) == 3
        assert lines[1].startswith("5,12,1,")
        assert lines[2].startswith("5,24,1,")

    def test_rejects_junk_values(self, capsys):
        assert cli.main(["bench", "--sweep", "P", "--values", "12,x"]) == 1
        assert "--values" in capsys.readouterr().err


def test_module_entry_point(golden, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(instance_to_json(golden)))
    proc = subprocess.run(
        [sys.executable, "-m", "lotdp", "solve", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["objective"] == {"num": 35, "den": 2}
