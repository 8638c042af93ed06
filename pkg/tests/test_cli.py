import json

import pytest

from capmatch import feasible, instance_from_json
from capmatch.cli import main


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


FORCED = {"s": [0], "t": [1, 2], "alpha": [2], "beta": [1, 1]}


class TestSolve:
    def test_capdp(self, tmp_path, capsys):
        code, out, _ = _run(capsys, ["solve", _write(tmp_path, "i.json", FORCED)])
        assert code == 0
        assert json.loads(out) == {"cost": 3, "pairs": [[0, 0], [0, 1]], "feasible": True}

    def test_infeasible(self, tmp_path, capsys):
        data = {"s": [0], "t": [1, 2], "alpha": [1], "beta": [1, 1]}
        code, out, err = _run(capsys, ["solve", _write(tmp_path, "i.json", data)])
        assert code == 2
        assert json.loads(out)["feasible"] is False
        assert "infeasible" in err

    def test_algorithms_agree(self, tmp_path, capsys):
        data = {"s": [9, 0, 4, 5], "t": [13, 2, 8, 10], "alpha": [1, 5, 2, 3], "beta": [2, 2, 3, 1]}
        path = _write(tmp_path, "i.json", data)
        costs = {}
        for algo in ("capdp", "oracle"):
            code, out, _ = _run(capsys, ["solve", path, "--algo", algo])
            assert code == 0
            costs[algo] = json.loads(out)["cost"]
        assert costs["capdp"] == costs["oracle"]

    def test_baseline_rejects_limited_caps(self, tmp_path, capsys):
        path = _write(tmp_path, "i.json", FORCED)
        code, _, err = _run(capsys, ["solve", path, "--algo", "baseline"])
        assert code == 1 and "capacity" in err
        code, out, _ = _run(capsys, ["solve", path, "--algo", "baseline", "--ignore-caps"])
        assert code == 0 and json.loads(out)["cost"] == 3

    def test_baseline_without_caps(self, tmp_path, capsys):
        path = _write(tmp_path, "i.json", {"s": [0, 10], "t": [1, 2]})
        code, out, _ = _run(capsys, ["solve", path, "--algo", "baseline"])
        assert code == 0 and json.loads(out)["cost"] == 9

    def test_output_file(self, tmp_path, capsys):
        out_path = tmp_path / "m.json"
        code, out, _ = _run(capsys, ["solve", _write(tmp_path, "i.json", FORCED), "-o", str(out_path)])
        assert code == 0 and out == ""
        assert json.loads(out_path.read_text())["cost"] == 3

    @pytest.mark.parametrize("content", ["{not json", json.dumps({"s": [], "t": [1]}),
                                         json.dumps({"s": [0], "t": [1], "alpha": [0], "beta": [1]})])
    def test_input_errors(self, tmp_path, capsys, content):
        path = tmp_path / "bad.json"
        path.write_text(content)
        code, out, err = _run(capsys, ["solve", str(path)])
        assert code == 1 and out == "" and err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = _run(capsys, ["solve", str(tmp_path / "nope.json")])
        assert code == 1 and "cannot read" in err

    def test_usage_error_is_input_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve"])
        assert exc.value.code == 1

    def test_memory_ceiling(self, tmp_path, capsys):
        path = _write(tmp_path, "i.json", FORCED)
        assert _run(capsys, ["solve", path, "--mem-limit-mb", "64"])[0] == 0
        code, _, err = _run(capsys, ["solve", path, "--mem-limit-mb", "0.0001"])
        assert code == 1 and "limit" in err


class TestGen:
    def test_deterministic(self, capsys):
        first = _run(capsys, ["gen", "--ns", "3", "--nt", "3", "--seed", "7"])[1]
        second = _run(capsys, ["gen", "--ns", "3", "--nt", "3", "--seed", "7"])[1]
        assert first == second
        assert first != _run(capsys, ["gen", "--ns", "3", "--nt", "3", "--seed", "8"])[1]

    def test_sizes_and_ranges(self, capsys):
        out = _run(capsys, ["gen", "--ns", "4", "--nt", "6", "--coord-max", "9", "--cap-max", "2"])[1]
        data = json.loads(out)
        assert len(data["s"]) == len(data["alpha"]) == 4
        assert len(data["t"]) == len(data["beta"]) == 6
        assert all(0 <= x <= 9 for x in data["s"] + data["t"])
        assert all(1 <= c <= 2 for c in data["alpha"] + data["beta"])

    def test_feasible_only(self, capsys):
        for seed in range(20):
            out = _run(capsys, ["gen", "--ns", "1", "--nt", "4", "--cap-max", "4",
                                "--seed", str(seed), "--feasible-only"])[1]
            assert feasible(instance_from_json(json.loads(out)))

    def test_bad_sizes(self, capsys):
        assert _run(capsys, ["gen", "--ns", "0"])[0] == 1


class TestVerify:
    def test_optimal(self, tmp_path, capsys):
        inst = _write(tmp_path, "i.json", FORCED)
        m = _write(tmp_path, "m.json", {"cost": 3, "pairs": [[0, 0], [0, 1]]})
        code, out, _ = _run(capsys, ["verify", inst, m, "--optimal"])
        assert code == 0 and json.loads(out)["ok"] is True

    def test_missing_degree_names_point(self, tmp_path, capsys):
        inst = _write(tmp_path, "i.json", FORCED)
        m = _write(tmp_path, "m.json", {"pairs": [[0, 0]]})
        code, out, err = _run(capsys, ["verify", inst, m])
        assert code == 3
        assert any("T-point 1" in p for p in json.loads(out)["problems"])
        assert "T-point 1" in err

    def test_suboptimal(self, tmp_path, capsys):
        inst = _write(tmp_path, "i.json", {"s": [0, 10], "t": [1, 2]})
        m = _write(tmp_path, "m.json", {"cost": 11, "pairs": [[0, 1], [1, 0]]})
        code, out, _ = _run(capsys, ["verify", inst, m])
        assert code == 0
        code, out, _ = _run(capsys, ["verify", inst, m, "--optimal"])
        assert code == 3 and json.loads(out)["optimal_cost"] == 9

    def test_claimed_cost_mismatch(self, tmp_path, capsys):
        inst = _write(tmp_path, "i.json", FORCED)
        m = _write(tmp_path, "m.json", {"cost": 5, "pairs": [[0, 0], [0, 1]]})
        assert _run(capsys, ["verify", inst, m])[0] == 3

    def test_bad_matching(self, tmp_path, capsys):
        inst = _write(tmp_path, "i.json", FORCED)
        m = _write(tmp_path, "m.json", {"pairs": [[0, 7]]})
        assert _run(capsys, ["verify", inst, m])[0] == 1


class TestBenchAndPartition:
    def test_bench_sizes(self, capsys):
        code, out, _ = _run(capsys, ["bench", "--sizes", "50,100", "--reps", "1",
                                     "--algo", "capdp"])
        lines = out.strip().splitlines()
        assert code == 0 and lines[0] == "n,k,algo,median_ns"
        assert [l.split(",")[0] for l in lines[1:]] == ["50", "100"]

    def test_bench_k_sweep(self, capsys):
        out = _run(capsys, ["bench", "--k-sweep", "2,8", "--n", "60", "--reps", "1"])[1]
        rows = [l.split(",") for l in out.strip().splitlines()[1:]]
        assert [(r[0], r[1]) for r in rows] == [("60", "2"), ("60", "8")]

    def test_partition(self, tmp_path, capsys):
        path = _write(tmp_path, "i.json", {"s": [3, 1], "t": [2, 5]})
        code, out, _ = _run(capsys, ["partition", path])
        data = json.loads(out)
        assert code == 0 and data["feasible"]
        assert [(b["side"], b["members"]) for b in data["blocks"]] == [
            ("S", [1]), ("T", [0]), ("S", [0]), ("T", [1])]
