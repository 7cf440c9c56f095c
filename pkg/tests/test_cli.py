from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from prscodes.cli import (
    UsageError,
    load_examples,
    main,
    parse_field_text,
    parse_trace_recipe,
    run,
)


def run_json(*argv):
    code, out = run([*argv, "--format", "json"])
    assert code == 0, out
    return json.loads(out)


class TestParsing:
    @pytest.mark.parametrize("text,expect", [("81", (81, 3)), ("3^4", (81, 3)), ("9^2", (81, 9)), (" 16 ", (16, 2))])
    def test_field(self, text, expect):
        assert parse_field_text(text) == expect

    @pytest.mark.parametrize("text", ["x", "12", "6^2"])
    def test_bad_field(self, text):
        with pytest.raises(UsageError):
            parse_field_text(text)

    def test_trace_recipe(self):
        assert parse_trace_recipe("tr:q=2,l=4,at=13") == {"q": 2, "l": 4, "at": 13, "complementary": False}
        assert parse_trace_recipe("tr:q=2,l=2,t=1,comp")["complementary"]
        for bad in ("q=2", "tr:q=2,l=4", "tr:q=2,l=4,at=x", "tr:z=1,l=4,at=3"):
            with pytest.raises(UsageError):
                parse_trace_recipe(bad)


class TestCommands:
    def test_cyclo(self):
        d = run_json("cyclo", "--field", "3^2", "--N", "9")
        assert d["sets"] == [[0], [1, 3], [2, 6], [4], [5, 7], [8]]
        assert d["A"] == [0, 1, 2, 4, 5, 8]

    def test_subcode_and_dual(self):
        d = run_json("subcode", "--field", "9", "--delta", "range:d=4")
        assert (d["n"], d["k"]) == (10, 4)
        d = run_json("dual", "--field", "9", "--delta", "range:d=4", "--basis")
        assert (d["n"], d["k"]) == (10, 6)

    def test_build(self):
        d = run_json("build", "--field", "16", "--delta", "0,1,2")
        assert (d["n"], d["k"]) == (17, 3)
        d = run_json("build", "--field", "16", "--delta", "0,1,2", "--affine")
        assert (d["n"], d["k"]) == (16, 3)

    def test_distance(self):
        d = run_json("distance", "--field", "4^2", "--delta", "0,1,4,10", "--witness")
        assert (d["n"], d["k"]) == (17, 13)
        assert d["distance"]["value"] == 3 and d["distance"]["kind"] == "exact"
        assert len(d["distance"]["witness"]) == 17
        assert d["bound"] == 3

    def test_distance_bounds(self):
        d = run_json("distance", "--field", "4^2", "--delta", "range:d=4", "--distance", "bounds")
        assert d["distance"]["kind"] == "lower_bound"

    def test_quantum_euclidean(self):
        d = run_json("quantum", "euclidean", "--field", "9^2", "--recipe", "consec:t=5")
        assert (d["n"], d["kappa"], d["c"]) == (82, 61, 1)
        assert d["delta"]["value"] == 7

    def test_quantum_hermitian_chain(self):
        d = run_json("quantum", "hermitian", "--field", "4^2", "--recipe", "consec:t=1",
                     "--propagate", "2", "--chain")
        assert [(r["n"], r["kappa"], r["c"]) for r in d] == [(17, 12, 1), (16, 12, 2), (15, 12, 3)]

    def test_quantum_asymmetric(self):
        d = run_json("quantum", "asymmetric", "--field", "4^2", "--d1", "14", "--d2", "15",
                     "--distance", "exact")
        assert d["delta"]["z"]["value"] == 3 and d["delta"]["x"]["value"] == 2

    def test_quantum_trace(self):
        d = run_json("quantum", "trace", "--recipe", "tr:q=2,l=4,at=10")
        assert (d["n"], d["kappa"], d["c"]) == (129, 68, 1)

    def test_text_and_csv(self):
        code, out = run(["quantum", "euclidean", "--field", "9^2", "--recipe", "consec:t=5"])
        assert code == 0 and "[[82,61,7;1]]_9" in out
        code, out = run(["cyclo", "--field", "3^2", "--N", "9", "--format", "csv"])
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 1


class TestExitCodes:
    def test_usage(self, capsys):
        assert main(["cyclo"]) == 2
        assert main(["quantum", "asymmetric", "--field", "16"]) == 2
        assert main(["reproduce", "nope"]) == 2
        assert main(["cyclo", "--field", "12"]) == 2

    def test_hypothesis(self, capsys):
        assert main(["quantum", "euclidean", "--field", "9^2", "--N", "5", "--recipe", "consec:t=1"],
                    out=io.StringIO()) == 3
        assert "p | N" in capsys.readouterr().err

    def test_invalid_input(self, capsys):
        assert main(["subcode", "--field", "9", "--delta", "1,2"], out=io.StringIO()) == 3

    def test_reproduce_mismatch(self, monkeypatch):
        import prscodes.cli as cli

        examples = load_examples()
        broken = json.loads(json.dumps(examples["ex-2.1"]))
        broken["checks"][0]["expect"]["A"] = [0]
        monkeypatch.setattr(cli, "load_examples", lambda: {"ex-2.1": broken})
        code, out = run(["reproduce", "ex-2.1"])
        assert code == 4 and "MISMATCH" in out


class TestReproduce:
    def test_list(self):
        code, out = run(["reproduce", "--list"])
        assert code == 0
        assert out.count("\n") == len(load_examples())

    def test_all(self):
        code, out = run(["reproduce", "all"])
        assert code == 0, out
        assert "MISMATCH" not in out
        assert out.count("[ok]") == sum(len(e["checks"]) for e in load_examples().values())

    def test_computed_fixtures_record_published(self):
        for ex in load_examples().values():
            for check in ex["checks"]:
                assert check["source"] in ("published", "computed")
                if check["source"] == "computed":
                    assert "published" in check and check.get("note")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prscodes", "cyclo", "--field", "3^2", "--N", "9",
                           "--format", "json"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["B"] == [0, 3, 4, 6, 7, 8]
