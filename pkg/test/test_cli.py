# Copyright (c) 2024-2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

from unittest.mock import patch

import orjson
import orjsonl
import pytest

from chevwidth import cli, config
from chevwidth.algebra.liealg import (
    StructureConstants,
    build_chevalley_basis,
    build_structure_constants,
)
from chevwidth.algebra.roots import parse_system
from chevwidth.errors import VerificationFailure
from chevwidth.utils.output import save_constants


@pytest.fixture(autouse=True)
def no_local_config(tmp_path):
    with patch.object(config, "CHEVWIDTH_CONFIG_PATH", new=tmp_path / "missing.yml"):
        yield


def run(tmp_path, *args) -> dict:
    """Run the command line and return the JSON written to --out."""
    out = tmp_path / "out.json"
    argv = ["chevwidth", *args, "--out", str(out), "--cache-dir", str(tmp_path / "cache"), "--no-progress"]
    with patch("sys.argv", argv):
        cli.main()
    return orjson.loads(out.read_bytes())


def run_failing(tmp_path, *args) -> tuple[int, dict | None]:
    out = tmp_path / "out.json"
    argv = ["chevwidth", *args, "--out", str(out), "--no-progress"]
    with patch("sys.argv", argv):
        with pytest.raises(SystemExit) as execinfo:
            cli.main()
    report = orjson.loads(out.read_bytes()) if out.exists() else None
    return execinfo.value.code, report


def write_json(path, data):
    path.write_bytes(orjson.dumps(data))
    return str(path)


class TestUsage:
    def test_missing_subcommand(self, capsys):
        with patch("sys.argv", ["chevwidth", "roots"]):
            with pytest.raises(SystemExit) as execinfo:
                cli.main()
        assert execinfo.value.code == 1
        assert "error:" in capsys.readouterr().err

    def test_invalid_system(self, tmp_path, capsys):
        code, report = run_failing(tmp_path, "roots", "info", "Q2")
        assert code == 1
        assert report is None
        assert "InvalidType" in capsys.readouterr().err

    def test_invalid_seed(self, tmp_path, capsys):
        code, _ = run_failing(tmp_path, "roots", "info", "A2", "--seed", "-1")
        assert code == 1
        assert "non-negative" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        code, _ = run_failing(
            tmp_path, "factor", "--system", "A1", "--ring", "Z", "--matrix", str(tmp_path / "nope.json")
        )
        assert code == 1
        assert "FileNotFoundError" in capsys.readouterr().err

    def test_bad_matrix(self, tmp_path, capsys):
        matrix = tmp_path / "matrix.json"
        matrix.write_text("[1, 2]")
        code, _ = run_failing(tmp_path, "factor", "--system", "A1", "--ring", "Z", "--matrix", str(matrix))
        assert code == 1
        assert "array of rows" in capsys.readouterr().err

    def test_stdout(self, capsysbinary):
        with patch("sys.argv", ["chevwidth", "roots", "info", "A1"]):
            cli.main()
        assert orjson.loads(capsysbinary.readouterr().out)["num_roots"] == 2


class TestRootsAndConstants:
    def test_roots_info(self, tmp_path):
        data = run(tmp_path, "roots", "info", "G2")
        assert data["cartan_matrix"] == [[2, -1], [-3, 2]]
        assert data["num_positive_roots"] == 6
        assert data["weyl_group_order"] == 12

    def test_constants_json(self, tmp_path):
        data = run(tmp_path, "constants", "A2")
        assert data["system"] == "A2"
        assert len(data["rows"]) == 12
        assert (tmp_path / "cache" / "constants-A2.json").exists()

    def test_constants_csv(self, tmp_path):
        out = tmp_path / "constants.csv"
        with patch("sys.argv", ["chevwidth", "constants", "A2", "--format", "csv", "--out", str(out), "--cache-dir", str(tmp_path)]):
            cli.main()
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,beta,i,j,N"
        assert len(lines) == 13


class TestVerify:
    def test_commutator(self, tmp_path):
        data = run(tmp_path, "verify", "commutator", "--system", "C2", "--ring", "F5", "--trials", "2")
        assert data["status"] == "passed"
        assert data["failures"] == []

    def test_commutator_corrupted_cache(self, tmp_path):
        # one sign flipped and the hash recomputed, so the cache is trusted
        system = parse_system("C2")
        constants = build_structure_constants(build_chevalley_basis(system))
        (a, b, i, j), value = next(iter(sorted(constants.table.items())))
        table = dict(constants.table)
        table[(a, b, i, j)] = -value
        cache_dir = tmp_path / "cache"
        save_constants(StructureConstants(system=system, table=table), cache_dir)
        code, report = run_failing(
            tmp_path, "verify", "commutator", "--system", "C2", "--ring", "F5", "--cache-dir", str(cache_dir)
        )
        assert code == 2
        assert report["invariant"] == "commutator formula"
        assert {"alpha": a, "beta": b} in [
            {"alpha": failure["alpha"], "beta": failure["beta"]} for failure in report["failures"]
        ]

    def test_commutator_stale_hash(self, tmp_path):
        # a table that no longer matches its hash is rebuilt
        system = parse_system("C2")
        constants = build_structure_constants(build_chevalley_basis(system))
        cache_dir = tmp_path / "cache"
        path = save_constants(constants, cache_dir)
        cached = orjson.loads(path.read_bytes())
        cached["rows"][0]["N"] = -cached["rows"][0]["N"]
        path.write_bytes(orjson.dumps(cached))
        data = run(tmp_path, "verify", "commutator", "--system", "C2", "--ring", "F5", "--trials", "2")
        assert data["status"] == "passed"
        assert orjson.loads(path.read_bytes())["hash"] == constants.content_hash()

    def test_a1(self, tmp_path):
        data = run(tmp_path, "verify", "a1", "--field", "4")
        assert data == {"ring": "F4[x^2+x+1]", "status": "passed", "checked": 12}

    def test_a1_failure(self, tmp_path):
        with patch.object(cli, "a1_relation_holds", return_value=False):
            code, report = run_failing(tmp_path, "verify", "a1", "--field", "2")
        assert code == 2
        assert report["status"] == "failed"
        assert report["invariant"] == "A1 relation"
        assert len(report["failures"]) == 2

    def test_symbols(self, tmp_path):
        data = run(tmp_path, "verify", "symbols", "--system", "A1", "--field", "5")
        assert data["checked"] == 16

    def test_symbols_need_faithful_rep(self, tmp_path, capsys):
        code, _ = run_failing(tmp_path, "verify", "symbols", "--system", "A1", "--field", "3", "--rep", "adjoint")
        assert code == 1
        assert "faithful" in capsys.readouterr().err


def test_groups_form(tmp_path):
    data = run(tmp_path, "groups", "form", "--system", "C2")
    assert data["form"] == [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    identity = [[int(i == j) for j in range(4)] for i in range(4)]
    matrix = write_json(tmp_path / "matrix.json", identity)
    data = run(tmp_path, "groups", "form", "--system", "C2", "--matrix", matrix)
    assert data["preserves_form"]


class TestSteinberg:
    def test_eval(self, tmp_path):
        word = write_json(tmp_path / "word.json", [{"root": 0, "param": "2"}])
        data = run(tmp_path, "steinberg", "eval", "--system", "A1", "--ring", "F5", "--file", word)
        assert data["matrix"] == [["1", "2"], ["0", "1"]]
        assert data["letters"] == 1
        assert data["k2_witness"] == "NotInK2"

    def test_collect(self, tmp_path):
        word = write_json(tmp_path / "word.json", [{"root": 1, "param": "1"}, {"root": 0, "param": "1"}])
        data = run(tmp_path, "steinberg", "collect", "--system", "A2", "--ring", "F5", "--file", word)
        assert [letter["root"] for letter in data["word"]] == [0, 1, 2]

    def test_collect_mixed_signs(self, tmp_path, capsys):
        word = write_json(tmp_path / "word.json", [{"root": 0, "param": "1"}, {"root": 3, "param": "1"}])
        code, _ = run_failing(tmp_path, "steinberg", "collect", "--system", "A2", "--ring", "F5", "--file", word)
        assert code == 1
        assert "MixedSigns" in capsys.readouterr().err


class TestK2:
    def test_class(self, tmp_path):
        data = run(tmp_path, "k2", "class", "--ring", "F3(t)", "--f", "t", "--g", "t")
        assert data == {"symbol": "{t, t}", "residues": {"t": "2"}}

    def test_ring(self, tmp_path):
        data = run(tmp_path, "k2", "ring", "--ring", "F5[t,t^-1]")
        assert data["order"] == 4
        assert data["generator"] == {"t": "2"}

    def test_sequence(self, tmp_path):
        data = run(tmp_path, "k2", "sequence", "--ring", "F2[t]", "--max-degree", "2")
        assert data["passed"]
        assert len(data["surjectivity"]) == 3


class TestFactor:
    def test_matrix(self, tmp_path):
        matrix = write_json(tmp_path / "matrix.json", [[13, 5], [5, 2]])
        data = run(tmp_path, "factor", "--system", "A1", "--ring", "Z", "--matrix", matrix)
        assert data["target"] == [["13", "5"], ["5", "2"]]
        assert data["width"] == len(data["factors"])
        assert "l2_estimate" in data["reference_lines"]

    def test_not_unimodular(self, tmp_path, capsys):
        matrix = write_json(tmp_path / "matrix.json", [[2, 0], [0, 1]])
        code, _ = run_failing(tmp_path, "factor", "--system", "A1", "--ring", "Z", "--matrix", matrix)
        assert code == 1
        assert "NotUnimodular" in capsys.readouterr().err

    def test_verification_failure(self, tmp_path):
        matrix = write_json(tmp_path / "matrix.json", [[1, 0], [0, 1]])
        with patch.object(cli, "factor", side_effect=VerificationFailure("bad product")):
            code, report = run_failing(tmp_path, "factor", "--system", "A1", "--ring", "Z", "--matrix", matrix)
        assert code == 2
        assert report == {"status": "failed", "invariant": "round trip", "failures": ["bad product"]}

    def test_sample(self, tmp_path):
        histogram = tmp_path / "widths.csv"
        records = tmp_path / "factors.jsonl"
        data = run(
            tmp_path,
            "factor", "--system", "A2", "--ring", "F2[t]", "--sample", "4",
            "--histogram", str(histogram), "--records", str(records),
        )
        assert data["samples"] == 4
        assert sum(row["count"] for row in data["histogram"]) == 4
        assert histogram.read_text().startswith("width,count\n")
        assert len(orjsonl.load(records)) == 4

    def test_sample_is_reproducible(self, tmp_path):
        args = ("factor", "--system", "A1", "--ring", "F3[t]", "--sample", "5", "--seed", "3")
        assert run(tmp_path, *args) == run(tmp_path, *args)

    def test_matrix_or_sample_required(self, tmp_path):
        code, _ = run_failing(tmp_path, "factor", "--system", "A1", "--ring", "Z")
        assert code == 1


class TestUnitriangular:
    def test_membership(self, tmp_path):
        matrix = write_json(tmp_path / "matrix.json", [[0, 1], [4, 0]])
        args = ("unitriangular", "--system", "A1", "--ring", "F5", "--matrix", matrix)
        assert not run(tmp_path, *args, "--N", "2")["member"]
        data = run(tmp_path, *args, "--N", "3")
        assert data["member"]
        assert data["form"]["signs"] == [1, -1, 1]

    def test_too_large(self, tmp_path, capsys):
        matrix = write_json(tmp_path / "matrix.json", [[1, 0], [0, 1]])
        code, _ = run_failing(
            tmp_path, "unitriangular", "--system", "A1", "--ring", "F5", "--matrix", matrix, "--N", "9"
        )
        assert code == 1
        assert "TooLargeForExhaustive" in capsys.readouterr().err


class TestTavgen:
    def test_exhaustive(self, tmp_path):
        data = run(tmp_path, "tavgen", "--target", "A2", "--field", "2", "--exhaustive")
        assert data["elements"] == 168
        assert data["passed"]

    def test_samples(self, tmp_path):
        data = run(tmp_path, "tavgen", "--target", "A3", "--field", "2", "--subsystems", "A2,A2", "--samples", "2")
        assert data["subsystems"] == ["A2", "A2"]
        assert data["samples"] == 2
        assert data["length"] == 4


class TestSuite:
    def test_selected_check(self, tmp_path):
        data = run(tmp_path, "suite", "acceptance", "--check", "a1-relation", "--check", "k2-of-rings")
        assert data["status"] == "passed"
        assert [check["name"] for check in data["checks"]] == ["a1-relation", "k2-of-rings"]

    def test_unknown_check(self, tmp_path):
        code, _ = run_failing(tmp_path, "suite", "acceptance", "--check", "everything")
        assert code == 1
