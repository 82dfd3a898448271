"""CLI surface: subcommand contracts, file formats, exit codes."""

import csv
import json
from fractions import Fraction

import pytest

from hilbertalloc import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_sequence(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


CITY_SEQ = {
    "mode": "city",
    "capacity": 1,
    "resolution": 2,
    "requests": [
        {"id": "a", "size": "1/4"},
        {"id": "b", "size": "1/8"},
        {"id": "c", "size": "1/2"},
    ],
}


class TestAlloc:
    def test_city_whole_square(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {"mode": "city", "requests": [{"id": "all", "size": "1"}]},
        )
        code, out, _ = run(capsys, "alloc", "--input", seq)
        assert code == 0
        data = json.loads(out)
        assert len(data["regions"]) == 1
        assert data["regions"][0]["phi"] == pytest.approx(0.666667, abs=1e-6)
        assert data["max_phi"] == pytest.approx(0.666667, abs=1e-6)

    def test_regions_contiguous_and_exact(self, tmp_path, capsys):
        seq = write_sequence(tmp_path / "seq.json", CITY_SEQ)
        out_path = tmp_path / "alloc.json"
        code, _, _ = run(capsys, "alloc", "--input", seq, "--output", str(out_path))
        assert code == 0
        data = cli.read_allocation(str(out_path))
        starts = [r["start"] for r in data["regions"]]
        ends = [r["end"] for r in data["regions"]]
        assert starts == [0, 4, 6] and ends == [4, 6, 14]
        assert data["regions"][0]["c"] == Fraction(32, 3)

    def test_round_trip_exact_strings(self, tmp_path, capsys):
        seq = write_sequence(tmp_path / "seq.json", CITY_SEQ)
        first = tmp_path / "a.json"
        run(capsys, "alloc", "--input", seq, "--output", str(first))
        raw = json.loads(first.read_text())
        revived = cli.read_allocation(str(first))
        for raw_region, region in zip(raw["regions"], revived["regions"]):
            assert str(region["c"]) == raw_region["c"]

    def test_capacity_exceeded_exit_one(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {
                "mode": "city",
                "resolution": 1,
                "requests": [{"id": "a", "size": "1/4"}, {"id": "b", "size": "7/8"}],
            },
        )
        code, _, err = run(capsys, "alloc", "--input", seq)
        assert code == 1
        assert "capacity exceeded" in err

    def test_malformed_json_exit_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "alloc", "--input", str(bad))
        assert code == 1
        assert "malformed JSON" in err

    def test_float_city_size_rejected(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {"mode": "city", "requests": [{"id": "a", "size": 0.25}]},
        )
        code, _, err = run(capsys, "alloc", "--input", seq)
        assert code == 1
        assert "exact rational strings" in err

    def test_non_four_adic_rejected_without_round_up(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {"mode": "city", "requests": [{"id": "a", "size": "1/3"}]},
        )
        code, _, err = run(capsys, "alloc", "--input", seq)
        assert code == 1
        assert "size not representable" in err

    def test_round_up_requires_resolution(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {"mode": "city", "requests": [{"id": "a", "size": "1/3"}]},
        )
        code, _, err = run(capsys, "alloc", "--input", seq, "--round-up")
        assert code == 1
        assert "round-up requires explicit resolution" in err

    def test_round_up_pads_and_reports(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {
                "mode": "city",
                "resolution": 2,
                "requests": [{"id": "a", "size": "1/3"}, {"id": "b", "size": "1/4"}],
            },
        )
        code, out, err = run(capsys, "alloc", "--input", seq, "--round-up")
        assert code == 0
        assert "padded from 1/3 to 3/8" in err
        data = json.loads(out)
        assert data["round_up"] is True
        assert data["regions"][0]["size"] == "3/8"
        assert data["regions"][0]["requested"] == "1/3"
        assert data["regions"][1]["size"] == "1/4"
        assert "requested" not in data["regions"][1]

    def test_round_up_with_duplicate_ids(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {
                "mode": "city",
                "resolution": 2,
                "requests": [
                    {"id": "job", "size": "1/4"},
                    {"id": "job", "size": "1/3"},
                ],
            },
        )
        code, out, _ = run(capsys, "alloc", "--input", seq, "--round-up")
        assert code == 0
        data = json.loads(out)
        assert "requested" not in data["regions"][0]
        assert data["regions"][1]["requested"] == "1/3"

    def test_town_sequence(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {
                "mode": "town",
                "capacity": 64,
                "resolution": 8,
                "requests": [{"id": "a", "size": 5}, {"id": "b", "size": 3}],
            },
        )
        code, out, _ = run(capsys, "alloc", "--input", seq)
        assert code == 0
        data = json.loads(out)
        # First five curve points: the 2x2 corner block plus one neighbor.
        assert data["regions"][0]["c"] == "16"
        assert data["regions"][0]["phi"] == pytest.approx(32 / 5**2.5, abs=1e-9)
        assert data["capacity"] == 64

    def test_wrong_capacity_rejected(self, tmp_path, capsys):
        seq = write_sequence(
            tmp_path / "seq.json",
            {
                "mode": "town",
                "capacity": 60,
                "resolution": 8,
                "requests": [{"id": "a", "size": 5}],
            },
        )
        code, _, err = run(capsys, "alloc", "--input", seq)
        assert code == 1
        assert "capacity must be 64" in err

    def test_svg_is_deterministic(self, tmp_path, capsys):
        seq = write_sequence(tmp_path / "seq.json", CITY_SEQ)
        svg_a = tmp_path / "a.svg"
        svg_b = tmp_path / "b.svg"
        run(capsys, "alloc", "--input", seq, "--svg", str(svg_a))
        run(capsys, "alloc", "--input", seq, "--svg", str(svg_b))
        assert svg_a.read_bytes() == svg_b.read_bytes()
        assert b"<svg" in svg_a.read_bytes()


class TestWorst:
    def test_csv_columns_and_values(self, tmp_path, capsys):
        out_csv = tmp_path / "t.csv"
        code, out, _ = run(
            capsys, "worst", "--mode", "city", "--n-max", "16", "--csv", str(out_csv)
        )
        assert code == 0
        with open(out_csv) as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0]) == ["n", "c_exact", "phi", "Phi"]
        row14 = rows[13]
        assert row14["c_exact"] == "322"
        assert row14["phi"] == "0.8781"
        assert rows[0]["c_exact"] == "1/3"

    def test_stdout_table(self, capsys):
        code, out, _ = run(capsys, "worst", "--mode", "town", "--n-max", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,c_exact,phi,Phi"
        assert lines[1].startswith("1,0,0.0000")

    def test_plot_written(self, tmp_path, capsys):
        png = tmp_path / "t.png"
        code, _, _ = run(
            capsys, "worst", "--mode", "city", "--n-max", "10",
            "--csv", str(tmp_path / "t.csv"), "--plot", str(png),
        )
        assert code == 0
        assert png.stat().st_size > 0

    def test_threads_give_same_rows(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "worst", "--mode", "town", "--n-max", "20", "--csv", str(a))
        run(capsys, "worst", "--mode", "town", "--n-max", "20", "--csv", str(b),
            "--threads", "4")
        assert a.read_text() == b.read_text()


class TestBounds:
    def test_town_text(self, capsys):
        code, out, _ = run(capsys, "bounds", "--mode", "town")
        assert code == 0
        assert "upper=1.1230 lower=0.6292 factor=1.7848" in out
        assert "binding: n >= 81" in out

    def test_city_json(self, capsys):
        code, out, _ = run(capsys, "bounds", "--mode", "city", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["factor"] == pytest.approx(1.8092, abs=5e-4)
        assert len(data["rows"]) == 65
        assert data["rows"][13]["c"] == "322"

    def test_bad_level_exit_one(self, capsys):
        code, _, err = run(capsys, "bounds", "--mode", "town", "--level", "1")
        assert code == 1
        assert "level 2 only" in err


class TestScenario:
    def test_discrete_text(self, capsys):
        code, out, _ = run(capsys, "scenario", "discrete-3x3")
        assert code == 0
        assert "ratio = 1.144867" in out
        for needle in ("0.715542", "0.625000", "0.572433", "0.500000"):
            assert needle in out

    def test_continuous_json(self, capsys):
        code, out, _ = run(capsys, "scenario", "continuous-half", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["ratio"] == pytest.approx(1.06066, abs=1e-5)
        assert data["phi_values"]["notched_complement"] == pytest.approx(
            0.895431, abs=1e-6
        )


class TestOracle:
    def test_match(self, capsys):
        code, out, _ = run(capsys, "oracle", "--n", "4")
        assert code == 0
        assert "match: yes" in out

    def test_explicit_box(self, capsys):
        code, out, _ = run(capsys, "oracle", "--n", "7", "--box", "4x4")
        assert code == 0
        assert "c=38" in out

    def test_box_too_small_exit_one(self, capsys):
        code, _, err = run(capsys, "oracle", "--n", "5", "--box", "2x2")
        assert code == 1
        assert "box too small" in err

    def test_mismatch_is_internal_error(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "optimal_town_total", lambda n: 999)
        code, _, err = run(capsys, "oracle", "--n", "3")
        assert code == 2
        assert "MISMATCH" in err


class TestHilbert:
    def test_moves(self, capsys):
        code, out, _ = run(capsys, "hilbert", "--level", "1")
        assert code == 0
        assert out == "urd\n"

    def test_coords(self, capsys):
        code, out, _ = run(capsys, "hilbert", "--level", "1", "--format", "coords")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "index,x,y"
        assert lines[1] == "0,0,1"
        assert len(lines) == 5

    def test_svg_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        run(capsys, "hilbert", "--level", "3", "--format", "svg", "--output", str(a))
        run(capsys, "hilbert", "--level", "3", "--format", "svg", "--output", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_bad_level_exit_one(self, capsys):
        code, _, err = run(capsys, "hilbert", "--level", "0")
        assert code == 1
        assert "invalid level" in err


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 1

    def test_missing_required_flag(self, capsys):
        code, _, _ = run(capsys, "worst")
        assert code == 1
