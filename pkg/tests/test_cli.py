import json
from fractions import Fraction

import pytest

from toricpack.cli import main

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def square_spec(tmp_path, capsys):
    path = tmp_path / "square.json"
    code, _, _ = run(capsys, "family", "cube", "2", "1", "-o", str(path), "--name", "square")
    assert code == 0
    return path


class TestFamily:
    @pytest.mark.parametrize(
        "args",
        [
            ("simplex", "3", "1"),
            ("simplex", "1", "5/2"),
            ("cube", "4"),
            ("chopped_simplex", "1/10", "1/10"),
            ("chopped_simplex", "9/10", "1/20"),
            ("product", "simplex:1:1", "simplex:2:1"),
            ("scale", "cube:2:1", "3"),
        ],
    )
    def test_roundtrip_validates(self, tmp_path, capsys, args):
        out = tmp_path / "spec.json"
        code, _, _ = run(capsys, "family", *args, "-o", str(out))
        assert code == 0
        code, stdout, _ = run(capsys, "validate", str(out))
        assert code == 0
        assert "valid Delzant polytope" in stdout

    def test_unknown_generator(self, capsys):
        code, _, err = run(capsys, "family", "dodecahedron", "1")
        assert code == 1
        assert "unknown generator" in err

    def test_invalid_args_domain(self, capsys):
        code, _, err = run(capsys, "family", "chopped_simplex", "3/4", "1/2")
        assert code == 2

    def test_prism_counts(self, tmp_path, capsys):
        out = tmp_path / "prism.json"
        run(capsys, "family", "product", "simplex:1:1", "simplex:2:1", "-o", str(out))
        code, stdout, _ = run(capsys, "validate", str(out), "--json")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["num_vertices"] == 6 and doc["num_facets"] == 5


class TestValidate:
    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 1

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", "does-not-exist.json")
        assert code == 1

    def test_non_delzant(self, tmp_path, capsys):
        spec = tmp_path / "tri.json"
        spec.write_text(
            json.dumps(
                {
                    "dim": 2,
                    "halfspaces": [
                        {"normal": [1, 0], "offset": "0"},
                        {"normal": [0, 1], "offset": "0"},
                        {"normal": [-1, -2], "offset": "-2"},
                    ],
                }
            )
        )
        code, _, err = run(capsys, "validate", str(spec))
        assert code == 2
        assert "not unimodular at vertex 1 (det = -2)" in err

    def test_both_forms_rejected(self, tmp_path, capsys):
        spec = tmp_path / "both.json"
        spec.write_text(
            json.dumps({"generator": "cube", "args": ["2"], "dim": 2, "halfspaces": []})
        )
        code, _, err = run(capsys, "validate", str(spec))
        assert code == 1

    def test_generator_spec_file(self, tmp_path, capsys):
        spec = tmp_path / "gen.json"
        spec.write_text(json.dumps({"generator": "chopped_simplex", "args": ["1/10", "1/10"]}))
        code, stdout, _ = run(capsys, "validate", str(spec), "--json")
        assert code == 0
        assert json.loads(stdout)["num_facets"] == 5

    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1


class TestPack:
    def test_square_json(self, square_spec, capsys):
        code, stdout, _ = run(capsys, "pack", str(square_spec), "--all", "--json")
        assert code == 0
        doc = json.loads(stdout)
        assert doc["max_density"] == "1"
        assert doc["num_maximizers"] == 2
        assert doc["maximal_packings"] == [
            ["0", "1", "1", "0"],
            ["1", "0", "0", "1"],
        ]
        assert doc["packing_polytope"]["dim"] == 4
        assert len(doc["packing_polytope"]["halfspaces"]) == 10

    def test_first_only_without_all(self, square_spec, capsys):
        code, stdout, _ = run(capsys, "pack", str(square_spec), "--json")
        doc = json.loads(stdout)
        assert doc["num_maximizers"] == 2
        assert len(doc["maximal_packings"]) == 1

    def test_pentagon_density(self, tmp_path, capsys):
        spec = tmp_path / "pent.json"
        run(capsys, "family", "chopped_simplex", "1/10", "1/10", "-o", str(spec))
        code, stdout, _ = run(capsys, "pack", str(spec), "--json")
        assert json.loads(stdout)["max_density"] == "83/98"

    def test_sliver_density(self, tmp_path, capsys):
        spec = tmp_path / "sliver.json"
        run(capsys, "family", "chopped_simplex", "9/10", "1/20", "-o", str(spec))
        code, stdout, _ = run(capsys, "pack", str(spec), "--json")
        assert json.loads(stdout)["max_density"] == "2/25"

    def test_render_svg(self, square_spec, tmp_path, capsys):
        svg = tmp_path / "out.svg"
        code, _, _ = run(
            capsys, "pack", str(square_spec), "--render", str(svg), "--json"
        )
        assert code == 0
        text = svg.read_text()
        assert text.startswith("<svg")
        assert 'viewBox="0 0 800 800"' in text
        assert 'fill-opacity="0.4"' in text
        assert "r=1" in text

    def test_render_rejects_3d(self, tmp_path, capsys):
        spec = tmp_path / "cube3.json"
        run(capsys, "family", "cube", "3", "-o", str(spec))
        code, _, err = run(capsys, "render", str(spec), str(tmp_path / "x.svg"))
        assert code == 2

    def test_deterministic_output(self, square_spec, capsys):
        _, out1, _ = run(capsys, "pack", str(square_spec), "--all", "--json")
        _, out2, _ = run(capsys, "pack", str(square_spec), "--all", "--json")
        assert out1 == out2


class TestInfo:
    def test_report_fields(self, square_spec, capsys):
        code, stdout, _ = run(capsys, "info", str(square_spec))
        assert code == 0
        doc = json.loads(stdout)
        assert doc["euler_characteristic"] == 4
        assert doc["volume"] == "1"
        assert doc["corner_radii"] == ["1", "1", "1", "1"]
        assert len(doc["fan_rays"]) == 4
        assert len(doc["frames"]) == 4
        assert all(e["length"] == "1" for e in doc["edges"])
        assert doc["pair_bounds"][0][3] == "2"

    def test_safe_radius_field(self, square_spec, capsys):
        code, stdout, _ = run(
            capsys, "info", str(square_spec), "--safe-radius", "--seed", "5"
        )
        doc = json.loads(stdout)
        num, _, den = doc["safe_radius_estimate"].partition("/")
        assert F(int(num), int(den or 1)) >= F(1, 4)

    def test_deterministic(self, square_spec, capsys):
        _, out1, _ = run(capsys, "info", str(square_spec))
        _, out2, _ = run(capsys, "info", str(square_spec))
        assert out1 == out2


class TestScan:
    @pytest.fixture()
    def direction(self, tmp_path):
        path = tmp_path / "dir.json"
        path.write_text(json.dumps({"s2": ["0", "0", "-1", "0"]}))
        return path

    def test_rectangle_scan(self, square_spec, direction, tmp_path, capsys):
        csv_path = tmp_path / "scan.csv"
        summary_path = tmp_path / "sum.json"
        code, _, _ = run(
            capsys,
            "scan",
            "--base",
            str(square_spec),
            "--dir",
            str(direction),
            "--samples",
            "16",
            "--csv",
            str(csv_path),
            "--summary",
            str(summary_path),
        )
        assert code == 0
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "t,volume,omega,omega_decimal,n_maximizers"
        assert len(lines) == 18
        omegas = [F(line.split(",")[2]) for line in lines[1:]]
        assert omegas[0] == 1 and omegas[-1] == F(1, 2)
        assert all(a > b for a, b in zip(omegas, omegas[1:]))
        summary = json.loads(summary_path.read_text())
        assert summary["vol_root_midpoint_concave"] is True
        assert summary["omega_root_midpoint_convex_near_zero"] is True
        assert summary["endpoints_homothetic"] is False

    def test_constant_direction(self, square_spec, tmp_path, capsys):
        d = tmp_path / "zero.json"
        d.write_text(json.dumps({"s2": ["0", "0", "0", "0"]}))
        code, stdout, err = run(
            capsys, "scan", "--base", str(square_spec), "--dir", str(d), "--samples", "4"
        )
        assert code == 0
        rows = stdout.strip().splitlines()[1:]
        value_columns = {row.split(",", 1)[1] for row in rows}
        assert len(value_columns) == 1

    def test_collapse_direction_names_t(self, square_spec, tmp_path, capsys):
        d = tmp_path / "bad.json"
        d.write_text(json.dumps({"s2": ["2", "0", "0", "0"]}))
        code, _, err = run(
            capsys, "scan", "--base", str(square_spec), "--dir", str(d), "--samples", "4"
        )
        assert code == 2
        assert "t = 1/2" in err

    def test_missing_s2(self, square_spec, tmp_path, capsys):
        d = tmp_path / "empty.json"
        d.write_text("{}")
        code, _, err = run(
            capsys, "scan", "--base", str(square_spec), "--dir", str(d)
        )
        assert code == 1
