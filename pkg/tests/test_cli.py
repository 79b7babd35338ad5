import csv
import io
import json
import shutil
import subprocess

import pytest

from cliquerich.cli import main
from cliquerich.clubs import ClubReport
from cliquerich.errors import RecipeError
from cliquerich.experiment import recipe_cells, run_experiment, validate_recipe
from cliquerich.fixtures import fixture_names
from cliquerich.graph import from_edge_list, to_dense_matrix, to_edge_list
from cliquerich.pipeline import PipelineTrace

from .helpers import two_k6_with_chaff


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBasics:
    def test_help(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0 and "supernodes" in out

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0 and out.strip() == "0.1.0"

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["nope"],
            ["density"],
            ["density", "--fixture", "fig2", "--input", "x"],
            ["census", "--fixture", "fig2", "-k", "1"],
            ["census", "--fixture", "fig2", "--mode", "pseudo"],
            ["census", "--fixture", "fig2", "--workers", "0"],
            ["rich-club", "--fixture", "fig2"],
            ["rich-club", "--fixture", "fig2", "-j", "abc"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 1
        assert "error" in err

    def test_data_errors(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1\n1 1\n")
        code, _, err = run(capsys, "density", "--input", str(bad))
        assert code == 2 and "line 2" in err
        code, _, _ = run(capsys, "density", "--input", str(tmp_path / "missing"))
        assert code == 2
        code, _, _ = run(capsys, "density", "--fixture", "nope")
        assert code == 2
        code, _, _ = run(capsys, "census", "--fixture", "fig5_exact", "-k", "9")
        assert code == 2

    def test_console_script(self):
        exe = shutil.which("cliquerich")
        if exe is None:
            pytest.skip("console script not on PATH")
        r = subprocess.run([exe, "density", "--fixture", "fig1_G"], capture_output=True, text=True)
        assert r.returncode == 0
        assert json.loads(r.stdout)["density"] == pytest.approx(1 / 7)


class TestCommands:
    def test_density(self, capsys):
        code, out, _ = run(capsys, "density", "--fixture", "fig1_G")
        assert code == 0
        assert json.loads(out) == {"n": 15, "edges": 15, "density": pytest.approx(1 / 7)}

    def test_density_csv(self, capsys):
        code, out, _ = run(capsys, "density", "--fixture", "fig1_G", "--output-format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "edges", "density"] and rows[1][:2] == ["15", "15"]

    def test_census_json(self, capsys):
        code, out, _ = run(capsys, "census", "--fixture", "fig2", "-k", "3")
        d = json.loads(out)
        assert code == 0 and d["total"] == 8
        assert d["vertex_counts"].count(3) == 8

    def test_census_pseudo_csv(self, capsys, tmp_path):
        target = tmp_path / "t.csv"
        code, _, _ = run(capsys, "census", "--fixture", "fig6_top", "-k", "5", "--mode", "pseudo",
                         "-w", "200", "--output-format", "csv", "--out", str(target))
        assert code == 0
        rows = list(csv.reader(target.open(newline="")))
        assert rows[0] == ["kind", "u", "v", "label", "count"]
        assert [r[4] for r in rows[1:6]] == ["1"] * 5

    def test_rich_club(self, capsys):
        code, out, _ = run(capsys, "rich-club", "--fixture", "fig1_Gprime", "-j", "4")
        r = ClubReport.from_dict(json.loads(out))
        assert r.members == (1, 3, 5)
        assert r.coefficient == pytest.approx(1 / 3)

    def test_rich_club_undefined(self, capsys):
        code, out, _ = run(capsys, "rich-club", "--fixture", "fig1_G", "-j", "99")
        assert json.loads(out)["coefficient"] == "undefined"

    def test_rich_club_target_size(self, capsys):
        code, out, _ = run(capsys, "rich-club", "--fixture", "fig1_G", "--target-size", "3")
        assert json.loads(out)["members"] == [1, 3, 5]

    def test_super_rich_club(self, capsys):
        code, out, _ = run(capsys, "super-rich-club", "--fixture", "fig2", "-k", "3", "-j", "2")
        d = json.loads(out)
        assert d["member_labels"] == ["v2", "v3", "v4", "v5", "v7", "v8", "v9", "v10"]
        assert d["coefficient"] == pytest.approx(3 / 7)
        assert d["weighted_coefficient"] == pytest.approx(12 / 23)

    def test_super_rich_club_csv(self, capsys):
        code, out, _ = run(capsys, "super-rich-club", "--fixture", "fig2", "-k", "3", "-j", "2",
                           "--output-format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[1][0] == "coefficient"
        assert sum(r[0] == "member" for r in rows) == 8
        assert sum(r[0] == "edge" for r in rows) == 12

    def test_edge_club(self, capsys):
        code, out, _ = run(capsys, "edge-club", "--fixture", "fig3", "-k", "3", "-j", "2")
        d = json.loads(out)
        assert d["member_labels"] == ["u1", "u2", "u3", "u5"]
        assert d["coefficient"] == pytest.approx(0.25)

    def test_supernodes_matrix_input(self, capsys, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(to_dense_matrix(two_k6_with_chaff()))
        trace_csv = tmp_path / "trace.csv"
        code, out, _ = run(capsys, "supernodes", "--input", str(path), "--format", "matrix",
                           "--trace-csv", str(trace_csv))
        assert code == 0
        tr = PipelineTrace.from_dict(json.loads(out))
        assert tr.supernodes == tuple(range(12))
        rows = list(csv.reader(trace_csv.open(newline="")))
        assert len(rows) == 1 + 32
        assert rows[0][0] == "vertex" and rows[0][-1] == "supernode"

    def test_supernodes_schedule_and_cut(self, capsys, tmp_path):
        sched = tmp_path / "s.json"
        sched.write_text("[50, 75]")
        code, out, _ = run(capsys, "supernodes", "--fixture", "fig5_exact", "--schedule",
                           str(sched), "--hard-percentile-cut")
        d = json.loads(out)
        assert code == 0 and d["hard_cut"] is True
        assert [r["percentile"] for r in d["iterations"]] == [50, 75]

    def test_supernodes_bad_schedule(self, capsys, tmp_path):
        sched = tmp_path / "s.json"
        sched.write_text("[150]")
        code, _, _ = run(capsys, "supernodes", "--fixture", "fig5_exact", "--schedule", str(sched))
        assert code == 2

    def test_gen_roundtrip(self, capsys, tmp_path):
        out_file = tmp_path / "g.txt"
        code, _, _ = run(capsys, "gen", "--family", "ws", "-n", "50", "--density", "0.25",
                         "--seed", "4", "--out", str(out_file))
        assert code == 0
        text = out_file.read_text()
        assert '"family": "ws"' in text.splitlines()[0]
        assert from_edge_list(text).num_edges == 300

    def test_gen_matrix(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "er", "-n", "6", "--density", "1",
                           "--seed", "0", "--as", "matrix")
        assert len(out.strip().splitlines()) == 6

    def test_gen_bad_density(self, capsys):
        code, _, _ = run(capsys, "gen", "--family", "er", "-n", "6", "--density", "2", "--seed", "0")
        assert code == 2

    def test_compare(self, capsys):
        code, out, _ = run(capsys, "compare", "--fixture", "fig2", "-k", "3", "--club-size", "8")
        d = json.loads(out)
        assert code == 0
        assert sorted(d["ranking_a"]) == list(range(16))
        assert isinstance(d["swap_distance"], int)

    def test_fixtures(self, capsys):
        code, out, _ = run(capsys, "fixtures")
        assert out.split() == fixture_names()
        code, out, _ = run(capsys, "fixtures", "fig3")
        g = from_edge_list(out)
        assert g.num_edges == 19 and g.n == 12

    def test_fixture_file_matches_builtin(self, capsys, tmp_path):
        from cliquerich.fixtures import fig6_top
        path = tmp_path / "f.txt"
        path.write_text(to_edge_list(fig6_top()))
        _, a, _ = run(capsys, "census", "--input", str(path), "-k", "3")
        _, b, _ = run(capsys, "census", "--fixture", "fig6_top", "-k", "3")
        da, db = json.loads(a), json.loads(b)
        assert da["vertex_counts"] == db["vertex_counts"]


class TestExperiment:
    RECIPE = {"family": "ws", "n": [20, 30], "density": [0.3, 0.6], "N": 2, "k": 3, "seed": 5}

    def test_cells(self):
        assert recipe_cells(self.RECIPE) == [(20, 0.3), (20, 0.6), (30, 0.3), (30, 0.6)]
        r = dict(self.RECIPE, density_by_n={"20": [0.5], "30": [0.2, 0.4]})
        del r["density"]
        assert recipe_cells(r) == [(20, 0.5), (30, 0.2), (30, 0.4)]

    @pytest.mark.parametrize(
        "patch",
        [{"N": 0}, {"k": 1}, {"family": "ba"}, {"extra": 1}, {"density": []},
         {"density_by_n": {"20": [0.5]}}],
    )
    def test_invalid(self, patch):
        with pytest.raises(RecipeError):
            validate_recipe(dict(self.RECIPE, **patch))

    def test_missing_density_entry(self):
        r = dict(self.RECIPE, density_by_n={"20": [0.5]})
        del r["density"]
        with pytest.raises(RecipeError):
            validate_recipe(r)

    def test_reproducible(self):
        a = run_experiment(self.RECIPE).to_dict()
        b = run_experiment(self.RECIPE).to_dict()
        assert a == b
        assert len(a["samples"]) == 8 and len(a["summary"]) == 4

    def test_single_sample_has_no_summary(self):
        res = run_experiment(dict(self.RECIPE, N=1))
        assert res.cells == [] and len(res.samples) == 4

    def test_cli(self, capsys, tmp_path):
        recipe = tmp_path / "r.json"
        recipe.write_text(json.dumps(self.RECIPE))
        out_dir = tmp_path / "out"
        code, out, _ = run(capsys, "experiment", str(recipe), "--out-dir", str(out_dir))
        assert code == 0
        assert {p.name for p in out_dir.iterdir()} == {"samples.csv", "summary.csv", "summary.json"}
        rows = list(csv.DictReader((out_dir / "summary.csv").open(newline="")))
        assert len(rows) == 4 and {"mu", "sigma"} <= set(rows[0])

    def test_cli_bad_recipe(self, capsys, tmp_path):
        recipe = tmp_path / "r.json"
        recipe.write_text(json.dumps(dict(self.RECIPE, N=0)))
        code, _, err = run(capsys, "experiment", str(recipe), "--out-dir", str(tmp_path))
        assert code == 2 and "N" in err
        recipe.write_text("{not json")
        code, _, _ = run(capsys, "experiment", str(recipe))
        assert code == 2
