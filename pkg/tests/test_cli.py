import json

import pytest

from accustripes.cli import main
from accustripes.render import RenderSpec, render_svg


def run(args):
    return main(list(args))


class TestGen:
    def test_gap_example_writes_7500_values(self, tmp_path):
        out = tmp_path / "g.json"
        assert run(["gen", "--size", "10000", "--flaw", "gap", "--severity",
                    "0.25", "--location", "0.5", "--seed", "7",
                    "--out", str(out)]) == 0
        obj = json.loads(out.read_text())
        assert len(obj["values"]) == 7500
        assert obj["meta"]["flaw"]["kind"] == "gap"

    def test_sweep_writes_four_files(self, tmp_path):
        assert run(["gen", "--size", "2000", "--flaw", "spike", "--sweep",
                    "--location", "0.3", "--seed", "7",
                    "--out-dir", str(tmp_path)]) == 0
        files = sorted(p.name for p in tmp_path.glob("sweep_spike_*.json"))
        assert files == ["sweep_spike_00.json", "sweep_spike_05.json",
                         "sweep_spike_15.json", "sweep_spike_25.json"]

    def test_severity_out_of_bounds_is_usage_error(self, tmp_path):
        assert run(["gen", "--size", "100", "--severity", "0.3", "--seed",
                    "1", "--out", str(tmp_path / "x.json")]) == 1

    def test_unknown_flag_is_usage_error(self):
        assert run(["gen", "--size", "100", "--seed", "1", "--frobnicate"]) == 1

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            run(["gen", "--size", "500", "--seed", "3", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()


class TestBin:
    def test_uniform_on_1000_points(self, tmp_path):
        data = tmp_path / "d.json"
        run(["gen", "--size", "1000", "--seed", "1", "--out", str(data)])
        out = tmp_path / "b.json"
        assert run(["bin", "--method", "uniform", "--input", str(data),
                    "--out", str(out)]) == 0
        obj = json.loads(out.read_text())
        assert len(obj["counts"]) == 11
        assert obj["method"] == "uniform"

    def test_nb_records_gvf(self, tmp_path):
        data = tmp_path / "d.json"
        run(["gen", "--size", "1000", "--seed", "1", "--out", str(data)])
        out = tmp_path / "b.json"
        assert run(["bin", "--method", "nb", "--input", str(data),
                    "--out", str(out), "--gvf-threshold", "0.9"]) == 0
        params = json.loads(out.read_text())["params"]
        assert params["kChosen"] >= 1
        assert (params["gvfAchieved"] >= 0.9
                or params["kChosen"] == params["kMax"])

    def test_bb_p0_monotonicity(self, tmp_path):
        data = tmp_path / "d.json"
        run(["gen", "--size", "4000", "--seed", "5", "--out", str(data)])
        bins = {}
        for p0 in ("0.5", "0.01"):
            out = tmp_path / f"b{p0}.json"
            assert run(["bin", "--method", "bb", "--input", str(data),
                        "--out", str(out), "--p0", p0]) == 0
            bins[p0] = len(json.loads(out.read_text())["counts"])
        assert bins["0.5"] >= bins["0.01"]

    def test_degenerate_data_exits_2(self, tmp_path):
        data = tmp_path / "flat.json"
        data.write_text(json.dumps({"name": "flat", "values": [5.0] * 10}))
        assert run(["bin", "--method", "uniform", "--input", str(data),
                    "--out", str(tmp_path / "b.json")]) == 2

    def test_missing_file_exits_2(self, tmp_path):
        assert run(["bin", "--method", "uniform",
                    "--input", str(tmp_path / "nope.json"),
                    "--out", str(tmp_path / "b.json")]) == 2


class TestRender:
    @pytest.fixture
    def datasets(self, tmp_path):
        paths = []
        for seed in range(8):
            p = tmp_path / f"d{seed}.json"
            run(["gen", "--size", "500", "--seed", str(seed), "--out", str(p)])
            paths.append(str(p))
        return paths

    def test_eight_inputs_eight_rows(self, tmp_path, datasets):
        out = tmp_path / "c.json"
        assert run(["render", "--layout", "bin", "--method", "uniform",
                    "--inputs", *datasets, "--out", str(out),
                    "--emit", "spec"]) == 0
        spec = json.loads(out.read_text())
        assert len(spec["rows"]) == 8

    def test_spec_then_external_render_equals_svg(self, tmp_path, datasets):
        spec_path = tmp_path / "c.spec.json"
        svg_path = tmp_path / "c.svg"
        run(["render", "--layout", "bin-curve", "--method", "nb",
             "--inputs", *datasets[:3], "--out", str(spec_path),
             "--emit", "spec"])
        run(["render", "--layout", "bin-curve", "--method", "nb",
             "--inputs", *datasets[:3], "--out", str(svg_path)])
        spec = RenderSpec.from_json_dict(json.loads(spec_path.read_text()))
        assert render_svg(spec) == svg_path.read_text()

    def test_layout_independence_of_stripes(self, tmp_path, datasets):
        stripes = {}
        for layout in ("bin", "bin-curve", "filled-curve"):
            out = tmp_path / f"{layout}.json"
            run(["render", "--layout", layout, "--method", "bb",
                 "--inputs", *datasets[:4], "--out", str(out),
                 "--emit", "spec"])
            spec = json.loads(out.read_text())
            stripes[layout] = [row["stripes"] for row in spec["rows"]]
        assert stripes["bin"] == stripes["bin-curve"] == stripes["filled-curve"]

    def test_manifest_input(self, tmp_path, datasets):
        manifest = tmp_path / "set.json"
        manifest.write_text(json.dumps(
            {"datasets": [p.split("/")[-1] for p in datasets[:3]]}))
        out = tmp_path / "c.json"
        assert run(["render", "--layout", "bin", "--method", "uniform",
                    "--inputs", str(manifest), "--out", str(out),
                    "--emit", "spec"]) == 0
        assert len(json.loads(out.read_text())["rows"]) == 3

    def test_color_scope_flag(self, tmp_path, datasets):
        outs = {}
        for scope in ("global", "per"):
            out = tmp_path / f"{scope}.json"
            run(["render", "--layout", "bin", "--method", "uniform",
                 "--inputs", *datasets[:2], "--out", str(out),
                 "--emit", "spec", "--color-scope", scope])
            outs[scope] = json.loads(out.read_text())
        assert outs["global"]["colorScale"]["scope"] == "Global"
        assert outs["per"]["colorScale"]["scope"] == "PerDistribution"


class TestEval:
    def test_deterministic_and_structured(self, tmp_path, capsys):
        outs = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            assert run(["eval", "--seed", "1", "--sizes", "300,600",
                        "--per-size", "4", "--out", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        table = capsys.readouterr().out
        for method in ("uniform", "bb", "nb"):
            assert method in table
        report = json.loads(outs[0])
        assert set(report["perMethod"]) == {"uniform", "bb", "nb"}
        for stats in report["perMethod"].values():
            assert set(stats) >= {"meanSilhouette", "variance", "perDistribution"}

    def test_bad_sizes_usage_error(self, tmp_path):
        assert run(["eval", "--seed", "1", "--sizes", "a,b",
                    "--out", str(tmp_path / "r.json")]) == 1
