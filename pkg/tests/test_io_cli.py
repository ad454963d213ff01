import json

import jsonschema
import numpy as np
import pytest

from pldiv import DistanceMatrix, ParseError, PointCloud, ValidationError, cli
from pldiv.diversity import MetricOptions, compute_metrics, parse_metrics
from pldiv.errors import MetricError, UsageError
from pldiv.io import load_input, parse_csv, write_points
from pldiv.report import LANDSCAPE_SCHEMA, REPORT_SCHEMA, STUDY_SCHEMA, SYNTH_SCHEMA
from pldiv.synthgen import pair_dataset, toy_dataset


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_load_points(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("# x,y\n0,0\n1,2\n\n3.5,-1e-3\n")
    c = load_input(f, "points")
    assert isinstance(c, PointCloud) and c.n == 3 and c.d == 2


def test_ragged_row(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("0,0\n1,2\n3\n")
    with pytest.raises(ParseError) as exc:
        load_input(f)
    assert exc.value.line == 3


def test_bad_token_column(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("# header\n0,0\n1,abc\n")
    with pytest.raises(ParseError) as exc:
        load_input(f)
    assert (exc.value.line, exc.value.column) == (3, 2)
    assert "line 3" in str(exc.value)


def test_empty_file(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("# only a header\n")
    with pytest.raises(ParseError):
        load_input(f)


def test_distances_validated(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("0,1\n2,0\n")
    with pytest.raises(ValidationError):
        load_input(f, "distances")
    f.write_text("0,1\n1,0\n")
    assert isinstance(load_input(f, "distances"), DistanceMatrix)


def test_roundtrip_exact(tmp_path):
    c = PointCloud(np.random.default_rng(0).standard_normal((50, 3)) * 1e-7 + 1 / 3)
    write_points(tmp_path / "c.csv", c)
    assert np.array_equal(load_input(tmp_path / "c.csv").points, c.points)


def test_parse_metrics():
    assert parse_metrics("all") == ("pldiv", "vendi", "dcscore", "magarea")
    assert parse_metrics("magarea, pldiv,pldiv") == ("pldiv", "magarea")
    with pytest.raises(UsageError):
        parse_metrics("fid")


def test_compute_two_points(tmp_path, capsys):
    f = tmp_path / "two.csv"
    f.write_text("0,0\n2,0\n")
    code, out, _ = run(["compute", f], capsys)
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert code == 0 and rep["metrics"][0]["value"] == 1.0 and rep["n"] == 2
    code, out, _ = run(["compute", f, "--epsilon", "0.5"], capsys)
    assert json.loads(out)["metrics"][0]["value"] == 1.0


def test_compute_all_metrics_and_csv(tmp_path, capsys):
    write_points(tmp_path / "d1.csv", toy_dataset("D1", 0))
    write_points(tmp_path / "d4.csv", toy_dataset("D4", 0))
    reps = {}
    for name in ("d1", "d4"):
        code, out, _ = run(["compute", tmp_path / f"{name}.csv", "--metrics", "all", "--t-cut", "40",
                            "--n-grid", "8", "--out", tmp_path / f"{name}_report.csv"], capsys)
        assert code == 0
        reps[name] = json.loads(out)
        jsonschema.validate(reps[name], REPORT_SCHEMA)
        assert [m["metric"] for m in reps[name]["metrics"]] == ["pldiv", "vendi", "dcscore", "magarea"]
        assert set(reps[name]["timings_ms"]) >= {"pldiv", "vendi", "dcscore", "magarea"}
        assert reps[name]["params_echo"]["gamma"] == 1.0 and reps[name]["params_echo"]["t0"] == 0.01
    lines = (tmp_path / "d1_report.csv").read_text().splitlines()
    assert lines[0] == "metric,value,time_ms" and len(lines) == 5
    vals = {n: {m["metric"]: m["value"] for m in r["metrics"]} for n, r in reps.items()}
    assert vals["d1"]["pldiv"] > vals["d4"]["pldiv"]


def test_kernel_required_for_distances(tmp_path, capsys):
    f = tmp_path / "d.csv"
    f.write_text("0,1\n1,0\n")
    code, _, err = run(["compute", f, "--input-kind", "distances", "--metrics", "vendi"], capsys)
    assert code == 2 and "kernel" in err
    code, out, _ = run(["compute", f, "--input-kind", "distances", "--metrics", "vendi,pldiv",
                        "--kernel", "rbf"], capsys)
    assert code == 0
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)


def test_metric_error_names_metric():
    with pytest.raises(MetricError) as exc:
        compute_metrics(PointCloud([[0.0, 0.0], [1.0, 1.0]]), "pldiv", MetricOptions(distance="cosine_distance"))
    assert exc.value.metric == "pldiv"


def test_vendi_cap():
    with pytest.raises(UsageError):
        compute_metrics(PointCloud(np.zeros((10, 1)) + np.arange(10)[:, None]), "vendi",
                        MetricOptions(vendi_max_n=5))


def test_synth_roundtrip_and_determinism(tmp_path, capsys):
    out = tmp_path / "d1.csv"
    code, text, _ = run(["synth", "D1", "--seed", "42", "--out", out], capsys)
    assert code == 0
    jsonschema.validate(json.loads(text), SYNTH_SCHEMA)
    jsonschema.validate(json.loads((tmp_path / "d1.json").read_text()), SYNTH_SCHEMA)
    first = out.read_bytes()
    assert len([l for l in first.decode().splitlines() if not l.startswith("#")]) == 200
    assert np.array_equal(load_input(out).points, toy_dataset("D1", 42).points)
    run(["synth", "D1", "--seed", "42", "--out", out], capsys)
    assert out.read_bytes() == first


def test_synth_pair(tmp_path, capsys):
    code, _, _ = run(["synth", "ring_vs_disk", "--seed", "3", "--out", tmp_path / "rd.csv"], capsys)
    assert code == 0
    p = pair_dataset("ring_vs_disk", 3)
    assert np.array_equal(load_input(tmp_path / "rd_A.csv").points, p.cloud_a.points)
    assert np.array_equal(load_input(tmp_path / "rd_B.csv").points, p.cloud_b.points)


def test_synth_longtail_bad(tmp_path, capsys):
    code, _, err = run(["synth", "longtail", "--n-outliers", "250", "--out", tmp_path / "x.csv"], capsys)
    assert code == 1 and "n_outliers" in err


def test_landscape_two_points(tmp_path, capsys):
    f = tmp_path / "two.csv"
    f.write_text("0,0\n2,0\n")
    code, out, _ = run(["landscape", f, "--steps", "5", "--out", tmp_path / "l.csv"], capsys)
    assert code == 0
    jsonschema.validate(json.loads(out), LANDSCAPE_SCHEMA)
    rows = parse_csv((tmp_path / "l.csv").read_text())
    assert rows.shape == (2, 5) and rows[1].max() == 1.0
    assert parse_csv((tmp_path / "l_diagram.csv").read_text()).tolist() == [[0.0, 2.0]]


def test_landscape_identical_points(tmp_path, capsys):
    f = tmp_path / "same.csv"
    f.write_text("1,1\n1,1\n1,1\n")
    code, out, _ = run(["landscape", f, "--out", tmp_path / "l.csv"], capsys)
    assert code == 0 and json.loads(out)["n_levels"] == 0
    assert len((tmp_path / "l.csv").read_text().splitlines()) == 1


def test_landscape_d3_dominant_peak(tmp_path, capsys):
    write_points(tmp_path / "d3.csv", toy_dataset("D3", 0))
    run(["landscape", tmp_path / "d3.csv", "--steps", "400", "--out", tmp_path / "l.csv"], capsys)
    rows = parse_csv((tmp_path / "l.csv").read_text())
    grid, level1, level2 = rows[0], rows[1], rows[2]
    d_max = grid[-1]
    # with every birth at 0 the tents nest, so level 1 is the inter-cluster merge tent
    assert np.allclose(level1, np.minimum(grid, d_max - grid), atol=1e-12)
    assert level1.max() > 3 * level2.max()


def test_study_json_schema(tmp_path, capsys):
    code, out, _ = run(["study", "longtail", "--seeds", "2", "--json"], capsys)
    jsonschema.validate(json.loads(out), STUDY_SCHEMA)


def test_bench_json_schema(capsys):
    code, out, _ = run(["bench", "--sizes", "60,120", "--repeats", "1", "--json"], capsys)
    assert code == 0
    res = json.loads(out)
    jsonschema.validate(res, STUDY_SCHEMA)
    assert {"dense", "sparse(eps=10)", "vendi", "dcscore"} <= set(res["summary"]["times_ms"])


def test_bad_args(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["study", "nonsense"])
    assert exc.value.code == 2
    code, _, err = run(["study", "toy", "--seeds", "0"], capsys)
    assert code == 2
