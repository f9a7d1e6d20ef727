import json
import subprocess
import sys
from importlib import resources

import pytest

jsonschema = pytest.importorskip("jsonschema")


def run_cli(*args, cwd=None, check=True):
    proc = subprocess.run(
        [sys.executable, "-m", "curvgraph.cli", *map(str, args)],
        capture_output=True, text=True, cwd=cwd,
    )
    if check and proc.returncode != 0:
        raise AssertionError(f"CLI failed: {proc.stderr}")
    return proc


def load_schema(name):
    ref = resources.files("curvgraph") / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


def validate(payload, schema_name):
    schema = load_schema(schema_name)
    resolver_store = {load_schema("manifold")["$id"]: load_schema("manifold")}
    registry = None
    try:
        from referencing import Registry, Resource

        registry = Registry().with_resources(
            (sid, Resource.from_contents(s)) for sid, s in resolver_store.items()
        )
        jsonschema.validators.validator_for(schema)(schema, registry=registry).validate(payload)
    except ImportError:
        jsonschema.validate(payload, schema)


FIXTURE_V = 500


@pytest.fixture(scope="module")
def sphere_graph_prefix(tmp_path_factory):
    prefix = tmp_path_factory.mktemp("cli") / "s500"
    run_cli("sprinkle", "--manifold", '{"type":"sphere2","radius":1.0}',
            "--n", FIXTURE_V, "--p", 0.25, "--seed", 42, "--out", prefix)
    return prefix


def test_sprinkle_outputs(sphere_graph_prefix):
    prefix = sphere_graph_prefix
    edges = (prefix.parent / (prefix.name + ".edges")).read_text().splitlines()
    v, e = map(int, edges[0].split())
    assert v == FIXTURE_V and e == len(edges) - 1
    sidecar = json.loads((prefix.parent / (prefix.name + ".json")).read_text())
    validate(sidecar["manifold"], "manifold")
    validate(sidecar, "graph_sidecar")
    assert len(sidecar["coordinates"]) == FIXTURE_V


def test_sprinkle_deterministic_bytes(tmp_path):
    # identical arguments (relative prefix, fixed seed) from two different
    # working directories must produce byte-identical stdout and files
    outs = []
    for sub in ("a", "b"):
        d = tmp_path / sub
        d.mkdir()
        proc = run_cli("sprinkle", "--manifold", '{"type":"sphere2","radius":1.0}',
                       "--n", 150, "--p", 0.25, "--seed", 7, "--out", "g", cwd=d)
        outs.append((proc.stdout, (d / "g.edges").read_bytes(), (d / "g.json").read_bytes()))
    assert outs[0] == outs[1]


def test_manifold_from_file(tmp_path):
    mf = tmp_path / "m.json"
    mf.write_text('{"type":"euclidean","radius":1.5}')
    run_cli("sprinkle", "--manifold", mf, "--n", 80, "--p", 0.25,
            "--seed", 3, "--out", tmp_path / "e80")
    sidecar = json.loads((tmp_path / "e80.json").read_text())
    assert sidecar["manifold"]["type"] == "euclidean"


def test_distortion_schema_and_determinism(sphere_graph_prefix):
    p1 = run_cli("distortion", "--graph", sphere_graph_prefix, "--seed", 5)
    p2 = run_cli("distortion", "--graph", sphere_graph_prefix, "--seed", 5)
    assert p1.stdout == p2.stdout
    payload = json.loads(p1.stdout)
    validate(payload, "distortion_report")
    sub = run_cli("distortion", "--graph", sphere_graph_prefix, "--sources", 10, "--seed", 5)
    assert len(json.loads(sub.stdout)["sources"]) == 10


def test_curvature_schema_threads_csv(sphere_graph_prefix, tmp_path):
    csv1 = tmp_path / "k1.csv"
    p1 = run_cli("curvature", "--graph", sphere_graph_prefix, "--samples", 40,
                 "--seed", 9, "--threads", 1, "--csv", csv1)
    csv2 = tmp_path / "k2.csv"
    p2 = run_cli("curvature", "--graph", sphere_graph_prefix, "--samples", 40,
                 "--seed", 9, "--threads", 4, "--csv", csv2)
    assert p1.stdout == p2.stdout
    assert csv1.read_bytes() == csv2.read_bytes()
    payload = json.loads(p1.stdout)
    validate(payload, "curvature_report")
    csv_lines = csv1.read_text().splitlines()
    assert csv_lines[0] == "K"
    assert len(csv_lines) == payload["count"] + 1
    body = [float(line) for line in csv_lines[1:]]  # rows are plain floats
    assert sum(body) / len(body) == pytest.approx(payload["mean"], rel=1e-12)
    with_samples = run_cli("curvature", "--graph", sphere_graph_prefix, "--samples", 40,
                           "--seed", 9, "--include-samples")
    ws = json.loads(with_samples.stdout)
    validate(ws, "curvature_report")
    assert len(ws["samples"]) == ws["count"]


def test_curvature_per_vertex(sphere_graph_prefix):
    proc = run_cli("curvature", "--graph", sphere_graph_prefix, "--samples", 2,
                   "--per-vertex", "--seed", 11)
    payload = json.loads(proc.stdout)
    validate(payload, "vertex_curvature")
    assert len(payload["perVertex"]) == FIXTURE_V


def test_wolfram_schema(sphere_graph_prefix):
    proc = run_cli("wolfram", "--graph", sphere_graph_prefix, "--vertices", 30, "--seed", 13)
    payload = json.loads(proc.stdout)
    validate(payload, "curvature_report")
    assert payload["estimator"] == "wolfram-ricci"


def test_converge_schema(tmp_path):
    csv = tmp_path / "sweep.csv"
    proc = run_cli("converge", "--manifold", '{"type":"sphere2","radius":1.0}',
                   "--true-k", 1.0, "--counts", "120,200", "--seeds-per", 1,
                   "--samples", 30, "--seed", 17, "--csv", csv)
    payload = json.loads(proc.stdout)
    validate(payload, "sweep_report")
    assert len(payload["points"]) == 2
    assert csv.read_text().startswith("vertexCount,")


def test_fractal_exact_and_sampled(tmp_path):
    exact = run_cli("fractal", "--level", 2, "--exact", "--seed", 1,
                    "--out", tmp_path / "f2")
    payload = json.loads(exact.stdout)
    validate(payload, "fractal_stats")
    csv_lines = (tmp_path / "f2.csv").read_text().splitlines()
    assert csv_lines[0] == "K"
    assert len(csv_lines) - 1 == payload["count"]
    sampled = run_cli("fractal", "--level", 2, "--samples", 200, "--seed", 1)
    validate(json.loads(sampled.stdout), "fractal_stats")


def test_fractal_level0_empty_flag():
    proc = run_cli("fractal", "--level", 0, "--exact", "--seed", 1)
    payload = json.loads(proc.stdout)
    assert payload["count"] == 0
    assert payload["empty"] is True


def test_fractal_edge_scale():
    base = json.loads(run_cli("fractal", "--level", 2, "--exact", "--seed", 1).stdout)
    scaled = json.loads(run_cli("fractal", "--level", 2, "--exact", "--seed", 1,
                                "--edge-scale", 0.5).stdout)
    assert scaled["mean"] == pytest.approx(16 * base["mean"], rel=1e-12)


def test_earth_schema_and_csv(tmp_path):
    proc = run_cli("earth", "--samples", 60, "--seed", 21, "--max-length", 6400,
                   "--out", tmp_path / "radii")
    payload = json.loads(proc.stdout)
    validate(payload, "earth_summary")
    assert "ksDistanceToExpectedPdf" in payload
    lines = (tmp_path / "radii.csv").read_text().splitlines()
    assert lines[0] == "radius_km"
    assert len(lines) - 1 == payload["n"]
    no_max = json.loads(run_cli("earth", "--samples", 60, "--seed", 21).stdout)
    assert "ksDistanceToExpectedPdf" not in no_max


def test_error_exit_json(tmp_path):
    proc = run_cli("distortion", "--graph", tmp_path / "nope", "--seed", 1, check=False)
    assert proc.returncode == 1
    err = json.loads(proc.stderr)
    validate(err, "error")
    assert err["error"] == "FileNotFoundError"
    proc2 = run_cli("fractal", "--level", 13, "--exact", "--seed", 1, check=False)
    assert proc2.returncode == 1
    err2 = json.loads(proc2.stderr)
    validate(err2, "error")
    assert err2["error"] == "LevelTooLarge"
