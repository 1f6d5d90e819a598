import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("KOENIGS_CLI", "build/koenigs")
SCHEMA = os.environ.get("KOENIGS_SCHEMA", "schema/output.schema.json")


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


@pytest.fixture(scope="module")
def schema():
    with open(SCHEMA) as f:
        return json.load(f)


RUNS = [
    ("capacity", "--shape", "interval", "--length", "1", "--method", "closed-form"),
    ("capacity", "--shape", "disc", "--method", "leja", "--k", "32"),
    ("eq-measure", "--shape", "disc", "--m", "32", "--sigma", "4", "--gamma", "4", "--gamma-points", "50"),
    ("alpha", "--n", "4"),
    ("harmonic", "--domain", "half-plane", "--R", "10,100", "--samples", "2000"),
    ("harmonic", "--oracle", "disc-arc", "--lambda", "0.3", "--samples", "2000"),
    ("hardy", "--domain", "sector", "--rmax", "1e3", "--samples", "2000"),
    ("construct-domain", "--p", "0.25", "--levels", "2", "--samples", "2000"),
    ("verify-thm12", "--e", "disc", "--n", "4,16"),
    ("verify-thm11", "--e", "hsegment", "--rmax", "1e3", "--samples", "2000"),
    ("dynamics", "--model", "strip", "--iterations", "200"),
    ("dynamics", "--integral-means", "--map", "sector_power", "--p-grid", "1,3"),
]


@pytest.mark.parametrize("args", RUNS, ids=lambda a: " ".join(a[:3]))
def test_json_output_validates(args, schema):
    jsonschema = pytest.importorskip("jsonschema")
    r = run(*args)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    jsonschema.validate(doc, schema)
    assert doc["config"]["subcommand"] == args[0]


def test_capacity_closed_form():
    doc = json.loads(run("capacity", "--shape", "interval", "--length", "1", "--method", "closed-form").stdout)
    assert doc["capacity"] == 0.25


def test_csv_header_and_config_trailer(tmp_path):
    out = tmp_path / "t.csv"
    r = run("verify-thm12", "--e", "disc", "--n", "4,16,64", "--seed", "1", "--format", "csv", "--out", out)
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,cap_kn,cap_interval,ratio,scaled_error"
    assert lines[-1].startswith("# config ")
    assert json.loads(lines[-1][len("# config "):])["n"] == [4, 16, 64]


def test_exit_codes():
    assert run("capacity", "--bogus").returncode == 2
    assert run("alpha", "--n", "0").returncode == 2
    r = run("construct-domain", "--p", "0.25", "--levels", "2", "--samples", "2000", "--radius-cap", "50")
    assert r.returncode == 3


def test_seed_env_and_flag(tmp_path):
    base = ("harmonic", "--domain", "half-plane", "--R", "30", "--samples", "500")
    env = dict(os.environ, KOENIGS_SEED="4")
    a = subprocess.run([CLI, *base], capture_output=True, text=True, env=env).stdout
    b = run(*base, "--seed", "4").stdout
    c = subprocess.run([CLI, *base, "--seed", "5"], capture_output=True, text=True, env=env).stdout
    assert a == b
    assert json.loads(c)["config"]["seed"] == 5


def test_reruns_are_byte_identical(tmp_path):
    args = ("hardy", "--domain", "half-plane", "--rmax", "1e3", "--samples", "1000", "--seed", "2")
    run(*args, "--out", tmp_path / "a.json")
    run(*args, "--out", tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_extension_module():
    koenigs = pytest.importorskip("koenigs")
    assert koenigs.alpha_coefficients(4)[0] == pytest.approx(1 / 3, abs=1e-15)
    est = koenigs.capacity({"primitives": [{"type": "segment", "a": [0, 0], "b": [1, 0]}]}, k=64)
    assert abs(est["capacity"] - 0.25) < 0.02
    m = koenigs.KoenigsModel.strip(math.e)
    z = 0.3 + 0.2j
    assert abs(m.sigma(m.phi(z)) - m.sigma(z) - 1) < 1e-12
    assert json.loads(m.classify(0j, 1000))["class"] == "hyperbolic"
    with pytest.raises(koenigs.KoenigsError):
        koenigs.alpha_coefficients(0)
    code, out, _ = koenigs.cli("alpha", "--n", "2")
    assert code == 0
    assert json.loads(out)["values"] == pytest.approx([0.5, 0.5], abs=1e-15)
    hm = koenigs.harmonic_measure({"family": "half_plane", "orientation": 0.0, "offset": -1.0}, 10.0, samples=2000)
    assert 0 < hm["mean"] < 1
    with pytest.raises(koenigs.KoenigsError):
        koenigs.capacity({"components": []})
