import json
import math
from types import SimpleNamespace

import numpy as np
import pytest

from bfourier.cli import ConfigError, build_config, load_config, main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("b = 0.9\nN = 3\nL = 12\n# comment line\n\nseed = 7\n")
    loaded = load_config(str(cfg))
    assert loaded["b"] == 0.9 and loaded["N"] == 3 and loaded["seed"] == 7
    merged = build_config(SimpleNamespace(b=0.25, config=str(cfg)))
    assert merged["b"] == 0.25  # flag wins
    assert merged["N"] == 3  # file value kept
    assert merged["M"] == 6  # default fills the rest


def test_config_validation_errors(tmp_path):
    with pytest.raises(ConfigError):
        build_config(SimpleNamespace(b=-2.0, N=2))
    with pytest.raises(ConfigError):
        build_config(SimpleNamespace(N=9))
    bad = tmp_path / "bad.cfg"
    bad.write_text("b equals 0.5\n")
    with pytest.raises(ConfigError):
        load_config(str(bad))


def test_verify_report_deterministic(tmp_path, capsys):
    args = ["verify", "--suites", "scripti-routes", "gram-orthogonality", "--L", "8", "--M", "3"]
    code1, out1, _ = run(args, capsys)
    code2, out2, _ = run(args, capsys)
    assert code1 == 0 and code2 == 0
    assert out1 == out2  # byte-identical reports for a fixed seed
    report = json.loads(out1)
    names = [r["suite"] for r in report]
    assert names == sorted(names)
    for r in report:
        assert r["pass"] is True
        assert r["max_err"] <= r["tol"]


def test_verify_bad_params_exit_2(capsys):
    code, _, err = run(["verify", "--b", "-1", "--N", "1", "--suites", "scripti-routes"], capsys)
    assert code == 2


def test_kernel_b0_classical_columns(tmp_path, capsys):
    out = tmp_path / "kernel.csv"
    code, _, _ = run(
        ["kernel", "--which", "B", "--b", "0", "--N", "1",
         "--x=-1:1:5", "--y=-1:1:5", "--out", str(out)],
        capsys,
    )
    assert code == 0
    rows = [line.split(",") for line in out.read_text().strip().splitlines()]
    header, body = rows[0], rows[1:]
    assert header == ["x1", "y1", "re", "im"]
    for row in body:
        x, y, re_v, im_v = (float(v) for v in row)
        assert abs(re_v - math.cos(x * y)) < 1e-12
        assert abs(im_v - (-math.sin(x * y))) < 1e-12


def test_kernel_empty_grid_header_only(tmp_path, capsys):
    out = tmp_path / "empty.csv"
    code, _, _ = run(
        ["kernel", "--which", "B", "--N", "1", "--x=0:1:0", "--y=0:1:0",
         "--out", str(out)],
        capsys,
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1  # header only


def test_transform_both_methods_agree(tmp_path, capsys):
    out = tmp_path / "phi.csv"
    code, _, err = run(
        ["transform", "--function", "phi:1:1:0", "--N", "2", "--L", "10", "--M", "4",
         "--method", "both", "--points-csv", _points_csv(tmp_path), "--out", str(out)],
        capsys,
    )
    assert code == 0
    assert "max discrepancy" in err
    disc = float(err.strip().rsplit(None, 1)[-1])
    assert disc < 1e-6


def _points_csv(tmp_path):
    pts = tmp_path / "pts.csv"
    rng = np.random.default_rng(3)
    arr = rng.normal(size=(6, 2))
    pts.write_text("\n".join(",".join(f"{v:.6f}" for v in row) for row in arr) + "\n")
    return str(pts)


def test_transform_csv_roundtrip_via_emitted_nodes(tmp_path, capsys):
    nodes = tmp_path / "nodes.csv"
    code, _, _ = run(
        ["transform", "--emit-nodes", "--b", "0", "--N", "1", "--L", "12",
         "--out", str(nodes)],
        capsys,
    )
    assert code == 0
    body = np.loadtxt(str(nodes), delimiter=",", skiprows=1, ndmin=2)
    xs = body[:, 0]
    samples = tmp_path / "samples.csv"
    vals = np.exp(-xs**2 / 2)
    samples.write_text(
        "x1,re,im\n"
        + "\n".join(f"{x:.17g},{v:.17g},0" for x, v in zip(xs, vals))
        + "\n"
    )
    out = tmp_path / "out.csv"
    code, _, _ = run(
        ["transform", "--in", str(samples), "--b", "0", "--N", "1", "--L", "12",
         "--method", "spectral", "--points=-1:1:5", "--out", str(out)],
        capsys,
    )
    assert code == 0
    rows = np.loadtxt(str(out), delimiter=",", skiprows=1, ndmin=2)
    # the standard gaussian is a fixed point of the classical transform
    for row in rows:
        assert abs(row[1] - math.exp(-row[0] ** 2 / 2)) < 1e-8
        assert abs(row[2]) < 1e-8


def test_evolve_wave_csv_formats(tmp_path, capsys):
    frames = tmp_path / "frames.csv"
    energy = tmp_path / "energy.csv"
    code, _, _ = run(
        ["evolve", "--kind", "wave1d", "--b", "0.5", "--u0", "bump:1:2",
         "--X", "3", "--dx", "0.02", "--dt", "0.018", "--T", "0.1",
         "--annulus", "0.5,2.5", "--energy-out", str(energy),
         "--out", str(frames)],
        capsys,
    )
    assert code == 0
    fl = frames.read_text().strip().splitlines()
    assert fl[0] == "t,x,u"
    el = energy.read_text().strip().splitlines()
    assert el[0] == "t,annulus_lo,annulus_hi,E"
    evals = np.array([[float(v) for v in line.split(",")] for line in el[1:]])
    assert np.all(np.diff(evals[:, 3]) <= 1e-10 * evals[0, 3])


def test_evolve_cfl_violation_exit_2(capsys):
    code, _, _ = run(
        ["evolve", "--kind", "wave1d", "--u0", "bump:1:2", "--X", "3",
         "--dx", "0.02", "--dt", "0.05", "--T", "0.1"],
        capsys,
    )
    assert code == 2
