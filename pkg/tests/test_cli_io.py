import csv

import numpy as np
import pytest
from PIL import Image

from qwvd.cli import main
from qwvd.config import JobConfig, load_config, parse_axes, parse_config, serialize_config
from qwvd.errors import FormatError
from qwvd.generators import Gaussian, delta
from qwvd.grid import GridGeometry, SampledSignal, read_qgrid
from qwvd.imaging import (ColorImageSignal, export_heatmap, export_image, heatmap_values,
                          ingest_image, load_heatmap)
from qwvd.oracle import oracle_wvd
from qwvd.qft import qft_forward
from qwvd.qolct import QFT_PARAMS, OffsetParams
from qwvd.quaternion import AXIS_K
from qwvd.wvd import load_wvd, wvd_freq_grid, wvd_qolct


# ---------------------------------------------------------------- config

def test_config_round_trip():
    cfg = JobConfig(command="wvd", input="a.qgrid", p1=OffsetParams(1.0, 1.0, 0.0, 1.0, 0.3, 0.2),
                    axes=parse_axes("i k"), sizes=(8, 16, 32), deterministic=True,
                    tolerances={"wvd-energy": 0.05})
    assert parse_config(serialize_config(cfg)) == cfg


def test_config_comments_and_defaults(tmp_path):
    path = tmp_path / "job.cfg"
    path.write_text("# job\ncommand = verify  # trailing\nsuite = poisson\nK = 12\n\n")
    cfg = load_config(path)
    assert (cfg.command, cfg.suite, cfg.K, cfg.n1) == ("verify", "poisson", 12, 64)


@pytest.mark.parametrize("text", [
    "colour = red\n",
    "p1 = 1 1 1 1 0 0\n",
    "K = three\n",
    "command = plot\n",
    "deterministic = yes\n",
    "no equals sign\n",
    "tol.qft-roundtrip = tiny\n",
    "axes = i\n",
])
def test_config_rejects_bad_input(text):
    with pytest.raises(FormatError):
        parse_config(text)


def test_axes_parsing():
    ax = parse_axes("1,1,0 k")
    assert ax.right is AXIS_K and not ax.is_standard
    assert parse_axes("i j").is_standard


# ---------------------------------------------------------------- images

def _write_ppm(path, rgb):
    Image.fromarray(np.asarray(rgb, dtype=np.uint8), mode="RGB").save(path, format="PPM")


def test_red_image_maps_to_i(tmp_path):
    path = tmp_path / "red.ppm"
    _write_ppm(path, [[[255, 0, 0]] * 2] * 2)
    sig = ingest_image(path)
    assert isinstance(sig, ColorImageSignal)
    np.testing.assert_array_equal(sig.values, np.broadcast_to([0.0, 1.0, 0.0, 0.0], (2, 2, 4)))


def test_black_image_is_zero(tmp_path):
    path = tmp_path / "black.ppm"
    _write_ppm(path, np.zeros((3, 4, 3)))
    sig = ingest_image(path)
    assert sig.geometry.shape == (3, 4)
    assert np.all(sig.values == 0.0)


def test_image_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    rgb = rng.integers(0, 256, (5, 7, 3))
    src = tmp_path / "a.ppm"
    _write_ppm(src, rgb)
    sig = ingest_image(src)
    out = tmp_path / "b.ppm"
    export_image(sig, out)
    np.testing.assert_array_equal(ingest_image(out).values, sig.values)
    np.testing.assert_array_equal(sig.rgb * 255.0, rgb)


def test_image_rejects_other_inputs(tmp_path):
    gray = tmp_path / "g.pgm"
    Image.fromarray(np.zeros((4, 4), dtype=np.uint8)).save(gray, format="PPM")
    with pytest.raises(FormatError):
        ingest_image(gray)
    bad = tmp_path / "bad.ppm"
    bad.write_bytes(b"P6\n2 2\n255\n\x00")
    with pytest.raises(FormatError):
        ingest_image(bad)
    png = tmp_path / "x.png"
    Image.fromarray(np.zeros((4, 4, 3), dtype=np.uint8)).save(png)
    with pytest.raises(FormatError):
        ingest_image(png)
    with pytest.raises(FormatError):
        ColorImageSignal(GridGeometry(2, 2, 1.0, 1.0), np.ones((2, 2, 4)))


# ---------------------------------------------------------------- heatmaps

def test_zero_grid_heatmap(tmp_path):
    z = SampledSignal(GridGeometry(4, 5, 1.0, 1.0), np.zeros((4, 5, 4)))
    path = export_heatmap(z, tmp_path / "z.pgm")
    meta = (tmp_path / "z.pgm.meta").read_text()
    assert "min=0.0\n" in meta and "max=0.0\n" in meta
    with Image.open(path) as im:
        px = np.asarray(im)
    assert px.shape == (4, 5) and np.all(px == px[0, 0])
    assert np.all(load_heatmap(path) == 0.0)


def test_delta_spectrum_heatmap_is_uniform_nonzero(tmp_path):
    F = qft_forward(delta(GridGeometry.centered(8, 2.0)))
    path = export_heatmap(F, tmp_path / "d.pgm")
    with Image.open(path) as im:
        px = np.asarray(im)
    assert np.all(px == px[0, 0]) and px[0, 0] > 0
    np.testing.assert_allclose(load_heatmap(path), 1.0, atol=1e-12)


def test_heatmap_reload_within_quantisation(tmp_path):
    rng = np.random.default_rng(1)
    s = SampledSignal(GridGeometry(6, 6, 1.0, 1.0), rng.standard_normal((6, 6, 4)))
    for mode in ("modulus", "2"):
        img = heatmap_values(s.values, mode)
        path = export_heatmap(s, tmp_path / f"h{mode}.pgm", mode)
        step = (img.max() - img.min()) / 65535
        assert np.abs(load_heatmap(path) - img).max() <= 0.5 * step + 1e-15
    with pytest.raises(ValueError):
        heatmap_values(s.values, "7")


def test_wvd_slice_csv_matches_oracle(tmp_path):
    geo = GridGeometry.centered(8, 3.0)
    f = Gaussian().sample(geo)
    fg = wvd_freq_grid(geo, QFT_PARAMS, QFT_PARAMS)
    W = wvd_qolct(f, f, QFT_PARAMS, QFT_PARAMS, freq_grid=fg)
    path = export_heatmap(W.slice(4, 4), tmp_path / "w.csv", fmt="csv")
    ref = np.linalg.norm(oracle_wvd(f, f, QFT_PARAMS, QFT_PARAMS, freq_grid=fg)[4, 4], axis=-1)
    got = load_heatmap(path)
    assert np.abs(got - ref).max() < 1e-12
    # the blob peaks at the centre of the frequency grid
    assert np.unravel_index(np.argmax(got), got.shape) == (fg.n1 // 2, fg.n2 // 2)


# ---------------------------------------------------------------- command line

def test_cli_generate_and_transform(tmp_path):
    sig = tmp_path / "g.qgrid"
    assert main(["generate", "--kind", "gaussian", "--n1", "16", "--n2", "16",
                 "--half-width", "4", "--output", str(sig)]) == 0
    f = read_qgrid(sig)
    assert f.geometry.shape == (16, 16)
    spec = tmp_path / "F.qgrid"
    heat = tmp_path / "F.pgm"
    assert main(["transform", "--input", str(sig), "--transform", "qft", "--output", str(spec),
                 "--heatmap", str(heat)]) == 0
    np.testing.assert_allclose(read_qgrid(spec).values, qft_forward(f).values, atol=1e-15)
    assert (tmp_path / "F.pgm.meta").exists()


def test_cli_transform_image(tmp_path):
    img = tmp_path / "c.ppm"
    _write_ppm(img, np.random.default_rng(2).integers(0, 256, (6, 6, 3)))
    out = tmp_path / "c.qgrid"
    assert main(["transform", "--input", str(img), "--transform", "qolct",
                 "--p1", "1 1 0 1 0.3 0.2", "--p2", "0 1 -1 0 0 0", "--output", str(out)]) == 0
    assert read_qgrid(out).geometry.shape == (6, 6)


def test_cli_wvd_export(tmp_path):
    sig = tmp_path / "r.qgrid"
    main(["generate", "--kind", "random", "--seed", "3", "--n1", "4", "--n2", "4",
          "--half-width", "2", "--output", str(sig)])
    out = tmp_path / "wvd"
    csv_path = tmp_path / "centre.csv"
    assert main(["wvd", "--input", str(sig), "--output", str(out), "--heatmap", str(csv_path)]) == 0
    W = load_wvd(out)
    f = read_qgrid(sig)
    np.testing.assert_array_equal(W.values, wvd_qolct(f, f, QFT_PARAMS, QFT_PARAMS).values)
    assert csv_path.exists()


def test_cli_verify_exit_codes(tmp_path, capsys):
    assert main(["verify", "poisson"]) == 0
    text = capsys.readouterr().out
    assert "check=poisson-qft-tail" in text
    assert text.rstrip().splitlines()[-1].endswith("status=ok")
    assert main(["verify", "poisson", "--tol", "poisson-qft=0"]) == 1
    assert "status=failed" in capsys.readouterr().out
    assert main(["verify", "bogus"]) == 2
    assert main(["verify", "poisson", "--tol", "nonsense=1"]) == 2
    assert main(["verify", "poisson", "--tol", "poisson-qft"]) == 2


def test_cli_verify_poisson_doubled_k(tmp_path):
    out = tmp_path / "r.txt"
    assert main(["verify", "poisson", "--K", "12", "--output", str(out)]) == 0
    assert "K=12" in out.read_text()


def test_cli_config_file_and_override(tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("command = bench\ntransform = qft\nsizes = 4\nhalf_width = 2.0\n")
    out = tmp_path / "b.csv"
    assert main(["bench", "--config", str(cfg), "--output", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert [r[0] for r in rows] == ["size", "4"]
    assert main(["bench", "--config", str(cfg), "--sizes", "--output", str(out)]) == 0
    assert out.read_text() == "size,direct_s,fast_s,max_deviation\n"


@pytest.mark.parametrize("transform", ["qft", "qolct"])
def test_cli_bench_deviation(tmp_path, transform):
    out = tmp_path / "b.csv"
    assert main(["bench", "--transform", transform, "--p1", "1 1 0 1 0.3 0.2",
                 "--sizes", "8", "--half-width", "2", "--output", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 1 and rows[0]["size"] == "8"
    assert float(rows[0]["max_deviation"]) < 1e-9


def test_cli_deterministic_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert main(["verify", "qolct", "--deterministic", "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_reports_missing_input(capsys):
    assert main(["transform"]) == 2
    assert "qwvd: error:" in capsys.readouterr().err
