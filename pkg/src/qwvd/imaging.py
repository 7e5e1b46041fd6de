"""Colour-image ingestion and heatmap export.

RGB pixels map to pure quaternions ``i r + j g + k b`` with channels scaled to
[0, 1]. Heatmaps are 16-bit portable graymaps with linear min-max scaling
and a ``key=value`` sidecar holding the range, so a reload recovers the
quantised values; a CSV alternative keeps full precision.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import FormatError
from .grid import GridGeometry, SampledSignal
from .quaternion import qabs

__all__ = [
    "ColorImageSignal",
    "ingest_image",
    "export_image",
    "heatmap_values",
    "export_heatmap",
    "load_heatmap",
]

_LEVELS = 65535


class ColorImageSignal(SampledSignal):
    """Pure-quaternion signal decoded from an RGB image (rows along t1)."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(self.values[..., 0] != 0.0):
            raise FormatError("colour image signals must have zero scalar part")

    @property
    def rgb(self) -> np.ndarray:
        return self.values[..., 1:]


def ingest_image(path, pixel_size: float = 1.0) -> ColorImageSignal:
    """Read an 8-bit RGB portable pixmap."""
    try:
        with Image.open(path) as im:
            im.load()
            fmt, mode = im.format, im.mode
            data = np.asarray(im)
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise FormatError(f"{path}: not a readable pixmap ({exc})") from exc
    if fmt != "PPM":
        raise FormatError(f"{path}: expected a portable pixmap, got {fmt}")
    if mode != "RGB":
        raise FormatError(f"{path}: expected 8-bit RGB, got mode {mode}")
    h, w = data.shape[:2]
    if h < 2 or w < 2:
        raise FormatError(f"{path}: image must be at least 2x2, got {w}x{h}")
    vals = np.zeros((h, w, 4))
    vals[..., 1:] = data.astype(float) / 255.0
    return ColorImageSignal(GridGeometry(h, w, pixel_size, pixel_size), vals)


def export_image(signal: SampledSignal, path) -> None:
    """Write the vector part as an RGB pixmap (channels clipped to [0, 1])."""
    rgb = np.clip(np.rint(signal.values[..., 1:] * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(rgb, mode="RGB").save(path, format="PPM")


def heatmap_values(values: np.ndarray, mode="modulus") -> np.ndarray:
    """Real 2D array to draw: the modulus or one component ``0..3``."""
    values = np.asarray(values, dtype=float)
    if mode == "modulus":
        return qabs(values)
    m = int(mode)
    if not 0 <= m < 4:
        raise ValueError(f"component must be 0..3, got {mode!r}")
    return values[..., m]


def export_heatmap(grid, path, mode="modulus", fmt: str = "pgm") -> Path:
    """Export a spectrum or WVD slice; returns the path written.

    ``fmt="pgm"`` writes a 16-bit graymap and ``<path>.meta``; ``fmt="csv"``
    writes the values with full precision instead.
    """
    values = grid.values if isinstance(grid, SampledSignal) else grid
    img = heatmap_values(values, mode)
    path = Path(path)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for row in img:
                w.writerow([repr(float(x)) for x in row])
        return path
    if fmt != "pgm":
        raise ValueError(f"unknown heatmap format {fmt!r}")
    lo, hi = float(img.min()), float(img.max())
    span = hi - lo
    if span == 0:
        # a constant map is drawn black if zero and white otherwise; reload uses min only
        q = np.full(img.shape, 0 if lo == 0 else _LEVELS, dtype=np.uint16)
    else:
        q = np.rint((img - lo) / span * _LEVELS).astype(np.uint16)
    Image.fromarray(q).save(path, format="PPM")
    meta = {"mode": str(mode), "min": repr(lo), "max": repr(hi), "levels": str(_LEVELS),
            "rows": str(img.shape[0]), "cols": str(img.shape[1])}
    if isinstance(grid, SampledSignal):
        g = grid.geometry
        meta.update({"delta1": repr(g.delta1), "delta2": repr(g.delta2),
                     "origin1": repr(g.origin1), "origin2": repr(g.origin2)})
    Path(str(path) + ".meta").write_text("".join(f"{k}={v}\n" for k, v in meta.items()))
    return path


def load_heatmap(path) -> np.ndarray:
    """Reload an exported heatmap (PGM plus sidecar, or CSV) as a float array."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, newline="") as fh:
            return np.array([[float(x) for x in row] for row in csv.reader(fh)])
    meta_path = Path(str(path) + ".meta")
    try:
        meta = dict(line.split("=", 1) for line in meta_path.read_text().splitlines() if line)
        lo, hi, levels = float(meta["min"]), float(meta["max"]), int(meta["levels"])
    except (OSError, KeyError, ValueError) as exc:
        raise FormatError(f"{meta_path}: missing or malformed sidecar") from exc
    with Image.open(path) as im:
        q = np.asarray(im).astype(float)
    return lo + q / levels * (hi - lo)
