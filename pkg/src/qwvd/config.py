"""Flat ``key = value`` job configuration for the command-line tool."""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import FormatError
from .qft import STANDARD_AXES, AxisPair
from .qolct import OffsetParams
from .quaternion import AXIS_I, AXIS_J, AXIS_K, PureUnitAxis

__all__ = ["COMMANDS", "JobConfig", "parse_config", "serialize_config", "load_config",
           "parse_axes", "format_axes"]

COMMANDS = ("transform", "wvd", "verify", "bench", "generate")
_NAMED_AXES = {"i": AXIS_I, "j": AXIS_J, "k": AXIS_K}


def parse_axes(text: str) -> AxisPair:
    """``"i j"`` or two comma-separated direction vectors such as ``"1,1,0 0,0,1"``."""
    parts = text.split()
    if len(parts) != 2:
        raise FormatError(f"axes need two entries, got {text!r}")
    out = []
    for p in parts:
        if p in _NAMED_AXES:
            out.append(_NAMED_AXES[p])
            continue
        try:
            x, y, z = (float(v) for v in p.split(","))
        except ValueError as exc:
            raise FormatError(f"bad axis {p!r}") from exc
        out.append(PureUnitAxis.from_vector(x, y, z))
    return AxisPair(out[0], out[1])


def format_axes(axes: AxisPair) -> str:
    return f"{axes.left.name} {axes.right.name}"


@dataclass(frozen=True)
class JobConfig:
    command: str = "verify"
    input: str | None = None
    window: str | None = None
    output: str | None = None
    transform: str = "qolct"
    p1: OffsetParams = OffsetParams(0.0, 1.0, -1.0, 0.0)
    p2: OffsetParams = OffsetParams(0.0, 1.0, -1.0, 0.0)
    axes: AxisPair = STANDARD_AXES
    n1: int = 64
    n2: int = 64
    half_width: float = 6.0
    kind: str = "gaussian"
    sigma: float = 1.0
    rate: float = 1.0
    suite: str = "all"
    K: int = 6
    seeds: int = 2
    sizes: tuple[int, ...] = (8, 16)
    deterministic: bool = False
    use_oracle: bool = False
    heatmap: str | None = None
    mode: str = "modulus"
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise FormatError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.K < 1:
            raise FormatError("K must be a positive integer")
        if self.seeds < 0:
            raise FormatError("seeds must be non-negative")

    def updated(self, **changes) -> "JobConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


_FIELD_TYPES = {f.name: f.type for f in fields(JobConfig)}


def _parse_value(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    if raw == "none" and "None" in kind:
        return None
    try:
        if key in ("p1", "p2"):
            return OffsetParams.parse(raw)
        if key == "axes":
            return parse_axes(raw)
        if key == "sizes":
            return tuple(int(x) for x in raw.replace(",", " ").split())
        if kind.startswith("int"):
            return int(raw)
        if kind.startswith("float"):
            return float(raw)
        if kind.startswith("bool"):
            if raw not in ("true", "false"):
                raise ValueError(raw)
            return raw == "true"
    except ValueError as exc:
        raise FormatError(f"bad value for {key}: {raw!r} ({exc})") from exc
    return raw


def _format_value(key: str, value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, OffsetParams):
        return value.format()
    if isinstance(value, AxisPair):
        return format_axes(value)
    if key == "sizes":
        return " ".join(str(x) for x in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_config(text: str) -> JobConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment, ``tol.<check>`` sets a tolerance."""
    values: dict = {}
    tolerances: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected key = value, got {line!r}")
        key, raw = (x.strip() for x in line.split("=", 1))
        if key.startswith("tol."):
            try:
                tolerances[key[4:]] = float(raw)
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad tolerance {raw!r}") from exc
            continue
        if key not in _FIELD_TYPES or key == "tolerances":
            raise FormatError(f"line {lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    try:
        return JobConfig(**values, tolerances=tolerances)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def serialize_config(cfg: JobConfig) -> str:
    lines = []
    for f in fields(JobConfig):
        if f.name == "tolerances":
            continue
        lines.append(f"{f.name} = {_format_value(f.name, getattr(cfg, f.name))}")
    for name in sorted(cfg.tolerances):
        lines.append(f"tol.{name} = {cfg.tolerances[name]!r}")
    return "\n".join(lines) + "\n"


def load_config(path) -> JobConfig:
    return parse_config(Path(path).read_text())
