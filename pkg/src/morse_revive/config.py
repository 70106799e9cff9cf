"""Run configuration: flat key=value files, CLI overrides, rational parsing."""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


DEFAULT_MAX_DEN = 10**6


def rationalize(x: float, max_den: int) -> Fraction:
    """Best continued-fraction convergent of x with denominator <= max_den.

    Works on the exact binary value of x, so exactly representable inputs
    round-trip (0.375 -> 3/8) and near-rational decimals land on the short
    fraction they approximate (17.333333333 -> 52/3) rather than on a huge
    semiconvergent.
    """
    if x < 0:
        raise ConfigError(f"rationalize: need x >= 0, got {x}")
    if max_den < 1:
        raise ConfigError(f"rationalize: need max_den >= 1, got {max_den}")
    remainder = Fraction(x)
    p_prev, q_prev = 1, 0
    p, q = int(remainder), 1
    remainder -= int(remainder)
    while remainder:
        remainder = 1 / remainder
        term = int(remainder)
        remainder -= term
        p_next = term * p + p_prev
        q_next = term * q + q_prev
        if q_next > max_den:
            break
        p_prev, q_prev, p, q = p, q, p_next, q_next
    return Fraction(p, q)


def parse_rational(text: str, field: str, max_den: int = DEFAULT_MAX_DEN) -> Fraction:
    """Parse '52/3', '18', or a decimal string (rationalized) to a Fraction."""
    text = text.strip()
    try:
        if "/" in text or "." not in text:
            return Fraction(text)
        return rationalize(float(text), max_den)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{field}: cannot parse rational from {text!r}") from exc


@dataclass
class RunConfig:
    """Everything a CLI run needs; file values first, flags override."""

    omega_e: Fraction = Fraction(18)
    omega_chi: Fraction = Fraction(1)
    mu: float | None = None
    q_min: float | None = None
    q_max: float | None = None
    q_points: int = 1024
    t_steps: int | None = None
    depth: int = 7
    out_dir: Path = Path("out")
    colormap: str = "grayscale"
    max_den: int = DEFAULT_MAX_DEN


def _parse_int(raw: str, field: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{field}: expected integer, got {raw!r}") from exc


def _parse_float(raw: str, field: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{field}: expected number, got {raw!r}") from exc


def load_config_file(path: str | Path) -> dict[str, str]:
    """Read a flat 'key = value' file; '#' starts a comment."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def build_config(raw: dict[str, str]) -> RunConfig:
    """Validate raw string settings into a RunConfig; unknown keys rejected."""
    known = {f.name for f in fields(RunConfig)}
    for key in raw:
        if key not in known:
            raise ConfigError(f"{key}: unknown configuration key")
    cfg = RunConfig()
    if "max_den" in raw:
        cfg.max_den = _parse_int(raw["max_den"], "max_den")
        if cfg.max_den < 1:
            raise ConfigError(f"max_den: need >= 1, got {cfg.max_den}")
    if "omega_e" in raw:
        cfg.omega_e = parse_rational(raw["omega_e"], "omega_e", cfg.max_den)
    if "omega_chi" in raw:
        cfg.omega_chi = parse_rational(raw["omega_chi"], "omega_chi", cfg.max_den)
    if "mu" in raw:
        cfg.mu = _parse_float(raw["mu"], "mu")
    if "q_min" in raw:
        cfg.q_min = _parse_float(raw["q_min"], "q_min")
    if "q_max" in raw:
        cfg.q_max = _parse_float(raw["q_max"], "q_max")
    if "q_points" in raw:
        cfg.q_points = _parse_int(raw["q_points"], "q_points")
        if cfg.q_points < 2:
            raise ConfigError(f"q_points: need >= 2, got {cfg.q_points}")
    if "t_steps" in raw:
        cfg.t_steps = _parse_int(raw["t_steps"], "t_steps")
        if cfg.t_steps < 1:
            raise ConfigError(f"t_steps: need >= 1, got {cfg.t_steps}")
    if "depth" in raw:
        cfg.depth = _parse_int(raw["depth"], "depth")
        if cfg.depth < 1:
            raise ConfigError(f"depth: need >= 1, got {cfg.depth}")
    if "out_dir" in raw:
        cfg.out_dir = Path(raw["out_dir"])
    if "colormap" in raw:
        cfg.colormap = raw["colormap"]
    return cfg
