"""morse-revive command line: one subcommand per output family.

spectrum   bound levels, gaps, and revival metadata as CSV
evolve     space-time |psi| heatmap (PPM) plus autocorrelation CSV
farey      Ford-circle table (CSV) and diagram (SVG)
annotate   fractional-revival extrema vs Farey fractions (CSV)
classical  classical bound trajectories, one period per level (CSV)

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import dynamics, farey_ford, render
from .config import RunConfig, build_config, load_config_file
from .eigen import CoordGrid, suggest_grid
from .model import (
    C_CM_PER_PS,
    MorseParams,
    NumericsError,
    beat_gap,
    derive,
    energy_level,
    revival_times,
)


def _frac_str(f) -> str:
    return f"{f.numerator}/{f.denominator}"


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, str] = {}
    if args.config:
        raw.update(load_config_file(args.config))
    overrides = {
        "omega_e": args.omega_e,
        "omega_chi": args.omega_chi,
        "mu": args.mu,
        "q_min": args.q_min,
        "q_max": args.q_max,
        "q_points": args.q_points,
        "t_steps": args.t_steps,
        "depth": args.depth,
        "out_dir": args.out,
        "colormap": args.colormap,
        "max_den": args.max_den,
    }
    for key, value in overrides.items():
        if value is not None:
            raw[key] = str(value)
    return build_config(raw)


def _coord_grid(cfg: RunConfig, derived, params) -> CoordGrid:
    if cfg.q_min is not None and cfg.q_max is not None:
        return CoordGrid(cfg.q_min, cfg.q_max, cfg.q_points)
    grid = suggest_grid(derived, params, n_points=cfg.q_points)
    q_min = cfg.q_min if cfg.q_min is not None else grid.q_min
    q_max = cfg.q_max if cfg.q_max is not None else grid.q_max
    return CoordGrid(q_min, q_max, cfg.q_points)


def cmd_spectrum(cfg: RunConfig) -> list[Path]:
    params = MorseParams(cfg.omega_e, cfg.omega_chi, cfg.mu)
    drv = derive(params)
    times = revival_times(drv, params)
    rows: list[list] = []
    for n in range(drv.n_max + 1):
        gap = beat_gap(params, n) if n >= 1 else ""
        rows.append([n, energy_level(drv, params, n), gap])
    rows.extend(
        [
            ["D_cm-1", drv.d_e],
            ["nu", str(drv.nu)],
            ["n_max", drv.n_max],
            ["delta_N", _frac_str(drv.delta_n)],
            ["T_min_rev_ps", times.t_min_rev],
            ["T_max_beat_ps", times.t_max_beat],
            ["T_rev_ps", times.t_rev],
            ["M", times.m],
            ["N", times.n],
        ]
    )
    path = cfg.out_dir / "spectrum.csv"
    render.write_csv(path, ["n", "E_n_cm-1", "beat_gap_cm-1"], rows)
    return [path]


def cmd_evolve(cfg: RunConfig) -> list[Path]:
    params = MorseParams(cfg.omega_e, cfg.omega_chi, cfg.mu)
    drv = derive(params)
    times = revival_times(drv, params)
    grid = _coord_grid(cfg, drv, params)
    n_steps = cfg.t_steps if cfg.t_steps is not None else 4096
    tgrid = dynamics.TimeGrid(0.0, times.t_rev, n_steps)
    field = dynamics.evolve(drv, params, grid, tgrid)
    rgb = render.heatmap_rgb(field.magnitude, render.HeatmapStyle(colormap=cfg.colormap))
    ppm = cfg.out_dir / "wavefield.ppm"
    render.write_ppm(
        ppm,
        rgb,
        comments=[
            f"|psi(q,t)| for omega_e={cfg.omega_e} omega_chi={cfg.omega_chi} (cm-1)",
            f"rows: t ascending downward, 0 .. {render.fmt(times.t_rev)} ps",
            f"cols: q from {render.fmt(grid.q_min)} to {render.fmt(grid.q_max)}",
            "value mapping: linear in |psi|",
        ],
    )
    trace = dynamics.autocorrelation(drv, params, tgrid)
    csv = cfg.out_dir / "autocorr.csv"
    render.write_csv(
        csv,
        ["t_ps", "abs_A", "re_A", "im_A"],
        (
            [t, abs(a), a.real, a.imag]
            for t, a in zip(tgrid.times(), trace.values)
        ),
    )
    return [ppm, csv]


def cmd_farey(cfg: RunConfig) -> list[Path]:
    tree = farey_ford.farey_tree(cfg.depth)
    csv = cfg.out_dir / "farey.csv"
    render.write_csv(
        csv,
        ["fraction", "depth", "center_x", "center_y", "radius", "parent_left", "parent_right"],
        render.farey_table(tree),
    )
    svg = cfg.out_dir / "farey.svg"
    render.atomic_write_text(svg, render.farey_svg(tree))
    return [csv, svg]


def cmd_annotate(cfg: RunConfig) -> list[Path]:
    params = MorseParams(cfg.omega_e, cfg.omega_chi, cfg.mu)
    drv = derive(params)
    times = revival_times(drv, params)
    if cfg.t_steps is not None:
        tgrid = dynamics.TimeGrid(0.0, times.t_rev, cfg.t_steps)
    else:
        tgrid = dynamics.revival_scan_grid(times.t_rev)
    trace = dynamics.autocorrelation(drv, params, tgrid)
    tagged = farey_ford.annotate_revivals(trace, times.t_rev, cfg.depth)
    by_fraction = {
        e.matched_fraction: e for e in tagged.extrema if e.matched_fraction is not None
    }
    rows = []
    for frac in farey_ford.farey_sequence(cfg.depth):
        expected = "peak" if frac.denominator % 2 == 1 else "node"
        ext = by_fraction.get(frac)
        observed = ext.kind if ext else ""
        rows.append(
            [
                float(frac) * times.t_rev,
                _frac_str(frac),
                frac.denominator,
                expected,
                observed,
                ext is not None and observed == expected,
            ]
        )
    path = cfg.out_dir / "annotate.csv"
    render.write_csv(
        path,
        ["t_ps", "fraction", "depth", "expected_kind", "observed_kind", "match"],
        rows,
    )
    return [path]


def cmd_classical(cfg: RunConfig) -> list[Path]:
    params = MorseParams(cfg.omega_e, cfg.omega_chi, cfg.mu)
    drv = derive(params)
    n_samples = cfg.t_steps if cfg.t_steps is not None else 512
    t_harmonic = 1.0 / (C_CM_PER_PS * float(params.omega_e))
    rows = []
    for n in range(drv.n_max + 1):
        energy = energy_level(drv, params, n)
        if energy >= drv.d_e:
            continue  # zero-defect top level dissociates, no bound orbit
        period = dynamics.classical_period(drv, params, energy)
        tgrid = dynamics.TimeGrid(0.0, period, n_samples)
        # near-dissociation orbits stretch over many harmonic periods but
        # still cross the well bottom quickly; keep ~512 steps per harmonic
        # period so the drift guard stays comfortably satisfied
        substeps = max(
            1, math.ceil(512 * period / t_harmonic / max(1, n_samples - 1))
        )
        q = dynamics.classical_trajectory(drv, params, energy, tgrid, substeps=substeps)
        rows.extend([n, energy, t, qq] for t, qq in zip(tgrid.times(), q))
    path = cfg.out_dir / "classical.csv"
    render.write_csv(path, ["n", "E_n_cm-1", "t_ps", "q"], rows)
    return [path]


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "farey": cmd_farey,
    "annotate": cmd_annotate,
    "classical": cmd_classical,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morse-revive",
        description="Morse-oscillator revival analysis and Farey-Ford geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("spectrum", "bound levels, gaps, and revival metadata (CSV)"),
        ("evolve", "space-time |psi| heatmap (PPM) and A(t) trace (CSV)"),
        ("farey", "Ford circle table (CSV) and diagram (SVG)"),
        ("annotate", "match |A(t)| extrema against Farey fractions (CSV)"),
        ("classical", "classical trajectories per bound level (CSV)"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, help="key = value configuration file")
        p.add_argument("--omega-e", dest="omega_e", help="harmonic wavenumber, e.g. 18 or 52/3")
        p.add_argument("--omega-chi", dest="omega_chi", help="anharmonic wavenumber")
        p.add_argument("--mu", help="reduced mass (amu), optional")
        p.add_argument("--q-min", dest="q_min", help="grid lower bound (dimensionless q)")
        p.add_argument("--q-max", dest="q_max", help="grid upper bound")
        p.add_argument("--q-points", dest="q_points", help="coordinate samples")
        p.add_argument("--t-steps", dest="t_steps", help="time samples")
        p.add_argument("--depth", help="maximum Farey denominator")
        p.add_argument("--out", help="output directory")
        p.add_argument("--colormap", help="heatmap colormap: grayscale or viridis")
        p.add_argument("--max-den", dest="max_den", help="rationalizer denominator cap")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        written = _COMMANDS[args.command](cfg)
    except (NumericsError, OverflowError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        # ConfigError and the models' precondition checks both name the
        # offending field in their message
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
