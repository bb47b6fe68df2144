"""Command-line experiment drivers.

Each run writes, into the output directory: a CSV sweep, a flat key=value
summary of the derived metrics, an echo of the fully resolved configuration
(reloadable with --config to reproduce the run byte for byte), and a PNG
figure unless --no-plot is given.  Values on the wire are SI: delays in
seconds, angles in radians; the *-fs flags are parse-time conveniences.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .analysis import FitResult, fit_theta_values, plateau_maxima
from .elements import apply_pr, isomorphism_residual, random_word, word_to_string
from .errors import DegenerateFitError, DomainError, InsufficientDataError, ParitySimError
from .interferometer import (
    interferogram_sweep,
    ps_mzi,
    theta_sweep,
    traditional_mzi,
    visibility,
)
from .modes import Grid, ReferenceBasis, qubit, qubit_extract
from .source import concurrence, make_spectrum, pump_to_biphoton

OUTDIR_ENV_VAR = "PARITYSIM_OUTDIR"
EXPERIMENTS = ("mzi", "psmzi", "theta-sweep", "concurrence", "isomorphism")

ISOMORPHISM_TOLERANCE = 1e-8


@dataclass
class RunConfig:
    """Fully resolved inputs of one experiment run."""

    experiment: str
    pump_wavelength_nm: float = 405.0
    filter_center_nm: float = 810.0
    filter_fwhm_nm: float = 10.0
    plate_theta: float = 0.0
    tau_min_s: float = -1.35e-13
    tau_max_s: float = 1.35e-13
    tau_steps: int = 2001
    theta_min: float = 0.0
    theta_max: float = 10.0 * math.pi
    theta_steps: int = 500
    grid_n: int = 512
    grid_half_width: float = 8.0
    omega_nodes: int = 129
    word_count: int = 200
    max_word_len: int = 8
    seed: int = 7
    # accepted for the record only; the simulation has no thickness effects
    crystal_thickness_mm: float = 1.5
    outdir: str = "."
    plot: bool = True


def base_config(experiment: str) -> RunConfig:
    cfg = RunConfig(experiment=experiment)
    if experiment == "concurrence":
        cfg = replace(cfg, theta_max=2.0 * math.pi, theta_steps=100)
    return cfg


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_kv(path: Path, items: list[tuple[str, object]]) -> None:
    text = "".join(f"{k}={_fmt(v)}\n" for k, v in items)
    path.write_text(text, encoding="utf-8", newline="\n")


def _write_csv(path: Path, header: str, rows: list[tuple]) -> None:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def config_items(cfg: RunConfig) -> list[tuple[str, object]]:
    return [(f.name, getattr(cfg, f.name)) for f in fields(RunConfig)]


def load_config_file(path: Path) -> dict[str, object]:
    """Parse a key=value config echo back into typed RunConfig fields."""
    types = {f.name: f.type for f in fields(RunConfig)}
    out: dict[str, object] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in types:
            raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
        kind = types[key]
        try:
            if kind == "bool":
                if raw not in ("true", "false"):
                    raise ValueError(f"expected true/false, got {raw!r}")
                out[key] = raw == "true"
            elif kind == "int":
                out[key] = int(raw)
            elif kind == "float":
                out[key] = float(raw)
            else:
                out[key] = raw
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritysim",
        description="Simulate parity-encoded photon pairs and their interferograms.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pump-wavelength-nm", type=float, help="pump wavelength (default 405)")
    common.add_argument("--filter-center-nm", type=float, help="detection filter center (default 810)")
    common.add_argument("--filter-fwhm-nm", type=float, help="detection filter FWHM (default 10)")
    common.add_argument("--grid-n", type=int, help="transverse samples (default 512, even)")
    common.add_argument("--grid-half-width", type=float, help="half extent in beam-waist units (default 8)")
    common.add_argument("--omega-nodes", type=int, help="frequency quadrature nodes (default 129)")
    common.add_argument("--seed", type=int, help="seed for randomized experiments (default 7)")
    common.add_argument("--crystal-thickness-mm", type=float, help="recorded in metadata only")
    common.add_argument("--outdir", help=f"output directory (or set {OUTDIR_ENV_VAR})")
    common.add_argument("--config", help="load defaults from a config echo file")
    common.add_argument("--no-plot", dest="plot", action="store_false", default=None,
                        help="skip the PNG figure")

    delay = argparse.ArgumentParser(add_help=False)
    delay.add_argument("--plate-theta", type=float, help="pump plate phase in radians (default 0)")
    delay.add_argument("--tau-min-s", type=float, help="sweep start in seconds")
    delay.add_argument("--tau-max-s", type=float, help="sweep end in seconds")
    delay.add_argument("--tau-min-fs", type=float, help="sweep start in femtoseconds")
    delay.add_argument("--tau-max-fs", type=float, help="sweep end in femtoseconds")
    delay.add_argument("--tau-steps", type=int, help="number of delay samples (default 2001)")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--theta-min", "--min", dest="theta_min", type=float,
                       help="plate phase sweep start in radians")
    sweep.add_argument("--theta-max", "--max", dest="theta_max", type=float,
                       help="plate phase sweep end in radians")
    sweep.add_argument("--theta-steps", type=int, help="number of phase samples")

    sub = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT", required=True)
    sub.add_parser("mzi", parents=[common, delay],
                   help="delay sweep through the traditional interferometer")
    sub.add_parser("psmzi", parents=[common, delay],
                   help="delay sweep through the parity-sensitive interferometer")
    sub.add_parser("theta-sweep", parents=[common, sweep],
                   help="zero-delay coincidence versus pump plate phase")
    conc = sub.add_parser("concurrence", parents=[common, sweep],
                          help="entanglement of the two superposition families")
    del conc
    iso = sub.add_parser("isomorphism", parents=[common],
                         help="random element words versus 2x2 matrix products")
    iso.add_argument("--words", dest="word_count", type=int, help="number of random words (default 200)")
    iso.add_argument("--max-word-len", type=int, help="maximum word length (default 8)")
    return parser


def resolve_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    if getattr(args, "tau_min_fs", None) is not None and getattr(args, "tau_min_s", None) is not None:
        parser.error("--tau-min-s and --tau-min-fs are mutually exclusive")
    if getattr(args, "tau_max_fs", None) is not None and getattr(args, "tau_max_s", None) is not None:
        parser.error("--tau-max-s and --tau-max-fs are mutually exclusive")

    cfg = base_config(args.experiment)
    file_values: dict[str, object] = {}
    if getattr(args, "config", None):
        file_values = load_config_file(Path(args.config))
        file_exp = file_values.pop("experiment", args.experiment)
        if file_exp != args.experiment:
            raise DomainError(
                f"config file describes experiment {file_exp!r}, not {args.experiment!r}"
            )
        cfg = replace(cfg, **{k: v for k, v in file_values.items() if k != "outdir"})

    overrides: dict[str, object] = {}
    for f in fields(RunConfig):
        if f.name in ("experiment", "outdir"):
            continue
        value = getattr(args, f.name, None)
        if value is not None:
            overrides[f.name] = value
    if getattr(args, "tau_min_fs", None) is not None:
        overrides["tau_min_s"] = args.tau_min_fs * 1e-15
    if getattr(args, "tau_max_fs", None) is not None:
        overrides["tau_max_s"] = args.tau_max_fs * 1e-15
    if overrides:
        cfg = replace(cfg, **overrides)

    # output directory precedence: flag > environment > config file > default
    if getattr(args, "outdir", None) is not None:
        outdir = args.outdir
    elif os.environ.get(OUTDIR_ENV_VAR):
        outdir = os.environ[OUTDIR_ENV_VAR]
    elif "outdir" in file_values:
        outdir = str(file_values["outdir"])
    else:
        outdir = "."
    return replace(cfg, outdir=outdir)


def _validate(cfg: RunConfig) -> None:
    if cfg.experiment not in EXPERIMENTS:
        raise DomainError(f"unknown experiment {cfg.experiment!r}")
    if not cfg.tau_min_s < cfg.tau_max_s:
        raise DomainError(f"need tau_min < tau_max, got [{cfg.tau_min_s}, {cfg.tau_max_s}]")
    if cfg.tau_steps < 2:
        raise DomainError(f"tau_steps must be at least 2, got {cfg.tau_steps}")
    if not cfg.theta_min < cfg.theta_max:
        raise DomainError(f"need theta_min < theta_max, got [{cfg.theta_min}, {cfg.theta_max}]")
    if cfg.theta_steps < 2:
        raise DomainError(f"theta_steps must be at least 2, got {cfg.theta_steps}")
    if cfg.omega_nodes < 2:
        raise DomainError(f"omega_nodes must be at least 2, got {cfg.omega_nodes}")
    if cfg.word_count < 1:
        raise DomainError(f"word count must be positive, got {cfg.word_count}")
    if cfg.max_word_len < 1:
        raise DomainError(f"max word length must be positive, got {cfg.max_word_len}")


def _basis(cfg: RunConfig) -> ReferenceBasis:
    return ReferenceBasis.gaussian(Grid(half_width=cfg.grid_half_width, n=cfg.grid_n))


def _run_interferogram(cfg: RunConfig, paths: dict[str, Path]) -> None:
    basis = _basis(cfg)
    spectrum = make_spectrum(cfg.pump_wavelength_nm, cfg.filter_center_nm, cfg.filter_fwhm_nm)
    pump = qubit_extract(apply_pr(basis.g, cfg.plate_theta), basis)
    state = pump_to_biphoton(pump)
    icfg = ps_mzi() if cfg.experiment == "psmzi" else traditional_mzi()
    ig = interferogram_sweep(
        state, spectrum, cfg.tau_min_s, cfg.tau_max_s, cfg.tau_steps, icfg,
        plate_theta=cfg.plate_theta, n_nodes=cfg.omega_nodes,
    )
    vis = visibility(ig)
    rows = list(zip(ig.tau_s, ig.g2, ig.g2_raw))
    _write_csv(paths["csv"], "tau_s,g2_normalized,g2_raw", rows)
    near_zero = int(np.argmin(np.abs(ig.tau_s)))
    summary: list[tuple[str, object]] = [
        ("experiment", cfg.experiment),
        ("has_sf", icfg.has_sf),
        ("plate_theta_rad", cfg.plate_theta),
        ("baseline", ig.baseline),
        ("extremum_kind", vis.kind),
        ("visibility", vis.visibility),
        ("fringe_period_s", vis.fringe_period_s),
        ("g2_normalized_near_tau0", float(ig.g2[near_zero])),
        ("pump_period_s", ig.pump_period_s),
        ("sigma_omega_rad_s", ig.sigma_omega),
        ("resolution_warning", bool(ig.notes)),
        ("crystal_thickness_mm", cfg.crystal_thickness_mm),
    ]
    _write_kv(paths["summary"], summary)
    if "figure" in paths:
        from .plots import save_interferogram_figure

        name = "parity-sensitive" if icfg.has_sf else "traditional"
        title = f"{name} interferometer, plate phase {cfg.plate_theta:.4g} rad"
        save_interferogram_figure(ig, paths["figure"], title)


def _run_theta_sweep(cfg: RunConfig, paths: dict[str, Path]) -> None:
    basis = _basis(cfg)
    spectrum = make_spectrum(cfg.pump_wavelength_nm, cfg.filter_center_nm, cfg.filter_fwhm_nm)
    thetas, g2 = theta_sweep(
        spectrum, cfg.theta_min, cfg.theta_max, cfg.theta_steps, ps_mzi(),
        basis=basis, n_nodes=cfg.omega_nodes,
    )
    _write_csv(paths["csv"], "theta_rad,g2_at_tau0", list(zip(thetas, g2)))
    summary: list[tuple[str, object]] = [
        ("experiment", cfg.experiment),
        ("n_local_maxima", plateau_maxima(thetas, g2).size),
    ]
    fit: FitResult | None = None
    try:
        fit = fit_theta_values(thetas, g2)
    except (DegenerateFitError, InsufficientDataError) as exc:
        summary.append(("fit_status", f"failed: {exc}"))
    if fit is not None:
        summary.extend(
            [
                ("fit_status", "ok"),
                ("fit_amplitude", fit.amplitude),
                ("fit_period_rad", fit.period),
                ("fit_phase_rad", fit.phase),
                ("fit_offset", fit.offset),
                ("fit_residual_rms", fit.residual_rms),
            ]
        )
    _write_kv(paths["summary"], summary)
    if "figure" in paths:
        from .plots import save_theta_sweep_figure

        save_theta_sweep_figure(thetas, g2, paths["figure"], fit)


def _run_concurrence(cfg: RunConfig, paths: dict[str, Path]) -> None:
    thetas = np.linspace(cfg.theta_min, cfg.theta_max, cfg.theta_steps)
    c_i = np.empty_like(thetas)
    c_real = np.empty_like(thetas)
    for i, t in enumerate(thetas):
        c_i[i] = concurrence(pump_to_biphoton(qubit(np.cos(t), 1j * np.sin(t))))
        c_real[i] = concurrence(pump_to_biphoton(qubit(np.cos(t), np.sin(t))))
    _write_csv(
        paths["csv"],
        "theta_rad,concurrence_i_family,concurrence_real_family",
        list(zip(thetas, c_i, c_real)),
    )
    dev_i = float(np.max(np.abs(c_i - 1.0)))
    dev_real = float(np.max(np.abs(c_real - np.abs(np.cos(2.0 * thetas)))))
    _write_kv(
        paths["summary"],
        [
            ("experiment", cfg.experiment),
            ("max_abs_dev_i_family", dev_i),
            ("max_abs_dev_real_family", dev_real),
        ],
    )
    if "figure" in paths:
        from .plots import save_concurrence_figure

        save_concurrence_figure(thetas, c_i, c_real, paths["figure"])


def _run_isomorphism(cfg: RunConfig, paths: dict[str, Path]) -> None:
    basis = _basis(cfg)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    residuals = []
    for i in range(cfg.word_count):
        word = random_word(rng, cfg.max_word_len)
        amps = rng.normal(size=4)
        q0 = qubit(complex(amps[0], amps[1]), complex(amps[2], amps[3]))
        resid = isomorphism_residual(word, q0, basis)
        rows.append((i, word_to_string(word), resid))
        residuals.append(resid)
    _write_csv(paths["csv"], "word_index,word,residual", rows)
    max_resid = float(np.max(residuals))
    _write_kv(
        paths["summary"],
        [
            ("experiment", cfg.experiment),
            ("word_count", cfg.word_count),
            ("max_word_len", cfg.max_word_len),
            ("seed", cfg.seed),
            ("max_residual", max_resid),
            ("tolerance", ISOMORPHISM_TOLERANCE),
            ("all_within_tolerance", max_resid <= ISOMORPHISM_TOLERANCE),
        ],
    )
    if "figure" in paths:
        from .plots import save_residuals_figure

        save_residuals_figure(np.array(residuals), paths["figure"], ISOMORPHISM_TOLERANCE)


_RUNNERS = {
    "mzi": _run_interferogram,
    "psmzi": _run_interferogram,
    "theta-sweep": _run_theta_sweep,
    "concurrence": _run_concurrence,
    "isomorphism": _run_isomorphism,
}


def run(cfg: RunConfig) -> dict[str, Path]:
    """Execute one experiment; returns the paths of the files written."""
    _validate(cfg)
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = cfg.experiment.replace("-", "_")
    paths = {
        "config": outdir / f"{stem}_config.txt",
        "csv": outdir / f"{stem}.csv",
        "summary": outdir / f"{stem}_summary.txt",
    }
    if cfg.plot:
        paths["figure"] = outdir / f"{stem}.png"
    _write_kv(paths["config"], config_items(cfg))
    _RUNNERS[cfg.experiment](cfg, paths)
    return paths


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args, parser)
        paths = run(cfg)
    except OSError as exc:
        print(f"paritysim: I/O error: {exc}", file=sys.stderr)
        return 4
    except ParitySimError as exc:
        print(f"paritysim: error: {exc}", file=sys.stderr)
        return 3
    for label, path in paths.items():
        print(f"{label}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
