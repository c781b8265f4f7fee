"""Command-line interface: sweeps to CSV.

Subcommands map one-to-one onto the run kinds:

    pattern     channel intensities vs offset (optional Monte Carlo columns)
    sweep       decoherence vs noise scale, numeric vs closed form
    surface     decoherence over a (delta, sigma) grid, numeric vs closed form
    montecarlo  pattern with mandatory Monte Carlo columns
    visibility  local visibility vs wavenumber

Every run reads one JSON config (--config), writes one CSV (--out or the
config's output path), and echoes its effective, normalized config into the
CSV metadata so the run can be reproduced from the output alone.  Outputs
are deterministic byte-for-byte for a fixed config and seed: no timestamps,
12-significant-digit scientific notation, '\n' newlines, atomic writes.

Exit codes: 0 success, 2 configuration error, 3 numeric failure, 4 I/O
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Sequence

import numpy as np

from . import __version__
from .config import (SimulationConfig, axis_grid, build_distribution,
                     build_search, build_spectrum, load_config,
                     parametric_distribution)
from .errors import (ConfigInvalid, FringeError, InvalidParticleCount,
                     IoFailure, ParseFailure, QuadratureNoConvergence,
                     TooFewSamples)
from .interferometer import (epsilon_arcsine_plane, epsilon_gaussian_packet,
                             epsilon_gaussian_plane, generalized_visibility,
                             local_visibility, pattern_sweep)
from .montecarlo import GENERATOR_NAME, estimate_pattern
from .spectra import MomentumSpectrum


def _fmt(value: float) -> str:
    return format(float(value), ".12e")


def _write_csv(path: str, header: str, rows: Sequence[str],
               metadata: Sequence[str]) -> None:
    payload = ("".join(f"# {line}\n" for line in metadata)
               + header + "\n" + "".join(row + "\n" for row in rows))
    directory = os.path.dirname(os.path.abspath(path)) or "."
    tmp = None
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mzfringe-",
                                   suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp, path)
        tmp = None
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    finally:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)


def _metadata(subcommand: str, config: SimulationConfig,
              extra: Sequence[str] = ()) -> list[str]:
    echo = json.dumps(config.to_json_dict(), sort_keys=True,
                      separators=(",", ":"))
    return [f"mzfringe {__version__}",
            f"subcommand: {subcommand}",
            f"config: {echo}",
            *extra]


def _require_seed(config: SimulationConfig) -> tuple[SimulationConfig, int]:
    """Fill in a fresh seed when the config leaves it out (never silent)."""
    mc = config.montecarlo
    if mc is None:
        raise ConfigInvalid("montecarlo: required for this subcommand")
    if "seed" in mc:
        return config, int(mc["seed"])
    seed = int(np.random.SeedSequence().entropy % (1 << 63))
    mc = dict(mc, seed=seed)
    return SimulationConfig(**{**config.__dict__, "montecarlo": mc}), seed


def _dist_metadata(config: SimulationConfig, base_dir: str) -> list[str]:
    if config.distribution["kind"] != "empirical":
        return []
    dist = build_distribution(config, base_dir)
    diag = dist.diagnostics
    return [f"samples: n={diag['n_samples']} "
            f"center_offset={_fmt(diag['center_offset'])}"]


def _run_pattern(config: SimulationConfig, out: str, base_dir: str,
                 include_mc: bool) -> int:
    if config.sweep["quantity"] != "delta0":
        raise ConfigInvalid("sweep.quantity: this subcommand sweeps 'delta0'")
    spectrum = build_spectrum(config)
    dist = build_distribution(config, base_dir)
    settings = build_search(config)
    grid = axis_grid(config.sweep)
    k_char = spectrum.central_wavenumber()
    pattern = pattern_sweep(spectrum, dist, grid, tol=settings.quad_tol)

    extra: list[str] = _dist_metadata(config, base_dir)
    header = "delta0,k0_delta0,n_ordinary,n_extraordinary"
    mc = None
    if include_mc or config.montecarlo is not None:
        config, seed = _require_seed(config)
        particles = config.montecarlo["particles"]
        mc = estimate_pattern(spectrum, dist, grid, particles, seed)
        header += ",mc_n_ordinary,mc_std_error"
        extra += [f"seed: {seed}", f"generator: {GENERATOR_NAME}",
                  f"particles: {particles}"]

    rows = []
    for i, d0 in enumerate(grid):
        cells = [_fmt(d0), _fmt(k_char * d0),
                 _fmt(pattern.n_ordinary[i]), _fmt(pattern.n_extraordinary[i])]
        if mc is not None:
            cells += [_fmt(mc.pattern.n_ordinary[i]), _fmt(mc.std_errors[i])]
        rows.append(",".join(cells))
    name = "montecarlo" if include_mc else "pattern"
    _write_csv(out, header, rows, _metadata(name, config, extra))
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _closed_form_epsilon(dist_kind: str, spectrum: MomentumSpectrum,
                         sigma: float) -> float:
    if spectrum.kind.value == "plane_wave":
        if dist_kind == "gaussian":
            return epsilon_gaussian_plane(spectrum.k, sigma)
        if dist_kind == "arcsine":
            return epsilon_arcsine_plane(spectrum.k, sigma)
        # uniform: visibility |sin(k a)/(k a)| peaks at offset 0
        x = spectrum.k * sigma
        return 1.0 - abs(np.sinc(x / np.pi))
    return epsilon_gaussian_packet(spectrum.k0, spectrum.delta, sigma)


def _run_sweep(config: SimulationConfig, out: str, base_dir: str) -> int:
    if config.sweep["quantity"] != "sigma":
        raise ConfigInvalid("sweep.quantity: the sweep subcommand sweeps 'sigma'")
    spectrum = build_spectrum(config)
    settings = build_search(config)
    dist_kind = config.distribution["kind"]
    k_char = spectrum.central_wavenumber()
    packet = spectrum.kind.value == "gaussian_packet"
    header = ("k_sigma,k0_delta,epsilon_numeric,epsilon_closed_form,abs_diff"
              if packet else
              "k_sigma,epsilon_numeric,epsilon_closed_form,abs_diff")
    rows = []
    for sigma in axis_grid(config.sweep):
        dist = parametric_distribution(dist_kind, float(sigma))
        numeric = generalized_visibility(spectrum, dist, settings).epsilon
        closed = _closed_form_epsilon(dist_kind, spectrum, float(sigma))
        cells = [_fmt(k_char * sigma)]
        if packet:
            cells.append(_fmt(spectrum.k0 * spectrum.delta))
        cells += [_fmt(numeric), _fmt(closed), _fmt(abs(numeric - closed))]
        rows.append(",".join(cells))
    _write_csv(out, header, rows, _metadata("sweep", config))
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _run_surface(config: SimulationConfig, out: str, base_dir: str) -> int:
    if config.sweep["quantity"] != "delta_sigma":
        raise ConfigInvalid(
            "sweep.quantity: the surface subcommand sweeps 'delta_sigma'")
    settings = build_search(config)
    k0 = config.spectrum["k0"]
    header = "k_sigma,k0_delta,epsilon_numeric,epsilon_closed_form,abs_diff"
    rows = []
    for delta in axis_grid(config.sweep["delta"]):
        spectrum = MomentumSpectrum.gaussian_packet(k0, float(delta))
        for sigma in axis_grid(config.sweep["sigma"]):
            dist = parametric_distribution("gaussian", float(sigma))
            numeric = generalized_visibility(spectrum, dist, settings).epsilon
            closed = epsilon_gaussian_packet(k0, float(delta), float(sigma))
            rows.append(",".join([
                _fmt(k0 * sigma), _fmt(k0 * delta),
                _fmt(numeric), _fmt(closed), _fmt(abs(numeric - closed))]))
    _write_csv(out, header, rows, _metadata("surface", config))
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _run_visibility(config: SimulationConfig, out: str, base_dir: str) -> int:
    if config.sweep["quantity"] != "k":
        raise ConfigInvalid(
            "sweep.quantity: the visibility subcommand sweeps 'k'")
    dist = build_distribution(config, base_dir)
    extra = _dist_metadata(config, base_dir)
    rows = [",".join([_fmt(k), _fmt(local_visibility(dist, float(k)))])
            for k in axis_grid(config.sweep)]
    _write_csv(out, "k,visibility", rows, _metadata("visibility", config, extra))
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _apply_overrides(config: SimulationConfig,
                     args: argparse.Namespace) -> SimulationConfig:
    mc = config.montecarlo
    if args.seed is not None or args.particles is not None:
        mc = dict(mc) if mc is not None else {}
        if args.particles is not None:
            if args.particles < 1000:
                raise ConfigInvalid("montecarlo.particles: must be >= 1000")
            mc["particles"] = args.particles
        if args.seed is not None:
            mc["seed"] = args.seed
        if "particles" not in mc:
            raise ConfigInvalid("montecarlo.particles: required value is missing")
    if mc is config.montecarlo:
        return config
    return SimulationConfig(**{**config.__dict__, "montecarlo": mc})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzfringe",
        description="Fringe patterns, visibility, and decoherence of a "
                    "two-channel interferometer with a fluctuating shifter.")
    parser.add_argument("--version", action="version",
                        version=f"mzfringe {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in (
            ("pattern", "channel intensities vs offset"),
            ("sweep", "decoherence vs noise scale"),
            ("surface", "decoherence over a (delta, sigma) grid"),
            ("montecarlo", "pattern with Monte Carlo columns"),
            ("visibility", "local visibility vs wavenumber")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON run config")
        p.add_argument("--out", help="output CSV path (default: config's)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--particles", type=int,
                       help="override the config particle count")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        config = _apply_overrides(config, args)
        out = args.out or config.output
        if out is None:
            raise ConfigInvalid("output: pass --out or set output in the config")
        base_dir = os.path.dirname(os.path.abspath(args.config))
        if args.subcommand == "pattern":
            return _run_pattern(config, out, base_dir, include_mc=False)
        if args.subcommand == "sweep":
            return _run_sweep(config, out, base_dir)
        if args.subcommand == "surface":
            return _run_surface(config, out, base_dir)
        if args.subcommand == "montecarlo":
            return _run_pattern(config, out, base_dir, include_mc=True)
        return _run_visibility(config, out, base_dir)
    except (ConfigInvalid, ParseFailure, TooFewSamples,
            InvalidParticleCount) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QuadratureNoConvergence as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except IoFailure as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 4
    except FringeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    raise SystemExit(main())
