"""Run configuration: JSON schema, validation, and domain-object builders.

A run is described by one JSON document.  Validation failures raise
ConfigInvalid with a dotted field path so the offending entry is findable;
builders translate validated dictionaries into spectrum/distribution/search
objects.  Sample files referenced by empirical distributions are parsed
here as well.

Schema (version 1):

    {
      "schema_version": 1,
      "spectrum": {"kind": "plane_wave", "k": 1.0}
                | {"kind": "gaussian_packet", "k0": 1.0, "delta": 12.0}
                | {"kind": "tabulated", "nodes": [[k, density], ...]},
      "distribution": {"kind": "delta"}
                    | {"kind": "gaussian" | "arcsine", "sigma": 1.0}
                    | {"kind": "uniform", "halfwidth": 1.0}
                    | {"kind": "empirical", "samples_path": "shifts.txt"},
      "sweep": {"quantity": "delta0" | "k" | "sigma",
                "start": 0.0, "stop": 30.0, "points": 600}
             | {"quantity": "delta_sigma",
                "delta": {"start": ..., "stop": ..., "points": ...},
                "sigma": {"start": ..., "stop": ..., "points": ...}},
      "search": {"window": [lo, hi] | null, "grid_n": 1024,
                 "quad_tol": 1e-9, "search_tol": 1e-10},
      "montecarlo": {"particles": 1000000, "seed": 42},
      "output": "pattern.csv"
    }

Scale parameters ride the sweep axis where the sweep varies them: a
"sigma" or "delta_sigma" sweep takes a distribution with no scale field
(the axis supplies it), and a "delta_sigma" sweep takes a gaussian_packet
spectrum with no delta field.  "search", "montecarlo", and "output" are
optional everywhere.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import ConfigInvalid, IoFailure, ParseFailure
from .interferometer import SearchSettings
from .shift_noise import ShiftDistribution
from .spectra import MomentumSpectrum

SCHEMA_VERSION = 1

_SPECTRUM_KINDS = ("plane_wave", "gaussian_packet", "tabulated")
_DISTRIBUTION_KINDS = ("delta", "gaussian", "arcsine", "uniform", "empirical")
_QUANTITIES = ("delta0", "k", "sigma", "delta_sigma")

# (distribution kind, spectrum kind) pairs with a closed-form epsilon,
# the only combinations the sweep and surface subcommands accept.
CLOSED_FORM_PAIRS = (
    ("gaussian", "plane_wave"),
    ("arcsine", "plane_wave"),
    ("uniform", "plane_wave"),
    ("gaussian", "gaussian_packet"),
)


@dataclass(frozen=True)
class SimulationConfig:
    """A validated, normalized run description.

    Fields hold normalized JSON-shaped dictionaries, so equality means
    configuration equivalence and to_json_dict() round-trips through
    parse_config exactly.
    """

    schema_version: int
    spectrum: dict | None
    distribution: dict
    sweep: dict
    search: dict
    montecarlo: dict | None
    output: str | None

    def to_json_dict(self) -> dict:
        out: dict[str, Any] = {
            "schema_version": self.schema_version,
            "distribution": self.distribution,
            "sweep": self.sweep,
            "search": self.search,
        }
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum
        if self.montecarlo is not None:
            out["montecarlo"] = self.montecarlo
        if self.output is not None:
            out["output"] = self.output
        return out


def _fail(path: str, message: str) -> ConfigInvalid:
    return ConfigInvalid(f"{path}: {message}")


def _get_mapping(data: dict, path: str, key: str, required: bool):
    value = data.get(key)
    if value is None:
        if required:
            raise _fail(f"{path}{key}", "required section is missing")
        return None
    if not isinstance(value, dict):
        raise _fail(f"{path}{key}", "must be an object")
    return value


def _get_number(data: dict, path: str, key: str, *, minimum=None,
                exclusive_minimum=None, required=True, default=None):
    if key not in data:
        if required:
            raise _fail(f"{path}.{key}", "required value is missing")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(f"{path}.{key}", "must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise _fail(f"{path}.{key}", "must be finite")
    if minimum is not None and value < minimum:
        raise _fail(f"{path}.{key}", f"must be >= {minimum}")
    if exclusive_minimum is not None and value <= exclusive_minimum:
        raise _fail(f"{path}.{key}", f"must be > {exclusive_minimum}")
    return value


def _get_int(data: dict, path: str, key: str, *, minimum, required=True,
             default=None):
    if key not in data:
        if required:
            raise _fail(f"{path}.{key}", "required value is missing")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(f"{path}.{key}", "must be an integer")
    if value < minimum:
        raise _fail(f"{path}.{key}", f"must be >= {minimum}")
    return value


def _reject_unknown(data: dict, path: str, allowed: tuple) -> None:
    unknown = set(data) - set(allowed)
    if unknown:
        raise _fail(f"{path}.{sorted(unknown)[0]}", "unknown field")


def _parse_axis(data: dict, path: str) -> dict:
    _reject_unknown(data, path, ("start", "stop", "points"))
    start = _get_number(data, path, "start")
    stop = _get_number(data, path, "stop")
    points = _get_int(data, path, "points", minimum=1)
    if stop < start:
        raise _fail(f"{path}.stop", "must be >= start")
    return {"start": start, "stop": stop, "points": points}


def _parse_sweep(data: dict) -> dict:
    quantity = data.get("quantity")
    if quantity not in _QUANTITIES:
        raise _fail("sweep.quantity",
                    f"must be one of {', '.join(_QUANTITIES)}")
    if quantity == "delta_sigma":
        _reject_unknown(data, "sweep", ("quantity", "delta", "sigma"))
        delta = _get_mapping(data, "sweep.", "delta", required=True)
        sigma = _get_mapping(data, "sweep.", "sigma", required=True)
        return {"quantity": quantity,
                "delta": _parse_axis(delta, "sweep.delta"),
                "sigma": _parse_axis(sigma, "sweep.sigma")}
    axis = _parse_axis({k: v for k, v in data.items() if k != "quantity"},
                       "sweep")
    return {"quantity": quantity, **axis}


def _parse_spectrum(data: dict, sweep: dict) -> dict:
    kind = data.get("kind")
    if kind not in _SPECTRUM_KINDS:
        raise _fail("spectrum.kind",
                    f"must be one of {', '.join(_SPECTRUM_KINDS)}")
    if kind == "plane_wave":
        _reject_unknown(data, "spectrum", ("kind", "k"))
        k = _get_number(data, "spectrum", "k", exclusive_minimum=0.0)
        return {"kind": kind, "k": k}
    if kind == "gaussian_packet":
        _reject_unknown(data, "spectrum", ("kind", "k0", "delta"))
        k0 = _get_number(data, "spectrum", "k0", exclusive_minimum=0.0)
        surface = sweep["quantity"] == "delta_sigma"
        if surface:
            if "delta" in data:
                raise _fail("spectrum.delta",
                            "a delta_sigma sweep supplies delta; remove it")
            return {"kind": kind, "k0": k0}
        delta = _get_number(data, "spectrum", "delta", exclusive_minimum=0.0)
        return {"kind": kind, "k0": k0, "delta": delta}
    _reject_unknown(data, "spectrum", ("kind", "nodes"))
    nodes = data.get("nodes")
    if not isinstance(nodes, list) or len(nodes) < 2:
        raise _fail("spectrum.nodes", "must be a list of at least 2 [k, density] pairs")
    clean = []
    for i, pair in enumerate(nodes):
        if (not isinstance(pair, list) or len(pair) != 2
                or any(isinstance(v, bool) or not isinstance(v, (int, float))
                       for v in pair)):
            raise _fail(f"spectrum.nodes[{i}]", "must be a [k, density] pair")
        clean.append([float(pair[0]), float(pair[1])])
    try:
        MomentumSpectrum.tabulated(clean)
    except ValueError as exc:
        raise _fail("spectrum.nodes", str(exc)) from exc
    return {"kind": kind, "nodes": clean}


def _parse_distribution(data: dict, sweep: dict) -> dict:
    kind = data.get("kind")
    if kind not in _DISTRIBUTION_KINDS:
        raise _fail("distribution.kind",
                    f"must be one of {', '.join(_DISTRIBUTION_KINDS)}")
    swept = sweep["quantity"] in ("sigma", "delta_sigma")
    if kind == "delta":
        _reject_unknown(data, "distribution", ("kind",))
        if swept:
            raise _fail("distribution.kind",
                        "a sigma sweep needs a parametric distribution")
        return {"kind": kind}
    if kind == "empirical":
        _reject_unknown(data, "distribution", ("kind", "samples_path"))
        if swept:
            raise _fail("distribution.kind",
                        "a sigma sweep needs a parametric distribution")
        path = data.get("samples_path")
        if not isinstance(path, str) or not path:
            raise _fail("distribution.samples_path", "must be a nonempty string")
        return {"kind": kind, "samples_path": path}
    scale_key = "halfwidth" if kind == "uniform" else "sigma"
    _reject_unknown(data, "distribution", ("kind", scale_key))
    if swept:
        if scale_key in data:
            raise _fail(f"distribution.{scale_key}",
                        "the sweep supplies the scale; remove it")
        return {"kind": kind}
    scale = _get_number(data, "distribution", scale_key, minimum=0.0)
    return {"kind": kind, scale_key: scale}


def _parse_search(data: dict | None) -> dict:
    defaults = SearchSettings()
    if data is None:
        data = {}
    _reject_unknown(data, "search", ("window", "grid_n", "quad_tol", "search_tol"))
    window = data.get("window")
    if window is not None:
        if (not isinstance(window, list) or len(window) != 2
                or any(isinstance(v, bool) or not isinstance(v, (int, float))
                       for v in window)):
            raise _fail("search.window", "must be [lo, hi] or null")
        window = [float(window[0]), float(window[1])]
        if not all(map(math.isfinite, window)) or window[0] > window[1]:
            raise _fail("search.window", "needs finite lo <= hi")
    grid_n = _get_int(data, "search", "grid_n", minimum=64,
                      required=False, default=defaults.grid_n)
    quad_tol = _get_number(data, "search", "quad_tol", exclusive_minimum=0.0,
                           required=False, default=defaults.quad_tol)
    search_tol = _get_number(data, "search", "search_tol",
                             exclusive_minimum=0.0, required=False,
                             default=defaults.search_tol)
    return {"window": window, "grid_n": grid_n,
            "quad_tol": quad_tol, "search_tol": search_tol}


def _parse_montecarlo(data: dict | None) -> dict | None:
    if data is None:
        return None
    _reject_unknown(data, "montecarlo", ("particles", "seed"))
    particles = _get_int(data, "montecarlo", "particles", minimum=1000)
    seed = _get_int(data, "montecarlo", "seed", minimum=0,
                    required=False, default=None)
    out = {"particles": particles}
    if seed is not None:
        out["seed"] = seed
    return out


def parse_config(data: Any) -> SimulationConfig:
    """Validate a decoded JSON document into a SimulationConfig."""
    if not isinstance(data, dict):
        raise ConfigInvalid("config: top level must be an object")
    _reject_unknown(data, "config", ("schema_version", "spectrum",
                                     "distribution", "sweep", "search",
                                     "montecarlo", "output"))
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise _fail("schema_version", f"expected {SCHEMA_VERSION}")
    sweep = _parse_sweep(_get_mapping(data, "", "sweep", required=True))
    spectrum_raw = _get_mapping(data, "", "spectrum", required=False)
    spectrum = (None if spectrum_raw is None
                else _parse_spectrum(spectrum_raw, sweep))
    distribution = _parse_distribution(
        _get_mapping(data, "", "distribution", required=True), sweep)
    search = _parse_search(_get_mapping(data, "", "search", required=False))
    montecarlo = _parse_montecarlo(
        _get_mapping(data, "", "montecarlo", required=False))
    output = data.get("output")
    if output is not None and (not isinstance(output, str) or not output):
        raise _fail("output", "must be a nonempty string")
    if sweep["quantity"] == "delta_sigma":
        if spectrum is None or spectrum["kind"] != "gaussian_packet":
            raise _fail("spectrum.kind",
                        "a delta_sigma sweep needs a gaussian_packet spectrum")
        if distribution["kind"] != "gaussian":
            raise _fail("distribution.kind",
                        "a delta_sigma sweep needs gaussian noise "
                        "(the only packet closed form)")
    if sweep["quantity"] == "sigma":
        if spectrum is None:
            raise _fail("spectrum", "required section is missing")
        if (distribution["kind"], spectrum["kind"]) not in CLOSED_FORM_PAIRS:
            raise _fail("distribution.kind",
                        f"no closed form for {distribution['kind']} noise "
                        f"with a {spectrum['kind']} spectrum")
    return SimulationConfig(schema_version=SCHEMA_VERSION, spectrum=spectrum,
                            distribution=distribution, sweep=sweep,
                            search=search, montecarlo=montecarlo,
                            output=output)


def load_config(path: str) -> SimulationConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError as exc:
        raise ConfigInvalid(f"config: file not found: {path}") from exc
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"config: invalid JSON: {exc}") from exc
    return parse_config(data)


# -- builders ----------------------------------------------------------------


def build_spectrum(config: SimulationConfig) -> MomentumSpectrum:
    """Construct the spectrum described by the config (full specs only)."""
    spec = config.spectrum
    if spec is None:
        raise ConfigInvalid("spectrum: required section is missing")
    if spec["kind"] == "plane_wave":
        return MomentumSpectrum.plane_wave(spec["k"])
    if spec["kind"] == "gaussian_packet":
        if "delta" not in spec:
            raise ConfigInvalid("spectrum.delta: required value is missing")
        return MomentumSpectrum.gaussian_packet(spec["k0"], spec["delta"])
    return MomentumSpectrum.tabulated(spec["nodes"])


def build_distribution(config: SimulationConfig,
                       base_dir: str = ".") -> ShiftDistribution:
    """Construct the shift distribution (full specs only).

    Empirical sample paths resolve relative to base_dir, normally the
    config file's directory.
    """
    dist = config.distribution
    kind = dist["kind"]
    if kind == "delta":
        return ShiftDistribution.delta()
    if kind == "empirical":
        path = dist["samples_path"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return ingest_samples(path)
    if "sigma" not in dist and "halfwidth" not in dist:
        raise ConfigInvalid(
            "distribution: scale is sweep-supplied; build per grid point")
    return parametric_distribution(kind, dist.get("sigma",
                                                  dist.get("halfwidth")))


def parametric_distribution(kind: str, scale: float) -> ShiftDistribution:
    """Build a parametric shift law from its kind name and scale."""
    if kind == "gaussian":
        return ShiftDistribution.gaussian(scale)
    if kind == "arcsine":
        return ShiftDistribution.arcsine(scale)
    if kind == "uniform":
        return ShiftDistribution.uniform(scale)
    raise ConfigInvalid(f"distribution.kind: {kind} takes no scale")


def build_search(config: SimulationConfig) -> SearchSettings:
    s = config.search
    window = None if s["window"] is None else (s["window"][0], s["window"][1])
    return SearchSettings(window=window, grid_n=s["grid_n"],
                          quad_tol=s["quad_tol"], search_tol=s["search_tol"])


def axis_grid(axis: dict) -> np.ndarray:
    """The sample points of a sweep axis (inclusive endpoints)."""
    if axis["points"] == 1:
        return np.array([axis["start"]])
    return np.linspace(axis["start"], axis["stop"], axis["points"])


def ingest_samples(path: str) -> ShiftDistribution:
    """Parse a shift-sample file into an empirical distribution.

    One real number per line; blank lines and lines starting with '#' are
    skipped.  The resulting distribution is mean-centered; the sample count
    and removed offset are available in its diagnostics.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except FileNotFoundError as exc:
        raise ConfigInvalid(
            f"distribution.samples_path: file not found: {path}") from exc
    except OSError as exc:
        raise IoFailure(f"cannot read samples {path}: {exc}") from exc
    values = []
    for lineno, line in enumerate(lines, start=1):
        token = line.strip()
        if not token or token.startswith("#"):
            continue
        try:
            value = float(token)
        except ValueError as exc:
            raise ParseFailure(
                f"{path}:{lineno}: not a number: {token!r}") from exc
        if not math.isfinite(value):
            raise ParseFailure(f"{path}:{lineno}: not finite: {token!r}")
        values.append(value)
    return ShiftDistribution.empirical(values)
