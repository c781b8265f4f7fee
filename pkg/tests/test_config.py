"""Config parsing, validation messages, and sample ingestion."""

import json

import numpy as np
import pytest

from mzfringe.config import (CLOSED_FORM_PAIRS, SCHEMA_VERSION, axis_grid,
                             build_distribution, build_search, build_spectrum,
                             ingest_samples, load_config,
                             parametric_distribution, parse_config)
from mzfringe.errors import (ConfigInvalid, IoFailure, ParseFailure,
                             TooFewSamples)


def pattern_config(**overrides):
    base = {
        "schema_version": SCHEMA_VERSION,
        "spectrum": {"kind": "gaussian_packet", "k0": 1.0, "delta": 2.0},
        "distribution": {"kind": "gaussian", "sigma": 0.5},
        "sweep": {"quantity": "delta0", "start": 0.0, "stop": 6.0,
                  "points": 7},
    }
    base.update(overrides)
    return base


def fails_with(data, fragment):
    with pytest.raises(ConfigInvalid) as err:
        parse_config(data)
    assert fragment in str(err.value)


# -- parsing and validation ----------------------------------------------------


def test_minimal_config_parses_and_round_trips():
    config = parse_config(pattern_config())
    assert config.search["grid_n"] == 1024
    assert config.search["window"] is None
    assert parse_config(config.to_json_dict()) == config


def test_round_trip_with_all_sections(tmp_path):
    data = pattern_config(
        search={"window": [0.0, 20.0], "grid_n": 256, "quad_tol": 1e-8,
                "search_tol": 1e-9},
        montecarlo={"particles": 5000, "seed": 9},
        output="out.csv")
    config = parse_config(data)
    assert parse_config(config.to_json_dict()) == config
    assert config.montecarlo == {"particles": 5000, "seed": 9}


def test_schema_version_is_checked():
    fails_with(pattern_config(schema_version=2), "schema_version")
    fails_with({k: v for k, v in pattern_config().items()
                if k != "schema_version"}, "schema_version")


def test_unknown_fields_are_named():
    fails_with(pattern_config(extra=1), "config.extra")
    fails_with(pattern_config(
        spectrum={"kind": "plane_wave", "k": 1.0, "phase": 0.0}),
        "spectrum.phase")


def test_top_level_must_be_object():
    fails_with([1, 2], "top level")


def test_axis_validation():
    fails_with(pattern_config(sweep={"quantity": "delta0", "start": 2.0,
                                     "stop": 1.0, "points": 5}), "sweep.stop")
    fails_with(pattern_config(sweep={"quantity": "delta0", "start": 0.0,
                                     "stop": 1.0, "points": 0}),
               "sweep.points")
    fails_with(pattern_config(sweep={"quantity": "orbit", "start": 0.0,
                                     "stop": 1.0, "points": 5}),
               "sweep.quantity")


def test_numbers_reject_booleans_and_non_finite():
    fails_with(pattern_config(
        spectrum={"kind": "plane_wave", "k": True}), "spectrum.k")
    fails_with(pattern_config(
        spectrum={"kind": "plane_wave", "k": float("inf")}), "spectrum.k")
    fails_with(pattern_config(
        spectrum={"kind": "plane_wave", "k": 0.0}), "spectrum.k")


def test_tabulated_nodes_validation():
    fails_with(pattern_config(spectrum={"kind": "tabulated",
                                        "nodes": [[0.0, 1.0]]}),
               "spectrum.nodes")
    fails_with(pattern_config(spectrum={"kind": "tabulated",
                                        "nodes": [[0.0, 1.0], [1.0]]}),
               "spectrum.nodes[1]")
    fails_with(pattern_config(spectrum={"kind": "tabulated",
                                        "nodes": [[1.0, 1.0], [0.5, 1.0]]}),
               "spectrum.nodes")


def test_sigma_sweep_requires_closed_form_pair():
    sweep = {"quantity": "sigma", "start": 0.0, "stop": 2.0, "points": 5}
    good = pattern_config(sweep=sweep,
                          distribution={"kind": "gaussian"})
    assert parse_config(good).sweep["quantity"] == "sigma"
    fails_with(pattern_config(
        sweep=sweep,
        spectrum={"kind": "tabulated", "nodes": [[0.1, 1.0], [1.0, 1.0]]},
        distribution={"kind": "gaussian"}), "no closed form")
    fails_with(pattern_config(sweep=sweep,
                              distribution={"kind": "delta"}),
               "distribution.kind")
    fails_with(pattern_config(
        sweep=sweep, distribution={"kind": "empirical",
                                   "samples_path": "x.txt"}),
        "distribution.kind")
    fails_with(pattern_config(
        sweep=sweep, distribution={"kind": "gaussian", "sigma": 0.5}),
        "distribution.sigma")
    assert ("arcsine", "gaussian_packet") not in CLOSED_FORM_PAIRS


def test_surface_sweep_shape():
    sweep = {"quantity": "delta_sigma",
             "delta": {"start": 0.5, "stop": 2.0, "points": 3},
             "sigma": {"start": 0.0, "stop": 1.0, "points": 3}}
    good = pattern_config(sweep=sweep,
                          spectrum={"kind": "gaussian_packet", "k0": 1.0},
                          distribution={"kind": "gaussian"})
    config = parse_config(good)
    assert config.spectrum == {"kind": "gaussian_packet", "k0": 1.0}
    fails_with(pattern_config(sweep=sweep,
                              distribution={"kind": "gaussian"}),
               "spectrum.delta")
    fails_with(pattern_config(
        sweep=sweep, spectrum={"kind": "plane_wave", "k": 1.0},
        distribution={"kind": "gaussian"}), "spectrum.kind")
    fails_with(pattern_config(
        sweep=sweep, spectrum={"kind": "gaussian_packet", "k0": 1.0},
        distribution={"kind": "arcsine"}), "distribution.kind")


def test_montecarlo_section():
    config = parse_config(pattern_config(montecarlo={"particles": 1000}))
    assert config.montecarlo == {"particles": 1000}
    fails_with(pattern_config(montecarlo={"particles": 999}),
               "montecarlo.particles")
    fails_with(pattern_config(montecarlo={"particles": 1000, "seed": -1}),
               "montecarlo.seed")


def test_search_section_validation():
    fails_with(pattern_config(search={"window": [2.0, 1.0]}), "search.window")
    fails_with(pattern_config(search={"window": [0.0]}), "search.window")
    fails_with(pattern_config(search={"grid_n": 8}), "search.grid_n")
    config = parse_config(pattern_config(search={"window": [0.0, 5.0]}))
    assert build_search(config).window == (0.0, 5.0)


# -- builders -------------------------------------------------------------------


def test_build_spectrum_and_distribution():
    config = parse_config(pattern_config())
    spec = build_spectrum(config)
    assert spec.k0 == 1.0 and spec.delta == 2.0
    dist = build_distribution(config)
    assert dist.sigma == 0.5


def test_parametric_distribution_kinds():
    assert parametric_distribution("gaussian", 1.0).kind.value == "gaussian"
    assert parametric_distribution("uniform", 1.0).kind.value == "uniform"
    with pytest.raises(ConfigInvalid):
        parametric_distribution("delta", 1.0)


def test_axis_grid_endpoints():
    grid = axis_grid({"start": 0.0, "stop": 3.0, "points": 4})
    assert np.array_equal(grid, [0.0, 1.0, 2.0, 3.0])
    assert np.array_equal(axis_grid({"start": 2.5, "stop": 9.0, "points": 1}),
                          [2.5])


# -- file loading ----------------------------------------------------------------


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigInvalid, match="not found"):
        load_config(str(tmp_path / "absent.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigInvalid, match="invalid JSON"):
        load_config(str(bad))


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(pattern_config()))
    assert load_config(str(path)) == parse_config(pattern_config())


# -- sample ingestion --------------------------------------------------------------


def test_ingest_gaussian_samples_match_closed_form(tmp_path):
    rng = np.random.default_rng(61)
    sigma = 0.8
    samples = rng.normal(0.0, sigma, 200_000)
    path = tmp_path / "samples.txt"
    np.savetxt(path, samples)
    dist = ingest_samples(str(path))
    assert dist.diagnostics["n_samples"] == 200_000
    for k in (0.5, 1.0, 2.0):
        target = np.exp(-0.5 * (k * sigma) ** 2)
        assert abs(dist.characteristic(k).value - target) <= 5e-3


def test_ingest_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "samples.txt"
    path.write_text("# shifts\n\n0.5\n-0.5\n\n# tail\n1.5\n-1.5\n")
    dist = ingest_samples(str(path))
    assert dist.diagnostics["n_samples"] == 4
    assert dist.characteristic(0.0).value == 1.0


def test_ingest_reports_bad_line(tmp_path):
    path = tmp_path / "samples.txt"
    path.write_text("0.1\n0.2\n0.3\n0.4\n0.5\n0.6\nbogus\n0.8\n")
    with pytest.raises(ParseFailure, match=r":7: not a number: 'bogus'"):
        ingest_samples(str(path))
    path.write_text("0.1\ninf\n")
    with pytest.raises(ParseFailure, match=r":2: not finite"):
        ingest_samples(str(path))


def test_ingest_needs_two_samples(tmp_path):
    path = tmp_path / "samples.txt"
    path.write_text("1.25\n")
    with pytest.raises(TooFewSamples):
        ingest_samples(str(path))


def test_ingest_missing_file_is_config_error(tmp_path):
    with pytest.raises(ConfigInvalid, match="file not found"):
        ingest_samples(str(tmp_path / "absent.txt"))


def test_empirical_path_resolves_against_base_dir(tmp_path):
    (tmp_path / "noise.txt").write_text("0.5\n-0.5\n")
    config = parse_config(pattern_config(
        distribution={"kind": "empirical", "samples_path": "noise.txt"}))
    dist = build_distribution(config, base_dir=str(tmp_path))
    assert dist.diagnostics["n_samples"] == 2


def test_unreadable_samples_is_io_failure(tmp_path):
    assert issubclass(IoFailure, Exception)
    target = tmp_path / "dir_not_file"
    target.mkdir()
    with pytest.raises((IoFailure, ConfigInvalid)):
        ingest_samples(str(target))
