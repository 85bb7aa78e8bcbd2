"""Circular symmetrization of univalent images and coefficient comparison."""

import json

from ._circsym import (
    BoundaryCurve,
    Error,
    PowerSeries,
    RadialProfile,
    ZipperMap,
    area_by_profile,
    area_by_shoelace,
    boundary_from_series,
    build_map,
    coefficients_from_samples,
    dirichlet_area,
    integral_mean,
    littlewood_check,
    radial_profile,
    run_cli,
    series_of_map,
    slice_measure,
    symmetrize,
    symmetrized_boundary,
    winding_number,
)
from ._circsym import default_config_json, run_pipeline_json


def default_config():
    return json.loads(default_config_json())


def verify(coefficients, rho=1.0, **overrides):
    """Runs the full pipeline on f = sum c_n z^n and returns the report as a dict.

    Keyword overrides use the config field names, e.g. boundary_vertices=512.
    """
    cfg = default_config()
    unknown = set(overrides) - set(cfg)
    if unknown:
        raise TypeError(f"unknown config fields: {sorted(unknown)}")
    cfg.update(overrides)
    series = coefficients if isinstance(coefficients, PowerSeries) else PowerSeries(list(coefficients), rho)
    return json.loads(run_pipeline_json(series, json.dumps(cfg)))
