"""Graph and continuum Cheeger cuts on sampled manifolds."""

from ._core import (
    CheegerError,
    Manifold,
    PointCloud,
    ProximityGraph,
    build_graph,
    cloud_from_points,
    continuum_cheeger,
    cut_and_balance,
    fit_rate,
    gtv,
    run_experiment,
    sample,
    solve,
    surface_tension,
    tv_nonlocal_reference,
    validate_config,
)

__all__ = [
    "CheegerError",
    "Manifold",
    "PointCloud",
    "ProximityGraph",
    "build_graph",
    "cloud_from_points",
    "continuum_cheeger",
    "cut_and_balance",
    "fit_rate",
    "gtv",
    "run_experiment",
    "sample",
    "solve",
    "surface_tension",
    "tv_nonlocal_reference",
    "validate_config",
]
