"""Beacon-LED localization: angle-of-arrival estimation, two-ray
triangulation, closed-form error prediction and Monte Carlo validation."""

from ._core import (
    Error,
    ExperimentSpec,
    GridSpec,
    GridSweepResult,
    NoiseModel,
    OpticalParams,
    PointRecord,
    RoomBounds,
    SceneConfig,
    __version__,
    empirical_eps,
    fig3_preset,
    fig4_preset,
    optimal_normals,
    parse_config,
    parse_sweep_csv,
    render_heatmap_svg,
    run_trial,
    sweep,
    sweep_csv,
    theoretical_error_at,
    triangulate,
    write_config,
)

__all__ = [
    "Error",
    "ExperimentSpec",
    "GridSpec",
    "GridSweepResult",
    "NoiseModel",
    "OpticalParams",
    "PointRecord",
    "RoomBounds",
    "SceneConfig",
    "__version__",
    "empirical_eps",
    "fig3_preset",
    "fig4_preset",
    "optimal_normals",
    "parse_config",
    "parse_sweep_csv",
    "render_heatmap_svg",
    "run_trial",
    "sweep",
    "sweep_csv",
    "theoretical_error_at",
    "triangulate",
    "write_config",
]
