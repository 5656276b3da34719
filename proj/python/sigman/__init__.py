"""Signal energies, energy-bound checks and graph quasi-embeddings.

Manifolds, paths, meshes and graphs are passed as the same JSON-shaped
dicts the ``sigman`` command-line tool reads.
"""

from ._core import (
    SigmanError,
    config_bounds,
    curve_energy,
    distance,
    embed,
    fisher_metric,
    gaussian_bound,
    mesh_area,
    mesh_diameter,
    random_config_path,
    random_gaussian_path,
    ratio_variance,
    rectangle_energy,
    region_energy,
    relative_ratio_variance,
    triangulate_sphere,
    validate_point,
    verify_all,
)

__all__ = [
    "SigmanError",
    "config_bounds",
    "curve_energy",
    "distance",
    "embed",
    "fisher_metric",
    "gaussian_bound",
    "mesh_area",
    "mesh_diameter",
    "random_config_path",
    "random_gaussian_path",
    "ratio_variance",
    "rectangle_energy",
    "region_energy",
    "relative_ratio_variance",
    "triangulate_sphere",
    "validate_point",
    "verify_all",
]
