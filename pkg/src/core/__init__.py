from .disk import (ComplexValue, Disk, disk_contains, disk_contains_disk, lens_overlap_fraction,
                   lens_radius)
from .errors import EngineError
from .grid import DEFAULT_GRID_POINTS, Grid, cumulative_integral, numeric_derivative

__all__ = [
    "ComplexValue",
    "Disk",
    "disk_contains",
    "disk_contains_disk",
    "lens_radius",
    "lens_overlap_fraction",
    "EngineError",
    "DEFAULT_GRID_POINTS",
    "Grid",
    "cumulative_integral",
    "numeric_derivative",
]
