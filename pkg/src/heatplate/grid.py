"""Plate geometry and the uniform finite-volume grid over its 2D side view.

Cells are indexed (j, k) with j along x1 (length) and k along x2 (height).
Flat storage order is row-major over x1: offset = k*J + j, so the topside
row k = K-1 occupies the last J entries of a field vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .material import ThermalMaterial


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTTOM = "bottom"
    TOP = "top"


@dataclass(frozen=True)
class PlateGeometry:
    """Rectangular side-view domain (0, length) x (0, height), in meters."""

    length: float
    height: float

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError(f"length must be > 0, got {self.length}")
        if not self.height > 0:
            raise ValueError(f"height must be > 0, got {self.height}")


@dataclass(frozen=True)
class Grid:
    """Uniform J x K cell grid over a plate geometry.

    At least two cells per axis are required: the five-point stencil and
    the ghost-cell boundary substitution both need a distinct neighbor.
    """

    geometry: PlateGeometry
    J: int
    K: int

    def __post_init__(self):
        if self.J < 2:
            raise ValueError(f"J must be >= 2, got {self.J}")
        if self.K < 2:
            raise ValueError(f"K must be >= 2, got {self.K}")

    @property
    def dx1(self) -> float:
        return self.geometry.length / self.J

    @property
    def dx2(self) -> float:
        return self.geometry.height / self.K

    @property
    def n_cells(self) -> int:
        return self.J * self.K

    def cell_center(self, j: int, k: int) -> tuple[float, float]:
        """Center coordinates ((j + 1/2)*dx1, (k + 1/2)*dx2) of cell (j, k)."""
        return (j + 0.5) * self.dx1, (k + 0.5) * self.dx2

    def x1_centers(self) -> np.ndarray:
        """x1 coordinates of all column centers, length J."""
        return (np.arange(self.J) + 0.5) * self.dx1

    def x2_centers(self) -> np.ndarray:
        """x2 coordinates of all row centers, length K."""
        return (np.arange(self.K) + 0.5) * self.dx2

    def flat_index(self, j: int, k: int) -> int:
        """Flat storage offset k*J + j of cell (j, k)."""
        return k * self.J + j

    def cell_from_flat(self, offset: int) -> tuple[int, int]:
        """Inverse of flat_index: (j, k) for a flat offset."""
        k, j = divmod(offset, self.J)
        return j, k

    def boundary_sides(self, j: int, k: int) -> set[Side]:
        """Which domain boundaries cell (j, k) touches; corners carry two."""
        sides = set()
        if j == 0:
            sides.add(Side.LEFT)
        if j == self.J - 1:
            sides.add(Side.RIGHT)
        if k == 0:
            sides.add(Side.BOTTOM)
        if k == self.K - 1:
            sides.add(Side.TOP)
        return sides


def stability_limit(grid: Grid, material: ThermalMaterial, theta_ref: float) -> float:
    """Largest non-amplifying forward-Euler step for the diffusion operator.

    Standard explicit bound 1 / (2*alpha*(1/dx1^2 + 1/dx2^2)) with the
    diffusivity alpha = lambda(theta_ref) / (rho*c(theta_ref)) taken at a
    caller-chosen reference temperature.  Advisory only: the solver does
    not enforce it, so deliberate divergence stays reproducible.
    """
    alpha = (material.thermal_conductivity(theta_ref)
             / material.volumetric_heat_coefficient(theta_ref))
    return 1.0 / (2.0 * alpha * (1.0 / grid.dx1**2 + 1.0 / grid.dx2**2))
