"""Boundary actuators and sensors with spatially characterized weights.

Heaters act on the underside, sensors read the topside.  Each device owns a
half-open interval [lo, hi) of the boundary coordinate and a bump-shaped
weight profile m * exp(-|M*(x - center)|^nu) that vanishes outside its
interval.  With m = 1 and M = 0 the profile degenerates to the indicator
function of the interval.  Weights are evaluated once at cell centers and
cached; a device bank is immutable afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid


@dataclass(frozen=True)
class BoundaryPartition:
    """Half-open interval [lo, hi) along the boundary coordinate, meters.

    Half-open so a cell center sitting on a shared edge belongs to exactly
    one device.
    """

    lo: float
    hi: float

    def __post_init__(self):
        if not 0 <= self.lo < self.hi:
            raise ValueError(f"need 0 <= lo < hi, got [{self.lo}, {self.hi})")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x):
        """Membership test, elementwise over arrays."""
        return (x >= self.lo) & (x < self.hi)


@dataclass(frozen=True)
class Characterization:
    """Weight profile m * exp(-|M*(x - center)|^nu) on a device's interval.

    m is the peak magnitude in [0, 1], M a shape scale in 1/m, nu the
    exponent.  M = 0 with nu > 0 gives the flat indicator profile; the
    combination nu = 0 and M = 0 is rejected because 0**0 is ambiguous.
    """

    m: float
    M: float
    nu: float
    center: float

    def __post_init__(self):
        if not 0 <= self.m <= 1:
            raise ValueError(f"m must be in [0, 1], got {self.m}")
        if self.M < 0:
            raise ValueError(f"M must be >= 0, got {self.M}")
        if self.nu < 0:
            raise ValueError(f"nu must be >= 0, got {self.nu}")
        if self.nu == 0 and self.M == 0:
            raise ValueError("nu = 0 together with M = 0 is ambiguous (0**0)")

    def value(self, partition: BoundaryPartition, x):
        """Profile value at x: the bump inside the partition, 0 outside."""
        x = np.asarray(x, dtype=float)
        bump = self.m * np.exp(-np.abs(self.M * (x - self.center)) ** self.nu)
        return np.where(partition.contains(x), bump, 0.0)


def uniform_partitions(length: float, count: int) -> list[BoundaryPartition]:
    """Split (0, length) into `count` equal half-open intervals."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    edges = np.linspace(0.0, length, count + 1)
    return [BoundaryPartition(edges[n], edges[n + 1]) for n in range(count)]


def _check_layout(partitions, length):
    """Partitions must tile (0, length): pairwise disjoint, no gaps."""
    order = sorted(range(len(partitions)), key=lambda n: partitions[n].lo)
    tol = 1e-9 * length
    prev_hi = 0.0
    for n in order:
        p = partitions[n]
        if p.lo < prev_hi - tol:
            raise ValueError(f"partitions overlap near x = {p.lo}")
        if p.lo > prev_hi + tol:
            raise ValueError(f"partitions leave a gap near x = {prev_hi}")
        prev_hi = p.hi
    if abs(prev_hi - length) > tol:
        raise ValueError(f"partitions do not cover (0, {length})")


def _weight_table(grid, partitions, characterizations, kind):
    if len(partitions) != len(characterizations):
        raise ValueError("need one characterization per partition")
    _check_layout(partitions, grid.geometry.length)
    x = grid.x1_centers()
    table = np.empty((len(partitions), grid.J))
    for n, (part, char) in enumerate(zip(partitions, characterizations)):
        table[n] = char.value(part, x)
        if not part.contains(x).any():
            raise ValueError(f"{kind} {n} covers no cell center")
    return table


@dataclass(frozen=True, eq=False)
class ActuatorBank:
    """Heating elements on the underside with precomputed per-cell weights."""

    partitions: tuple[BoundaryPartition, ...]
    characterizations: tuple[Characterization, ...]
    weight_table: np.ndarray = field(repr=False)  # (count, J)

    @classmethod
    def build(cls, grid: Grid, partitions, characterizations) -> "ActuatorBank":
        table = _weight_table(grid, partitions, characterizations, "actuator")
        return cls(tuple(partitions), tuple(characterizations), table)

    @property
    def count(self) -> int:
        return len(self.partitions)

    def induced_flux(self, u) -> np.ndarray:
        """Heat flux onto each underside cell for input powers u, W/m^2.

        Entry j is sum_n weight[n, j] * u[n]; disjoint partitions make at
        most one term nonzero per cell.
        """
        u = np.asarray(u, dtype=float)
        if u.shape != (self.count,):
            raise ValueError(f"expected {self.count} inputs, got shape {u.shape}")
        return self.weight_table.T @ u


@dataclass(frozen=True, eq=False)
class SensorBank:
    """Topside sensors: weighted averages of the topside temperature row."""

    partitions: tuple[BoundaryPartition, ...]
    characterizations: tuple[Characterization, ...]
    weight_table: np.ndarray = field(repr=False)  # (count, J)
    mass: np.ndarray = field(repr=False)          # (count,) = sum_j g*dx1

    @classmethod
    def build(cls, grid: Grid, partitions, characterizations) -> "SensorBank":
        table = _weight_table(grid, partitions, characterizations, "sensor")
        mass = table.sum(axis=1) * grid.dx1  # midpoint quadrature of int g dx
        if not (mass > 0).all():
            bad = int(np.argmin(mass))
            raise ValueError(f"sensor {bad} has zero quadrature mass")
        return cls(tuple(partitions), tuple(characterizations), table, mass)

    @property
    def count(self) -> int:
        return len(self.partitions)

    def measure(self, field_values, grid: Grid) -> np.ndarray:
        """Sensor outputs y for a temperature field, Kelvin.

        y[n] = sum_j g_n(x_j)*theta(x_j, topside)*dx1 / mass[n], a convex
        combination of the topside row, so each reading lies between that
        row's min and max.
        """
        field_values = np.asarray(field_values)
        if field_values.shape != (grid.n_cells,):
            raise ValueError(
                f"expected a field of {grid.n_cells} cells, got {field_values.shape}"
            )
        top_row = field_values[(grid.K - 1) * grid.J:]
        return (self.weight_table @ top_row) * grid.dx1 / self.mass
