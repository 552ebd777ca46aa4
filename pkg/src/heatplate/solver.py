"""Semi-discrete finite-volume right-hand side and forward-Euler stepping.

Interior cells use the five-point flux balance with face conductivities
evaluated at the mean of the two adjacent cell temperatures.  Boundary faces
contribute their prescribed flux divided by the spacing normal to the face:
substituting the ghost-cell temperature into the interior stencil cancels
the boundary-face conductivity exactly, so no boundary lambda is evaluated.
The underside carries the actuator flux; left, right and topside emit to the
ambient.  Each cell's rate is the flux balance divided by rho*c(theta_cell).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .devices import ActuatorBank
from .grid import Grid
from .material import SurfaceExchange, ThermalMaterial


@dataclass(frozen=True, eq=False)
class BoundaryFluxes:
    """Prescribed fluxes on the four boundaries, W/m^2, positive inward."""

    underside: np.ndarray = field(repr=False)  # (J,) actuator-induced
    left: np.ndarray = field(repr=False)       # (K,)
    right: np.ndarray = field(repr=False)      # (K,)
    top: np.ndarray = field(repr=False)        # (J,)


def boundary_fluxes(field_values, grid: Grid, exchange: SurfaceExchange,
                    actuators: ActuatorBank, u, *,
                    underside_emission: bool = False) -> BoundaryFluxes:
    """Evaluate all boundary fluxes for the current field and inputs.

    Emission is evaluated at the boundary cell's center temperature.  The
    underside receives the induced actuator flux only, unless
    `underside_emission` adds the emission term there as well.
    """
    T = np.asarray(field_values).reshape(grid.K, grid.J)
    phi_in = actuators.induced_flux(u)
    if underside_emission:
        phi_in = phi_in + exchange.emitted_flux(T[0, :])
    return BoundaryFluxes(
        underside=phi_in,
        left=exchange.emitted_flux(T[:, 0]),
        right=exchange.emitted_flux(T[:, -1]),
        top=exchange.emitted_flux(T[-1, :]),
    )


def assemble_rhs(field_values, grid: Grid, material: ThermalMaterial,
                 fluxes: BoundaryFluxes) -> np.ndarray:
    """Temperature rates dtheta/dt for every cell, K/s, in flat order.

    Per cell the flux balance N collects, per axis, lambda_face *
    (theta_neighbor - theta_cell) / dx^2 over interior faces plus phi/dx
    over boundary faces; corner cells get one boundary term per axis.
    The rate is N / (rho*c(theta_cell)).
    """
    T = np.asarray(field_values).reshape(grid.K, grid.J)
    dx1, dx2 = grid.dx1, grid.dx2

    # Face fluxes along x1; each one enters both adjacent cells with
    # opposite signs, which makes the interior sum telescope exactly.
    f1 = material.face_conductivity(T[:, :-1], T[:, 1:]) * (T[:, 1:] - T[:, :-1])
    n1 = np.zeros_like(T)
    n1[:, :-1] += f1
    n1[:, 1:] -= f1
    n1 /= dx1**2

    f2 = material.face_conductivity(T[:-1, :], T[1:, :]) * (T[1:, :] - T[:-1, :])
    n2 = np.zeros_like(T)
    n2[:-1, :] += f2
    n2[1:, :] -= f2
    n2 /= dx2**2

    balance = n1 + n2
    balance[:, 0] += fluxes.left / dx1
    balance[:, -1] += fluxes.right / dx1
    balance[0, :] += fluxes.underside / dx2
    balance[-1, :] += fluxes.top / dx2

    rate = balance / material.volumetric_heat_coefficient(T)
    return rate.reshape(-1)


def step_forward_euler(field_values, rhs, dt: float) -> np.ndarray:
    """One explicit Euler step: theta + dt * dtheta/dt, elementwise."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    return field_values + dt * rhs


def first_invalid_cell(field_values) -> int | None:
    """Flat index of the first non-finite or negative entry, else None.

    Either condition marks a diverged explicit run; absolute temperatures
    are non-negative by contract.
    """
    bad = ~np.isfinite(field_values) | (field_values < 0)
    if bad.any():
        return int(np.argmax(bad))
    return None


def weighted_rhs_sum(field_values, rhs, grid: Grid,
                     material: ThermalMaterial) -> float:
    """Total heating power sum(rho*c(theta) * rate * cell area), W per depth.

    Interior face fluxes telescope out of this sum, leaving the boundary
    total dx2*sum(left + right) + dx1*sum(top + underside); tests use the
    identity as the conservation oracle.  Terms are formed in flat-index
    order and reduced with numpy's deterministic pairwise summation.
    """
    rho_c = material.volumetric_heat_coefficient(np.asarray(field_values))
    return float(np.sum(rho_c * rhs) * grid.dx1 * grid.dx2)
