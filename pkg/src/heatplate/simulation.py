"""Closed-loop scenario runner: measure, control, flux, step, log.

Inputs are sample-and-hold: at the start of each step the controller reads
the current field and the resulting heater powers are held constant over
the step.  Runs are fully deterministic; two runs of the same configuration
produce bit-identical results.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .control import ControllerConfig, control_error, proportional_law
from .devices import ActuatorBank, Characterization, SensorBank, uniform_partitions
from .grid import Grid, PlateGeometry, stability_limit
from .material import SurfaceExchange, ThermalMaterial
from .solver import (assemble_rhs, boundary_fluxes, first_invalid_cell,
                     step_forward_euler)


@dataclass(frozen=True)
class InitialCondition:
    """Base temperature plus a separable cosine perturbation.

    theta(x) = base + a0 * cos(2*pi*a1*x1/L) * cos(2*pi*a2*x2/H); a1 and a2
    count the oscillations across the plate length and height.
    """

    base: float = 300.0
    a0: float = 3.0
    a1: float = 10.0
    a2: float = 5.0

    def __post_init__(self):
        if self.base < 0:
            raise ValueError(f"base must be >= 0, got {self.base}")
        if self.base - abs(self.a0) < 0:
            raise ValueError("base - |a0| must be >= 0 to keep the field non-negative")


@dataclass(frozen=True)
class DeviceSpec:
    """Count plus shared profile parameters for one device bank.

    Devices split the boundary into equal intervals, each profile centered
    on its interval midpoint.
    """

    count: int
    m: float = 1.0
    M: float = 0.0
    nu: float = 4.0

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.nu == 0 and self.M == 0:
            raise ValueError("nu = 0 together with M = 0 is ambiguous (0**0)")


@dataclass(frozen=True)
class SimulationConfig:
    """Everything needed to reproduce one closed-loop run."""

    grid: Grid
    material: ThermalMaterial
    exchange: SurfaceExchange
    actuators: DeviceSpec
    sensors: DeviceSpec
    controller: ControllerConfig
    initial: InitialCondition
    dt: float
    t_final: float
    snapshot_stride: int = 1000
    signal_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.t_final > 0:
            raise ValueError(f"t_final must be > 0, got {self.t_final}")
        if self.snapshot_stride < 1 or self.signal_stride < 1:
            raise ValueError("strides must be >= 1")
        if self.controller.channels != self.actuators.count:
            raise ValueError(
                f"controller has {self.controller.channels} channels but "
                f"{self.actuators.count} actuators"
            )
        if self.sensors.count != self.actuators.count:
            raise ValueError(
                f"channel pairing needs equal counts, got {self.sensors.count} "
                f"sensors and {self.actuators.count} actuators"
            )

    def n_steps(self) -> int:
        """Number of Euler steps; t_final should be a multiple of dt."""
        return round(self.t_final / self.dt)


@dataclass(eq=False)
class SimulationResult:
    """Final field, snapshots and the logged input/output signals.

    `signal_times` rows align with `inputs` and `outputs`.  On divergence
    the logs are partial, `final_field` holds the offending field and
    `divergence_step`/`divergence_cell` locate the first bad entry.
    """

    config: SimulationConfig
    final_field: np.ndarray
    snapshots: list[tuple[float, np.ndarray]]
    signal_times: np.ndarray
    inputs: np.ndarray   # (n_logged, N_u)
    outputs: np.ndarray  # (n_logged, N_y)
    diverged: bool = False
    divergence_step: int | None = None
    divergence_cell: int | None = None


@dataclass(frozen=True)
class TopsideStatistics:
    mean: float
    peak_to_peak: float
    dominant_mode: int


def initial_field(grid: Grid, ic: InitialCondition) -> np.ndarray:
    """Evaluate the initial condition at every cell center, flat order."""
    length = grid.geometry.length
    height = grid.geometry.height
    mode1 = np.cos(2 * np.pi * ic.a1 * grid.x1_centers() / length)
    mode2 = np.cos(2 * np.pi * ic.a2 * grid.x2_centers() / height)
    return (ic.base + ic.a0 * np.outer(mode2, mode1)).reshape(-1)


def build_banks(cfg: SimulationConfig) -> tuple[ActuatorBank, SensorBank]:
    """Construct both device banks from their specs on the config's grid."""
    length = cfg.grid.geometry.length

    def devices(spec):
        parts = uniform_partitions(length, spec.count)
        chars = [Characterization(spec.m, spec.M, spec.nu, p.midpoint)
                 for p in parts]
        return parts, chars

    actuators = ActuatorBank.build(cfg.grid, *devices(cfg.actuators))
    sensors = SensorBank.build(cfg.grid, *devices(cfg.sensors))
    return actuators, sensors


def run_simulation(cfg: SimulationConfig) -> SimulationResult:
    """Run the closed loop for n_steps = round(t_final/dt) Euler steps.

    Per step: measure the current field, apply the proportional law,
    assemble boundary fluxes and the finite-volume rates, then step.
    Signals are logged every `signal_stride` steps and once more for the
    final field; snapshots likewise every `snapshot_stride` steps.  A
    non-finite or negative temperature halts the loop and returns a result
    flagged as diverged with the logs collected so far.
    """
    grid, material, exchange = cfg.grid, cfg.material, cfg.exchange
    actuators, sensors = build_banks(cfg)

    limit = stability_limit(grid, material, cfg.initial.base)
    if cfg.dt > limit:
        warnings.warn(
            f"dt = {cfg.dt} exceeds the explicit stability estimate "
            f"{limit:.3e} s at {cfg.initial.base} K; expect divergence",
            RuntimeWarning,
            stacklevel=2,
        )

    theta = initial_field(grid, cfg.initial)
    n_steps = cfg.n_steps()

    times, inputs, outputs = [], [], []
    snapshots: list[tuple[float, np.ndarray]] = []

    def log_signals(step, y, u):
        times.append(step * cfg.dt)
        outputs.append(y)
        inputs.append(u)

    for step in range(n_steps):
        y = sensors.measure(theta, grid)
        u = proportional_law(cfg.controller, control_error(cfg.controller, y))
        if step % cfg.signal_stride == 0:
            log_signals(step, y, u)
        if step % cfg.snapshot_stride == 0:
            snapshots.append((step * cfg.dt, theta.copy()))

        fluxes = boundary_fluxes(theta, grid, exchange, actuators, u)
        rhs = assemble_rhs(theta, grid, material, fluxes)
        theta = step_forward_euler(theta, rhs, cfg.dt)

        bad = first_invalid_cell(theta)
        if bad is not None:
            return SimulationResult(
                config=cfg,
                final_field=theta,
                snapshots=snapshots,
                signal_times=np.array(times),
                inputs=np.array(inputs),
                outputs=np.array(outputs),
                diverged=True,
                divergence_step=step,
                divergence_cell=bad,
            )

    # Closing sample: the readings and the inputs the controller would
    # command from the final field.
    y = sensors.measure(theta, grid)
    u = proportional_law(cfg.controller, control_error(cfg.controller, y))
    log_signals(n_steps, y, u)
    snapshots.append((n_steps * cfg.dt, theta.copy()))

    return SimulationResult(
        config=cfg,
        final_field=theta,
        snapshots=snapshots,
        signal_times=np.array(times),
        inputs=np.array(inputs),
        outputs=np.array(outputs),
    )


def scenario_preset(which: int) -> SimulationConfig:
    """The two reference scenarios: 1 = nominal actuators, 2 = realistic.

    Both share the 0.30 m x 0.01 m plate on a 100 x 40 grid, steel-like
    material data, five heater/sensor pairs on uniform partitions, gains
    of 1e4 toward 400 K, dt = 1e-3 s and a 10 s horizon.  They differ only
    in the actuators' shape scale: 0 (flat) versus 30 1/m (bump).
    """
    if which not in (1, 2):
        raise ValueError(f"scenario must be 1 or 2, got {which}")
    return SimulationConfig(
        grid=Grid(PlateGeometry(length=0.30, height=0.01), J=100, K=40),
        material=ThermalMaterial(rho=7800.0, c0=330.0, c1=0.4,
                                 lambda0=10.0, lambda1=0.1),
        exchange=SurfaceExchange(h=10.0, emissivity=0.6, theta_amb=300.0),
        actuators=DeviceSpec(count=5, m=1.0, M=0.0 if which == 1 else 30.0, nu=4.0),
        sensors=DeviceSpec(count=5, m=1.0, M=10.0, nu=4.0),
        controller=ControllerConfig(kp=(1e4,) * 5, y_ref=400.0),
        initial=InitialCondition(base=300.0, a0=3.0, a1=10.0, a2=5.0),
        dt=1e-3,
        t_final=10.0,
        snapshot_stride=1000,
        signal_stride=1,
    )


def averaged_signals(result: SimulationResult):
    """Per-time channel means (times, u_mean, y_mean) of the signal log."""
    if len(result.signal_times) == 0:
        raise ValueError("empty signal log")
    return (result.signal_times,
            result.inputs.mean(axis=1),
            result.outputs.mean(axis=1))


def topside_statistics(result: SimulationResult) -> TopsideStatistics:
    """Mean, peak-to-peak and dominant spatial mode of the final topside row.

    The dominant mode is the index (cycles per plate length) of the
    largest-magnitude nonzero frequency in the DFT of the mean-removed
    row; ties break toward the lower index.
    """
    grid = result.config.grid
    row = result.final_field[(grid.K - 1) * grid.J:]
    mean = float(row.mean())
    spectrum = np.abs(np.fft.rfft(row - mean))
    # argmax returns the first maximizer, which is the lower index on ties
    dominant = 1 + int(np.argmax(spectrum[1:]))
    return TopsideStatistics(
        mean=mean,
        peak_to_peak=float(row.max() - row.min()),
        dominant_mode=dominant,
    )


def with_overrides(cfg: SimulationConfig, *, grid: Grid | None = None,
                   dt: float | None = None,
                   t_final: float | None = None) -> SimulationConfig:
    """Copy a config with selected fields replaced (CLI override support)."""
    changes = {}
    if grid is not None:
        changes["grid"] = grid
    if dt is not None:
        changes["dt"] = dt
    if t_final is not None:
        changes["t_final"] = t_final
    return replace(cfg, **changes) if changes else cfg
