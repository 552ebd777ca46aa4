"""Result serialization: CSV tables and a binary PGM heatmap.

CSV numbers use Python's repr, the shortest decimal form that round-trips
bit-exactly.  Files use LF line endings and UTF-8.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .grid import Grid
from .simulation import SimulationResult, averaged_signals


def write_field_csv(field_values, grid: Grid) -> str:
    """Field table "x1,x2,theta", one row per cell in flat-index order."""
    field_values = np.asarray(field_values)
    x1 = grid.x1_centers().tolist()
    x2 = grid.x2_centers().tolist()
    lines = ["x1,x2,theta"]
    for k in range(grid.K):
        row = field_values[k * grid.J:(k + 1) * grid.J].tolist()
        for j in range(grid.J):
            lines.append(f"{x1[j]!r},{x2[k]!r},{row[j]!r}")
    return "\n".join(lines) + "\n"


def read_field_csv(text: str) -> np.ndarray:
    """Theta column of a field table, in file order (inverse of the writer)."""
    lines = text.strip().split("\n")
    return np.array([float(line.split(",")[2]) for line in lines[1:]])


def write_signals_csv(result: SimulationResult) -> str:
    """Signal log with per-channel inputs/outputs plus channel averages.

    Header "t,u_0..,y_0..,u_avg,y_avg"; one row per logged time.
    """
    times, u_mean, y_mean = averaged_signals(result)
    n_u = result.inputs.shape[1]
    n_y = result.outputs.shape[1]
    header = ["t"]
    header += [f"u_{n}" for n in range(n_u)]
    header += [f"y_{n}" for n in range(n_y)]
    header += ["u_avg", "y_avg"]
    lines = [",".join(header)]
    for i, t in enumerate(times):
        cells = [repr(float(t))]
        cells += [repr(float(v)) for v in result.inputs[i]]
        cells += [repr(float(v)) for v in result.outputs[i]]
        cells += [repr(float(u_mean[i])), repr(float(y_mean[i]))]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_heatmap(field_values, grid: Grid, theta_lo: float | None = None,
                   theta_hi: float | None = None) -> bytes:
    """Binary PGM (P5, maxval 255) of the field, J columns by K rows.

    The topside row k = K-1 comes first so the image sits the way the
    plate does.  Pixels map theta linearly from [theta_lo, theta_hi] onto
    0..255, clamped; omitted bounds use the field's min/max, and a
    degenerate auto range (uniform field) renders mid-gray.
    """
    field_values = np.asarray(field_values, dtype=float)
    image = field_values.reshape(grid.K, grid.J)[::-1]
    if theta_lo is None and theta_hi is None:
        theta_lo = float(image.min())
        theta_hi = float(image.max())
    elif theta_lo is None or theta_hi is None or theta_lo >= theta_hi:
        raise ValueError("need theta_lo < theta_hi, or neither for auto-range")
    if theta_hi > theta_lo:
        scaled = np.clip((image - theta_lo) / (theta_hi - theta_lo), 0.0, 1.0)
        pixels = np.rint(255 * scaled).astype(np.uint8)
    else:
        # uniform field under auto-range
        pixels = np.full_like(image, 128, dtype=np.uint8)
    header = f"P5\n{grid.J} {grid.K}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def write_run_outputs(result: SimulationResult, out_dir, *,
                      render: bool = False) -> list[Path]:
    """Write final_field.csv, snapshot_NNNN.csv, signals.csv and optionally
    heatmap.pgm into out_dir; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = result.config.grid
    written = []

    def write_text(name, text):
        path = out / name
        path.write_text(text, encoding="utf-8", newline="\n")
        written.append(path)

    write_text("final_field.csv", write_field_csv(result.final_field, grid))
    for i, (_, snapshot) in enumerate(result.snapshots):
        write_text(f"snapshot_{i:04d}.csv", write_field_csv(snapshot, grid))
    if len(result.signal_times):
        write_text("signals.csv", write_signals_csv(result))
    if render:
        path = out / "heatmap.pgm"
        path.write_bytes(render_heatmap(result.final_field, grid))
        written.append(path)
    return written
