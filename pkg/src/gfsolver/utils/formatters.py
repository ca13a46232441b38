"""Output formatters: config hashes, field CSV files, JSON reports and console lines."""

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from gfsolver.core.exceptions import GFSolverError
from gfsolver.core.mesh import Grid
from gfsolver.models.schemas import ConvergenceReport, RunSummary


def config_hash(config: dict[str, Any]) -> str:
    """First 12 hex digits of the SHA-256 of the sorted JSON form of ``config``."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


def field_hash(q: np.ndarray) -> str:
    """Short content hash of a field (bit-exact)."""
    return hashlib.sha256(np.ascontiguousarray(q, dtype=float).tobytes()).hexdigest()[:12]


def write_field_csv(path: Path, grid: Grid, q: np.ndarray, components: tuple[str, ...]) -> Path:
    """
    Write interior cells as CSV with columns ``x, y`` and the components by name.

    Rows run with x fastest and y outermost. Values carry 17 significant digits so
    identical fields give identical files.

    Args:
        path: Target file
        grid: Grid of the field
        q: Interior field ``(nx, ny, n_eq)``
        components: Component names in storage order

    Returns:
        The written path
    """
    x, y = grid.cell_centers()
    # transpose to [j, i] so that ravel() walks x fastest
    columns = [x.T.ravel(), y.T.ravel()]
    columns.extend(q[..., k].T.ravel() for k in range(q.shape[-1]))
    header = ",".join(("x", "y", *components))
    np.savetxt(
        path, np.column_stack(columns), delimiter=",", header=header, comments="", fmt="%.17g"
    )
    return path


def read_field_csv(path: Path) -> tuple[list[str], np.ndarray]:
    """Read a field CSV back as ``(header names, rows)``."""
    with open(path, encoding="utf-8") as fh:
        names = fh.readline().strip().split(",")
    return names, np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


def write_json(path: Path, data: dict[str, Any]) -> Path:
    text = json.dumps(data, indent=2, sort_keys=True, default=str)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def write_convergence_csv(path: Path, report: ConvergenceReport) -> Path:
    """Component-major convergence table, one row per (component, mesh)."""
    lines = ["component,N,L2,L2_order,Linf,Linf_order"]
    for row in report.rows():
        lines.append(
            ",".join(
                [
                    row["component"],
                    str(row["N"]),
                    format_number(row["L2"]),
                    format_order(row["L2_order"]),
                    format_number(row["Linf"]),
                    format_order(row["Linf_order"]),
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def format_number(value: float) -> str:
    return f"{value:.6e}"


def format_order(order: float | None) -> str:
    """Observed order with two decimals, empty for the first mesh or zero errors."""
    return "" if order is None else f"{order:.2f}"


def format_summary_text(summary: RunSummary) -> str:
    """
    One-screen text summary of a run for the console.

    Args:
        summary: Run summary

    Returns:
        Multi-line string
    """
    lines = [
        f"{summary.case} / {summary.scheme.value}  {summary.nx}x{summary.ny}  "
        f"[{summary.config_hash}]",
        f"  t = {summary.final_time:.6g} after {summary.steps} steps ({summary.stop_reason.value})",
        f"  steady residual {summary.steady_residual:.3e}  "
        f"(rate vs first step {summary.residual_drop:.3e})",
    ]
    drift = ", ".join(f"{k}={v:.2e}" for k, v in summary.conservation_drift.items())
    lines.append(f"  conservation drift {drift}")
    for err in summary.errors or []:
        lines.append(f"  {err.component:>5}: L2 {err.l2:.3e}  Linf {err.linf:.3e}")
    if summary.achieved_mach is not None:
        lines.append(f"  max Mach {summary.achieved_mach:.3e}")
    if summary.field_file:
        lines.append(f"  field -> {summary.field_file}")
    return "\n".join(lines)


def format_convergence_text(report: ConvergenceReport) -> str:
    """Aligned console table in the component-major layout."""
    lines = [f"{report.case} / {report.scheme.value}  [{report.config_hash}]"]
    lines.append(f"{'comp':>6} {'N':>5} {'L2':>13} {'order':>6} {'Linf':>13} {'order':>6}")
    for row in report.rows():
        lines.append(
            f"{row['component']:>6} {row['N']:>5} {format_number(row['L2']):>13} "
            f"{format_order(row['L2_order']):>6} {format_number(row['Linf']):>13} "
            f"{format_order(row['Linf_order']):>6}"
        )
    return "\n".join(lines)


def format_error(error: GFSolverError) -> str:
    """JSON form of an error for stderr."""
    return json.dumps(error.to_dict(), ensure_ascii=False, default=str)
