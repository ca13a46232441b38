"""Periodic difference/average matrices and the acoustic stabilization quadratic form.

Two-dimensional operators act on fields flattened in row-major ``[i, j]`` order, so
``np.kron(A, B)`` applies ``A`` along x and ``B`` along y.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import circulant

from gfsolver.core.constants import characteristic_length
from gfsolver.core.exceptions import ConfigurationError


@dataclass(frozen=True)
class OperatorSet:
    """One-dimensional periodic operators of size ``n`` and their 2D compositions."""

    n: int
    dx: float
    dy: float
    d_plus: np.ndarray
    d_minus: np.ndarray
    m_plus: np.ndarray
    m_minus: np.ndarray
    dbar_x: np.ndarray
    dbar_y: np.ndarray
    dbar_xx: np.ndarray
    dbar_yy: np.ndarray
    d_xy: np.ndarray

    def flatten(self, field: np.ndarray) -> np.ndarray:
        field = np.asarray(field, dtype=float)
        if field.shape != (self.n, self.n):
            raise ConfigurationError(
                f"Field shape {field.shape} does not match operator size ({self.n}, {self.n})"
            )
        return field.reshape(-1)


def build_operator_set(n: int, dx: float = 1.0, dy: float | None = None) -> OperatorSet:
    """
    Build the periodic operator matrices.

    ``D+`` is the forward difference (row 0 = (-1, 1, 0, ...)), ``M+`` the forward average,
    ``D- = -D+^T`` and ``M- = M+^T``. The compositions are
    ``Dx = (D+ M-) x (M+ M-) / dx``, ``Dxx = (D+ D-) x (M+ M-) / dx^2``, their y mirrors,
    and ``Dxy = (D+ M-) x (D+ M-) / (dx dy)``.

    Args:
        n: Cells per direction (at least 3)
        dx: Cell width
        dy: Cell height (defaults to dx)

    Raises:
        ConfigurationError: n below 3
    """
    if n < 3:
        raise ConfigurationError(f"Operator size must be at least 3, got {n}", key="n")
    dy = dx if dy is None else dy

    # scipy's circulant takes the first column: C[i, j] = c[(i - j) mod n]
    col = np.zeros(n)
    col[0], col[-1] = -1.0, 1.0
    d_plus = circulant(col)
    col = np.zeros(n)
    col[0], col[-1] = 0.5, 0.5
    m_plus = circulant(col)
    d_minus = -d_plus.T
    m_minus = m_plus.T

    dm = d_plus @ m_minus
    mm = m_plus @ m_minus
    dd = d_plus @ d_minus
    return OperatorSet(
        n=n,
        dx=dx,
        dy=dy,
        d_plus=d_plus,
        d_minus=d_minus,
        m_plus=m_plus,
        m_minus=m_minus,
        dbar_x=np.kron(dm, mm) / dx,
        dbar_y=np.kron(mm, dm) / dy,
        dbar_xx=np.kron(dd, mm) / dx**2,
        dbar_yy=np.kron(mm, dd) / dy**2,
        d_xy=np.kron(dm, dm) / (dx * dy),
    )


def stabilization_energy_form(
    ops: OperatorSet, u: np.ndarray, v: np.ndarray, p: np.ndarray
) -> float:
    """``p.Dxx p + p.Dyy p + u.Dxx u + u.Dxy v + v.Dxy u + v.Dyy v``; never positive."""
    u, v, p = ops.flatten(u), ops.flatten(v), ops.flatten(p)
    return float(
        p @ ops.dbar_xx @ p
        + p @ ops.dbar_yy @ p
        + u @ ops.dbar_xx @ u
        + u @ ops.d_xy @ v
        + v @ ops.d_xy @ u
        + v @ ops.dbar_yy @ v
    )


def stabilization_energy_squares(
    ops: OperatorSet, u: np.ndarray, v: np.ndarray, p: np.ndarray
) -> float:
    """The same form written as ``-|Ax p|^2 - |Ay p|^2 - |Ax u + Ay v|^2``."""
    u, v, p = ops.flatten(u), ops.flatten(v), ops.flatten(p)
    ax = np.kron(ops.d_minus, ops.m_minus) / ops.dx
    ay = np.kron(ops.m_minus, ops.d_minus) / ops.dy
    div = ax @ u + ay @ v
    return float(-(ax @ p) @ (ax @ p) - (ay @ p) @ (ay @ p) - div @ div)


def acoustic_gf_rate(
    ops: OperatorSet,
    u: np.ndarray,
    v: np.ndarray,
    p: np.ndarray,
    delta: float | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Global-flux rate of periodic linear acoustics in matrix form.

    Central part ``-(Dx p, Dy p, Dx u + Dy v)`` plus the corner dissipation
    ``delta/2 (Dxx u + Dxy v, Dxy u + Dyy v, (Dxx + Dyy) p)``.

    Returns:
        ``(du, dv, dp)`` as ``(n, n)`` arrays
    """
    delta = characteristic_length(ops.dx, ops.dy) if delta is None else delta
    fu, fv, fp = ops.flatten(u), ops.flatten(v), ops.flatten(p)
    half = 0.5 * delta
    du = -ops.dbar_x @ fp + half * (ops.dbar_xx @ fu + ops.d_xy @ fv)
    dv = -ops.dbar_y @ fp + half * (ops.d_xy @ fu + ops.dbar_yy @ fv)
    dp = -(ops.dbar_x @ fu + ops.dbar_y @ fv) + half * (ops.dbar_xx + ops.dbar_yy) @ fp
    shape = (ops.n, ops.n)
    return du.reshape(shape), dv.reshape(shape), dp.reshape(shape)
