"""Stationarity-preserving global-flux corner scheme.

The divergence ``f_x + g_y - s`` is written as the mixed derivative of the global flux
``script_F = F + G - R`` with ``F = int f dy``, ``G = int g dx`` and ``R = int int s dx dy``.
Cells exchange fluxes only through their four corners: each corner carries the average of
the four neighbouring global fluxes plus a streamline-upwind dissipation proportional to the
dual-cell residual ``Phi`` (the mixed second difference of ``script_F`` around the corner).

Two assemblies are provided. The recursive one sweeps trapezoidal quadratures over the
one-layer ring of cells and is used in production; the compact one evaluates the same
operator from local 3x3 stencils of point fluxes and serves as an independent check.
Array layout everywhere is ``[i, j, component]`` with ring index equal to the 1-based cell
index (ghost cells at 0 and n + 1); corner arrays are indexed by their lower-left cell.
"""

from dataclasses import dataclass, replace

import numpy as np

from gfsolver.core.constants import ALPHA_FLOOR, characteristic_length
from gfsolver.core.exceptions import BoundaryError
from gfsolver.core.mesh import CORNER_OFFSETS, CornerNormal, Grid, corner_normal
from gfsolver.models.enums import BoundaryKind, Direction, SourceQuadrature
from gfsolver.physics.systems import ShallowWater, SystemModel
from gfsolver.schemes.boundary import BoundarySpec, fill_gf_ghosts


@dataclass
class GlobalFluxField:
    """F, G and R on the ring of cells (interior plus one ghost layer)."""

    F: np.ndarray
    G: np.ndarray
    R: np.ndarray

    @property
    def script_f(self) -> np.ndarray:
        """The global flux F + G - R."""
        return self.F + self.G - self.R


@dataclass
class CornerResidual:
    """
    Dual-cell residual and corner-averaged linearization, for one corner or all corners.

    ``phi_r`` carries the minus sign of ``script_F = F + G - R`` so that
    ``phi = phi_f + phi_g + phi_r`` holds literally.
    """

    phi: np.ndarray
    phi_f: np.ndarray
    phi_g: np.ndarray
    phi_r: np.ndarray
    qbar: np.ndarray
    jx: np.ndarray
    jy: np.ndarray
    alpha: np.ndarray
    delta: float

    def at(self, i: int, j: int) -> "CornerResidual":
        """Residual of corner ``(i + 1/2, j + 1/2)``."""
        return replace(
            self,
            phi=self.phi[i, j],
            phi_f=self.phi_f[i, j],
            phi_g=self.phi_g[i, j],
            phi_r=self.phi_r[i, j],
            qbar=self.qbar[i, j],
            jx=self.jx[i, j],
            jy=self.jy[i, j],
            alpha=self.alpha[i, j],
        )


@dataclass
class PointFluxes:
    """Point values on the ring: fluxes, generic source and directional source increments."""

    f: np.ndarray
    g: np.ndarray
    s: np.ndarray
    incr_x: np.ndarray | None = None
    incr_y: np.ndarray | None = None


def swe_directional_source_fluxes(
    h: np.ndarray, b: np.ndarray, gravity: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Interface increments of the bathymetry source along x and y.

    The increment between cells ``i - 1`` and ``i`` is ``g (h_i + h_{i-1})/2 (b_i - b_{i-1})``;
    its cumulative sum along the direction is the source flux added to the momentum flux,
    which balances ``g h^2 / 2`` exactly for a flat free surface.

    Args:
        h: Water depth at cell centers, 2D ``[i, j]``
        b: Bathymetry at the same centers
        gravity: Gravitational acceleration

    Returns:
        ``(incr_x, incr_y)`` with the shape of ``h``; the first row (resp. column) is zero
    """
    incr_x = np.zeros_like(h, dtype=float)
    incr_y = np.zeros_like(h, dtype=float)
    incr_x[1:, :] = gravity * 0.5 * (h[1:, :] + h[:-1, :]) * (b[1:, :] - b[:-1, :])
    incr_y[:, 1:] = gravity * 0.5 * (h[:, 1:] + h[:, :-1]) * (b[:, 1:] - b[:, :-1])
    return incr_x, incr_y


def _point_fluxes(
    grid: Grid,
    system: SystemModel,
    ring: np.ndarray,
    bathymetry: np.ndarray | None,
    source: np.ndarray | None,
    quadrature: SourceQuadrature,
) -> PointFluxes:
    f = system.physical_flux(ring, Direction.X)
    g = system.physical_flux(ring, Direction.Y)
    s = np.zeros_like(ring)
    incr_x = incr_y = None

    if bathymetry is not None and isinstance(system, ShallowWater):
        b_ring = grid.halo(bathymetry, 1)
        if quadrature is SourceQuadrature.DIRECTIONAL:
            incr_x, incr_y = swe_directional_source_fluxes(ring[..., 0], b_ring, system.gravity)
        else:
            db_dx = np.gradient(b_ring, grid.dx, axis=0)
            db_dy = np.gradient(b_ring, grid.dy, axis=1)
            s += system.bathymetry_source(ring, db_dx, db_dy)
    if source is not None:
        s += grid.halo(source, 1)
    return PointFluxes(f=f, g=g, s=s, incr_x=incr_x, incr_y=incr_y)


def _global_fluxes_from_points(grid: Grid, pf: PointFluxes) -> GlobalFluxField:
    f = pf.f.copy()
    g = pf.g.copy()
    if pf.incr_x is not None and pf.incr_y is not None:
        f[..., 1] += np.cumsum(pf.incr_x, axis=0)
        g[..., 2] += np.cumsum(pf.incr_y, axis=1)

    dx, dy = grid.dx, grid.dy
    F = np.zeros_like(f)
    G = np.zeros_like(g)
    R = np.zeros_like(pf.s)
    F[:, 1:] = np.cumsum(0.5 * dy * (f[:, :-1] + f[:, 1:]), axis=1)
    G[1:, :] = np.cumsum(0.5 * dx * (g[:-1, :] + g[1:, :]), axis=0)
    s = pf.s
    quad = 0.25 * dx * dy * (s[:-1, :-1] + s[:-1, 1:] + s[1:, :-1] + s[1:, 1:])
    R[1:, 1:] = np.cumsum(np.cumsum(quad, axis=0), axis=1)
    return GlobalFluxField(F=F, G=G, R=R)


def compute_global_fluxes(
    grid: Grid,
    system: SystemModel,
    q: np.ndarray,
    bc: BoundarySpec,
    *,
    bathymetry: np.ndarray | None = None,
    source: np.ndarray | None = None,
    quadrature: SourceQuadrature = SourceQuadrature.DIRECTIONAL,
) -> GlobalFluxField:
    """
    Build F, G and R on the interior plus one ghost layer.

    The sweeps start from zero on the low ghost layer and run across the ghost layer at the
    far end with ghost-state point fluxes; transmissive sides are then overwritten by copies.

    Args:
        grid: Grid of the run
        system: PDE system
        q: Padded state field with ghosts filled
        bc: Boundary specification
        bathymetry: Padded bathymetry field (shallow water only)
        source: Padded pointwise source field, added to the system source
        quadrature: Directional (well-balanced) or integral bathymetry treatment

    Returns:
        GlobalFluxField on the ring ``(nx + 2, ny + 2, n_eq)``

    Raises:
        InadmissibleStateError: Any ring state is inadmissible
    """
    ring = grid.halo(q, 1)
    pf = _point_fluxes(grid, system, ring, bathymetry, source, quadrature)
    gf = _global_fluxes_from_points(grid, pf)
    return fill_gf_ghosts(grid, gf, bc)


def _mixed_difference(a: np.ndarray) -> np.ndarray:
    return a[1:, 1:] - a[:-1, 1:] - a[1:, :-1] + a[:-1, :-1]


def _corner_average(a: np.ndarray) -> np.ndarray:
    return 0.25 * (a[1:, 1:] + a[:-1, 1:] + a[1:, :-1] + a[:-1, :-1])


def _corner_linearization(
    system: SystemModel,
    ring: np.ndarray,
    alpha_floor: float,
    reference_speed: float | None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    qbar = _corner_average(ring)
    jx = system.flux_jacobian(qbar, Direction.X)
    jy = system.flux_jacobian(qbar, Direction.Y)
    if reference_speed is None:
        reference_speed = float(np.max(system.max_wave_speed(ring)))
    floor = alpha_floor * reference_speed
    alpha = 1.0 / np.maximum(system.max_wave_speed(qbar), floor)
    return qbar, jx, jy, alpha


def _residual_from_global_fluxes(
    grid: Grid,
    system: SystemModel,
    ring: np.ndarray,
    gf: GlobalFluxField,
    alpha_floor: float,
) -> CornerResidual:
    qbar, jx, jy, alpha = _corner_linearization(system, ring, alpha_floor, None)
    phi_f = _mixed_difference(gf.F)
    phi_g = _mixed_difference(gf.G)
    phi_r = -_mixed_difference(gf.R)
    return CornerResidual(
        phi=phi_f + phi_g + phi_r,
        phi_f=phi_f,
        phi_g=phi_g,
        phi_r=phi_r,
        qbar=qbar,
        jx=jx,
        jy=jy,
        alpha=alpha,
        delta=characteristic_length(grid.dx, grid.dy),
    )


def corner_residual_compact(
    grid: Grid,
    system: SystemModel,
    ring: np.ndarray,
    f: np.ndarray,
    g: np.ndarray,
    s: np.ndarray,
    corner: tuple[int, int] | None = None,
    *,
    incr_x: np.ndarray | None = None,
    incr_y: np.ndarray | None = None,
    alpha_floor: float = ALPHA_FLOOR,
    reference_speed: float | None = None,
) -> CornerResidual:
    """
    Corner residuals from local point fluxes, with no global quantity involved.

    ``phi_f = dy/2 (f[i+1,j+1] + f[i+1,j] - f[i,j+1] - f[i,j])``, ``phi_g`` likewise with
    ``dx/2`` and ``g`` differenced in j, ``phi_r = -dx dy/4 (sum of the four s)``. Shallow
    water source increments, if given, enter the flux differences they belong to.

    Args:
        grid: Grid of the run
        system: PDE system (for the corner Jacobians and wave speed)
        ring: States on the ring ``(nx + 2, ny + 2, n_eq)``
        f: x point fluxes on the ring
        g: y point fluxes on the ring
        s: Point sources on the ring
        corner: Lower-left ring index of a single corner, or None for all corners
        incr_x: Directional source increments along x (x-momentum)
        incr_y: Directional source increments along y (y-momentum)
        alpha_floor: Wave-speed floor relative to the reference speed
        reference_speed: Reference speed for the floor (defaults to the ring maximum)

    Returns:
        CornerResidual for all ``(nx + 1, ny + 1)`` corners or the requested one
    """
    dfx = f[1:, :] - f[:-1, :]
    dgy = g[:, 1:] - g[:, :-1]
    if incr_x is not None:
        dfx[..., 1] += incr_x[1:, :]
    if incr_y is not None:
        dgy[..., 2] += incr_y[:, 1:]

    phi_f = 0.5 * grid.dy * (dfx[:, 1:] + dfx[:, :-1])
    phi_g = 0.5 * grid.dx * (dgy[1:, :] + dgy[:-1, :])
    phi_r = -grid.dx * grid.dy * _corner_average(s)

    qbar, jx, jy, alpha = _corner_linearization(system, ring, alpha_floor, reference_speed)
    cr = CornerResidual(
        phi=phi_f + phi_g + phi_r,
        phi_f=phi_f,
        phi_g=phi_g,
        phi_r=phi_r,
        qbar=qbar,
        jx=jx,
        jy=jy,
        alpha=alpha,
        delta=characteristic_length(grid.dx, grid.dy),
    )
    return cr if corner is None else cr.at(*corner)


def supg_dissipation(cr: CornerResidual, normal: CornerNormal, grid: Grid) -> np.ndarray:
    """
    Streamline-upwind corner dissipation ``(alpha Delta / 4)(n_x Jx/dx + n_y Jy/dy) Phi``.

    Args:
        cr: Corner residual(s)
        normal: Orientation of the receiving cell
        grid: Grid (for dx, dy)

    Returns:
        Dissipation vector(s) with the shape of ``cr.phi``
    """
    coef = np.asarray(0.25 * cr.alpha * cr.delta)[..., None]
    jphi_x = np.einsum("...ab,...b->...a", cr.jx, cr.phi)
    jphi_y = np.einsum("...ab,...b->...a", cr.jy, cr.phi)
    return coef * (normal.nx * jphi_x / grid.dx + normal.ny * jphi_y / grid.dy)


def corner_flux(
    cr: CornerResidual,
    script_f_bar: np.ndarray,
    normal: CornerNormal,
    grid: Grid,
) -> np.ndarray:
    """
    Corner flux ``script_F_bar * nscalar + D`` seen from the cell with orientation ``normal``.

    Args:
        cr: Corner residual(s)
        script_f_bar: Average of the four global fluxes around the corner(s)
        normal: Orientation of the receiving cell
        grid: Grid (for dx, dy)

    Returns:
        Corner flux vector(s); the four orientations of one corner sum to zero
    """
    return script_f_bar * normal.nscalar + supg_dissipation(cr, normal, grid)


def _assemble_from_corners(
    grid: Grid, cr: CornerResidual, script_f_bar: np.ndarray
) -> np.ndarray:
    nx, ny = grid.nx, grid.ny
    total = np.zeros((nx, ny, cr.phi.shape[-1]))
    for ell, r in CORNER_OFFSETS:
        flux = corner_flux(cr, script_f_bar, corner_normal(ell, r), grid)
        # cell (i, j) is the (ell, r) neighbour of corner (i - ell + 1/2, j - r + 1/2)
        total += flux[1 - ell : nx + 1 - ell, 1 - r : ny + 1 - r]
    return -total / grid.cell_area


def gf_semidiscrete_update_recursive(
    grid: Grid,
    system: SystemModel,
    q: np.ndarray,
    bc: BoundarySpec,
    *,
    bathymetry: np.ndarray | None = None,
    source: np.ndarray | None = None,
    quadrature: SourceQuadrature = SourceQuadrature.DIRECTIONAL,
    alpha_floor: float = ALPHA_FLOOR,
) -> np.ndarray:
    """
    Semi-discrete rate ``dq/dt`` of the interior cells from recursively built global fluxes.

    Args:
        grid: Grid of the run
        system: PDE system
        q: Padded state field with ghosts filled
        bc: Boundary specification
        bathymetry: Padded bathymetry (shallow water)
        source: Padded pointwise source
        quadrature: Bathymetry treatment for shallow water
        alpha_floor: Wave-speed floor relative to the field's largest speed

    Returns:
        Rate array of shape ``(nx, ny, n_eq)``
    """
    gf = compute_global_fluxes(
        grid, system, q, bc, bathymetry=bathymetry, source=source, quadrature=quadrature
    )
    ring = grid.halo(q, 1)
    cr = _residual_from_global_fluxes(grid, system, ring, gf, alpha_floor)
    return _assemble_from_corners(grid, cr, _corner_average(gf.script_f))


def _average(a: np.ndarray, axis: int) -> np.ndarray:
    """Cell average bracket (a[-] + 2 a + a[+]) / 4, dropping the outer layer along axis."""
    lo = [slice(None)] * a.ndim
    mid = [slice(None)] * a.ndim
    hi = [slice(None)] * a.ndim
    lo[axis], mid[axis], hi[axis] = slice(0, -2), slice(1, -1), slice(2, None)
    return 0.25 * (a[tuple(lo)] + 2.0 * a[tuple(mid)] + a[tuple(hi)])


def _jump(a: np.ndarray, axis: int, incr: np.ndarray | None, component: int) -> np.ndarray:
    """Cell jump bracket (a[+] - a[-]) / 2; source increments enter the given component."""
    lo = [slice(None)] * a.ndim
    hi = [slice(None)] * a.ndim
    lo[axis], hi[axis] = slice(0, -2), slice(2, None)
    jump = a[tuple(hi)] - a[tuple(lo)]
    if incr is not None:
        mid = [slice(None)] * incr.ndim
        top = [slice(None)] * incr.ndim
        mid[axis], top[axis] = slice(1, -1), slice(2, None)
        jump[..., component] += incr[tuple(top)] + incr[tuple(mid)]
    return 0.5 * jump


def gf_semidiscrete_update_compact(
    grid: Grid,
    system: SystemModel,
    q: np.ndarray,
    bc: BoundarySpec,
    *,
    bathymetry: np.ndarray | None = None,
    source: np.ndarray | None = None,
    quadrature: SourceQuadrature = SourceQuadrature.DIRECTIONAL,
    alpha_floor: float = ALPHA_FLOOR,
) -> np.ndarray:
    """
    Same rate as the recursive assembly, from 3x3 stencils of point fluxes.

    Central part ``-<[[f]]_i>_j / dx - [[<g>_i]]_j / dy + <<s>_i>_j``, dissipation from
    the compact corner residuals. Transmissive sides act on global fluxes only and have no
    compact counterpart.

    Raises:
        BoundaryError: A side is transmissive
    """
    for name, side in bc.sides():
        if side.kind is BoundaryKind.TRANSMISSIVE:
            raise BoundaryError("Compact assembly has no transmissive global-flux rule", side=name)

    ring = grid.halo(q, 1)
    pf = _point_fluxes(grid, system, ring, bathymetry, source, quadrature)

    # [[<g>_i]]_j is evaluated as <[[g]]_j>_i so the y increments enter the jump directly
    central = (
        -_average(_jump(pf.f, 0, pf.incr_x, 1), 1) / grid.dx
        - _average(_jump(pf.g, 1, pf.incr_y, 2), 0) / grid.dy
        + _average(_average(pf.s, 0), 1)
    )

    cr = corner_residual_compact(
        grid,
        system,
        ring,
        pf.f,
        pf.g,
        pf.s,
        incr_x=pf.incr_x,
        incr_y=pf.incr_y,
        alpha_floor=alpha_floor,
    )
    # the central part is carried by the brackets, so the corner average is not needed
    zero_bar = np.zeros_like(cr.phi)
    return central + _assemble_from_corners(grid, cr, zero_bar)
