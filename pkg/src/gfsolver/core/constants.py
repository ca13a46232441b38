"""Physical defaults, numerical constants and published reference values."""

import math

# Physics defaults
GRAVITY = 9.812
GAMMA = 1.4

# Numerics
DEFAULT_CFL = 0.45
DEFAULT_THETA = 1.3
ALPHA_FLOOR = 1e-12
STEADY_TOL_MACHINE = 1e-13

# Largest Mach number of the reference isentropic vortex (epsilon = 5)
EULER_VORTEX_BASE_MACH = 0.7

# Conservative component names per system, in storage order
COMPONENT_NAMES: dict[str, tuple[str, ...]] = {
    "acoustics": ("u", "v", "p"),
    "euler": ("rho", "rhou", "rhov", "rhoE"),
    "shallow_water": ("h", "hu", "hv"),
}


def characteristic_length(dx: float, dy: float) -> float:
    """
    Characteristic mesh size used to scale the corner dissipation.

    Reduces to the cell size on square cells.

    Args:
        dx: Cell width
        dy: Cell height

    Returns:
        sqrt((dx^2 + dy^2) / 2)
    """
    return math.sqrt(0.5 * (dx * dx + dy * dy))


# Gravity under which the acoustic vortex amplitude is normalized
VORTEX_NORMALIZING_GRAVITY = 9.81
ACOUSTIC_VORTEX_DIP = 0.01


def acoustic_vortex_amplitude(r0: float, dip: float = ACOUSTIC_VORTEX_DIP) -> float:
    """
    Amplitude gamma of the profile ``f(rho) = gamma (1 + cos(pi rho))^2``.

    The same velocity field is a stationary shallow-water vortex whose depth at the
    center lies ``dip`` below the far field under gravity 9.81:
    ``g dip = gamma^2 r0^2 int_0^1 s (1 + cos(pi s))^4 ds``, and the integral equals
    ``(315 pi^2 - 2048) / (144 pi^2)``. A dip of 0.1 gives
    ``12 pi sqrt(0.981) / (r0 sqrt(315 pi^2 - 2048))``.

    Args:
        r0: Vortex radius
        dip: Depth drop of the equivalent shallow-water vortex

    Returns:
        The amplitude gamma
    """
    scale = math.sqrt(VORTEX_NORMALIZING_GRAVITY * dip)
    return 12.0 * math.pi * scale / (r0 * math.sqrt(315.0 * math.pi**2 - 2048.0))


# Published L2 errors used as sanity anchors in acceptance runs (component, mesh) -> error
REFERENCE_ERRORS: dict[str, dict[tuple[str, int], float]] = {
    "acoustic_vortex/gf": {("u", 20): 3.95e-4, ("u", 40): 9.17e-5, ("u", 80): 2.26e-5},
    "acoustic_vortex/fv1": {("u", 20): 6.51e-2, ("u", 40): 5.42e-2, ("u", 80): 3.97e-2},
    "euler_vortex/gf": {("rho", 40): 5.95e-3},
    "swe_potential_flow/gf": {("h", 40): 2.69e-5},
}
