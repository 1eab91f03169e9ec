"""Independent reference computations used by the self-checks.

Each one reaches the same quantity by a different route than the production
code: adaptive quadrature instead of series, Lorentz-model distances instead
of closed-form heights.
"""

import math

from scipy.integrate import quad

from .lorentz import plane_distance
from .simplex import build_simplex, p_to_s


def _xlogx(x):
    return x * math.log(x) if x > 0 else 0.0


def _log2sin_period(b):
    """int_0^b log(2 sin t) dt for 0 <= b <= pi.

    The endpoint singularities log t + log(pi - t) are integrated in closed
    form; the smooth remainder goes to adaptive quadrature.
    """
    if b <= 0.0:
        return 0.0
    sing = (_xlogx(b) - b) + (_xlogx(math.pi) - _xlogx(math.pi - b)) - b
    smooth, _ = quad(lambda t: math.log(2.0 * math.sin(t) / (t * (math.pi - t))), 0.0, b,
                     epsabs=1e-14, epsrel=1e-12, limit=200)
    return sing + smooth


def lobachevsky_quad(x):
    """-int_0^x log|2 sin t| dt by quadrature, one period at a time."""
    x = float(x)
    a = abs(x)
    periods = int(a // math.pi)
    # a full period integrates to zero
    total = periods * _log2sin_period(math.pi) + _log2sin_period(a - periods * math.pi)
    return -total if x > 0 else total


def cosh_power_integral(n, h):
    """int_0^h cosh(t)^(n-1) dt."""
    val, _ = quad(lambda t: math.cosh(t) ** (n - 1), 0.0, float(h), epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def hyperball_piece_quad(n, base_volume, h):
    """Equidistant-shell integral for a hyperball piece over a flat base."""
    return base_volume * cosh_power_integral(n, h)


def half_plane_distance(p, i=0, j=1):
    """Half the Lorentz distance between truncating hyperplanes i and j of S(p)."""
    S = build_simplex(p_to_s(p))
    return 0.5 * plane_distance(S.polar_forms[i], S.polar_forms[j])
