"""Lobachevsky function and a guarded inverse hyperbolic cosine.

The Lobachevsky function is

    L(x) = -int_0^x log|2 sin t| dt = Cl_2(2x) / 2,

odd and pi-periodic.  On the reduced range |2x| <= pi the Clausen function
has the rapidly convergent expansion

    Cl_2(t) = t - t log|t| + sum_{k>=1} zeta(2k) / (k (2k+1)) * t^(2k+1) / (2 pi)^(2k)

whose terms shrink at least like 4^-k, so ~30 terms reach double precision.
"""

import math

from scipy.special import zeta

from .errors import DomainError

# |x| below this uses the two-term asymptotic form directly
SMALL_ARG = 1e-3

ACOSH_SLACK = 1e-12


def _clausen_coefficients(count=40):
    """zeta(2k) / (k (2k+1) (2 pi)^(2k)) for k = 1..count."""
    return tuple(
        float(zeta(2 * k)) / (k * (2 * k + 1) * (2.0 * math.pi) ** (2 * k))
        for k in range(1, count + 1)
    )


_COEFFS = _clausen_coefficients()


def _clausen_reduced(t):
    """Cl_2(t) for |t| <= pi (power series around 0)."""
    if t == 0.0:
        return 0.0
    t2 = t * t
    terms = [t, -t * math.log(abs(t))]
    power = t
    for c in _COEFFS:
        power *= t2
        term = c * power
        terms.append(term)
        if abs(term) < 1e-18 * abs(t):
            break
    return math.fsum(terms)


def lobachevsky(x):
    """Lobachevsky function L(x) = -int_0^x log|2 sin t| dt.

    Accurate to about 1e-15 absolute for any finite ``x``.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"Lobachevsky function needs a finite argument, got {x!r}")
    # reduce to [-pi/2, pi/2] using pi-periodicity
    r = math.remainder(x, math.pi)
    if abs(r) < SMALL_ARG:
        if r == 0.0:
            return 0.0
        a = abs(r)
        value = a * (1.0 - math.log(2.0 * a)) + a ** 3 / 18.0
        return math.copysign(value, r)
    return 0.5 * _clausen_reduced(2.0 * r)


def arccosh_safe(c):
    """arccosh with a rounding guard just below 1.

    Arguments in ``[1 - 1e-12, 1]`` are treated as 1; anything smaller is a
    domain error.
    """
    c = float(c)
    if not c >= 1.0 - ACOSH_SLACK:
        raise DomainError(f"arccosh argument {c!r} is below 1")
    if c <= 1.0:
        return 0.0
    return math.log(c + math.sqrt(c - 1.0) * math.sqrt(c + 1.0))
