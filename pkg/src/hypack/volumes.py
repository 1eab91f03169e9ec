"""Volume formulas (curvature -1 throughout).

* half hyperball pieces over a base polytope of known volume,
* the 3-dimensional orthoscheme volume in terms of its essential angles,
* the base 3-orthoscheme and the truncated 4-orthoscheme of S(p).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .simplex import check_p
from .special import lobachevsky

HALF_PI = 0.5 * math.pi

# Schlafli normalising constant in dimension 4: 2^5 / vol(S^4)
C4 = 12.0 / math.pi ** 2

# below this theta the orthoscheme volume is taken from the integral form,
# which avoids cancelling O(1) Lobachevsky values down to O(theta^3)
SMALL_THETA = 1e-2

NEGATIVE_SLACK = 1e-12


def _clamp_nonnegative(v, what):
    if v < -NEGATIVE_SLACK:
        raise ArithmeticError(f"{what} came out negative ({v!r})")
    return max(v, 0.0)


def hyperball_piece_volume(n, base_volume, height):
    """Volume of the half hyperball piece of ``height`` over a base of ``base_volume``.

    The piece is bounded by the base polytope in the base hyperplane, the
    equidistant surface at distance ``height`` on one side, and the
    hyperplanes through the base facets orthogonal to the base.
    Supported dimensions are 3, 4 and 5.
    """
    if base_volume < 0 or height < 0:
        raise DomainError("base volume and height must be nonnegative")
    h = float(height)
    if n == 3:
        bracket = math.sinh(2 * h) + 2 * h
        return base_volume * bracket / 4.0
    if n == 4:
        bracket = 2.0 / 3.0 * math.sinh(3 * h) + 6 * math.sinh(h)
        return base_volume * bracket / 8.0
    if n == 5:
        bracket = 0.5 * math.sinh(4 * h) + 4 * math.sinh(2 * h) + 6 * h
        return base_volume * bracket / 16.0
    raise DomainError(f"hyperball piece volume is implemented for n in 3..5, not {n}")


@dataclass(frozen=True)
class HyperballPieceSpec:
    n: int
    base_volume: float
    height: float

    def __post_init__(self):
        if self.n not in (3, 4, 5):
            raise DomainError(f"unsupported dimension {self.n}")
        if self.base_volume < 0 or self.height < 0:
            raise DomainError("base volume and height must be nonnegative")

    @property
    def volume(self):
        return hyperball_piece_volume(self.n, self.base_volume, self.height)


@dataclass(frozen=True)
class OrthoschemeAngles3:
    """Essential dihedral angles of a 3-orthoscheme, each in [0, pi/2]."""

    a01: float
    a12: float
    a23: float

    def __post_init__(self):
        for name in ("a01", "a12", "a23"):
            a = getattr(self, name)
            if not (0.0 <= a <= HALF_PI):
                raise DomainError(f"{name} = {a!r} is outside [0, pi/2]")

    @property
    def theta(self):
        return orthoscheme_theta(self.a01, self.a12, self.a23)

    @property
    def volume(self):
        return orthoscheme3_volume(self.a01, self.a12, self.a23)


def orthoscheme_theta(a01, a12, a23):
    """The auxiliary angle theta in [0, pi/2) of the orthoscheme volume formula."""
    radicand = math.cos(a12) ** 2 - (math.sin(a01) * math.sin(a23)) ** 2
    if radicand < 0:
        if radicand > -1e-15:
            radicand = 0.0
        else:
            raise DomainError("Lambert-cube case excluded: theta is not real for these angles")
    return math.atan2(math.sqrt(radicand), math.cos(a01) * math.cos(a23))


def _orthoscheme_integral(a01, a12, a23, theta):
    # the seven Lobachevsky terms regroup into
    #   1/4 int_{-theta}^{theta} log(|cos(a12+t) cos t| / |sin(a01+t) sin(a23+t)|) dt
    # whose integrand is smooth and small when theta is small
    nodes, weights = np.polynomial.legendre.leggauss(16)
    t = theta * nodes
    num = np.abs(np.cos(a12 + t) * np.cos(t))
    den = np.abs(np.sin(a01 + t) * np.sin(a23 + t))
    integrand = np.log1p((num - den) / den)
    return 0.25 * theta * float(np.dot(weights, integrand))


def orthoscheme3_volume(a01, a12, a23):
    """Volume of a 3-dimensional hyperbolic orthoscheme from its essential angles."""
    OrthoschemeAngles3(a01, a12, a23)
    theta = orthoscheme_theta(a01, a12, a23)
    if theta < SMALL_THETA and min(a01, a23) > 4 * SMALL_THETA and a12 < HALF_PI - 4 * SMALL_THETA:
        v = _orthoscheme_integral(a01, a12, a23, theta)
    else:
        L = lobachevsky
        v = 0.25 * (
            L(a01 + theta) - L(a01 - theta)
            + L(HALF_PI + a12 - theta) + L(HALF_PI - a12 - theta)
            + L(a23 + theta) - L(a23 - theta)
            + 2.0 * L(HALF_PI - theta)
        )
    return _clamp_nonnegative(v, "orthoscheme volume")


def base_theta(p):
    """theta for the base orthoscheme with angles (pi/p, pi/3, pi/3)."""
    x = math.pi / check_p(p)
    return orthoscheme_theta(x, math.pi / 3.0, math.pi / 3.0)


def base_orthoscheme_volume(p):
    """Volume of the base 3-orthoscheme Q0 Q1 Q2 Q3 lying in a truncation face."""
    return orthoscheme3_volume(math.pi / check_p(p), math.pi / 3.0, math.pi / 3.0)


def truncated_orthoscheme4_volume(p):
    """Volume of the simply truncated characteristic 4-orthoscheme R1(p).

    The Schlafli reduction for this scheme collapses to
    F_4 = 2/15 - 2/(3p), and Vol = F_4 / C4.
    """
    p = check_p(p)
    return (2.0 / 15.0 - 2.0 / (3.0 * p)) / C4
