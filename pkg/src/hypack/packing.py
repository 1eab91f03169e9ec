"""Local density of congruent hyperball packings in regular truncated 4-simplices.

For a Coxeter parameter p in the open interval (P_MIN, 6) the hyperballs sit
on the five truncation faces with the largest admissible height h(p), half
the distance between two truncation faces.  Since the truncated simplex
splits into 120 congruent truncated characteristic orthoschemes R1, each
holding one half hyperball piece over the base orthoscheme A3, the density
is the ratio

    delta(p) = Vol4(piece over A3(p) of height h(p)) / Vol4(R1(p)).
"""

import math
from dataclasses import asdict, dataclass

from .errors import DomainError
from .simplex import P_MAX, P_MIN, check_p, p_to_s
from .special import arccosh_safe
from .volumes import (
    base_orthoscheme_volume,
    base_theta,
    hyperball_piece_volume,
    truncated_orthoscheme4_volume,
)

EVAL_EPS = 1e-9
OPT_EPS = 1e-8
ORTHOSCHEMES_PER_SIMPLEX = 120  # 5!

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

CSV_COLUMNS = ("p", "s", "h", "theta", "vol3_base", "vol4_orthoscheme", "vol4_hyperball", "delta")


def _guard(p, eps):
    p = check_p(p)
    if p - P_MIN < eps * (1 - 1e-6) or P_MAX - p < eps * (1 - 1e-6):
        raise DomainError(
            f"p = {p!r} is closer than {eps:g} to an endpoint of the open interval "
            f"({P_MIN:.4f}, 6); the density is only evaluated inside that guard"
        )
    return p


def height(p):
    """Largest congruent hyperball height h(p) = d(beta_i, beta_j) / 2.

    Diverges at the lower endpoint and vanishes at p = 6.
    """
    p = check_p(p)
    c = math.cos(2.0 * math.pi / p)
    denom = 3.0 * c - 1.0
    if denom <= 0.0:
        raise DomainError(f"height diverges at p = {p!r}")
    return 0.5 * arccosh_safe(c / denom)


@dataclass(frozen=True)
class DensityReport:
    p: float
    s: float
    h: float
    theta: float
    vol3_base: float
    vol4_orthoscheme: float
    vol4_hyperball_piece: float
    delta: float

    @property
    def simplex_volume(self):
        return ORTHOSCHEMES_PER_SIMPLEX * self.vol4_orthoscheme

    @property
    def simplex_hyperball_volume(self):
        return ORTHOSCHEMES_PER_SIMPLEX * self.vol4_hyperball_piece

    def to_dict(self):
        d = asdict(self)
        d["simplex_volume"] = self.simplex_volume
        d["simplex_hyperball_volume"] = self.simplex_hyperball_volume
        return d

    def csv_row(self):
        return (self.p, self.s, self.h, self.theta, self.vol3_base,
                self.vol4_orthoscheme, self.vol4_hyperball_piece, self.delta)


def density(p):
    """Full density report at Coxeter parameter ``p``."""
    p = _guard(p, EVAL_EPS)
    h = height(p)
    vol3 = base_orthoscheme_volume(p)
    vol4 = truncated_orthoscheme4_volume(p)
    piece = hyperball_piece_volume(4, vol3, h)
    return DensityReport(
        p=p,
        s=p_to_s(p),
        h=h,
        theta=base_theta(p),
        vol3_base=vol3,
        vol4_orthoscheme=vol4,
        vol4_hyperball_piece=piece,
        delta=piece / vol4,
    )


def delta(p):
    return density(p).delta


@dataclass(frozen=True)
class OptimumResult:
    p_opt: float
    delta_opt: float
    iterations: int
    bracket_width: float

    def to_dict(self):
        return asdict(self)


def golden_section_max(f, a, b, tol, max_iter=500):
    """Maximise a unimodal ``f`` on [a, b] by golden-section search.

    Returns (a, b, x_best, f_best, iterations) where [a, b] is the final
    bracket, at most ``tol`` wide unless the points stop moving in
    floating point.
    """
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while b - a > tol and it < max_iter:
        it += 1
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
        if not (a < x1 < b and a < x2 < b):
            break
    if f1 >= f2:
        return a, b, x1, f1, it
    return a, b, x2, f2, it


def _parabolic_vertex(x0, f0, x1, f1, x2, f2):
    num = (x1 - x0) ** 2 * (f1 - f2) - (x1 - x2) ** 2 * (f1 - f0)
    den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0)
    if den == 0.0:
        return None
    return x1 - 0.5 * num / den


def maximize(tol=1e-10, lower=None, upper=None):
    """Locate the maximum of delta(p).

    Golden-section search on [lower, upper] (by default the whole domain
    minus a 1e-8 guard at each end) followed by one parabolic step through
    the best point and the bracket ends; the step is kept only when it
    stays inside the bracket and does not lower delta.
    """
    if not (1e-14 <= tol <= 1e-3):
        raise DomainError(f"tol = {tol!r} must lie in [1e-14, 1e-3]")
    a = P_MIN + OPT_EPS if lower is None else max(float(lower), P_MIN + OPT_EPS)
    b = P_MAX - OPT_EPS if upper is None else min(float(upper), P_MAX - OPT_EPS)
    if not a < b:
        raise DomainError("empty search bracket")
    a, b, x, fx, it = golden_section_max(delta, a, b, tol)
    if a < x < b:
        try:
            xp = _parabolic_vertex(a, delta(a), x, fx, b, delta(b))
        except DomainError:
            xp = None
        if xp is not None and a < xp < b:
            fp = delta(xp)
            if fp >= fx:
                x, fx = xp, fp
    return OptimumResult(p_opt=x, delta_opt=fx, iterations=it, bracket_width=b - a)


def clip_to_domain(p_from, p_to, eps=EVAL_EPS):
    lo = max(float(p_from), P_MIN + eps)
    hi = min(float(p_to), P_MAX - eps)
    if not lo <= hi:
        raise DomainError(
            f"range [{p_from}, {p_to}] does not meet the open interval ({P_MIN:.4f}, 6)"
        )
    return lo, hi


def sweep(p_from=P_MIN, p_to=P_MAX, steps=1000):
    """Density reports on a uniform grid over the domain-clipped range, ascending in p."""
    if steps < 2:
        raise DomainError("a sweep needs at least 2 steps")
    lo, hi = clip_to_domain(p_from, p_to)
    grid = [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    grid[-1] = hi
    return [density(p) for p in grid]


# probes for the monotonicity counterexample
WITNESS_LOW_OFFSET = 1e-6


def monotonicity_witness():
    """A pair of parameters showing delta is not increasing in the height.

    Returns (h1, h2, d1, d2) with h1 < h2 but d1 > d2: the optimum has
    smaller hyperballs than the configuration near the ideal limit, yet a
    larger density.
    """
    opt = maximize(1e-10)
    near_ideal = density(P_MIN + WITNESS_LOW_OFFSET)
    return height(opt.p_opt), near_ideal.h, opt.delta_opt, near_ideal.delta
