"""Linear algebra of the projective (Lorentz) model of hyperbolic n-space.

Points and hyperplanes of H^n live in R^(n+1) with the bilinear form

    <x, y> = -x0*y0 + x1*y1 + ... + xn*yn.

A point [x] is proper (inside H^n) when <x, x> < 0, at infinity when
<x, x> = 0, and outer when <x, x> > 0.  A hyperplane is stored as a
spacelike form u with <u, u> = 1; a point x is incident to it when
<u, x> = 0.  The polar hyperplane of an outer point x is x itself,
rescaled to unit length.

Points are kept as unnormalized float arrays (ideal points cannot be unit
normalized); forms are always normalized.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError
from .special import arccosh_safe

SUPPORTED_DIMS = (3, 4)

CLASSIFY_TOL = 1e-12
PLANE_TOL = 1e-10
NORMALIZED_TOL = 1e-12


def lorentz_metric(dim):
    return np.diag([-1.0] + [1.0] * dim)


def as_vector(x, dim=None):
    """Validate a projective representative and return it as a read-only array.

    ``dim`` is the hyperbolic dimension n, so the array has n+1 entries.
    """
    v = np.array(x, dtype=float)
    if v.ndim != 1 or v.size - 1 not in SUPPORTED_DIMS:
        raise GeometryError(f"expected a vector of length 4 or 5, got shape {v.shape}")
    if dim is not None and v.size != dim + 1:
        raise GeometryError(f"expected dimension {dim}, got a vector of length {v.size}")
    if not np.all(np.isfinite(v)):
        raise GeometryError("vector has non-finite entries")
    if not np.any(v):
        raise GeometryError("the zero vector does not represent a projective point")
    v.flags.writeable = False
    return v


def bilinear_form(x, y):
    """-x0*y0 + sum_{i>=1} xi*yi."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise GeometryError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.dot(x[1:], y[1:]) - x[0] * y[0])


class PointClass(enum.Enum):
    PROPER = "proper"
    BOUNDARY = "boundary"
    OUTER = "outer"


def classify_point(x):
    """Classify a point by the sign of <x, x>.

    The boundary band is relative: |<x, x>| <= 1e-12 * |x|^2, so the result
    does not change when ``x`` is rescaled.
    """
    x = as_vector(x)
    q = bilinear_form(x, x)
    tol = CLASSIFY_TOL * float(np.dot(x, x))
    if q < -tol:
        return PointClass.PROPER
    if q > tol:
        return PointClass.OUTER
    return PointClass.BOUNDARY


def _is_unit(u):
    # relative to the Euclidean size, since <u, u> cancels for large boosts
    return abs(bilinear_form(u, u) - 1.0) <= NORMALIZED_TOL * max(1.0, float(np.dot(u, u)))


@dataclass(frozen=True)
class HyperplaneForm:
    """A hyperplane of H^n given by a spacelike linear form.

    Built through :meth:`from_vector`, which rescales to <u, u> = 1.
    """

    form: np.ndarray = field(repr=False)
    normalized: bool = True

    def __post_init__(self):
        u = as_vector(self.form)
        object.__setattr__(self, "form", u)
        if self.normalized and not _is_unit(u):
            raise GeometryError("form flagged as normalized but <u,u> != 1")

    @classmethod
    def from_vector(cls, u):
        u = np.asarray(u, dtype=float)
        q = bilinear_form(u, u)
        if not q > 0:
            raise GeometryError("form is not spacelike; it does not meet H^n in a hyperplane")
        return cls(u / math.sqrt(q))

    @property
    def dim(self):
        return self.form.size - 1

    def __neg__(self):
        return HyperplaneForm(-self.form, self.normalized)

    def evaluate(self, x):
        """<u, x>; the sign tells which side of the hyperplane ``x`` is on."""
        return bilinear_form(self.form, x)

    def tolist(self):
        return [float(c) for c in self.form]

    def __eq__(self, other):
        if not isinstance(other, HyperplaneForm):
            return NotImplemented
        return self.normalized == other.normalized and np.array_equal(self.form, other.form)

    def __hash__(self):
        return hash((self.normalized, self.form.tobytes()))


def polar_hyperplane(x):
    """The polar hyperplane pol(x) = {y : <x, y> = 0} of an outer point."""
    x = as_vector(x)
    kind = classify_point(x)
    if kind is not PointClass.OUTER:
        raise GeometryError(f"no real polar hyperplane: point is {kind.value}")
    return HyperplaneForm.from_vector(x)


def pole(u):
    """The outer point whose polar hyperplane is ``u``."""
    return np.array(u.form, dtype=float)


class Relation(enum.Enum):
    INTERSECTING = "intersecting"
    PARALLEL = "parallel"
    ULTRAPARALLEL = "ultraparallel"


@dataclass(frozen=True)
class PlaneRelation:
    kind: Relation
    distance: float = 0.0


def _require_normalized(*forms):
    for u in forms:
        if not isinstance(u, HyperplaneForm) or not u.normalized:
            raise GeometryError("expected a normalized HyperplaneForm")
        if not _is_unit(u.form):
            raise GeometryError("form is not unit length")


def plane_plane_relation(u, v):
    """Mutual position of two hyperplanes.

    With c = |<u, v>|: c < 1 means they meet in H^n, c = 1 that they are
    parallel (meet at infinity), c > 1 that they are ultraparallel at
    distance arccosh(c).
    """
    _require_normalized(u, v)
    if u.form.size != v.form.size:
        raise GeometryError("dimension mismatch")
    c = abs(bilinear_form(u.form, v.form))
    if c < 1.0 - PLANE_TOL:
        return PlaneRelation(Relation.INTERSECTING)
    if c <= 1.0 + PLANE_TOL:
        return PlaneRelation(Relation.PARALLEL)
    return PlaneRelation(Relation.ULTRAPARALLEL, arccosh_safe(c))


def plane_distance(u, v):
    """Hyperbolic distance of two ultraparallel hyperplanes (0 otherwise)."""
    return plane_plane_relation(u, v).distance


@dataclass(frozen=True)
class Hyperball:
    """Points within ``height`` of the base hyperplane.

    ``side`` is +1 or -1 for a half hyperball (the side where
    <x, base> > 0 is +1 for x with x0 > 0) or 0 for the full body
    extending into both half-spaces.
    """

    base: HyperplaneForm
    height: float
    side: int = 0

    def __post_init__(self):
        if not self.height >= 0:
            raise GeometryError(f"hyperball height must be nonnegative, got {self.height!r}")
        if self.side not in (-1, 0, 1):
            raise GeometryError("side must be -1, 0 or +1")


def side_of(u, base):
    """Side of ``base`` on which the hyperplane ``u`` lies (+1/-1), for ultraparallel pairs.

    Uses the foot of the common perpendicular on ``u``, which is the proper
    point base - <base, u> u of span(u, base).
    """
    c = bilinear_form(u.form, base.form)
    foot = base.form - c * u.form
    if foot[0] < 0:
        foot = -foot
    return 1 if bilinear_form(foot, base.form) > 0 else -1


def hyperplane_intersects_hyperball(u, ball):
    """True when the hyperplane ``u`` meets the closed hyperball ``ball``."""
    _require_normalized(u, ball.base)
    rel = plane_plane_relation(u, ball.base)
    if rel.kind is not Relation.ULTRAPARALLEL:
        return True
    if ball.side and side_of(u, ball.base) != ball.side:
        return False
    return rel.distance < ball.height


def point_plane_distance(x, u):
    """Signed hyperbolic distance from a proper point to a hyperplane.

    Positive on the side where <u, x> > 0 (with x0 > 0).
    """
    x = as_vector(x)
    q = bilinear_form(x, x)
    if not q < 0:
        raise GeometryError("distance is only defined for proper points")
    if x[0] < 0:
        x = -x
    return math.asinh(bilinear_form(u.form, x) / math.sqrt(-q))


def isometry_to_axis(u):
    """A Lorentz transformation T with T u = e_n (last basis vector).

    T preserves the bilinear form, so it maps the hyperplane ``u`` onto
    {x_n = 0}, which is a copy of H^(n-1) in the first n coordinates.
    """
    _require_normalized(u)
    n1 = u.form.size
    J = lorentz_metric(n1 - 1)
    e = np.zeros(n1)
    e[-1] = 1.0
    # compose two Householder-type Lorentz reflections: u -> w -> e
    # where each reflection r_a(x) = x - 2 <x, a>/<a, a> a
    def reflect(a):
        a = np.asarray(a, dtype=float)
        return np.eye(n1) - 2.0 * np.outer(a, a @ J) / (a @ J @ a)

    diff = u.form - e
    if np.allclose(diff, 0.0, atol=1e-15):
        return np.eye(n1)
    q = diff @ J @ diff
    if abs(q) > 1e-12:
        return reflect(diff)
    # u - e is null; go through an intermediate unit spacelike vector
    mid = np.zeros(n1)
    mid[1] = 1.0
    if abs(bilinear_form(u.form, mid)) > 0.5:
        mid = np.zeros(n1)
        mid[-2] = 1.0
    first = reflect(u.form - mid) if abs((u.form - mid) @ J @ (u.form - mid)) > 1e-12 else np.eye(n1)
    second = reflect(mid - e)
    return second @ first


def to_json_vector(x):
    return [float(c) for c in np.asarray(x, dtype=float)]
