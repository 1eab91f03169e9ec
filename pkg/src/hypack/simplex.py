"""The regular truncated 4-simplex S(p) in Beltrami-Cayley-Klein coordinates.

The five vertices b_1..b_5 sit at Euclidean radius ``s`` around the centre
P0 = (1, 0, 0, 0, 0).  For s = 1 they are ideal; for 1 < s < sqrt(8/3)
they are outer, and their polar hyperplanes beta_i truncate the simplex
into a compact cell whose truncation faces are pairwise ultraparallel.

``s`` and the Coxeter parameter ``p`` (the characteristic orthoscheme has
an essential angle pi/p) are linked by

    cos(pi/p) = sqrt(10) / sqrt(16 - s^2).

The characteristic orthoscheme is P0 P1 P2 P3 B1, with P_k the centre of
the face spanned by b_1..b_(5-k).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError
from .lorentz import (
    HyperplaneForm,
    PointClass,
    bilinear_form,
    classify_point,
    lorentz_metric,
    polar_hyperplane,
)

P_MIN = math.pi / math.acos(math.sqrt(2.0 / 3.0))
# pi / arccos(sqrt(3/4)) is exactly 6; the float quotient lands one ulp short
P_MAX = 6.0
S_MIN = 1.0
S_MAX = math.sqrt(8.0 / 3.0)

# one-sided offset used to expose the open endpoints
ENDPOINT_EPS = 1e-9

DOMAIN_TEXT = f"open interval ({P_MIN:.4f}, 6)"

SQ10 = math.sqrt(10.0)
SQ5 = math.sqrt(5.0)


def check_p(p):
    p = float(p)
    if not (P_MIN < p < P_MAX):
        raise DomainError(f"p = {p!r} is outside the {DOMAIN_TEXT}")
    return p


def check_s(s):
    s = float(s)
    if not (S_MIN < s < S_MAX):
        raise DomainError(f"s = {s!r} is outside the open interval (1, sqrt(8/3))")
    return s


def p_to_s(p):
    """Vertex radius s for Coxeter parameter p."""
    c = math.cos(math.pi / check_p(p))
    return math.sqrt(16.0 * c * c - 10.0) / c


def s_to_p(s):
    """Coxeter parameter p for vertex radius s."""
    s = check_s(s)
    return math.pi / math.acos(math.sqrt(10.0 / (16.0 - s * s)))


@dataclass(frozen=True)
class SimplexParameter:
    """Consistent (p, s) pair; build with :meth:`from_p` or :meth:`from_s`."""

    p: float
    s: float

    def __post_init__(self):
        check_p(self.p)
        check_s(self.s)
        if abs(p_to_s(self.p) - self.s) > 1e-9:
            raise DomainError(f"p = {self.p} and s = {self.s} are not consistent")

    @classmethod
    def from_p(cls, p):
        return cls(float(p), p_to_s(p))

    @classmethod
    def from_s(cls, s):
        return cls(s_to_p(s), float(s))


def vertex_coordinates(s):
    """The five vertices b_1..b_5 as rows of a 5x5 array."""
    a = SQ10 / 4.0 * s
    b = SQ5 / 4.0 * s
    q = s / 4.0
    return np.array([
        [1.0, 0.0, 0.0, 0.0, s],
        [1.0, 0.0, a, b, -q],
        [1.0, 0.0, -a, b, -q],
        [1.0, -a, 0.0, -b, -q],
        [1.0, a, 0.0, -b, -q],
    ])


def facet_form(others, opposite):
    """Unit form through the four points ``others``, oriented so that
    ``opposite`` lies on its negative side."""
    J = lorentz_metric(len(opposite) - 1)
    A = np.asarray(others, dtype=float) @ J
    _, sv, vt = np.linalg.svd(A)
    if sv[-1] < 1e-12 * sv[0]:
        raise GeometryError("points are not in general position")
    u = vt[-1]
    form = HyperplaneForm.from_vector(u)
    if form.evaluate(opposite) > 0:
        form = -form
    return form


@dataclass(frozen=True)
class RegularSimplex4:
    s: float
    vertices: np.ndarray
    centers: np.ndarray
    face_forms: tuple
    polar_forms: tuple
    facet_forms: tuple

    @property
    def p(self):
        return s_to_p(self.s)

    @property
    def orthoscheme_vertices(self):
        """P0, P1, P2, P3, B1 in this order."""
        return np.vstack([self.centers, self.vertices[:1]])

    def feet(self):
        """Q_j = line(B1, P_j) meet beta_1, for j = 0..3 (rows)."""
        b1 = self.vertices[0]
        n = bilinear_form(b1, b1)
        rows = []
        for pj in self.centers:
            # <b1 + t pj, b1> = 0
            t = -n / bilinear_form(pj, b1)
            rows.append(b1 + t * pj)
        return np.array(rows)

    def gram_orthoscheme(self):
        return gram_of_forms(self.face_forms)

    def gram_simplex(self):
        return gram_of_forms(self.facet_forms)

    def gram_base(self):
        """Gram matrix of the four orthoscheme faces through B1.

        They are orthogonal to beta_1 and cut out the base 3-orthoscheme
        Q0 Q1 Q2 Q3 inside it.
        """
        return gram_of_forms(self.face_forms[:4])

    def to_dict(self):
        return {
            "s": self.s,
            "p": self.p,
            "vertices": self.vertices.tolist(),
            "centers": self.centers.tolist(),
            "face_forms": [f.tolist() for f in self.face_forms],
            "polar_forms": [f.tolist() for f in self.polar_forms],
            "gram_orthoscheme": self.gram_orthoscheme().tolist(),
            "gram_simplex": self.gram_simplex().tolist(),
        }


def build_simplex(s):
    """Regular 4-simplex with outer vertices at radius ``s`` and its orthoscheme data."""
    s = check_s(s)
    b = vertex_coordinates(s)
    centers = np.array([b[: 5 - k].sum(axis=0) / (5 - k) for k in range(4)])
    centers[0] = (1.0, 0.0, 0.0, 0.0, 0.0)

    ortho = np.vstack([centers, b[:1]])
    # face k is opposite vertex k of P0 P1 P2 P3 B1
    face_forms = tuple(
        facet_form(np.delete(ortho, k, axis=0), ortho[k]) for k in range(5)
    )
    facet_forms = tuple(
        facet_form(np.delete(b, k, axis=0), b[k]) for k in range(5)
    )
    polar_forms = tuple(polar_hyperplane(v) for v in b)
    for v in b:
        if classify_point(v) is not PointClass.OUTER:
            raise GeometryError("simplex vertex is not outer")
    return RegularSimplex4(s, b, centers, face_forms, polar_forms, facet_forms)


def gram_of_forms(forms):
    """Gram matrix (<u_i, u_j>) of normalized forms."""
    forms = list(forms)
    if not forms:
        raise GeometryError("no forms given")
    size = forms[0].form.size
    for f in forms:
        if not f.normalized:
            raise GeometryError("gram_of_forms needs normalized forms")
        if f.form.size != size:
            raise GeometryError("dimension mismatch among forms")
    U = np.array([f.form for f in forms])
    G = U @ lorentz_metric(size - 1) @ U.T
    G = 0.5 * (G + G.T)
    np.fill_diagonal(G, 1.0)
    return G


def expected_orthoscheme_gram(s):
    """The tridiagonal Coxeter-Schlafli matrix of the orthoscheme, in closed form."""
    c = SQ10 / math.sqrt(16.0 - s * s)
    G = np.eye(5)
    G[0, 1] = G[1, 0] = -c
    for i in (1, 2, 3):
        G[i, i + 1] = G[i + 1, i] = -0.5
    return G


def expected_simplex_gram(s):
    G = np.full((5, 5), (s * s + 4.0) / (s * s - 16.0))
    np.fill_diagonal(G, 1.0)
    return G


def dihedral_consistency(p):
    """|(s^2+4)/(s^2-16) + cos(2 pi/p)|: the simplex dihedral angle is 2 pi/p."""
    s = p_to_s(p)
    return abs((s * s + 4.0) / (s * s - 16.0) + math.cos(2.0 * math.pi / p))
