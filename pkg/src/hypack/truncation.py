"""Single-cell harness for cutting a hyperball-packing cell into truncated simplices.

A cell is a convex polytope of the projective model given by half-spaces.
Some bounding hyperplanes are *base* planes, carrying congruent hyperballs
of a common height; the others are polar hyperplanes that cut off outer
vertices, or cutting planes introduced by the procedure itself.

The procedure, for one cell D:

* Intersection points of base planes that are outer points but are not
  vertices of the polytope bounded by the base planes alone ("non-adjacent"
  intersections) are counted; their number is N(D).
* While N(D) > 0, pick one such point A and cut D along its polar
  hyperplane, which is orthogonal to every base plane through A.  Before
  each cut the hyperballs on base planes missing A are checked to be
  disjoint from the cutting plane.
* Pieces with N = 0 bounded by dim+1 base planes are truncated simplices.

Vertices are enumerated by brute force over dim-subsets of the bounding
hyperplanes, which is fine for the small inputs this harness is meant for.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DecompositionError, GeometryError
from .lorentz import (
    Hyperball,
    HyperplaneForm,
    PointClass,
    bilinear_form,
    classify_point,
    hyperplane_intersects_hyperball,
    lorentz_metric,
    plane_plane_relation,
    polar_hyperplane,
)

FEAS_TOL = 1e-9
DEDUP_TOL = 1e-9
ORTHO_TOL = 1e-10
MAX_HALFSPACES = 20

BASE = "base"
POLAR = "polar"
CUT = "cut"


@dataclass(frozen=True)
class Halfspace:
    """{x : side * <u, x> >= 0}, for representatives with x0 > 0."""

    form: HyperplaneForm
    side: int
    kind: str = BASE

    def __post_init__(self):
        if self.side not in (-1, 1):
            raise GeometryError("halfspace side must be +1 or -1")

    def value(self, x):
        return self.side * bilinear_form(self.form.form, x)


def _unit(x):
    x = np.asarray(x, dtype=float)
    return x / np.linalg.norm(x)


def _affine(x):
    """Representative with x0 = 1 (x0 must be clearly nonzero)."""
    return np.asarray(x, dtype=float) / x[0]


@dataclass(frozen=True)
class ProjectivePolytope:
    dim: int
    halfspaces: tuple
    vertices: np.ndarray = field(repr=False)
    incidence: tuple = field(repr=False)

    @property
    def base_indices(self):
        return tuple(i for i, h in enumerate(self.halfspaces) if h.kind == BASE)

    def vertex_classes(self):
        return [classify_point(v) for v in self.vertices]

    def facet_indices(self):
        """Halfspaces whose hyperplane carries a (dim-1)-dimensional face."""
        out = []
        for i in range(len(self.halfspaces)):
            on = [v for v, inc in zip(self.vertices, self.incidence) if i in inc]
            if len(on) >= self.dim and np.linalg.matrix_rank(np.array(on), tol=1e-9) >= self.dim:
                out.append(i)
        return tuple(out)

    def base_facets(self):
        facets = set(self.facet_indices())
        return tuple(i for i in self.base_indices if i in facets)

    def contains(self, x, tol=FEAS_TOL):
        x = np.asarray(x, dtype=float)
        if x[0] < 0:
            x = -x
        scale = np.linalg.norm(x)
        return all(h.value(x) >= -tol * scale for h in self.halfspaces)

    def to_dict(self):
        return {
            "dim": self.dim,
            "halfspaces": [[h.form.tolist(), h.side, h.kind] for h in self.halfspaces],
            "vertices": self.vertices.tolist(),
        }


@dataclass(frozen=True)
class OuterVertexRecord:
    vertex: np.ndarray = field(repr=False)
    incident_base_planes: frozenset

    def __post_init__(self):
        if classify_point(self.vertex) is not PointClass.OUTER:
            raise GeometryError("outer vertex record needs an outer point")


def _null_point(forms, dim):
    """The point on all hyperplanes in ``forms``, or None if they do not pin one."""
    J = lorentz_metric(dim)
    A = np.array([u.form for u in forms]) @ J
    _, sv, vt = np.linalg.svd(A)
    if sv.size < dim or sv[dim - 1] < 1e-10 * sv[0]:
        return None
    if sv.size > dim and sv[dim] > 1e-10 * sv[0]:
        return None
    return vt[-1]


def _dedup(points):
    kept = []
    for x in points:
        u = _unit(x)
        if not any(np.linalg.norm(u - _unit(k)) <= DEDUP_TOL for k in kept):
            kept.append(x)
    return kept


def _canonical_order(vertices):
    keys = [tuple(np.round(v, 9)) for v in vertices]
    return [v for _, v in sorted(zip(keys, vertices), key=lambda kv: kv[0])]


def vertex_enumeration(halfspaces, dim):
    """Build a polytope from half-spaces by brute-force vertex enumeration.

    Every dim-subset of bounding hyperplanes is intersected; feasible points
    are kept and merged projectively.  Raises GeometryError for empty
    intersections and for feasible directions at affine infinity.
    """
    halfspaces = tuple(halfspaces)
    if dim not in (3, 4):
        raise GeometryError(f"only dimensions 3 and 4 are supported, not {dim}")
    if len(halfspaces) < dim + 1:
        raise GeometryError(f"need at least {dim + 1} halfspaces, got {len(halfspaces)}")
    if len(halfspaces) > MAX_HALFSPACES:
        raise GeometryError(f"brute-force enumeration is limited to {MAX_HALFSPACES} halfspaces")
    for h in halfspaces:
        if h.form.dim != dim:
            raise GeometryError("halfspace dimension does not match")

    def feasible(x):
        scale = np.linalg.norm(x)
        return all(h.value(x) >= -FEAS_TOL * scale for h in halfspaces)

    found = []
    for subset in itertools.combinations(range(len(halfspaces)), dim):
        x = _null_point([halfspaces[i].form for i in subset], dim)
        if x is None:
            continue
        x = _unit(x)
        if abs(x[0]) < 1e-12:
            if feasible(x) or feasible(-x):
                raise GeometryError(
                    f"unbounded: hyperplanes {list(subset)} meet at a point at affine infinity"
                )
            continue
        x = _affine(x)
        if feasible(x):
            found.append(x)
    # recession rays: dim-1 hyperplanes meeting the hyperplane at infinity
    infinity = HyperplaneForm(np.eye(dim + 1)[0], normalized=False)
    for subset in itertools.combinations(range(len(halfspaces)), dim - 1):
        x = _null_point([halfspaces[i].form for i in subset] + [infinity], dim)
        if x is None:
            continue
        x = _unit(x)
        if feasible(x) or feasible(-x):
            raise GeometryError(
                f"unbounded: hyperplanes {list(subset)} run off to affine infinity"
            )
    if not found:
        raise GeometryError("the halfspaces have an empty intersection")
    vertices = _canonical_order(_dedup(found))
    incidence = tuple(
        frozenset(
            i for i, h in enumerate(halfspaces)
            if abs(bilinear_form(h.form.form, v)) <= FEAS_TOL * np.linalg.norm(v)
        )
        for v in vertices
    )
    return ProjectivePolytope(dim, halfspaces, np.array(vertices), incidence)


def outer_vertex_records(P):
    base = set(P.base_indices)
    return [
        OuterVertexRecord(v, frozenset(inc & base))
        for v, inc in zip(P.vertices, P.incidence)
        if classify_point(v) is PointClass.OUTER
    ]


def outer_vertex_count(P):
    """Number of vertices of P that are outer points."""
    return sum(1 for c in P.vertex_classes() if c is PointClass.OUTER)


def _polar_of(A):
    A = np.asarray(A, dtype=float)
    if A[0] < 0:
        A = -A
    return polar_hyperplane(A)


def _check_orthogonal(alpha, P, planes):
    for i in planes:
        g = bilinear_form(alpha.form, P.halfspaces[i].form.form)
        if abs(g) > ORTHO_TOL:
            raise GeometryError(
                f"cutting plane is not orthogonal to incident base plane {i} (<.,.> = {g:.3e})"
            )


def split(P, A, kind=CUT):
    """Cut P along the polar hyperplane of the outer point A.

    Returns (away, toward): the half on the far side from A and the half
    containing A's side of the cut.  Either half may be lower-dimensional
    when the polar hyperplane only supports P.
    """
    A = np.asarray(A, dtype=float)
    if classify_point(A) is not PointClass.OUTER:
        raise GeometryError(f"cannot cut at a {classify_point(A).value} point")
    if A[0] < 0:
        A = -A
    alpha = _polar_of(A)
    incident = [
        i for i in P.base_indices
        if abs(bilinear_form(P.halfspaces[i].form.form, A)) <= FEAS_TOL * np.linalg.norm(A)
    ]
    _check_orthogonal(alpha, P, incident)
    away = vertex_enumeration(P.halfspaces + (Halfspace(alpha, -1, kind),), P.dim)
    toward = vertex_enumeration(P.halfspaces + (Halfspace(alpha, 1, kind),), P.dim)
    return away, toward


def cut_at_outer_vertex(P, A):
    """Split P by the polar hyperplane of its outer vertex ``A`` (an OuterVertexRecord)."""
    v = np.asarray(A.vertex, dtype=float)
    if classify_point(v) is not PointClass.OUTER:
        raise GeometryError("cut vertex must be an outer point")
    u = _unit(v if v[0] >= 0 else -v)
    if not any(np.linalg.norm(u - _unit(w)) <= DEDUP_TOL for w in P.vertices):
        raise GeometryError("the given point is not a vertex of the polytope")
    return split(P, v, kind=POLAR)


def truncate_outer_vertices(P):
    """Cut every outer vertex off P with its polar hyperplane, keeping the far side."""
    halfspaces = list(P.halfspaces)
    for rec in outer_vertex_records(P):
        halfspaces.append(Halfspace(_polar_of(rec.vertex), -1, POLAR))
    return vertex_enumeration(halfspaces, P.dim)


def base_cell(P):
    """The polytope bounded by the base facets of P alone (possibly with outer vertices)."""
    idx = P.base_facets()
    if len(idx) < P.dim + 1:
        raise GeometryError("fewer than dim+1 base facets")
    return vertex_enumeration([P.halfspaces[i] for i in idx], P.dim), idx


def _splits_interior(P, alpha):
    vals = [bilinear_form(alpha.form, v) / np.linalg.norm(v) for v in P.vertices]
    return max(vals) > FEAS_TOL and min(vals) < -FEAS_TOL


def non_adjacent_outer_points(P):
    """Outer intersection points of base planes that are not vertices of the base cell.

    Only points whose polar hyperplane actually passes through the interior
    of P are returned, each as an OuterVertexRecord carrying every base
    facet of P through it (indices into ``P.halfspaces``).
    """
    idx = P.base_facets()
    base_halfspaces = [P.halfspaces[i] for i in idx]
    candidates = []
    for subset in itertools.combinations(idx, P.dim):
        x = _null_point([P.halfspaces[i].form for i in subset], P.dim)
        if x is None:
            continue
        x = _unit(x)
        if x[0] < 0:
            x = -x
        if classify_point(x) is not PointClass.OUTER:
            continue
        scale = np.linalg.norm(x)
        if all(h.value(x) >= -FEAS_TOL * scale for h in base_halfspaces):
            continue  # a vertex of the base cell: these planes are adjacent
        if not _splits_interior(P, _polar_of(x)):
            continue
        candidates.append(x)
    records = []
    for x in _dedup(candidates):
        on = frozenset(
            i for i in idx
            if abs(bilinear_form(P.halfspaces[i].form.form, x)) <= FEAS_TOL * np.linalg.norm(x)
        )
        records.append(OuterVertexRecord(x, on))
    return records


def non_adjacent_count(P):
    """N(P): the number of cuts still available to the procedure."""
    return len(non_adjacent_outer_points(P))


def is_truncated_simplex(P):
    """All vertices proper, dim+1 base facets, and no non-adjacent outer points."""
    if outer_vertex_count(P) or any(c is not PointClass.PROPER for c in P.vertex_classes()):
        return False
    if len(P.base_facets()) != P.dim + 1:
        return False
    return non_adjacent_count(P) == 0


def clearance(P, record):
    """Smallest distance from the cut plane of ``record`` to a base facet not through it."""
    alpha = _polar_of(record.vertex)
    dists = [
        plane_plane_relation(alpha, P.halfspaces[i].form).distance
        for i in P.base_facets()
        if i not in record.incident_base_planes
    ]
    return min(dists) if dists else math.inf


def most_incident_first(P, records):
    """Default cut order.

    Most incident base planes first; among those, the cut whose plane keeps
    the largest clearance from the other base planes; remaining ties by
    coordinates.
    """
    return sorted(
        records,
        key=lambda r: (
            -len(r.incident_base_planes),
            -round(clearance(P, r), 9),
            tuple(np.round(_label(r.vertex), 9)),
        ),
    )


def cut_hyperball_hits(P, record, height):
    """Hyperballs on base facets missing the cut point stay clear of its polar hyperplane.

    Returns a list of (halfspace index, intersects) pairs.
    """
    alpha = _polar_of(record.vertex)
    out = []
    for i in P.base_facets():
        if i in record.incident_base_planes:
            continue
        ball = Hyperball(P.halfspaces[i].form, height)
        out.append((i, hyperplane_intersects_hyperball(alpha, ball)))
    return out


def _label(x):
    """Unit representative with x0 >= 0; finite even for points at affine infinity."""
    u = _unit(x)
    if u[0] < 0 or (u[0] == 0 and u[np.flatnonzero(u)[0]] < 0):
        u = -u
    return u


def decompose(P, height, order=most_incident_first, trace=None):
    """Cut one cell into truncated simplices.

    ``P`` must already be compact (no outer vertices); use
    :func:`truncate_outer_vertices` first otherwise.  ``height`` is the
    common hyperball height on the base planes.  Returns the pieces in
    canonical order; cut events are appended to ``trace`` when a list is
    given.
    """
    if trace is None:
        trace = []
    if outer_vertex_count(P):
        raise DecompositionError("cell still has outer vertices; truncate them first", trace)
    done = []
    stack = [P]
    budget = None
    while stack:
        piece = stack.pop()
        records = non_adjacent_outer_points(piece)
        n_before = len(records)
        if budget is None:
            budget = n_before
        if n_before == 0:
            done.append(piece)
            continue
        if len(trace) > 4 * max(budget, 1) + 8:
            raise DecompositionError("cutting does not terminate", trace)
        rec = order(piece, records)[0]
        checks = cut_hyperball_hits(piece, rec, height)
        hits = [i for i, hit in checks if hit]
        event = {
            "cut_vertex": [float(c) for c in _label(rec.vertex)],
            "incident_base_planes": sorted(int(i) for i in rec.incident_base_planes),
            "n_before": n_before,
        }
        if hits:
            event["lemma31_checked"] = False
            event["intersecting_hyperballs"] = hits
            trace.append(event)
            raise DecompositionError(
                f"cutting plane meets hyperballs on base planes {hits}; "
                "the hyperballs do not form a packing in this cell",
                trace,
            )
        halves = [h for h in split(piece, rec.vertex) if _full_dimensional(h)]
        counts = [non_adjacent_count(h) for h in halves]
        event["n_after"] = counts
        event["lemma31_checked"] = True
        event["hyperballs_checked"] = len(checks)
        trace.append(event)
        if any(c >= n_before for c in counts):
            raise DecompositionError("cut did not reduce the number of outer points", trace)
        stack.extend(reversed(halves))
    return sorted(done, key=lambda q: tuple(np.round(q.vertices[0], 9)))


def _full_dimensional(P):
    if len(P.vertices) < P.dim + 1:
        return False
    return np.linalg.matrix_rank(P.vertices, tol=1e-9) == P.dim + 1
