"""Cell fixtures for the decomposition harness, and their JSON format.

A fixture file looks like::

    {
      "dim": 4,
      "halfspaces": [[[u0, u1, u2, u3, u4], side], ...],
      "base_plane_indices": [0, 1, 2, 3, 4],
      "height": 0.897...
    }

where each half-space is {x : side * <u, x> >= 0}.  Half-spaces not listed
as base planes are treated as polar (truncating) hyperplanes.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError
from .lorentz import HyperplaneForm, bilinear_form, lorentz_metric, polar_hyperplane
from .simplex import vertex_coordinates
from .special import arccosh_safe
from .truncation import BASE, POLAR, Halfspace, truncate_outer_vertices, vertex_enumeration

_TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3.0)


class FixtureError(ValueError):
    """Malformed fixture; ``location`` names the offending part."""

    def __init__(self, message, location):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class Fixture:
    dim: int
    halfspaces: tuple
    height: float

    @property
    def base_plane_indices(self):
        return [i for i, h in enumerate(self.halfspaces) if h.kind == BASE]

    def polytope(self):
        return vertex_enumeration(self.halfspaces, self.dim)

    def to_dict(self):
        return {
            "dim": self.dim,
            "halfspaces": [[h.form.tolist(), h.side] for h in self.halfspaces],
            "base_plane_indices": self.base_plane_indices,
            "height": self.height,
        }


def regular_vertices(dim, s):
    """Vertices of a regular simplex centred at (1, 0, ..., 0) with Klein radius s."""
    if dim == 4:
        return vertex_coordinates(s)
    if dim == 3:
        return np.hstack([np.ones((4, 1)), s * _TETRA])
    raise ValueError(f"unsupported dimension {dim}")


def max_height(dim, s):
    """Half the distance between two truncating hyperplanes of the regular simplex."""
    b = regular_vertices(dim, s)
    c = abs(bilinear_form(b[0], b[1])) / bilinear_form(b[0], b[0])
    return 0.5 * arccosh_safe(c)


def _oriented(u, inside, kind):
    return Halfspace(u, 1 if u.evaluate(inside) > 0 else -1, kind)


def _truncated(base_halfspaces, dim):
    cell = vertex_enumeration(base_halfspaces, dim)
    return truncate_outer_vertices(cell).halfspaces


def regular_fixture(dim=4, s=1.2, height=None):
    """Regular truncated simplex: base planes are the polars of the simplex vertices."""
    b = regular_vertices(dim, s)
    centre = np.zeros(dim + 1)
    centre[0] = 1.0
    base = [_oriented(polar_hyperplane(v), centre, BASE) for v in b]
    h = max_height(dim, s) if height is None else float(height)
    return Fixture(dim, tuple(_truncated(base, dim)), h)


def glued_fixture(dim=4, s=1.2, height=None):
    """Two regular truncated simplices sharing the facet opposite the last vertex.

    The second simplex is the mirror image of the first in that facet, so
    the cell has dim+2 base planes.
    """
    b = regular_vertices(dim, s)
    centre = np.zeros(dim + 1)
    centre[0] = 1.0
    J = lorentz_metric(dim)
    # facet through all vertices but the last
    _, _, vt = np.linalg.svd(b[:-1] @ J)
    f = HyperplaneForm.from_vector(vt[-1]).form
    mirror = np.eye(dim + 1) - 2.0 * np.outer(f, f @ J)
    image_centre = mirror @ centre
    image_centre *= np.sign(image_centre[0])
    base = [_oriented(polar_hyperplane(v), centre, BASE) for v in b]
    base.append(_oriented(polar_hyperplane(mirror @ b[-1]), image_centre, BASE))
    h = max_height(dim, s) if height is None else float(height)
    return Fixture(dim, tuple(_truncated(base, dim)), h)


def fixture_from_dict(data):
    if not isinstance(data, dict):
        raise FixtureError("expected a JSON object", "$")
    for key in ("dim", "halfspaces", "base_plane_indices", "height"):
        if key not in data:
            raise FixtureError("missing key", f"$.{key}")
    dim = data["dim"]
    if dim not in (3, 4):
        raise FixtureError(f"dimension must be 3 or 4, got {dim!r}", "$.dim")
    base_idx = data["base_plane_indices"]
    if not isinstance(base_idx, list) or not all(isinstance(i, int) for i in base_idx):
        raise FixtureError("expected a list of integers", "$.base_plane_indices")
    raw = data["halfspaces"]
    if not isinstance(raw, list):
        raise FixtureError("expected a list", "$.halfspaces")
    for i in base_idx:
        if not 0 <= i < len(raw):
            raise FixtureError(f"index {i} out of range", "$.base_plane_indices")
    halfspaces = []
    for k, entry in enumerate(raw):
        loc = f"$.halfspaces[{k}]"
        try:
            coeffs, side = entry
            coeffs = [float(c) for c in coeffs]
        except (TypeError, ValueError):
            raise FixtureError("expected [[coefficients], side]", loc) from None
        if len(coeffs) != dim + 1:
            raise FixtureError(f"expected {dim + 1} coefficients", loc)
        if side not in (-1, 1):
            raise FixtureError("side must be +1 or -1", loc)
        try:
            # keep unit forms bit-for-bit so files round-trip exactly
            try:
                u = HyperplaneForm(np.array(coeffs))
            except GeometryError:
                u = HyperplaneForm.from_vector(coeffs)
        except ValueError as exc:
            raise FixtureError(str(exc), loc) from None
        halfspaces.append(Halfspace(u, int(side), BASE if k in base_idx else POLAR))
    try:
        height = float(data["height"])
    except (TypeError, ValueError):
        raise FixtureError("expected a number", "$.height") from None
    if not height >= 0:
        raise FixtureError("height must be nonnegative", "$.height")
    return Fixture(dim, tuple(halfspaces), height)


def load_fixture(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FixtureError(f"invalid JSON ({exc.msg})", f"line {exc.lineno}") from None
        except UnicodeDecodeError:
            raise FixtureError("not UTF-8 text", "$") from None
    return fixture_from_dict(data)


def dump_fixture(fixture, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(fixture.to_dict(), fh, indent=2)
        fh.write("\n")
