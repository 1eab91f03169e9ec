import json

import numpy as np
import pytest

from hypack.fixtures import (
    FixtureError,
    dump_fixture,
    fixture_from_dict,
    glued_fixture,
    load_fixture,
    max_height,
    regular_fixture,
)
from hypack.packing import height
from hypack.simplex import s_to_p
from hypack.truncation import POLAR


def test_height_is_the_packing_height():
    assert max_height(4, 1.2) == pytest.approx(height(s_to_p(1.2)), rel=1e-13)


@pytest.mark.parametrize("name,builder", [("regular", regular_fixture), ("glued", glued_fixture)])
def test_shipped_fixtures_match_builders(fixtures_dir, name, builder):
    shipped = load_fixture(fixtures_dir / f"{name}.json")
    built = builder()
    assert shipped.dim == 4
    assert shipped.base_plane_indices == built.base_plane_indices
    assert shipped.height == pytest.approx(built.height, rel=1e-15)
    assert np.allclose(shipped.polytope().vertices, built.polytope().vertices, atol=1e-12)


def test_roundtrip(tmp_path):
    fx = glued_fixture()
    path = tmp_path / "g.json"
    dump_fixture(fx, path)
    back = load_fixture(path)
    assert back.to_dict() == fx.to_dict()
    assert any(h.kind == POLAR for h in back.halfspaces)


def good():
    return regular_fixture().to_dict()


@pytest.mark.parametrize("mutate,location", [
    (lambda d: d.pop("height"), "$.height"),
    (lambda d: d.update(dim=5), "$.dim"),
    (lambda d: d.update(base_plane_indices=[0, 99]), "$.base_plane_indices"),
    (lambda d: d.update(base_plane_indices="all"), "$.base_plane_indices"),
    (lambda d: d["halfspaces"].__setitem__(2, [[1, 0, 0], 1]), "$.halfspaces[2]"),
    (lambda d: d["halfspaces"].__setitem__(3, [[0, 1, 0, 0, 0], 0]), "$.halfspaces[3]"),
    (lambda d: d["halfspaces"].__setitem__(4, [[1, 0, 0, 0, 0], 1]), "$.halfspaces[4]"),
    (lambda d: d["halfspaces"].__setitem__(5, "x"), "$.halfspaces[5]"),
    (lambda d: d.update(height=-1), "$.height"),
    (lambda d: d.update(height="tall"), "$.height"),
])
def test_validation_names_location(mutate, location):
    d = good()
    mutate(d)
    with pytest.raises(FixtureError) as info:
        fixture_from_dict(d)
    assert info.value.location == location
    assert location in str(info.value)


def test_not_an_object():
    with pytest.raises(FixtureError):
        fixture_from_dict([1, 2])


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 4,\n  oops}', encoding="utf-8")
    with pytest.raises(FixtureError, match="line 2"):
        load_fixture(p)


def test_json_is_plain(fixtures_dir):
    data = json.loads((fixtures_dir / "regular.json").read_text(encoding="utf-8"))
    assert set(data) == {"dim", "halfspaces", "base_plane_indices", "height"}
    assert data["base_plane_indices"] == [0, 1, 2, 3, 4]
