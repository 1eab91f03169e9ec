import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypack.errors import DomainError
from hypack.lorentz import PointClass, bilinear_form, classify_point, plane_distance
from hypack.simplex import (
    P_MAX,
    P_MIN,
    S_MAX,
    S_MIN,
    SimplexParameter,
    build_simplex,
    dihedral_consistency,
    expected_orthoscheme_gram,
    expected_simplex_gram,
    gram_of_forms,
    p_to_s,
    s_to_p,
)

p_values = st.floats(min_value=P_MIN + 1e-6, max_value=P_MAX - 1e-6)
s_values = st.floats(min_value=S_MIN + 1e-6, max_value=S_MAX - 1e-6)


def s_from_dihedral(p):
    # regular simplex with dihedral angle 2 pi / p: (s^2+4)/(s^2-16) = -cos(2 pi / p)
    c = math.cos(2 * math.pi / p)
    return math.sqrt((16 * c - 4) / (1 + c))


def p_from_dihedral(s):
    c = (s * s + 4) / (16 - s * s)
    return 2 * math.pi / math.acos(c)


def test_p_to_s_reference_value():
    assert p_to_s(5.5) == pytest.approx(s_from_dihedral(5.5), rel=1e-14)
    assert p_to_s(5.5) == pytest.approx(1.3674314184815484, rel=1e-14)


def test_s_to_p_reference_value():
    # the value at s = 1.2 follows from the dihedral-angle relation
    assert s_to_p(1.2) == pytest.approx(p_from_dihedral(1.2), rel=1e-14)
    assert s_to_p(1.2) == pytest.approx(5.289406944691298, rel=1e-14)


@given(p_values)
def test_p_to_s_matches_dihedral_relation(p):
    assert p_to_s(p) == pytest.approx(s_from_dihedral(p), rel=1e-10)


@given(p_values)
def test_roundtrip_p(p):
    assert s_to_p(p_to_s(p)) == pytest.approx(p, rel=1e-12)


@given(s_values)
def test_roundtrip_s(s):
    assert p_to_s(s_to_p(s)) == pytest.approx(s, rel=1e-9)


@given(st.floats(min_value=P_MIN + 1e-4, max_value=P_MAX - 1e-4))
def test_s_increasing_in_p(p):
    assert p_to_s(p + 1e-5) > p_to_s(p)


def test_parameter_limits():
    assert p_to_s(P_MIN + 1e-12) == pytest.approx(1.0, abs=1e-5)
    assert p_to_s(P_MAX - 1e-12) == pytest.approx(S_MAX, abs=1e-5)


@pytest.mark.parametrize("p", [P_MIN, P_MAX, 5.0, 7.0, math.nan])
def test_p_domain(p):
    with pytest.raises(DomainError, match=r"\(5\.1043, 6\)"):
        p_to_s(p)


@pytest.mark.parametrize("s", [1.0, S_MAX, 0.5, 2.0])
def test_s_domain(s):
    with pytest.raises(DomainError):
        s_to_p(s)


def test_simplex_parameter():
    a = SimplexParameter.from_p(5.5)
    b = SimplexParameter.from_s(a.s)
    assert b.p == pytest.approx(5.5, rel=1e-12)
    with pytest.raises(DomainError):
        SimplexParameter(5.5, 1.2)


@pytest.mark.parametrize("s", [1.05, 1.2, 1.4, 1.6])
def test_vertices_regular(s):
    S = build_simplex(s)
    b = S.vertices
    for v in b:
        assert bilinear_form(v, v) == pytest.approx(s * s - 1, rel=1e-14)
        assert classify_point(v) is PointClass.OUTER
    for i, j in itertools.combinations(range(5), 2):
        assert bilinear_form(b[i], b[j]) == pytest.approx(-1 - s * s / 4, rel=1e-14)
    assert np.allclose(b.mean(axis=0), [1, 0, 0, 0, 0], atol=1e-15)


def test_centers_and_feet():
    S = build_simplex(1.2)
    assert np.array_equal(S.centers[0], [1, 0, 0, 0, 0])
    for c in S.centers:
        assert classify_point(c) is PointClass.PROPER
    beta1 = S.polar_forms[0]
    for q in S.feet():
        assert classify_point(q) is PointClass.PROPER
        assert abs(beta1.evaluate(q)) < 1e-14
    # centre of the facet opposite b1 etc. lie on the orthoscheme faces
    for k in range(5):
        for j, v in enumerate(S.orthoscheme_vertices):
            if j != k:
                assert abs(S.face_forms[k].evaluate(v)) < 1e-13


def test_truncation_distance_at_s12():
    s = 1.2
    S = build_simplex(s)
    oracle = math.acosh((1 + s * s / 4) / (s * s - 1))
    for i, j in itertools.combinations(range(5), 2):
        assert plane_distance(S.polar_forms[i], S.polar_forms[j]) == pytest.approx(oracle, rel=1e-13)
    assert oracle == pytest.approx(1.7943533126737272, rel=1e-14)


@pytest.mark.parametrize("s", np.linspace(1.01, 1.62, 20))
def test_orthoscheme_gram(s):
    S = build_simplex(s)
    G = S.gram_orthoscheme()
    assert np.max(np.abs(G - expected_orthoscheme_gram(s))) <= 1e-12
    # the tridiagonal entries are -cos of pi/p, pi/3, pi/3, pi/3
    p = s_to_p(s)
    assert G[0, 1] == pytest.approx(-math.cos(math.pi / p), abs=1e-12)
    assert G[1, 2] == pytest.approx(-0.5, abs=1e-12)


@pytest.mark.parametrize("s", np.linspace(1.01, 1.62, 20))
def test_simplex_gram(s):
    G = build_simplex(s).gram_simplex()
    assert np.max(np.abs(G - expected_simplex_gram(s))) <= 1e-12


def test_base_gram_at_s12():
    G = build_simplex(1.2).gram_base()
    assert G[0, 1] == pytest.approx(-0.82874, abs=1e-5)
    assert G[0, 2] == pytest.approx(0.0, abs=1e-13)


def test_gram_of_forms_symmetric():
    S = build_simplex(1.3)
    G = gram_of_forms(S.polar_forms)
    assert np.array_equal(G, G.T)
    assert np.all(np.diag(G) == 1.0)


@given(p_values)
def test_dihedral_consistency(p):
    assert dihedral_consistency(p) <= 1e-12


def test_to_dict_is_plain():
    d = build_simplex(1.2).to_dict()
    assert set(d) >= {"s", "p", "vertices", "face_forms", "gram_orthoscheme", "gram_simplex"}
    assert isinstance(d["vertices"][0][0], float)
