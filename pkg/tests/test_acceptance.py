"""The twelve acceptance criteria, each at its stated tolerance.

Each test records PASS/FAIL through the ``criterion`` fixture; the summary
is printed at the end of the run.
"""

import math
import time

import numpy as np
import pytest

from hypack.fixtures import load_fixture
from hypack.lorentz import HyperplaneForm, Relation, bilinear_form, plane_plane_relation
from hypack.montecarlo import base_orthoscheme_mc, orthoscheme4_mc
from hypack.oracles import lobachevsky_quad
from hypack.packing import delta, height, maximize, monotonicity_witness, sweep
from hypack.simplex import P_MAX, P_MIN, build_simplex, gram_of_forms, p_to_s
from hypack.special import lobachevsky
from hypack.truncation import decompose, is_truncated_simplex, non_adjacent_count
from hypack.volumes import base_orthoscheme_volume, hyperball_piece_volume, truncated_orthoscheme4_volume
from reference import orthoscheme_mp, shell_integral

RNG_SEED = 2024


def test_c01_domain_endpoints(criterion):
    lower = math.pi / math.acos(math.sqrt(2 / 3))
    angle_err = abs(math.acos(math.sqrt(3 / 4)) - math.pi / 6)
    ok = 5.1042 <= lower <= 5.1044 and angle_err <= 1e-14 and P_MIN == lower and P_MAX == 6.0
    criterion(1, ok, f"lower={lower!r} arccos error={angle_err:.1e}")
    assert ok


def test_c02_optimum(criterion):
    t0 = time.perf_counter()
    res = maximize(1e-10)
    secs = time.perf_counter() - t0
    ok = abs(res.p_opt - 5.19550) <= 5e-4 and abs(res.delta_opt - 0.7586482) <= 1e-5 and secs < 1.0
    criterion(2, ok, f"p_opt={res.p_opt:.9f} delta_opt={res.delta_opt:.9f} time={secs:.3f}s")
    assert ok


def test_c03_unimodality(criterion):
    t0 = time.perf_counter()
    d = np.diff([r.delta for r in sweep(P_MIN, P_MAX, 10_000)])
    secs = time.perf_counter() - t0
    signs = np.sign(d[d != 0])
    changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    ok = changes == 1 and secs < 5.0
    criterion(3, ok, f"sign changes={changes} time={secs:.2f}s")
    assert ok


def test_c04_ideal_limit(criterion):
    d = delta(P_MIN + 1e-6)
    ok = 0.72 < d < 0.75
    criterion(4, ok, f"delta(lower+1e-6)={d:.10f}")
    assert ok


def test_c05_vanishing_limit(criterion):
    p = P_MAX - 1e-9
    d, h = delta(p), height(p)
    ok = d < 1e-6 and h < 1e-4
    criterion(5, ok, f"delta(6-1e-9)={d:.3e} (bound 1e-6) height={h:.3e} (bound 1e-4)")
    assert ok


def test_c06_monotonicity_witness(criterion):
    h1, h2, d1, d2 = monotonicity_witness()
    ok = h1 < h2 and d1 > d2 + 0.01
    criterion(6, ok, f"h1={h1:.6f} h2={h2:.6f} d1={d1:.7f} d2={d2:.7f}")
    assert ok


def _orthoscheme_matrix(s):
    c = math.sqrt(10) / math.sqrt(16 - s * s)
    return np.array([
        [1, -c, 0, 0, 0],
        [-c, 1, -0.5, 0, 0],
        [0, -0.5, 1, -0.5, 0],
        [0, 0, -0.5, 1, -0.5],
        [0, 0, 0, -0.5, 1],
    ])


def test_c07_gram_reproduction(criterion):
    rng = np.random.default_rng(RNG_SEED)
    ss = rng.uniform(1.0 + 1e-4, math.sqrt(8 / 3) - 1e-4, 20)
    e1 = e2 = 0.0
    for s in ss:
        S = build_simplex(s)
        e1 = max(e1, np.max(np.abs(gram_of_forms(S.face_forms) - _orthoscheme_matrix(s))))
        G = gram_of_forms(S.facet_forms)
        off = G[~np.eye(5, dtype=bool)]
        e2 = max(e2, np.max(np.abs(off - (s * s + 4) / (s * s - 16))))
    ok = e1 <= 1e-12 and e2 <= 1e-12
    criterion(7, ok, f"orthoscheme max error={e1:.1e} simplex off-diagonal max error={e2:.1e}")
    assert ok


def test_c08_height_cross_model(criterion):
    rng = np.random.default_rng(RNG_SEED + 1)
    worst = 0.0
    for p in rng.uniform(P_MIN + 1e-6, P_MAX - 1e-6, 50):
        S = build_simplex(p_to_s(p))
        i, j = rng.choice(5, 2, replace=False)
        bi, bj = S.vertices[i], S.vertices[j]
        c = abs(bilinear_form(bi, bj)) / math.sqrt(bilinear_form(bi, bi) * bilinear_form(bj, bj))
        worst = max(worst, abs(height(p) - 0.5 * math.acosh(c)))
    ok = worst <= 1e-12
    criterion(8, ok, f"max |h - d/2|={worst:.1e}")
    assert ok


def test_c09_bolyai_oracle(criterion):
    rng = np.random.default_rng(RNG_SEED + 2)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(3, 6))
        A, h = rng.uniform(1e-3, 10), rng.uniform(1e-3, 3)
        ref = shell_integral(n, A, h)
        worst = max(worst, abs(hyperball_piece_volume(n, A, h) - ref) / ref)
    ok = worst <= 1e-10
    criterion(9, ok, f"max relative error={worst:.1e}")
    assert ok


def test_c10_volume_oracles(criterion):
    t0 = time.perf_counter()
    v4 = orthoscheme4_mc(5.5, 10_000_000, 42)
    v3 = base_orthoscheme_mc(5.5, 10_000_000, 42)
    secs = time.perf_counter() - t0
    r4 = abs(v4.volume - truncated_orthoscheme4_volume(5.5)) / truncated_orthoscheme4_volume(5.5)
    r3 = abs(v3.volume - base_orthoscheme_volume(5.5)) / base_orthoscheme_volume(5.5)
    ok = r4 <= 0.02 and r3 <= 0.02 and secs < 60
    criterion(10, ok, f"Vol4 rel={r4:.1e} Vol3 rel={r3:.1e} time={secs:.1f}s")
    assert ok


def test_c11_lobachevsky(criterion):
    rng = np.random.default_rng(RNG_SEED + 3)
    xs = rng.uniform(-2 * math.pi, 2 * math.pi, 100)
    worst = max(abs(lobachevsky(x) - lobachevsky_quad(x)) for x in xs)
    ref = lobachevsky_quad(math.pi / 6)
    ok = worst <= 1e-10 and abs(ref - 0.5074708) <= 1e-7
    criterion(11, ok, f"series vs quadrature={worst:.1e} quad L(pi/6)={ref:.10f}")
    assert ok


def _cut_misses_hyperballs(P, event, h):
    alpha = HyperplaneForm.from_vector(event["cut_vertex"])
    for i in P.base_facets():
        if i in event["incident_base_planes"]:
            continue
        rel = plane_plane_relation(alpha, P.halfspaces[i].form)
        if rel.kind is not Relation.ULTRAPARALLEL or rel.distance < h:
            return False
    return True


def test_c12_decomposition(criterion, fixtures_dir):
    reg = load_fixture(fixtures_dir / "regular.json")
    trace_r = []
    pieces_r = decompose(reg.polytope(), reg.height, trace=trace_r)
    glu = load_fixture(fixtures_dir / "glued.json")
    P = glu.polytope()
    trace_g = []
    pieces_g = decompose(P, glu.height, trace=trace_g)
    ok = (trace_r == [] and len(pieces_r) == 1 and is_truncated_simplex(pieces_r[0])
          and len(pieces_g) == 2 and all(is_truncated_simplex(q) for q in pieces_g)
          and all(e["lemma31_checked"] for e in trace_g)
          and all(max(e["n_after"]) < e["n_before"] for e in trace_g)
          and trace_g[0]["n_before"] == non_adjacent_count(P)
          and _cut_misses_hyperballs(P, trace_g[0], glu.height))
    criterion(12, ok, f"regular: {len(trace_r)} cuts, {len(pieces_r)} piece; "
                      f"glued: {len(trace_g)} cut(s), {len(pieces_g)} pieces")
    assert ok


def test_reference_density_curve_spot_check():
    # not a numbered criterion: the extended-precision base volume along the curve
    for p in (5.15, 5.19550, 5.5):
        assert base_orthoscheme_volume(p) == pytest.approx(orthoscheme_mp(math.pi / p, math.pi / 3, math.pi / 3),
                                                           rel=1e-12)
