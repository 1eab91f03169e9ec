"""Self-verification suite: one function per acceptance check.

Every check returns a CheckResult; ``run_all`` runs them in order.  Monte
Carlo checks use the requested sample count and widen their tolerance to
four standard errors when the sample count is too small for the nominal one.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import packing as dens
from .fixtures import glued_fixture, regular_fixture
from .montecarlo import DEFAULT_SAMPLES, DEFAULT_SEED, base_orthoscheme_mc, orthoscheme4_mc
from .oracles import half_plane_distance, hyperball_piece_quad, lobachevsky_quad
from .simplex import P_MAX, P_MIN, S_MAX, S_MIN, build_simplex, expected_orthoscheme_gram
from .special import lobachevsky
from .truncation import decompose, is_truncated_simplex
from .volumes import base_orthoscheme_volume, hyperball_piece_volume, truncated_orthoscheme4_volume

P_OPT_REF = 5.19550
DELTA_OPT_REF = 0.7586482
LOB_PI_6_REF = 0.5074708
MC_REL_TOL = 0.02
MC_SIGMAS = 4.0
CHECK_SEED = 20240601


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"check": self.number, "name": self.name, "passed": bool(self.passed), **self.detail}


def _timed(f, *args):
    t0 = time.perf_counter()
    out = f(*args)
    return out, time.perf_counter() - t0


def check_domain_endpoints():
    lower = math.pi / math.acos(math.sqrt(2.0 / 3.0))
    upper = math.pi / math.acos(math.sqrt(0.75))
    upper_angle_err = abs(math.acos(math.sqrt(0.75)) - math.pi / 6.0)
    ok = 5.1042 <= lower <= 5.1044 and upper_angle_err <= 1e-14 and abs(upper - 6.0) <= 1e-14
    ok = ok and P_MAX == 6.0
    ok = ok and P_MIN == lower
    return CheckResult(1, "domain_endpoints", ok,
                       {"lower": lower, "upper": upper, "upper_angle_error": upper_angle_err})


def check_optimum():
    res, secs = _timed(dens.maximize, 1e-10)
    ok = (abs(res.p_opt - P_OPT_REF) <= 5e-4 and abs(res.delta_opt - DELTA_OPT_REF) <= 1e-5
          and secs < 1.0)
    return CheckResult(2, "optimum", ok,
                       {"p_opt": res.p_opt, "delta_opt": res.delta_opt, "seconds": secs})


def check_unimodality(steps=10_000):
    reports, secs = _timed(dens.sweep, P_MIN, P_MAX, steps)
    d = np.diff([r.delta for r in reports])
    signs = np.sign(d[d != 0.0])
    changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    ok = changes == 1 and secs < 5.0
    return CheckResult(3, "unimodality", ok,
                       {"steps": steps, "sign_changes": changes, "zero_differences": int(np.sum(d == 0.0)),
                        "seconds": secs})


def check_ideal_limit():
    d = dens.delta(P_MIN + 1e-6)
    return CheckResult(4, "ideal_limit", 0.72 < d < 0.75, {"delta": d, "band": [0.72, 0.75]})


def check_vanishing_limit():
    p = P_MAX - 1e-9
    d, h = dens.delta(p), dens.height(p)
    return CheckResult(5, "vanishing_limit", d < 1e-6 and h < 1e-4,
                       {"delta": d, "height": h, "delta_bound": 1e-6, "height_bound": 1e-4})


def check_monotonicity_witness():
    h1, h2, d1, d2 = dens.monotonicity_witness()
    return CheckResult(6, "monotonicity_witness", h1 < h2 and d1 > d2 + 0.01,
                       {"h1": h1, "h2": h2, "d1": d1, "d2": d2})


def check_gram(samples=20, seed=CHECK_SEED):
    rng = np.random.default_rng(seed)
    ss = rng.uniform(S_MIN, S_MAX, samples + 8)
    ss = [s for s in ss if S_MIN + 1e-3 < s < S_MAX - 1e-3][:samples]
    worst_orth = worst_simplex = 0.0
    for s in ss:
        S = build_simplex(s)
        worst_orth = max(worst_orth, float(np.max(np.abs(S.gram_orthoscheme() - expected_orthoscheme_gram(s)))))
        G = S.gram_simplex()
        off = G[~np.eye(5, dtype=bool)]
        worst_simplex = max(worst_simplex, float(np.max(np.abs(off - (s * s + 4) / (s * s - 16)))))
    ok = len(ss) == samples and worst_orth <= 1e-12 and worst_simplex <= 1e-12
    return CheckResult(7, "gram_reproduction", ok,
                       {"samples": len(ss), "max_orthoscheme_error": worst_orth,
                        "max_simplex_offdiag_error": worst_simplex})


def check_height_cross_model(samples=50, seed=CHECK_SEED):
    rng = np.random.default_rng(seed + 1)
    ps = rng.uniform(P_MIN + 1e-6, P_MAX - 1e-6, samples)
    worst = max(abs(dens.height(p) - half_plane_distance(p)) for p in ps)
    return CheckResult(8, "height_cross_model", worst <= 1e-12, {"samples": samples, "max_error": worst})


def check_bolyai(samples=100, seed=CHECK_SEED):
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(3, 6))
        A = float(rng.uniform(1e-3, 10.0))
        h = float(rng.uniform(1e-3, 3.0))
        ref = hyperball_piece_quad(n, A, h)
        worst = max(worst, abs(hyperball_piece_volume(n, A, h) - ref) / ref)
    return CheckResult(9, "bolyai_oracle", worst <= 1e-10, {"samples": samples, "max_rel_error": worst})


def check_volumes_mc(samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, p=5.5):
    t0 = time.perf_counter()
    detail = {"p": p, "samples": int(samples), "seed": seed}
    ok = True
    for key, exact, est in (
        ("vol4", truncated_orthoscheme4_volume(p), orthoscheme4_mc(p, samples, seed)),
        ("vol3", base_orthoscheme_volume(p), base_orthoscheme_mc(p, samples, seed)),
    ):
        rel = abs(est.volume - exact) / exact
        tol = max(MC_REL_TOL, MC_SIGMAS * est.stderr / exact)
        detail[key] = {"exact": exact, "mc": est.volume, "stderr": est.stderr,
                       "rel_error": rel, "tolerance": tol, "widened": tol > MC_REL_TOL}
        ok = ok and rel <= tol
    secs = time.perf_counter() - t0
    detail["seconds"] = secs
    return CheckResult(10, "volume_oracles_mc", ok and secs < 60.0, detail)


def check_lobachevsky(samples=100, seed=CHECK_SEED):
    rng = np.random.default_rng(seed + 3)
    xs = rng.uniform(-2 * math.pi, 2 * math.pi, samples)
    worst = max(abs(lobachevsky(x) - lobachevsky_quad(x)) for x in xs)
    ref = lobachevsky_quad(math.pi / 6.0)
    ok = worst <= 1e-10 and abs(ref - LOB_PI_6_REF) <= 1e-7
    return CheckResult(11, "lobachevsky_accuracy", ok,
                       {"samples": samples, "max_error": worst, "quad_pi_over_6": ref})


def check_decomposition():
    detail = {}
    ok = True
    for name, fx, want in (("regular", regular_fixture(), 1), ("glued", glued_fixture(), 2)):
        trace = []
        pieces = decompose(fx.polytope(), fx.height, trace=trace)
        good = (len(pieces) == want and all(is_truncated_simplex(q) for q in pieces)
                and all(e["lemma31_checked"] for e in trace)
                and all(max(e["n_after"]) < e["n_before"] for e in trace))
        if name == "regular":
            good = good and not trace
        detail[name] = {"pieces": len(pieces), "cuts": len(trace), "ok": good}
        ok = ok and good
    return CheckResult(12, "decomposition_harness", ok, detail)


def run_all(mc_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    checks = [
        check_domain_endpoints,
        check_optimum,
        check_unimodality,
        check_ideal_limit,
        check_vanishing_limit,
        check_monotonicity_witness,
        check_gram,
        check_height_cross_model,
        check_bolyai,
        lambda: check_volumes_mc(mc_samples, seed),
        check_lobachevsky,
        check_decomposition,
    ]
    return [c() for c in checks]
