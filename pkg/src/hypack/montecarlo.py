"""Seeded Monte Carlo volumes in the Beltrami-Cayley-Klein ball model.

In affine Klein coordinates y = x[1:] / x[0] the hyperbolic volume element of
H^n is (1 - |y|^2)^(-(n+1)/2) dy.  A compact polytope given by half-spaces
is integrated by uniform sampling of its bounding box; batches draw from
independent child streams of one SeedSequence, so the estimate depends only
on (samples, seed), never on how many workers ran the batches.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .lorentz import HyperplaneForm, isometry_to_axis, lorentz_metric
from .simplex import build_simplex, p_to_s

DEFAULT_SAMPLES = 10_000_000
DEFAULT_SEED = 42
BATCH = 500_000


def worker_count():
    cap = os.environ.get("HYPACK_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


@dataclass(frozen=True)
class MCEstimate:
    volume: float
    stderr: float
    samples: int
    seed: int

    @property
    def rel_stderr(self):
        return self.stderr / self.volume if self.volume else math.inf


def klein(points):
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return points[:, 1:] / points[:, :1]


def _batch(args):
    seq, count, lo, hi, forms, sides, n = args
    rng = np.random.default_rng(seq)
    y = lo + (hi - lo) * rng.random((count, n))
    r2 = np.einsum("ij,ij->i", y, y)
    inside = r2 < 1.0
    # <u, (1, y)> = -u0 + u[1:] . y
    vals = y @ forms[:, 1:].T - forms[:, 0]
    inside &= np.all(vals * sides >= 0.0, axis=1)
    w = np.zeros(count)
    w[inside] = (1.0 - r2[inside]) ** (-(n + 1) / 2.0)
    return float(w.sum()), float(np.dot(w, w))


def polytope_volume(halfspaces, box, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, workers=None):
    """Hyperbolic volume of {x : side * <u, x> >= 0 for all (u, side)}.

    ``halfspaces`` is a sequence of (HyperplaneForm, side) pairs and ``box``
    a (lo, hi) pair of Klein-coordinate corners enclosing the polytope.
    """
    forms = np.array([u.form for u, _ in halfspaces])
    sides = np.array([float(side) for _, side in halfspaces])
    lo, hi = (np.asarray(c, dtype=float) for c in box)
    n = lo.size
    samples = int(samples)
    counts = [BATCH] * (samples // BATCH)
    if samples % BATCH:
        counts.append(samples % BATCH)
    seqs = np.random.SeedSequence(seed).spawn(len(counts))
    jobs = [(sq, c, lo, hi, forms, sides, n) for sq, c in zip(seqs, counts)]
    workers = workers or worker_count()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_batch, jobs))
    else:
        parts = [_batch(j) for j in jobs]
    s1 = math.fsum(p[0] for p in parts)
    s2 = math.fsum(p[1] for p in parts)
    box_vol = float(np.prod(hi - lo))
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0)
    return MCEstimate(box_vol * mean, box_vol * math.sqrt(var / samples), samples, seed)


def bounding_box(points, pad=1e-9):
    y = klein(points)
    return y.min(axis=0) - pad, y.max(axis=0) + pad


def orthoscheme4_halfspaces(simplex):
    b1 = simplex.vertices[0]
    faces = [(u, -1) for u in simplex.face_forms]
    return faces + [(simplex.polar_forms[0], -1 if b1[0] > 0 else 1)]


def orthoscheme4_mc(p, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Monte Carlo volume of the truncated orthoscheme P0 P1 P2 P3 B1 cut by beta_1."""
    S = build_simplex(p_to_s(p))
    corners = np.vstack([S.centers, S.feet()])
    return polytope_volume(orthoscheme4_halfspaces(S), bounding_box(corners), samples, seed)


def base_orthoscheme_mc(p, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Monte Carlo volume of Q0 Q1 Q2 Q3 inside beta_1, as a subset of H^3.

    beta_1 is moved onto {x4 = 0} by a Lorentz isometry; the four orthoscheme
    faces through B1 are orthogonal to beta_1, so their images have no x4
    component and bound the base orthoscheme in the remaining coordinates.
    """
    S = build_simplex(p_to_s(p))
    T = isometry_to_axis(S.polar_forms[0])
    halfspaces = []
    for u in S.face_forms[:4]:
        image = T @ u.form
        halfspaces.append((HyperplaneForm.from_vector(image[:4]), -1))
    feet = (T @ S.feet().T).T[:, :4]
    # keep representatives with x0 > 0 before projecting
    feet *= np.sign(feet[:, :1])
    # orientation may have flipped under T; fix it against an interior point
    centre = feet.mean(axis=0)
    J = lorentz_metric(3)
    fixed = []
    for u, side in halfspaces:
        if side * (u.form @ J @ centre) < 0:
            side = -side
        fixed.append((u, side))
    return polytope_volume(fixed, bounding_box(feet), samples, seed)
