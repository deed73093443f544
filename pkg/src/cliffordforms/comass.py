"""Comass estimates for 4-forms by sampling and gradient ascent on G(4, n).

Frames are 4 x n float arrays with orthonormal rows. Ascent moves along the
horizontal gradient (rows projected off the current plane), retracts with a
QR factorisation whose R has positive diagonal so orientation is kept, and
uses Armijo backtracking so the objective never decreases.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .exterior import ExteriorForm

__all__ = [
    "FloatForm",
    "ComassReport",
    "GradientCheck",
    "estimate_comass",
    "ascend",
    "gradient_check",
]

GRAD_TOL = 1e-10
MAX_ITER = 500
_BATCH = 2000
ARMIJO = 0.4

# rows/cols kept in each 3x3 minor of a 4x4 matrix
_KEEP = [[t for t in range(4) if t != r] for r in range(4)]


class FloatForm:
    """A 4-form with coefficients converted once to floats."""

    def __init__(self, f: ExteriorForm):
        if f.k != 4:
            raise ValueError(f"comass is computed for 4-forms, got degree {f.k}")
        self.n = f.n
        self.idx = np.array([key for key, _ in f.items()], dtype=int).reshape(-1, 4) - 1
        self.coef = np.array([float(c) for _, c in f.items()])

    def __bool__(self) -> bool:
        return bool(len(self.coef))

    def value(self, X: np.ndarray) -> float:
        if not self:
            return 0.0
        minors = X[:, self.idx].transpose(1, 0, 2)
        return float(self.coef @ np.linalg.det(minors))

    def values(self, frames: np.ndarray) -> np.ndarray:
        """Values on a stack of frames of shape (B, 4, n)."""
        if not self:
            return np.zeros(len(frames))
        minors = frames[:, :, self.idx].transpose(0, 2, 1, 3)
        return np.linalg.det(minors) @ self.coef

    def gradient(self, X: np.ndarray) -> np.ndarray:
        """Euclidean gradient with respect to the 4 x n frame entries."""
        G = np.zeros_like(X)
        if not self:
            return G
        M = X[:, self.idx].transpose(1, 0, 2)  # (T, 4, 4)
        cof = np.empty_like(M)
        for r in range(4):
            for c in range(4):
                sub = M[:, _KEEP[r]][:, :, _KEEP[c]]
                cof[:, r, c] = (-1) ** (r + c) * np.linalg.det(sub)
        contrib = cof * self.coef[:, None, None]
        for t in range(4):
            np.add.at(G.T, self.idx[:, t], contrib[:, :, t])
        return G


def _horizontal(G: np.ndarray, X: np.ndarray) -> np.ndarray:
    return G - (G @ X.T) @ X


def _retract(Y: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(Y.T)
    return (q * np.sign(np.diag(r))).T


@dataclass
class AscentResult:
    value: float
    frame: np.ndarray
    iterations: int
    grad_norm: float
    history: list[float] = field(default_factory=list)


def ascend(ff: FloatForm, X: np.ndarray, max_iter: int = MAX_ITER, tol: float = GRAD_TOL) -> AscentResult:
    """Maximise ``ff`` from the frame ``X`` (after flipping to a non-negative start)."""
    X = _retract(np.array(X, dtype=float))
    fx = ff.value(X)
    if fx < 0:
        X[0] = -X[0]
        fx = -fx
    history = [fx]
    step = 1.0
    it = 0
    gn = 0.0
    for it in range(1, max_iter + 1):
        g = _horizontal(ff.gradient(X), X)
        gn = float(np.linalg.norm(g))
        if gn < tol:
            it -= 1
            break
        t = step
        accepted = False
        for _ in range(60):
            Y = _retract(X + t * g)
            fy = ff.value(Y)
            if fy >= fx + ARMIJO * t * gn * gn:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        assert fy >= fx, "ascent step decreased the objective"
        X, fx = Y, fy
        history.append(fx)
        step = min(2.0 * t, 1e3)
    return AscentResult(fx, X, it, gn, history)


@dataclass
class ComassReport:
    form: str
    n: int
    samples: int
    restarts: int
    seed: int
    best_value: float
    best_frame: list
    sample_max: float
    ascent_values: list
    iterations: list
    grad_norms: list
    tolerance: float = GRAD_TOL

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _random_frames(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    g = rng.standard_normal((count, n, 4))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diagonal(r, axis1=1, axis2=2))
    return (q * signs[:, None, :]).transpose(0, 2, 1)


def estimate_comass(
    f: ExteriorForm,
    samples: int = 100_000,
    restarts: int = 64,
    seed: int = 0,
    key: str = "",
    max_iter: int = MAX_ITER,
) -> ComassReport:
    """Lower bound for the comass of ``f`` (the max of ``|f|`` on unit 4-planes).

    ``samples`` random planes are scored; the best ``restarts`` of them (topped
    up with fresh random planes) seed gradient ascents. Restart ``r`` uses its
    own child of ``SeedSequence(seed)``, so results do not depend on the
    order restarts are processed in.
    """
    ff = FloatForm(f)
    n = f.n
    if not ff:
        return ComassReport(key, n, samples, restarts, seed, 0.0, np.eye(4, n).tolist(), 0.0, [], [], [])
    ss = np.random.SeedSequence(seed)
    sample_seq, *restart_seqs = ss.spawn(1 + restarts)
    rng = np.random.default_rng(sample_seq)

    top_vals = np.empty(0)
    top_frames = np.empty((0, 4, n))
    done = 0
    while done < samples:
        b = min(_BATCH, samples - done)
        frames = _random_frames(rng, b, n)
        vals = np.abs(ff.values(frames))
        top_vals = np.concatenate([top_vals, vals])
        top_frames = np.concatenate([top_frames, frames])
        keep = np.argsort(-top_vals, kind="stable")[: max(restarts, 1)]
        top_vals, top_frames = top_vals[keep], top_frames[keep]
        done += b
    sample_max = float(top_vals[0]) if len(top_vals) else 0.0

    best = (sample_max, top_frames[0] if len(top_frames) else np.eye(4, n))
    values, iters, grads = [], [], []
    for r in range(restarts):
        start = top_frames[r] if r < len(top_frames) else _random_frames(np.random.default_rng(restart_seqs[r]), 1, n)[0]
        res = ascend(ff, start, max_iter=max_iter)
        values.append(res.value)
        iters.append(res.iterations)
        grads.append(res.grad_norm)
        if res.value > best[0]:
            best = (res.value, res.frame)
    return ComassReport(
        form=key,
        n=n,
        samples=samples,
        restarts=restarts,
        seed=seed,
        best_value=float(best[0]),
        best_frame=np.asarray(best[1]).tolist(),
        sample_max=sample_max,
        ascent_values=values,
        iterations=iters,
        grad_norms=grads,
    )


@dataclass
class GradientCheck:
    max_rel_error: float
    grad_norm: float
    value: float
    errors: list

    def to_dict(self) -> dict:
        return asdict(self)


def gradient_check(f: ExteriorForm, P, h: float = 1e-5, directions: int = 8, seed: int = 0) -> GradientCheck:
    """Analytic directional derivatives against central differences.

    Directions are tangent to the Grassmannian: the horizontal gradient
    itself and ``directions`` random horizontal unit matrices. Each error is
    ``|fd - analytic|`` divided by the scale ``max(|grad| |D|, |analytic|)``
    of a directional derivative, or by 1 when the gradient vanishes.
    """
    ff = FloatForm(f)
    X = P.orthonormal().array() if hasattr(P, "orthonormal") else _retract(np.asarray(P, dtype=float))
    G = ff.gradient(X)
    Gh = _horizontal(G, X)
    gn = float(np.linalg.norm(Gh))
    rng = np.random.default_rng(seed)
    dirs = []
    if gn > 0:
        dirs.append(Gh / gn)
    for _ in range(directions):
        D = _horizontal(rng.standard_normal(X.shape), X)
        dirs.append(D / np.linalg.norm(D))
    errors = []
    for D in dirs:
        analytic = float(np.sum(G * D))
        fd = (ff.value(X + h * D) - ff.value(X - h * D)) / (2 * h)
        scale = max(float(np.linalg.norm(G)) * float(np.linalg.norm(D)), abs(analytic))
        errors.append(abs(fd - analytic) / (scale if scale > 0 else 1.0))
    return GradientCheck(max(errors) if errors else 0.0, gn, ff.value(X), errors)
