"""Oriented 4-planes in R^8 and R^16 = O + O', calibrated families, angles.

A plane is stored by any ordered basis; orientation is the frame order.
Calibration values use ``f(v1..v4) / sqrt(det Gram)``, which is the value on
an oriented orthonormal frame of the same plane and stays exact whenever the
Gram determinant is a rational square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Hypercomplex, cd_multiply, right
from .clifford import build_clifford_system
from .exterior import ExteriorForm, _det, evaluate

__all__ = [
    "FourPlane",
    "OctonionicLine",
    "NotApplicable",
    "transversal_cayley_plane",
    "spin8_orbit_plane",
    "canonical_angles",
    "octonionic_line",
    "cayley_plane_in_line",
    "calibration_value",
    "random_plane",
    "rational_unit_octonion",
    "rational_sqrt",
]


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0) if not _is_float(a) else 0.0)


def _is_float(v) -> bool:
    return any(isinstance(x, (float, np.floating)) for x in v)


@dataclass(frozen=True)
class FourPlane:
    """Oriented 4-plane spanned by ``frame`` (4 vectors of length ``n``)."""

    n: int
    frame: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.frame) != 4 or any(len(v) != self.n for v in self.frame):
            raise ValueError(f"a 4-plane in R^{self.n} needs four vectors of length {self.n}")
        if self.exact:
            frame = tuple(tuple(Fraction(x) for x in v) for v in self.frame)
            object.__setattr__(self, "frame", frame)
            if _det(self.gram()) == 0:
                raise ValueError("frame vectors are linearly dependent")
        else:
            frame = tuple(tuple(float(x) for x in v) for v in self.frame)
            object.__setattr__(self, "frame", frame)
            if np.linalg.matrix_rank(np.array(frame), tol=1e-12) < 4:
                raise ValueError("frame vectors are linearly dependent")

    @classmethod
    def of(cls, frame) -> FourPlane:
        frame = [tuple(v) for v in frame]
        return cls(len(frame[0]), tuple(frame))

    @property
    def exact(self) -> bool:
        return not any(_is_float(v) for v in self.frame)

    def gram(self) -> list[list]:
        return [[_dot(a, b) for b in self.frame] for a in self.frame]

    def array(self) -> np.ndarray:
        return np.array([[float(x) for x in v] for v in self.frame])

    def is_orthonormal(self, tol: float = 1e-12) -> bool:
        g = self.gram()
        if self.exact:
            return all(g[r][c] == (r == c) for r in range(4) for c in range(4))
        return float(np.max(np.abs(np.array(g) - np.eye(4)))) < tol

    def orthonormal(self) -> FourPlane:
        """Gram-Schmidt in frame order; exact when every norm is rational."""
        if self.exact:
            ortho = []
            for v in self.frame:
                w = list(v)
                for u in ortho:
                    c = _dot(w, u) / _dot(u, u)
                    w = [x - c * y for x, y in zip(w, u)]
                ortho.append(w)
            roots = [rational_sqrt(_dot(w, w)) for w in ortho]
            if all(r is not None for r in roots):
                return FourPlane(self.n, tuple(tuple(x / r for x in w) for w, r in zip(ortho, roots)))
        q, r = np.linalg.qr(self.array().T)
        q = q * np.sign(np.diag(r))
        return FourPlane(self.n, tuple(map(tuple, q.T)))

    def to_dict(self) -> dict:
        return {"n": self.n, "exact": self.exact, "frame": [[str(x) for x in v] for v in self.frame]}


def calibration_value(f: ExteriorForm, P: FourPlane):
    """Value of the 4-form ``f`` on the oriented plane ``P``.

    Exact (a ``Fraction``) when ``P`` is exact and its Gram determinant is a
    rational square, a float otherwise.
    """
    if f.k != 4 or f.n != P.n:
        raise ValueError(f"need a 4-form on R^{P.n}, got a {f.k}-form on R^{f.n}")
    if P.exact:
        vol = rational_sqrt(_det(P.gram()))
        val = evaluate(f, [list(v) for v in P.frame])
        if vol is not None:
            return val / vol
        return float(val) / math.sqrt(float(_det(P.gram())))
    arr = P.array()
    return evaluate(f, arr) / math.sqrt(np.linalg.det(arr @ arr.T))


def random_plane(n: int, seed) -> FourPlane:
    """Gaussian frame orthonormalised by QR (rotation-invariant law)."""
    if n not in (8, 16):
        raise ValueError("random planes are drawn in R^8 or R^16")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g = rng.standard_normal((n, 4))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))
    return FourPlane(n, tuple(map(tuple, q.T)))


# ---------------------------------------------------------------- octonion helpers


def _oct(x) -> Hypercomplex:
    if isinstance(x, Hypercomplex):
        if x.level != 3:
            raise ValueError("expected an octonion (level 3)")
        return x
    x = tuple(x)
    if len(x) != 8:
        raise ValueError("an octonion has 8 coordinates")
    return Hypercomplex(3, x)


def _check_imaginary_unit(u: Hypercomplex) -> Hypercomplex:
    u = _oct(u)
    if u.real != 0 or u.norm2() != 1:
        raise ValueError("u must be an imaginary unit octonion")
    return u


def rational_unit_octonion(rng: np.random.Generator, imaginary: bool = False, spread: int = 3) -> Hypercomplex:
    """Random unit octonion with rational coordinates (inverse stereographic
    projection of an integer point)."""
    dim = 6 if imaginary else 7
    t = [int(x) for x in rng.integers(-spread, spread + 1, size=dim)]
    s = sum(x * x for x in t)
    pt = [Fraction(s - 1, s + 1)] + [Fraction(2 * x, s + 1) for x in t]
    perm = [int(i) for i in rng.permutation(dim + 1)]
    pt = [pt[i] for i in perm]
    return Hypercomplex(3, ((0,) + tuple(pt)) if imaginary else tuple(pt))


def transversal_cayley_plane(u, e1, e1p) -> FourPlane:
    """Plane spanned by ``(e1, e1 u)`` in O and ``(e1p, e1p u)`` in O'.

    Both projections are two-dimensional and invariant under right
    multiplication by ``u``.
    """
    u = _check_imaginary_unit(u)
    x, y = _oct(e1), _oct(e1p)
    if x.is_zero() or y.is_zero():
        raise ValueError("e1 and e1p must be nonzero")
    z = (Fraction(0),) * 8
    frame = (
        x.coeffs + z,
        cd_multiply(x, u).coeffs + z,
        z + y.coeffs,
        z + cd_multiply(y, u).coeffs,
    )
    return FourPlane(16, frame).orthonormal()


# Pythagorean (cos, sin) pairs for exact rotations
_PYTHAGOREAN = ((Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)), (Fraction(8, 17), Fraction(15, 17)))


def spin8_orbit_plane(rng: np.random.Generator | int, steps: int = 4) -> FourPlane:
    """Image of ``span(e1, e2, e1', e2')`` under an exact element of Spin(8).

    The element is a product of rotations ``c Id + s I_a I_b`` for random
    pairs of the rank-8 octonionic Pauli matrices and Pythagorean ``(c, s)``.
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    mats = build_clifford_system("oct-r8").involutions
    vecs = [[Fraction(int(c == r)) for c in range(16)] for r in (0, 1, 8, 9)]
    for _ in range(steps):
        a, b = sorted(int(x) for x in rng.choice(8, size=2, replace=False))
        c, s = _PYTHAGOREAN[int(rng.integers(len(_PYTHAGOREAN)))]
        if rng.integers(2):
            s = -s
        Ia, Ib = mats[a], mats[b]
        new = []
        for v in vecs:
            ib = [sum((Ib[r][q] * v[q] for q in range(16) if Ib[r][q]), Fraction(0)) for r in range(16)]
            j = [sum((Ia[r][q] * ib[q] for q in range(16) if Ia[r][q]), Fraction(0)) for r in range(16)]
            new.append([c * x + s * y for x, y in zip(v, j)])
        vecs = new
    return FourPlane(16, tuple(map(tuple, vecs)))


# ---------------------------------------------------------------- canonical angles


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    ranks: tuple[int, int]

    def __bool__(self) -> bool:
        return False


def canonical_angles(Q: FourPlane, tol: float = 1e-9):
    """Angles ``(theta, theta')`` of ``Q`` relative to ``R_i`` on both summands.

    When both projections are 2-dimensional, ``Q`` is their direct sum. With
    oriented orthonormal bases ``(a1, a2)`` and ``(b1, b2)`` compatible with
    the orientation of ``Q``, ``c = <R_i a1, a2>`` and ``c' = <R_i b1, b2>``
    are the cosines; the pair is moved into ``0 <= theta <= pi/2``,
    ``theta <= theta' <= pi - theta`` by a simultaneous orientation flip and,
    if needed, exchanging the roles of the summands.
    """
    if Q.n != 16:
        raise ValueError("canonical angles are defined for planes in R^16")
    F = Q.orthonormal().array()
    A, B = F[:, :8], F[:, 8:]
    ua, sa, _ = np.linalg.svd(A.T)
    ub, sb, _ = np.linalg.svd(B.T)
    ranks = (int(np.sum(sa > tol)), int(np.sum(sb > tol)))
    if ranks != (2, 2):
        return NotApplicable("both projections must be 2-dimensional", ranks)
    a1, a2 = ua[:, 0], ua[:, 1]
    b1, b2 = ub[:, 0], ub[:, 1]
    basis = np.array([np.r_[a1, np.zeros(8)], np.r_[a2, np.zeros(8)], np.r_[np.zeros(8), b1], np.r_[np.zeros(8), b2]])
    if np.linalg.det(F @ basis.T) < 0:
        b2 = -b2
    Ri = np.array([[float(x) for x in row] for row in right("i")])
    c = float(np.clip((Ri @ a1) @ a2, -1.0, 1.0))
    cp = float(np.clip((Ri @ b1) @ b2, -1.0, 1.0))
    if abs(cp) > abs(c):
        c, cp = cp, c
    if c < 0:
        c, cp = -c, -cp
    return math.acos(c), math.acos(cp)


# ---------------------------------------------------------------- octonionic lines


@dataclass(frozen=True)
class OctonionicLine:
    """``{(x, m x)}`` in O + O'; ``slope`` ``None`` means ``{(0, y)}``."""

    slope: object
    basis: tuple[tuple, ...]

    @property
    def real_or_infinite(self) -> bool:
        return self.slope is None or not isinstance(self.slope, Hypercomplex)

    def embed(self, x) -> tuple:
        x = _oct(x)
        z = (Fraction(0),) * 8
        if self.slope is None:
            return z + x.coeffs
        if isinstance(self.slope, Hypercomplex):
            return x.coeffs + cd_multiply(self.slope, x).coeffs
        m = self.slope
        return x.coeffs + tuple(m * c for c in x.coeffs)


def octonionic_line(m) -> OctonionicLine:
    """``m`` may be a rational, a float, ``None``/``inf`` for the vertical line,
    or an octonion (for documentation only)."""
    if m is None or (isinstance(m, (float, int)) and math.isinf(m)) or m == "inf":
        slope = None
    elif isinstance(m, Hypercomplex):
        slope = _oct(m) if not m.is_real() else m.real
    elif isinstance(m, float):
        slope = m
    else:
        slope = Fraction(m)
    line = OctonionicLine(slope, ())
    units = [Hypercomplex(3, tuple(int(c == r) for c in range(8))) for r in range(8)]
    return OctonionicLine(slope, tuple(line.embed(x) for x in units))


def cayley_plane_in_line(line: OctonionicLine, u, v1, v2) -> FourPlane:
    """The plane ``(w1, w2, w1 u, w2 u)`` of ``line`` where ``w = (v, m v)``.

    ``v1, v1 u, v2, v2 u`` must be mutually orthogonal; the plane inside O is
    invariant under right multiplication by ``u`` and is a Cayley plane in
    the orientation given.
    """
    if not line.real_or_infinite:
        raise ValueError("calibrated planes are only built in lines with real or infinite slope")
    u = _check_imaginary_unit(u)
    x1, x2 = _oct(v1), _oct(v2)
    quad = [x1, x2, cd_multiply(x1, u), cd_multiply(x2, u)]
    for a in range(4):
        if quad[a].is_zero():
            raise ValueError("v1 and v2 must be nonzero")
        for b in range(a + 1, 4):
            if _dot(quad[a].coeffs, quad[b].coeffs) != 0:
                raise ValueError("v1, v2, v1 u, v2 u must be mutually orthogonal")
    return FourPlane(16, tuple(line.embed(x) for x in quad))
