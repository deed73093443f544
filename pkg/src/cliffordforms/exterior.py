"""Exact sparse exterior algebra on R^n.

Forms are stored as a mapping from strictly increasing 1-based index tuples
to :class:`fractions.Fraction` coefficients. Zero coefficients are never
stored, so two forms are equal exactly when their term maps are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ExteriorForm",
    "SignedPermutation",
    "NotFound",
    "wedge",
    "hodge_star",
    "evaluate",
    "apply_signed_permutation",
    "pullback",
    "span_dimension",
    "find_signed_permutation",
    "sort_sign",
]

MAX_DIM = 16


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort ``idx`` and return ``(sign, sorted)``; sign is 0 on a repeat."""
    idx = list(idx)
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
        if b > 0 and idx[b - 1] == idx[b]:
            return 0, ()
    return sign, tuple(idx)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed; use Fraction or int")
    return Fraction(c)


class ExteriorForm:
    """An exact constant-coefficient k-form on R^n.

    Instances are immutable. Arithmetic operators are provided for linear
    combinations; ``a ^ b`` is the wedge product.
    """

    __slots__ = ("n", "k", "_terms", "_hash")

    def __init__(self, n: int, k: int, terms: Mapping[Sequence[int], object] | None = None):
        if not 0 < n <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {n}")
        if not 0 <= k <= n:
            raise ValueError(f"degree {k} out of range for dimension {n}")
        acc: dict[tuple[int, ...], Fraction] = {}
        for idx, c in (terms or {}).items():
            if len(idx) != k:
                raise ValueError(f"index {idx!r} has length {len(idx)}, expected {k}")
            if any(not 1 <= i <= n for i in idx):
                raise ValueError(f"index {idx!r} out of range 1..{n}")
            s, key = sort_sign(idx)
            if s == 0:
                continue
            acc[key] = acc.get(key, Fraction(0)) + s * _as_fraction(c)
        self.n = n
        self.k = k
        self._terms = {key: c for key, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, k: int, terms: dict) -> ExteriorForm:
        # trusted constructor: keys sorted-increasing, values nonzero Fractions
        obj = cls.__new__(cls)
        obj.n = n
        obj.k = k
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int, k: int) -> ExteriorForm:
        return cls._raw(n, k, {})

    @classmethod
    def basis(cls, n: int, *idx: int, coeff=1) -> ExteriorForm:
        """``coeff * dx_{i1} ^ ... ^ dx_{ik}`` (indices need not be sorted)."""
        return cls(n, len(idx), {tuple(idx): coeff})

    @classmethod
    def volume(cls, n: int) -> ExteriorForm:
        return cls._raw(n, n, {tuple(range(1, n + 1)): Fraction(1)})

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, *idx: int) -> Fraction:
        s, key = sort_sign(idx)
        if s == 0 or len(key) != self.k:
            return Fraction(0)
        return s * self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, ExteriorForm):
            return self.n == other.n and self.k == other.k and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.k, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: ExteriorForm) -> None:
        if not isinstance(other, ExteriorForm):
            raise TypeError(f"expected ExteriorForm, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: ExteriorForm) -> ExteriorForm:
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if self.k != other.k:
            raise ValueError(f"degree mismatch: {self.k} vs {other.k}")
        acc = dict(self._terms)
        for key, c in other._terms.items():
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        return ExteriorForm._raw(self.n, self.k, acc)

    __radd__ = __add__

    def __neg__(self) -> ExteriorForm:
        return ExteriorForm._raw(self.n, self.k, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other: ExteriorForm) -> ExteriorForm:
        return self + (-other)

    def __mul__(self, scalar) -> ExteriorForm:
        if isinstance(scalar, ExteriorForm):
            raise TypeError("use ^ or wedge() for the exterior product")
        s = _as_fraction(scalar)
        if s == 0:
            return ExteriorForm.zero(self.n, self.k)
        return ExteriorForm._raw(self.n, self.k, {key: s * c for key, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> ExteriorForm:
        return self * (1 / _as_fraction(scalar))

    def __xor__(self, other: ExteriorForm) -> ExteriorForm:
        return wedge(self, other)

    def __pow__(self, p: int) -> ExteriorForm:
        if p < 1:
            raise ValueError("only positive wedge powers are supported")
        out = self
        for _ in range(p - 1):
            out = wedge(out, self)
        return out

    def restrict(self, coords: Iterable[int]) -> ExteriorForm:
        """Keep only the terms whose indices all lie in ``coords``."""
        keep = set(coords)
        return ExteriorForm._raw(
            self.n, self.k, {key: c for key, c in self._terms.items() if keep.issuperset(key)}
        )

    def shift(self, offset: int, n: int | None = None) -> ExteriorForm:
        """Re-index every coordinate ``i`` as ``i + offset`` in dimension ``n``."""
        n = self.n if n is None else n
        return ExteriorForm(n, self.k, {tuple(i + offset for i in key): c for key, c in self._terms.items()})

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "terms": [
                {"idx": list(key), "num": str(c.numerator), "den": str(c.denominator)}
                for key, c in self._terms.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> ExteriorForm:
        terms: dict[tuple[int, ...], Fraction] = {}
        for t in data["terms"]:
            key = tuple(int(i) for i in t["idx"])
            terms[key] = terms.get(key, Fraction(0)) + Fraction(int(t["num"]), int(t.get("den", 1)))
        return cls(int(data["n"]), int(data["k"]), terms)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> ExteriorForm:
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        if not self._terms:
            return f"ExteriorForm(n={self.n}, k={self.k}, 0)"
        parts = []
        for key, c in self._terms.items():
            parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}[{''.join(_label(i, self.n) for i in key)}]")
        body = " ".join(parts)
        return f"ExteriorForm(n={self.n}, k={self.k}, {body})"


def _label(i: int, n: int) -> str:
    if n == 16 and i > 8:
        return f"{i - 8}'"
    return str(i) if n < 10 else f"{i},"


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    """Exterior product ``a ^ b``."""
    a._check(b)
    if a.k + b.k > a.n:
        raise ValueError(f"degree {a.k + b.k} exceeds dimension {a.n}")
    acc: dict[tuple[int, ...], Fraction] = {}
    for ia, ca in a._terms.items():
        sa = set(ia)
        for ib, cb in b._terms.items():
            if not sa.isdisjoint(ib):
                continue
            s, key = sort_sign(ia + ib)
            v = acc.get(key, 0) + (ca * cb if s > 0 else -(ca * cb))
            if v:
                acc[key] = v
            else:
                del acc[key]
    return ExteriorForm._raw(a.n, a.k + b.k, acc)


def hodge_star(a: ExteriorForm) -> ExteriorForm:
    """Hodge star for the standard metric and orientation ``dx_1 ^ ... ^ dx_n``."""
    full = set(range(1, a.n + 1))
    acc = {}
    for idx, c in a._terms.items():
        comp = tuple(sorted(full.difference(idx)))
        s, _ = sort_sign(idx + comp)
        acc[comp] = s * c
    return ExteriorForm._raw(a.n, a.n - a.k, acc)


def _det(m: list[list]) -> object:
    # fraction-safe Gaussian elimination; small sizes only
    m = [list(r) for r in m]
    size = len(m)
    det = 1
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return 0 * det
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, size):
            f = m[r][col] / p
            if f:
                for cc in range(col, size):
                    m[r][cc] = m[r][cc] - f * m[col][cc]
    return det


def evaluate(a: ExteriorForm, frame: Sequence[Sequence]) -> object:
    """Value of ``a`` on the ordered vectors ``frame``.

    Entries may be ``Fraction``/``int`` (exact result) or floats. A numpy
    array with float dtype takes the vectorized path.
    """
    if len(frame) != a.k:
        raise ValueError(f"expected {a.k} vectors, got {len(frame)}")
    if any(len(v) != a.n for v in frame):
        raise ValueError(f"frame vectors must have length {a.n}")
    try:
        import numpy as np

        if isinstance(frame, np.ndarray) and frame.dtype.kind == "f":
            return float(_evaluate_float(a, frame))
    except ImportError:  # pragma: no cover
        pass
    total = Fraction(0)
    for idx, c in a._terms.items():
        minor = [[Fraction(v[i - 1]) if isinstance(v[i - 1], int) else v[i - 1] for i in idx] for v in frame]
        total = total + c * _det(minor)
    return total


def _evaluate_float(a: ExteriorForm, frame):
    import numpy as np

    if not a._terms:
        return 0.0
    idx = np.array(list(a._terms.keys()), dtype=int) - 1
    coef = np.array([float(c) for c in a._terms.values()])
    minors = frame[:, idx].transpose(1, 0, 2)
    return coef @ np.linalg.det(minors)


@dataclass(frozen=True)
class SignedPermutation:
    """Coordinate map ``dx_i -> signs[i] * dx_{perm[i]}`` (both 1-based).

    ``perm`` and ``signs`` are tuples indexed by ``i - 1``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.perm}")
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a tuple of +1/-1 with one entry per coordinate")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(1, n + 1)), (1,) * n)

    @classmethod
    def from_swaps(cls, n: int, *swaps: tuple[int, int], flips: Iterable[int] = ()) -> SignedPermutation:
        perm = list(range(1, n + 1))
        for a, b in swaps:
            perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]
        signs = [1] * n
        for f in flips:
            signs[f - 1] = -signs[f - 1]
        return cls(tuple(perm), tuple(signs))

    def inverse(self) -> SignedPermutation:
        perm = [0] * self.n
        signs = [1] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs), start=1):
            perm[p - 1] = i
            signs[p - 1] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def compose(self, other: SignedPermutation) -> SignedPermutation:
        """``self`` after ``other``."""
        perm = tuple(self.perm[p - 1] for p in other.perm)
        signs = tuple(s * self.signs[p - 1] for p, s in zip(other.perm, other.signs))
        return SignedPermutation(perm, signs)

    def matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            m[p - 1][i] = s
        return m


def apply_signed_permutation(a: ExteriorForm, p: SignedPermutation) -> ExteriorForm:
    if p.n != a.n:
        raise ValueError(f"permutation acts on {p.n} coordinates, form on {a.n}")
    acc = {}
    for idx, c in a._terms.items():
        sign = 1
        for i in idx:
            sign *= p.signs[i - 1]
        s, key = sort_sign([p.perm[i - 1] for i in idx])
        acc[key] = sign * s * c
    return ExteriorForm._raw(a.n, a.k, acc)


def pullback(a: ExteriorForm, matrix: Sequence[Sequence]) -> ExteriorForm:
    """Pullback ``M^* a`` under the linear map with matrix ``M`` (``y = M x``).

    ``dy_r = sum_c M[r][c] dx_c``, so each term expands as a wedge of
    one-forms.
    """
    n = a.n
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"pullback matrix must be {n}x{n}")
    rows = [
        ExteriorForm(n, 1, {(c + 1,): _as_fraction(v) for c, v in enumerate(row) if v})
        for row in matrix
    ]
    out = ExteriorForm.zero(n, a.k)
    for idx, coeff in a._terms.items():
        t = ExteriorForm(n, 0, {(): coeff})
        for i in idx:
            t = wedge(t, rows[i - 1])
        out = out + t
    return out


def span_dimension(forms: Sequence[ExteriorForm]) -> int:
    """Rank over Q of the coefficient vectors of ``forms``."""
    forms = list(forms)
    if not forms:
        return 0
    n, k = forms[0].n, forms[0].k
    for f in forms:
        if (f.n, f.k) != (n, k):
            raise ValueError("all forms must share dimension and degree")
    keys = sorted({key for f in forms for key in f._terms})
    col = {key: j for j, key in enumerate(keys)}
    rows = []
    for f in forms:
        r = [Fraction(0)] * len(keys)
        for key, c in f._terms.items():
            r[col[key]] = c
        rows.append(r)
    rank = 0
    for j in range(len(keys)):
        piv = next((i for i in range(rank, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][j]
        for i in range(len(rows)):
            if i != rank and rows[i][j] != 0:
                f = rows[i][j] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class NotFound:
    """Search outcome when no signed permutation was produced.

    ``exhausted`` is True when the whole pruned tree was explored, which
    proves that no signed permutation exists; False means the node budget ran
    out first.
    """

    nodes: int
    exhausted: bool

    def __bool__(self) -> bool:
        return False


def _profile(a: ExteriorForm) -> list[tuple]:
    prof: list[list] = [[] for _ in range(a.n)]
    for idx, c in a._terms.items():
        for i in idx:
            prof[i - 1].append(abs(c))
    return [tuple(sorted(p)) for p in prof]


def find_signed_permutation(a: ExteriorForm, b: ExteriorForm, budget: int = 1_000_000):
    """Search for ``p`` with ``apply_signed_permutation(a, p) == b``.

    Backtracks over the image and sign of coordinates 1..n in turn. A
    coordinate may only go to a target with the same multiset of absolute
    coefficients, and every term whose indices are all assigned must land on
    the matching coefficient of ``b``. Returns a :class:`SignedPermutation`
    or :class:`NotFound`.
    """
    a._check(b)
    if a.k != b.k:
        raise ValueError("degree mismatch")
    n = a.n
    if sorted(map(abs, a._terms.values())) != sorted(map(abs, b._terms.values())):
        return NotFound(0, True)
    pa, pb = _profile(a), _profile(b)
    candidates = [[j for j in range(n) if pb[j] == pa[i]] for i in range(n)]
    if any(not c for c in candidates):
        return NotFound(0, True)

    # order coordinates so the most constrained (fewest candidates) go first
    order = sorted(range(n), key=lambda i: (len(candidates[i]), i))
    pos = {c: t for t, c in enumerate(order)}
    # terms of a become checkable once their last coordinate (in order) is set
    checks: list[list] = [[] for _ in range(n)]
    for idx, c in a._terms.items():
        last = max(pos[i - 1] for i in idx)
        checks[last].append((idx, c))
    bt = b._terms
    # number of b-terms supported on an assigned set must match a's, so that
    # no extra b-terms remain at the end
    perm = [0] * n
    signs = [1] * n
    used = [False] * n
    nodes = 0

    def ok(step: int) -> bool:
        for idx, c in checks[step]:
            sign = 1
            for i in idx:
                sign *= signs[i - 1]
            s, key = sort_sign([perm[i - 1] + 1 for i in idx])
            if bt.get(key, 0) != sign * s * c:
                return False
        return True

    def rec(step: int):
        nonlocal nodes
        if step == n:
            return True
        i = order[step]
        for j in candidates[i]:
            if used[j]:
                continue
            for s in (1, -1):
                nodes += 1
                if nodes > budget:
                    raise _Budget
                perm[i], signs[i], used[j] = j, s, True
                if ok(step) and rec(step + 1):
                    return True
                used[j] = False
        return False

    try:
        found = rec(0)
    except _Budget:
        return NotFound(nodes, False)
    if not found:
        return NotFound(nodes, True)
    p = SignedPermutation(tuple(x + 1 for x in perm), tuple(signs))
    # term counts agree, so matching all of a's terms means equality
    assert apply_signed_permutation(a, p) == b
    return p


class _Budget(Exception):
    pass
