"""Clifford systems, Kaehler forms of their compositions, and tau_2 / tau_4."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import identity, left, matmul, right, transpose
from .exterior import ExteriorForm, wedge

__all__ = [
    "CliffordSystem",
    "FormMatrix",
    "CATALOG",
    "build_clifford_system",
    "verify_clifford_system",
    "kaehler_form",
    "composition_form_matrix",
    "generator_form_matrix",
    "tau2",
    "tau4",
    "pfaffian4",
]


Matrix = list  # list of rows of Fraction


@dataclass(frozen=True)
class CliffordSystem:
    name: str
    n: int
    involutions: tuple

    @property
    def rank(self) -> int:
        return len(self.involutions)


def _block(a, b, c, d) -> Matrix:
    top = [ra + rb for ra, rb in zip(a, b)]
    bottom = [rc + rd for rc, rd in zip(c, d)]
    return top + bottom


def _neg(m) -> Matrix:
    return [[-x for x in row] for row in m]


def _zero(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def _pauli_family(mult, units: Sequence[str], level: int) -> list[Matrix]:
    """``[[0, Id], [Id, 0]]``, then ``[[0, -M_u], [M_u, 0]]`` per unit, then ``diag(Id, -Id)``."""
    size = 2**level
    one, z = identity(size), _zero(size)
    out = [_block(z, one, one, z)]
    for u in units:
        m = mult(u, level)
        out.append(_block(z, _neg(m), m, z))
    out.append(_block(one, z, z, _neg(one)))
    return out


def _complex_pauli() -> list[Matrix]:
    # R^4 = C^2 with coordinates (Re z1, Im z1, Re z2, Im z2); i acts by right mult
    ri = right("i", 1)
    one, z = identity(2), _zero(2)
    return [_block(z, one, one, z), _block(z, _neg(ri), ri, z), _block(one, z, z, _neg(one))]


def _catalog():
    return {
        "pauli-r3": (4, lambda: _complex_pauli()),
        "quat-right-r5": (8, lambda: _pauli_family(right, "ijk", 2)),
        "quat-left-r5": (8, lambda: _pauli_family(left, "ijk", 2)),
        "quat-r4": (8, lambda: _pauli_family(right, "ijk", 2)[:4]),
        "oct-r9": (16, lambda: _pauli_family(right, "ijkefgh", 3)),
        "oct-r8": (16, lambda: _pauli_family(right, "ijkefgh", 3)[:8]),
        "oct-r7": (16, lambda: _pauli_family(right, "ijkefgh", 3)[1:8]),
        "oct-r6": (16, lambda: [m for t, m in enumerate(_pauli_family(right, "ijkefgh", 3)) if t in (0, 1, 2, 3, 4, 8)]),
    }


CATALOG = {name: {"n": n, "rank": len(make())} for name, (n, make) in _catalog().items()}


def build_clifford_system(name: str) -> CliffordSystem:
    cat = _catalog()
    if name not in cat:
        raise KeyError(f"unknown Clifford system {name!r}; known: {', '.join(cat)}")
    n, make = cat[name]
    mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in make())
    return CliffordSystem(name, n, mats)


@dataclass
class CliffordReport:
    name: str
    rank: int
    involution: list[bool] = field(default_factory=list)
    symmetric: list[bool] = field(default_factory=list)
    anticommute: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.involution) and all(self.symmetric) and all(self.anticommute.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "ok": self.ok,
            "involution": self.involution,
            "symmetric": self.symmetric,
            "anticommute": {f"{a},{b}": v for (a, b), v in self.anticommute.items()},
        }


def verify_clifford_system(cs: CliffordSystem) -> CliffordReport:
    mats = [[list(r) for r in m] for m in cs.involutions]
    eye = identity(cs.n)
    rep = CliffordReport(cs.name, len(mats))
    for m in mats:
        rep.involution.append(matmul(m, m) == eye)
        rep.symmetric.append(transpose(m) == m)
    for a, b in itertools.combinations(range(len(mats)), 2):
        ab = matmul(mats[a], mats[b])
        ba = matmul(mats[b], mats[a])
        rep.anticommute[(a + 1, b + 1)] = all(x + y == 0 for ra, rb in zip(ab, ba) for x, y in zip(ra, rb))
    return rep


def kaehler_form(J) -> ExteriorForm:
    """2-form ``omega(x, y) = <x, J y>``, i.e. ``sum_{a<b} J[a][b] dx_a ^ dx_b``.

    Raises ``ValueError`` unless ``J`` is skew with ``J^2 = -Id``.
    """
    J = [list(map(Fraction, row)) for row in J]
    n = len(J)
    if any(J[a][b] != -J[b][a] for a in range(n) for b in range(n)):
        raise ValueError("not skew-symmetric")
    sq = matmul(J, J)
    if any(sq[a][b] != (-1 if a == b else 0) for a in range(n) for b in range(n)):
        raise ValueError("not a complex structure: J^2 != -Id")
    return ExteriorForm(n, 2, {(a + 1, b + 1): J[a][b] for a in range(n) for b in range(a + 1, n) if J[a][b]})


class FormMatrix:
    """Skew-symmetric r x r matrix of 2-forms (upper triangle stored)."""

    def __init__(self, r: int, upper: dict[tuple[int, int], ExteriorForm], n: int):
        self.r = r
        self.n = n
        self._upper = {}
        for (a, b), f in upper.items():
            if not 0 <= a < b < r:
                raise ValueError(f"entry ({a}, {b}) is not strictly upper-triangular")
            if f.k != 2 or f.n != n:
                raise ValueError("entries must be 2-forms in the common dimension")
            self._upper[(a, b)] = f

    def __getitem__(self, ab: tuple[int, int]) -> ExteriorForm:
        a, b = ab
        if a == b:
            return ExteriorForm.zero(self.n, 2)
        if a < b:
            return self._upper.get((a, b), ExteriorForm.zero(self.n, 2))
        return -self._upper.get((b, a), ExteriorForm.zero(self.n, 2))

    def upper(self):
        """Yield ``((a, b), form)`` for ``a < b`` (0-based)."""
        for a, b in itertools.combinations(range(self.r), 2):
            yield (a, b), self[a, b]

    def conjugate_by(self, g) -> FormMatrix:
        """``g M g^T`` for a constant r x r matrix ``g``."""
        r = self.r
        out = {}
        for a, b in itertools.combinations(range(r), 2):
            acc = ExteriorForm.zero(self.n, 2)
            for c in range(r):
                if not g[a][c]:
                    continue
                for d in range(r):
                    if g[b][d] and c != d:
                        acc = acc + self[c, d] * (Fraction(g[a][c]) * Fraction(g[b][d]))
            out[(a, b)] = acc
        return FormMatrix(r, out, self.n)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "entries": [{"row": a + 1, "col": b + 1, "form": f.to_dict()} for (a, b), f in self.upper()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def composition_form_matrix(cs: CliffordSystem | Sequence) -> FormMatrix:
    """Kaehler forms of ``I_a I_b`` for ``a < b``."""
    mats = cs.involutions if isinstance(cs, CliffordSystem) else cs
    mats = [[list(r) for r in m] for m in mats]
    n = len(mats[0])
    upper = {}
    for a, b in itertools.combinations(range(len(mats)), 2):
        try:
            upper[(a, b)] = kaehler_form(matmul(mats[a], mats[b]))
        except ValueError as exc:
            raise ValueError(f"I_{a + 1} I_{b + 1} is not a complex structure: {exc}") from None
    return FormMatrix(len(mats), upper, n)


def generator_form_matrix(generators: Sequence) -> FormMatrix:
    """Form matrix of ``J_a J_b`` for complex structures with ``J_0 = Id`` allowed.

    Used for even Clifford structures whose generators are not involutions;
    an identity generator contributes ``kaehler_form(J_b)`` in its row.
    """
    gens = [[list(map(Fraction, r)) for r in m] for m in generators]
    n = len(gens[0])
    eye = identity(n)
    upper = {}
    for a, b in itertools.combinations(range(len(gens)), 2):
        if gens[a] == eye:
            upper[(a, b)] = kaehler_form(gens[b])
        else:
            upper[(a, b)] = kaehler_form(matmul(gens[a], gens[b]))
    return FormMatrix(len(gens), upper, n)


def tau2(fm: FormMatrix) -> ExteriorForm:
    """Second characteristic coefficient: ``sum_{a<b} m_ab ^ m_ab``."""
    out = ExteriorForm.zero(fm.n, 4)
    for _, f in fm.upper():
        if f:
            out = out + wedge(f, f)
    return out


# permutations of 4 without fixed points; the others vanish on a zero diagonal
_DERANGEMENTS = [
    (p, -1 if sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2 else 1)
    for p in itertools.permutations(range(4))
    if all(p[i] != i for i in range(4))
]


def tau4(fm: FormMatrix) -> ExteriorForm:
    """Fourth characteristic coefficient: sum of principal 4x4 minors.

    Each minor is the Leibniz expansion; entries are 2-forms, which commute,
    so the ordering of factors is irrelevant. Products of entry pairs are
    cached across minors.
    """
    n = fm.n
    out = ExteriorForm.zero(n, 8)
    pair_cache: dict = {}

    def pair(x, y):
        key = (x, y) if x <= y else (y, x)
        if key not in pair_cache:
            f, g = fm[key[0]], fm[key[1]]
            pair_cache[key] = wedge(f, g) if f and g else ExteriorForm.zero(n, 4)
        return pair_cache[key]

    for S in itertools.combinations(range(fm.r), 4):
        for p, sgn in _DERANGEMENTS:
            entries = [(S[t], S[p[t]]) for t in range(4)]
            # normalise each entry to the upper triangle
            sign = sgn
            keys = []
            for a, b in entries:
                if a > b:
                    a, b = b, a
                    sign = -sign
                keys.append((a, b))
            left_, right_ = pair(keys[0], keys[1]), pair(keys[2], keys[3])
            if left_ and right_:
                out = out + wedge(left_, right_) * sign
    return out


def pfaffian4(fm: FormMatrix, S: Sequence[int]) -> ExteriorForm:
    """Pfaffian of the principal 4x4 submatrix on indices ``S``."""
    a, b, c, d = S
    return (
        wedge(fm[a, b], fm[c, d]) - wedge(fm[a, c], fm[b, d]) + wedge(fm[a, d], fm[b, c])
    )
