"""Cayley-Dickson algebras R, C, H, O with exact rational coefficients.

Basis order at level 3 is ``1, i, j, k, e, f, g, h`` with ``e = (0, 1)``,
``f = i e``, ``g = j e``, ``h = k e``. Coordinates ``x_1..x_8`` of R^8 follow
this order, and an octonion ``h1 + h2 e`` has ``h1`` in ``x_1..x_4`` and
``h2`` in ``x_5..x_8``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Hypercomplex",
    "MultOperator",
    "UNIT_NAMES",
    "unit",
    "cd_multiply",
    "conjugate",
    "associator",
    "mult_operator",
    "bryant_harvey_L",
    "multiplication_table",
    "right",
    "left",
    "matmul",
    "matvec",
    "transpose",
    "identity",
]

UNIT_NAMES = ("1", "i", "j", "k", "e", "f", "g", "h")
MAX_LEVEL = 3


@dataclass(frozen=True)
class Hypercomplex:
    level: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f"level must be 0..{MAX_LEVEL}, got {self.level}")
        if len(self.coeffs) != 2**self.level:
            raise ValueError(f"level {self.level} needs {2**self.level} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Sequence, level: int | None = None) -> Hypercomplex:
        coeffs = tuple(coeffs)
        if level is None:
            level = len(coeffs).bit_length() - 1
        return cls(level, coeffs)

    @classmethod
    def zero(cls, level: int = 3) -> Hypercomplex:
        return cls(level, (0,) * 2**level)

    @classmethod
    def one(cls, level: int = 3) -> Hypercomplex:
        return cls(level, (1,) + (0,) * (2**level - 1))

    def halves(self) -> tuple[Hypercomplex, Hypercomplex]:
        h = len(self.coeffs) // 2
        return Hypercomplex(self.level - 1, self.coeffs[:h]), Hypercomplex(self.level - 1, self.coeffs[h:])

    @classmethod
    def join(cls, a: Hypercomplex, b: Hypercomplex) -> Hypercomplex:
        return cls(a.level + 1, a.coeffs + b.coeffs)

    def __add__(self, other: Hypercomplex) -> Hypercomplex:
        _same(self, other)
        return Hypercomplex(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Hypercomplex) -> Hypercomplex:
        _same(self, other)
        return Hypercomplex(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Hypercomplex:
        return Hypercomplex(self.level, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> Hypercomplex:
        if isinstance(other, Hypercomplex):
            return cd_multiply(self, other)
        s = Fraction(other)
        return Hypercomplex(self.level, tuple(s * a for a in self.coeffs))

    def __rmul__(self, other) -> Hypercomplex:
        s = Fraction(other)
        return Hypercomplex(self.level, tuple(s * a for a in self.coeffs))

    def conj(self) -> Hypercomplex:
        return conjugate(self)

    def norm2(self) -> Fraction:
        return sum((a * a for a in self.coeffs), Fraction(0))

    @property
    def real(self) -> Fraction:
        return self.coeffs[0]

    def is_real(self) -> bool:
        return not any(self.coeffs[1:])

    def is_imaginary(self) -> bool:
        return self.coeffs[0] == 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        names = UNIT_NAMES[: 2**self.level]
        parts = [f"{c}{'' if n == '1' else n}" for c, n in zip(self.coeffs, names) if c]
        return " + ".join(parts) if parts else "0"


def _same(x: Hypercomplex, y: Hypercomplex) -> None:
    if x.level != y.level:
        raise ValueError(f"level mismatch: {x.level} vs {y.level}")


def unit(name: str, level: int = 3) -> Hypercomplex:
    """Basis unit by name (``'1'``, ``'i'``, ... ``'h'``)."""
    pos = UNIT_NAMES.index(name)
    if pos >= 2**level:
        raise ValueError(f"unit {name!r} does not exist at level {level}")
    c = [0] * 2**level
    c[pos] = 1
    return Hypercomplex(level, tuple(c))


def conjugate(x: Hypercomplex) -> Hypercomplex:
    return Hypercomplex(x.level, (x.coeffs[0],) + tuple(-c for c in x.coeffs[1:]))


def cd_multiply(x: Hypercomplex, y: Hypercomplex) -> Hypercomplex:
    """Cayley-Dickson product ``(a, b)(c, d) = (ac - conj(d) b, b conj(c) + d a)``."""
    _same(x, y)
    if x.level == 0:
        return Hypercomplex(0, (x.coeffs[0] * y.coeffs[0],))
    a, b = x.halves()
    c, d = y.halves()
    return Hypercomplex.join(
        cd_multiply(a, c) - cd_multiply(conjugate(d), b),
        cd_multiply(b, conjugate(c)) + cd_multiply(d, a),
    )


def associator(x: Hypercomplex, y: Hypercomplex, z: Hypercomplex) -> Hypercomplex:
    return cd_multiply(cd_multiply(x, y), z) - cd_multiply(x, cd_multiply(y, z))


# small exact matrix helpers; matrices are lists of rows


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]


def matmul(a, b) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(a) -> list[list]:
    return [list(r) for r in zip(*a)]


def matvec(a, v) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


@dataclass(frozen=True)
class MultOperator:
    side: str
    unit: Hypercomplex
    matrix: tuple[tuple[Fraction, ...], ...]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.matrix]


def mult_operator(side: str, u: Hypercomplex, level: int | None = None) -> MultOperator:
    """Matrix of ``y -> y u`` (side ``'right'``) or ``y -> u y`` (``'left'``).

    Column ``c`` is the image of the ``c``-th basis element.
    """
    side = side.lower()
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    level = u.level if level is None else level
    if u.level != level:
        raise ValueError(f"unit has level {u.level}, operator requested at level {level}")
    if u.norm2() != 1:
        raise ValueError("multiplication operators are built for unit-norm elements only")
    size = 2**level
    cols = []
    for c in range(size):
        b = [0] * size
        b[c] = 1
        basis = Hypercomplex(level, tuple(b))
        img = cd_multiply(basis, u) if side == "right" else cd_multiply(u, basis)
        cols.append(img.coeffs)
    matrix = tuple(tuple(cols[c][r] for c in range(size)) for r in range(size))
    return MultOperator(side, u, matrix)


def right(name: str, level: int = 3) -> list[list[Fraction]]:
    return mult_operator("right", unit(name, level)).rows()


def left(name: str, level: int = 3) -> list[list[Fraction]]:
    return mult_operator("left", unit(name, level)).rows()


def bryant_harvey_L() -> list[list[Fraction]]:
    """8x8 matrix of ``(h1, h2) -> h1 + (k h2 conj(k)) e`` from H^2 to O.

    Domain coordinates are ``h1`` then ``h2`` (four each); target coordinates
    are the octonion basis ``1, i, ..., h``.
    """
    k = unit("k", 2)
    kbar = conjugate(k)
    cols = []
    for c in range(8):
        b = [0] * 8
        b[c] = 1
        h1 = Hypercomplex(2, tuple(b[:4]))
        h2 = Hypercomplex(2, tuple(b[4:]))
        img = Hypercomplex.join(h1, cd_multiply(cd_multiply(k, h2), kbar))
        cols.append(img.coeffs)
    return [[cols[c][r] for c in range(8)] for r in range(8)]


def multiplication_table(level: int = 3) -> list[list[str]]:
    """Signed unit table: entry ``[r][c]`` is the product ``u_r u_c`` as ``'+k'``, ``'-1'``..."""
    size = 2**level
    names = UNIT_NAMES[:size]
    table = []
    for r in range(size):
        row = []
        for c in range(size):
            p = cd_multiply(unit(names[r], level), unit(names[c], level))
            pos = next(t for t, v in enumerate(p.coeffs) if v)
            row.append(("+" if p.coeffs[pos] > 0 else "-") + names[pos])
        table.append(row)
    return table


def multiplication_table_json(level: int = 3) -> str:
    size = 2**level
    return json.dumps({"basis": list(UNIT_NAMES[:size]), "table": multiplication_table(level)})
