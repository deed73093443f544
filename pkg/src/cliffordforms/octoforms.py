"""Octonion-valued constant-coefficient forms on R^16 = O + O'.

Coefficients multiply left to right in the order the factors are written;
with a non-associative coefficient algebra the parenthesisation of nested
products matters and is taken literally.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import UNIT_NAMES, Hypercomplex, cd_multiply, unit
from .exterior import ExteriorForm, sort_sign

__all__ = [
    "OctonionValuedForm",
    "octo_wedge",
    "dx",
    "dx_bar",
    "remark_spin8",
    "remark_spin7u1",
    "verify_remark",
    "RemarkReport",
]

N = 16


@lru_cache(maxsize=1)
def _unit_table():
    # (sign, index) of u_a * u_b, read off cd_multiply once
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            p = cd_multiply(unit(UNIT_NAMES[a]), unit(UNIT_NAMES[b]))
            pos = next(t for t, v in enumerate(p.coeffs) if v)
            row.append((int(p.coeffs[pos]), pos))
        table.append(row)
    return table


def _omul(x: tuple, y: tuple) -> tuple:
    table = _unit_table()
    out = [Fraction(0)] * 8
    for a, xa in enumerate(x):
        if not xa:
            continue
        row = table[a]
        for b, yb in enumerate(y):
            if yb:
                s, c = row[b]
                out[c] += s * xa * yb
    return tuple(out)


class OctonionValuedForm:
    """k-form on R^16 whose coefficients are octonions."""

    __slots__ = ("k", "_terms")

    def __init__(self, k: int, terms: dict | None = None):
        self.k = k
        acc: dict[tuple[int, ...], list] = {}
        for idx, c in (terms or {}).items():
            if len(idx) != k or any(not 1 <= i <= N for i in idx):
                raise ValueError(f"bad index {idx!r} for a {k}-form on R^{N}")
            s, key = sort_sign(idx)
            if s == 0:
                continue
            coeffs = c.coeffs if isinstance(c, Hypercomplex) else tuple(Fraction(v) for v in c)
            cur = acc.setdefault(key, [Fraction(0)] * 8)
            for t in range(8):
                cur[t] += s * coeffs[t]
        self._terms = {key: tuple(v) for key, v in sorted(acc.items()) if any(v)}

    @classmethod
    def _raw(cls, k, terms):
        obj = cls.__new__(cls)
        obj.k = k
        obj._terms = {key: v for key, v in sorted(terms.items()) if any(v)}
        return obj

    def items(self):
        for key, v in self._terms.items():
            yield key, Hypercomplex(3, v)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, OctonionValuedForm) and self.k == other.k and self._terms == other._terms

    def __add__(self, other: OctonionValuedForm) -> OctonionValuedForm:
        if self.k != other.k:
            raise ValueError("degree mismatch")
        acc = dict(self._terms)
        for key, v in other._terms.items():
            cur = acc.get(key)
            acc[key] = v if cur is None else tuple(a + b for a, b in zip(cur, v))
        return OctonionValuedForm._raw(self.k, acc)

    def __neg__(self):
        return OctonionValuedForm._raw(self.k, {key: tuple(-a for a in v) for key, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return OctonionValuedForm._raw(self.k, {key: tuple(s * a for a in v) for key, v in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return octo_wedge(self, other)

    def component(self, t: int) -> ExteriorForm:
        """Real form multiplying the ``t``-th basis unit (0 is the real part)."""
        return ExteriorForm(N, self.k, {key: v[t] for key, v in self._terms.items() if v[t]})

    def real_part(self) -> ExteriorForm:
        return self.component(0)

    def is_real(self) -> bool:
        return all(not any(v[1:]) for v in self._terms.values())

    def conj(self) -> OctonionValuedForm:
        return OctonionValuedForm._raw(
            self.k, {key: (v[0],) + tuple(-a for a in v[1:]) for key, v in self._terms.items()}
        )


def octo_wedge(a: OctonionValuedForm, b: OctonionValuedForm) -> OctonionValuedForm:
    """``a ^ b`` with coefficient products ``coeff(a) * coeff(b)`` in that order."""
    if a.k + b.k > N:
        raise ValueError("degree exceeds 16")
    acc: dict[tuple[int, ...], list] = {}
    for ia, ca in a._terms.items():
        sa = set(ia)
        for ib, cb in b._terms.items():
            if not sa.isdisjoint(ib):
                continue
            s, key = sort_sign(ia + ib)
            prod = _omul(ca, cb)
            cur = acc.setdefault(key, [Fraction(0)] * 8)
            for t in range(8):
                if prod[t]:
                    cur[t] += s * prod[t]
    return OctonionValuedForm._raw(a.k + b.k, {key: tuple(v) for key, v in acc.items()})


def dx(primed: bool = False) -> OctonionValuedForm:
    """``dx = sum_a u_a dx_a`` over the unprimed (or primed) block."""
    off = 8 if primed else 0
    return OctonionValuedForm(1, {(a + 1 + off,): unit(UNIT_NAMES[a]) for a in range(8)})


def dx_bar(primed: bool = False) -> OctonionValuedForm:
    return dx(primed).conj()


class RemarkReport(dict):
    @property
    def ok(self) -> bool:
        return all(v for key, v in self.items() if key.endswith("_real") or key.endswith("_equal"))


def remark_spin8() -> OctonionValuedForm:
    """``1/4 (conj(dx) ^ dx') ^ (conj(dx') ^ dx)``."""
    a = octo_wedge(dx_bar(), dx(True))
    b = octo_wedge(dx_bar(True), dx())
    return octo_wedge(a, b) * Fraction(1, 4)


def remark_spin7u1() -> OctonionValuedForm:
    """``1/4[(x̄x)^2 + (x̄'x')^2] - 1/2[(x̄x')^2 + (x̄'x)^2] - (x̄x')(x̄'x)`` with wedge products."""
    t00 = octo_wedge(dx_bar(), dx())
    t11 = octo_wedge(dx_bar(True), dx(True))
    t01 = octo_wedge(dx_bar(), dx(True))
    t10 = octo_wedge(dx_bar(True), dx())
    sq = lambda t: octo_wedge(t, t)  # noqa: E731
    return (
        (sq(t00) + sq(t11)) * Fraction(1, 4)
        - (sq(t01) + sq(t10)) * Fraction(1, 2)
        - octo_wedge(t01, t10)
    )


def verify_remark(phi_spin8: ExteriorForm, phi_spin7u1: ExteriorForm) -> RemarkReport:
    s8 = remark_spin8()
    s7 = remark_spin7u1()
    # if the second identity fails, say how far off it is in units of phi_spin8
    residual = s7.real_part() - phi_spin7u1
    offset = None
    if residual and phi_spin8:
        key, c8 = next(iter(phi_spin8.items()))
        c = residual.coeff(*key) / c8
        if residual == phi_spin8 * c:
            offset = c
    return RemarkReport(
        spin8_real=s8.is_real(),
        spin8_equal=s8.real_part() == phi_spin8,
        spin7u1_real=s7.is_real(),
        spin7u1_equal=s7.real_part() == phi_spin7u1,
        spin8_terms=len(s8),
        spin7u1_terms=len(s7),
        spin7u1_offset=None if offset is None else str(offset),
    )
