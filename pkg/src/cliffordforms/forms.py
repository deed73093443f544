"""Named calibrations built from first principles, and their identities.

Every form here is computed from module ``algebra`` and ``clifford``
constructions; the shipped golden files are only used for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .algebra import Hypercomplex, bryant_harvey_L, cd_multiply, left, right
from .clifford import (
    build_clifford_system,
    composition_form_matrix,
    generator_form_matrix,
    kaehler_form,
    tau2,
    tau4,
)
from .exterior import (
    ExteriorForm,
    NotFound,
    SignedPermutation,
    find_signed_permutation,
    pullback,
)

__all__ = [
    "IMAGINARY_UNITS",
    "NamedForm",
    "NAMED_FORMS",
    "named_form",
    "cayley_calibration",
    "cayley_calibration_from_phi",
    "cayley_calibration_from_zeta",
    "phi_forms",
    "zeta_forms",
    "theta_forms",
    "eta_forms",
    "quaternionic_forms",
    "bryant_harvey_form",
    "verify_pullback",
    "check_omega_from_spin7",
    "check_spin7_from_eta",
    "check_even_clifford_rows",
    "phi_spin8",
    "phi_spin7u1",
    "phi_spin7u1_normalized",
    "tau4_spin9",
    "factor_as_square",
]

IMAGINARY_UNITS = ("i", "j", "k", "e", "f", "g", "h")


def _blockdiag(m) -> list[list[Fraction]]:
    size = len(m)
    z = [Fraction(0)] * size
    return [list(r) + z for r in m] + [z + list(r) for r in m]


# ---------------------------------------------------------------- R^8 pieces


@lru_cache(maxsize=None)
def phi_forms() -> dict[str, ExteriorForm]:
    """Kaehler forms of right multiplication by the imaginary units of O."""
    return {u: kaehler_form(right(u)) for u in IMAGINARY_UNITS}


def _zeta(units) -> dict[tuple[int, int], ExteriorForm]:
    fm = generator_form_matrix([right(u) for u in units])
    return {(a + 1, b + 1): f for (a, b), f in fm.upper()}


@lru_cache(maxsize=None)
def zeta_forms() -> dict[tuple[int, int], ExteriorForm]:
    """Kaehler forms of ``R_a R_b`` for the seven imaginary units (21 forms)."""
    return _zeta(IMAGINARY_UNITS)


@lru_cache(maxsize=None)
def theta_forms() -> dict[tuple[int, int], ExteriorForm]:
    fm = composition_form_matrix(build_clifford_system("quat-right-r5"))
    return {(a + 1, b + 1): f for (a, b), f in fm.upper()}


@lru_cache(maxsize=None)
def eta_forms() -> dict[tuple[int, int], ExteriorForm]:
    fm = composition_form_matrix(build_clifford_system("quat-left-r5"))
    return {(a + 1, b + 1): f for (a, b), f in fm.upper()}


@lru_cache(maxsize=None)
def _unit_product(a: int, b: int) -> tuple[int, int]:
    # u_a u_b = sign * u_c for basis units, read off cd_multiply
    basis = [Hypercomplex(3, tuple(int(r == c) for c in range(8))) for r in range(8)]
    p = cd_multiply(basis[a], basis[b])
    c = next(t for t, v in enumerate(p.coeffs) if v)
    return int(p.coeffs[c]), c


def _triple(x: int, y: int, z: int, w: int) -> int:
    # <u_x, u_y (conj(u_z) u_w)> on basis units
    sz = 1 if z == 0 else -1
    s1, zw = _unit_product(z, w)
    s2, p = _unit_product(y, zw)
    return sz * s1 * s2 if p == x else 0


_PERM4 = [
    (p, -1 if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 else 1)
    for p in itertools.permutations(range(4))
]


@lru_cache(maxsize=1)
def cayley_calibration() -> ExteriorForm:
    """Alternation of ``<x, y (conj(z) w)>``, scaled to be 1 on ``e1..e4``."""
    terms = {}
    for quad in itertools.combinations(range(8), 4):
        v = Fraction(0)
        for p, s in _PERM4:
            v += s * _triple(*(quad[t] for t in p))
        if v:
            terms[tuple(q + 1 for q in quad)] = v
    form = ExteriorForm(8, 4, terms)
    return form / form.coeff(1, 2, 3, 4)


def cayley_calibration_from_phi() -> ExteriorForm:
    """``-(1/6) sum_u phi_u ^ phi_u``."""
    return sum((p ^ p for p in phi_forms().values()), ExteriorForm.zero(8, 4)) * Fraction(-1, 6)


def cayley_calibration_from_zeta() -> ExteriorForm:
    """``(1/6) sum_{a<b} zeta_ab ^ zeta_ab``."""
    return sum((z ^ z for z in zeta_forms().values()), ExteriorForm.zero(8, 4)) * Fraction(1, 6)


# ---------------------------------------------------------------- H^2 pieces


def _quaternionic(mult) -> ExteriorForm:
    return sum(
        (kaehler_form(_blockdiag(mult(u, 2))) ** 2 for u in "ijk"),
        ExteriorForm.zero(8, 4),
    )


@lru_cache(maxsize=1)
def quaternionic_forms() -> tuple[ExteriorForm, ExteriorForm]:
    """``(Omega_L, Omega_R)``: sums of squares of the left / right Kaehler forms on H^2."""
    return _quaternionic(left), _quaternionic(right)


@lru_cache(maxsize=1)
def bryant_harvey_form() -> ExteriorForm:
    """``-1/2 w_Ri^2 - 1/2 w_Rj^2 + 1/2 w_Rk^2`` on H^2."""
    w = {u: kaehler_form(_blockdiag(right(u, 2))) for u in "ijk"}
    return (w["k"] ** 2 - w["i"] ** 2 - w["j"] ** 2) * Fraction(1, 2)


def verify_pullback() -> bool:
    return pullback(cayley_calibration(), bryant_harvey_L()) == bryant_harvey_form()


# ---------------------------------------------------------------- identities


def _sum_sq(forms, signs=None) -> ExteriorForm:
    forms = list(forms)
    signs = signs or [1] * len(forms)
    out = ExteriorForm.zero(forms[0].n, 4)
    for s, f in zip(signs, forms):
        out = out + (f ^ f) * s
    return out


@dataclass
class SubsetResult:
    units: tuple[str, ...]
    multiset_match: bool
    witness: SignedPermutation | NotFound

    @property
    def ok(self) -> bool:
        return bool(self.witness)

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, SignedPermutation):
            detail = {"perm": list(w.perm), "signs": list(w.signs)}
        else:
            detail = {"nodes": w.nodes, "exhausted": w.exhausted}
        return {"units": "".join(self.units), "multiset_match": self.multiset_match, "ok": self.ok, "witness": detail}


@dataclass
class OmegaReport:
    """Outcome of the two constructions of Omega_R and Omega_L from octonions."""

    printed_factor_holds: bool
    factor: Fraction | None
    subsets: list[SubsetResult] = field(default_factory=list)

    @property
    def subsets_ok(self) -> bool:
        return len(self.subsets) == 21 and all(s.ok for s in self.subsets)

    @property
    def ok(self) -> bool:
        return self.printed_factor_holds and self.subsets_ok

    def to_dict(self) -> dict:
        return {
            "printed_factor_holds": self.printed_factor_holds,
            "factor": None if self.factor is None else str(self.factor),
            "subsets": [s.to_dict() for s in self.subsets],
            "ok": self.ok,
        }


def _ratio(a: ExteriorForm, b: ExteriorForm) -> Fraction | None:
    """``c`` with ``a == c * b`` if one exists."""
    if not b:
        return None
    key, cb = next(iter(b.items()))
    c = a.coeff(*key) / cb
    return c if a == b * c else None


def check_omega_from_spin7(budget: int = 2_000_000) -> OmegaReport:
    """Omega_R from the signed squares of phi, and Omega_L from five of the R_u.

    The signed sum ``phi_i^2 + phi_j^2 + phi_k^2 - phi_e^2 - ... - phi_h^2`` is
    compared with ``Omega_R / 2`` (the printed factor) and the actual ratio is
    reported. For each five-element subset of the seven ``R_u`` a signed
    coordinate permutation carrying ``-1/2 sum zeta^2`` to ``Omega_L`` is
    searched for.
    """
    omega_l, omega_r = quaternionic_forms()
    ph = phi_forms()
    signed = _sum_sq([ph[u] for u in IMAGINARY_UNITS], [1, 1, 1, -1, -1, -1, -1])
    rep = OmegaReport(omega_r == signed * 2, _ratio(omega_r, signed))
    target_abs = sorted(abs(c) for _, c in omega_l.items())
    for units in itertools.combinations(IMAGINARY_UNITS, 5):
        cand = _sum_sq(_zeta(units).values()) * Fraction(-1, 2)
        match = sorted(abs(c) for _, c in cand.items()) == target_abs
        rep.subsets.append(SubsetResult(units, match, find_signed_permutation(cand, omega_l, budget)))
    return rep


# the printed sign pattern on the ten eta squares
ETA_SIGNS = {
    (1, 2): 1, (1, 3): 1, (2, 4): 1, (3, 4): 1,
    (2, 3): -1, (1, 4): -1, (1, 5): -1, (2, 5): -1, (3, 5): -1, (4, 5): -1,
}


@dataclass
class EtaReport:
    quarter_sum_holds: bool
    half_sum_holds: bool
    patterns: list[tuple[tuple[int, int], ...]]

    @property
    def unique(self) -> bool:
        return len(self.patterns) == 1

    @property
    def ok(self) -> bool:
        return self.quarter_sum_holds and self.half_sum_holds and self.unique

    def to_dict(self) -> dict:
        return {
            "quarter_sum_holds": self.quarter_sum_holds,
            "half_sum_holds": self.half_sum_holds,
            "patterns": [["".join(map(str, p)) for p in pat] for pat in self.patterns],
            "unique": self.unique,
            "ok": self.ok,
        }


def check_spin7_from_eta() -> EtaReport:
    """Cayley form and Omega_R as signed sums of the ten eta squares.

    ``patterns`` lists, up to an overall sign, every choice of signs on the
    ten squares whose quarter-sum is the Cayley form; each pattern is given
    by its positive pairs.
    """
    eta = eta_forms()
    pairs = sorted(eta)
    sq = {p: eta[p] ^ eta[p] for p in pairs}
    spin7 = cayley_calibration()
    _, omega_r = quaternionic_forms()
    quarter = sum((sq[p] * ETA_SIGNS[p] for p in pairs), ExteriorForm.zero(8, 4)) * Fraction(1, 4)
    half = sum(sq.values(), ExteriorForm.zero(8, 4)) * Fraction(-1, 2)

    # dense integer vectors make the 2^10 sweep cheap
    keys = sorted({key for f in sq.values() for key, _ in f.items()} | {key for key, _ in spin7.items()})
    vec = {p: [sq[p].coeff(*key) for key in keys] for p in pairs}
    target = [4 * spin7.coeff(*key) for key in keys]
    found = []
    for bits in itertools.product((1, -1), repeat=len(pairs) - 1):
        signs = (1,) + bits
        for overall in (1, -1):
            tot = [sum(overall * s * vec[p][t] for s, p in zip(signs, pairs)) for t in range(len(keys))]
            if tot == target:
                found.append(tuple(p for s, p in zip(signs, pairs) if s * overall > 0))
    return EtaReport(quarter == spin7, half == omega_r, found)


# ---------------------------------------------------------------- even Clifford rows


def factor_as_square(form: ExteriorForm) -> tuple[Fraction, ExteriorForm] | None:
    """Find ``(c, sigma)`` with ``form == c * sigma ^ sigma`` and ``sigma`` a
    sum of ``n/2`` disjoint unit-coefficient monomials (a Kaehler-type form).

    Brute force over perfect matchings and signs; ``sigma`` has a positive
    first coefficient. Returns ``None`` when no such factorisation exists.
    """
    n = form.n

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for t in range(1, len(rest)):
            b = rest[t]
            for m in matchings(rest[1:t] + rest[t + 1:]):
                yield [(a, b)] + m

    for m in matchings(list(range(1, n + 1))):
        for signs in itertools.product((1, -1), repeat=len(m) - 1):
            sigma = ExteriorForm(n, 2, {pr: s for pr, s in zip(m, (1,) + signs)})
            c = _ratio(form, sigma ^ sigma)
            if c is not None and c != 0:
                return c, sigma
    return None


@dataclass
class RowReport:
    r8_zero: bool
    r7_is_spin7: bool
    r6_factor: Fraction | None
    r6_sigma: ExteriorForm | None
    r6_sigma_name: str | None

    @property
    def ok(self) -> bool:
        return self.r8_zero and self.r7_is_spin7 and self.r6_factor == -5

    def to_dict(self) -> dict:
        return {
            "r8_zero": self.r8_zero,
            "r7_is_spin7": self.r7_is_spin7,
            "r6_factor": None if self.r6_factor is None else str(self.r6_factor),
            "r6_sigma": None if self.r6_sigma is None else self.r6_sigma.to_dict(),
            "r6_sigma_name": self.r6_sigma_name,
            "ok": self.ok,
        }


@lru_cache(maxsize=1)
def _row_forms() -> tuple[ExteriorForm, ExteriorForm, ExteriorForm]:
    gens = [right(u) for u in IMAGINARY_UNITS]
    eye = [[Fraction(int(r == c)) for c in range(8)] for r in range(8)]
    r8 = tau2(generator_form_matrix([eye] + gens))
    r7 = tau2(generator_form_matrix(gens))
    r6 = tau2(generator_form_matrix(gens[:6]))
    return r8, r7, r6


def check_even_clifford_rows() -> RowReport:
    """tau_2 for the even Clifford structures of rank 8, 7 and 6 on R^8."""
    r8, r7, r6 = _row_forms()
    fac = factor_as_square(r6)
    name = None
    if fac is not None:
        for u, p in phi_forms().items():
            if fac[1] == p or fac[1] == -p:
                name = f"{'' if fac[1] == p else '-'}phi_{u}"
    return RowReport(
        r8_zero=not r8,
        r7_is_spin7=r7 * Fraction(1, 6) == cayley_calibration(),
        r6_factor=None if fac is None else fac[0],
        r6_sigma=None if fac is None else fac[1],
        r6_sigma_name=name,
    )


# ---------------------------------------------------------------- R^16


@lru_cache(maxsize=1)
def phi_spin8() -> ExteriorForm:
    """``1/4 tau_2`` of the rank-8 octonionic Pauli system."""
    return tau2(composition_form_matrix(build_clifford_system("oct-r8"))) * Fraction(1, 4)


@lru_cache(maxsize=1)
def phi_spin7u1() -> ExteriorForm:
    """``tau_2`` of the rank-7 octonionic Pauli system (not normalised)."""
    return tau2(composition_form_matrix(build_clifford_system("oct-r7")))


def phi_spin7u1_normalized() -> ExteriorForm:
    """``phi_spin7u1 / 6``, which restricts to the Cayley form on each summand."""
    return phi_spin7u1() * Fraction(1, 6)


@lru_cache(maxsize=1)
def tau4_spin9() -> ExteriorForm:
    """``tau_4`` of the rank-9 octonionic Pauli system, an 8-form on R^16."""
    return tau4(composition_form_matrix(build_clifford_system("oct-r9")))


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class NamedForm:
    key: str
    form: ExteriorForm
    provenance: str


def _psiD_tau2() -> ExteriorForm:
    return tau2(composition_form_matrix(build_clifford_system("oct-r9")))


NAMED_FORMS: dict[str, tuple[Callable[[], ExteriorForm], str]] = {
    "phi_K": (bryant_harvey_form, "-1/2 w_Ri^2 - 1/2 w_Rj^2 + 1/2 w_Rk^2 on H^2"),
    "omega_L": (lambda: quaternionic_forms()[0], "w_Li^2 + w_Lj^2 + w_Lk^2 on H^2"),
    "omega_R": (lambda: quaternionic_forms()[1], "w_Ri^2 + w_Rj^2 + w_Rk^2 on H^2"),
    "phi_spin7": (cayley_calibration, "alternation of <x, y(conj(z) w)>, normalised"),
    "phi_spin6": (lambda: _row_forms()[2], "tau_2 of the Kaehler forms of R_a R_b, a < b among i..f"),
    "phi_so8": (lambda: _row_forms()[0], "tau_2 of the generator matrix (Id, R_i, ..., R_h)"),
    "phi_spin8": (phi_spin8, "1/4 tau_2 of oct-r8"),
    "phi_spin7u1": (phi_spin7u1, "tau_2 of oct-r7"),
    "phi_spin7u1_normalized": (phi_spin7u1_normalized, "1/6 tau_2 of oct-r7"),
    "tau2_psiD": (_psiD_tau2, "tau_2 of oct-r9"),
    "tau4_spin9": (tau4_spin9, "tau_4 of oct-r9"),
    "dx1234": (lambda: ExteriorForm.basis(8, 1, 2, 3, 4), "dx_1 ^ dx_2 ^ dx_3 ^ dx_4 on R^8"),
    "zero": (lambda: ExteriorForm.zero(8, 4), "zero 4-form on R^8"),
}


def named_form(key: str) -> NamedForm:
    if key not in NAMED_FORMS:
        raise KeyError(f"unknown form {key!r}; known: {', '.join(NAMED_FORMS)}")
    build, prov = NAMED_FORMS[key]
    return NamedForm(key, build(), prov)
