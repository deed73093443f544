"""The identity suite behind ``cliffordforms verify``."""

from __future__ import annotations

import fnmatch
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .algebra import left, unit
from .clifford import (
    CATALOG,
    build_clifford_system,
    composition_form_matrix,
    kaehler_form,
    tau2,
    verify_clifford_system,
)
from .exterior import ExteriorForm, hodge_star, span_dimension
from .forms import (
    _blockdiag,
    cayley_calibration,
    cayley_calibration_from_phi,
    cayley_calibration_from_zeta,
    check_even_clifford_rows,
    check_omega_from_spin7,
    check_spin7_from_eta,
    eta_forms,
    phi_forms,
    phi_spin7u1,
    phi_spin7u1_normalized,
    phi_spin8,
    quaternionic_forms,
    tau4_spin9,
    theta_forms,
    verify_pullback,
    zeta_forms,
)
from .notation import load_golden
from .octoforms import verify_remark
from .planes import FourPlane, calibration_value, cayley_plane_in_line, octonionic_line, transversal_cayley_plane

__all__ = ["CheckResult", "VerifySuiteResult", "run_suite", "check_ids"]


@dataclass
class CheckResult:
    id: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "detail": self.detail}


@dataclass
class VerifySuiteResult:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "overall": "pass" if self.passed else "fail",
            "passed": sum(r.passed for r in self.results),
            "failed": sum(not r.passed for r in self.results),
            "results": [r.to_dict() for r in self.results],
        }


def _mismatch(a: ExteriorForm, b: ExteriorForm) -> str:
    if a == b:
        return ""
    diff = a - b
    return f"{len(diff)} coefficients differ, e.g. {next(iter(diff.items()))}"


def _unit_vectors(*rows: int, n: int = 16) -> FourPlane:
    return FourPlane(n, tuple(tuple(int(c == r - 1) for c in range(n)) for r in rows))


def _checks(golden: dict[str, ExteriorForm]) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    checks: list[tuple[str, Callable]] = []

    def add(cid):
        def deco(fn):
            checks.append((cid, fn))
            return fn

        return deco

    for name in CATALOG:
        def axioms(name=name):
            rep = verify_clifford_system(build_clifford_system(name))
            return rep.ok, f"rank {rep.rank}"

        checks.append((f"clifford.axioms.{name}", axioms))

    def golden_group(computed: Callable[[], dict]):
        def run():
            comp = computed()
            bad = [k for k, f in comp.items() if golden.get(k) != f]
            return not bad, ("mismatch: " + ", ".join(bad)) if bad else f"{len(comp)} forms"

        return run

    checks.append(("golden.theta", golden_group(lambda: {f"theta_{a}{b}": f for (a, b), f in theta_forms().items()})))
    checks.append(("golden.eta", golden_group(lambda: {f"eta_{a}{b}": f for (a, b), f in eta_forms().items()})))
    checks.append(("golden.phi", golden_group(lambda: {f"phi_{u}": f for u, f in phi_forms().items()})))

    @add("golden.spin7")
    def _():
        d = _mismatch(cayley_calibration(), golden["phi_spin7"])
        return not d, d or "triple-product alternation"

    @add("spin7.three-constructions")
    def _():
        c = cayley_calibration()
        return c == cayley_calibration_from_phi() == cayley_calibration_from_zeta(), "alternation, -1/6 sum phi^2, 1/6 sum zeta^2"

    @add("tau2.theta")
    def _():
        t = tau2(composition_form_matrix(build_clifford_system("quat-right-r5")))
        ok = t == golden["tau2_theta"] and t == quaternionic_forms()[0] * -2
        return ok, "tau_2(theta) = -2 Omega_L"

    @add("tau2.eta")
    def _():
        t = tau2(composition_form_matrix(build_clifford_system("quat-left-r5")))
        ok = t == golden["tau2_eta"] and t == quaternionic_forms()[1] * -2
        return ok, "tau_2(eta) = -2 Omega_R"

    @add("tau2.psiD-zero")
    def _():
        t = tau2(composition_form_matrix(build_clifford_system("oct-r9")))
        return not t, f"{len(t)} nonzero terms"

    @add("pullback.bryant-harvey")
    def _():
        return verify_pullback(), "L^* Phi_Spin7 = Phi_K"

    omega = {}

    def omega_rep():
        if "r" not in omega:
            omega["r"] = check_omega_from_spin7()
        return omega["r"]

    @add("omega-from-spin7.printed-factor")
    def _():
        r = omega_rep()
        return r.printed_factor_holds, f"Omega_R = {r.factor} x (signed sum of phi^2); printed factor is 2"

    @add("omega-from-spin7.subsets")
    def _():
        r = omega_rep()
        bad = ["".join(s.units) for s in r.subsets if not s.ok]
        return r.subsets_ok, ("no witness for " + ", ".join(bad)) if bad else "21 of 21 subsets"

    eta = {}

    def eta_rep():
        if "r" not in eta:
            eta["r"] = check_spin7_from_eta()
        return eta["r"]

    @add("spin7-from-eta.quarter-sum")
    def _():
        return eta_rep().quarter_sum_holds, ""

    @add("spin7-from-eta.half-sum")
    def _():
        return eta_rep().half_sum_holds, ""

    @add("spin7-from-eta.unique-signs")
    def _():
        r = eta_rep()
        pats = ["{" + ",".join(f"{a}{b}" for a, b in p) + "}" for p in r.patterns]
        return r.unique, f"{len(r.patterns)} sign patterns: " + " ".join(pats)

    rows = {}

    def rows_rep():
        if "r" not in rows:
            rows["r"] = check_even_clifford_rows()
        return rows["r"]

    @add("even-clifford.r8-zero")
    def _():
        return rows_rep().r8_zero, ""

    @add("even-clifford.r7-spin7")
    def _():
        return rows_rep().r7_is_spin7, ""

    @add("even-clifford.r6-square")
    def _():
        r = rows_rep()
        return r.r6_factor == -5, f"factor {r.r6_factor}, sigma = {r.r6_sigma_name}"

    @add("box.spin8")
    def _():
        d = _mismatch(phi_spin8(), golden["phi_spin8"])
        return not d, d or f"{len(phi_spin8())} terms"

    @add("box.spin7u1")
    def _():
        d = _mismatch(phi_spin7u1(), golden["phi_spin7u1"])
        return not d, d or f"{len(phi_spin7u1())} terms"

    @add("box.spin7u1-restrictions")
    def _():
        f, c = phi_spin7u1(), cayley_calibration()
        lo = f.restrict(range(1, 9)) == c.shift(0, 16) * 6
        hi = f.restrict(range(9, 17)) == c.shift(8, 16) * 6
        return lo and hi, "6 x Cayley form on each summand"

    remark = {}

    def remark_rep():
        if "r" not in remark:
            remark["r"] = verify_remark(phi_spin8(), phi_spin7u1())
        return remark["r"]

    for key in ("spin8_real", "spin8_equal", "spin7u1_real", "spin7u1_equal"):
        def rk(key=key):
            rep = remark_rep()
            detail = ""
            if key == "spin7u1_equal" and rep["spin7u1_offset"] is not None:
                detail = f"combination = phi_spin7u1 + ({rep['spin7u1_offset']}) phi_spin8"
            return bool(rep[key]), detail

        checks.append((f"remark.{key.replace('_', '-')}", rk))

    @add("span.theta")
    def _():
        d = span_dimension(list(theta_forms().values()))
        return d == 10, f"dimension {d}"

    @add("span.omega-L")
    def _():
        wl = [kaehler_form(_blockdiag(left(u, 2))) for u in "ijk"]
        d = span_dimension(wl)
        orth = all(
            sum((a.coeff(*key) * c for key, c in b.items()), Fraction(0)) == 0
            for a in wl
            for b in theta_forms().values()
        )
        return d == 3 and orth, f"dimension {d}, orthogonal to theta: {orth}"

    @add("span.phi")
    def _():
        d = span_dimension(list(phi_forms().values()))
        return d == 7, f"dimension {d}"

    @add("span.zeta")
    def _():
        d = span_dimension(list(zeta_forms().values()))
        return d == 21, f"dimension {d}"

    @add("planes.spin8-coordinate")
    def _():
        v = calibration_value(phi_spin8(), _unit_vectors(1, 2, 9, 10))
        return v == 1, f"value {v}"

    @add("planes.spin8-unprimed-zero")
    def _():
        v = calibration_value(phi_spin8(), _unit_vectors(1, 2, 3, 4))
        return v == 0, f"value {v}"

    @add("planes.spin7-values")
    def _():
        c = cayley_calibration()
        a = calibration_value(c, _unit_vectors(1, 2, 3, 4, n=8))
        b = calibration_value(c, _unit_vectors(1, 2, 3, 5, n=8))
        return a == 1 and b == 0, f"e1234 -> {a}, e1235 -> {b}"

    @add("planes.transversal-generator")
    def _():
        one = unit("1")
        vals = {
            "u=i,e1=1,e1p=1": calibration_value(phi_spin8(), transversal_cayley_plane(unit("i"), one, one)),
            "u=j,e1=1,e1p=e": calibration_value(phi_spin8(), transversal_cayley_plane(unit("j"), one, unit("e"))),
        }
        return all(v == 1 for v in vals.values()), ", ".join(f"{k} -> {v}" for k, v in vals.items())

    @add("planes.in-line")
    def _():
        f = phi_spin7u1_normalized()
        vals = {}
        for m in (0, 1, None):
            P = cayley_plane_in_line(octonionic_line(m), unit("i"), unit("1"), unit("j"))
            vals["inf" if m is None else str(m)] = calibration_value(f, P)
        return all(v == 1 for v in vals.values()), ", ".join(f"m={k} -> {v}" for k, v in vals.items())

    @add("tau4.self-dual")
    def _():
        t = tau4_spin9()
        dual = hodge_star(t)
        sign = "+" if dual == t else ("-" if dual == -t else "none")
        return bool(t) and sign != "none", f"{len(t)} terms, star sign {sign}"

    return checks


def check_ids() -> list[str]:
    return [cid for cid, _ in _checks({})]


def run_suite(pattern: str | None = None, data_dir: str | Path | None = None) -> VerifySuiteResult:
    """Run every check whose id matches the glob ``pattern`` (substring if no wildcard)."""
    golden = load_golden(data_dir)
    out = VerifySuiteResult()
    for cid, fn in _checks(golden):
        if pattern:
            pat = pattern if any(ch in pattern for ch in "*?[") else f"*{pattern}*"
            if not fnmatch.fnmatch(cid, pat):
                continue
        try:
            ok, detail = fn()
        except KeyError as exc:
            ok, detail = False, f"missing golden section {exc}"
        out.results.append(CheckResult(cid, bool(ok), detail))
    return out

