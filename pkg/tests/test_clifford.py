import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffordforms.algebra import identity, matmul, right, transpose
from cliffordforms.clifford import (
    CATALOG,
    FormMatrix,
    build_clifford_system,
    composition_form_matrix,
    generator_form_matrix,
    kaehler_form,
    pfaffian4,
    tau2,
    tau4,
    verify_clifford_system,
)
from cliffordforms.exterior import ExteriorForm, hodge_star
from cliffordforms.notation import parse_latex

PYTHAGOREAN = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)), (Fraction(8, 17), Fraction(15, 17))]


def _short(text, n=8, k=2):
    return parse_latex(text, n, k)


def _rotation(r, a, b, c, s):
    g = identity(r)
    g[a][a], g[a][b], g[b][a], g[b][b] = c, -s, s, c
    return g


@pytest.mark.parametrize("name", list(CATALOG))
def test_catalog_axioms(name):
    cs = build_clifford_system(name)
    rep = verify_clifford_system(cs)
    assert rep.ok, rep.to_dict()
    assert cs.rank == CATALOG[name]["rank"]
    for a, b in itertools.combinations(cs.involutions, 2):
        j = matmul([list(r) for r in a], [list(r) for r in b])
        assert transpose(j) == [[-x for x in r] for r in j]
        assert matmul(j, j) == [[-x for x in r] for r in identity(cs.n)]


def test_catalog_ranks():
    assert CATALOG["oct-r9"] == {"n": 16, "rank": 9}
    assert CATALOG["quat-right-r5"] == {"n": 8, "rank": 5}
    assert CATALOG["pauli-r3"] == {"n": 4, "rank": 3}


def test_unknown_system():
    with pytest.raises(KeyError):
        build_clifford_system("oct-r10")


def test_displayed_matrices():
    p = build_clifford_system("pauli-r3").involutions[2]
    assert [list(r) for r in p] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    q = build_clifford_system("quat-right-r5").involutions[1]
    ri = right("i", 2)
    for r in range(4):
        assert list(q[r][4:]) == [-x for x in ri[r]]
        assert list(q[4 + r][:4]) == ri[r]
    i9 = build_clifford_system("oct-r9").involutions[8]
    assert [[int(x) for x in r] for r in i9] == [[(1 if r < 8 else -1) * int(r == c) for c in range(16)] for r in range(16)]


def test_fake_system_fails():
    from cliffordforms.clifford import CliffordSystem

    eye = tuple(tuple(r) for r in identity(4))
    rep = verify_clifford_system(CliffordSystem("fake", 4, (eye, eye)))
    assert not rep.ok and rep.anticommute[(1, 2)] is False
    assert all(rep.involution) and all(rep.symmetric)


class TestKaehler:
    def test_right_i(self):
        assert kaehler_form(right("i")) == _short(r"-\shortform{12}+\shortform{34}+\shortform{56}-\shortform{78}")

    def test_theta_12(self):
        fm = composition_form_matrix(build_clifford_system("quat-right-r5"))
        assert fm[0, 1] == _short(r"-\shortform{12}+\shortform{34}+\shortform{56}-\shortform{78}")

    def test_sign_flip(self):
        m = right("j")
        assert kaehler_form([[-x for x in r] for r in m]) == -kaehler_form(m)

    def test_rejects_non_complex_structure(self):
        with pytest.raises(ValueError):
            kaehler_form(identity(4))


class TestFormMatrix:
    def test_skew(self):
        fm = composition_form_matrix(build_clifford_system("quat-right-r5"))
        for a in range(5):
            assert fm[a, a] == 0
            for b in range(5):
                assert fm[a, b] == -fm[b, a]

    def test_rejects_non_upper(self):
        with pytest.raises(ValueError):
            FormMatrix(3, {(1, 0): ExteriorForm.basis(4, 1, 2)}, 4)

    def test_psiD_size(self):
        fm = composition_form_matrix(build_clifford_system("oct-r9"))
        assert sum(1 for _, f in fm.upper() if f) == 36

    def test_json(self):
        d = composition_form_matrix(build_clifford_system("pauli-r3")).to_dict()
        assert d["r"] == 3 and len(d["entries"]) == 3


class TestTau:
    def test_tau2_theta_display(self):
        t = tau2(composition_form_matrix(build_clifford_system("quat-right-r5")))
        for idx, c in [((1, 2, 3, 4), -12), ((1, 2, 5, 6), -4), ((1, 3, 5, 7), -4), ((1, 3, 6, 8), 4), ((1, 2, 7, 8), -4), ((1, 4, 6, 7), -4), ((1, 4, 5, 8), -4)]:
            assert t.coeff(*idx) == c
        assert hodge_star(t) == t and len(t) == 14

    def test_tau2_eta_leading(self):
        t = tau2(composition_form_matrix(build_clifford_system("quat-left-r5")))
        assert t.coeff(1, 2, 3, 4) == 12 and t.coeff(1, 2, 5, 6) == -4

    def test_tau2_psiD_zero(self):
        assert tau2(composition_form_matrix(build_clifford_system("oct-r9"))) == 0

    def test_tau2_so8_row_zero(self):
        gens = [identity(8)] + [right(u) for u in "ijkefgh"]
        assert tau2(generator_form_matrix(gens)) == 0

    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.sampled_from(PYTHAGOREAN), st.booleans()), min_size=1, max_size=3))
    def test_tau2_gauge_invariant(self, rots):
        fm = composition_form_matrix(build_clifford_system("quat-right-r5"))
        base = tau2(fm)
        for a, b, (c, s), flip in rots:
            if a == b:
                continue
            fm = fm.conjugate_by(_rotation(5, a, b, c, -s if flip else s))
        assert tau2(fm) == base

    def test_tau4_block(self):
        a, b = ExteriorForm.basis(8, 1, 2) + ExteriorForm.basis(8, 3, 4), ExteriorForm.basis(8, 5, 6) + ExteriorForm.basis(8, 7, 8)
        fm = FormMatrix(4, {(0, 1): a, (2, 3): b}, 8)
        assert tau4(fm) == (a ^ a) ^ (b ^ b)
        assert tau4(fm) == pfaffian4(fm, (0, 1, 2, 3)) ^ pfaffian4(fm, (0, 1, 2, 3))

    def test_tau4_zero(self):
        assert tau4(FormMatrix(5, {}, 8)) == 0

    def test_tau4_is_sum_of_squared_pfaffians(self):
        # det of a skew 4x4 is Pf^2; entries commute so this holds for forms too
        fm = composition_form_matrix(build_clifford_system("quat-right-r5"))
        total = sum((pfaffian4(fm, S) ^ pfaffian4(fm, S) for S in itertools.combinations(range(5), 4)), ExteriorForm.zero(8, 8))
        assert tau4(fm) == total
