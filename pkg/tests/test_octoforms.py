
import pytest
from hypothesis import given, strategies as st

from cliffordforms.algebra import Hypercomplex, cd_multiply
from cliffordforms.exterior import ExteriorForm, wedge
from cliffordforms.forms import phi_spin7u1, phi_spin8
from cliffordforms.octoforms import (
    OctonionValuedForm,
    dx,
    dx_bar,
    octo_wedge,
    remark_spin7u1,
    remark_spin8,
    verify_remark,
)

from conftest import hypercomplex


def _real(f: ExteriorForm) -> OctonionValuedForm:
    return OctonionValuedForm(f.k, {key: (c,) + (0,) * 7 for key, c in f.items()})


@st.composite
def octo_one_forms(draw):
    idx = draw(st.lists(st.integers(1, 16), min_size=1, max_size=3, unique=True))
    return OctonionValuedForm(1, {(i,): draw(hypercomplex()) for i in idx})


class TestOctoWedge:
    def test_real_forms_reduce_to_wedge(self):
        a = ExteriorForm(16, 2, {(1, 9): 2, (3, 4): -1})
        b = ExteriorForm(16, 1, {(5,): 3, (10,): 1})
        assert octo_wedge(_real(a), _real(b)).real_part() == wedge(a, b)
        assert octo_wedge(_real(a), _real(b)).is_real()

    @given(octo_one_forms(), octo_one_forms())
    def test_conjugate_reverses(self, a, b):
        assert octo_wedge(a, b).conj() == -octo_wedge(b.conj(), a.conj())

    @given(octo_one_forms(), octo_one_forms())
    def test_coefficients_multiply_in_order(self, a, b):
        # coefficient of dx_i ^ dx_j (i < j) is a_i b_j - a_j b_i
        zero = Hypercomplex.zero()
        ca = {i: x for (i,), x in a.items()}
        cb = {j: y for (j,), y in b.items()}
        got = dict(octo_wedge(a, b).items())
        support = sorted(set(ca) | set(cb))
        for t, i in enumerate(support):
            for j in support[t + 1:]:
                expected = cd_multiply(ca.get(i, zero), cb.get(j, zero)) - cd_multiply(ca.get(j, zero), cb.get(i, zero))
                assert got.get((i, j), zero) == expected


    def test_dx_bar(self):
        assert dx_bar() == dx().conj()
        assert len(dx(True)) == 8

    def test_norm_form_is_imaginary(self):
        t = octo_wedge(dx_bar(), dx())
        assert t.real_part() == 0 and len(t) == 28

    def test_degree_overflow(self):
        big = OctonionValuedForm(9, {tuple(range(1, 10)): (1,) + (0,) * 7})
        with pytest.raises(ValueError):
            octo_wedge(big, big)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            OctonionValuedForm(1, {(17,): (1,) * 8})


@pytest.fixture(scope="module")
def rep():
    return verify_remark(phi_spin8(), phi_spin7u1())


class TestRemark:
    def test_spin8_identity(self, rep):
        assert rep["spin8_real"] and rep["spin8_equal"]
        assert remark_spin8().real_part() == phi_spin8()

    def test_spin7u1_is_real(self, rep):
        assert rep["spin7u1_real"]

    def test_spin7u1_offset(self, rep):
        # the four-term combination misses the boxed form by a multiple of phi_spin8
        assert not rep["spin7u1_equal"]
        assert rep["spin7u1_offset"] == "-10"
        assert remark_spin7u1().real_part() == phi_spin7u1() - phi_spin8() * 10
        assert not rep.ok
