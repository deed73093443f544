import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffordforms.comass import ComassReport, FloatForm, ascend, estimate_comass, gradient_check
from cliffordforms.exterior import ExteriorForm, evaluate
from cliffordforms.forms import cayley_calibration, named_form, phi_spin8
from cliffordforms.planes import FourPlane, random_plane, spin8_orbit_plane

from conftest import forms

DX1234 = ExteriorForm.basis(8, 1, 2, 3, 4)


class TestFloatForm:
    @given(forms(n=8, k=4, max_terms=10), st.integers(0, 2**32 - 1))
    def test_value_matches_evaluate(self, f, seed):
        X = random_plane(8, seed).array()
        assert FloatForm(f).value(X) == pytest.approx(evaluate(f, X), abs=1e-12)

    def test_batched_values(self):
        ff = FloatForm(phi_spin8())
        frames = np.stack([random_plane(16, s).array() for s in range(5)])
        assert np.allclose(ff.values(frames), [ff.value(X) for X in frames])

    def test_rejects_other_degrees(self):
        with pytest.raises(ValueError):
            FloatForm(ExteriorForm.basis(8, 1, 2))


class TestGradient:
    @given(forms(n=8, k=4, max_terms=10), st.integers(0, 2**32 - 1))
    def test_random_pairs(self, f, seed):
        rep = gradient_check(f, random_plane(8, seed), h=1e-5, seed=seed)
        assert rep.max_rel_error < 1e-6

    def test_zero_form(self):
        rep = gradient_check(ExteriorForm.zero(8, 4), random_plane(8, 0))
        assert rep.grad_norm == 0 and rep.max_rel_error == 0

    def test_critical_point(self):
        rep = gradient_check(phi_spin8(), spin8_orbit_plane(3))
        assert rep.grad_norm < 1e-8 and rep.value == pytest.approx(1.0, abs=1e-12)


class TestAscent:
    def test_monotone_and_orthonormal(self):
        ff = FloatForm(cayley_calibration())
        res = ascend(ff, random_plane(8, 11).array())
        assert all(b >= a for a, b in zip(res.history, res.history[1:]))
        assert np.abs(res.frame @ res.frame.T - np.eye(4)).max() < 1e-10
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_decomposable(self):
        rep = estimate_comass(DX1234, samples=2000, restarts=4, seed=0)
        assert rep.best_value == pytest.approx(1.0, abs=1e-9)

    def test_zero(self):
        rep = estimate_comass(ExteriorForm.zero(8, 4), samples=10, restarts=2)
        assert rep.best_value == 0

    def test_report_invariants(self):
        rep = estimate_comass(cayley_calibration(), samples=3000, restarts=6, seed=2, key="phi_spin7")
        assert rep.best_value >= rep.sample_max
        assert rep.best_value >= max(rep.ascent_values)
        X = np.array(rep.best_frame)
        assert np.abs(X @ X.T - np.eye(4)).max() < 1e-10
        assert len(rep.iterations) == 6 and all(0 <= it <= 500 for it in rep.iterations)
        assert isinstance(rep, ComassReport) and rep.to_dict()["form"] == "phi_spin7"

    def test_bounds_certified_planes(self):
        rep = estimate_comass(phi_spin8(), samples=2000, restarts=4, seed=0)
        assert rep.best_value >= 1 - 1e-12

    def test_spin8_exceeds_one(self):
        # recorded finding: ascent finds planes with value 3/2
        rep = estimate_comass(phi_spin8(), samples=2000, restarts=4, seed=1)
        assert rep.best_value == pytest.approx(1.5, abs=1e-9)
        X = np.array(rep.best_frame)
        assert evaluate(phi_spin8(), X) == pytest.approx(1.5, abs=1e-9)

    def test_seed_determinism(self):
        f = named_form("phi_spin7u1_normalized").form
        a = estimate_comass(f, samples=500, restarts=3, seed=9).to_json()
        b = estimate_comass(f, samples=500, restarts=3, seed=9).to_json()
        assert a == b

    def test_restart_streams_are_independent(self):
        # more restarts only append; earlier ones are unchanged
        a = estimate_comass(cayley_calibration(), samples=0, restarts=2, seed=4)
        b = estimate_comass(cayley_calibration(), samples=0, restarts=3, seed=4)
        assert a.ascent_values == b.ascent_values[:2]


def test_exact_frame_input():
    P = FourPlane(8, ((1, 0, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0, 0)))
    rep = gradient_check(DX1234, P)
    assert rep.value == pytest.approx(1.0)
