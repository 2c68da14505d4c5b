"""
Tests for pure-state polarization algebra.
"""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zenoprotect.polarization import PolRotation
from zenoprotect.polarization import PolarizationState
from zenoprotect.polarization import StokesVector
from zenoprotect.polarization import angle_between
from zenoprotect.polarization import apply_rotation
from zenoprotect.polarization import fidelity
from zenoprotect.polarization import projector_overlap
from zenoprotect.polarization import to_stokes

angles = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
axes = st.tuples(*[st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)] * 3).filter(
    lambda a: np.linalg.norm(a) > 1e-3)


class TestToStokes:

    def test_basis_states(self):
        np.testing.assert_allclose(to_stokes(PolarizationState.horizontal()), (1, 0, 0), atol=1e-15)
        np.testing.assert_allclose(to_stokes(PolarizationState.vertical()), (-1, 0, 0), atol=1e-15)
        np.testing.assert_allclose(to_stokes(PolarizationState.diagonal()), (0, 1, 0), atol=1e-15)
        np.testing.assert_allclose(to_stokes(PolarizationState(np.pi / 4, np.pi / 2)),
                                   (0, 0, 1), atol=1e-15)

    @given(angles, angles)
    def test_unit_norm(self, theta, phi):
        assert abs(to_stokes(PolarizationState(theta, phi)).norm() - 1) < 1e-12

    @given(st.floats(min_value=0.0, max_value=np.pi / 2), angles)
    def test_s1_is_expectation(self, theta, phi):
        p = PolarizationState(theta, phi)
        assert abs(to_stokes(p).s1 - p.expectation_o()) < 1e-12

    @given(angles, angles)
    def test_from_stokes_roundtrip(self, theta, phi):
        p = PolarizationState(theta, phi)
        q = PolarizationState.from_stokes(to_stokes(p))
        assert fidelity(to_stokes(p), to_stokes(q)) > 1 - 1e-12


class TestPolarizationState:

    def test_canonical_theta(self):
        p = PolarizationState(np.pi, 0.0)
        assert p.theta == pytest.approx(0.0, abs=1e-12)
        assert p.phi == 0.0

    def test_phase_dropped_for_eigenstates(self):
        assert PolarizationState(0.0, 1.3).phi == 0.0
        assert PolarizationState(np.pi / 2, 1.3).phi == 0.0

    def test_immutable(self):
        p = PolarizationState.diagonal()
        with pytest.raises(AttributeError):
            p.theta = 0.1

    def test_from_amplitudes_normalizes(self):
        p = PolarizationState.from_amplitudes(3.0, 4.0j)
        assert abs(np.linalg.norm(p.amplitudes) - 1) < 1e-15
        assert p.phi == pytest.approx(np.pi / 2)
        assert p.theta == pytest.approx(np.arctan2(4, 3))

    def test_from_amplitudes_zero_rejected(self):
        with pytest.raises(ValueError):
            PolarizationState.from_amplitudes(0.0, 0.0)

    def test_global_phase_ignored(self):
        a = PolarizationState.from_amplitudes(0.6, 0.8j)
        b = PolarizationState.from_amplitudes(0.6 * 1j, 0.8j * 1j)
        assert a.theta == pytest.approx(b.theta)
        assert a.phi == pytest.approx(b.phi)

    def test_jones_alias(self):
        p = PolarizationState(0.3, 0.2)
        np.testing.assert_array_equal(p.jones, p.amplitudes)

    def test_expectation(self):
        assert PolarizationState.horizontal().expectation_o() == 1.0
        assert PolarizationState.vertical().expectation_o() == pytest.approx(-1.0)
        assert PolarizationState.diagonal().expectation_o() == pytest.approx(0.0, abs=1e-15)


class TestFidelity:

    def test_identical_and_orthogonal(self):
        h = to_stokes(PolarizationState.horizontal())
        v = to_stokes(PolarizationState.vertical())
        assert fidelity(h, h) == 1.0
        assert fidelity(h, v) == 0.0

    def test_diagonal_vs_horizontal(self):
        h = to_stokes(PolarizationState.horizontal())
        d = to_stokes(PolarizationState.diagonal())
        assert fidelity(h, d) == pytest.approx(0.5)

    def test_small_angle(self):
        s = StokesVector(1.0, 0.0, 0.0)
        t = StokesVector(np.cos(0.14), np.sin(0.14), 0.0)
        assert fidelity(s, t) == pytest.approx(0.9951, abs=1e-4)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            fidelity(StokesVector(0.5, 0.0, 0.0), StokesVector(1.0, 0.0, 0.0))

    @given(angles, angles, angles, angles)
    def test_matches_state_overlap(self, t1, p1, t2, p2):
        a = PolarizationState(t1, p1)
        b = PolarizationState(t2, p2)
        overlap = abs(projector_overlap(a, b)) ** 2
        assert abs(fidelity(to_stokes(a), to_stokes(b)) - overlap) < 1e-12

    def test_angle_between(self):
        s = StokesVector(1.0, 0.0, 0.0)
        t = StokesVector(0.0, 1.0, 0.0)
        assert angle_between(s, t) == pytest.approx(np.pi / 2)


class TestPolRotation:

    def test_quarter_turn_about_s3(self):
        r = PolRotation((0, 0, 1), np.pi / 2)
        out = to_stokes(apply_rotation(r, PolarizationState.horizontal()))
        np.testing.assert_allclose(out, (0, 1, 0), atol=1e-12)

    def test_zero_axis(self):
        assert PolRotation((0, 0, 0), 0.0).retardance == 0.0
        with pytest.raises(ValueError):
            PolRotation((0, 0, 0), 0.5)

    @given(axes, angles, angles, angles)
    def test_jones_and_rodrigues_agree(self, axis, d, theta, phi):
        r = PolRotation(axis, d)
        p = PolarizationState(theta, phi)
        via_jones = to_stokes(apply_rotation(r, p)).as_array()
        via_matrix = r.matrix() @ to_stokes(p).as_array()
        np.testing.assert_allclose(via_jones, via_matrix, atol=1e-9)

    @given(axes, angles)
    def test_unitary_and_norm_preserving(self, axis, d):
        r = PolRotation(axis, d)
        u = r.jones()
        np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)
        assert abs(np.linalg.det(u) - 1) < 1e-12
        np.testing.assert_allclose(r.matrix() @ r.matrix().T, np.eye(3), atol=1e-12)

    @given(axes, angles)
    def test_inverse(self, axis, d):
        r = PolRotation(axis, d)
        np.testing.assert_allclose(r.then(r.inverse()).matrix(), np.eye(3), atol=1e-9)

    @given(axes, angles, axes, angles)
    def test_then_and_compose(self, a1, d1, a2, d2):
        r1 = PolRotation(a1, d1)
        r2 = PolRotation(a2, d2)
        np.testing.assert_allclose(r1.then(r2).matrix(), r2.matrix() @ r1.matrix(), atol=1e-9)
        np.testing.assert_allclose(r2.compose(r1).matrix(), r1.then(r2).matrix(), atol=1e-9)

    @given(axes, st.floats(min_value=0.01, max_value=3.1))
    def test_from_jones_recovers_rotation(self, axis, d):
        r = PolRotation(axis, d)
        back = PolRotation.from_jones(r.jones())
        assert back.retardance == pytest.approx(d, abs=1e-9)
        np.testing.assert_allclose(back.axis, r.axis, atol=1e-9)
