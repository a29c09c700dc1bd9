"""Bloch-sphere geometry: state maps, stereographic projection, projectors."""

import numpy as np
import pytest
from helpers import random_amplitude_pair

from nogosim.core import StateVector, equal_up_to_phase, fidelity, pauli
from nogosim.qubit import (
    INFINITY,
    BlochVector,
    axis_density,
    axis_projector,
    bloch_from_state,
    equator_state,
    equatorial_axis,
    inverse_stereographic,
    overlap_prob,
    random_axis,
    state_from_bloch,
    stereographic,
)
from nogosim.sampler import SeededRng

SQ2 = np.sqrt(2.0)

NORTH = BlochVector(0.0, 0.0, 1.0)
SOUTH = BlochVector(0.0, 0.0, -1.0)
X_AXIS = BlochVector(1.0, 0.0, 0.0)
Y_AXIS = BlochVector(0.0, 1.0, 0.0)


def _axes(seed, count):
    rng = SeededRng(seed)
    return [random_axis(rng) for _ in range(count)]


class TestBlochVector:
    def test_rejects_non_unit(self):
        with pytest.raises(ValueError, match="unit"):
            BlochVector(1.0, 1.0, 0.0)

    def test_negated(self):
        assert X_AXIS.negated() == BlochVector(-1.0, 0.0, 0.0)


class TestBlochFromState:
    def test_poles(self):
        assert bloch_from_state(StateVector([1.0, 0.0])) == NORTH
        assert bloch_from_state(StateVector([0.0, 1.0])) == SOUTH

    def test_circular_superposition(self):
        # alpha = 1/sqrt(2), beta = i/sqrt(2) maps onto the +y axis.
        got = bloch_from_state(StateVector([1 / SQ2, 1j / SQ2]))
        assert got.x == pytest.approx(0.0, abs=1e-12)
        assert got.y == pytest.approx(1.0, abs=1e-12)
        assert got.z == pytest.approx(0.0, abs=1e-12)

    def test_phase_invariance(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            alpha, beta = random_amplitude_pair(rng)
            base = bloch_from_state(StateVector([alpha, beta]))
            theta = rng.uniform(0, 2 * np.pi)
            phased = StateVector(np.exp(1j * theta) * np.array([alpha, beta]))
            got = bloch_from_state(phased)
            assert got.x == pytest.approx(base.x, abs=1e-13)
            assert got.y == pytest.approx(base.y, abs=1e-13)
            assert got.z == pytest.approx(base.z, abs=1e-13)

    def test_rejects_non_qubit(self):
        with pytest.raises(ValueError, match="qubit"):
            bloch_from_state(StateVector([1.0, 0.0, 0.0]))


class TestStateFromBloch:
    def test_poles(self):
        np.testing.assert_allclose(state_from_bloch(NORTH).amplitudes, [1, 0])
        np.testing.assert_allclose(state_from_bloch(SOUTH).amplitudes, [0, 1])

    def test_x_axis(self):
        np.testing.assert_allclose(state_from_bloch(X_AXIS).amplitudes,
                                   [1 / SQ2, 1 / SQ2])

    def test_round_trip(self):
        for a in _axes(100, 100) + [NORTH, SOUTH]:
            back = bloch_from_state(state_from_bloch(a))
            assert abs(back.x - a.x) < 1e-10
            assert abs(back.y - a.y) < 1e-10
            assert abs(back.z - a.z) < 1e-10

    def test_charts_agree_up_to_phase(self):
        kept = [a for a in _axes(200, 200) if abs(a.z) < 0.9][:50]
        assert len(kept) == 50
        for a in kept:
            north = state_from_bloch(a, chart="north")
            south = state_from_bloch(a, chart="south")
            assert equal_up_to_phase(north, south)

    def test_chart_poles_raise(self):
        with pytest.raises(ValueError, match="south pole"):
            state_from_bloch(SOUTH, chart="north")
        with pytest.raises(ValueError, match="north pole"):
            state_from_bloch(NORTH, chart="south")

    def test_born_consistency(self):
        axes = _axes(300, 200)
        for a, b in zip(axes[:100], axes[100:]):
            sq = fidelity(state_from_bloch(a), state_from_bloch(b))
            assert abs(sq - overlap_prob(a, b)) < 1e-10


class TestEquatorState:
    def test_plus_x(self):
        np.testing.assert_allclose(equator_state(X_AXIS).amplitudes,
                                   [1 / SQ2, 1 / SQ2])

    def test_plus_y(self):
        np.testing.assert_allclose(equator_state(Y_AXIS).amplitudes,
                                   [1 / SQ2, 1j / SQ2])

    def test_minus_x(self):
        np.testing.assert_allclose(
            equator_state(BlochVector(-1.0, 0.0, 0.0)).amplitudes,
            [1 / SQ2, -1 / SQ2])

    def test_rejects_off_equator(self):
        with pytest.raises(ValueError, match="equator"):
            equator_state(BlochVector(0.0, 0.6, 0.8))


class TestStereographic:
    def test_south_pole_to_origin(self):
        assert stereographic(SOUTH) == 0

    def test_north_pole_to_infinity(self):
        assert stereographic(NORTH) is INFINITY

    def test_x_axis_to_one(self):
        assert stereographic(X_AXIS) == pytest.approx(1.0)

    def test_inverse_of_infinity(self):
        assert inverse_stereographic(INFINITY) == NORTH

    def test_round_trip_including_poles(self):
        for a in _axes(400, 100) + [NORTH, SOUTH]:
            back = inverse_stereographic(stereographic(a))
            assert abs(back.x - a.x) < 1e-10
            assert abs(back.y - a.y) < 1e-10
            assert abs(back.z - a.z) < 1e-10


class TestAxisProjector:
    def test_north_is_up_projector(self):
        np.testing.assert_allclose(axis_projector(NORTH).entries,
                                   np.diag([1.0, 0.0]))

    def test_opposite_projectors_sum_to_identity(self):
        for a in _axes(500, 20):
            total = axis_projector(a).entries + axis_projector(a.negated()).entries
            np.testing.assert_allclose(total, np.eye(2), atol=1e-12)

    def test_rank_one(self):
        for a in _axes(600, 20):
            p = axis_projector(a)
            assert p.is_projector()
            assert np.trace(p.entries).real == pytest.approx(1.0, abs=1e-12)

    def test_matches_axis_density(self):
        for a in _axes(700, 20):
            np.testing.assert_allclose(axis_projector(a).entries,
                                       axis_density(a).entries, atol=1e-12)


class TestOverlapProb:
    def test_same_axis(self):
        assert overlap_prob(X_AXIS, X_AXIS) == pytest.approx(1.0)

    def test_opposite_axis(self):
        assert overlap_prob(X_AXIS, X_AXIS.negated()) == pytest.approx(0.0)

    def test_orthogonal_axes(self):
        assert overlap_prob(X_AXIS, NORTH) == pytest.approx(0.5)


def test_equatorial_axis():
    a = equatorial_axis(np.pi / 2)
    assert a.x == pytest.approx(0.0, abs=1e-15)
    assert a.y == pytest.approx(1.0)
    assert a.z == 0.0
