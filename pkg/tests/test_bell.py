"""Singlet joint statistics, correlators, and the two inequalities."""

from math import radians, sqrt

import numpy as np
import pytest

from nogosim.core import StateVector, density, inner, lift, tensor, trace_prob
from nogosim.experiments.bell import (
    BELL_LABELS,
    BELL_MODES,
    bell_correlator,
    bell_joint_probs,
    bell_original_inequality,
    bell_state,
    bell_trial,
    chsh,
    chsh_scan,
    run_bell_chsh,
    run_bell_original,
)
from nogosim.qubit import axis_projector, equatorial_axis, random_axis, state_from_bloch
from nogosim.sampler import SeededRng, derive_seed

SQ2 = sqrt(2.0)


def _random_axes(seed, count):
    rng = SeededRng(seed)
    return [random_axis(rng) for _ in range(count)]


def born_joint_probs(a, b):
    """Independent route: Born rule through the core simulator."""
    rho = density(bell_state())
    probs = []
    for sa in (a, a.negated()):
        for sb in (b, b.negated()):
            proj = lift(axis_projector(sa), (0,), (2, 2)) \
                @ lift(axis_projector(sb), (1,), (2, 2))
            probs.append(trace_prob(proj, rho))
    # Reorder from (a,b),(a,-b),(-a,b),(-a,-b) to the listing order.
    return (probs[0], probs[2], probs[1], probs[3])


class TestBellState:
    def test_amplitudes(self):
        np.testing.assert_allclose(bell_state().amplitudes,
                                   [0, 1 / SQ2, -1 / SQ2, 0])

    def test_scalar_product_rule_equatorial(self):
        # |<B|phi_a phi_b>|² = (1 - <a,b>)/4 along the equator.
        rng = SeededRng(90)
        for _ in range(100):
            a = equatorial_axis(2 * np.pi * rng.uniform())
            b = equatorial_axis(2 * np.pi * rng.uniform())
            amp = inner(bell_state(), tensor(state_from_bloch(a), state_from_bloch(b)))
            assert abs(abs(amp) ** 2 - 0.25 * (1 - a.dot(b))) <= 1e-12

    def test_scalar_product_rule_arbitrary_axes(self):
        # The same expression holds without the equatorial restriction.
        axes = _random_axes(91, 200)
        for a, b in zip(axes[:100], axes[100:]):
            amp = inner(bell_state(), tensor(state_from_bloch(a), state_from_bloch(b)))
            assert abs(abs(amp) ** 2 - 0.25 * (1 - a.dot(b))) <= 1e-12

    def test_product_basis_measurement_route(self):
        # Measuring the singlet in the product basis of two axis pairs gives
        # the listing-order probabilities.
        from nogosim.sampler import measure_basis

        a, b = equatorial_axis(0.4), equatorial_axis(2.1)
        basis = [tensor(state_from_bloch(sa), state_from_bloch(sb))
                 for sa, sb in ((a, b), (a.negated(), b),
                                (a, b.negated()), (a.negated(), b.negated()))]
        want = bell_joint_probs(a, b)
        rng = SeededRng(92)
        for _ in range(100):
            out = measure_basis(bell_state(), basis, rng)
            assert out.probability == pytest.approx(want[out.label], abs=1e-12)


class TestJointProbs:
    def test_equal_axes_anticorrelate(self):
        a = equatorial_axis(0.3)
        assert bell_joint_probs(a, a) == pytest.approx((0.0, 0.5, 0.5, 0.0))

    def test_orthogonal_axes_uniform(self):
        probs = bell_joint_probs(equatorial_axis(0.0), equatorial_axis(np.pi / 2))
        assert probs == pytest.approx((0.25, 0.25, 0.25, 0.25))

    def test_matches_born_rule_through_core(self):
        axes = _random_axes(17, 60)
        for a, b in zip(axes[:30], axes[30:]):
            formula = bell_joint_probs(a, b)
            born = born_joint_probs(a, b)
            assert formula == pytest.approx(born, abs=1e-12)

    def test_marginals_are_half(self):
        axes = _random_axes(23, 20)
        for a, b in zip(axes[:10], axes[10:]):
            p = bell_joint_probs(a, b)
            assert p[0] + p[2] == pytest.approx(0.5, abs=1e-12)  # +a marginal
            assert p[1] + p[3] == pytest.approx(0.5, abs=1e-12)  # -a marginal
            assert p[0] + p[1] == pytest.approx(0.5, abs=1e-12)  # +b marginal


class TestCorrelator:
    def test_equal_axes(self):
        a = equatorial_axis(1.2)
        assert bell_correlator(a, a) == pytest.approx(-1.0)

    def test_minus_scalar_product(self):
        axes = _random_axes(29, 20)
        for a, b in zip(axes[:10], axes[10:]):
            assert bell_correlator(a, b) == pytest.approx(-a.dot(b), abs=1e-12)


class TestOriginalInequality:
    def test_violating_axes(self):
        # Coplanar angles 0, 135, 270 degrees: lhs = sqrt(2)/2, rhs = 1 - sqrt(2)/2.
        a, b, c = (equatorial_axis(radians(t)) for t in (0.0, 135.0, 270.0))
        result = bell_original_inequality(a, b, c)
        assert result.lhs == pytest.approx(SQ2 / 2, abs=1e-9)
        assert result.rhs == pytest.approx(1 - SQ2 / 2, abs=1e-9)
        assert result.violated
        assert result.lhs - result.rhs == pytest.approx(SQ2 - 1, abs=1e-9)

    def test_identical_axes_do_not_violate(self):
        a = equatorial_axis(0.0)
        result = bell_original_inequality(a, a, a)
        assert result.lhs == pytest.approx(0.0)
        assert result.rhs == pytest.approx(2.0)
        assert not result.violated

    def test_boundary_case(self):
        a = equatorial_axis(0.0)
        c = equatorial_axis(np.pi / 2)
        result = bell_original_inequality(a, a, c)
        assert result.lhs == pytest.approx(1.0, abs=1e-12)
        assert result.rhs == pytest.approx(1.0, abs=1e-12)
        assert not result.violated


class TestChsh:
    def test_optimal_angles(self):
        axes = [equatorial_axis(radians(t)) for t in (0, 45, 90, 135)]
        assert abs(chsh(*axes)) == pytest.approx(2 * SQ2, abs=1e-9)

    def test_equal_axes_boundary(self):
        a = equatorial_axis(0.7)
        assert abs(chsh(a, a, a, a)) == pytest.approx(2.0)

    def test_scan_reaches_quantum_maximum(self):
        best, angles = chsh_scan(360)
        assert best >= 2 * SQ2 - 1e-3
        assert abs(chsh(*(equatorial_axis(t) for t in angles))) \
            == pytest.approx(best, abs=1e-9)

    def test_scan_refines_coarse_grids(self):
        best, _ = chsh_scan(16)
        assert best > 2.8

    def test_scan_rejects_tiny_grid(self):
        with pytest.raises(ValueError, match="at least 4"):
            chsh_scan(3)

    def test_deterministic_sign_strategies_bounded(self):
        # Local deterministic assignments s: axis -> ±1 with E = -s(u)s(v)
        # never push |S| past 2, at any angle set.
        rng = np.random.default_rng(31)
        for _ in range(50):
            best = 0.0
            for bits in range(16):
                s = [1 if bits & (1 << k) else -1 for k in range(4)]
                value = abs(-(s[0] * s[1] + s[1] * s[2] + s[2] * s[3] - s[3] * s[0]))
                best = max(best, value)
            assert best <= 2.0 + 1e-12


class TestBellTrial:
    def test_equal_axes_only_anticorrelated(self):
        a = equatorial_axis(0.9)
        for mode in BELL_MODES:
            rng = SeededRng(41)
            for _ in range(300):
                label = bell_trial(a, a, mode, rng)
                assert label in ("-+", "+-")

    def test_replay_is_deterministic(self):
        a, b = equatorial_axis(0.1), equatorial_axis(1.3)
        for mode in BELL_MODES:
            first = [bell_trial(a, b, mode, SeededRng(derive_seed(5, i)))
                     for i in range(200)]
            second = [bell_trial(a, b, mode, SeededRng(derive_seed(5, i)))
                      for i in range(200)]
            assert first == second

    def test_modes_agree_within_four_sigma(self):
        a, b = equatorial_axis(0.0), equatorial_axis(radians(60.0))
        want = dict(zip(BELL_LABELS, bell_joint_probs(a, b)))
        n = 20000
        for mode in BELL_MODES:
            counts = {label: 0 for label in BELL_LABELS}
            for i in range(n):
                counts[bell_trial(a, b, mode, SeededRng(derive_seed(77, i)))] += 1
            for label, p in want.items():
                bound = 4.0 * np.sqrt(p * (1 - p) / n)
                assert abs(counts[label] / n - p) < bound, (mode, label)

    def test_unknown_mode(self):
        a = equatorial_axis(0.0)
        with pytest.raises(ValueError, match="mode"):
            bell_trial(a, a, "both-at-once", SeededRng(1))


class TestDrivers:
    def test_chsh_report(self):
        report = run_bell_chsh(3, 2000, {"angles": (0.0, 45.0, 90.0, 135.0),
                                         "mode": "simultaneous", "scan_steps": 90})
        assert report.all_passed
        names = [t.name for t in report.tests]
        assert "analytic |S| exceeds the classical bound 2" in names
        s_test = report.tests[names.index("analytic |S| exceeds the classical bound 2")]
        assert s_test.statistic == pytest.approx(2 * SQ2, abs=1e-9)

    def test_original_report(self):
        report = run_bell_original(3, 2000, {"angles": (0.0, 135.0, 270.0)})
        assert report.all_passed

    def test_non_violating_angles_fail_the_violation_test(self):
        report = run_bell_original(3, 500, {"angles": (0.0, 0.0, 0.0)})
        assert not report.all_passed
