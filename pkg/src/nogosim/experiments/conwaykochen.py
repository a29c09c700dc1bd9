"""Two-spin-1 singlet: perfectly correlated squared-spin readings on two
sides, against a classical shared-seed counter-model.

The singlet (1/√3)·Σ|i>|i> is invariant under R⊗R for real rotations, so
side I can measure a full frame (via the combined observable) while side
II measures one squared component, and the component values always agree.
The classical model runs the same roulette program with a shared random
number on both sides: it agrees whenever both orderings put the shared
axis in the same slot, and provably cannot agree for all axes at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import Sequence

import numpy as np

from ..core import Operator, ProjectorSet, StateVector, op_tensor
from ..report import ExperimentReport, TestResult, empirical_from_counts, frequency_test
from ..sampler import SeededRng, derive_seed, measure_projective, roulette
from ..spin1 import AXES, Frame3, jsq_projectors, k_value_to_jsq_triple, spin_eigenbasis
from ..tolerances import STRUCT_TOL

__all__ = [
    "two_spin1_singlet",
    "singlet_in_axis_basis",
    "singlet_joint_frame_probs",
    "ck_projector_set",
    "CkTrialResult",
    "ck_frame_axis_trial",
    "classical_shared_seed_trial",
    "classical_agreement_rate",
    "classical_agreement_analytic",
    "run_ck_singlet",
    "run_ck_classical",
]

_AXIS_INDEX = {"x": 0, "y": 1, "z": 2}

_SQRT3_INV = 1.0 / sqrt(3.0)
_SINGLET = StateVector(
    _SQRT3_INV * np.eye(3, dtype=complex).reshape(-1), dims=(3, 3))


def two_spin1_singlet() -> StateVector:
    """The rotation-invariant two-spin-1 state (1/√3)(|11> + |22> + |33>)."""
    return _SINGLET


def singlet_in_axis_basis(axis: str) -> StateVector:
    """The same state re-expressed through one component's eigenvectors:
    (1/√3)(|0>|0> + |+>|−> + |−>|+>)."""
    plus, zero, minus = spin_eigenbasis(axis)
    amps = _SQRT3_INV * (
        np.kron(zero.amplitudes, zero.amplitudes)
        + np.kron(plus.amplitudes, minus.amplitudes)
        + np.kron(minus.amplitudes, plus.amplitudes))
    return StateVector(amps, dims=(3, 3))


def singlet_joint_frame_probs(frame: Frame3) -> np.ndarray:
    """Joint outcome probabilities when side I uses the standard basis and
    side II the frame basis.

    Entry [i, j] is the chance of reading basis ray i on side I and frame
    axis j on side II: one third of the squared overlap between the two
    rays.  Rows and columns each sum to ⅓.
    """
    return (frame.matrix ** 2) / 3.0


def ck_projector_set(axis: str, frame: Frame3 | None = None) -> ProjectorSet:
    """Six commuting projectors: side-I frame rays ⊗ side-II J_axis² values.

    Labels are (k, v) with k in {1, 2, 3} for the side-I ray and v in
    {0, 1} for the side-II squared component.
    """
    if frame is None:
        return _identity_ck_pset(axis)
    return _build_ck_pset(axis, frame)


def _build_ck_pset(axis: str, frame: Frame3) -> ProjectorSet:
    jsq_pset = jsq_projectors(axis)
    projectors = []
    labels = []
    for k in range(3):
        col = frame.column(k).astype(complex)
        ray = Operator(np.outer(col, col.conj()))
        for v, proj in zip(jsq_pset.labels, jsq_pset.projectors):
            projectors.append(op_tensor(ray, proj))
            labels.append((k + 1, v))
    return ProjectorSet(projectors, labels=labels)


@lru_cache(maxsize=8)
def _identity_ck_pset(axis: str) -> ProjectorSet:
    return _build_ck_pset(axis, Frame3.identity())


def _frame_slot_for_axis(frame: Frame3, axis: str) -> int:
    """Index of the frame column equal to ±(global axis); error if absent."""
    unit = np.zeros(3)
    unit[_AXIS_INDEX[axis]] = 1.0
    for j in range(3):
        col = frame.column(j)
        if np.max(np.abs(col - unit)) <= STRUCT_TOL or \
           np.max(np.abs(col + unit)) <= STRUCT_TOL:
            return j
    raise ValueError(f"frame does not contain the {axis} axis")


@dataclass(frozen=True)
class CkTrialResult:
    """Side-I combined-observable outcome plus side-II component value."""

    k_value: int
    triple: tuple[int, int, int]
    partner_value: int
    agrees: bool


def ck_frame_axis_trial(axis: str, rng: SeededRng,
                        frame: Frame3 | None = None) -> CkTrialResult:
    """One joint trial: side I reads the full frame, side II one component.

    The triple lists the squared values for the frame's own axes in slot
    order; ``agrees`` compares the slot matching the measured global axis
    with side II's value.
    """
    if axis not in _AXIS_INDEX:
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}")
    pset = ck_projector_set(axis, frame)
    outcome = measure_projective(_SINGLET, pset, rng)
    k_value, partner = outcome.label
    triple = k_value_to_jsq_triple(k_value)
    slot = _frame_slot_for_axis(frame if frame is not None else Frame3.identity(),
                                axis)
    return CkTrialResult(k_value, triple, partner, triple[slot] == partner)


def _check_ordering(name: str, ordering: Sequence[str]) -> tuple[str, ...]:
    ordering = tuple(ordering)
    if sorted(ordering) != list(AXES):
        raise ValueError(f"{name} must order the axes {AXES}, got {ordering}")
    return ordering


def classical_shared_seed_trial(frame_i: Sequence[str], frame_ii: Sequence[str],
                                r: float) -> tuple[str, str]:
    """Run the same roulette program on both sides with one shared number.

    Each side selects a slot of its own axis ordering with equal weights;
    the shared ``r`` makes both pick the same slot index.
    """
    frame_i = _check_ordering("frame_i", frame_i)
    frame_ii = _check_ordering("frame_ii", frame_ii)
    third = 1.0 / 3.0
    slot_i = roulette(r, (third, third, third))
    slot_ii = roulette(r, (third, third, third))
    return frame_i[slot_i], frame_ii[slot_ii]


def _axes_agree(outcome_i: str, outcome_ii: str, shared_axis: str) -> bool:
    # A side assigns 0 to its selected axis and 1 to the other two.
    return (outcome_i == shared_axis) == (outcome_ii == shared_axis)


def classical_agreement_rate(frame_i: Sequence[str], frame_ii: Sequence[str],
                             shared_axis: str, trials: int, rng: SeededRng) -> float:
    """Fraction of trials where both sides assign the same squared value to
    ``shared_axis``; 1.0 for identical orderings, below 1 otherwise."""
    frame_i = _check_ordering("frame_i", frame_i)
    frame_ii = _check_ordering("frame_ii", frame_ii)
    if shared_axis not in frame_i or shared_axis not in frame_ii:
        raise ValueError(f"shared axis {shared_axis!r} missing from a frame")
    agree = 0
    for _ in range(trials):
        o1, o2 = classical_shared_seed_trial(frame_i, frame_ii, rng.uniform())
        agree += _axes_agree(o1, o2, shared_axis)
    return agree / trials


def classical_agreement_analytic(frame_i: Sequence[str], frame_ii: Sequence[str],
                                 shared_axis: str) -> float:
    """Exact agreement probability by enumerating the three roulette cells."""
    frame_i = _check_ordering("frame_i", frame_i)
    frame_ii = _check_ordering("frame_ii", frame_ii)
    if shared_axis not in frame_i or shared_axis not in frame_ii:
        raise ValueError(f"shared axis {shared_axis!r} missing from a frame")
    return sum(_axes_agree(frame_i[m], frame_ii[m], shared_axis)
               for m in range(3)) / 3.0


def run_ck_singlet(seed: int, trials: int, params: dict) -> ExperimentReport:
    axis = params["axis"]
    pset = ck_projector_set(axis)
    analytic: dict[str, float] = {}
    for k, v in pset.labels:
        triple = k_value_to_jsq_triple(k)
        p = 1.0 / 3.0 if triple[_AXIS_INDEX[axis]] == v else 0.0
        analytic[f"outcome/K={k},J{axis}2={v}"] = p
    analytic["agreement/agree"] = 1.0
    analytic["agreement/disagree"] = 0.0

    counts = {label: 0 for label in analytic}
    for i in range(trials):
        rng = SeededRng(derive_seed(seed, i))
        trial = ck_frame_axis_trial(axis, rng)
        counts[f"outcome/K={trial.k_value},J{axis}2={trial.partner_value}"] += 1
        counts["agreement/agree" if trial.agrees else "agreement/disagree"] += 1

    rate = counts["agreement/agree"] / trials
    tests = [TestResult("both sides agree on the shared axis in every trial",
                        1.0 - rate, 0.0, rate == 1.0)]
    tests.extend(frequency_test(counts, analytic, trials))
    return ExperimentReport(
        experiment="ck-singlet",
        seed=seed,
        trials=trials,
        parameters={"axis": axis},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )


def run_ck_classical(seed: int, trials: int, params: dict) -> ExperimentReport:
    frame_i = _check_ordering("frame1", params["frame1"])
    frame_ii = _check_ordering("frame2", params["frame2"])
    shared = params["shared_axis"]
    rate_analytic = classical_agreement_analytic(frame_i, frame_ii, shared)

    analytic: dict[str, float] = {
        f"pair/{u}:{v}": 0.0 for u in AXES for v in AXES}
    for m in range(3):
        analytic[f"pair/{frame_i[m]}:{frame_ii[m]}"] = 1.0 / 3.0
    analytic["agreement/agree"] = rate_analytic
    analytic["agreement/disagree"] = 1.0 - rate_analytic

    counts = {label: 0 for label in analytic}
    for i in range(trials):
        rng = SeededRng(derive_seed(seed, i))
        o1, o2 = classical_shared_seed_trial(frame_i, frame_ii, rng.uniform())
        counts[f"pair/{o1}:{o2}"] += 1
        agree = _axes_agree(o1, o2, shared)
        counts["agreement/agree" if agree else "agreement/disagree"] += 1

    tests = frequency_test(counts, analytic, trials)
    return ExperimentReport(
        experiment="ck-classical",
        seed=seed,
        trials=trials,
        parameters={"frame1": list(frame_i), "frame2": list(frame_ii),
                    "shared_axis": shared},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )
