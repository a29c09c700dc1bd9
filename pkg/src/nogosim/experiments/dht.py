"""Distant measurement with ancilla carriers read out after reunion.

A four-qubit register (ancilla A, data pair in the singlet state, ancilla
B) evolves in three steps: attach the ancillas, apply one two-qubit gate
on each side (either the copy gate |a>|b> -> |a xor b>|b> or the exchange
gate), then reorder so the ancillas sit together and measure them in the
computational basis.  The ancilla pair splits 1/2 / 1/2 between the two
correlated readings; with the exchange gate the data pair is left exactly
in |00> whatever the readout gives.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from ..core import (
    Operator,
    ProjectorSet,
    StateVector,
    apply,
    fidelity,
    lift,
    measurement_gate,
    permute_subsystems,
    swap_gate,
    tensor,
)
from ..report import ExperimentReport, TestResult, empirical_from_counts, frequency_test
from ..sampler import MeasurementOutcome, SeededRng, derive_seed, measure_projective

__all__ = [
    "DHT_VARIANTS",
    "REGISTER_DIMS",
    "REUNION_PERM",
    "dht_steps",
    "dht_step_targets",
    "ancilla_projectors",
    "DhtRun",
    "dht_run",
    "run_dht",
]

DHT_VARIANTS = ("measurement", "swap")

# Register order before reunion: (ancilla A, data 1, data 2, ancilla B).
REGISTER_DIMS = (2, 2, 2, 2)
# Reunion reorders to (ancilla A, ancilla B, data 1, data 2).
REUNION_PERM = (0, 3, 1, 2)

_SQRT2_INV = 1.0 / sqrt(2.0)


def _check_variant(variant: str) -> str:
    if variant not in DHT_VARIANTS:
        raise ValueError(f"variant must be one of {DHT_VARIANTS}, got {variant!r}")
    return variant


def _signed_pair(indices_plus: tuple[int, ...], indices_minus: tuple[int, ...],
                 dims: tuple[int, ...]) -> StateVector:
    amps = np.zeros(np.prod(dims), dtype=complex)
    amps[np.ravel_multi_index(indices_plus, dims)] = _SQRT2_INV
    amps[np.ravel_multi_index(indices_minus, dims)] = -_SQRT2_INV
    return StateVector(amps, dims)


def dht_steps(variant: str) -> tuple[StateVector, StateVector, StateVector]:
    """The three protocol states, computed by applying the lifted gates."""
    variant = _check_variant(variant)
    zero = StateVector.basis((2,), (0,))
    singlet = _signed_pair((0, 1), (1, 0), (2, 2))
    step1 = tensor(zero, tensor(singlet, zero))
    gate = measurement_gate() if variant == "measurement" else swap_gate()
    # Each gate's first slot is the local ancilla: (A, data 1) and (B, data 2).
    side_a = lift(gate, (0, 1), REGISTER_DIMS)
    side_b = lift(gate, (3, 2), REGISTER_DIMS)
    step2 = apply(side_b, apply(side_a, step1))
    step3 = permute_subsystems(step2, REUNION_PERM)
    return step1, step2, step3


def dht_step_targets(variant: str) -> tuple[StateVector, StateVector, StateVector]:
    """The same three states written directly from their amplitudes,
    independent of the gate pipeline; used to cross-check dht_steps."""
    variant = _check_variant(variant)
    step1 = _signed_pair((0, 0, 1, 0), (0, 1, 0, 0), REGISTER_DIMS)
    if variant == "measurement":
        step2 = _signed_pair((0, 0, 1, 1), (1, 1, 0, 0), REGISTER_DIMS)
        step3 = _signed_pair((0, 1, 0, 1), (1, 0, 1, 0), REGISTER_DIMS)
    else:
        step2 = _signed_pair((0, 0, 0, 1), (1, 0, 0, 0), REGISTER_DIMS)
        step3 = _signed_pair((0, 1, 0, 0), (1, 0, 0, 0), REGISTER_DIMS)
    return step1, step2, step3


def _ancilla_pset() -> ProjectorSet:
    projectors = []
    labels = []
    for a in (0, 1):
        for b in (0, 1):
            ray = np.zeros((4, 4), dtype=complex)
            ray[2 * a + b, 2 * a + b] = 1.0
            projectors.append(lift(Operator(ray), (0, 1), REGISTER_DIMS))
            labels.append(f"{a}{b}")
    return ProjectorSet(projectors, labels=labels)


_ANCILLA_PSET = _ancilla_pset()


def ancilla_projectors() -> ProjectorSet:
    """Computational-basis readout of the reunited ancilla pair."""
    return _ANCILLA_PSET


def _branch_target(variant: str, label: str) -> StateVector:
    a, b = int(label[0]), int(label[1])
    data = (0, 0) if variant == "swap" else (a, b)
    return StateVector.basis(REGISTER_DIMS, (a, b) + data)


@dataclass(frozen=True, eq=False)
class DhtRun:
    """One full protocol run: step states, readout, and branch fidelity."""

    variant: str
    steps: tuple[StateVector, StateVector, StateVector]
    outcome: MeasurementOutcome
    branch_fidelity: float


def dht_run(variant: str, rng: SeededRng) -> DhtRun:
    """Execute the three steps and the final destructive ancilla readout.

    ``branch_fidelity`` compares the post-measurement register with the
    expected product state for the sampled reading (data pair |00> for the
    swap variant, the correlated pair for the copy variant); it is 1 up to
    rounding.
    """
    variant = _check_variant(variant)
    steps = dht_steps(variant)
    outcome = measure_projective(steps[2], _ANCILLA_PSET, rng)
    target = _branch_target(variant, outcome.label)
    return DhtRun(variant, steps, outcome, fidelity(outcome.post_state, target))


def run_dht(seed: int, trials: int, params: dict) -> ExperimentReport:
    variant = _check_variant(params["variant"])
    steps = dht_steps(variant)
    targets = dht_step_targets(variant)

    analytic = {"ancilla/00": 0.0, "ancilla/01": 0.5,
                "ancilla/10": 0.5, "ancilla/11": 0.0}
    counts = {label: 0 for label in analytic}
    worst_branch = 0.0
    for i in range(trials):
        rng = SeededRng(derive_seed(seed, i))
        outcome = measure_projective(steps[2], _ANCILLA_PSET, rng)
        counts[f"ancilla/{outcome.label}"] += 1
        target = _branch_target(variant, outcome.label)
        worst_branch = max(worst_branch,
                           1.0 - fidelity(outcome.post_state, target))

    tests = []
    for name, computed, target in zip(("attach", "local gates", "reunion"),
                                      steps, targets):
        dev = 1.0 - fidelity(computed, target)
        tests.append(TestResult(f"step '{name}' matches closed form up to phase",
                                dev, 1e-12, dev <= 1e-12))
    branch_name = ("data pair left in |00> after readout" if variant == "swap"
                   else "register matches the correlated branch after readout")
    tests.append(TestResult(branch_name, worst_branch, 1e-12,
                            worst_branch <= 1e-12))
    tests.extend(frequency_test(counts, analytic, trials))
    return ExperimentReport(
        experiment="dht",
        seed=seed,
        trials=trials,
        parameters={"variant": variant},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )
