"""Order independence of sequential squared-spin measurements.

For a spin-1 state the joint distribution of the (J_x², J_y², J_z²) value
triple is the same for every measurement order; only one of the three
triples {0,1,1}, {1,0,1}, {1,1,0} can occur.  The driver runs all six
orders on the same per-trial seeds and checks both the analytic identity
and the sampled frequencies.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from ..core import StateVector
from ..report import ExperimentReport, TestResult, empirical_from_counts, frequency_test
from ..sampler import SeededRng, derive_seed
from ..spin1 import AXES, jsq_order_distribution, sequential_jsq_measure
from ..tolerances import ALGEBRA_TOL

__all__ = ["TRIPLES", "ORDERS", "run_ks_spin1_order"]

TRIPLES = ((0, 1, 1), (1, 0, 1), (1, 1, 0))
ORDERS = tuple(permutations(AXES))


def _triple_label(triple: tuple[int, int, int]) -> str:
    return "".join(str(v) for v in triple)


def run_ks_spin1_order(seed: int, trials: int, params: dict) -> ExperimentReport:
    state = StateVector(np.asarray(params["state"], dtype=complex))
    if state.dims != (3,):
        raise ValueError("state must have three amplitudes")

    base = jsq_order_distribution(state, ORDERS[0])
    analytic: dict[str, float] = {}
    max_spread = 0.0
    for order in ORDERS:
        dist = jsq_order_distribution(state, order)
        for triple in TRIPLES:
            p = dist.get(triple, 0.0)
            analytic[f"{''.join(order)}/{_triple_label(triple)}"] = p
            max_spread = max(max_spread, abs(p - base.get(triple, 0.0)))

    # Direct component probabilities: p(triple with zero at slot i) = |k_i|².
    component = np.abs(state.amplitudes) ** 2
    direct_dev = max(
        abs(base.get(triple, 0.0) - float(component[i]))
        for i, triple in enumerate(TRIPLES))

    counts = {label: 0 for label in analytic}
    for i in range(trials):
        rng = SeededRng(derive_seed(seed, i))
        for order in ORDERS:
            triple, _ = sequential_jsq_measure(state, order, rng)
            counts[f"{''.join(order)}/{_triple_label(triple)}"] += 1

    tests = [
        TestResult("analytic distribution identical across all 6 orders",
                   max_spread, ALGEBRA_TOL, max_spread <= ALGEBRA_TOL),
        TestResult("analytic distribution equals squared amplitudes",
                   direct_dev, ALGEBRA_TOL, direct_dev <= ALGEBRA_TOL),
    ]
    tests.extend(frequency_test(counts, analytic, trials))
    return ExperimentReport(
        experiment="ks-spin1-order",
        seed=seed,
        trials=trials,
        parameters={"state": [[a.real, a.imag] for a in state.amplitudes]},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )
