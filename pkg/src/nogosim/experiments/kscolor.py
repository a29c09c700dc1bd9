"""Color-sphere model: real unit 3-vectors ("colors") measured by filter
questions and by a full three-axis frame.

A filter question accepts with probability <s,f>²; a frame measurement
returns one of three axes with the squared scalar products as weights.
Asking the three filter questions independently instead gives zero to
three "yes" answers, which is a different experiment from the frame
measurement even though both use the same squared overlaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from ..core import StateVector
from ..report import ExperimentReport, empirical_from_counts, frequency_test
from ..sampler import SeededRng, derive_seed, measure_basis, measure_filter
from ..spin1 import Frame3
from ..tolerances import STRUCT_TOL

__all__ = [
    "ColorState",
    "RICH_BLUE",
    "CADET_BLUE",
    "BLUE_FILTER",
    "COLOR_NAMES",
    "ks_filter_prob",
    "ks_frame_probs",
    "ks_independent_yes",
    "run_ks_color",
]

COLOR_NAMES = ("red", "green", "blue")

RICH_BLUE = (4.0 / 9.0, 4.0 / 9.0, 7.0 / 9.0)
CADET_BLUE = (1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0)
BLUE_FILTER = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class ColorState:
    """Real unit 3-vector (red, green, blue)."""

    r: float
    g: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "g", float(self.g))
        object.__setattr__(self, "b", float(self.b))
        norm = sqrt(self.r ** 2 + self.g ** 2 + self.b ** 2)
        if abs(norm - 1.0) > STRUCT_TOL:
            raise ValueError(f"color must be a unit vector, |s| = {norm!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.g, self.b])

    def as_state(self) -> StateVector:
        """The same vector as a real 3-dimensional pure state."""
        return StateVector(self.as_array().astype(complex))


def ks_filter_prob(s: ColorState, f: ColorState) -> float:
    """Probability <s,f>² that the filter ``f`` answers "yes" on ``s``."""
    return float(np.dot(s.as_array(), f.as_array()) ** 2)


def ks_frame_probs(s: ColorState, frame: Frame3) -> tuple[float, float, float]:
    """Outcome probabilities of the three-axis frame measurement."""
    p = (frame.matrix.T @ s.as_array()) ** 2
    return (float(p[0]), float(p[1]), float(p[2]))


def ks_independent_yes(p1: float, p2: float, p3: float
                       ) -> tuple[float, float, float, float]:
    """Probabilities of 0, 1, 2, 3 "yes" answers to three independent questions."""
    q1, q2, q3 = 1.0 - p1, 1.0 - p2, 1.0 - p3
    return (
        q1 * q2 * q3,
        p1 * q2 * q3 + q1 * p2 * q3 + q1 * q2 * p3,
        p1 * p2 * q3 + q1 * p2 * p3 + p1 * q2 * p3,
        p1 * p2 * p3,
    )


def run_ks_color(seed: int, trials: int, params: dict) -> ExperimentReport:
    """Sample the filter question, the frame measurement, and the
    three-independent-questions count, once each per trial."""
    state = ColorState(*params["state"])
    filt = ColorState(*params["filter"])
    frame = Frame3.identity()

    p_yes = ks_filter_prob(state, filt)
    frame_p = ks_frame_probs(state, frame)
    nyes = ks_independent_yes(*frame_p)

    analytic: dict[str, float] = {
        "filter/yes": p_yes,
        "filter/no": 1.0 - p_yes,
    }
    for name, p in zip(COLOR_NAMES, frame_p):
        analytic[f"frame/{name}"] = p
    for n, p in enumerate(nyes):
        analytic[f"nyes/{n}"] = p

    state_sv = state.as_state()
    filter_sv = filt.as_state()
    axis_svs = [StateVector(frame.column(i).astype(complex)) for i in range(3)]

    counts = {label: 0 for label in analytic}
    for i in range(trials):
        rng = SeededRng(derive_seed(seed, i))
        hit = measure_filter(state_sv, filter_sv, rng)
        counts["filter/yes" if hit.accepted else "filter/no"] += 1
        outcome = measure_basis(state_sv, axis_svs, rng)
        counts[f"frame/{COLOR_NAMES[outcome.label]}"] += 1
        n = sum(measure_filter(state_sv, axis, rng).accepted for axis in axis_svs)
        counts[f"nyes/{n}"] += 1

    tests = frequency_test(counts, analytic, trials)
    return ExperimentReport(
        experiment="ks-color",
        seed=seed,
        trials=trials,
        parameters={"state": list(params["state"]), "filter": list(params["filter"])},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )
