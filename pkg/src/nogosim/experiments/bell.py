"""Two-qubit singlet statistics: joint axis measurements, the correlator
E(a,b) = −<a,b>, and the two inequalities it violates.

Joint outcome probabilities for axes a, b are
{¼(1−<a,b>), ¼(1+<a,b>), ¼(1+<a,b>), ¼(1−<a,b>)} over the sign pairs
(++, −+, +−, −−).  A trial can draw all four outcomes from a single
roulette ("simultaneous") or chain two one-sided projective measurements
in either order; the three procedures have identical statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import pi, radians, sqrt

import numpy as np

from ..core import ProjectorSet, StateVector, lift
from ..qubit import BlochVector, axis_projector, equatorial_axis
from ..report import ExperimentReport, TestResult, empirical_from_counts, frequency_test
from ..sampler import SeededRng, derive_seed, measure_projective, roulette

__all__ = [
    "BELL_LABELS",
    "BELL_MODES",
    "bell_state",
    "bell_joint_probs",
    "bell_correlator",
    "BellInequalityResult",
    "bell_original_inequality",
    "chsh",
    "chsh_scan",
    "bell_trial",
    "run_bell_chsh",
    "run_bell_original",
]

# Sign pairs (left axis, right axis) in the fixed listing order.
BELL_LABELS = ("++", "-+", "+-", "--")
BELL_MODES = ("simultaneous", "l-then-r", "r-then-l")

_SQRT2_INV = 1.0 / sqrt(2.0)
_BELL = StateVector([0.0, _SQRT2_INV, -_SQRT2_INV, 0.0], dims=(2, 2))


def bell_state() -> StateVector:
    """The two-qubit singlet (|01> − |10>)/√2."""
    return _BELL


def bell_joint_probs(a: BlochVector, b: BlochVector
                     ) -> tuple[float, float, float, float]:
    """Joint probabilities of the four sign pairs, in ``BELL_LABELS`` order."""
    d = a.dot(b)
    anti = 0.25 * (1.0 - d)
    corr = 0.25 * (1.0 + d)
    return (anti, corr, corr, anti)


def bell_correlator(a: BlochVector, b: BlochVector) -> float:
    """Expectation of the ±1 outcome product; equals −<a,b> for the singlet."""
    p = bell_joint_probs(a, b)
    return p[0] - p[1] - p[2] + p[3]


@dataclass(frozen=True)
class BellInequalityResult:
    lhs: float
    rhs: float
    violated: bool


def bell_original_inequality(a: BlochVector, b: BlochVector, c: BlochVector
                             ) -> BellInequalityResult:
    """|E(a,b) − E(a,c)| <= 1 − E(b,c): holds for local hidden variables,
    violated for suitable axis choices here."""
    lhs = abs(bell_correlator(a, b) - bell_correlator(a, c))
    rhs = 1.0 - bell_correlator(b, c)
    return BellInequalityResult(lhs, rhs, lhs > rhs)


def chsh(a: BlochVector, b: BlochVector, c: BlochVector, d: BlochVector) -> float:
    """E(a,b) + E(b,c) + E(c,d) − E(d,a); |S| <= 2 classically, 2√2 here."""
    return (bell_correlator(a, b) + bell_correlator(b, c)
            + bell_correlator(c, d) - bell_correlator(d, a))


def _coplanar_s(b, c, d):
    # S for equatorial axes at angles (0, b, c, d).
    return -np.cos(b) - np.cos(c - b) - np.cos(d - c) + np.cos(d)


def chsh_scan(steps: int) -> tuple[float, tuple[float, float, float, float]]:
    """Grid-search max |S| over coplanar axes, then refine.

    The first axis is pinned to angle 0 (S depends only on differences);
    the other three scan a uniform grid of ``steps`` points over [0, 2π),
    followed by three local refinement passes at halved step size.
    """
    steps = int(steps)
    if steps < 4:
        raise ValueError(f"need at least 4 grid steps, got {steps}")
    grid = np.arange(steps) * (2.0 * pi / steps)
    cos_d = np.cos(grid)
    cd = np.cos(grid[None, :] - grid[:, None])  # cd[ci, di] = cos(d - c)
    best_val = -1.0
    best = (0.0, 0.0, 0.0)
    for b in grid:
        slab = -np.cos(b) - np.cos(grid - b)[:, None] - cd + cos_d[None, :]
        flat = int(np.argmax(np.abs(slab)))
        ci, di = divmod(flat, steps)
        val = abs(float(slab[ci, di]))
        if val > best_val:
            best_val = val
            best = (float(b), float(grid[ci]), float(grid[di]))
    step = 2.0 * pi / steps
    b0, c0, d0 = best
    for _ in range(3):
        step *= 0.5
        offsets = step * np.arange(-2, 3)
        bb = (b0 + offsets)[:, None, None]
        cc = (c0 + offsets)[None, :, None]
        dd = (d0 + offsets)[None, None, :]
        cube = np.abs(_coplanar_s(bb, cc, dd))
        flat = int(np.argmax(cube))
        i, rem = divmod(flat, 25)
        j, k = divmod(rem, 5)
        if float(cube[i, j, k]) > best_val:
            best_val = float(cube[i, j, k])
            b0, c0, d0 = b0 + offsets[i], c0 + offsets[j], d0 + offsets[k]
    return best_val, (0.0, float(b0), float(c0), float(d0))


@lru_cache(maxsize=128)
def _side_psets(ax: float, ay: float, az: float, side: int) -> ProjectorSet:
    axis = BlochVector(ax, ay, az)
    plus = lift(axis_projector(axis), (side,), (2, 2))
    minus = lift(axis_projector(axis.negated()), (side,), (2, 2))
    return ProjectorSet([plus, minus], labels=("+", "-"))


def bell_trial(a: BlochVector, b: BlochVector, mode: str, rng: SeededRng) -> str:
    """One sampled sign pair for axes (a, b); ``mode`` picks the procedure.

    "simultaneous" draws the pair from one four-sector roulette; the other
    modes chain the two partial projective measurements in either order.
    All three have the same outcome distribution.
    """
    if mode == "simultaneous":
        idx = roulette(rng.uniform(), bell_joint_probs(a, b))
        return BELL_LABELS[idx]
    left = _side_psets(a.x, a.y, a.z, 0)
    right = _side_psets(b.x, b.y, b.z, 1)
    if mode == "l-then-r":
        first = measure_projective(_BELL, left, rng)
        second = measure_projective(first.post_state, right, rng)
        return f"{first.label}{second.label}"
    if mode == "r-then-l":
        first = measure_projective(_BELL, right, rng)
        second = measure_projective(first.post_state, left, rng)
        return f"{second.label}{first.label}"
    raise ValueError(f"mode must be one of {BELL_MODES}, got {mode!r}")


def _empirical_correlator(counts: dict[str, int], prefix: str, trials: int) -> float:
    return (counts[f"{prefix}/++"] + counts[f"{prefix}/--"]
            - counts[f"{prefix}/-+"] - counts[f"{prefix}/+-"]) / trials


def _sample_pairs(seed: int, trials: int, mode: str,
                  pairs: list[tuple[str, BlochVector, BlochVector]]
                  ) -> tuple[dict[str, float], dict[str, int]]:
    analytic: dict[str, float] = {}
    counts: dict[str, int] = {}
    for name, u, v in pairs:
        for label, p in zip(BELL_LABELS, bell_joint_probs(u, v)):
            analytic[f"{name}/{label}"] = p
            counts[f"{name}/{label}"] = 0
    trial_index = 0
    for name, u, v in pairs:
        for _ in range(trials):
            rng = SeededRng(derive_seed(seed, trial_index))
            trial_index += 1
            counts[f"{name}/{bell_trial(u, v, mode, rng)}"] += 1
    return analytic, counts


def run_bell_chsh(seed: int, trials: int, params: dict) -> ExperimentReport:
    angles = [radians(x) for x in params["angles"]]
    mode = params["mode"]
    if mode not in BELL_MODES:
        raise ValueError(f"mode must be one of {BELL_MODES}, got {mode!r}")
    axes = [equatorial_axis(t) for t in angles]
    pairs = [("ab", axes[0], axes[1]), ("bc", axes[1], axes[2]),
             ("cd", axes[2], axes[3]), ("da", axes[3], axes[0])]
    analytic, counts = _sample_pairs(seed, trials, mode, pairs)

    s_analytic = chsh(*axes)
    signs = {"ab": 1.0, "bc": 1.0, "cd": 1.0, "da": -1.0}
    s_empirical = sum(sign * _empirical_correlator(counts, name, trials)
                      for name, sign in signs.items())
    variance = sum((1.0 - bell_correlator(u, v) ** 2) / trials for _, u, v in pairs)
    s_bound = 4.0 * sqrt(variance)
    scan_max, _ = chsh_scan(params["scan_steps"])

    tests = [
        TestResult("analytic |S| exceeds the classical bound 2",
                   abs(s_analytic), 2.0, abs(s_analytic) > 2.0),
        TestResult("empirical S within 4 sigma of analytic",
                   abs(s_empirical - s_analytic), s_bound,
                   abs(s_empirical - s_analytic) <= s_bound),
        TestResult("coplanar scan finds |S| above 2",
                   scan_max, 2.0, scan_max > 2.0),
    ]
    tests.extend(frequency_test(counts, analytic, trials))
    return ExperimentReport(
        experiment="bell-chsh",
        seed=seed,
        trials=trials,
        parameters={"angles": list(params["angles"]), "mode": mode,
                    "scan_steps": params["scan_steps"]},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )


def run_bell_original(seed: int, trials: int, params: dict) -> ExperimentReport:
    angles = [radians(x) for x in params["angles"]]
    axes = [equatorial_axis(t) for t in angles]
    pairs = [("ab", axes[0], axes[1]), ("ac", axes[0], axes[2]),
             ("bc", axes[1], axes[2])]
    analytic, counts = _sample_pairs(seed, trials, "simultaneous", pairs)

    result = bell_original_inequality(*axes)
    tests = [
        TestResult("inequality violated (lhs > rhs)",
                   result.lhs - result.rhs, 0.0, result.violated),
    ]
    for name, u, v in pairs:
        e_analytic = bell_correlator(u, v)
        e_empirical = _empirical_correlator(counts, name, trials)
        bound = 4.0 * sqrt((1.0 - e_analytic ** 2) / trials)
        dev = abs(e_empirical - e_analytic)
        tests.append(TestResult(f"empirical E[{name}] within 4 sigma", dev, bound,
                                dev <= bound))
    tests.extend(frequency_test(counts, analytic, trials))
    return ExperimentReport(
        experiment="bell-original",
        seed=seed,
        trials=trials,
        parameters={"angles": list(params["angles"])},
        analytic=analytic,
        empirical=empirical_from_counts(counts, trials),
        tests=tuple(tests),
    )
