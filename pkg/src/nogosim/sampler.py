"""Seeded randomness and the four measurement procedures.

The generator is pinned so runs replay bit-for-bit on any platform:
xoshiro256** over four 64-bit words, seeded through the splitmix64
sequence, with uniforms taken from the top 53 bits of each output word.
Trial-level code should give every trial its own generator via
``derive_seed(master_seed, trial_index)`` instead of sharing one stream,
so results never depend on trial execution order.

Measurement outcomes are selected with :func:`roulette`: half-open
cumulative cells, except the last cell which is closed at r = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Any, Sequence

import numpy as np

from .core import Operator, ProjectorSet, StateVector
from .tolerances import (
    EIGENVALUE_GROUP_TOL,
    SPECTRAL_RECONSTRUCTION_TOL,
    STRUCT_TOL,
    ZERO_PROB,
)

__all__ = [
    "SeededRng",
    "derive_seed",
    "roulette",
    "MeasurementOutcome",
    "FilterResult",
    "measure_filter",
    "measure_basis",
    "measure_projective",
    "measure_operator",
    "spectral_decomposition",
    "sequential_distribution",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """splitmix64 output function: two multiply/xor-shift avalanche rounds."""
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def derive_seed(master_seed: int, trial_index: int) -> int:
    """Per-trial seed: the (trial_index+1)-th splitmix64 output of the master seed."""
    master_seed = _check_seed(master_seed)
    trial_index = int(trial_index)
    if trial_index < 0:
        raise ValueError(f"trial index must be non-negative, got {trial_index}")
    return _mix64((master_seed + (trial_index + 1) * _GOLDEN) & _MASK64)


class SeededRng:
    """xoshiro256** generator; same seed gives the same stream everywhere.

    Single-owner mutable state: never share an instance between concurrent
    consumers, hand out derived seeds instead.
    """

    __slots__ = ("seed", "_s")

    def __init__(self, seed: int):
        self.seed = _check_seed(seed)
        z = self.seed
        state = []
        for _ in range(4):
            z = (z + _GOLDEN) & _MASK64
            state.append(_mix64(z))
        if not any(state):
            state[0] = _GOLDEN  # xoshiro must not start from the all-zero state
        self._s = state

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self._s
        r = (s1 * 5) & _MASK64
        r = (((r << 7) | (r >> 57)) & _MASK64) * 9 & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        self._s = [s0, s1, s2, s3]
        return r

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits of one output word."""
        return (self.next_uint64() >> 11) * 1.1102230246251565e-16  # 2**-53


def roulette(r: float, probs: Sequence[float]) -> int:
    """Index of the cumulative-probability cell containing ``r``.

    Cell k covers [cum(k-1), cum(k)); the last cell is closed so r = 1
    lands in it.  Zero-width cells are skipped by construction.
    """
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    total = 0.0
    for p in probs:
        if p < 0.0:
            raise ValueError(f"negative probability {p}")
        total += p
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total}, expected 1")
    cum = 0.0
    last = len(probs) - 1
    for k, p in enumerate(probs):
        cum += p
        if k < last and r < cum:
            return k
    return last


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """One sampled outcome: label, its Born probability, and the post-state."""

    label: Any
    probability: float
    post_state: StateVector


@dataclass(frozen=True, eq=False)
class FilterResult:
    """Yes/no result of a filter question; 'no' carries no post-state."""

    accepted: bool
    yes_probability: float
    post_state: StateVector | None


def measure_filter(s: StateVector, phi: StateVector, rng: SeededRng) -> FilterResult:
    """Ask "is ``s`` similar to ``phi``?": yes with probability |<s|phi>|²."""
    if s.dim != phi.dim:
        raise ValueError(f"dimension mismatch: {s.dim} vs {phi.dim}")
    p_yes = min(abs(complex(np.vdot(s.amplitudes, phi.amplitudes))) ** 2, 1.0)
    accepted = roulette(rng.uniform(), (p_yes, 1.0 - p_yes)) == 0
    return FilterResult(accepted, p_yes, phi if accepted else None)


def measure_basis(s: StateVector, basis: Sequence[StateVector],
                  rng: SeededRng) -> MeasurementOutcome:
    """Measure in a complete orthonormal basis; label is the basis index."""
    if len(basis) != s.dim:
        raise ValueError(f"basis has {len(basis)} vectors, need {s.dim}")
    mat = np.column_stack([b.amplitudes for b in basis])
    gram_dev = float(np.max(np.abs(mat.conj().T @ mat - np.eye(s.dim))))
    if gram_dev > STRUCT_TOL:
        raise ValueError(f"basis is not orthonormal (Gram deviation {gram_dev:.3e})")
    probs = np.abs(mat.conj().T @ s.amplitudes) ** 2
    kept = [(k, float(p)) for k, p in enumerate(probs) if p >= ZERO_PROB]
    choice = roulette(rng.uniform(), [p for _, p in kept])
    k, p = kept[choice]
    return MeasurementOutcome(k, p, basis[k])


def measure_projective(s: StateVector, pset: ProjectorSet,
                       rng: SeededRng) -> MeasurementOutcome:
    """Project onto one subspace of ``pset`` with Born probabilities.

    Branches of probability below ``ZERO_PROB`` are excluded before
    sampling, so they are never selected and the post-state division is
    always well defined.
    """
    if pset.dim != s.dim:
        raise ValueError(f"projector dimension {pset.dim} does not match state {s.dim}")
    amps = s.amplitudes
    kept = []
    for label, proj in zip(pset.labels, pset.projectors):
        v = proj.entries @ amps
        p = float(np.vdot(v, v).real)  # equals <s|P|s> for a projector
        if p >= ZERO_PROB:
            kept.append((label, p, v))
    choice = roulette(rng.uniform(), [p for _, p, _ in kept])
    label, p, v = kept[choice]
    return MeasurementOutcome(label, p, StateVector(v / sqrt(p), s.dims))


def spectral_decomposition(a: Operator, tol: float = EIGENVALUE_GROUP_TOL
                           ) -> tuple[tuple[float, ...], ProjectorSet]:
    """Eigenvalues and eigenspace projectors of a Hermitian operator.

    Eigenvalues within ``tol`` of each other are merged into one degenerate
    eigenspace; the projector set is labelled by the (grouped) eigenvalues.
    """
    if not a.is_hermitian():
        raise ValueError(
            f"operator is not Hermitian (deviation {a.hermitian_deviation():.3e})")
    w, v = np.linalg.eigh(a.entries)
    groups: list[tuple[int, int]] = []
    start = 0
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > tol:
            groups.append((start, i))
            start = i
    groups.append((start, len(w)))
    values = []
    projectors = []
    for lo, hi in groups:
        cols = v[:, lo:hi]
        values.append(float(np.mean(w[lo:hi])))
        projectors.append(Operator(cols @ cols.conj().T))
    recon = sum(val * p.entries for val, p in zip(values, projectors))
    recon_dev = float(np.max(np.abs(a.entries - recon)))
    if recon_dev > SPECTRAL_RECONSTRUCTION_TOL:
        raise ArithmeticError(f"spectral reconstruction off by {recon_dev:.3e}")
    values = tuple(values)
    return values, ProjectorSet(projectors, labels=values)


def measure_operator(s: StateVector, a: Operator, rng: SeededRng) -> MeasurementOutcome:
    """Measure a Hermitian operator; the label is the sampled eigenvalue."""
    _, pset = spectral_decomposition(a)
    return measure_projective(s, pset, rng)


def sequential_distribution(s: StateVector, psets: Sequence[ProjectorSet]
                            ) -> dict[tuple, float]:
    """Exact joint outcome distribution of chained projective measurements.

    Returns the probability of every surviving label path when the sets in
    ``psets`` are measured in the given order.  For commuting sets this is
    order-independent; tests assert that, the function itself does not
    require commutation.
    """
    paths: dict[tuple, tuple[float, np.ndarray]] = {(): (1.0, s.amplitudes)}
    for pset in psets:
        if pset.dim != s.dim:
            raise ValueError("projector set dimension does not match state")
        new_paths: dict[tuple, tuple[float, np.ndarray]] = {}
        for labels, (p, amps) in paths.items():
            for label, proj in zip(pset.labels, pset.projectors):
                v = proj.entries @ amps
                q = float(np.vdot(v, v).real)
                if q < ZERO_PROB:
                    continue
                new_paths[labels + (label,)] = (p * q, v / sqrt(q))
        paths = new_paths
    return {labels: p for labels, (p, _) in paths.items()}
