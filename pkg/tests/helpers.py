"""Shared helpers for the test suite."""

import numpy as np

from nogosim.core import Operator, StateVector


def random_state(rng: np.random.Generator, dim: int, dims=None) -> StateVector:
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector.normalized(amps, dims)


def random_unitary(rng: np.random.Generator, dim: int) -> Operator:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return Operator(q)


def random_amplitude_pair(rng: np.random.Generator) -> tuple[complex, complex]:
    """Normalized qubit amplitudes (alpha, beta)."""
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = v / np.linalg.norm(v)
    return complex(v[0]), complex(v[1])
