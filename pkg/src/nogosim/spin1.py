"""Spin-1 algebra: angular momentum operators, their squares, and the
combined observable that reads all three squares in one measurement.

The squared components J_x², J_y², J_z² commute, sum to 2·1, and take
values {0, 1, 1} in some order; the diagonal observable 2J_x² + J_y² with
spectrum {1, 2, 3} encodes which component is zero.  Sequential
measurement of the squares reproduces the same joint statistics in any
order.
"""

from __future__ import annotations

from math import cos, sin, sqrt
from typing import Sequence

import numpy as np

from .core import Operator, ProjectorSet, StateVector
from .sampler import MeasurementOutcome, SeededRng, measure_projective, sequential_distribution
from .tolerances import STRUCT_TOL

__all__ = [
    "Frame3",
    "rotation_about_x",
    "random_frame",
    "spin_operators",
    "spin_eigenbasis",
    "jsq",
    "jsq_projectors",
    "k_operator",
    "k_eigenbasis",
    "jsq_from_k",
    "conjugate_by_frame",
    "k_value_to_jsq_triple",
    "sequential_jsq_measure",
    "jsq_order_distribution",
]

AXES = ("x", "y", "z")
_AXIS_INDEX = {"x": 0, "y": 1, "z": 2}


class Frame3:
    """Right-handed orthonormal frame; columns are the frame's x, y, z axes."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, *, tol: float = STRUCT_TOL):
        arr = np.array(matrix, dtype=float)
        if arr.shape != (3, 3):
            raise ValueError(f"frame matrix must be 3x3, got shape {arr.shape}")
        dev = float(np.max(np.abs(arr.T @ arr - np.eye(3))))
        if dev > tol:
            raise ValueError(f"frame is not orthogonal (deviation {dev:.3e})")
        det = float(np.linalg.det(arr))
        if abs(det - 1.0) > tol:
            raise ValueError(f"frame must be right-handed, det = {det!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Frame3 is immutable")

    @classmethod
    def identity(cls) -> "Frame3":
        return cls(np.eye(3))

    def column(self, i: int) -> np.ndarray:
        return self.matrix[:, i].copy()

    def __repr__(self) -> str:
        return f"Frame3({self.matrix.tolist()})"


def rotation_about_x(theta: float) -> Frame3:
    """Frame sharing the x axis, with y and z turned by ``theta``."""
    c, s = cos(theta), sin(theta)
    return Frame3([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def random_frame(rng: SeededRng) -> Frame3:
    """Random right-handed frame from QR orthonormalization of a uniform matrix."""
    while True:
        m = np.array([[2.0 * rng.uniform() - 1.0 for _ in range(3)] for _ in range(3)])
        q, r = np.linalg.qr(m)
        diag = np.diag(r)
        if np.min(np.abs(diag)) < 1e-8:
            continue  # degenerate draw, try again
        q = q * np.sign(diag)
        if np.linalg.det(q) < 0:
            q[:, 2] = -q[:, 2]
        return Frame3(q)


_J = {
    "x": Operator([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
    "y": Operator([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]]),
    "z": Operator([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
}

_JSQ = {
    "x": Operator(np.diag([0.0, 1.0, 1.0]).astype(complex)),
    "y": Operator(np.diag([1.0, 0.0, 1.0]).astype(complex)),
    "z": Operator(np.diag([1.0, 1.0, 0.0]).astype(complex)),
}

_K = Operator(np.diag([1.0, 2.0, 3.0]).astype(complex))

_S2 = 1.0 / sqrt(2.0)
# Eigenvectors (plus, zero, minus) of each J component for eigenvalues
# (+1, 0, -1).  Phases are pinned; anything phase-sensitive must compare
# with equal_up_to_phase.
_EIGENBASIS = {
    "x": (StateVector([0.0, -1j * _S2, _S2]),
          StateVector([1.0, 0.0, 0.0]),
          StateVector([0.0, 1j * _S2, _S2])),
    "y": (StateVector([1j * _S2, 0.0, _S2]),
          StateVector([0.0, 1.0, 0.0]),
          StateVector([-1j * _S2, 0.0, _S2])),
    "z": (StateVector([-1j * _S2, _S2, 0.0]),
          StateVector([0.0, 0.0, 1.0]),
          StateVector([1j * _S2, _S2, 0.0])),
}

# Two-outcome projector sets for each squared component: the 0-eigenspace
# is the basis ray, the 1-eigenspace is its 2D complement.
_JSQ_PSETS = {}
for _axis, _i in _AXIS_INDEX.items():
    _p0 = np.zeros((3, 3), dtype=complex)
    _p0[_i, _i] = 1.0
    _JSQ_PSETS[_axis] = ProjectorSet(
        [Operator(_p0), Operator(np.eye(3, dtype=complex) - _p0)], labels=(0, 1))


def _check_axis(axis: str) -> str:
    if axis not in _AXIS_INDEX:
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}")
    return axis


def spin_operators() -> tuple[Operator, Operator, Operator]:
    """The three spin-1 component operators (J_x, J_y, J_z)."""
    return _J["x"], _J["y"], _J["z"]


def spin_eigenbasis(axis: str) -> tuple[StateVector, StateVector, StateVector]:
    """Eigenvectors (plus, zero, minus) of one spin component."""
    return _EIGENBASIS[_check_axis(axis)]


def jsq(axis: str) -> Operator:
    """Squared spin component J_axis²."""
    return _JSQ[_check_axis(axis)]


def jsq_projectors(axis: str) -> ProjectorSet:
    """Projector set {J_axis² = 0, J_axis² = 1} with integer labels."""
    return _JSQ_PSETS[_check_axis(axis)]


def k_operator() -> Operator:
    """The combined observable 2J_x² + J_y² = diag(1, 2, 3)."""
    return _K


def k_eigenbasis() -> tuple[StateVector, StateVector, StateVector]:
    """Eigenvectors of the combined observable: the standard basis."""
    return (StateVector([1.0, 0.0, 0.0]),
            StateVector([0.0, 1.0, 0.0]),
            StateVector([0.0, 0.0, 1.0]))


def jsq_from_k() -> dict[str, float]:
    """Max entrywise deviation of each J² from its polynomial in the
    combined observable: ½(4−K)(K−1), (K−2)², ½(3−K)K."""
    k = _K.entries
    eye = np.eye(3, dtype=complex)
    polys = {
        "x": 0.5 * (4.0 * eye - k) @ (k - eye),
        "y": (k - 2.0 * eye) @ (k - 2.0 * eye),
        "z": 0.5 * (3.0 * eye - k) @ k,
    }
    return {axis: float(np.max(np.abs(polys[axis] - _JSQ[axis].entries)))
            for axis in AXES}


def conjugate_by_frame(op: Operator, frame: Frame3) -> Operator:
    """Express a 3x3 operator in the rotated frame: R · op · Rᵀ."""
    if op.dim != 3:
        raise ValueError(f"expected a 3x3 operator, got dimension {op.dim}")
    r = frame.matrix
    return Operator(r @ op.entries @ r.T)


def k_value_to_jsq_triple(v: int) -> tuple[int, int, int]:
    """Joint (J_x², J_y², J_z²) values encoded by one combined-observable outcome."""
    mapping = {1: (0, 1, 1), 2: (1, 0, 1), 3: (1, 1, 0)}
    try:
        return mapping[int(v)]
    except KeyError:
        raise ValueError(f"combined observable takes values 1, 2, 3; got {v}") from None


def _check_order(order: Sequence[str]) -> tuple[str, ...]:
    order = tuple(order)
    if sorted(order) != list(AXES):
        raise ValueError(f"order must be a permutation of {AXES}, got {order}")
    return order


def sequential_jsq_measure(s: StateVector, order: Sequence[str], rng: SeededRng
                           ) -> tuple[tuple[int, int, int], tuple[MeasurementOutcome, ...]]:
    """Measure J_x², J_y², J_z² one after another in the given order.

    Returns the value triple in (x, y, z) component order plus the trace of
    the three intermediate outcomes.  Exactly one component is always 0.
    """
    order = _check_order(order)
    if s.dims != (3,):
        raise ValueError(f"expected a single spin-1 state, got dims {s.dims}")
    values: dict[str, int] = {}
    trace = []
    state = s
    for axis in order:
        outcome = measure_projective(state, _JSQ_PSETS[axis], rng)
        values[axis] = int(outcome.label)
        trace.append(outcome)
        state = outcome.post_state
    return (values["x"], values["y"], values["z"]), tuple(trace)


def jsq_order_distribution(s: StateVector, order: Sequence[str]
                           ) -> dict[tuple[int, int, int], float]:
    """Analytic joint distribution of the triple for one measurement order."""
    order = _check_order(order)
    dist = sequential_distribution(s, [_JSQ_PSETS[axis] for axis in order])
    out: dict[tuple[int, int, int], float] = {}
    for labels, p in dist.items():
        values = dict(zip(order, labels))
        triple = (values["x"], values["y"], values["z"])
        out[triple] = out.get(triple, 0.0) + p
    return out
