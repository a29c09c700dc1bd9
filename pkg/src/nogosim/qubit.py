"""Bloch-sphere geometry of a single qubit.

Maps between unit 3-vectors and qubit states, the stereographic projection
onto the extended complex plane, axis projectors ½(1 + a·σ), and the
two-axis overlap probability ½(1 + <a,b>).

No single continuous state-from-vector map exists, so the inverse is an
atlas of two hemisphere charts that agree up to a phase on the overlap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin, sqrt

import numpy as np

from .core import Operator, StateVector, density, pauli
from .sampler import SeededRng
from .tolerances import STRUCT_TOL

__all__ = [
    "BlochVector",
    "INFINITY",
    "ExtendedComplex",
    "bloch_from_state",
    "state_from_bloch",
    "equator_state",
    "stereographic",
    "inverse_stereographic",
    "axis_projector",
    "axis_density",
    "overlap_prob",
    "equatorial_axis",
    "random_axis",
]

# The one chart boundary choice: the north chart covers a_z >= 0.
EQUATOR_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    """Unit vector on the Bloch sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        norm = sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)
        if abs(norm - 1.0) > STRUCT_TOL:
            raise ValueError(f"Bloch vector must be unit length, |v| = {norm!r}")

    def dot(self, other: "BlochVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def negated(self) -> "BlochVector":
        return BlochVector(-self.x, -self.y, -self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


class _PointAtInfinity:
    """The single point at infinity of the extended complex plane."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _PointAtInfinity()

ExtendedComplex = complex | _PointAtInfinity


def bloch_from_state(psi: StateVector) -> BlochVector:
    """Bloch vector of a qubit state; invariant under global phase."""
    if psi.dim != 2:
        raise ValueError(f"expected a qubit state, got dimension {psi.dim}")
    alpha, beta = psi.amplitudes
    ax = (alpha * beta.conjugate() + alpha.conjugate() * beta).real
    ay = (1j * (alpha * beta.conjugate() - alpha.conjugate() * beta)).real
    az = (alpha * alpha.conjugate() - beta * beta.conjugate()).real
    return BlochVector(ax, ay, az)


def state_from_bloch(a: BlochVector, chart: str = "auto") -> StateVector:
    """Qubit state for a Bloch vector, using a two-chart atlas.

    ``chart`` is "auto" (north for a_z >= 0, else south), "north", or
    "south".  The north chart is undefined at the south pole and vice
    versa; on the overlap the charts agree up to a global phase.
    """
    if chart == "auto":
        chart = "north" if a.z >= 0.0 else "south"
    if chart == "north":
        if 1.0 + a.z <= 0.0:
            raise ValueError("north chart is undefined at the south pole")
        scale = 1.0 / sqrt(2.0 * (1.0 + a.z))
        return StateVector([(1.0 + a.z) * scale, complex(a.x, a.y) * scale])
    if chart == "south":
        if 1.0 - a.z <= 0.0:
            raise ValueError("south chart is undefined at the north pole")
        scale = 1.0 / sqrt(2.0 * (1.0 - a.z))
        return StateVector([complex(a.x, -a.y) * scale, (1.0 - a.z) * scale])
    raise ValueError(f"chart must be 'auto', 'north' or 'south', got {chart!r}")


def equator_state(a: BlochVector) -> StateVector:
    """(|0> + (a_x + i a_y)|1>)/√2 for an axis on the equator."""
    if abs(a.z) > EQUATOR_TOL:
        raise ValueError(f"axis must lie on the equator, a_z = {a.z!r}")
    return StateVector([1.0 / sqrt(2.0), complex(a.x, a.y) / sqrt(2.0)])


def stereographic(a: BlochVector) -> ExtendedComplex:
    """Project (a_x - i a_y)/(1 - a_z); the north pole maps to INFINITY."""
    denom = 1.0 - a.z
    if denom <= 0.0:
        return INFINITY
    return complex(a.x, -a.y) / denom


def inverse_stereographic(zeta: ExtendedComplex) -> BlochVector:
    """Bloch vector for an extended-plane point; INFINITY maps to (0, 0, 1)."""
    if isinstance(zeta, _PointAtInfinity):
        return BlochVector(0.0, 0.0, 1.0)
    zeta = complex(zeta)
    m = zeta.real ** 2 + zeta.imag ** 2
    d = m + 1.0
    return BlochVector(2.0 * zeta.real / d, -2.0 * zeta.imag / d, (m - 1.0) / d)


def axis_projector(a: BlochVector) -> Operator:
    """Spin-up projector ½(1 + a·σ) along the axis ``a``."""
    mat = 0.5 * (np.eye(2, dtype=complex)
                 + a.x * pauli("x").entries
                 + a.y * pauli("y").entries
                 + a.z * pauli("z").entries)
    return Operator(mat)


def axis_density(a: BlochVector) -> Operator:
    """Density matrix of the axis state; equals the axis projector."""
    return density(state_from_bloch(a))


def overlap_prob(a: BlochVector, b: BlochVector) -> float:
    """Probability ½(1 + <a,b>) that the b-filter accepts the a-state."""
    return min(max(0.5 * (1.0 + a.dot(b)), 0.0), 1.0)


def equatorial_axis(angle_rad: float) -> BlochVector:
    """Equatorial axis at the given angle from +x."""
    return BlochVector(cos(angle_rad), sin(angle_rad), 0.0)


def random_axis(rng: SeededRng) -> BlochVector:
    """Uniformly random axis on the sphere (uniform z, uniform longitude)."""
    z = 2.0 * rng.uniform() - 1.0
    phi = 2.0 * pi * rng.uniform()
    s = sqrt(max(1.0 - z * z, 0.0))
    return BlochVector(s * cos(phi), s * sin(phi), z)
