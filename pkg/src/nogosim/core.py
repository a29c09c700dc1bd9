"""Dense complex linear algebra for small multi-part Hilbert spaces.

A state is a normalized complex vector over a tensor factorization given
by ``dims``.  Subsystem 0 is the most significant index factor, so a
two-qubit basis is ordered |00>, |01>, |10>, |11> and ``np.kron`` composes
both states and operators in subsystem order.

Everything here is an immutable value: construction validates, operations
return new objects, and the backing arrays are read-only, so instances can
be shared freely across threads.
"""

from __future__ import annotations

from math import prod
from typing import Sequence

import numpy as np

from .tolerances import STRUCT_TOL

__all__ = [
    "StateVector",
    "Operator",
    "ProjectorSet",
    "tensor",
    "op_tensor",
    "inner",
    "fidelity",
    "apply",
    "lift",
    "permute_subsystems",
    "density",
    "trace_prob",
    "equal_up_to_phase",
    "pauli",
    "measurement_gate",
    "swap_gate",
]


def _max_abs(arr: np.ndarray) -> float:
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def _readonly_complex(values, shape_hint: str) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.ndim == 0:
        raise ValueError(f"{shape_hint} must be array-like, got a scalar")
    arr.setflags(write=False)
    return arr


class StateVector:
    """Normalized pure state over subsystems of dimensions ``dims``.

    Non-normalized amplitudes are rejected; use :meth:`normalized` when a
    construction (e.g. a superposition built by hand) needs explicit
    renormalization.
    """

    __slots__ = ("dims", "amplitudes")

    def __init__(self, amplitudes, dims: Sequence[int] | None = None, *,
                 tol: float = STRUCT_TOL):
        amps = _readonly_complex(amplitudes, "amplitudes").reshape(-1)
        amps.setflags(write=False)
        if dims is None:
            dims = (amps.size,)
        dims = tuple(int(d) for d in dims)
        if not dims or any(d <= 0 for d in dims):
            raise ValueError(f"subsystem dimensions must be positive, got {dims}")
        if prod(dims) != amps.size:
            raise ValueError(
                f"{amps.size} amplitudes do not fill subsystems of dimensions {dims}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tol:
            raise ValueError(
                f"state is not normalized (|norm - 1| = {abs(norm - 1.0):.3e}); "
                "use StateVector.normalized for explicit renormalization")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        """Total Hilbert-space dimension."""
        return self.amplitudes.size

    @classmethod
    def normalized(cls, amplitudes, dims: Sequence[int] | None = None) -> "StateVector":
        """Build a state from arbitrary amplitudes, renormalizing explicitly."""
        arr = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(arr))
        if norm < 1e-12:
            raise ValueError("cannot normalize a (near-)zero vector")
        return cls(arr / norm, dims)

    @classmethod
    def basis(cls, dims: Sequence[int], indices: Sequence[int]) -> "StateVector":
        """Computational basis state |i0 i1 ...> with one index per subsystem."""
        dims = tuple(int(d) for d in dims)
        indices = tuple(int(i) for i in indices)
        if len(indices) != len(dims):
            raise ValueError("one basis index per subsystem required")
        for i, d in zip(indices, dims):
            if not 0 <= i < d:
                raise ValueError(f"basis index {i} out of range for dimension {d}")
        amps = np.zeros(prod(dims), dtype=complex)
        amps[np.ravel_multi_index(indices, dims)] = 1.0
        return cls(amps, dims)

    def __repr__(self) -> str:
        return f"StateVector(dims={self.dims})"


class Operator:
    """Dense complex square matrix with cached structural predicates."""

    __slots__ = ("dim", "entries", "_cache")

    def __init__(self, entries):
        arr = _readonly_complex(entries, "entries")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator entries must be square, got shape {arr.shape}")
        object.__setattr__(self, "dim", arr.shape[0])
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Operator is immutable")

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(int(dim), dtype=complex))

    def adjoint(self) -> "Operator":
        return Operator(self.entries.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return Operator(self.entries @ other.entries)

    def unitary_deviation(self) -> float:
        """Max-entry deviation of U†U from the identity."""
        return _max_abs(self.entries.conj().T @ self.entries - np.eye(self.dim))

    def hermitian_deviation(self) -> float:
        return _max_abs(self.entries - self.entries.conj().T)

    def projector_deviation(self) -> float:
        """Max of the Hermiticity defect and the idempotency defect |P² − P|."""
        return max(self.hermitian_deviation(),
                   _max_abs(self.entries @ self.entries - self.entries))

    # Predicate results at the default tolerance are cached: gates are reused
    # across many trials and the O(dim³) check should run once per Operator.
    def _cached(self, key: str, deviation, tol: float | None) -> bool:
        if tol is not None:
            return deviation() <= tol
        flag = self._cache.get(key)
        if flag is None:
            flag = deviation() <= STRUCT_TOL
            self._cache[key] = flag
        return flag

    def is_unitary(self, tol: float | None = None) -> bool:
        return self._cached("unitary", self.unitary_deviation, tol)

    def is_hermitian(self, tol: float | None = None) -> bool:
        return self._cached("hermitian", self.hermitian_deviation, tol)

    def is_projector(self, tol: float | None = None) -> bool:
        return self._cached("projector", self.projector_deviation, tol)

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim})"


class ProjectorSet:
    """Mutually orthogonal projectors summing to the identity.

    ``labels`` name the outcomes (indices by default; eigenvalues when the
    set comes from a spectral decomposition).
    """

    __slots__ = ("projectors", "labels")

    def __init__(self, projectors: Sequence[Operator], labels: Sequence | None = None,
                 *, tol: float = STRUCT_TOL):
        projectors = tuple(projectors)
        if not projectors:
            raise ValueError("projector set must not be empty")
        dim = projectors[0].dim
        for p in projectors:
            if p.dim != dim:
                raise ValueError("all projectors must share one dimension")
            dev = p.projector_deviation()
            if dev > tol:
                raise ValueError(f"element is not a projector (deviation {dev:.3e})")
        for i in range(len(projectors)):
            for j in range(i + 1, len(projectors)):
                cross = _max_abs(projectors[i].entries @ projectors[j].entries)
                if cross > tol:
                    raise ValueError(
                        f"projectors {i} and {j} are not orthogonal (max entry {cross:.3e})")
        total = sum(p.entries for p in projectors)
        if _max_abs(total - np.eye(dim)) > tol:
            raise ValueError("projectors do not sum to the identity")
        if labels is None:
            labels = tuple(range(len(projectors)))
        else:
            labels = tuple(labels)
            if len(labels) != len(projectors):
                raise ValueError("one label per projector required")
        object.__setattr__(self, "projectors", projectors)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectorSet is immutable")

    @property
    def dim(self) -> int:
        return self.projectors[0].dim

    def __len__(self) -> int:
        return len(self.projectors)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Composite state with ``a``'s subsystems first."""
    return StateVector(np.kron(a.amplitudes, b.amplitudes), a.dims + b.dims)


def op_tensor(a: Operator, b: Operator) -> Operator:
    """Kronecker product of operators, matching the state ordering."""
    return Operator(np.kron(a.entries, b.entries))


def inner(a: StateVector, b: StateVector) -> complex:
    """Scalar product <a|b>, conjugate-linear in ``a``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|², the yes-probability of filtering ``a`` against ``b``."""
    return abs(inner(a, b)) ** 2


def apply(u: Operator, s: StateVector, *, tol: float | None = None) -> StateVector:
    """Evolve ``s`` by the unitary ``u``; non-unitary operators are rejected."""
    if u.dim != s.dim:
        raise ValueError(f"operator dimension {u.dim} does not match state {s.dim}")
    if not u.is_unitary(tol):
        raise ValueError(
            f"operator is not unitary (deviation {u.unitary_deviation():.3e})")
    return StateVector(u.entries @ s.amplitudes, s.dims)


def lift(op: Operator, targets: Sequence[int], dims: Sequence[int]) -> Operator:
    """Embed ``op`` so its k-th factor acts on subsystem ``targets[k]``.

    The remaining subsystems get the identity and the result is expressed
    in the register's own subsystem order.  ``targets`` is an ordered
    sequence, so a two-site gate can act "reversed" (e.g. targets (3, 2)).
    """
    dims = tuple(int(d) for d in dims)
    targets = tuple(int(t) for t in targets)
    n = len(dims)
    if len(set(targets)) != len(targets):
        raise ValueError(f"targets must be distinct, got {targets}")
    if any(t < 0 or t >= n for t in targets):
        raise ValueError(f"target out of range for {n} subsystems: {targets}")
    target_dim = prod(dims[t] for t in targets) if targets else 1
    if op.dim != target_dim:
        raise ValueError(
            f"operator dimension {op.dim} does not match target subsystems "
            f"{targets} of total dimension {target_dim}")
    rest = [i for i in range(n) if i not in targets]
    order = list(targets) + rest
    rest_dim = prod(dims[i] for i in rest) if rest else 1
    big = np.kron(op.entries, np.eye(rest_dim, dtype=complex))
    shape = [dims[i] for i in order]
    big = big.reshape(shape + shape)
    inv = np.argsort(order)
    big = big.transpose(list(inv) + [int(i) + n for i in inv])
    total = prod(dims)
    return Operator(np.ascontiguousarray(big.reshape(total, total)))


def permute_subsystems(s: StateVector, perm: Sequence[int]) -> StateVector:
    """Reorder subsystems so new position ``i`` holds old subsystem ``perm[i]``."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(len(s.dims))):
        raise ValueError(f"{perm} is not a permutation of {len(s.dims)} subsystems")
    array = s.amplitudes.reshape(s.dims).transpose(perm).reshape(-1)
    new_dims = tuple(s.dims[p] for p in perm)
    return StateVector(np.ascontiguousarray(array), new_dims)


def density(s: StateVector) -> Operator:
    """Density matrix |s><s| of a pure state."""
    return Operator(np.outer(s.amplitudes, s.amplitudes.conj()))


def trace_prob(p: Operator, rho: Operator, *, tol: float = STRUCT_TOL) -> float:
    """Born probability Tr(P rho) for a projector and a density matrix."""
    if p.dim != rho.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {rho.dim}")
    if not p.is_projector():
        raise ValueError("first argument must be a projector")
    if not rho.is_hermitian():
        raise ValueError("density matrix must be Hermitian")
    trace = complex(np.trace(rho.entries))
    if abs(trace - 1.0) > tol:
        raise ValueError(f"density matrix trace is {trace}, expected 1")
    value = float(np.trace(p.entries @ rho.entries).real)
    if value < -tol or value > 1.0 + tol:
        raise ValueError(f"probability {value} outside [0, 1] beyond tolerance")
    return min(max(value, 0.0), 1.0)


def equal_up_to_phase(a: StateVector, b: StateVector, tol: float = STRUCT_TOL) -> bool:
    """True when the states differ only by a global phase: |<a|b>| >= 1 - tol."""
    return abs(inner(a, b)) >= 1.0 - tol


_SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PAULI = {axis: Operator(mat) for axis, mat in _SIGMA.items()}

# |a>|b> -> |a xor b>|b>: identity on the first qubit when the second is 0,
# a bit flip when it is 1.
_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)
_MEASUREMENT_GATE = Operator(np.kron(np.eye(2, dtype=complex), _P0)
                             + np.kron(_SIGMA["x"], _P1))

# |a>|b> -> |b>|a>, built from the sigma-sum form; tests pin it against the
# plain permutation matrix.
_SWAP_GATE = Operator(0.5 * (np.kron(np.eye(2, dtype=complex), np.eye(2, dtype=complex))
                             + np.kron(_SIGMA["x"], _SIGMA["x"])
                             + np.kron(_SIGMA["y"], _SIGMA["y"])
                             + np.kron(_SIGMA["z"], _SIGMA["z"])))


def pauli(axis: str) -> Operator:
    """Pauli operator for axis 'x', 'y', or 'z'."""
    try:
        return _PAULI[axis]
    except KeyError:
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}") from None


def measurement_gate() -> Operator:
    """Two-qubit copy gate |a>|b> -> |a xor b>|b> (non-perturbing readout)."""
    return _MEASUREMENT_GATE


def swap_gate() -> Operator:
    """Two-qubit exchange gate |a>|b> -> |b>|a>."""
    return _SWAP_GATE
