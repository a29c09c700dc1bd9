"""Pure-state quantum simulator with a seeded no-go-experiment suite.

Library layout:

- :mod:`nogosim.core` — states, operators, tensor composition, gates
- :mod:`nogosim.sampler` — pinned RNG, roulette, measurement procedures
- :mod:`nogosim.qubit` — Bloch-sphere geometry of a single qubit
- :mod:`nogosim.spin1` — spin-1 algebra and sequential squared-spin readout
- :mod:`nogosim.experiments` — named experiment drivers
- :mod:`nogosim.report` — report validation and serialization
- :mod:`nogosim.cli` — the ``nogosim`` command-line runner
"""

__version__ = "0.1.0"

from .core import (
    Operator,
    ProjectorSet,
    StateVector,
    apply,
    density,
    equal_up_to_phase,
    fidelity,
    inner,
    lift,
    measurement_gate,
    pauli,
    permute_subsystems,
    swap_gate,
    tensor,
    trace_prob,
)
from .sampler import (
    MeasurementOutcome,
    SeededRng,
    derive_seed,
    measure_basis,
    measure_filter,
    measure_operator,
    measure_projective,
    roulette,
    spectral_decomposition,
)

__all__ = [
    "__version__",
    "Operator",
    "ProjectorSet",
    "StateVector",
    "apply",
    "density",
    "equal_up_to_phase",
    "fidelity",
    "inner",
    "lift",
    "measurement_gate",
    "pauli",
    "permute_subsystems",
    "swap_gate",
    "tensor",
    "trace_prob",
    "MeasurementOutcome",
    "SeededRng",
    "derive_seed",
    "measure_basis",
    "measure_filter",
    "measure_operator",
    "measure_projective",
    "roulette",
    "spectral_decomposition",
]
