"""Shared numeric tolerances.

All default tolerances live here so there is exactly one place to read
(or tighten) them.  Every check that uses a default also accepts an
explicit override.
"""

# Structural checks: norms, unitarity, projector tests, frame orthogonality.
STRUCT_TOL = 1e-10

# Exact algebraic identities (commutators, closed forms, analytic
# distributions that must agree between computation routes).
ALGEBRA_TOL = 1e-12

# Measurement branches below this probability are treated as empty and are
# excluded before sampling, so post-state normalization never divides by ~0.
ZERO_PROB = 1e-15

# Eigenvalues closer than this are merged into one degenerate eigenspace.
EIGENVALUE_GROUP_TOL = 1e-9

# Spectral reconstruction sum(lambda_l * P_l) must reproduce the operator
# to this accuracy.
SPECTRAL_RECONSTRUCTION_TOL = 1e-8
