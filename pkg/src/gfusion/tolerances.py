"""Centralized numerical tolerances.

All tolerances are relative unless stated otherwise; the dense double-precision
decompositions used throughout are reliable at these levels for matrices up to
dimension ~64.
"""

# Hermitian symmetry check: ||a - a*|| <= TOL_HERM * ||a||
TOL_HERM = 1e-9

# Eigenvalue floor for positive semidefiniteness: eigenvalues in
# [-TOL_PSD * ||a||, 0) are roundoff dust and get clamped to zero;
# anything more negative is genuine indefiniteness.
TOL_PSD = 1e-9

# Factorization residual: ||v w - s|| <= TOL_FACTOR * ||s|| certifies
# range inclusion.
TOL_FACTOR = 1e-8

# Singular values below TOL_RANK * sigma_max count as zero.
TOL_RANK = 1e-12

# Orthonormality of subspace bases: max-abs deviation of the Gram matrix
# from the identity (absolute).
TOL_ORTH = 1e-10

# Condition-number threshold for invertibility (membership in the class of
# operators with bounded inverse).
COND_MAX = 1e12

# Residual threshold for a family of operators summing to the identity.
TOL_RESOLUTION = 1e-8


DEFAULTS = {
    "tol_herm": TOL_HERM,
    "tol_psd": TOL_PSD,
    "tol_factor": TOL_FACTOR,
    "tol_rank": TOL_RANK,
    "tol_orth": TOL_ORTH,
    "cond_max": COND_MAX,
    "tol_resolution": TOL_RESOLUTION,
}
