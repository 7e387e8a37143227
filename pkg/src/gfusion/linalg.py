"""Dense complex linear-algebra substrate.

Operators are plain 2-D complex numpy arrays.  Everything here is a pure
function; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotInvertible,
    NotPSD,
    RangeNotContained,
    ZeroDenominator,
)


def as_operator(a) -> np.ndarray:
    """Coerce to a 2-D complex array and reject non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"operator must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("operator entries must be finite")
    return m


def as_vector(f) -> np.ndarray:
    v = np.asarray(f, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatch(f"vector must be 1-D, got shape {v.shape}")
    return v


def inner(x, y) -> complex:
    """Inner product <x, y>, linear in the first argument."""
    return complex(np.vdot(np.asarray(y), np.asarray(x)))


def opnorm(a) -> float:
    """Spectral norm; zero-size matrices have norm 0."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


@dataclass(frozen=True)
class Subspace:
    """Closed subspace of C^n given by an orthonormal basis (columns).

    An empty basis (shape (n, 0)) is the zero subspace.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"basis shape {b.shape} inconsistent with ambient dim {self.ambient_dim}"
            )
        if b.shape[1] > self.ambient_dim:
            raise DimensionMismatch("more basis vectors than ambient dimension")
        if b.shape[1] > 0:
            gram = b.conj().T @ b
            dev = np.max(np.abs(gram - np.eye(b.shape[1])))
            if dev > tol.TOL_ORTH:
                raise ValueError(f"basis not orthonormal (Gram deviation {dev:.3e})")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, np.eye(n, dtype=complex))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, np.zeros((n, 0), dtype=complex))

    @staticmethod
    def span(vectors) -> "Subspace":
        """Subspace spanned by the given columns (orthonormalized via SVD)."""
        m = np.atleast_2d(np.asarray(vectors, dtype=complex))
        if m.ndim != 2:
            raise DimensionMismatch("span expects a matrix of column vectors")
        n = m.shape[0]
        if m.shape[1] == 0:
            return Subspace.zero(n)
        q = orth(m)
        return Subspace(n, q)


@dataclass(frozen=True)
class SpectralInterval:
    lambda_min: float
    lambda_max: float

    def __post_init__(self):
        if self.lambda_min > self.lambda_max:
            raise ValueError("lambda_min exceeds lambda_max")


def orth(a, rtol: float = tol.TOL_RANK) -> np.ndarray:
    """Orthonormal basis for the column space of `a` (SVD with relative cutoff)."""
    a = as_operator(a)
    if a.shape[1] == 0 or not np.any(a):
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    rank = int(np.sum(s > rtol * s[0]))
    return u[:, :rank]


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_operator(a).conj().T


def require_hermitian(a, rtol: float = tol.TOL_HERM) -> np.ndarray:
    """Check Hermitian symmetry and return the Hermitian part (a + a*)/2."""
    a = as_operator(a)
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix is not square: {a.shape}")
    scale = opnorm(a)
    dev = opnorm(a - a.conj().T)
    if dev > rtol * max(scale, 1e-300):
        raise NotHermitian(
            f"asymmetry {dev:.3e} exceeds {rtol:.1e} * norm {scale:.3e}"
        )
    return 0.5 * (a + a.conj().T)


def positive_sqrt(a) -> np.ndarray:
    """Unique positive square root of a Hermitian PSD matrix.

    Eigenvalue dust in [-TOL_PSD * ||a||, 0) is clamped to zero; anything
    more negative raises NotPSD.
    """
    h = require_hermitian(a)
    scale = opnorm(h)
    vals, vecs = np.linalg.eigh(h)
    floor = -tol.TOL_PSD * max(scale, 1e-300)
    if np.any(vals < floor):
        raise NotPSD(f"eigenvalue {vals.min():.3e} below floor {floor:.3e}")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def pinv(a, rtol: float = tol.TOL_RANK) -> np.ndarray:
    """Moore-Penrose pseudoinverse with relative singular-value cutoff."""
    a = as_operator(a)
    if a.size == 0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=complex)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size and s[0] > 0:
        inv = np.where(s > rtol * s[0], 1.0 / np.where(s > 0, s, 1.0), 0.0)
    else:
        inv = np.zeros_like(s)
    return vh.conj().T @ (inv[:, None] * u.conj().T)


def projector(m: Subspace) -> np.ndarray:
    """Orthogonal projector onto the subspace (zero matrix for the zero subspace)."""
    b = m.basis
    if b.shape[1] == 0:
        return np.zeros((m.ambient_dim, m.ambient_dim), dtype=complex)
    return b @ b.conj().T


def subspace_image(r, m: Subspace) -> Subspace:
    """Image subspace { r x : x in span(m) } with an orthonormal basis."""
    r = as_operator(r)
    if r.shape[1] != m.ambient_dim:
        raise DimensionMismatch(
            f"operator cols {r.shape[1]} != ambient dim {m.ambient_dim}"
        )
    if m.dim == 0:
        return Subspace.zero(r.shape[0])
    return Subspace(r.shape[0], orth(r @ m.basis))


def condition_number(a) -> float:
    a = as_operator(a)
    if a.shape[0] != a.shape[1]:
        return np.inf
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[-1] == 0.0:
        return np.inf
    return float(s[0] / s[-1])


def require_invertible(a, what: str = "operator") -> np.ndarray:
    a = as_operator(a)
    c = condition_number(a)
    if not np.isfinite(c) or c > tol.COND_MAX:
        raise NotInvertible(f"{what}: condition number {c:.3e} exceeds {tol.COND_MAX:.1e}")
    return a


def hermitian_extremes(a) -> SpectralInterval:
    """Extreme eigenvalues of the Hermitian part of a (nearly) Hermitian matrix."""
    h = require_hermitian(a)
    vals = np.linalg.eigvalsh(h)
    return SpectralInterval(float(vals[0]), float(vals[-1]))


def gen_rayleigh_extremes(a, b) -> SpectralInterval:
    """Extremes of <a f, f> / <b f, f> over the range of b.

    Both matrices must be Hermitian PSD; the quotient is reduced to an
    ordinary eigenproblem on an orthonormal basis of range(b).
    """
    ah = require_hermitian(a)
    bh = require_hermitian(b)
    if ah.shape != bh.shape:
        raise DimensionMismatch("operands must have equal shapes")
    vals, vecs = np.linalg.eigh(bh)
    floor = -tol.TOL_PSD * max(opnorm(bh), 1e-300)
    if np.any(vals < floor):
        raise NotPSD("denominator operator is not PSD")
    vmax = vals[-1] if vals.size else 0.0
    keep = vals > tol.TOL_RANK * max(vmax, 0.0)
    if not np.any(keep):
        raise ZeroDenominator("denominator operator is numerically zero")
    q = vecs[:, keep]
    a_r = q.conj().T @ ah @ q
    b_r = q.conj().T @ bh @ q
    # b_r is positive definite on range(b); whiten and take ordinary extremes
    bvals, bvecs = np.linalg.eigh(0.5 * (b_r + b_r.conj().T))
    w = (bvecs / np.sqrt(bvals)) @ bvecs.conj().T
    reduced = w.conj().T @ a_r @ w
    evals = np.linalg.eigvalsh(0.5 * (reduced + reduced.conj().T))
    return SpectralInterval(float(evals[0]), float(evals[-1]))


def gen_rayleigh_min(a, b) -> float:
    """Minimum of the generalized Rayleigh quotient of (a, b) on range(b)."""
    return gen_rayleigh_extremes(a, b).lambda_min


def douglas_factor(s, v):
    """Solve s = v w (minimum-norm) and certify range inclusion.

    Returns (w, lam) where lam is the smallest lam >= 0 with
    s s* <= lam^2 v v*.  Raises RangeNotContained when the residual of the
    factorization exceeds tolerance.
    """
    s = as_operator(s)
    v = as_operator(v)
    if s.shape[0] != v.shape[0]:
        raise DimensionMismatch("row counts must agree")
    w = pinv(v) @ s
    scale = max(opnorm(s), 1e-300)
    residual = opnorm(v @ w - s)
    if residual > tol.TOL_FACTOR * scale:
        raise RangeNotContained(
            f"factorization residual {residual:.3e} exceeds {tol.TOL_FACTOR:.1e} * ||s||"
        )
    ss = s @ s.conj().T
    vv = v @ v.conj().T
    if not np.any(np.abs(ss) > 0):
        return w, 0.0
    lam_sq = gen_rayleigh_extremes(ss, vv).lambda_max
    return w, float(np.sqrt(max(lam_sq, 0.0)))


def dsum_op(r, v) -> np.ndarray:
    """Block-diagonal direct sum of two operators."""
    r = as_operator(r)
    v = as_operator(v)
    out = np.zeros((r.shape[0] + v.shape[0], r.shape[1] + v.shape[1]), dtype=complex)
    out[: r.shape[0], : r.shape[1]] = r
    out[r.shape[0] :, r.shape[1] :] = v
    return out


def dsum_vec(f, g) -> np.ndarray:
    """Concatenation realizing the direct sum of two vectors."""
    return np.concatenate([as_vector(f), as_vector(g)])


def dsum_subspace(m: Subspace, n: Subspace) -> Subspace:
    """Direct sum of two subspaces inside the direct sum of their ambients."""
    nm, nn = m.ambient_dim, n.ambient_dim
    top = np.vstack([m.basis, np.zeros((nn, m.dim), dtype=complex)])
    bot = np.vstack([np.zeros((nm, n.dim), dtype=complex), n.basis])
    return Subspace(nm + nn, np.hstack([top, bot]))
