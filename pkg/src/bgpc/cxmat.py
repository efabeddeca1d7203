"""Dense complex-matrix foundation.

Everything downstream (certificates, constructions, recovery) runs through
the helpers in this module: DFT matrices, Kronecker products, and a single
SVD-based tolerance story for numeric rank and null spaces.

Matrices are plain ``numpy.ndarray`` of dtype complex128, treated as
immutable values: every operation returns a fresh array and never mutates
its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

EPS = float(np.finfo(np.float64).eps)


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex128 array and reject empty or non-finite input."""
    M = np.asarray(a, dtype=np.complex128)
    if M.ndim == 1:
        M = M[None, :]
    if M.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={M.ndim}")
    if M.size == 0:
        raise DimensionError(f"{name} must be nonempty")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


@dataclass(frozen=True)
class RankResult:
    """Numeric rank of a matrix at an explicit tolerance.

    ``numeric_rank`` counts the singular values strictly above
    ``tolerance_used``; ``singular_values`` are sorted nonincreasing.
    """

    numeric_rank: int
    singular_values: np.ndarray
    tolerance_used: float


def default_rank_tolerance(shape: tuple[int, int], smax: float) -> float:
    """Standard conservative rank cutoff: max(rows, cols) * eps * sigma_max."""
    return max(shape) * EPS * smax


def dft_matrix(n: int) -> np.ndarray:
    """Unnormalized n x n DFT matrix with entry (j, k) = exp(-2*pi*i*j*k/n).

    Every entry has unit modulus, so F @ F.conj().T == n * I.
    """
    if n < 1:
        raise DimensionError("dft_matrix requires n >= 1")
    j = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(j, j) / n)


def kronecker(L, R) -> np.ndarray:
    """Kronecker product: block (i, j) of the result is L[i, j] * R."""
    L = as_cmatrix(L, "L")
    R = as_cmatrix(R, "R")
    return np.kron(L, R)


def numeric_rank(M, tol: float | None = None) -> RankResult:
    """Numeric rank of M via SVD.

    When ``tol`` is None the cutoff is max(rows, cols) * eps * sigma_max.
    """
    M = as_cmatrix(M)
    s = np.linalg.svd(M, compute_uv=False)
    smax = float(s[0]) if s.size else 0.0
    if tol is None:
        tol = default_rank_tolerance(M.shape, smax)
    elif tol < 0:
        raise ValueError("tolerance must be nonnegative")
    rank = int(np.count_nonzero(s > tol))
    return RankResult(numeric_rank=rank, singular_values=s, tolerance_used=float(tol))


def null_space(M, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the right null space, as columns of a 2-D array.

    The rank cutoff follows the same rule as :func:`numeric_rank`; the
    returned array has shape (cols, cols - rank) and may have zero columns.
    """
    M = as_cmatrix(M)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    if tol is None:
        tol = default_rank_tolerance(M.shape, smax)
    elif tol < 0:
        raise ValueError("tolerance must be nonnegative")
    rank = int(np.count_nonzero(s > tol))
    return Vh[rank:].conj().T


def left_null_space(M, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the left null space (null space of M*)."""
    M = as_cmatrix(M)
    return null_space(M.conj().T, tol=tol)
