"""Null-space recovery of (lambda, X) from (Y, A), up to scaling.

Writing gamma_k = 1/lambda_k turns diag(lambda) A X = Y into a homogeneous
linear system in (vec(X), gamma): each measurement entry contributes
A[k, :] @ X[:, j] - gamma_k * Y[k, j] = 0. When the instance is
identifiable the system's null space is one-dimensional and the solver
reads the solution off the single basis vector; otherwise it reports
ambiguity. This doubles as an independent oracle for the certificates:
the two routes share no code beyond the SVD primitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .cxmat import as_cmatrix, default_rank_tolerance
from .errors import BudgetExceededError, DimensionError, InconsistentSystemError
from .model import align_scale

UNIQUE = "Unique"
AMBIGUOUS = "Ambiguous"
DEGENERATE_GAMMA = "DegenerateGamma"

# relative floor below which a reciprocal-gain entry counts as zero
DEFAULT_GAMMA_TOL = 1e-8
# supports whose embedded solutions align within this are one equivalence class
EQUIVALENCE_TOL = 1e-6


@dataclass(frozen=True)
class RecoveryResult:
    status: str
    null_dim: int
    gamma: np.ndarray | None = None   # reciprocal gains, arbitrary global scale
    lam: np.ndarray | None = None     # gains, only when status is Unique
    X: np.ndarray | None = None
    support: tuple[int, ...] | None = None


def build_recovery_system(Y, A) -> np.ndarray:
    """Homogeneous system matrix over (vec(X), gamma), shape nN x (mN + n).

    Row (k, j) carries A[k, :] in the j-th m-block and -Y[k, j] in the
    gamma column k; vec is column-major so the X unknowns line up with
    vec(X).
    """
    Y = as_cmatrix(Y, "Y")
    A = as_cmatrix(A, "A")
    n, N = Y.shape
    if A.shape[0] != n:
        raise DimensionError("Y and A must have the same number of rows")
    m = A.shape[1]
    L = np.zeros((n * N, m * N + n), dtype=np.complex128)
    for j in range(N):
        for k in range(n):
            r = j * n + k
            L[r, j * m:(j + 1) * m] = A[k, :]
            L[r, m * N + k] = -Y[k, j]
    return L


def _solve_null(L: np.ndarray, tol: float | None):
    _, s, Vh = np.linalg.svd(L, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    cutoff = default_rank_tolerance(L.shape, smax) if tol is None else tol
    rank = int(np.count_nonzero(s > cutoff))
    null_dim = L.shape[1] - rank
    # a smallest kept singular value within 10x of the cutoff makes the
    # nullity call numerically marginal
    marginal = rank > 0 and float(s[rank - 1]) < 10.0 * cutoff
    vec = Vh[rank].conj() if null_dim >= 1 else None
    return null_dim, marginal, vec


def recover(Y, A, tol: float | None = None,
            gamma_tol: float = DEFAULT_GAMMA_TOL) -> RecoveryResult:
    """Recover (lambda, X) from consistent measurements, up to global scale."""
    L = build_recovery_system(Y, A)
    m = as_cmatrix(A).shape[1]
    N = as_cmatrix(Y).shape[1]
    null_dim, marginal, vec = _solve_null(L, tol)
    if null_dim == 0:
        raise InconsistentSystemError(
            "recovery system has trivial null space; Y is not consistent with A")
    if null_dim > 1 or marginal:
        return RecoveryResult(status=AMBIGUOUS, null_dim=null_dim)
    X = vec[:m * N].reshape(m, N, order="F")
    gamma = vec[m * N:]
    if np.min(np.abs(gamma)) <= gamma_tol * np.max(np.abs(gamma)):
        return RecoveryResult(status=DEGENERATE_GAMMA, null_dim=1, gamma=gamma, X=X)
    return RecoveryResult(status=UNIQUE, null_dim=1, gamma=gamma,
                          lam=1.0 / gamma, X=X)


def recover_joint_sparse(Y, A, s: int, tol: float | None = None,
                         gamma_tol: float = DEFAULT_GAMMA_TOL,
                         max_cells: int = 10 ** 6) -> RecoveryResult:
    """Recovery under a shared s-sparse row support, support unknown.

    Tries every s-subset of dictionary columns in lexicographic order and
    keeps those whose restricted system has a one-dimensional null space
    with nondegenerate gamma. Uniqueness requires all kept supports to
    yield scale-equivalent solutions; the reported support is the first
    (lexicographically minimal) passing one.
    """
    Y = as_cmatrix(Y, "Y")
    A = as_cmatrix(A, "A")
    n, N = Y.shape
    m = A.shape[1]
    if not (n > 2 * s):
        raise DimensionError("joint-sparse recovery requires n > 2s")
    n_cells = comb(m, s)
    if n_cells > max_cells:
        raise BudgetExceededError(
            f"support enumeration needs {n_cells} cells, budget is {max_cells}")
    hits = []
    max_null = 0
    for J in combinations(range(m), s):
        L = build_recovery_system(Y, A[:, list(J)])
        null_dim, marginal, vec = _solve_null(L, tol)
        max_null = max(max_null, null_dim)
        if null_dim != 1 or marginal:
            continue
        XJ = vec[:s * N].reshape(s, N, order="F")
        gamma = vec[s * N:]
        if np.min(np.abs(gamma)) <= gamma_tol * np.max(np.abs(gamma)):
            continue
        X = np.zeros((m, N), dtype=np.complex128)
        X[list(J), :] = XJ
        hits.append((J, X, gamma))
    if not hits:
        return RecoveryResult(status=AMBIGUOUS, null_dim=max_null)
    J_ref, X_ref, g_ref = hits[0]
    ref = np.concatenate([X_ref.flatten(order="F"), g_ref])[None, :]
    for _, X, gamma in hits[1:]:
        cand = np.concatenate([X.flatten(order="F"), gamma])[None, :]
        if align_scale(cand, ref).relative_error > EQUIVALENCE_TOL:
            return RecoveryResult(status=AMBIGUOUS, null_dim=1)
    return RecoveryResult(status=UNIQUE, null_dim=1, gamma=g_ref,
                          lam=1.0 / g_ref, X=X_ref, support=tuple(J_ref))
