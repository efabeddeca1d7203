"""Rank certificates for identifiability up to scaling.

The certificate has two parts. Condition 2 asks that A @ X0 has no zero
rows and that every gain entry is nonzero, which pins down lambda once X is
known. Condition 1 asks that a stacked matrix, built from the conjugated
vectorization of X0 on top of one cross-ratio block per measurement row,
has full column rank; that forces X to be unique up to a global scale.
When both hold the instance is certified identifiable up to scaling.

A certificate that fails is reported as ``NotCertified``: failure of the
numeric rank test does not prove non-identifiability for a specific
borderline instance, so the verdict never claims "not identifiable".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .cxmat import EPS, as_cmatrix, numeric_rank
from .errors import BudgetExceededError, DimensionError

SUBSPACE = "Subspace"
JOINT_SPARSE = "JointSparse"

IDENTIFIABLE = "IdentifiableUpToScaling"
NOT_CERTIFIED = "NotCertified"

DEFAULT_CELL_BUDGET = 10 ** 6


@dataclass(frozen=True)
class CertificateReport:
    mode: str
    verdict: str
    condition1_rank_full: bool
    condition2_lambda_unique: bool
    stacked_rank: int
    required_rank: int
    tolerance_used: float
    support_cells_checked: int | None = None
    failing_support: tuple[int, ...] | None = None


def build_D_block(a_row, X0) -> np.ndarray:
    """Cross-ratio block for one measurement row, shape (N-1) x mN.

    Row j of the left factor has -(a_row @ X0[:, j]) in column 0 and
    (a_row @ X0[:, 0]) in column j; the block is that factor Kronecker-
    multiplied on the right by a_row. By construction it annihilates
    the column-major vectorization of X0.
    """
    a = np.asarray(a_row, dtype=np.complex128).reshape(-1)
    X0 = as_cmatrix(X0, "X0")
    m, N = X0.shape
    if a.shape[0] != m:
        raise DimensionError("a_row length must match rows of X0")
    if N < 2:
        raise DimensionError("build_D_block requires N >= 2")
    w = a @ X0  # length N
    C = np.zeros((N - 1, N), dtype=np.complex128)
    C[:, 0] = -w[1:]
    C[np.arange(N - 1), np.arange(1, N)] = w[0]
    return np.kron(C, a[None, :])


def build_D_stack(A, X0) -> np.ndarray:
    """All n cross-ratio blocks stacked, shape n(N-1) x mN."""
    A = as_cmatrix(A, "A")
    X0 = as_cmatrix(X0, "X0")
    n, m = A.shape
    if X0.shape[0] != m:
        raise DimensionError("A and X0 dimensions are inconsistent")
    return np.vstack([build_D_block(A[k, :], X0) for k in range(n)])


def build_stacked(A, X0) -> np.ndarray:
    """Certificate matrix: vec(X0)* on top of the n cross-ratio blocks.

    Shape (1 + n(N-1)) x mN; vec is column-major.
    """
    A = as_cmatrix(A, "A")
    X0 = as_cmatrix(X0, "X0")
    vec = X0.flatten(order="F").conj()[None, :]
    return np.vstack([vec, build_D_stack(A, X0)])


def build_stacked_restricted(A, X0, J) -> np.ndarray:
    """Certificate matrix of the column/row restriction to index set J (0-based)."""
    A = as_cmatrix(A, "A")
    X0 = as_cmatrix(X0, "X0")
    J = sorted(set(int(j) for j in J))
    if not J:
        raise DimensionError("restriction index set must be nonempty")
    if J[0] < 0 or J[-1] >= A.shape[1]:
        raise DimensionError("restriction indices out of range")
    return build_stacked(A[:, J], X0[J, :])


def _lambda_uniqueness(A, X0, lambda0) -> tuple[bool, float]:
    """Condition 2: no zero rows in A @ X0 and no zero gain entries.

    Exact zeros never survive floating-point products, so "zero" means
    below eps * sqrt(m) * (largest magnitude in the tested object).
    """
    AX = A @ X0
    m = A.shape[1]
    row_tol = EPS * np.sqrt(m) * float(np.max(np.abs(AX))) if AX.size else 0.0
    lam_tol = EPS * np.sqrt(m) * float(np.max(np.abs(lambda0))) if lambda0.size else 0.0
    rows_ok = bool(np.all(np.linalg.norm(AX, axis=1) > row_tol))
    lam_ok = bool(np.all(np.abs(lambda0) > lam_tol))
    return rows_ok and lam_ok, row_tol


def certify_subspace(A, X0, lambda0, tol: float | None = None) -> CertificateReport:
    """Decide the subspace-model certificate for (A, X0, lambda0)."""
    A = as_cmatrix(A, "A")
    X0 = as_cmatrix(X0, "X0")
    lambda0 = np.asarray(lambda0, dtype=np.complex128).reshape(-1)
    n, m = A.shape
    N = X0.shape[1]
    if lambda0.shape[0] != n or X0.shape[0] != m:
        raise DimensionError("inconsistent instance dimensions")
    if N < 2:
        raise DimensionError("certificate requires N >= 2 snapshots")
    cond2, _ = _lambda_uniqueness(A, X0, lambda0)
    rr = numeric_rank(build_stacked(A, X0), tol=tol)
    cond1 = rr.numeric_rank == m * N
    verdict = IDENTIFIABLE if (cond1 and cond2) else NOT_CERTIFIED
    return CertificateReport(
        mode=SUBSPACE,
        verdict=verdict,
        condition1_rank_full=cond1,
        condition2_lambda_unique=cond2,
        stacked_rank=rr.numeric_rank,
        required_rank=m * N,
        tolerance_used=rr.tolerance_used,
    )


def row_support(X0, atol: float = 0.0) -> tuple[int, ...]:
    """Indices of rows of X0 with norm strictly above atol (0-based)."""
    X0 = as_cmatrix(X0, "X0")
    norms = np.linalg.norm(X0, axis=1)
    return tuple(int(i) for i in np.flatnonzero(norms > atol))


def certify_joint_sparse(A, X0, lambda0, s: int, tol: float | None = None,
                         max_cells: int = DEFAULT_CELL_BUDGET) -> CertificateReport:
    """Joint-sparsity certificate: the rank test over every candidate support.

    The row support J0 of X0 must have size s. For every s-subset J1 of the
    dictionary columns (lexicographic order), the restriction to J0 union J1
    must have full column rank |J0 union J1| * N; the loop exits on the
    first failing subset, which is recorded in the report.
    """
    A = as_cmatrix(A, "A")
    X0 = as_cmatrix(X0, "X0")
    lambda0 = np.asarray(lambda0, dtype=np.complex128).reshape(-1)
    n, m = A.shape
    N = X0.shape[1]
    if N < 2:
        raise DimensionError("certificate requires N >= 2 snapshots")
    if not (n > 2 * s):
        raise DimensionError("joint-sparsity certificate requires n > 2s")
    J0 = row_support(X0)
    if len(J0) != s:
        raise DimensionError(f"X0 row support has size {len(J0)}, expected s={s}")
    n_cells = comb(m, s)
    if n_cells > max_cells:
        raise BudgetExceededError(
            f"support enumeration needs {n_cells} cells, budget is {max_cells}")

    cond2, _ = _lambda_uniqueness(A, X0, lambda0)
    cond1 = True
    failing = None
    stacked_rank = 0
    required = 0
    tol_used = 0.0
    checked = 0
    J0set = set(J0)
    for J1 in combinations(range(m), s):
        J = sorted(J0set | set(J1))
        rr = numeric_rank(build_stacked_restricted(A, X0, J), tol=tol)
        checked += 1
        stacked_rank = rr.numeric_rank
        required = len(J) * N
        tol_used = rr.tolerance_used
        if rr.numeric_rank != required:
            cond1 = False
            failing = tuple(J1)
            break
    verdict = IDENTIFIABLE if (cond1 and cond2) else NOT_CERTIFIED
    return CertificateReport(
        mode=JOINT_SPARSE,
        verdict=verdict,
        condition1_rank_full=cond1,
        condition2_lambda_unique=cond2,
        stacked_rank=stacked_rank,
        required_rank=required,
        tolerance_used=tol_used,
        support_cells_checked=checked,
        failing_support=failing,
    )
