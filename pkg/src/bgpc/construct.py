"""Explicit instances with provably full certificate rank.

The construction picks X0 as the first N columns of the m x m identity and
A as m columns of the n x n DFT matrix, chosen so that no N circularly
consecutive columns are all selected except the initial block 1..N. For
such a pair the stacked certificate matrix has full column rank mN, the
block stack without its first row has rank mN - 1, and the left null space
of that stack has dimension exactly nN - mN - n + 1.

Column indices are 0-based here; serialization shifts to 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certify import build_D_stack, build_stacked
from .cxmat import dft_matrix, numeric_rank
from .errors import DimensionError, InfeasibleConstructionError


@dataclass(frozen=True)
class ConstructedInstance:
    n: int
    m: int
    N: int
    selected_cols: tuple[int, ...]    # 0-based DFT columns forming A
    complement_cols: tuple[int, ...]  # the unpicked columns
    A: np.ndarray                     # n x m
    X0: np.ndarray                    # m x N
    expected_left_null_dim: int
    # claim-2 variant only: row_order[i] is the final position of base row i
    row_order: tuple[int, ...] | None = None


@dataclass(frozen=True)
class VerificationRecord:
    stacked_rank: int
    D_rank: int
    left_null_dim: int
    expected_left_null_dim: int
    tolerance_used: float
    passed: bool


def _region_capacity(length: int, run: int, N: int) -> int:
    # max selectable from `length` contiguous positions, starting with a
    # run of `run` already-selected neighbors, never reaching N in a row
    count = 0
    r = run
    for _ in range(length):
        if r < N - 1:
            count += 1
            r += 1
        else:
            r = 0
    return count


def select_columns(n: int, m: int, N: int) -> tuple[int, ...]:
    """Deterministic greedy choice of m DFT columns (0-based).

    Starts from the block 0..N-1; columns N and n-1 are never selected, so
    the block stays circularly isolated. Extra columns are taken greedily,
    left to right over N+1..n-2, skipping whenever a selection would
    complete N consecutive picks, with a lookahead that the remaining
    positions can still supply the quota.
    """
    if not (n > m >= N >= 2):
        raise DimensionError("requires n > m >= N >= 2")
    if (n - m) * N < n - 1:
        raise InfeasibleConstructionError(
            f"(n-m)*N = {(n - m) * N} < n-1 = {n - 1}: no valid column selection")
    selected = list(range(N))
    needed = m - N
    run = 0
    for i in range(N + 1, n - 1):
        remaining = (n - 1) - (i + 1)
        take = False
        if needed > 0 and run < N - 1:
            if needed - 1 <= _region_capacity(remaining, run + 1, N):
                take = True
        if take:
            selected.append(i)
            needed -= 1
            run += 1
        else:
            if needed > _region_capacity(remaining, 0, N):
                raise InfeasibleConstructionError(
                    "column selection cannot reach the quota")  # unreachable when feasible
            run = 0
    if needed != 0:
        raise InfeasibleConstructionError("column selection cannot reach the quota")
    return tuple(selected)


def construct_claim1(n: int, m: int, N: int) -> ConstructedInstance:
    """Build the DFT-column instance whose certificate rank is exact."""
    selected = select_columns(n, m, N)
    complement = tuple(i for i in range(n) if i not in set(selected))
    F = dft_matrix(n)
    A = F[:, list(selected)]
    X0 = np.eye(m, N, dtype=np.complex128)
    M = n * N - m * N - n + 1
    return ConstructedInstance(
        n=n, m=m, N=N,
        selected_cols=selected,
        complement_cols=complement,
        A=A, X0=X0,
        expected_left_null_dim=M,
    )


def verify_claim1_rank(ci: ConstructedInstance,
                       tol: float | None = None) -> VerificationRecord:
    """Check the three exact rank statements for a constructed instance.

    The stacked certificate matrix must have rank mN, the block stack
    without its first row rank mN - 1, and the left null space of that
    stack the predicted dimension (by rank-nullity on its n(N-1) rows).
    """
    n, m, N = ci.n, ci.m, ci.N
    D = build_D_stack(ci.A, ci.X0)
    stacked = build_stacked(ci.A, ci.X0)
    rr_stacked = numeric_rank(stacked, tol=tol)
    rr_D = numeric_rank(D, tol=tol)
    left_null_dim = n * (N - 1) - rr_D.numeric_rank
    passed = (
        rr_stacked.numeric_rank == m * N
        and rr_D.numeric_rank == m * N - 1
        and left_null_dim == ci.expected_left_null_dim
    )
    return VerificationRecord(
        stacked_rank=rr_stacked.numeric_rank,
        D_rank=rr_D.numeric_rank,
        left_null_dim=left_null_dim,
        expected_left_null_dim=ci.expected_left_null_dim,
        tolerance_used=rr_stacked.tolerance_used,
        passed=passed,
    )


def construct_claim2(n: int, m: int, s: int, N: int,
                     J0, J1) -> ConstructedInstance:
    """Joint-sparsity variant over the union support J0 | J1 (0-based sets).

    Builds the base construction at size (n, l, N) with l = |J0 | J1|,
    then permutes rows of X0 (and matching columns of A) so the nonzero
    rows land at the positions J0 occupies inside the union. Column
    permutation leaves every certificate rank unchanged, so the permuted
    instance verifies at size (n, l, N).
    """
    J0 = sorted(set(int(j) for j in J0))
    J1 = sorted(set(int(j) for j in J1))
    if len(J0) != s:
        raise DimensionError("J0 must have exactly s elements")
    if any(j < 0 or j >= m for j in J0 + J1):
        raise DimensionError("support indices out of range 0..m-1")
    union = sorted(set(J0) | set(J1))
    ell = len(union)
    if not (ell <= 2 * s < n):
        raise DimensionError("requires |J0 | J1| <= 2s < n")
    if not (2 <= N <= s):
        raise DimensionError("requires 2 <= N <= s")
    base = construct_claim1(n, ell, N)
    # positions of J0 inside the union; the first N carry the identity block
    pos0 = [union.index(j) for j in J0]
    rest = [p for p in range(ell) if p not in set(pos0[:N])]
    perm = pos0[:N] + rest
    A = np.empty_like(base.A)
    X0 = np.zeros_like(base.X0)
    for i, p in enumerate(perm):
        A[:, p] = base.A[:, i]
        X0[p, :] = base.X0[i, :]
    return ConstructedInstance(
        n=n, m=ell, N=N,
        selected_cols=base.selected_cols,
        complement_cols=base.complement_cols,
        A=A, X0=X0,
        expected_left_null_dim=base.expected_left_null_dim,
        row_order=tuple(perm),
    )
