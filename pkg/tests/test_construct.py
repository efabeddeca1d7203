import numpy as np
import pytest

from bgpc import (InfeasibleConstructionError, construct_claim1,
                  construct_claim2, numeric_rank, select_columns,
                  verify_claim1_rank)
from bgpc.certify import build_stacked


def feasible_triples(n_max):
    for n in range(4, n_max + 1):
        for m in range(2, n):
            for N in range(2, m + 1):
                if (n - m) * N >= n - 1:
                    yield n, m, N


def window_violations(selected, n, N):
    """Circular windows of N consecutive columns that are fully selected,
    other than the initial block 0..N-1."""
    sel = set(selected)
    bad = []
    for start in range(n):
        window = [(start + k) % n for k in range(N)]
        if all(i in sel for i in window) and window != list(range(N)):
            bad.append(window)
    return bad


class TestSelection:
    def test_desk_example(self):
        sel = select_columns(8, 4, 2)
        assert sel == (0, 1, 3, 5)  # 1-based {1, 2, 4, 6}
        assert 4 not in sel and 7 not in sel

    def test_infeasible(self):
        with pytest.raises(InfeasibleConstructionError):
            select_columns(5, 4, 2)

    def test_square_identity_snapshots(self):
        ci = construct_claim1(6, 3, 3)
        np.testing.assert_array_equal(ci.X0, np.eye(3))
        assert ci.selected_cols == (0, 1, 2)

    def test_invariants_exhaustive(self):
        for n, m, N in feasible_triples(24):
            ci = construct_claim1(n, m, N)
            sel, comp = set(ci.selected_cols), set(ci.complement_cols)
            assert len(sel) == m
            assert sel | comp == set(range(n)) and not (sel & comp)
            assert set(range(N)) <= sel
            assert N in comp and (n - 1) in comp
            assert not window_violations(ci.selected_cols, n, N)
            assert ci.expected_left_null_dim == n * N - m * N - n + 1
            assert ci.expected_left_null_dim >= 0


class TestVerifyRanks:
    def test_n8_m4_N2(self):
        rec = verify_claim1_rank(construct_claim1(8, 4, 2))
        assert (rec.D_rank, rec.stacked_rank, rec.left_null_dim) == (7, 8, 1)
        assert rec.passed

    def test_n12_m6_N2(self):
        rec = verify_claim1_rank(construct_claim1(12, 6, 2))
        assert rec.left_null_dim == 24 - 12 - 12 + 1 == 1
        assert rec.passed

    def test_n9_m6_N3(self):
        rec = verify_claim1_rank(construct_claim1(9, 6, 3))
        assert rec.left_null_dim == 1
        assert rec.D_rank == 17
        assert rec.stacked_rank == 18
        assert rec.passed

    def test_rank_nullity(self):
        for n, m, N in [(8, 4, 2), (10, 5, 2), (9, 6, 3), (12, 8, 3)]:
            ci = construct_claim1(n, m, N)
            rec = verify_claim1_rank(ci)
            assert rec.left_null_dim + rec.D_rank == n * (N - 1)


class TestColumnPermutation:
    def test_stacked_rank_invariant(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            n, m, N = 9, 4, 2
            A = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
            X0 = rng.standard_normal((m, N)) + 1j * rng.standard_normal((m, N))
            perm = rng.permutation(m)
            r1 = numeric_rank(build_stacked(A, X0)).numeric_rank
            r2 = numeric_rank(build_stacked(A[:, perm], X0[perm, :])).numeric_rank
            assert r1 == r2


class TestClaim2:
    def test_union_equals_support(self):
        # J1 = J0: reduces to the base construction up to row relabeling
        ci = construct_claim2(16, 8, 3, 2, J0=[0, 1, 2], J1=[0, 1, 2])
        base = construct_claim1(16, 3, 2)
        assert ci.m == 3
        assert ci.selected_cols == base.selected_cols
        assert sorted(ci.row_order) == [0, 1, 2]
        assert verify_claim1_rank(ci).passed

    def test_overlapping_supports(self):
        ci = construct_claim2(16, 8, 3, 2, J0=[0, 1, 2], J1=[2, 3, 4])
        assert ci.m == 5
        assert (16 - 5) * 2 >= 15  # feasibility of the union size
        rec = verify_claim1_rank(ci)
        assert rec.passed
        assert rec.stacked_rank == 5 * 2

    def test_nonzero_rows_sit_on_support_positions(self):
        J0, J1 = [1, 4, 6], [0, 4, 7]
        ci = construct_claim2(16, 8, 3, 2, J0=J0, J1=J1)
        union = sorted(set(J0) | set(J1))
        nz = [i for i in range(ci.m) if np.any(ci.X0[i, :] != 0)]
        positions0 = [union.index(j) for j in J0]
        assert set(nz) <= set(positions0)
        assert len(nz) == ci.N

    def test_infeasible_union(self):
        # l = 2, N = 2: (16 - 2) * 2 >= 15 holds, but N > s is rejected
        with pytest.raises(Exception):
            construct_claim2(16, 8, 1, 2, J0=[0], J1=[1])
