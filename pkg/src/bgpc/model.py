"""BGPC problem instances and the surrounding arithmetic.

A BGPC instance bundles gains ``lambda0`` (length n), a dictionary ``A``
(n x m, tall in subspace mode), and snapshots ``X0`` (m x N); the forward
map is Y = diag(lambda0) @ A @ X0. Sample-complexity thresholds and the
scale-ambiguity alignment helper live here as well.

Row-support indices are 0-based throughout the Python API; serialization
converts to the 1-based on-disk convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cxmat import as_cmatrix
from .errors import DimensionError


@dataclass(frozen=True)
class BGPCInstance:
    n: int
    m: int
    N: int
    lambda0: np.ndarray  # shape (n,)
    X0: np.ndarray       # shape (m, N)
    A: np.ndarray        # shape (n, m)
    support: tuple[int, ...] | None = None  # sorted 0-based row support of X0

    def __post_init__(self):
        if self.lambda0.shape != (self.n,):
            raise DimensionError("lambda0 must have length n")
        if self.A.shape != (self.n, self.m):
            raise DimensionError("A must be n x m")
        if self.X0.shape != (self.m, self.N):
            raise DimensionError("X0 must be m x N")
        for arr in (self.lambda0, self.X0, self.A):
            if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
                raise ValueError("instance entries must be finite")
        if self.support is not None:
            sup = tuple(sorted(self.support))
            object.__setattr__(self, "support", sup)
            if len(sup) > self.m or any(j < 0 or j >= self.m for j in sup):
                raise DimensionError("support must be a subset of 0..m-1")
            off = [i for i in range(self.m) if i not in set(sup)]
            if off and np.any(self.X0[off, :] != 0):
                raise ValueError("X0 has nonzero rows outside the declared support")

    @property
    def s(self) -> int | None:
        return None if self.support is None else len(self.support)


@dataclass(frozen=True)
class ScaleAlignment:
    """Best complex scale sigma matching an estimate to a reference.

    ``relative_error`` is ||est - sigma*truth||_F / ||truth||_F at the
    minimizing sigma. ``degenerate`` flags a (near-)zero sigma, i.e. the
    estimate has no component along the reference.
    """

    sigma: complex
    relative_error: float
    degenerate: bool = False


def forward(inst: BGPCInstance) -> np.ndarray:
    """Y = diag(lambda0) @ A @ X0, shape (n, N)."""
    return inst.lambda0[:, None] * (inst.A @ inst.X0)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    # standard complex normal: real/imag i.i.d. N(0, 1/2)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_instance(n: int, m: int, N: int, seed,
                    sparsity: int | None = None) -> BGPCInstance:
    """Draw a generic instance from a seeded complex Gaussian ensemble.

    In subspace mode (``sparsity`` None) requires n > m. In sparse mode the
    row support is drawn uniformly among s-subsets of 0..m-1 and all other
    rows of X0 are exactly zero. Identical seeds give identical instances.
    """
    if n < 1 or m < 1 or N < 1:
        raise DimensionError("n, m, N must be positive")
    if sparsity is None and n <= m:
        raise DimensionError("subspace mode requires n > m")
    if sparsity is not None and (sparsity < 1 or sparsity > m):
        raise DimensionError("sparsity must satisfy 1 <= s <= m")
    rng = np.random.default_rng(seed)
    lambda0 = _complex_normal(rng, n)
    A = _complex_normal(rng, (n, m))
    if sparsity is None:
        X0 = _complex_normal(rng, (m, N))
        support = None
    else:
        support = tuple(sorted(rng.choice(m, size=sparsity, replace=False).tolist()))
        X0 = np.zeros((m, N), dtype=np.complex128)
        X0[list(support), :] = _complex_normal(rng, (sparsity, N))
    return BGPCInstance(n=n, m=m, N=N, lambda0=lambda0, X0=X0, A=A, support=support)


def min_samples_subspace(n: int, m: int) -> int:
    """Optimal snapshot count ceil((n-1)/(n-m)) for the subspace model."""
    if not (n > m >= 1):
        raise DimensionError("requires n > m >= 1")
    return -((n - 1) // -(n - m))


def min_samples_joint_sparse(n: int, s: int) -> int:
    """Optimal snapshot count ceil((n-1)/(n-2s)) for the joint-sparsity model."""
    if not (n > 2 * s and s >= 1):
        raise DimensionError("requires n > 2s >= 2")
    return -((n - 1) // -(n - 2 * s))


def align_scale(estimate, truth) -> ScaleAlignment:
    """Closed-form minimizer of ||estimate - sigma*truth||_F over complex sigma."""
    E = as_cmatrix(estimate, "estimate")
    T = as_cmatrix(truth, "truth")
    if E.shape != T.shape:
        raise DimensionError("estimate and truth must have the same shape")
    t_norm = float(np.linalg.norm(T))
    if t_norm == 0.0:
        raise ValueError("truth must be nonzero")
    sigma = complex(np.vdot(T, E) / (t_norm * t_norm))
    resid = float(np.linalg.norm(E - sigma * T)) / t_norm
    e_norm = float(np.linalg.norm(E))
    degenerate = abs(sigma) * t_norm <= 1e-12 * max(e_norm, 1e-300)
    return ScaleAlignment(sigma=sigma, relative_error=resid, degenerate=degenerate)
