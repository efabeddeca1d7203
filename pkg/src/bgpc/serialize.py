"""JSON file formats shared by the library and the CLI.

Matrices are stored as {"rows", "cols", "data"} with ``data`` a row-major
list of [re, im] pairs. Index sets (supports, selected DFT columns) are
1-based on disk and 0-based in the Python API. Floats round-trip exactly:
Python's json writer emits the shortest decimal that parses back to the
same double.
"""

from __future__ import annotations

import json

import numpy as np

from .certify import CertificateReport
from .construct import ConstructedInstance, VerificationRecord
from .errors import DimensionError
from .model import BGPCInstance
from .recover import RecoveryResult


def matrix_to_dict(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim == 1:
        M = M[:, None]
    rows, cols = M.shape
    flat = M.reshape(-1)  # row-major
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_dict(d: dict, name: str = "matrix") -> np.ndarray:
    try:
        rows, cols, data = int(d["rows"]), int(d["cols"]), d["data"]
    except (KeyError, TypeError) as exc:
        raise DimensionError(f"{name}: malformed matrix object ({exc})") from exc
    if rows < 1 or cols < 1:
        raise DimensionError(f"{name}: rows and cols must be positive")
    if len(data) != rows * cols:
        raise DimensionError(
            f"{name}: data length {len(data)} != rows*cols = {rows * cols}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        if len(pair) != 2:
            raise DimensionError(f"{name}: data[{i}] is not a [re, im] pair")
        out[i] = complex(float(pair[0]), float(pair[1]))
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise ValueError(f"{name}: non-finite entries")
    return out.reshape(rows, cols)


def instance_to_dict(inst: BGPCInstance) -> dict:
    d = {
        "n": inst.n,
        "m": inst.m,
        "N": inst.N,
        "lambda0": matrix_to_dict(inst.lambda0),
        "X0": matrix_to_dict(inst.X0),
        "A": matrix_to_dict(inst.A),
    }
    if inst.support is not None:
        d["support"] = [j + 1 for j in inst.support]
    return d


def instance_from_dict(d: dict) -> BGPCInstance:
    try:
        n, m, N = int(d["n"]), int(d["m"]), int(d["N"])
    except (KeyError, TypeError) as exc:
        raise DimensionError(f"instance: missing field ({exc})") from exc
    lambda0 = matrix_from_dict(d["lambda0"], "lambda0").reshape(-1)
    X0 = matrix_from_dict(d["X0"], "X0")
    A = matrix_from_dict(d["A"], "A")
    support = None
    if d.get("support") is not None:
        support = tuple(int(j) - 1 for j in d["support"])
    return BGPCInstance(n=n, m=m, N=N, lambda0=lambda0, X0=X0, A=A,
                        support=support)


def report_to_dict(rep: CertificateReport) -> dict:
    return {
        "mode": rep.mode,
        "verdict": rep.verdict,
        "condition1_rank_full": rep.condition1_rank_full,
        "condition2_lambda_unique": rep.condition2_lambda_unique,
        "stacked_rank": rep.stacked_rank,
        "required_rank": rep.required_rank,
        "tolerance_used": rep.tolerance_used,
        "support_cells_checked": rep.support_cells_checked,
        "failing_support": (None if rep.failing_support is None
                            else [j + 1 for j in rep.failing_support]),
    }


def constructed_to_dict(ci: ConstructedInstance) -> dict:
    return {
        "n": ci.n,
        "m": ci.m,
        "N": ci.N,
        "X0": matrix_to_dict(ci.X0),
        "A": matrix_to_dict(ci.A),
        "selected_cols": [j + 1 for j in ci.selected_cols],
        "complement_cols": [j + 1 for j in ci.complement_cols],
        "expected_left_null_dim": ci.expected_left_null_dim,
    }


def constructed_from_dict(d: dict) -> ConstructedInstance:
    try:
        n, m, N = int(d["n"]), int(d["m"]), int(d["N"])
        selected = tuple(int(j) - 1 for j in d["selected_cols"])
        complement = tuple(int(j) - 1 for j in d["complement_cols"])
        expected = int(d["expected_left_null_dim"])
    except (KeyError, TypeError) as exc:
        raise DimensionError(f"constructed instance: missing field ({exc})") from exc
    return ConstructedInstance(
        n=n, m=m, N=N,
        selected_cols=selected,
        complement_cols=complement,
        A=matrix_from_dict(d["A"], "A"),
        X0=matrix_from_dict(d["X0"], "X0"),
        expected_left_null_dim=expected,
    )


def verification_to_dict(rec: VerificationRecord) -> dict:
    return {
        "stacked_rank": rec.stacked_rank,
        "D_rank": rec.D_rank,
        "left_null_dim": rec.left_null_dim,
        "expected_left_null_dim": rec.expected_left_null_dim,
        "tolerance_used": rec.tolerance_used,
        "pass": rec.passed,
    }


def recovery_to_dict(res: RecoveryResult) -> dict:
    return {
        "status": res.status,
        "null_dim": res.null_dim,
        "lambda": None if res.lam is None else matrix_to_dict(res.lam),
        "X": None if res.X is None else matrix_to_dict(res.X),
        "support": None if res.support is None else [j + 1 for j in res.support],
    }


def dump_json(obj: dict | list, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
