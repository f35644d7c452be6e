"""Dense complex matrix primitives shared by every other module.

Matrices are plain ``numpy.ndarray`` values with complex128 entries.
``as_matrix`` is the validating constructor; everything downstream expects
its output: a 2-D, finite, read-only array.  All comparisons in the package
go through the single relative-Frobenius convention implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOL",
    "MatrixFormatError",
    "as_matrix",
    "conj_transpose",
    "frobenius",
    "rel_residual",
    "approx_equal",
    "numerical_rank",
    "col_space_contains",
    "matrix_to_json",
    "matrix_from_json",
]


class MatrixFormatError(ValueError):
    """Matrix JSON is malformed or contains non-finite entries."""


@dataclass(frozen=True)
class TolerancePolicy:
    """Thresholds governing every floating-point decision in the package.

    rank_rtol: relative cut for singular values (scaled by the largest
        singular value and the larger matrix dimension) when counting rank.
    eq_rtol: relative Frobenius threshold for declaring two matrices equal.
    nil_atol: absolute threshold for declaring a matrix power zero.

    The defaults leave headroom above double-precision roundoff for
    products of roughly ten well-conditioned matrices.
    """

    rank_rtol: float = 1e-10
    eq_rtol: float = 1e-8
    nil_atol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("rank_rtol", "eq_rtol", "nil_atol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly in (0, 1), got {value!r}")


DEFAULT_TOL = TolerancePolicy()


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(values) -> np.ndarray:
    """Validating constructor: a 2-D, finite, read-only complex128 array."""
    a = np.array(values, dtype=np.complex128, copy=True)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    rows, cols = a.shape
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite (no NaN or Inf)")
    return _readonly(a)


def conj_transpose(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose; applying it twice returns the input bit-exactly."""
    return np.conj(a).T.copy()


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def rel_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Relative Frobenius distance ||A - B|| / max(1, ||A||, ||B||).

    The floor of 1 avoids division blowup near zero matrices.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return frobenius(a - b) / max(1.0, frobenius(a), frobenius(b))


def approx_equal(a: np.ndarray, b: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff ||A - B||_F <= eq_rtol * max(1, ||A||_F, ||B||_F)."""
    return rel_residual(a, b) <= tol.eq_rtol


def numerical_rank(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Count of singular values above rank_rtol * sigma_max * max(rows, cols)."""
    a = np.asarray(a, dtype=np.complex128)
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cutoff = tol.rank_rtol * float(s[0]) * max(a.shape)
    return int(np.count_nonzero(s > cutoff))


def col_space_contains(u: np.ndarray, v: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff col(V) is contained in col(U), tested as rank([U | V]) = rank(U)."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape[0] != v.shape[0]:
        raise ValueError(f"row count mismatch: {u.shape[0]} vs {v.shape[0]}")
    return numerical_rank(np.hstack([u, v]), tol) == numerical_rank(u, tol)


def matrix_to_json(a: np.ndarray) -> dict:
    """Serialize to ``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` row-major."""
    a = np.asarray(a, dtype=np.complex128)
    entries = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": entries}


def _json_dim(obj: dict, key: str) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise MatrixFormatError(f"'{key}' must be a positive integer, got {value!r}")
    return value


def matrix_from_json(obj) -> np.ndarray:
    """Parse the matrix JSON format, rejecting wrong-length arrays and non-finite numbers."""
    if not isinstance(obj, dict):
        raise MatrixFormatError(f"expected a JSON object, got {type(obj).__name__}")
    rows = _json_dim(obj, "rows")
    cols = _json_dim(obj, "cols")
    entries = obj.get("entries")
    if not isinstance(entries, list):
        raise MatrixFormatError("'entries' must be an array of [re, im] pairs")
    if len(entries) != rows * cols:
        raise MatrixFormatError(
            f"'entries' has length {len(entries)}, expected rows*cols = {rows * cols}"
        )
    flat = np.empty(rows * cols, dtype=np.complex128)
    for pos, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise MatrixFormatError(f"entry {pos} is not an [re, im] pair: {pair!r}")
        re, im = pair
        for part in (re, im):
            if isinstance(part, bool) or not isinstance(part, (int, float)):
                raise MatrixFormatError(f"entry {pos} holds a non-numeric value: {part!r}")
            if not np.isfinite(part):
                raise MatrixFormatError(f"entry {pos} is not finite: {pair!r}")
        flat[pos] = complex(re, im)
    return _readonly(flat.reshape(rows, cols))
