"""Classical generalized inverses: Moore-Penrose, Drazin, group, core and core-EP.

Conventions, for a square complex matrix A with index k (the smallest j with
rank(A^j) = rank(A^{j+1})):

* Drazin inverse      A^D  = A^k (A^{2k+1})^+ A^k
* group inverse       A^#  = A^D, defined only when k <= 1
* core inverse        A^#o = A^# A A^+, defined only when k <= 1
* core-EP inverse     A^o  = A^D A^k (A^k)^+, always defined

The core-EP inverse X is the unique solution of AX^2 = X, (AX)* = AX and
A^n = A X A^n for all n >= k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, TolerancePolicy, as_matrix, numerical_rank

__all__ = [
    "NoGroupInverse",
    "NoCoreInverse",
    "IndexResult",
    "moore_penrose",
    "index",
    "drazin",
    "group_inverse",
    "core_inverse",
    "core_ep",
]


class NoGroupInverse(ArithmeticError):
    """The matrix has index >= 2, i.e. rank(A) != rank(A^2)."""


class NoCoreInverse(ArithmeticError):
    """The matrix has index >= 2, so the core inverse does not exist."""


@dataclass(frozen=True)
class IndexResult:
    """Drazin index k plus the witnessing rank chain.

    ``rank_chain[j]`` is the numerical rank of A^j for j = 0..k+1; the chain
    decreases strictly up to position k and then repeats once.
    """

    k: int
    rank_chain: tuple[int, ...]


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")


def moore_penrose(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values at or below rank_rtol * sigma_max * max(rows, cols) are
    treated as zero, matching the package's rank convention.
    """
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    cutoff = tol.rank_rtol * float(s[0]) * max(a.shape)
    inv_s = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    return (vh.conj().T * inv_s) @ u.conj().T


def _power_rank(power: np.ndarray, tol: TolerancePolicy) -> int:
    # a power of a nilpotent matrix is exactly zero in theory but carries
    # roundoff from the products; nil_atol decides when it counts as zero
    if float(np.linalg.norm(power, "fro")) <= tol.nil_atol:
        return 0
    return numerical_rank(power, tol)


def index(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> IndexResult:
    """Smallest k >= 0 with rank(A^k) = rank(A^{k+1}), found by rank stabilization."""
    a = as_matrix(a)
    _require_square(a)
    n = a.shape[0]
    chain = [n]  # rank of A^0
    power = np.eye(n, dtype=np.complex128)
    while True:
        power = power @ a
        chain.append(_power_rank(power, tol))
        if chain[-1] == chain[-2]:
            return IndexResult(k=len(chain) - 2, rank_chain=tuple(chain))
        if len(chain) > n + 1:  # ranks strictly decrease, so this cannot happen
            raise ArithmeticError("rank chain failed to stabilize")


def drazin(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse A^D = A^k (A^{2k+1})^+ A^k with k the index of A."""
    a = as_matrix(a)
    _require_square(a)
    k = index(a, tol).k
    ak = np.linalg.matrix_power(a, k)
    if float(np.linalg.norm(ak, "fro")) <= tol.nil_atol:  # nilpotent
        return np.zeros_like(ak)
    mid = moore_penrose(np.linalg.matrix_power(a, 2 * k + 1), tol)
    return ak @ mid @ ak


def group_inverse(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Group inverse A^#; requires rank(A) = rank(A^2)."""
    a = as_matrix(a)
    _require_square(a)
    idx = index(a, tol)
    if idx.k > 1:
        raise NoGroupInverse(
            f"rank(A) = {idx.rank_chain[1]} differs from rank(A^2) = {idx.rank_chain[2]}"
        )
    return drazin(a, tol)


def core_inverse(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Core inverse A^# A A^+; requires index <= 1."""
    a = as_matrix(a)
    _require_square(a)
    idx = index(a, tol)
    if idx.k > 1:
        raise NoCoreInverse(
            f"rank(A) = {idx.rank_chain[1]} differs from rank(A^2) = {idx.rank_chain[2]}"
        )
    return drazin(a, tol) @ a @ moore_penrose(a, tol)


def core_ep(a: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Core-EP inverse A^D A^k (A^k)^+, defined for every square matrix."""
    a = as_matrix(a)
    _require_square(a)
    k = index(a, tol).k
    ak = np.linalg.matrix_power(a, k)
    if float(np.linalg.norm(ak, "fro")) <= tol.nil_atol:  # nilpotent
        return np.zeros_like(ak)
    return drazin(a, tol) @ ak @ moore_penrose(ak, tol)
