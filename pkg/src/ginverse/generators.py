"""Random matrix constructions with known index and bounded conditioning.

Test matrices are built as P diag(C, N) P^{-1} with C invertible and N
nilpotent of prescribed Jordan structure, so the true index is known by
construction.  Singular values of C and P are drawn from narrow ranges:
ill-conditioned cores make the package-wide equality tolerance unreachable
in double precision and would mask real bugs rather than reveal them.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .oracle import GaussianRational, RationalMatrix, inverse as exact_inverse, rank as exact_rank

__all__ = [
    "haar_unitary",
    "conditioned_matrix",
    "nilpotent_jordan",
    "with_index",
    "orthogonal_pair",
    "rational_with_index",
]

# Core singular values within [1/2, 2] keep condition numbers of ninth powers
# around 1e5, comfortably inside the 1e3 per-factor cap the fuzz suite assumes.
CORE_SIGMA = (0.5, 2.0)
BASIS_SIGMA = (0.7, 1.4)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def conditioned_matrix(
    rng: np.random.Generator,
    n: int,
    sigma: tuple[float, float] = CORE_SIGMA,
) -> np.ndarray:
    """Random complex matrix with singular values inside the given range."""
    u = haar_unitary(rng, n)
    v = haar_unitary(rng, n)
    s = np.exp(rng.uniform(np.log(sigma[0]), np.log(sigma[1]), n))
    return (u * s) @ v


def nilpotent_jordan(rng: np.random.Generator, size: int, k: int) -> np.ndarray:
    """Nilpotent matrix of the given size whose largest Jordan block is k.

    Built as one block of size k plus randomly sized blocks of at most k,
    so the nilpotency index is exactly k.
    """
    if not 1 <= k <= size:
        raise ValueError(f"need 1 <= k <= size, got k={k}, size={size}")
    sizes = [k]
    remaining = size - k
    while remaining > 0:
        block = int(rng.integers(1, min(k, remaining) + 1))
        sizes.append(block)
        remaining -= block
    n = np.zeros((size, size), dtype=np.complex128)
    offset = 0
    for block in sizes:
        for i in range(block - 1):
            n[offset + i, offset + i + 1] = 1.0
        offset += block
    return n


def with_index(
    rng: np.random.Generator,
    n: int,
    k: int,
    core_sigma: tuple[float, float] = CORE_SIGMA,
) -> np.ndarray:
    """Random n x n complex matrix whose Drazin index is exactly k."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return conditioned_matrix(rng, n, core_sigma)
    if k == n:
        core_size = 0
    else:
        core_size = int(rng.integers(1, n - k + 1))
    blocks = np.zeros((n, n), dtype=np.complex128)
    if core_size:
        blocks[:core_size, :core_size] = conditioned_matrix(rng, core_size, core_sigma)
    blocks[core_size:, core_size:] = nilpotent_jordan(rng, n - core_size, k)
    p = conditioned_matrix(rng, n, BASIS_SIGMA)
    return p @ blocks @ np.linalg.inv(p)


def orthogonal_pair(
    rng: np.random.Generator,
    n1: int,
    n2: int,
    k1: int,
    k2: int,
) -> tuple[np.ndarray, np.ndarray]:
    """A pair with AB = BA = A*B = 0, built from disjoint blocks of one unitary frame."""
    n = n1 + n2
    u = haar_unitary(rng, n)
    da = np.zeros((n, n), dtype=np.complex128)
    db = np.zeros((n, n), dtype=np.complex128)
    da[:n1, :n1] = with_index(rng, n1, k1)
    db[n1:, n1:] = with_index(rng, n2, k2)
    uh = u.conj().T
    return u @ da @ uh, u @ db @ uh


def _random_gaussian_integer_matrix(
    rng: np.random.Generator, n: int, span: int, halves: bool
) -> RationalMatrix:
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            re = Fraction(int(rng.integers(-span, span + 1)))
            im = Fraction(int(rng.integers(-span, span + 1)))
            if halves and rng.integers(0, 4) == 0:
                re = re / 2
            row.append(GaussianRational(re, im))
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def _unimodular(rng: np.random.Generator, n: int, shears: int) -> RationalMatrix:
    """Integer matrix of determinant +-1: a product of shears and row swaps."""
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(shears):
        i, j = rng.choice(n, size=2, replace=False)
        c = int(rng.choice([-1, 1]))
        for col in range(n):
            m[i][col] += c * m[j][col]
    if n > 1 and rng.integers(0, 2):
        i, j = rng.choice(n, size=2, replace=False)
        m[i], m[j] = m[j], m[i]
    return RationalMatrix.from_rows(
        [[GaussianRational(x) for x in row] for row in m]
    )


def rational_with_index(
    rng: np.random.Generator,
    n: int,
    k: int,
    max_entry: int = 10,
    halves: bool = False,
    max_attempts: int = 1000,
) -> RationalMatrix:
    """Gaussian-rational matrix of exact index k with entry height at most max_entry.

    Constructed as S diag(C, N) S^{-1} with S unimodular (so no denominators
    enter beyond those already in C) and rejected until every numerator and
    denominator is bounded by max_entry.
    """
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    for _ in range(max_attempts):
        if k == 0:
            core_size = n
        elif k == n:
            core_size = 0
        else:
            core_size = int(rng.integers(1, n - k + 1))
        rows = [[GaussianRational() for _ in range(n)] for _ in range(n)]
        if core_size:
            core = _random_gaussian_integer_matrix(rng, core_size, 2, halves)
            if exact_rank(core) != core_size:
                continue
            for i in range(core_size):
                for j in range(core_size):
                    rows[i][j] = core.entries[i][j]
        if core_size < n:
            nil = nilpotent_jordan(rng, n - core_size, k)
            for i in range(n - core_size):
                for j in range(n - core_size):
                    rows[core_size + i][core_size + j] = GaussianRational(
                        int(nil[i, j].real)
                    )
        blocks = RationalMatrix.from_rows(rows)
        s = _unimodular(rng, n, shears=int(rng.integers(1, n + 1)))
        a = s @ blocks @ exact_inverse(s)
        height = max(
            max(
                abs(x.re.numerator),
                x.re.denominator,
                abs(x.im.numerator),
                x.im.denominator,
            )
            for row in a.entries
            for x in row
        )
        if height <= max_entry:
            return a
    raise RuntimeError(
        f"no matrix with entry height <= {max_entry} found in {max_attempts} attempts"
    )
