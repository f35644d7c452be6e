"""The m-weak group inverse of a square complex matrix, by every route.

For a square A with Drazin inverse A^D, core-EP inverse A^o and index k,
the m-weak group inverse is the unique Z with

    Z = A Z^2,   Z A^{k+1} = A^k,   (A^k)* A^{m+1} Z = (A^k)* A^m.

The canonical computation is Z = (A^D)^{m+1} A A^o A^m.  Six more routes
are provided purely for cross-verification, together with checkers for the
equivalent characterizations: the additive decomposition A = X + Y with X
group invertible and Y nilpotent, the polar-like idempotent p = I - A Z,
the fixed-point system in b, the (b,c)-inverse realization and the outer
inverse with prescribed range and kernel.

All one-sided ("right") notions coincide with their two-sided counterparts
for square complex matrices: the algebra is Dedekind-finite, so one-sided
invertibility is invertibility, and quasinilpotent means nilpotent.  The
right-invertibility checks below are therefore full-rank tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .classical import core_ep, core_inverse, drazin, group_inverse, index, moore_penrose
from .matcore import (
    DEFAULT_TOL,
    TolerancePolicy,
    approx_equal,
    as_matrix,
    col_space_contains,
    conj_transpose,
    frobenius,
    numerical_rank,
    rel_residual,
)

__all__ = [
    "OrthogonalityViolation",
    "RepresentationMismatch",
    "Route",
    "Check",
    "VerificationReport",
    "MwgiResult",
    "GroupDecomposition",
    "PolarData",
    "mwgi",
    "mwgi_via_power",
    "mwgi_normal_equation",
    "mwgi_drazin_solve",
    "mwgi_step",
    "mwgi_core_of_drazin",
    "mwgi_core_chain",
    "mwgi_regular_lift",
    "mwgi_by_route",
    "verify_definition",
    "group_decomposition",
    "polar_idempotent",
    "b_characterization",
    "bc_inverse_check",
    "outer_inverse_subspaces",
    "additive_mwgi",
]


class OrthogonalityViolation(ValueError):
    """The summands are not mutually orthogonal (AB, BA, A*B must vanish)."""


class RepresentationMismatch(ArithmeticError):
    """Two algebraically equal product forms disagreed beyond tolerance."""


class Route(enum.Enum):
    """Which representation produced an m-weak group inverse."""

    CORE_EP = "core-ep"
    POWER_REDUCTION = "power"
    NORMAL_EQUATION = "normal"
    DRAZIN_SOLVE = "drazin-solve"
    RECURSIVE = "recursive"
    CORE_OF_DRAZIN = "core-of-drazin"
    CORE_CHAIN = "core-chain"
    REGULAR_LIFT = "regular-lift"


@dataclass(frozen=True)
class Check:
    """One named verification: residual plus its pass flag.

    Equation checks store the relative Frobenius residual of left-minus-right;
    nilpotency checks store the absolute Frobenius norm of the tested power;
    subspace/rank checks are boolean and store 0.0 or 1.0.
    """

    residual: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    """Named residuals with pass flags; overall is their conjunction."""

    checks: dict[str, Check]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "checks": {
                name: {"residual": c.residual, "pass": c.passed}
                for name, c in self.checks.items()
            },
            "overall": self.overall,
        }


def _eq_check(left: np.ndarray, right: np.ndarray, tol: TolerancePolicy) -> Check:
    residual = rel_residual(left, right)
    return Check(residual=residual, passed=residual <= tol.eq_rtol)


def _nil_check(power: np.ndarray, tol: TolerancePolicy) -> Check:
    norm = frobenius(power)
    return Check(residual=norm, passed=norm <= tol.nil_atol)


def _bool_check(flag: bool) -> Check:
    return Check(residual=0.0 if flag else 1.0, passed=flag)


def _merge(*checks: Check) -> Check:
    return Check(
        residual=max(c.residual for c in checks),
        passed=all(c.passed for c in checks),
    )


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _pow(a: np.ndarray, e: int) -> np.ndarray:
    return np.linalg.matrix_power(a, e)


def _square(a) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    return a


def _check_m(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")


@dataclass(frozen=True)
class MwgiResult:
    """An m-weak group inverse Z with the inputs that produced it."""

    Z: np.ndarray
    m: int
    k: int
    route: Route


@dataclass(frozen=True)
class GroupDecomposition:
    """Additive split A = X + Y with X group invertible and Y nilpotent."""

    X: np.ndarray
    Y: np.ndarray

    def verify(self, a: np.ndarray, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> VerificationReport:
        """Check the side conditions: X* A^{m-1} Y = 0, Y X = 0, Y nilpotent,
        X of index <= 1 (nonzero unless A is nilpotent), and that the group
        inverse of X is the m-weak group inverse of A."""
        a = _square(a)
        n = a.shape[0]
        z = mwgi(a, m, tol).Z
        checks: dict[str, Check] = {}
        checks["sum"] = _eq_check(a, self.X + self.Y, tol)
        checks["orth_left"] = _eq_check(
            conj_transpose(self.X) @ _pow(a, m - 1) @ self.Y, np.zeros((n, n)), tol
        )
        checks["orth_right"] = _eq_check(self.Y @ self.X, np.zeros((n, n)), tol)
        checks["y_nilpotent"] = _nil_check(_pow(self.Y, n), tol)
        x_idx = index(self.X, tol).k
        checks["x_index"] = _bool_check(x_idx <= 1)
        a_nilpotent = frobenius(_pow(a, n)) <= tol.nil_atol
        checks["x_nonzero"] = _bool_check(a_nilpotent or frobenius(self.X) > tol.nil_atol)
        try:
            checks["group_matches"] = _eq_check(group_inverse(self.X, tol), z, tol)
        except ArithmeticError:
            checks["group_matches"] = _bool_check(False)
        return VerificationReport(checks=checks)


@dataclass(frozen=True)
class PolarData:
    """Polar-like idempotent p = I - A Z and the inverse of the (I-p)-corner."""

    p: np.ndarray
    corner_inverse: np.ndarray

    def verify(self, a: np.ndarray, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> VerificationReport:
        """Check p^2 = p, the Hermitian weighting (A^m)* A^m p, nilpotency of
        A p, invertibility of (I-p)A(I-p) inside the corner, the range identity
        col(I-p) = col(A(I-p)), and invertibility of A + p (full-rank test)."""
        a = _square(a)
        n = a.shape[0]
        one_minus_p = np.eye(n, dtype=np.complex128) - self.p
        corner = one_minus_p @ a @ one_minus_p
        checks: dict[str, Check] = {}
        checks["idempotent"] = _eq_check(self.p @ self.p, self.p, tol)
        weighted = conj_transpose(_pow(a, m)) @ _pow(a, m) @ self.p
        checks["hermitian"] = _eq_check(weighted, conj_transpose(weighted), tol)
        checks["ap_nilpotent"] = _nil_check(_pow(a @ self.p, n), tol)
        checks["corner_right"] = _eq_check(corner @ self.corner_inverse, one_minus_p, tol)
        checks["corner_left"] = _eq_check(self.corner_inverse @ corner, one_minus_p, tol)
        checks["range_eq"] = _bool_check(
            col_space_contains(one_minus_p, a @ one_minus_p, tol)
            and col_space_contains(a @ one_minus_p, one_minus_p, tol)
        )
        checks["plus_p_invertible"] = _bool_check(numerical_rank(a + self.p, tol) == n)
        return VerificationReport(checks=checks)


def _parts(a: np.ndarray, m: int, tol: TolerancePolicy):
    k = index(a, tol).k
    d = drazin(a, tol)
    cep = core_ep(a, tol)
    return k, d, cep, _pow(a, m)


def mwgi(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> MwgiResult:
    """m-weak group inverse by the canonical route Z = (A^D)^{m+1} A A^o A^m.

    The algebraically equal product form (A^D A A^o)^{m+1} A^m is evaluated
    as well; disagreement beyond tolerance raises RepresentationMismatch.
    """
    a = _square(a)
    _check_m(m)
    k, d, cep, am = _parts(a, m, tol)
    z = _pow(d, m + 1) @ a @ cep @ am
    alt = _pow(d @ a @ cep, m + 1) @ am
    if not approx_equal(z, alt, tol):
        raise RepresentationMismatch(
            f"the two product forms disagree: residual {rel_residual(z, alt):.3e}"
        )
    return MwgiResult(Z=_readonly(z), m=m, k=k, route=Route.CORE_EP)


def mwgi_via_power(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Power-reduction route: A^{m-1} W with W the 1-weak group inverse of A^m."""
    a = _square(a)
    _check_m(m)
    w = mwgi(_pow(a, m), 1, tol).Z
    return _pow(a, m - 1) @ w


def mwgi_normal_equation(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Normal-equation route: (A^D)^{m+1} x with x solving Q*Q x = Q* A^m, Q = A A^D.

    x = Q^+ A^m works because Q Q^+ is the orthogonal projector onto col(Q);
    the remaining null(Q) freedom in x is annihilated by the (A^D)^{m+1} factor.
    """
    a = _square(a)
    _check_m(m)
    d = drazin(a, tol)
    q = a @ d
    x = moore_penrose(q, tol) @ _pow(a, m)
    return _pow(d, m + 1) @ x


def mwgi_drazin_solve(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Drazin-weighted route: (A^D)^{m+2} x with x solving (A^D)* A^D x = (A^D)* A^m."""
    a = _square(a)
    _check_m(m)
    d = drazin(a, tol)
    x = moore_penrose(d, tol) @ _pow(a, m)
    return _pow(d, m + 2) @ x


def mwgi_step(a, zm, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Recursion step: from Z_m to Z_{m+1} = Z_m^2 A.

    The caller owns the precondition that zm is the m-weak group inverse of a
    for some m; no validation is attempted.
    """
    a = _square(a)
    zm = as_matrix(zm)
    return zm @ zm @ a


def mwgi_core_of_drazin(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Route through the core inverse of A^D: (A^D)^{m+2} (A^D)^#o A^m.

    A^D always has index <= 1, so its core inverse exists unconditionally.
    """
    a = _square(a)
    _check_m(m)
    d = drazin(a, tol)
    return _pow(d, m + 2) @ core_inverse(d, tol) @ _pow(a, m)


def mwgi_core_chain(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Chained-core route: [A^D A^m C]^{m+1} A^m with C the core inverse of A^{m+1} A^o.

    B = A^{m+1} A^o always has index <= 1 (its core inverse is (A^o)^m, which
    is verified here), even when A itself has no core inverse.
    """
    a = _square(a)
    _check_m(m)
    d = drazin(a, tol)
    cep = core_ep(a, tol)
    am = _pow(a, m)
    b = _pow(a, m + 1) @ cep
    c = core_inverse(b, tol)  # NoCoreInverse propagates if B misbehaves
    if not approx_equal(c, _pow(cep, m), tol):
        raise RepresentationMismatch(
            f"core inverse of A^({m + 1}) A^o is not (A^o)^{m}: "
            f"residual {rel_residual(c, _pow(cep, m)):.3e}"
        )
    return _pow(d @ am @ c, m + 1) @ am


def mwgi_regular_lift(a, m: int, tol: TolerancePolicy = DEFAULT_TOL, inner=None) -> np.ndarray:
    """Lift route: [W]^2 A with W the m-weak group inverse of A^2 A^-.

    Returns the (m+1)-weak group inverse of A.  The inner inverse A^- defaults
    to the Moore-Penrose inverse; any matrix with A A^- A = A may be supplied.
    """
    a = _square(a)
    _check_m(m)
    if inner is None:
        inner = moore_penrose(a, tol)
    else:
        inner = as_matrix(inner)
    w = mwgi(a @ a @ inner, m, tol).Z
    return w @ w @ a


_ROUTES = {
    Route.CORE_EP: lambda a, m, tol: mwgi(a, m, tol).Z,
    Route.POWER_REDUCTION: mwgi_via_power,
    Route.NORMAL_EQUATION: mwgi_normal_equation,
    Route.DRAZIN_SOLVE: mwgi_drazin_solve,
    Route.CORE_OF_DRAZIN: mwgi_core_of_drazin,
    Route.CORE_CHAIN: mwgi_core_chain,
}


def mwgi_by_route(a, m: int, route: Route, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Dispatch a named computation route; they all return the same matrix.

    The recursive route steps from mwgi(a, m-1) and the lift route goes
    through A^2 A^+, so both require m >= 2.
    """
    if route in _ROUTES:
        return _ROUTES[route](a, m, tol)
    if route is Route.RECURSIVE:
        if m < 2:
            raise ValueError("the recursive route needs m >= 2")
        return mwgi_step(a, mwgi(a, m - 1, tol).Z, tol)
    if route is Route.REGULAR_LIFT:
        if m < 2:
            raise ValueError("the regular-lift route needs m >= 2")
        return mwgi_regular_lift(a, m - 1, tol)
    raise ValueError(f"unknown route {route!r}")


def verify_definition(a, z, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> VerificationReport:
    """Check a candidate Z against every defining equation of the m-weak group inverse.

    Named checks:
      ax2          Z = A Z^2
      def11        (A A^D)* A^{m+1} Z = (A A^D)* A^m
      wgm_k        Z A^{k+1} = A^k and (A^k)* A^{m+1} Z = (A^k)* A^m
      hermitian31  (A^m)* A^{m+1} Z is Hermitian
      coreEP48     A^{m+1} Z = A A^o A^m
      limit        A^k = A Z A^k (the eventual identity, at n = k)
      idem34       A Z = A^n Z^n for n = 2, 3
    """
    a = _square(a)
    z = as_matrix(z)
    if z.shape != a.shape:
        raise ValueError(f"candidate shape {z.shape} does not match {a.shape}")
    _check_m(m)
    k, d, cep, am = _parts(a, m, tol)
    am1 = _pow(a, m + 1)
    ak = _pow(a, k)
    q_star = conj_transpose(a @ d)
    ak_star = conj_transpose(ak)

    checks: dict[str, Check] = {}
    checks["ax2"] = _eq_check(z, a @ z @ z, tol)
    checks["def11"] = _eq_check(q_star @ am1 @ z, q_star @ am, tol)
    checks["wgm_k"] = _merge(
        _eq_check(z @ _pow(a, k + 1), ak, tol),
        _eq_check(ak_star @ am1 @ z, ak_star @ am, tol),
    )
    weighted = conj_transpose(am) @ am1 @ z
    checks["hermitian31"] = _eq_check(weighted, conj_transpose(weighted), tol)
    checks["coreEP48"] = _eq_check(am1 @ z, a @ cep @ am, tol)
    checks["limit"] = _eq_check(ak, a @ z @ ak, tol)
    checks["idem34"] = _merge(
        *(_eq_check(a @ z, _pow(a, n) @ _pow(z, n), tol) for n in (2, 3))
    )
    return VerificationReport(checks=checks)


def group_decomposition(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> GroupDecomposition:
    """Split A = X + Y along Z = mwgi(A, m): X = A^2 Z carries the group part."""
    a = _square(a)
    _check_m(m)
    z = mwgi(a, m, tol).Z
    x = a @ a @ z
    return GroupDecomposition(X=_readonly(x), Y=_readonly(a - x))


def polar_idempotent(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> PolarData:
    """Polar-like data: p = I - A Z and the corner witness (I-p) Z (I-p)."""
    a = _square(a)
    _check_m(m)
    n = a.shape[0]
    z = mwgi(a, m, tol).Z
    p = np.eye(n, dtype=np.complex128) - a @ z
    one_minus_p = np.eye(n, dtype=np.complex128) - p
    corner_inverse = one_minus_p @ z @ one_minus_p
    return PolarData(p=_readonly(p), corner_inverse=_readonly(corner_inverse))


def b_characterization(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> VerificationReport:
    """Check the fixed-point characterization with b = mwgi(A, m).

    Named checks: bab (b A b = b), a2b2 (A^2 b^2 = A b), herm ((A^m)* A^{m+1} b
    Hermitian), range (col(A b) = col(A^2 b)), qnil ((A - A^2 b)^n vanishes).
    """
    a = _square(a)
    _check_m(m)
    n = a.shape[0]
    b = mwgi(a, m, tol).Z
    ab = a @ b
    a2b = a @ ab
    checks: dict[str, Check] = {}
    checks["bab"] = _eq_check(b @ a @ b, b, tol)
    checks["a2b2"] = _eq_check(a2b @ b, ab, tol)
    weighted = conj_transpose(_pow(a, m)) @ _pow(a, m + 1) @ b
    checks["herm"] = _eq_check(weighted, conj_transpose(weighted), tol)
    checks["range"] = _bool_check(
        col_space_contains(ab, a2b, tol) and col_space_contains(a2b, ab, tol)
    )
    checks["qnil"] = _nil_check(_pow(a - a2b, n), tol)
    return VerificationReport(checks=checks)


def bc_inverse_check(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> VerificationReport:
    """Check that Z is the (b0, c0)-inverse of A for the canonical pair
    b0 = (A^D)^{m+1} A^m and c0 = A^D A A^o A^m.

    Membership x in b0*R*x and x*R*c0 is realized as the column-space inclusion
    col(Z) in col(b0) and the row-space inclusion row(Z) in row(c0).
    """
    a = _square(a)
    _check_m(m)
    k, d, cep, am = _parts(a, m, tol)
    z = _pow(d, m + 1) @ a @ cep @ am
    b0 = _pow(d, m + 1) @ am
    c0 = d @ a @ cep @ am
    checks: dict[str, Check] = {}
    checks["xab"] = _eq_check(z @ a @ b0, b0, tol)
    checks["cax"] = _eq_check(c0 @ a @ z, c0, tol)
    checks["memb_col"] = _bool_check(col_space_contains(b0, z, tol))
    checks["memb_row"] = _bool_check(
        col_space_contains(conj_transpose(c0), conj_transpose(z), tol)
    )
    return VerificationReport(checks=checks)


def outer_inverse_subspaces(a, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> VerificationReport:
    """Check that Z is the outer inverse with range col((A^D)^{m+1} A^m) and
    kernel equal to that of A^o A^m (tested as row-space equality)."""
    a = _square(a)
    _check_m(m)
    k, d, cep, am = _parts(a, m, tol)
    z = _pow(d, m + 1) @ a @ cep @ am
    range_target = _pow(d, m + 1) @ am
    kernel_target = cep @ am
    checks: dict[str, Check] = {}
    checks["outer"] = _eq_check(z @ a @ z, z, tol)
    checks["range_eq"] = _bool_check(
        col_space_contains(range_target, z, tol)
        and col_space_contains(z, range_target, tol)
    )
    zs = conj_transpose(z)
    ks = conj_transpose(kernel_target)
    checks["kernel_eq"] = _bool_check(
        col_space_contains(ks, zs, tol) and col_space_contains(zs, ks, tol)
    )
    return VerificationReport(checks=checks)


def additive_mwgi(a, b, m: int, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Sum rule: when AB = BA = A*B = 0, the inverse of A + B splits blockwise."""
    a = _square(a)
    b = _square(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    _check_m(m)
    zero = np.zeros(a.shape)
    for label, product in (
        ("A B", a @ b),
        ("B A", b @ a),
        ("A* B", conj_transpose(a) @ b),
    ):
        if not approx_equal(product, zero, tol):
            raise OrthogonalityViolation(
                f"{label} is not zero (residual {rel_residual(product, zero):.3e})"
            )
    return mwgi(a, m, tol).Z + mwgi(b, m, tol).Z
