"""Signature metrics, indefinite forms, and membership checks for U(p, q).

A matrix M belongs to U(p, q) when M* J M = J, where J = diag{I_p, -I_q}.
Everything downstream (generators, block forms, exp/log) builds on the
predicates and residuals defined here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Default relative tolerance for membership-style predicates (dimensions <= 64).
DEFAULT_TOL = 1e-10


class MembershipError(ValueError):
    """The input is not (numerically) in the set an operation requires."""


@dataclass(frozen=True)
class SignatureMetric:
    """Signature (p, q): p positive directions followed by q negative ones."""

    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError("signature entries must be integers")
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError(
                f"invalid signature ({self.p}, {self.q}): need p >= 0, q >= 0, p + q >= 1"
            )

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def signs(self) -> np.ndarray:
        """Diagonal of the metric matrix: p ones, then q minus ones."""
        s = np.ones(self.n)
        s[self.p:] = -1.0
        return s

    @property
    def matrix(self) -> np.ndarray:
        """The metric matrix diag{I_p, -I_q}; its own inverse."""
        return np.diag(self.signs)


def make_metric(p: int, q: int) -> SignatureMetric:
    """Build the signature metric for p positive and q negative directions."""
    return SignatureMetric(int(p), int(q))


def as_matrix(m, rows: int, cols: int | None = None, name: str = "matrix") -> np.ndarray:
    """Coerce to a complex array of the given shape, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if cols is None:
        cols = rows
    if a.shape != (rows, cols):
        raise ValueError(f"{name} must have shape ({rows}, {cols}), got {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def as_vector(v, n: int, name: str = "vector") -> np.ndarray:
    a = np.asarray(v, dtype=complex).reshape(-1)
    if a.size != n:
        raise ValueError(f"{name} must have length {n}, got {a.size}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def _as_square(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


class BlockView(NamedTuple):
    """The four blocks of an n x n matrix split at row/column p."""

    m11: np.ndarray
    m12: np.ndarray
    m21: np.ndarray
    m22: np.ndarray


def split_blocks(M, metric: SignatureMetric) -> BlockView:
    """Split M into blocks (p x p, p x q, q x p, q x q) along the signature."""
    a = as_matrix(M, metric.n)
    p = metric.p
    return BlockView(a[:p, :p], a[:p, p:], a[p:, :p], a[p:, p:])


def join_blocks(view: BlockView) -> np.ndarray:
    """Reassemble a BlockView; exact inverse of split_blocks."""
    return np.block([[view.m11, view.m12], [view.m21, view.m22]])


def indefinite_form(z, w, metric: SignatureMetric) -> complex:
    """Indefinite inner product: conjugate z, weight by the signature, sum against w.

    Conjugate-linear in the first argument, so indefinite_form(w, z) is the
    complex conjugate of indefinite_form(z, w).
    """
    zv = as_vector(z, metric.n, "z")
    wv = as_vector(w, metric.n, "w")
    return complex(np.sum(np.conj(zv) * metric.signs * wv))


def quadratic_form(z, metric: SignatureMetric) -> float:
    """The real value of the indefinite form of z against itself."""
    return float(indefinite_form(z, z, metric).real)


def membership_residual(M, metric: SignatureMetric) -> float:
    """Relative Frobenius size of M* J M - J; zero exactly on members of U(p, q)."""
    a = as_matrix(M, metric.n)
    j = metric.signs
    defect = (a.conj().T * j) @ a
    defect[np.diag_indices(metric.n)] -= j
    return float(np.linalg.norm(defect) / (1.0 + np.linalg.norm(a) ** 2))


def is_pseudo_unitary(M, metric: SignatureMetric, tol: float = DEFAULT_TOL) -> bool:
    """True when the membership residual is at most tol."""
    return membership_residual(M, metric) <= tol


def hermitian_residual(M) -> float:
    """Relative Frobenius size of M - M*."""
    a = _as_square(M)
    return float(np.linalg.norm(a - a.conj().T) / (1.0 + np.linalg.norm(a)))


def is_hermitian(M, tol: float = DEFAULT_TOL) -> bool:
    """True when ||M - M*|| <= tol * (1 + ||M||) in the Frobenius norm."""
    return hermitian_residual(M) <= tol


def unitary_residual(M) -> float:
    """Relative Frobenius size of M* M - I."""
    a = _as_square(M)
    defect = a.conj().T @ a - np.eye(a.shape[0])
    return float(np.linalg.norm(defect) / (1.0 + np.linalg.norm(a) ** 2))


def block_identities_residual(M, metric: SignatureMetric) -> float:
    """Worst relative defect of the blockwise membership identities.

    Members satisfy, block by block:
        M11* M11 - M21* M21 = I_p
        M12* M12 - M22* M22 = -I_q
        M11* M12 - M21* M22 = 0
    These are the blocks of M* J M - J, so this residual never exceeds
    membership_residual (same normalization).
    """
    a = as_matrix(M, metric.n)
    m11, m12, m21, m22 = split_blocks(a, metric)
    r1 = np.linalg.norm(m11.conj().T @ m11 - m21.conj().T @ m21 - np.eye(metric.p))
    r2 = np.linalg.norm(m12.conj().T @ m12 - m22.conj().T @ m22 + np.eye(metric.q))
    r3 = np.linalg.norm(m11.conj().T @ m12 - m21.conj().T @ m22)
    return float(max(r1, r2, r3) / (1.0 + np.linalg.norm(a) ** 2))


def fast_inverse(M, metric: SignatureMetric, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Group inverse J M* J; valid only for members of U(p, q).

    Costs one conjugate transpose and two sign flips instead of a solve.
    """
    a = as_matrix(M, metric.n)
    r = membership_residual(a, metric)
    if r > tol:
        raise MembershipError(
            f"matrix is not in U({metric.p},{metric.q}): "
            f"membership residual {r:.3e} exceeds {tol:.3e}"
        )
    j = metric.signs
    return (j[:, None] * a.conj().T) * j[None, :]


def require_member(M, metric: SignatureMetric, tol: float = DEFAULT_TOL,
                   hermitian: bool = True) -> np.ndarray:
    """Validate membership (and optionally Hermitian symmetry), returning the array."""
    a = as_matrix(M, metric.n)
    if hermitian:
        hr = hermitian_residual(a)
        if hr > tol:
            raise MembershipError(
                f"matrix is not Hermitian: residual {hr:.3e} exceeds {tol:.3e}"
            )
    r = membership_residual(a, metric)
    if r > tol:
        raise MembershipError(
            f"matrix is not in U({metric.p},{metric.q}): "
            f"membership residual {r:.3e} exceeds {tol:.3e}"
        )
    return a


def check_compact_intersection(M, metric: SignatureMetric, tol: float = DEFAULT_TOL) -> bool:
    """True when M is within tol of both U(p, q) and the unitary group.

    Such matrices commute with the metric, hence are block diagonal: a unitary
    from the p block plus a unitary from the q block.
    """
    a = as_matrix(M, metric.n)
    if membership_residual(a, metric) > tol or unitary_residual(a) > tol:
        return False
    # Consequence of the two memberships: the off-diagonal blocks vanish.
    _, m12, m21, _ = split_blocks(a, metric)
    scale = np.linalg.norm(a)
    bound = 2.0 * tol * scale * (1.0 + scale ** 2) + 1e-12
    assert np.linalg.norm(m12) <= bound and np.linalg.norm(m21) <= bound
    return True
