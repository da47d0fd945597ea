"""Spectral structure of Hermitian members: ranks, generator vectors, reconstruction.

A Hermitian member M of U(p, q) is, up to a sign sigma, a finite sum
sigma * (sum_j lambda_j z_j z_j* - J) with orthonormal vectors z_j that are
also orthogonal in the indefinite form, and lambda_j = 2 / (alpha_j^2 - beta_j^2)
where alpha_j, beta_j are the norms of the positive and negative parts of z_j.
Every nonzero eigenvalue of sigma*M + J has magnitude at least 2, which makes
the numerical rank decisions below unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import (
    DEFAULT_TOL,
    MembershipError,
    SignatureMetric,
    require_member,
)

# Eigenvalues of sigma*M + J at or below this magnitude count as zero.
ZERO_EIGENVALUE_TOL = 1e-8
# Nonzero eigenvalues must have magnitude at least 2 minus this.
SPECTRAL_GAP_TOL = 1e-8
# Rank cutoff, placed between the zero cluster and the magnitude >= 2 cluster.
RANK_THRESHOLD = 1.0
# Eigenvalues closer than this (relative) form one degenerate cluster.
CLUSTER_RTOL = 1e-8
# A generator split with norm at or below this counts as exactly zero.
SPLIT_CUTOFF = 1e-8


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Sign and nonzero eigenpairs of sigma*M + J for a Hermitian member M.

    vectors holds one generator per row; the member is rebuilt as
    sigma * (sum_j lambda_j z_j z_j* - J).
    """

    metric: SignatureMetric
    sigma: int
    lambdas: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")
        lam = np.asarray(self.lambdas, dtype=float).reshape(-1)
        vec = np.asarray(self.vectors, dtype=complex)
        if vec.ndim != 2 or vec.shape != (lam.size, self.metric.n):
            raise ValueError(
                f"vectors must have shape ({lam.size}, {self.metric.n}), got {vec.shape}"
            )
        if not np.all(np.isfinite(lam)):
            raise ValueError("lambdas contain non-finite entries")
        if not np.all(np.isfinite(vec.real)) or not np.all(np.isfinite(vec.imag)):
            raise ValueError("vectors contain non-finite entries")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "vectors", vec)

    @property
    def k(self) -> int:
        return int(self.lambdas.size)

    @property
    def plus_parts(self) -> np.ndarray:
        return self.vectors[:, : self.metric.p]

    @property
    def minus_parts(self) -> np.ndarray:
        return self.vectors[:, self.metric.p:]

    @property
    def alphas(self) -> np.ndarray:
        return np.linalg.norm(self.plus_parts, axis=1)

    @property
    def betas(self) -> np.ndarray:
        return np.linalg.norm(self.minus_parts, axis=1)


def _symmetrized(h: np.ndarray) -> np.ndarray:
    return (h + h.conj().T) / 2.0


def _numeric_rank(h: np.ndarray, threshold: float) -> int:
    w = np.linalg.eigvalsh(_symmetrized(h))
    return int(np.count_nonzero(np.abs(w) > threshold))


def rank_pair(M, metric: SignatureMetric, threshold: float = RANK_THRESHOLD,
              tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Numerical ranks (rank(M - J), rank(M + J)) for a Hermitian member M.

    The spectral gap pushes every nonzero eigenvalue of M -+ J to magnitude
    at least 2, so any threshold inside (0, 2) gives the same answer; the
    default sits at 1. The two ranks always sum to at most n.
    """
    a = require_member(M, metric, tol)
    jm = metric.matrix
    return (_numeric_rank(a - jm, threshold), _numeric_rank(a + jm, threshold))


def _cluster_slices(values: np.ndarray) -> list[slice]:
    """Group consecutive sorted eigenvalues whose relative gap is below CLUSTER_RTOL."""
    slices = []
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or abs(values[i] - values[i - 1]) > CLUSTER_RTOL * max(
            1.0, abs(values[i - 1])
        ):
            slices.append(slice(start, i))
            start = i
    return slices


def _orthogonalize_clusters(lam: np.ndarray, vec: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Rotate each degenerate eigenvalue cluster so the indefinite form is diagonal on it.

    Within a cluster the eigenvectors returned by eigh are only determined up
    to a unitary mix; re-orthonormalize, then diagonalize the cluster's
    indefinite Gram matrix to pin the mix down.
    """
    out = vec.copy()
    for sl in _cluster_slices(lam):
        if sl.stop - sl.start < 2:
            continue
        zc = out[:, sl]
        qc, rc = np.linalg.qr(zc)
        d = np.diagonal(rc).copy()
        d[d == 0] = 1.0
        qc = qc * (d / np.abs(d))[None, :]
        gram = _symmetrized(qc.conj().T @ (signs[:, None] * qc))
        _, rot = np.linalg.eigh(gram)
        out[:, sl] = qc @ rot
    return out


def extract_generators(M, metric: SignatureMetric, tol: float = DEFAULT_TOL,
                       zero_tol: float = ZERO_EIGENVALUE_TOL,
                       gap_tol: float = SPECTRAL_GAP_TOL) -> GeneratorSet:
    """Recover the generator data of a Hermitian member from sigma*M + J.

    The sign sigma is chosen so that rank(sigma*M + J) <= rank(sigma*M - J),
    with sigma = +1 on ties. Generators are sorted by descending lambda, ties
    broken by the entry magnitudes of the vectors, so output is reproducible.
    """
    a = require_member(M, metric, tol)
    jm = metric.matrix
    r_plus = _numeric_rank(a + jm, RANK_THRESHOLD)
    r_minus = _numeric_rank(a - jm, RANK_THRESHOLD)
    sigma = 1 if r_plus <= r_minus else -1

    h = _symmetrized(sigma * a + jm)
    w, v = np.linalg.eigh(h)
    aw = np.abs(w)
    bad = (aw > zero_tol) & (aw < 2.0 - gap_tol)
    if np.any(bad):
        val = w[bad][0]
        raise MembershipError(
            f"eigenvalue {val:.6g} of the shifted matrix violates the spectral gap "
            f"(forbidden band ({zero_tol:.1e}, {2.0 - gap_tol})); "
            "input is not a Hermitian member within tolerance"
        )
    keep = np.flatnonzero(aw > RANK_THRESHOLD)
    if keep.size > metric.n // 2:
        raise MembershipError(
            f"rank structure violated: {keep.size} nonzero eigenvalues after sign "
            f"normalization, at most {metric.n // 2} allowed"
        )
    lam = w[keep]
    vec = _orthogonalize_clusters(lam, v[:, keep], metric.signs)

    order = sorted(
        range(lam.size),
        key=lambda i: (-lam[i], tuple(np.abs(vec[:, i]).tolist())),
    )
    lam = lam[order]
    vec = vec[:, order]
    return GeneratorSet(metric=metric, sigma=sigma, lambdas=lam.copy(), vectors=vec.T.copy())


def validate_generators(gens: GeneratorSet, tol: float = DEFAULT_TOL) -> list[str]:
    """Check the generator-set invariants; returns violation messages (empty when valid).

    Each message starts with the failed condition: orthonormality,
    J-orthogonality, norm-sum, alpha=beta degeneracy, or lambda mismatch.
    """
    problems: list[str] = []
    k = gens.k
    if k == 0:
        return problems
    v = gens.vectors
    lam = gens.lambdas
    signs = gens.metric.signs

    gram = v.conj() @ v.T
    dev = float(np.max(np.abs(gram - np.eye(k))))
    if dev > tol:
        problems.append(f"orthonormality: largest Gram deviation {dev:.3e}")

    jgram = v.conj() @ (signs[None, :] * v).T
    cross = 0.0
    if k > 1:
        off = jgram - np.diag(np.diagonal(jgram))
        cross = float(np.max(np.abs(off)))
        # Derived split conditions: positive and negative parts pairwise orthogonal.
        pp = gens.plus_parts
        mm = gens.minus_parts
        pgram = pp.conj() @ pp.T - np.diag(np.linalg.norm(pp, axis=1) ** 2)
        mgram = mm.conj() @ mm.T - np.diag(np.linalg.norm(mm, axis=1) ** 2)
        cross = max(cross, float(np.max(np.abs(pgram))), float(np.max(np.abs(mgram))))
    if cross > tol:
        problems.append(f"J-orthogonality: largest cross term {cross:.3e}")

    al2 = gens.alphas ** 2
    be2 = gens.betas ** 2
    ndev = float(np.max(np.abs(al2 + be2 - 1.0)))
    if ndev > tol:
        problems.append(f"norm-sum: largest deviation of alpha^2 + beta^2 from 1 is {ndev:.3e}")

    denom = al2 - be2
    degenerate = np.abs(denom) <= tol
    if np.any(degenerate):
        worst = float(np.min(np.abs(denom)))
        problems.append(
            f"alpha=beta degeneracy: smallest |alpha^2 - beta^2| is {worst:.3e}"
        )
    ok = ~degenerate
    if np.any(ok):
        expected = 2.0 / denom[ok]
        ldev = float(np.max(np.abs(lam[ok] - expected) / np.maximum(1.0, np.abs(expected))))
        if ldev > tol:
            problems.append(f"lambda mismatch: largest relative deviation {ldev:.3e}")
    return problems


def construct_from_generators(gens: GeneratorSet, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Build the Hermitian member sigma * (sum_j lambda_j z_j z_j* - J)."""
    problems = validate_generators(gens, tol)
    if problems:
        raise ValueError("invalid generator set: " + "; ".join(problems))
    metric = gens.metric
    acc = -np.diag(metric.signs).astype(complex)
    if gens.k:
        v = gens.vectors
        acc = acc + v.T @ (gens.lambdas[:, None] * v.conj())
    return gens.sigma * acc


def eigenvalue_bound_check(M, metric: SignatureMetric,
                           zero_tol: float = ZERO_EIGENVALUE_TOL,
                           gap_tol: float = SPECTRAL_GAP_TOL) -> bool:
    """True iff every eigenvalue of M + J is near zero or has magnitude >= 2 - gap_tol.

    Hermitian members have no spectrum of M + J inside the open band
    (0, 2); callers are expected to have checked membership already.
    """
    from .metric import as_matrix

    a = as_matrix(M, metric.n)
    w = np.linalg.eigvalsh(_symmetrized(a + metric.matrix))
    aw = np.abs(w)
    return bool(np.all((aw <= zero_tol) | (aw >= 2.0 - gap_tol)))
