"""Shared oracle helpers for the test suite.

These build structured inputs (hyperbolic blocks, valid generator families,
block unitaries) directly from their defining formulas, independently of the
library code paths they are used to check.
"""

import numpy as np

from pseudounitary import GeneratorSet, SignatureMetric


def hyperbolic(t: float) -> np.ndarray:
    """The 2x2 hyperbolic member [[cosh t, sinh t], [sinh t, cosh t]]."""
    c, s = np.cosh(t), np.sinh(t)
    return np.array([[c, s], [s, c]], dtype=complex)


def local_haar(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar unitary built here (QR with phase fix), independent of the library."""
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))[None, :]


def block_unitary(metric: SignatureMetric, rng: np.random.Generator) -> np.ndarray:
    """A random unitary of the block-diagonal shape U + V for the signature."""
    out = np.zeros((metric.n, metric.n), dtype=complex)
    out[: metric.p, : metric.p] = local_haar(rng, metric.p)
    out[metric.p:, metric.p:] = local_haar(rng, metric.q)
    return out


def random_generator_set(metric: SignatureMetric, k: int, rng: np.random.Generator,
                         sigma: int = 1) -> GeneratorSet:
    """Build a valid generator family directly from the defining structure.

    Vectors are alpha_j * (column j of a Haar U) stacked over beta_j *
    (column j of a Haar V); orthonormality and metric orthogonality hold by
    construction, and lambda_j = 2 / (alpha_j^2 - beta_j^2). Splits are kept
    away from the alpha = beta degeneracy.
    """
    p, q = metric.p, metric.q
    assert k <= min(p, q), "this construction uses one column per side"
    u = local_haar(rng, p)
    v = local_haar(rng, q)
    lambdas = np.empty(k)
    vectors = np.empty((k, metric.n), dtype=complex)
    for j in range(k):
        base = rng.uniform(0.05, 0.45)
        al2 = base if rng.random() < 0.5 else 1.0 - base
        al, be = np.sqrt(al2), np.sqrt(1.0 - al2)
        vectors[j, :p] = al * u[:, j]
        vectors[j, p:] = be * v[:, j]
        lambdas[j] = 2.0 / (al2 - (1.0 - al2))
    return GeneratorSet(metric=metric, sigma=sigma, lambdas=lambdas, vectors=vectors)
