"""2x2 block canonical form for Hermitian members at signature (p, p).

Every Hermitian member M of U(p, p) is conjugate, by a unitary of the form
U + V (one factor per signature block), to a direct sum of p canonical 2x2
pieces, each supported on one positive and one negative direction. A piece is
either a signed hyperbolic block

    sign * [[cosh t, sinh t], [sinh t, cosh t]],   t >= 0,

or a signed copy of diag(1, -1), called an iota block here. The multiset of
pieces, normalized for the global sign freedom, is a complete equivalence
invariant under M -> -M and M -> Q* M Q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import (
    DEFAULT_TOL,
    MembershipError,
    SignatureMetric,
    as_matrix,
    make_metric,
    require_member,
    split_blocks,
    unitary_residual,
)
from .spectral import SPLIT_CUTOFF, extract_generators

HYPERBOLIC = "hyperbolic"
IOTA = "iota"

# Absolute tolerance for comparing hyperbolic parameters up to t = 20;
# beyond that the comparison is relative.
T_COMPARE_TOL = 1e-8


@dataclass(frozen=True)
class HyperbolicBlock:
    """One canonical 2x2 piece: a signed hyperbolic block or a signed iota block."""

    kind: str
    t: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in (HYPERBOLIC, IOTA):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("block sign must be +1 or -1")
        if not np.isfinite(self.t):
            raise ValueError("block parameter must be finite")
        if self.kind == IOTA and self.t != 0.0:
            raise ValueError("iota blocks carry no hyperbolic parameter")
        if self.t < 0:
            raise ValueError("hyperbolic parameter must be nonnegative")

    def matrix(self) -> np.ndarray:
        if self.kind == IOTA:
            return self.sign * np.diag([1.0 + 0j, -1.0 + 0j])
        c, s = np.cosh(self.t), np.sinh(self.t)
        return self.sign * np.array([[c, s], [s, c]], dtype=complex)

    def flipped(self) -> "HyperbolicBlock":
        return HyperbolicBlock(self.kind, self.t, -self.sign)


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """Canonical data for a Hermitian member of U(p, p): Q M Q* = sum of 2x2 pieces.

    q is block diagonal (one unitary per signature block); piece j occupies
    rows and columns (j, p + j).
    """

    metric: SignatureMetric
    q: np.ndarray
    blocks: tuple

    def matrix(self) -> np.ndarray:
        """Reassemble the member this decomposition describes."""
        return assemble_blocks(self.blocks, self.q, self.metric)


@dataclass(frozen=True)
class CanonicalInvariant:
    """Sorted, sign-normalized multiset of (kind, t, sign) block triples."""

    triples: tuple

    def matches(self, other: "CanonicalInvariant", t_tol: float = T_COMPARE_TOL) -> bool:
        """Equality of invariants, comparing hyperbolic parameters within t_tol."""
        if len(self.triples) != len(other.triples):
            return False
        for (k1, t1, s1), (k2, t2, s2) in zip(self.triples, other.triples):
            if k1 != k2 or s1 != s2:
                return False
            thresh = t_tol * max(1.0, max(t1, t2) / 20.0)
            if abs(t1 - t2) > thresh:
                return False
        return True


def _require_block_unitary(Q: np.ndarray, metric: SignatureMetric, tol: float) -> None:
    res = unitary_residual(Q)
    if res > max(tol, 1e-10):
        raise ValueError(f"conjugating matrix is not unitary: residual {res:.3e}")
    _, q12, q21, _ = split_blocks(Q, metric)
    scale = max(1.0, float(np.linalg.norm(Q)))
    bound = max(tol, 1e-10) * scale
    if np.linalg.norm(q12) > bound or np.linalg.norm(q21) > bound:
        raise ValueError("conjugating matrix must be block diagonal for the signature")


def assemble_blocks(blocks, unitary=None, metric: SignatureMetric | None = None,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """Place 2x2 pieces at rows/columns (j, p + j), then conjugate by the unitary.

    With unitary Q, returns Q* B Q where B is the block-form matrix, so the
    result decomposes back to the given pieces with the same Q.
    """
    blocks = tuple(blocks)
    p = len(blocks)
    if metric is None:
        if p == 0:
            raise ValueError("need at least one block or an explicit metric")
        metric = make_metric(p, p)
    if metric.p != metric.q:
        raise ValueError("block assembly needs a (p, p) signature")
    if metric.p != p:
        raise ValueError(f"expected {metric.p} blocks for this metric, got {p}")
    n = metric.n
    out = np.zeros((n, n), dtype=complex)
    for j, b in enumerate(blocks):
        idx = (j, p + j)
        out[np.ix_(idx, idx)] = b.matrix()
    if unitary is not None:
        Q = as_matrix(unitary, n, name="unitary")
        _require_block_unitary(Q, metric, tol)
        out = Q.conj().T @ out @ Q
    return out


def classify_block(block, margin: float = 0.5) -> HyperbolicBlock:
    """Match a numerical 2x2 piece against the canonical vocabulary.

    Canonical entries are +-cosh(t) (magnitude at least 1) or +-1, so a
    margin of 0.5 cleanly separates the families.
    """
    b = as_matrix(block, 2, name="block")
    a = float(b[0, 0].real)
    d = float(b[1, 1].real)
    s = abs(b[0, 1])
    if s < margin:
        if abs(a - 1.0) < margin and abs(d + 1.0) < margin:
            return HyperbolicBlock(IOTA, 0.0, 1)
        if abs(a + 1.0) < margin and abs(d - 1.0) < margin:
            return HyperbolicBlock(IOTA, 0.0, -1)
    if abs(a - d) < margin and min(abs(a), abs(d)) > 1.0 - margin and a * d > 0:
        sign = 1 if a > 0 else -1
        c = (abs(a) + abs(d)) / 2.0
        t = float(np.log(max(c, 1.0) + s))
        return HyperbolicBlock(HYPERBOLIC, t, sign)
    raise MembershipError(f"2x2 piece does not match any canonical block: {b!r}")


def _standard_basis_map(cols: dict[int, np.ndarray], dim: int) -> np.ndarray:
    """Unitary sending each prescribed column to its standard basis slot.

    Prescribed columns are polished to exact orthonormality (they arrive
    orthonormal up to rounding); free slots are filled with an orthonormal
    completion.
    """
    if dim == 0:
        return np.zeros((0, 0), dtype=complex)
    slots = sorted(cols)
    m = len(slots)
    basis = np.eye(dim, dtype=complex)
    if m:
        c = np.column_stack([cols[s] for s in slots])
        qf, r = np.linalg.qr(c, mode="complete")
        d = np.diagonal(r)[:m].copy()
        d[d == 0] = 1.0
        qf[:, :m] = qf[:, :m] * (d / np.abs(d))[None, :]
        free = [j for j in range(dim) if j not in cols]
        basis = np.empty((dim, dim), dtype=complex)
        for i, s in enumerate(slots):
            basis[:, s] = qf[:, i]
        for i, s in enumerate(free):
            basis[:, s] = qf[:, m + i]
    return basis.conj().T


def block_decompose(M, metric: SignatureMetric, tol: float = DEFAULT_TOL) -> BlockDecomposition:
    """Decompose a Hermitian member of U(p, p) into canonical 2x2 pieces.

    Generators occupy the leading slots (sorted by descending eigenvalue);
    remaining slots hold the leftover signed iota pieces. The result is
    verified by reassembly before it is returned.
    """
    if metric.p != metric.q:
        raise ValueError("block decomposition is defined for signature (p, p)")
    p = metric.p
    a = require_member(M, metric, tol)
    gens = extract_generators(a, metric, tol)
    # extract_generators caps k at n // 2 = p
    plus_cols: dict[int, np.ndarray] = {}
    minus_cols: dict[int, np.ndarray] = {}
    for j in range(gens.k):
        zp = gens.vectors[j, :p]
        zm = gens.vectors[j, p:]
        al = np.linalg.norm(zp)
        be = np.linalg.norm(zm)
        if al > SPLIT_CUTOFF:
            plus_cols[j] = zp / al
        if be > SPLIT_CUTOFF:
            minus_cols[j] = zm / be
    u = _standard_basis_map(plus_cols, p)
    v = _standard_basis_map(minus_cols, p)
    q = np.zeros((2 * p, 2 * p), dtype=complex)
    q[:p, :p] = u
    q[p:, p:] = v
    b = q @ a @ q.conj().T
    blocks = []
    for j in range(p):
        idx = (j, p + j)
        blocks.append(classify_block(b[np.ix_(idx, idx)]))
    rebuilt = assemble_blocks(blocks, None, metric)
    err = float(np.linalg.norm(b - rebuilt))
    if err > 1000.0 * tol * max(1.0, float(np.linalg.norm(a))):
        raise MembershipError(f"block reduction failed: residual {err:.3e}")
    return BlockDecomposition(metric=metric, q=q, blocks=tuple(blocks))


def _merge_iota_pairs(blocks) -> list[HyperbolicBlock]:
    """Canonicalize opposite-sign iota pairs into a (t = 0, +-1) hyperbolic pair.

    The pairing between positive and negative directions inside zero-coupling
    pieces is not rigid: conjugation can permute the two sides independently,
    which turns an iota(+1) and an iota(-1) into a t = 0 hyperbolic block and
    its negative. Decomposition always emits iota pieces of a single sign, so
    this only changes invariants built from hand-made block lists.
    """
    plus = sum(1 for b in blocks if b.kind == IOTA and b.sign == 1)
    minus = sum(1 for b in blocks if b.kind == IOTA and b.sign == -1)
    m = min(plus, minus)
    if m == 0:
        return list(blocks)
    out = [b for b in blocks if b.kind != IOTA]
    out.extend([HyperbolicBlock(IOTA, 0.0, 1)] * (plus - m))
    out.extend([HyperbolicBlock(IOTA, 0.0, -1)] * (minus - m))
    out.extend([HyperbolicBlock(HYPERBOLIC, 0.0, 1)] * m)
    out.extend([HyperbolicBlock(HYPERBOLIC, 0.0, -1)] * m)
    return out


def _sort_key(b: HyperbolicBlock) -> tuple:
    return (b.kind, -b.sign, b.t)


def _flip_is_smaller(base_key, flip_key, t_tol: float = T_COMPARE_TOL) -> bool:
    # lexicographic walk, but parameter ties within t_tol must not decide the
    # sign: rounding noise in t would otherwise flip it nondeterministically
    for (k1, s1, t1), (k2, s2, t2) in zip(base_key, flip_key):
        if k1 != k2:
            return k2 < k1
        if s1 != s2:
            return s2 < s1
        thresh = t_tol * max(1.0, max(t1, t2) / 20.0)
        if abs(t1 - t2) > thresh:
            return t2 < t1
    return False


def invariant_from_blocks(blocks) -> CanonicalInvariant:
    """Canonical invariant of a block list: merge iota pairs, fix the global sign, sort.

    The global sign is chosen by comparing the sorted list against the sorted
    list of the flipped blocks and keeping the smaller one, where parameters
    closer than the comparison tolerance count as equal.
    """
    base = _merge_iota_pairs(blocks)
    base_key = sorted(_sort_key(b) for b in base)
    flip_key = sorted(_sort_key(b.flipped()) for b in base)
    chosen = flip_key if _flip_is_smaller(base_key, flip_key) else base_key
    triples = tuple((kind, t, -negsign) for (kind, negsign, t) in chosen)
    return CanonicalInvariant(triples=triples)


def canonical_invariant(M, metric: SignatureMetric, tol: float = DEFAULT_TOL) -> CanonicalInvariant:
    """Equivalence invariant of a Hermitian member of U(p, p)."""
    return invariant_from_blocks(block_decompose(M, metric, tol).blocks)


def are_equivalent(M1, M2, metric: SignatureMetric, tol: float = DEFAULT_TOL,
                   t_tol: float = T_COMPARE_TOL) -> bool:
    """True when the two members agree up to global sign and block-unitary conjugation."""
    inv1 = canonical_invariant(M1, metric, tol)
    inv2 = canonical_invariant(M2, metric, tol)
    return inv1.matches(inv2, t_tol)


def is_special(M, tol: float = DEFAULT_TOL) -> bool:
    """True when det M is within tol of 1 (members always have |det| = 1)."""
    from .metric import _as_square

    a = _as_square(M)
    return bool(abs(np.linalg.det(a) - 1.0) <= tol)
