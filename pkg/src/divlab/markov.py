"""Finite Markov chains as column-stochastic channels.

The matrix convention follows the channel convention: outputs are W @ p, so
every column of W sums to one.  Structural predicates (irreducible, aperiodic,
scrambling, indecomposable) are decided by boolean matrix powering and
connected components at desk scale; stationary distributions come from the
eigenvalue-1 eigenspace with a non-negative least-squares fallback when that
eigenspace is degenerate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

import numpy as np
import scipy.optimize
import scipy.sparse
import scipy.sparse.csgraph

from .divergence import SUPPORT_EPSILON, as_prob_vec

__all__ = [
    "as_channel",
    "bsc",
    "noisy_typewriter",
    "stationary_distribution",
    "structure",
    "iterate",
    "ChainStructure",
]

_COLUMN_SUM_TOL = 1e-10


def as_channel(W, column_sum_tol: float = _COLUMN_SUM_TOL) -> np.ndarray:
    """Validate a column-stochastic matrix; output is W @ p."""
    W = np.asarray(W, dtype=float).copy()
    if W.ndim != 2 or W.shape[0] < 1 or W.shape[1] < 1:
        raise ValueError("channel must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(W)):
        raise ValueError("channel entries must be finite")
    if np.any(W < -1e-14):
        raise ValueError("channel entries must be non-negative")
    W[W < 0.0] = 0.0
    colsums = W.sum(axis=0)
    if np.any(np.abs(colsums - 1.0) > column_sum_tol):
        raise ValueError(f"columns must sum to one; sums are {colsums}")
    return W


def bsc(p: float) -> np.ndarray:
    """Binary symmetric channel with flip probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("flip probability must lie in [0, 1]")
    return np.array([[1.0 - p, p], [p, 1.0 - p]])


def noisy_typewriter() -> np.ndarray:
    """Four-symbol chain mapping each input to itself or its successor."""
    return 0.5 * np.array(
        [
            [1.0, 1.0, 0.0, 0.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, 1.0],
            [1.0, 0.0, 0.0, 1.0],
        ]
    )


def _require_square(W: np.ndarray) -> None:
    if W.shape[0] != W.shape[1]:
        raise ValueError("operation requires a square channel")


def stationary_distribution(W, unique_gap: float = 1e-8) -> tuple[np.ndarray, bool]:
    """A distribution with W pi = pi, and whether it is unique.

    Uniqueness is decided by the dimension of the eigenvalue-1 eigenspace
    (eigenvalues within ``unique_gap`` of 1 are counted as 1).
    """
    W = as_channel(W)
    _require_square(W)
    n = W.shape[0]
    eigvals, eigvecs = np.linalg.eig(W)
    close = np.abs(eigvals - 1.0) < unique_gap
    if not np.any(close):
        raise ValueError("no eigenvalue-1 eigenvector found")
    unique = int(np.sum(close)) == 1
    idx = int(np.argmin(np.abs(eigvals - 1.0)))
    v = np.real(eigvecs[:, idx])
    s = v.sum()
    if abs(s) > 1e-12:
        v = v / s
    if np.any(v < -1e-9) or abs(s) <= 1e-12:
        # degenerate eigenspace: find a non-negative stationary vector directly
        A = np.vstack([W - np.eye(n), np.ones((1, n))])
        b = np.zeros(n + 1)
        b[-1] = 1.0
        v, _ = scipy.optimize.nnls(A, b)
    v = np.maximum(v, 0.0)
    v = v / v.sum()
    if float(np.abs(W @ v - v).sum()) > 1e-9:
        raise ValueError("stationary solve failed to converge")
    return v, unique


@dataclass(frozen=True)
class ChainStructure:
    scrambling: bool
    irreducible: bool
    aperiodic: bool
    indecomposable: bool
    stationary: np.ndarray | None
    stationary_unique: bool
    positivity_index: int | None


def _boolean_powers(adj: np.ndarray, n_cap: int) -> list[np.ndarray]:
    """adj^1 .. adj^n_cap over the boolean semiring."""
    powers = [adj.copy()]
    current = adj.copy()
    for _ in range(n_cap - 1):
        current = (current.astype(np.uint8) @ adj.astype(np.uint8)) > 0
        powers.append(current)
    return powers


def structure(W, n_cap: int | None = None) -> ChainStructure:
    """Structural report: scrambling, irreducibility, aperiodicity,
    indecomposability, stationary distribution, and positivity index."""
    W = as_channel(W)
    _require_square(W)
    n = W.shape[0]
    if n_cap is None:
        n_cap = max(n * n, 64)
    if n_cap < n * n:
        raise ValueError("n_cap must be at least |X|^2")

    pos = W > SUPPORT_EPSILON
    # scrambling: every pair of columns shares a positive output
    overlap = pos.astype(np.uint8).T @ pos.astype(np.uint8)
    scrambling = bool(np.all(overlap > 0))

    powers = _boolean_powers(pos, n_cap)
    reach = np.zeros_like(pos)
    for Bk in powers:
        reach |= Bk
    irreducible = bool(np.all(reach))

    periods = []
    for x in range(n):
        returns = [t + 1 for t, Bk in enumerate(powers) if Bk[x, x]]
        if not returns:
            periods.append(0)
            continue
        d = 0
        for t in returns:
            d = gcd(d, t)
        periods.append(d)
    aperiodic = all(d == 1 for d in periods)

    positivity_index = None
    for t, Bk in enumerate(powers):
        if np.all(Bk):
            positivity_index = t + 1
            break

    try:
        pi, unique = stationary_distribution(W)
    except ValueError:
        pi, unique = None, False

    indecomposable = False
    if pi is not None:
        joint = W * pi[np.newaxis, :]  # joint[y, x] = W(y|x) pi(x)
        x_keep = np.flatnonzero(pi > SUPPORT_EPSILON)
        y_keep = np.flatnonzero(joint.sum(axis=1) > SUPPORT_EPSILON)
        edges = joint[np.ix_(y_keep, x_keep)] > SUPPORT_EPSILON
        ny, nx = edges.shape
        bip = np.zeros((nx + ny, nx + ny), dtype=bool)
        bip[:nx, nx:] = edges.T
        bip[nx:, :nx] = edges
        n_comp, _ = scipy.sparse.csgraph.connected_components(
            scipy.sparse.csr_matrix(bip), directed=False
        )
        indecomposable = n_comp == 1

    return ChainStructure(
        scrambling=scrambling,
        irreducible=irreducible,
        aperiodic=aperiodic,
        indecomposable=indecomposable,
        stationary=pi,
        stationary_unique=unique,
        positivity_index=positivity_index,
    )


def iterate(W, p, n: int) -> np.ndarray:
    """Apply the channel n times; renormalizes (with a warning) on drift."""
    W = as_channel(W)
    p = as_prob_vec(p)
    if W.shape[1] != p.shape[0]:
        raise ValueError("dimension mismatch between channel and input")
    if n < 0:
        raise ValueError("n must be non-negative")
    out = p.copy()
    for _ in range(n):
        out = W @ out
    drift = abs(out.sum() - 1.0)
    if drift > 1e-9:
        warnings.warn(f"iterate drifted off the simplex by {drift:g}; renormalized")
        out = np.maximum(out, 0.0)
        out /= out.sum()
    return out
