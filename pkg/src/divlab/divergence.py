"""Classical f-divergences over finite alphabets with exact support conventions.

The conventions are 0*f(0/0) = 0 and 0*f(a/0) = a*f'(inf) for a > 0, with
f(0) read as the limit f(0+).  Vectors are plain numpy arrays; entries below
``SUPPORT_EPSILON`` count as exact zeros so that noisy file input gets the
same treatment as analytic zeros.
"""

from __future__ import annotations

import math

import numpy as np

from .generators import Generator

__all__ = [
    "SUPPORT_EPSILON",
    "as_weight_vec",
    "as_prob_vec",
    "f_divergence",
    "total_variation",
    "chi_squared",
    "integral_representation",
]

SUPPORT_EPSILON = 1e-12


def as_weight_vec(v) -> np.ndarray:
    """Validate a non-negative vector; sub-epsilon entries become exact zeros."""
    arr = np.asarray(v, dtype=float).copy()
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("weight vector must be a non-empty 1-D array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weight vector entries must be finite")
    if np.any(arr < -SUPPORT_EPSILON):
        raise ValueError("weight vector entries must be non-negative")
    arr[arr < SUPPORT_EPSILON] = 0.0
    return arr


def as_prob_vec(v) -> np.ndarray:
    arr = as_weight_vec(v)
    if abs(arr.sum() - 1.0) > 1e-10:
        raise ValueError(f"probability vector must sum to one, got {arr.sum()!r}")
    return arr


def _check_same_alphabet(p: np.ndarray, q: np.ndarray) -> None:
    if p.shape != q.shape:
        raise ValueError(f"alphabet mismatch: {p.shape} vs {q.shape}")


def f_divergence(g: Generator, p, q) -> float:
    """sum_x q(x) f(p(x)/q(x)) under the boundary conventions; may be +inf."""
    p = as_weight_vec(p)
    q = as_weight_vec(q)
    _check_same_alphabet(p, q)
    pos = q > 0.0
    total = 0.0
    # mass of p escaping supp(q) contributes p(x) * f'(inf)
    escaped = float(p[~pos].sum())
    if escaped > 0.0:
        if math.isinf(g.fprime_at_inf):
            return math.inf
        total += escaped * g.fprime_at_inf
    qs = q[pos]
    ps = p[pos]
    inner = ps > 0.0
    if np.any(~inner):
        # q(x) > 0, p(x) = 0 contributes q(x) * f(0+)
        mass = float(qs[~inner].sum())
        if mass > 0.0:
            if math.isinf(g.f_at_zero):
                return math.inf
            total += mass * g.f_at_zero
    if np.any(inner):
        total += float(np.dot(qs[inner], g.f(ps[inner] / qs[inner])))
    return total


def total_variation(p, q) -> float:
    """Half the l1 distance."""
    p = as_weight_vec(p)
    q = as_weight_vec(q)
    _check_same_alphabet(p, q)
    return 0.5 * float(np.abs(p - q).sum())


def chi_squared(p, q) -> float:
    """sum over supp(q) of (p-q)^2/q, +inf when p is not dominated by q."""
    p = as_weight_vec(p)
    q = as_weight_vec(q)
    _check_same_alphabet(p, q)
    pos = q > 0.0
    if float(p[~pos].sum()) > 0.0:
        return math.inf
    d = p[pos] - q[pos]
    return float(np.sum(d * d / q[pos]))


def integral_representation(g: Generator, p, q, quad_nodes: int = 128) -> float:
    """Gauss-Legendre evaluation of the second-order remainder form of D_f.

    Valid when p << q and either the vectors have equal sums or f'(1) = 0;
    the integrand is (1-t) * sum_i f''(1 + t(p_i/q_i - 1)) (p_i-q_i)^2 / q_i.
    """
    if quad_nodes < 1:
        raise ValueError("quad_nodes must be positive")
    p = as_weight_vec(p)
    q = as_weight_vec(q)
    _check_same_alphabet(p, q)
    pos = q > 0.0
    if float(p[~pos].sum()) > 0.0:
        raise ValueError("integral representation requires p << q")
    fprime_at_one = float(g.f1(1.0))
    if abs(p.sum() - q.sum()) > 1e-9 and abs(fprime_at_one) > 1e-12:
        raise ValueError("requires equal sums or f'(1) = 0")
    ps, qs = p[pos], q[pos]
    if np.any(ps == 0.0) and not g.f2_at_zero_finite:
        raise ValueError(
            "non-integrable endpoint: p touches zero and f'' is singular at 0"
        )
    ratios = ps / qs
    nodes, weights = np.polynomial.legendre.leggauss(quad_nodes)
    t = 0.5 * (nodes + 1.0)  # map [-1, 1] -> [0, 1]
    w = 0.5 * weights
    args = 1.0 + np.outer(t, ratios - 1.0)
    args = np.maximum(args, 1e-300)
    vals = g.f2(args) @ ((ps - qs) ** 2 / qs)
    return float(np.dot(w * (1.0 - t), vals))
