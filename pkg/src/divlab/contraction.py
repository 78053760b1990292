"""Input-dependent contraction coefficients and Markov-chain rate machinery.

eta_chi2 is exact (squared second singular value of the normalized joint
matrix); eta_f is estimated from below by sampling the simplex (exhaustive
1-D grid on binary alphabets) and bounded from above by the nonlinear
kappa-based bound and, for generators with (f(t)-f(0))/t concave, the linear
bound.  All sampling is driven by a root seed and is deterministic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .chi2bounds import kappa_bounds, q_min_on_support
from .divergence import as_prob_vec, chi_squared, f_divergence, total_variation
from .generators import Generator
from .markov import as_channel, iterate, stationary_distribution, structure

__all__ = [
    "SampleBudget",
    "eta_chi2",
    "eta_f_estimate",
    "eta_f_upper_bounds",
    "contraction_report",
    "ContractionReport",
    "contraction_rate_profile",
    "RatePoint",
    "convergence_bound",
    "mixing_time_bounds",
    "MixingTimeReport",
]

BINARY_GRID_N = 4096


@dataclass(frozen=True)
class SampleBudget:
    """Sampling configuration for contraction estimates."""

    n_samples: int = 400
    seed: int = 0
    refine_steps: int = 200
    blend_weights: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

    def __post_init__(self):
        if self.n_samples < 100:
            raise ValueError("budget requires at least 100 samples")


def eta_chi2(W, q) -> float:
    """Exact input-dependent chi-squared contraction coefficient.

    Builds the joint distribution of input q and output Wq, normalizes by the
    square-rooted marginals, and returns the squared second singular value.
    """
    W = as_channel(W)
    q = as_prob_vec(q)
    if W.shape[1] != q.shape[0]:
        raise ValueError("dimension mismatch between channel and reference")
    if int(np.sum(q > 0.0)) <= 1:
        warnings.warn("degenerate reference (all mass on one symbol); eta = 0")
        return 0.0
    out = W @ q
    x_keep = np.flatnonzero(q > 0.0)
    y_keep = np.flatnonzero(out > 0.0)
    joint = W[np.ix_(y_keep, x_keep)] * q[x_keep][np.newaxis, :]
    norm = np.sqrt(np.outer(out[y_keep], q[x_keep]))
    s = np.linalg.svd(joint / norm, compute_uv=False)
    if s.size < 2:
        return 0.0
    return float(min(max(s[1] ** 2, 0.0), 1.0))


def _candidate_inputs(n: int, q: np.ndarray, budget: SampleBudget) -> np.ndarray:
    """Deterministic candidate cloud: exhaustive grid in 1-D, otherwise
    Dirichlet samples plus vertices blended toward the reference."""
    if n == 2:
        a = np.linspace(0.0, 1.0, BINARY_GRID_N)
        return np.column_stack([a, 1.0 - a])
    rng = np.random.default_rng(budget.seed)
    cloud = [rng.dirichlet(np.ones(n), size=budget.n_samples)]
    vertices = np.eye(n)
    cloud.append(vertices)
    for w in budget.blend_weights:
        cloud.append((1.0 - w) * vertices + w * q[np.newaxis, :])
    return np.vstack(cloud)


# absolute rounding-noise floor for divergence sums of unit-mass vectors:
# f evaluations near t = 1 carry ~1e-16 absolute error, so numerators below
# this level are indistinguishable from zero and counted as zero to keep the
# estimate a genuine lower bound
NUMERATOR_NOISE_FLOOR = 1e-13


def _ratio(g: Generator, W: np.ndarray, q: np.ndarray, p: np.ndarray) -> float:
    denom = f_divergence(g, p, q)
    if not (1e-12 < denom < math.inf):
        return -math.inf
    num = f_divergence(g, W @ p, W @ q)
    if math.isinf(num):
        return -math.inf
    if num < NUMERATOR_NOISE_FLOOR:
        num = 0.0
    return num / denom


def eta_f_estimate(
    W, q, g: Generator, budget: SampleBudget | None = None
) -> tuple[float, np.ndarray | None]:
    """Certified lower estimate of eta_f(W, q) with its witness input.

    Samples the simplex, excludes infeasible inputs (divergence zero or
    infinite), and refines the best candidate by coordinate hill-climbing.
    """
    W = as_channel(W)
    q = as_prob_vec(q)
    if budget is None:
        budget = SampleBudget()
    n = q.shape[0]
    best = -math.inf
    witness = None
    for p in _candidate_inputs(n, q, budget):
        r = _ratio(g, W, q, p)
        if r > best:
            best = r
            witness = p
    if witness is None or best == -math.inf:
        warnings.warn("no feasible input found; estimate 0")
        return 0.0, None
    rng = np.random.default_rng(budget.seed + 1)
    scale = 0.25
    current = witness.copy()
    for step in range(budget.refine_steps):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        move = scale * rng.random() * min(1.0, current[i])
        prop = current.copy()
        prop[i] -= move
        prop[j] += move
        prop = np.maximum(prop, 0.0)
        prop /= prop.sum()
        r = _ratio(g, W, q, prop)
        if r > best:
            best, current = r, prop
        scale *= 0.98
    return max(best, 0.0), current


def _kappa_up_sup(
    g: Generator, W: np.ndarray, q: np.ndarray, budget: SampleBudget
) -> float:
    """Sampled sup over inputs p of kappa_up(Wp, Wq).

    Output ratios are linear-fractional in p, so extremes concentrate at
    simplex vertices; the sampling cloud is kept as a safety net.
    """
    Wq = W @ q
    sup = -math.inf
    for p in _candidate_inputs(q.shape[0], q, budget):
        kp = kappa_bounds(g, W @ p, Wq)
        sup = max(sup, kp.kappa_up)
        if math.isinf(sup):
            break
    return sup


def eta_f_upper_bounds(
    W,
    q,
    g: Generator,
    budget: SampleBudget | None = None,
    pinsker_constant: float | None = None,
) -> tuple[float, float | None]:
    """Nonlinear and linear upper bounds on eta_f(W, q).

    nonlinear = 4/(L q_min) * sup_p kappa_up(Wp, Wq) * eta_chi2;
    linear    = 4 (f'(1) + f(0)) / (L q_min) * eta_chi2, valid when
    (f(t)-f(0))/t is concave, f(0+) is finite, and q has full support.

    ``pinsker_constant`` overrides the generator's certified constant; any
    constant satisfying the Pinsker condition surfaces yields a valid bound.
    """
    W = as_channel(W)
    q = as_prob_vec(q)
    if budget is None:
        budget = SampleBudget()
    L = pinsker_constant if pinsker_constant is not None else g.pinsker_constant
    if L is None or L <= 0.0:
        raise ValueError("bounds require a positive certified Pinsker constant")
    eta2 = eta_chi2(W, q)
    qmin = q_min_on_support(q)

    q_full = bool(np.all(q > 0.0))
    if not (math.isinf(g.fprime_at_inf) or q_full):
        nonlinear = math.inf
    else:
        kappa_sup = _kappa_up_sup(g, W, q, budget)
        nonlinear = (
            4.0 / (L * qmin) * kappa_sup * eta2 if math.isfinite(kappa_sup) else math.inf
        )

    linear = None
    if g.g_concave and math.isfinite(g.f_at_zero) and q_full:
        linear = 4.0 * (float(g.f1(1.0)) + g.f_at_zero) / (L * qmin) * eta2
    return nonlinear, linear


@dataclass(frozen=True)
class ContractionReport:
    eta_chi2: float
    eta_f_estimate: float
    nonlinear_upper: float
    linear_upper: float | None
    witness_p: np.ndarray | None


def contraction_report(
    W, q, g: Generator, budget: SampleBudget | None = None
) -> ContractionReport:
    est, witness = eta_f_estimate(W, q, g, budget)
    nonlinear, linear = eta_f_upper_bounds(W, q, g, budget)
    return ContractionReport(
        eta_chi2=eta_chi2(W, q),
        eta_f_estimate=est,
        nonlinear_upper=nonlinear,
        linear_upper=linear,
        witness_p=witness,
    )


@dataclass(frozen=True)
class RatePoint:
    n: int
    eta_f_root: float  # eta_f(W^n, pi)^(1/n), estimated
    envelope: float  # eta_chi2 * (4 kappa_sup / (L pi_min))^(1/n)
    within_envelope: bool


def contraction_rate_profile(
    W, g: Generator, n_max: int, budget: SampleBudget | None = None
) -> list[RatePoint]:
    """Root-rate profile of eta_f(W^n, pi) against the chi-squared rate.

    Requires a unique stationary distribution and one of: irreducible and
    aperiodic; scrambling with full-support pi or f'(inf) = inf;
    indecomposable with full-support pi.  Also requires |f''(0)| < inf or an
    eventual-positivity index so the kappa terms stay finite.
    """
    W = as_channel(W)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if budget is None:
        budget = SampleBudget()
    if g.pinsker_constant is None or g.pinsker_constant <= 0:
        raise ValueError("profile requires a positive certified constant")
    info = structure(W)
    if not info.stationary_unique or info.stationary is None:
        raise ValueError("profile requires a unique stationary distribution")
    pi = info.stationary
    pi_full = bool(np.all(pi > 0.0))
    cond = (
        (info.irreducible and info.aperiodic)
        or (info.scrambling and (pi_full or math.isinf(g.fprime_at_inf)))
        or (info.indecomposable and pi_full)
    )
    if not cond:
        raise ValueError("no structural convergence condition holds")

    eta2 = eta_chi2(W, pi)
    pi_min = q_min_on_support(pi)
    out = []
    Wn = np.eye(W.shape[0])
    for n in range(1, n_max + 1):
        Wn = Wn @ W
        est, _ = eta_f_estimate(Wn, pi, g, budget)
        root = est ** (1.0 / n) if est > 0.0 else 0.0
        kappa_sup = _kappa_up_sup(g, Wn, pi, budget)
        if math.isfinite(kappa_sup) and kappa_sup > 0:
            envelope = eta2 * (4.0 * kappa_sup / (g.pinsker_constant * pi_min)) ** (
                1.0 / n
            )
        else:
            envelope = math.inf
        out.append(
            RatePoint(
                n=n,
                eta_f_root=root,
                envelope=envelope,
                within_envelope=root <= envelope + 1e-9,
            )
        )
    return out


def convergence_bound(W, pi, p, n: int) -> tuple[float, float, float]:
    """TV(W^n p, pi) against the chi-squared convergence bounds.

    bound_general = eta^(n/2) sqrt(chi2(p||pi)) / 2; bound_full_support =
    sqrt(1/(2 pi_min)) eta^(n/2) when pi has full support (else +inf).
    """
    W = as_channel(W)
    pi = as_prob_vec(pi)
    p = as_prob_vec(p)
    if float(np.abs(W @ pi - pi).sum()) > 1e-9:
        raise ValueError("pi is not stationary for W")
    eta2 = eta_chi2(W, pi)
    tv_actual = total_variation(iterate(W, p, n), pi)
    chi2 = chi_squared(p, pi)
    bound_general = 0.5 * eta2 ** (n / 2.0) * math.sqrt(chi2) if chi2 < math.inf else math.inf
    if np.all(pi > 0.0):
        bound_full = math.sqrt(1.0 / (2.0 * float(pi.min()))) * eta2 ** (n / 2.0)
    else:
        bound_full = math.inf
    return tv_actual, bound_general, bound_full


@dataclass(frozen=True)
class MixingTimeReport:
    tv_bound: int
    f_bound: int | None
    empirical_tv: int | None
    empirical_f: int | None
    eta_chi2: float
    pi_min: float
    empirical_within_bound: bool
    generator: str | None = None
    warnings: tuple[str, ...] = field(default=())


def _empirical_mixing(W, pi, delta, dist_fn, n_cap: int) -> int | None:
    n_sym = W.shape[0]
    P = np.eye(n_sym)
    for n in range(n_cap + 1):
        worst = max(dist_fn(P[:, x], pi) for x in range(n_sym))
        if worst <= delta:
            return n
        P = W @ P
    return None


def mixing_time_bounds(
    W, delta: float, g: Generator | None = None, n_cap: int | None = None
) -> MixingTimeReport:
    """Mixing-time upper bounds from the chi-squared contraction coefficient.

    tv_bound = ceil(2 ln(1/(sqrt(2 pi_min) delta)) / ln(1/eta)), floored at 0;
    the f-divergence bound additionally needs (f(t)-f(0))/t concave, finite
    f(0+), and finite f'(1).  empirical_tv/empirical_f scan vertex inputs.
    """
    W = as_channel(W)
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    pi, unique = stationary_distribution(W)
    notes = []
    if not unique:
        raise ValueError("mixing times require a unique stationary distribution")
    if not np.all(pi > 0.0):
        raise ValueError("mixing times require a full-support stationary distribution")
    eta = eta_chi2(W, pi)
    if eta >= 1.0 - 1e-12:
        raise ValueError("eta_chi2 >= 1: no finite mixing bound")
    pi_min = float(pi.min())
    log_rate = math.log(1.0 / eta) if eta > 0.0 else math.inf

    if eta == 0.0:
        tv_bound = 1 if math.sqrt(2.0 * pi_min) * delta < 1.0 else 0
    else:
        raw = 2.0 * math.log(1.0 / (math.sqrt(2.0 * pi_min) * delta)) / log_rate
        tv_bound = max(0, math.ceil(raw - 1e-12))

    f_bound = None
    if g is not None:
        if not (g.g_concave and math.isfinite(g.f_at_zero)):
            raise ValueError(
                "f-divergence bound requires finite f(0+) and (f(t)-f(0))/t concave"
            )
        coeff = float(g.f1(1.0)) + g.f_at_zero
        if eta == 0.0:
            f_bound = 1
        else:
            raw = (math.log(2.0 / (delta * pi_min)) + math.log(coeff)) / log_rate
            f_bound = max(0, math.ceil(raw - 1e-12))

    cap = n_cap if n_cap is not None else max(2 * tv_bound, 64)
    empirical_tv = _empirical_mixing(W, pi, delta, total_variation, cap)
    empirical_f = None
    if g is not None:
        empirical_f = _empirical_mixing(
            W, pi, delta, lambda a, b: f_divergence(g, a, b), max(cap, 2 * f_bound)
        )
    within = empirical_tv is not None and empirical_tv <= tv_bound
    return MixingTimeReport(
        tv_bound=tv_bound,
        f_bound=f_bound,
        empirical_tv=empirical_tv,
        empirical_f=empirical_f,
        eta_chi2=eta,
        pi_min=pi_min,
        empirical_within_bound=within,
        generator=g.label if g is not None else None,
        warnings=tuple(notes),
    )
