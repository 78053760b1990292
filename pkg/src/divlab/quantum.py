"""Petz f-divergences and quantum channel ergodics.

Petz divergences are evaluated spectrally through the Nussbaum-Szkola joint
distributions, which reduces every quantum bound to the classical machinery.
Channels are Kraus operator lists; powers and fixed points go through the
transition superoperator.  Contraction coefficients are sampled lower
estimates only — no efficient exact algorithm is claimed for the Petz
chi-squared coefficient.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .chi2bounds import kappa_bounds, q_min_on_support
from .divergence import total_variation
from .generators import Generator, make_generator

__all__ = [
    "check_density_matrix",
    "trace_distance",
    "hs_norm_sq",
    "min_positive_eigenvalue",
    "NSPair",
    "ns_distributions",
    "petz_f_divergence",
    "petz_chi2",
    "KrausChannel",
    "identity_channel",
    "depolarizing_channel",
    "dephasing_channel",
    "replacer_channel",
    "classical_embedding",
    "apply_channel",
    "compose",
    "channel_structure",
    "QuantumChannelStructure",
    "BoundCheck",
    "petz_bounds_report",
    "PetzBoundsReport",
    "QuantumBudget",
    "quantum_eta_estimate",
    "quantum_eta_bounds",
    "quantum_mixing_time_bounds",
    "QuantumMixingReport",
]

EIG_CLAMP = 1e-12


def check_density_matrix(rho, atol: float = 1e-10) -> np.ndarray:
    """Validate Hermiticity, positivity (to -atol), and unit trace."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
        raise ValueError("density matrix must be square")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise ValueError("density matrix must be Hermitian")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -atol:
        raise ValueError(f"density matrix has negative eigenvalue {eigs.min()}")
    if abs(np.trace(rho).real - 1.0) > atol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}")
    return rho


def trace_distance(rho, sigma) -> float:
    """Half the Schatten 1-norm of the difference."""
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())


def hs_norm_sq(A) -> float:
    A = np.asarray(A, dtype=complex)
    return float(np.real(np.trace(A.conj().T @ A)))


def min_positive_eigenvalue(rho) -> float:
    eigs = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    pos = eigs[eigs > EIG_CLAMP]
    if pos.size == 0:
        raise ValueError("operator has no positive spectrum")
    return float(pos.min())


@dataclass(frozen=True)
class NSPair:
    """Nussbaum-Szkola joint distributions over X x Y, flattened to d^2."""

    p_xy: np.ndarray
    q_xy: np.ndarray


def _spectral(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    eigs, vecs = np.linalg.eigh(rho)
    eigs = np.where(np.abs(eigs) < EIG_CLAMP, 0.0, eigs)
    return eigs, vecs


def ns_distributions(rho, sigma) -> NSPair:
    """p(x,y) = lam_x |<e_x|f_y>|^2, q(x,y) = mu_y |<e_x|f_y>|^2."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError("dimension mismatch")
    lam, e = _spectral(rho)
    mu, f = _spectral(sigma)
    overlap = np.abs(e.conj().T @ f) ** 2  # overlap[x, y]
    p_xy = lam[:, np.newaxis] * overlap
    q_xy = mu[np.newaxis, :] * overlap
    return NSPair(p_xy=p_xy.ravel(), q_xy=q_xy.ravel())


def petz_f_divergence(g: Generator, rho, sigma) -> float:
    """Double spectral sum plus the f(0+), f'(inf) boundary corrections."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError("dimension mismatch")
    lam, e = _spectral(rho)
    mu, f = _spectral(sigma)
    overlap = np.abs(e.conj().T @ f) ** 2
    px = lam > 0.0
    py = mu > 0.0
    total = 0.0
    if np.any(px) and np.any(py):
        sub = overlap[np.ix_(px, py)]
        ratios = lam[px][:, np.newaxis] / mu[py][np.newaxis, :]
        total += float(np.sum(mu[py][np.newaxis, :] * g.f(ratios) * sub))
    # f(0+) Tr[(I - P^0) Q]: sigma-mass outside the support of rho
    mass = float(np.sum(mu[py][np.newaxis, :] * overlap[np.ix_(~px, py)]))
    if mass > EIG_CLAMP:
        if math.isinf(g.f_at_zero):
            return math.inf
        total += mass * g.f_at_zero
    # f'(inf) Tr[P (I - Q^0)]: rho-mass outside the support of sigma
    mass = float(np.sum(lam[px][:, np.newaxis] * overlap[np.ix_(px, ~py)]))
    if mass > EIG_CLAMP:
        if math.isinf(g.fprime_at_inf):
            return math.inf
        total += mass * g.fprime_at_inf
    return total


def petz_chi2(rho, sigma) -> float:
    """Tr[sigma^+ (rho-sigma)^2] on supp(sigma); +inf when rho !<< sigma."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError("dimension mismatch")
    mu, f = _spectral(sigma)
    pos = mu > 0.0
    if not np.all(pos):
        proj_out = f[:, ~pos]
        if float(np.real(np.trace(proj_out.conj().T @ rho @ proj_out))) > 1e-10:
            return math.inf
    inv = np.zeros_like(mu)
    inv[pos] = 1.0 / mu[pos]
    pinv = (f * inv[np.newaxis, :]) @ f.conj().T
    diff = rho - sigma
    return float(np.real(np.trace(pinv @ diff @ diff)))


# ---------------------------------------------------------------------------
# channels


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive trace-preserving map given by Kraus operators."""

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(K, dtype=complex) for K in self.kraus)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(K.shape != shape for K in ops):
            raise ValueError("Kraus operators must share one shape")
        object.__setattr__(self, "kraus", ops)
        comp = sum(K.conj().T @ K for K in ops)
        if np.max(np.abs(comp - np.eye(shape[1]))) > 1e-9:
            raise ValueError("Kraus operators must satisfy sum K^dag K = I")

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.kraus[0].shape[0]

    def superoperator(self) -> np.ndarray:
        """Matrix S with vec(E(rho)) = S vec(rho) (row-major vec)."""
        return sum(np.kron(K, K.conj()) for K in self.kraus)


def apply_channel(channel: KrausChannel, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.dim_in, channel.dim_in):
        raise ValueError("dimension mismatch between channel and state")
    return sum(K @ rho @ K.conj().T for K in channel.kraus)


def apply_channel_n(channel: KrausChannel, rho, n: int) -> np.ndarray:
    if n < 0:
        raise ValueError("n must be non-negative")
    out = np.asarray(rho, dtype=complex)
    for _ in range(n):
        out = apply_channel(channel, out)
    return out


def compose(second: KrausChannel, first: KrausChannel) -> KrausChannel:
    """Channel ``second after first``; Kraus list is all pairwise products."""
    if first.dim_out != second.dim_in:
        raise ValueError("dimension mismatch in composition")
    ops = tuple(K2 @ K1 for K2 in second.kraus for K1 in first.kraus)
    return KrausChannel(kraus=ops)


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(kraus=(np.eye(d, dtype=complex),))


def depolarizing_channel(d: int, lam: float) -> KrausChannel:
    """rho -> (1-lam) rho + lam I/d, in Kraus form via the unitary basis."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("depolarizing weight must lie in [0, 1]")
    # Weyl (shift/clock) unitaries average any state to I/d
    omega = np.exp(2j * np.pi / d)
    shift = np.zeros((d, d), dtype=complex)
    for k in range(d):
        shift[(k + 1) % d, k] = 1.0
    clock = np.diag([omega**k for k in range(d)])
    ops = [math.sqrt(1.0 - lam) * np.eye(d, dtype=complex)] if lam < 1.0 else []
    for a in range(d):
        for b in range(d):
            if lam > 0.0:
                U = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
                ops.append(math.sqrt(lam / (d * d)) * U)
    return KrausChannel(kraus=tuple(ops))


def dephasing_channel(d: int) -> KrausChannel:
    """Kills all off-diagonal elements in the computational basis."""
    ops = []
    for i in range(d):
        P = np.zeros((d, d), dtype=complex)
        P[i, i] = 1.0
        ops.append(P)
    return KrausChannel(kraus=tuple(ops))


def replacer_channel(sigma) -> KrausChannel:
    """Traces out the input and prepares sigma."""
    sigma = check_density_matrix(sigma)
    d = sigma.shape[0]
    eigs, vecs = _spectral(sigma)
    ops = []
    for j in range(d):
        if eigs[j] <= 0.0:
            continue
        for i in range(d):
            K = math.sqrt(eigs[j]) * np.outer(vecs[:, j], np.eye(d)[i])
            ops.append(K)
    return KrausChannel(kraus=tuple(ops))


def classical_embedding(W) -> KrausChannel:
    """Kraus form of a column-stochastic matrix: {sqrt(W(y|x)) |y><x|}."""
    W = np.asarray(W, dtype=float)
    n_out, n_in = W.shape
    if n_out != n_in:
        raise ValueError("classical embedding requires a square channel")
    ops = []
    for x in range(n_in):
        for y in range(n_out):
            if W[y, x] <= 0.0:
                continue
            K = np.zeros((n_out, n_in), dtype=complex)
            K[y, x] = math.sqrt(W[y, x])
            ops.append(K)
    return KrausChannel(kraus=tuple(ops))


def _probe_states(d: int) -> list[np.ndarray]:
    """A spanning set of pure states: basis vectors plus pairwise
    superpositions with and without a relative phase."""
    states = []
    eye = np.eye(d, dtype=complex)
    for i in range(d):
        states.append(np.outer(eye[:, i], eye[:, i].conj()))
    for i in range(d):
        for j in range(i + 1, d):
            for phase in (1.0, 1j):
                v = (eye[:, i] + phase * eye[:, j]) / math.sqrt(2.0)
                states.append(np.outer(v, v.conj()))
    return states


@dataclass(frozen=True)
class QuantumChannelStructure:
    fixed_point: np.ndarray | None
    unique: bool
    mixing: bool
    strongly_mixing: bool
    positivity_index: int | None


def channel_structure(
    channel: KrausChannel, n_cap: int = 64, tol: float = 1e-8
) -> QuantumChannelStructure:
    """Fixed point, uniqueness, and mixing predicates via the superoperator.

    Mixing is probed by iterating a spanning set of initial states n_cap
    times; strong mixing asks additionally for eventually strictly positive
    outputs on the probe set (equivalent to a full-rank unique fixed point).
    """
    if channel.dim_in != channel.dim_out:
        raise ValueError("structure requires a square channel")
    if n_cap < 4:
        raise ValueError("n_cap must be at least 4")
    d = channel.dim_in
    S = channel.superoperator()
    eigvals, eigvecs = np.linalg.eig(S)
    close = np.abs(eigvals - 1.0) < 1e-8
    unique = int(np.sum(close)) == 1
    fixed_point = None
    if np.any(close):
        idx = int(np.argmin(np.abs(eigvals - 1.0)))
        M = eigvecs[:, idx].reshape(d, d)
        M = 0.5 * (M + M.conj().T)
        tr = np.trace(M).real
        if abs(tr) > 1e-12:
            M = M / tr
            eigs = np.linalg.eigvalsh(M)
            if eigs.min() > -1e-9:
                fixed_point = M

    mixing = False
    strongly_mixing = False
    positivity_index = None
    if fixed_point is not None and unique:
        probes = _probe_states(d)
        finals = []
        all_mixed = True
        for rho in probes:
            out = apply_channel_n(channel, rho, n_cap)
            finals.append(out)
            if trace_distance(out, fixed_point) > tol:
                all_mixed = False
        mixing = all_mixed
        if mixing:
            outs = [p.copy() for p in probes]
            for n in range(1, n_cap + 1):
                outs = [apply_channel(channel, o) for o in outs]
                if all(np.linalg.eigvalsh(o).min() > tol for o in outs):
                    positivity_index = n
                    strongly_mixing = True
                    break
    return QuantumChannelStructure(
        fixed_point=fixed_point,
        unique=unique,
        mixing=mixing,
        strongly_mixing=strongly_mixing,
        positivity_index=positivity_index,
    )


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundCheck:
    bound_id: str
    lhs: float
    rhs: float
    holds: bool
    applicable: bool
    note: str = ""


@dataclass(frozen=True)
class PetzBoundsReport:
    checks: tuple[BoundCheck, ...]
    divergence: float
    chi2: float
    td: float

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)


def _check(bound_id: str, lhs: float, rhs: float, slack: float = 1e-9) -> BoundCheck:
    return BoundCheck(
        bound_id=bound_id, lhs=lhs, rhs=rhs, holds=lhs <= rhs + slack, applicable=True
    )


def _skip(bound_id: str, note: str) -> BoundCheck:
    return BoundCheck(
        bound_id=bound_id, lhs=math.nan, rhs=math.nan, holds=True, applicable=False,
        note=note,
    )


def petz_bounds_report(g: Generator, rho, sigma) -> PetzBoundsReport:
    """Evaluate and check the Petz sandwich, quantum Pinsker, chi-squared vs
    trace-distance, and NS reverse-Pinsker bounds for one state pair."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    value = petz_f_divergence(g, rho, sigma)
    chi2 = petz_chi2(rho, sigma)
    td = trace_distance(rho, sigma)
    ns = ns_distributions(rho, sigma)
    checks: list[BoundCheck] = []

    dominated = math.isfinite(chi2)
    sigma_dom_rho = petz_chi2(sigma, rho) < math.inf
    if dominated and (g.f2_at_zero_finite or sigma_dom_rho):
        kp = kappa_bounds(g, ns.p_xy, ns.q_xy)
        checks.append(_check("petz-sandwich-lower", 0.5 * kp.kappa_down * chi2, value))
        upper = 0.5 * kp.kappa_up * chi2 if math.isfinite(kp.kappa_up) else math.inf
        checks.append(_check("petz-sandwich-upper", value, upper))
    else:
        checks.append(_skip("petz-sandwich-lower", "needs rho << sigma and finite kappa"))
        checks.append(_skip("petz-sandwich-upper", "needs rho << sigma and finite kappa"))

    if g.operator_convex and g.pinsker_constant is not None:
        checks.append(
            _check("quantum-pinsker", 0.5 * g.pinsker_constant * td**2, value)
        )
    else:
        checks.append(_skip("quantum-pinsker", "needs operator-convex f"))

    if dominated:
        lmin = min_positive_eigenvalue(sigma)
        l2 = hs_norm_sq(rho - sigma)
        checks.append(_check("petz-chi2-l2", chi2, l2 / lmin))
        checks.append(_check("petz-chi2-td", l2 / lmin, 4.0 * td**2 / lmin))
        if g.operator_convex and g.pinsker_constant is not None:
            checks.append(
                _check(
                    "petz-f-lower-chi2",
                    g.pinsker_constant * lmin / 8.0 * chi2,
                    value,
                )
            )
        else:
            checks.append(_skip("petz-f-lower-chi2", "needs operator-convex f"))
        kp = kappa_bounds(g, ns.p_xy, ns.q_xy)
        if math.isfinite(kp.kappa_up):
            qmin = q_min_on_support(ns.q_xy)
            dns = ns.p_xy - ns.q_xy
            l2_ns = float(np.dot(dns, dns))
            checks.append(
                _check("ns-reverse-pinsker-l2", value, kp.kappa_up / (2 * qmin) * l2_ns)
            )
            tv_ns = total_variation(ns.p_xy, ns.q_xy)
            checks.append(
                _check(
                    "ns-reverse-pinsker-tv", value, 2.0 * kp.kappa_up / qmin * tv_ns**2
                )
            )
        else:
            checks.append(_skip("ns-reverse-pinsker-l2", "kappa_up infinite"))
            checks.append(_skip("ns-reverse-pinsker-tv", "kappa_up infinite"))
    else:
        for name in ("petz-chi2-l2", "petz-chi2-td", "petz-f-lower-chi2",
                     "ns-reverse-pinsker-l2", "ns-reverse-pinsker-tv"):
            checks.append(_skip(name, "rho not dominated by sigma"))

    return PetzBoundsReport(
        checks=tuple(checks), divergence=value, chi2=chi2, td=td
    )


# ---------------------------------------------------------------------------
# contraction estimation


@dataclass(frozen=True)
class QuantumBudget:
    """Sampling configuration for quantum contraction estimates."""

    n_samples: int = 200
    seed: int = 0
    refine_steps: int = 120
    blend_weights: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    eigenbasis_grid: int = 257

    def __post_init__(self):
        if self.n_samples < 100:
            raise ValueError("budget requires at least 100 samples")


def _haar_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def _candidate_states(sigma: np.ndarray, budget: QuantumBudget) -> list[np.ndarray]:
    """Haar pure states blended toward sigma, plus sigma-eigenbasis mixtures
    (the latter make classically-embedded suprema grid-exact)."""
    d = sigma.shape[0]
    rng = np.random.default_rng(budget.seed)
    out = []
    for _ in range(budget.n_samples):
        pure = _haar_pure(d, rng)
        out.append(pure)
        for w in budget.blend_weights:
            out.append((1.0 - w) * pure + w * sigma)
    _, vecs = _spectral(sigma)
    for i in range(d):
        for j in range(i + 1, d):
            Pi = np.outer(vecs[:, i], vecs[:, i].conj())
            Pj = np.outer(vecs[:, j], vecs[:, j].conj())
            for a in np.linspace(0.0, 1.0, budget.eigenbasis_grid):
                out.append(a * Pi + (1.0 - a) * Pj)
    return out


# see contraction.NUMERATOR_NOISE_FLOOR: numerators below the rounding noise
# of the spectral sums count as zero so estimates stay lower bounds
_NOISE_FLOOR = 1e-13


def _quantum_ratio(
    g: Generator, channel: KrausChannel, sigma_out: np.ndarray, sigma: np.ndarray,
    rho: np.ndarray,
) -> float:
    denom = petz_f_divergence(g, rho, sigma)
    if not (1e-12 < denom < math.inf):
        return -math.inf
    num = petz_f_divergence(g, apply_channel(channel, rho), sigma_out)
    if math.isinf(num):
        return -math.inf
    if num < _NOISE_FLOOR:
        num = 0.0
    return num / denom


def quantum_eta_estimate(
    channel: KrausChannel, sigma, g: Generator, budget: QuantumBudget | None = None
) -> tuple[float, np.ndarray | None]:
    """Sampled lower estimate of the Petz input-dependent contraction
    coefficient, with its witness state."""
    sigma = check_density_matrix(sigma)
    if budget is None:
        budget = QuantumBudget()
    sigma_out = apply_channel(channel, sigma)
    best = -math.inf
    witness = None
    for rho in _candidate_states(sigma, budget):
        r = _quantum_ratio(g, channel, sigma_out, sigma, rho)
        if r > best:
            best = r
            witness = rho
    if witness is None:
        warnings.warn("no feasible state found; estimate 0")
        return 0.0, None
    rng = np.random.default_rng(budget.seed + 1)
    weight = 0.3
    current = witness.copy()
    d = sigma.shape[0]
    for _ in range(budget.refine_steps):
        prop = (1.0 - weight * rng.random()) * current
        prop = prop + (1.0 - np.trace(prop).real) * _haar_pure(d, rng)
        prop = 0.5 * (prop + prop.conj().T)
        eigs, vecs = np.linalg.eigh(prop)
        eigs = np.maximum(eigs, 0.0)
        s = eigs.sum()
        if s <= 0.0:
            continue
        prop = (vecs * (eigs / s)[np.newaxis, :]) @ vecs.conj().T
        r = _quantum_ratio(g, channel, sigma_out, sigma, prop)
        if r > best:
            best, current = r, prop
        weight *= 0.98
    return max(best, 0.0), current


def quantum_eta_bounds(
    channel: KrausChannel,
    sigma,
    g: Generator,
    budget: QuantumBudget | None = None,
    pinsker_constant: float | None = None,
) -> tuple[float, float | None]:
    """Nonlinear and linear upper bounds on the Petz eta_f in terms of the
    sampled Petz chi-squared estimate.

    nonlinear = 8/(L lmin(sigma)) * sup_rho kappa_up(NS of outputs) * eta_chi2;
    linear = 8 (f'(1) + f(0)) / (L lmin(sigma)) * eta_chi2, needing operator
    convexity, (f(t)-f(0))/t concave, finite f(0+), and full-rank sigma.
    Both scale a *sampled* chi-squared estimate and inherit its lower-bound
    character.
    """
    sigma = check_density_matrix(sigma)
    if budget is None:
        budget = QuantumBudget()
    L = pinsker_constant if pinsker_constant is not None else g.pinsker_constant
    if L is None or L <= 0.0:
        raise ValueError("bounds require a positive certified Pinsker constant")
    if not g.operator_convex:
        raise ValueError("Petz contraction bounds require operator-convex f")
    sigma_full = bool(np.linalg.eigvalsh(sigma).min() > EIG_CLAMP)
    eta_chi2_hat, _ = quantum_eta_estimate(
        channel, sigma, make_generator("pearson_chi2"), budget
    )
    lmin = min_positive_eigenvalue(sigma)

    if not (g.f2_at_zero_finite and (sigma_full or math.isinf(g.fprime_at_inf))):
        nonlinear = math.inf
    else:
        sigma_out = apply_channel(channel, sigma)
        sup = -math.inf
        for rho in _candidate_states(sigma, budget):
            ns = ns_distributions(
                check_density_matrix(apply_channel(channel, rho), atol=1e-8), sigma_out
            )
            kp = kappa_bounds(g, ns.p_xy, ns.q_xy)
            sup = max(sup, kp.kappa_up)
            if math.isinf(sup):
                break
        nonlinear = (
            8.0 / (L * lmin) * sup * eta_chi2_hat if math.isfinite(sup) else math.inf
        )

    linear = None
    if g.g_concave and math.isfinite(g.f_at_zero) and sigma_full:
        linear = 8.0 * (float(g.f1(1.0)) + g.f_at_zero) / (L * lmin) * eta_chi2_hat
    return nonlinear, linear


@dataclass(frozen=True)
class QuantumMixingReport:
    td_bound: int
    f_bound: int | None
    empirical_td: int | None
    empirical_f: int | None
    eta_chi2_estimate: float
    lambda_min: float
    estimate_based: bool = True  # eta is a sampled estimate, not exact
    warnings: tuple[str, ...] = field(default=())


def quantum_mixing_time_bounds(
    channel: KrausChannel,
    delta: float,
    g: Generator | None = None,
    budget: QuantumBudget | None = None,
    n_cap: int = 256,
) -> QuantumMixingReport:
    """Mixing-time bounds from the sampled Petz chi-squared coefficient.

    td_bound = ceil(ln(1/(lmin(pi) delta^2)) / ln(1/eta^)); the f-divergence
    bound multiplies in the linear coefficient f'(1) + f(0).  Both carry the
    estimate-based caveat: eta^ is a sampled lower estimate of the true
    coefficient, so the bounds are exact only when the estimate is.
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    info = channel_structure(channel, n_cap=max(64, min(n_cap, 512)))
    if not info.mixing or info.fixed_point is None or not info.unique:
        raise ValueError("mixing times require a mixing channel with unique fixed point")
    pi = info.fixed_point
    if budget is None:
        budget = QuantumBudget()
    eta_hat, _ = quantum_eta_estimate(channel, pi, make_generator("pearson_chi2"), budget)
    if eta_hat >= 1.0 - 1e-12:
        raise ValueError("estimated eta_chi2 >= 1: no finite bound")
    lmin = min_positive_eigenvalue(pi)
    notes = ["eta_chi2 is a sampled estimate; bounds are estimate-based"]
    log_rate = math.log(1.0 / eta_hat) if eta_hat > 0.0 else math.inf

    if eta_hat == 0.0:
        td_bound = 1 if lmin * delta**2 < 1.0 else 0
    else:
        raw = math.log(1.0 / (lmin * delta**2)) / log_rate
        td_bound = max(0, math.ceil(raw - 1e-12))

    f_bound = None
    if g is not None:
        if not (
            g.operator_convex and g.g_concave and math.isfinite(g.f_at_zero)
        ):
            raise ValueError(
                "f-divergence bound needs operator-convex f with finite f(0+) "
                "and (f(t)-f(0))/t concave"
            )
        coeff = float(g.f1(1.0)) + g.f_at_zero
        if eta_hat == 0.0:
            f_bound = 1
        else:
            raw = math.log(4.0 * coeff / (lmin * delta)) / log_rate
            f_bound = max(0, math.ceil(raw - 1e-12))

    probes = _probe_states(channel.dim_in)

    def least_n(dist_fn, cap):
        outs = [p.copy() for p in probes]
        for n in range(cap + 1):
            if max(dist_fn(o) for o in outs) <= delta:
                return n
            outs = [apply_channel(channel, o) for o in outs]
        return None

    empirical_td = least_n(lambda o: trace_distance(o, pi), max(2 * td_bound, 64))
    empirical_f = None
    if g is not None:
        empirical_f = least_n(
            lambda o: petz_f_divergence(g, check_density_matrix(o, atol=1e-8), pi),
            max(2 * (f_bound or 0), 64),
        )
    return QuantumMixingReport(
        td_bound=td_bound,
        f_bound=f_bound,
        empirical_td=empirical_td,
        empirical_f=empirical_f,
        eta_chi2_estimate=eta_hat,
        lambda_min=lmin,
        warnings=tuple(notes),
    )
