import math

import numpy as np
import pytest

from divlab.contraction import eta_chi2 as classical_eta_chi2
from divlab.divergence import f_divergence, total_variation
from divlab.generators import make_generator
from divlab.markov import bsc
from divlab.quantum import (
    KrausChannel,
    QuantumBudget,
    apply_channel,
    channel_structure,
    check_density_matrix,
    classical_embedding,
    compose,
    dephasing_channel,
    depolarizing_channel,
    identity_channel,
    ns_distributions,
    petz_bounds_report,
    petz_chi2,
    petz_f_divergence,
    quantum_eta_bounds,
    quantum_eta_estimate,
    quantum_mixing_time_bounds,
    replacer_channel,
    trace_distance,
)

PLUS = np.full((2, 2), 0.5, dtype=complex)
MAXMIX2 = np.eye(2, dtype=complex) / 2
FAST = QuantumBudget(n_samples=100, refine_steps=40, eigenbasis_grid=129)


def random_state(rng, d, rank=None):
    rank = rank or d
    A = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


def random_kraus(rng, d, k=3):
    A = rng.normal(size=(k * d, d)) + 1j * rng.normal(size=(k * d, d))
    Q, _ = np.linalg.qr(A)
    return KrausChannel(kraus=tuple(Q[i * d : (i + 1) * d, :] for i in range(k)))


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        check_density_matrix(np.array([[1.0, 0.5], [0.2, 0.0]]))
    with pytest.raises(ValueError):
        check_density_matrix(np.array([[1.5, 0.0], [0.0, -0.5]]))
    with pytest.raises(ValueError):
        check_density_matrix(0.7 * np.eye(2))


def test_ns_distributions_commuting_case():
    # eigh sorts ascending, so build states already sorted
    p = np.array([0.3, 0.7])
    q = np.array([0.4, 0.6])
    ns = ns_distributions(np.diag(p).astype(complex), np.diag(q).astype(complex))
    P = ns.p_xy.reshape(2, 2)
    Q = ns.q_xy.reshape(2, 2)
    assert P == pytest.approx(np.diag(p), abs=1e-12)
    assert Q == pytest.approx(np.diag(q), abs=1e-12)


def test_ns_distributions_plus_state_example():
    ns = ns_distributions(PLUS, MAXMIX2)
    P = ns.p_xy.reshape(2, 2)
    Q = ns.q_xy.reshape(2, 2)
    # one eigenvalue-1 row carries (1/2, 1/2), the eigenvalue-0 row is empty
    assert sorted(P.sum(axis=1)) == pytest.approx([0.0, 1.0], abs=1e-12)
    assert np.sort(P.ravel()) == pytest.approx([0.0, 0.0, 0.5, 0.5], abs=1e-12)
    assert Q == pytest.approx(np.full((2, 2), 0.25), abs=1e-12)


def test_ns_normalization_and_domination():
    rng = np.random.default_rng(1)
    for _ in range(20):
        rho = random_state(rng, 3)
        sigma = random_state(rng, 3)
        ns = ns_distributions(rho, sigma)
        assert ns.p_xy.sum() == pytest.approx(1.0, abs=1e-9)
        assert ns.q_xy.sum() == pytest.approx(1.0, abs=1e-9)
        # full-rank sigma dominates: q zero forces p zero
        assert ns.p_xy[ns.q_xy <= 1e-14].sum() <= 1e-12


def test_petz_reduces_to_classical_on_diagonals(registry):
    rng = np.random.default_rng(2)
    for _ in range(10):
        p = np.sort(rng.dirichlet(np.ones(3)))
        q = np.sort(rng.dirichlet(np.ones(3)))
        rho = np.diag(p).astype(complex)
        sigma = np.diag(q).astype(complex)
        for g in registry:
            assert petz_f_divergence(g, rho, sigma) == pytest.approx(
                f_divergence(g, p, q), rel=1e-10, abs=1e-12
            ), g.label


def test_petz_kl_plus_state():
    kl = make_generator("kl")
    assert petz_f_divergence(kl, PLUS, MAXMIX2) == pytest.approx(math.log(2.0))
    assert petz_f_divergence(kl, MAXMIX2, MAXMIX2) == pytest.approx(0.0, abs=1e-12)


def test_petz_boundary_terms():
    kl = make_generator("kl")
    # rho has mass outside supp(sigma) and f'(inf) = inf
    rho = np.diag([0.5, 0.5]).astype(complex)
    sigma = np.diag([1.0, 0.0]).astype(complex)
    assert petz_f_divergence(kl, rho, sigma) == math.inf
    # squared Hellinger keeps both corrections finite
    sh = make_generator("squared_hellinger")
    value = petz_f_divergence(sh, np.diag([1.0, 0.0]).astype(complex),
                              np.diag([0.0, 1.0]).astype(complex))
    assert value == pytest.approx(1.0)


def test_petz_chi2_examples():
    rho = np.diag([0.6, 0.4]).astype(complex)
    assert petz_chi2(rho, MAXMIX2) == pytest.approx(0.04)
    assert petz_chi2(MAXMIX2, MAXMIX2) == pytest.approx(0.0, abs=1e-12)
    assert petz_chi2(MAXMIX2, PLUS) == math.inf


def test_petz_chi2_dual_route():
    pc = make_generator("pearson_chi2")
    rng = np.random.default_rng(3)
    for d in (2, 3):
        for _ in range(25):
            rho = random_state(rng, d)
            sigma = random_state(rng, d)
            assert petz_chi2(rho, sigma) == pytest.approx(
                petz_f_divergence(pc, rho, sigma), rel=1e-10, abs=1e-10
            )


def test_ns_basis_independence_under_degeneracy():
    # maximally mixed rho admits any eigenbasis; the divergence must not care
    kl = make_generator("kl")
    sigma = np.diag([0.8, 0.2]).astype(complex)
    lam = np.array([0.5, 0.5])
    theta = 0.7
    U = np.array(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]],
        dtype=complex,
    )
    mu, fvecs = np.linalg.eigh(sigma)
    values = []
    for basis in (np.eye(2, dtype=complex), U):
        overlap = np.abs(basis.conj().T @ fvecs) ** 2
        p_xy = (lam[:, None] * overlap).ravel()
        q_xy = (mu[None, :] * overlap).ravel()
        values.append(f_divergence(kl, p_xy, q_xy))
    assert values[0] == pytest.approx(values[1], abs=1e-9)
    assert values[0] == pytest.approx(petz_f_divergence(kl, MAXMIX2, sigma), abs=1e-9)


def test_kraus_validation_and_application():
    with pytest.raises(ValueError):
        KrausChannel(kraus=(np.array([[0.5, 0.0], [0.0, 0.5]]),))
    ident = identity_channel(2)
    assert apply_channel(ident, PLUS) == pytest.approx(PLUS)
    dep1 = depolarizing_channel(2, 1.0)
    assert apply_channel(dep1, PLUS) == pytest.approx(MAXMIX2, abs=1e-12)
    deph = dephasing_channel(2)
    assert apply_channel(deph, PLUS) == pytest.approx(MAXMIX2, abs=1e-12)
    rng = np.random.default_rng(5)
    E = random_kraus(rng, 3)
    rho = random_state(rng, 3)
    out = apply_channel(E, rho)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-9)


def test_compose_concatenates_products():
    dep = depolarizing_channel(2, 0.3)
    deph = dephasing_channel(2)
    both = compose(deph, dep)
    rho = PLUS
    assert apply_channel(both, rho) == pytest.approx(
        apply_channel(deph, apply_channel(dep, rho)), abs=1e-12
    )
    assert len(both.kraus) == len(dep.kraus) * len(deph.kraus)


def test_replacer_channel():
    target = np.diag([0.7, 0.3]).astype(complex)
    rep = replacer_channel(target)
    rng = np.random.default_rng(7)
    rho = random_state(rng, 2)
    assert apply_channel(rep, rho) == pytest.approx(target, abs=1e-12)


def test_channel_structure_depolarizing():
    st = channel_structure(depolarizing_channel(2, 0.5))
    assert st.unique and st.mixing and st.strongly_mixing
    assert st.positivity_index == 1
    assert st.fixed_point == pytest.approx(MAXMIX2, abs=1e-9)


def test_channel_structure_identity_not_unique():
    st = channel_structure(identity_channel(2))
    assert not st.unique


def test_channel_structure_embedded_constant():
    W = np.zeros((2, 2))
    W[0, :] = 1.0
    st = channel_structure(classical_embedding(W))
    assert st.mixing
    assert not st.strongly_mixing  # fixed point is pure, never full rank
    assert st.positivity_index is None


def test_petz_bounds_report_identity_pair():
    kl = make_generator("kl")
    rep = petz_bounds_report(kl, MAXMIX2, MAXMIX2)
    assert rep.divergence == pytest.approx(0.0, abs=1e-12)
    assert rep.chi2 == pytest.approx(0.0, abs=1e-12)
    assert rep.all_hold


def test_petz_bounds_report_pearson_collapse():
    pc = make_generator("pearson_chi2")
    rho = np.diag([0.6, 0.4]).astype(complex)
    rep = petz_bounds_report(pc, rho, MAXMIX2)
    checks = {c.bound_id: c for c in rep.checks}
    assert checks["petz-sandwich-lower"].lhs == pytest.approx(rep.divergence, rel=1e-9)
    assert checks["petz-sandwich-upper"].rhs == pytest.approx(rep.divergence, rel=1e-9)
    assert rep.all_hold


def test_petz_bounds_report_plus_state_pinsker():
    kl = make_generator("kl")
    rep = petz_bounds_report(kl, PLUS, MAXMIX2)
    checks = {c.bound_id: c for c in rep.checks}
    pinsker = checks["quantum-pinsker"]
    assert pinsker.lhs == pytest.approx(0.5)  # (4/2) (1/2)^2
    assert pinsker.rhs == pytest.approx(math.log(2.0))
    assert rep.all_hold


def test_petz_bounds_random_sweep(operator_convex_registry):
    rng = np.random.default_rng(11)
    for _ in range(30):
        rho = random_state(rng, 2)
        sigma = random_state(rng, 2)
        for g in operator_convex_registry:
            rep = petz_bounds_report(g, rho, sigma)
            assert rep.all_hold, (g.label, rep)


def test_quantum_dpi_spot_check(operator_convex_registry):
    rng = np.random.default_rng(13)
    for trial in range(300):
        rho = random_state(rng, 2)
        sigma = random_state(rng, 2)
        E = random_kraus(rng, 2)
        g = operator_convex_registry[trial % len(operator_convex_registry)]
        before = petz_f_divergence(g, rho, sigma)
        if math.isinf(before):
            continue
        after = petz_f_divergence(
            g,
            check_density_matrix(apply_channel(E, rho), atol=1e-8),
            check_density_matrix(apply_channel(E, sigma), atol=1e-8),
        )
        assert after <= before + 1e-9, g.label


def test_quantum_eta_identity_and_replacer():
    kl = make_generator("kl")
    est, _ = quantum_eta_estimate(identity_channel(2), MAXMIX2, kl, FAST)
    assert est == pytest.approx(1.0, abs=1e-9)
    rep = replacer_channel(MAXMIX2)
    est, _ = quantum_eta_estimate(
        rep, np.diag([0.7, 0.3]).astype(complex), kl, FAST
    )
    assert est <= 1e-9


def test_quantum_eta_closed_form_channels():
    pc = make_generator("pearson_chi2")
    # depolarizing: E(rho) - I/2 = (1-lam)(rho - I/2), so every feasible state
    # achieves exactly (1-lam)^2
    for lam in (0.3, 0.6):
        est, _ = quantum_eta_estimate(depolarizing_channel(2, lam), MAXMIX2, pc, FAST)
        assert est == pytest.approx((1.0 - lam) ** 2, abs=1e-9)
    # dephasing keeps the z component of the Bloch vector: the sup is 1,
    # attained by any diagonal input
    est, _ = quantum_eta_estimate(dephasing_channel(2), MAXMIX2, pc, FAST)
    assert est == pytest.approx(1.0, abs=1e-9)


def test_quantum_eta_embedded_bsc_matches_classical():
    pc = make_generator("pearson_chi2")
    channel = classical_embedding(bsc(0.3))
    est, _ = quantum_eta_estimate(channel, MAXMIX2, pc, FAST)
    exact = classical_eta_chi2(bsc(0.3), np.array([0.5, 0.5]))
    assert est == pytest.approx(exact, abs=1e-6)


def test_quantum_eta_bounds_dominate_estimate():
    kl = make_generator("kl")
    channel = classical_embedding(bsc(0.25))
    est, _ = quantum_eta_estimate(channel, MAXMIX2, kl, FAST)
    nonlinear, linear = quantum_eta_bounds(channel, MAXMIX2, kl, FAST)
    assert math.isinf(nonlinear)  # KL has f''(0+) = inf
    assert linear is not None and est <= linear + 1e-9
    pc = make_generator("pearson_chi2")
    nonlinear, linear = quantum_eta_bounds(channel, MAXMIX2, pc, FAST)
    est_pc, _ = quantum_eta_estimate(channel, MAXMIX2, pc, FAST)
    assert math.isfinite(nonlinear) and est_pc <= nonlinear + 1e-9
    assert est_pc <= linear + 1e-9
    with pytest.raises(ValueError):
        quantum_eta_bounds(channel, MAXMIX2, make_generator("jeffrey"), FAST)


def test_quantum_submultiplicativity_embedded():
    pc = make_generator("pearson_chi2")
    W = bsc(0.2)
    E = classical_embedding(W)
    EE = classical_embedding(W @ W)
    sigma = np.diag([0.4, 0.6]).astype(complex)
    sigma_out = np.diag(W @ np.array([0.4, 0.6])).astype(complex)
    est_sq, _ = quantum_eta_estimate(EE, sigma, pc, FAST)
    est_1, _ = quantum_eta_estimate(E, sigma, pc, FAST)
    est_2, _ = quantum_eta_estimate(E, sigma_out, pc, FAST)
    assert est_sq <= est_1 * est_2 + 1e-3


def test_quantum_rate_profile_depolarizing():
    # eta for the n-fold depolarizing channel is exactly ((1-lam)^2)^n, so the
    # root profile sits at the single-step coefficient within the envelope
    kl = make_generator("kl")
    lam = 0.4
    eta_one = (1.0 - lam) ** 2
    for n in (1, 2, 3):
        effective = 1.0 - (1.0 - lam) ** n
        En = depolarizing_channel(2, effective)
        est, _ = quantum_eta_estimate(En, MAXMIX2, kl, FAST)
        root = est ** (1.0 / n)
        assert root <= eta_one + 0.05
        assert root >= eta_one - 0.05


def test_quantum_mixing_times_depolarizing():
    kl = make_generator("kl")
    report = quantum_mixing_time_bounds(depolarizing_channel(2, 0.5), 0.01, kl, FAST)
    # closed form: TD contracts by (1-lam) per step from TD0 = 1/2
    expected = math.ceil(math.log(0.5 / 0.01) / math.log(1.0 / 0.5))
    assert report.empirical_td == expected
    assert report.empirical_td <= report.td_bound
    assert report.empirical_f is not None and report.empirical_f <= report.f_bound
    assert report.estimate_based


def test_quantum_mixing_times_embedded_bsc_consistent_with_classical():
    from divlab.contraction import mixing_time_bounds

    kl = make_generator("kl")
    classical = mixing_time_bounds(bsc(0.25), 0.01, kl)
    quantum = quantum_mixing_time_bounds(
        classical_embedding(bsc(0.25)), 0.01, kl, FAST
    )
    assert quantum.empirical_td == classical.empirical_tv
    assert quantum.empirical_f == classical.empirical_f
    # the quantum chain is looser by at most one step on this instance
    assert classical.tv_bound <= quantum.td_bound <= classical.tv_bound + 1
    assert quantum.eta_chi2_estimate == pytest.approx(0.25, abs=1e-6)


def test_quantum_mixing_time_preconditions():
    kl = make_generator("kl")
    with pytest.raises(ValueError):
        quantum_mixing_time_bounds(identity_channel(2), 0.01, kl, FAST)
    with pytest.raises(ValueError):
        quantum_mixing_time_bounds(depolarizing_channel(2, 0.5), -1.0, kl, FAST)
    with pytest.raises(ValueError):
        # jeffrey is not flagged operator convex
        quantum_mixing_time_bounds(
            depolarizing_channel(2, 0.5), 0.01, make_generator("jeffrey"), FAST
        )


def test_dephasing_consistency_for_classical_embeddings(operator_convex_registry):
    # diagonal states through an embedded channel reproduce the classical story
    W = bsc(0.3)
    E = classical_embedding(W)
    rng = np.random.default_rng(17)
    for g in operator_convex_registry:
        p = np.sort(rng.dirichlet(np.ones(2)))
        q = np.sort(rng.dirichlet(np.ones(2)))
        rho = np.diag(p).astype(complex)
        sigma = np.diag(q).astype(complex)
        lhs = petz_f_divergence(
            g,
            check_density_matrix(apply_channel(E, rho), atol=1e-8),
            check_density_matrix(apply_channel(E, sigma), atol=1e-8),
        )
        rhs = f_divergence(g, W @ p, W @ q)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12), g.label
        assert trace_distance(rho, sigma) == pytest.approx(
            total_variation(p, q), abs=1e-12
        )
