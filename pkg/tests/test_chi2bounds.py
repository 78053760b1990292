import dataclasses
import math

import numpy as np
import pytest

from divlab.chi2bounds import (
    chi2_sandwich,
    chi2_tv_upper,
    f_lower_by_chi2,
    kappa_bounds,
    reverse_pinsker,
)
from divlab.divergence import chi_squared, f_divergence, total_variation
from divlab.generators import make_generator

from conftest import random_prob_pairs


def test_kappa_pearson_constant():
    pc = make_generator("pearson_chi2")
    kp = kappa_bounds(pc, [0.2, 0.8], [0.6, 0.4])
    assert kp.kappa_up == 2.0 and kp.kappa_down == 2.0


def test_kappa_kl_example():
    kl = make_generator("kl")
    kp = kappa_bounds(kl, [0.5, 0.5], [0.25, 0.75])
    assert kp.kappa_up == pytest.approx(1.5, abs=1e-12)
    assert kp.kappa_down == pytest.approx(0.5, abs=1e-12)
    # witnesses: max at the ratio-2/3 endpoint, min at the ratio-2 endpoint
    assert kp.argmax == (1, 1.0)
    assert kp.argmin == (0, 1.0)


def test_kappa_identity_pair():
    kl = make_generator("kl")
    p = np.array([0.3, 0.7])
    kp = kappa_bounds(kl, p, p)
    assert kp.kappa_up == pytest.approx(1.0) and kp.kappa_down == pytest.approx(1.0)


def test_kappa_limit_toward_reference(registry):
    # along p_k = (1-1/k) q + (1/k) p both extremes approach f''(1) at rate 1/k
    rng = np.random.default_rng(41)
    p = rng.dirichlet(np.ones(3))
    q = rng.dirichlet(np.ones(3))
    for g in registry:
        f2_1 = float(g.f2(1.0))
        base = None
        for k in (8, 16, 32, 64):
            pk = (1.0 - 1.0 / k) * q + (1.0 / k) * p
            kp = kappa_bounds(g, pk, q)
            err = max(abs(kp.kappa_up - f2_1), abs(kp.kappa_down - f2_1))
            if base is None:
                base = max(err * k, 1e-12)
            else:
                assert err <= 2.0 * base / k, g.label


def test_kappa_monotone_endpoint_matches_dense_grid(registry):
    rng = np.random.default_rng(43)
    ps, qs = random_prob_pairs(rng, 10, 3)
    for g in registry:
        if g.f2_monotonicity == "unknown":
            continue
        blind = dataclasses.replace(g, f2_monotonicity="unknown")
        for p, q in zip(ps, qs):
            fast = kappa_bounds(g, p, q)
            dense = kappa_bounds(blind, p, q, t_grid_n=4097)
            assert fast.kappa_up == pytest.approx(dense.kappa_up, abs=1e-9)
            assert fast.kappa_down == pytest.approx(dense.kappa_down, abs=1e-9)


def test_kappa_vacuous_when_p_touches_zero():
    kl = make_generator("kl")
    kp = kappa_bounds(kl, [1.0, 0.0], [0.5, 0.5])
    assert math.isinf(kp.kappa_up)
    assert kp.vacuous
    # finite f''(0+): no vacuity
    tri = make_generator("triangular")
    kp = kappa_bounds(tri, [1.0, 0.0], [0.5, 0.5])
    assert kp.kappa_up == pytest.approx(8.0)  # f''(0) = 8
    assert not kp.vacuous


def test_sandwich_pearson_collapses():
    pc = make_generator("pearson_chi2")
    lower, value, upper, holds = chi2_sandwich(pc, [0.7, 0.3], [0.5, 0.5])
    assert lower == pytest.approx(value, rel=1e-12)
    assert upper == pytest.approx(value, rel=1e-12)
    assert holds


def test_sandwich_identity_pair():
    kl = make_generator("kl")
    p = np.array([0.4, 0.6])
    assert chi2_sandwich(kl, p, p) == (0.0, 0.0, 0.0, True)


def test_sandwich_random_sweep(registry):
    rng = np.random.default_rng(47)
    ps, qs = random_prob_pairs(rng, 100, 4)
    for g in registry:
        for p, q in zip(ps, qs):
            lower, value, upper, holds = chi2_sandwich(g, p, q)
            assert holds, (g.label, lower, value, upper)


def test_reverse_pinsker_identity_and_domination():
    kl = make_generator("kl")
    p = np.array([0.25, 0.75])
    assert reverse_pinsker(kl, p, p) == (0.0, 0.0)
    rng = np.random.default_rng(53)
    ps, qs = random_prob_pairs(rng, 200, 3)
    for p, q in zip(ps, qs):
        l2b, tvb = reverse_pinsker(kl, p, q)
        value = f_divergence(kl, p, q)
        assert value <= l2b + 1e-10
        assert value <= tvb + 1e-10
        assert l2b <= tvb + 1e-12  # l2 refinement dominates the TV form


def test_chi2_reverse_pinsker_specialization():
    # chi^2 <= 4/q_min TV^2 is the pearson instance of the TV bound
    pc = make_generator("pearson_chi2")
    rng = np.random.default_rng(59)
    ps, qs = random_prob_pairs(rng, 200, 4)
    for p, q in zip(ps, qs):
        _, tvb = reverse_pinsker(pc, p, q)
        qmin = q[q > 0].min()
        assert tvb == pytest.approx(4.0 / qmin * total_variation(p, q) ** 2, rel=1e-12)
        assert chi_squared(p, q) <= tvb + 1e-10


def test_kl_reverse_pinsker_ratio_constant():
    # for KL the kappa_up extreme is r = max(1, max q_i/p_i)
    kl = make_generator("kl")
    rng = np.random.default_rng(61)
    ps, qs = random_prob_pairs(rng, 100, 3)
    for p, q in zip(ps, qs):
        _, tvb = reverse_pinsker(kl, p, q)
        r = max(1.0, float(np.max(q / p)))
        qmin = float(q.min())
        expected = 2.0 * r / qmin * total_variation(p, q) ** 2
        assert tvb == pytest.approx(expected, rel=1e-10)
        assert f_divergence(kl, p, q) <= expected + 1e-10


def test_chi2_tv_upper_examples():
    p = np.array([0.4, 0.6])
    assert chi2_tv_upper(p, p) == (0.0, 0.0)
    inf_l1, prob = chi2_tv_upper([0.7, 0.3], [0.5, 0.5])
    # binary uniform reference: both bounds collapse onto chi^2 itself
    assert prob == pytest.approx(0.16)
    assert inf_l1 == pytest.approx(0.16)
    # non-probability weights only produce the norm bound
    inf_l1, prob = chi2_tv_upper([1.4, 0.6], [1.0, 1.0])
    assert prob is None
    assert chi_squared([1.4, 0.6], [1.0, 1.0]) <= inf_l1 + 1e-12


def test_chi2_tv_upper_random_sweep():
    rng = np.random.default_rng(67)
    ps, qs = random_prob_pairs(rng, 1000, 4, interior=False)
    for p, q in zip(ps, qs):
        inf_l1, prob = chi2_tv_upper(p, q)
        c2 = chi_squared(p, q)
        assert c2 <= inf_l1 + 1e-10
        assert c2 <= prob + 1e-10


def test_f_lower_by_chi2():
    kl = make_generator("kl")
    p = np.array([0.3, 0.7])
    bound, holds = f_lower_by_chi2(kl, p, p)
    assert bound == 0.0 and holds
    # degenerate constant: lins(0) has L = 0, vacuous bound
    zero = make_generator("lins", theta=0.0)
    bound, holds = f_lower_by_chi2(zero, [0.3, 0.7], [0.5, 0.5])
    assert bound == 0.0 and holds
    rng = np.random.default_rng(71)
    ps, qs = random_prob_pairs(rng, 1000, 3, interior=False)
    for p, q in zip(ps, qs):
        _, holds = f_lower_by_chi2(kl, p, q)
        assert holds
