import numpy as np
import pytest

from divlab.divergence import total_variation
from divlab.markov import (
    as_channel,
    bsc,
    iterate,
    noisy_typewriter,
    stationary_distribution,
    structure,
)


def constant_channel(n, target=0):
    W = np.zeros((n, n))
    W[target, :] = 1.0
    return W


def uniform_off_diagonal(n):
    W = (np.ones((n, n)) - np.eye(n)) / (n - 1)
    return W


def two_cycle():
    return np.array([[0.0, 1.0], [1.0, 0.0]])


def test_channel_validation():
    with pytest.raises(ValueError):
        as_channel([[0.5, 0.2], [0.4, 0.8]])  # first column sums to 0.9
    with pytest.raises(ValueError):
        as_channel([[1.1, 0.0], [-0.1, 1.0]])
    W = as_channel([[1.0, 0.0], [0.0, 1.0]])
    assert W.shape == (2, 2)


def test_stationary_bsc():
    pi, unique = stationary_distribution(bsc(0.3))
    assert unique
    assert pi == pytest.approx([0.5, 0.5], abs=1e-12)


def test_stationary_identity_not_unique():
    pi, unique = stationary_distribution(np.eye(3))
    assert not unique
    assert pi.sum() == pytest.approx(1.0)
    assert np.abs(np.eye(3) @ pi - pi).sum() <= 1e-9


def test_stationary_typewriter_uniform():
    pi, unique = stationary_distribution(noisy_typewriter())
    assert unique
    assert pi == pytest.approx([0.25] * 4, abs=1e-10)


def test_structure_constant_channel():
    st = structure(constant_channel(3))
    assert st.scrambling
    assert not st.irreducible
    assert st.stationary_unique
    assert st.positivity_index is None


def test_structure_uniform_off_diagonal():
    st = structure(uniform_off_diagonal(4))
    assert st.irreducible and st.aperiodic and st.scrambling


def test_structure_noisy_typewriter():
    st = structure(noisy_typewriter())
    assert st.irreducible and st.aperiodic and st.indecomposable
    assert not st.scrambling
    # cube of the chain is strictly positive
    assert st.positivity_index == 3


def test_structure_two_cycle_periodic():
    st = structure(two_cycle())
    assert st.irreducible
    assert not st.aperiodic
    assert st.stationary_unique
    assert st.stationary == pytest.approx([0.5, 0.5])
    assert not st.scrambling
    assert not st.indecomposable  # swap chain decomposes the joint support
    assert st.positivity_index is None


def test_structure_bsc_positivity():
    st = structure(bsc(0.3))
    assert st.positivity_index == 1
    assert st.scrambling and st.irreducible and st.aperiodic and st.indecomposable


def test_structure_n_cap_validation():
    with pytest.raises(ValueError):
        structure(bsc(0.1), n_cap=2)


def test_iterate_basics():
    W = bsc(0.3)
    p = np.array([0.9, 0.1])
    assert iterate(W, p, 0) == pytest.approx(p)
    assert iterate(bsc(0.5), p, 1) == pytest.approx([0.5, 0.5])
    with pytest.raises(ValueError):
        iterate(W, [0.5, 0.3, 0.2], 1)
    with pytest.raises(ValueError):
        iterate(W, p, -1)


def test_iterate_matches_matrix_power():
    W = bsc(0.3)
    e0 = np.array([1.0, 0.0])
    expected = np.linalg.matrix_power(W, 2) @ e0
    assert iterate(W, e0, 2) == pytest.approx(expected, abs=1e-14)


def test_iterate_composition_property():
    W = noisy_typewriter()
    rng = np.random.default_rng(9)
    p = rng.dirichlet(np.ones(4))
    for m, n in ((1, 2), (3, 4), (0, 5)):
        once = iterate(W, p, m + n)
        twice = iterate(W, iterate(W, p, m), n)
        assert np.abs(once - twice).sum() <= 1e-9


def test_convergence_envelope_monotone():
    # irreducible + aperiodic: worst-vertex TV to pi decays monotonically
    for W in (bsc(0.3), noisy_typewriter(), uniform_off_diagonal(4)):
        pi, unique = stationary_distribution(W)
        assert unique
        n_sym = W.shape[0]
        seq = []
        for n in range(12):
            worst = max(
                total_variation(iterate(W, np.eye(n_sym)[x], n), pi)
                for x in range(n_sym)
            )
            seq.append(worst)
        diffs = np.diff(seq)
        assert np.all(diffs <= 1e-12)
