"""Markov chains as column-stochastic channels: structure and convergence.

Structural predicates (scrambling, irreducible, aperiodic, indecomposable)
classify when iteration converges; the convergence bound controls the
total-variation distance after n steps by the chi-squared contraction
coefficient of the chain at its stationary distribution.
"""

import numpy as np

from divlab import (
    bsc,
    convergence_bound,
    eta_chi2,
    iterate,
    noisy_typewriter,
    stationary_distribution,
    structure,
    total_variation,
)


def describe(name, W):
    st = structure(W)
    print(f"  {name}:")
    print(
        f"    scrambling={st.scrambling} irreducible={st.irreducible} "
        f"aperiodic={st.aperiodic} indecomposable={st.indecomposable}"
    )
    print(
        f"    stationary={np.round(st.stationary, 4)} unique={st.stationary_unique} "
        f"positivity_index={st.positivity_index}"
    )


print("=" * 78)
print("Structural zoo")
print("=" * 78)
describe("BSC(0.3)", bsc(0.3))
describe("noisy typewriter (not scrambling: columns 1 and 3 orthogonal)",
         noisy_typewriter())
const = np.zeros((3, 3))
const[1, :] = 1.0
describe("constant channel (scrambling but not irreducible)", const)
describe("two-cycle (irreducible but periodic)", np.array([[0.0, 1.0], [1.0, 0.0]]))

print()
print("=" * 78)
print("Convergence of the noisy typewriter from a vertex")
print("=" * 78)
W = noisy_typewriter()
pi, _ = stationary_distribution(W)
eta = eta_chi2(W, pi)
print(f"  eta_chi2(W, pi) = {eta:.6f}")
e0 = np.eye(4)[0]
print(f"  {'n':>3} {'TV(W^n e0, pi)':>16} {'general bound':>15} {'full-support':>14}")
for n in (1, 2, 4, 8, 16):
    tv, general, full = convergence_bound(W, pi, e0, n)
    print(f"  {n:>3} {tv:>16.8f} {general:>15.8f} {full:>14.8f}")

print()
print("Iteration is exactly matrix powering:")
p5 = iterate(W, e0, 5)
print(f"  iterate(W, e0, 5)      = {np.round(p5, 6)}")
print(f"  matrix_power(W,5) @ e0 = {np.round(np.linalg.matrix_power(W, 5) @ e0, 6)}")
print(f"  TV between the two     = {total_variation(p5, np.linalg.matrix_power(W, 5) @ e0):.2e}")
