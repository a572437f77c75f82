"""Exact concurrence computations.

The multipartite pure-state concurrence, squared bipartite-cut concurrences,
the two-qubit mixed-state spectrum formula, and the sigma_y polynomial
invariant that enters the even-qubit monogamy equality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConvergenceFailure, EmptySubset, WrongDimension
from .linalg import SIGMA_Y, SubsetMask
from .states import DensityMatrix, PureState

# Floating-point dust below theoretical zeros: radicands and max{.,0}
# arguments in [-ZERO_DUST, 0) are clamped to 0 before square roots.
ZERO_DUST = 1e-10


def _clamp_dust(x: float) -> float:
    return 0.0 if -ZERO_DUST <= x < 0.0 else x


def _schmidt_squares(psi: PureState, subset: SubsetMask) -> np.ndarray:
    """Squared Schmidt coefficients of a pure state across subset|rest.

    Reshapes the state vector along the cut and takes singular values, so
    no 2^N x 2^N density matrix is ever materialized.
    """
    n = psi.n_qubits
    if subset.n_qubits != n:
        raise WrongDimension(f"mask over {subset.n_qubits} qubits, state has {n}")
    if subset.bits == 0 or subset.size == n:
        raise EmptySubset("subset and complement must both be nonempty")
    axes = [q - 1 for q in subset.qubits]
    rest = [a for a in range(n) if a not in axes]
    m = psi.amplitudes.reshape((2,) * n).transpose(axes + rest)
    m = m.reshape(2 ** len(axes), 2 ** len(rest))
    try:
        s = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(str(exc)) from exc
    return s * s


def subset_purity(psi: PureState, subset: SubsetMask) -> float:
    """Tr(rho_S^2) of the reduced state on subset S: sum of lambda_i^2."""
    s2 = _schmidt_squares(psi, subset)
    return float(np.dot(s2, s2))


def subset_purity_deficit(psi: PureState, subset: SubsetMask) -> float:
    """1 - Tr(rho_S^2), evaluated as sum_{i != j} lambda_i lambda_j.

    The cross-term form avoids the cancellation of 1 - purity, so states
    that are exactly product across the cut come out at ~1e-32 instead of
    ~1e-16, which keeps sqrt-amplified concurrences of product states well
    below every zero tolerance.
    """
    s2 = _schmidt_squares(psi, subset)
    total = float(s2.sum())
    return float(np.dot(s2, total - s2))


def purity_sum(psi: PureState) -> float:
    """Sum of Tr(rho_S^2) over all 2^N - 2 proper nonempty subsets S.

    Complementary subsets of a pure state have equal purity, so only the
    canonical half of the masks is evaluated.
    """
    n = psi.n_qubits
    full = 2**n - 1
    total = 0.0
    for bits in range(1, full):
        if bits < (full ^ bits):
            total += 2.0 * subset_purity(psi, SubsetMask(bits, n))
    return total


def pure_concurrence(psi: PureState) -> float:
    """Multipartite concurrence of a pure N-qubit state (N >= 2).

    2^(1-N/2) sqrt(2^N - 2 - sum_S Tr rho_S^2); zero exactly on fully
    product states.  The radicand is accumulated as a sum of per-subset
    purity deficits, which is the same quantity without the cancellation.
    """
    n = psi.n_qubits
    if n < 2:
        raise WrongDimension("concurrence needs at least 2 qubits")
    full = 2**n - 1
    radicand = 0.0
    for bits in range(1, full):
        if bits < (full ^ bits):
            radicand += 2.0 * subset_purity_deficit(psi, SubsetMask(bits, n))
    radicand = _clamp_dust(radicand)
    return 2.0 ** (1 - n / 2) * math.sqrt(max(radicand, 0.0))


def cut_concurrence_squared(psi: PureState, cut: SubsetMask) -> float:
    """Squared concurrence of a pure state across the bipartition cut|rest.

    Normalized as 2 (1 - Tr rho_cut^2), which makes the bipartition
    decompositions of the squared multipartite concurrence exact identities.
    """
    return max(_clamp_dust(2.0 * subset_purity_deficit(psi, cut)), 0.0)


@dataclass(frozen=True)
class CutConcurrenceProfile:
    """All squared cut concurrences of a pure state, grouped by subset size.

    per_subset maps mask bits (increasing order) to C^2_{S|rest}; size_sums
    holds the per-size totals used by the decomposition and monogamy
    identities.
    """

    n_qubits: int
    per_subset: dict[int, float]
    size_sums: dict[int, float]

    def alternating_sum(self) -> float:
        """sum_j (-1)^(j+1) sum_{|S|=j} C^2_{S|rest}."""
        return sum((-1) ** (j + 1) * s for j, s in self.size_sums.items())

    def total(self) -> float:
        return sum(self.size_sums.values())


def cut_profile(psi: PureState) -> CutConcurrenceProfile:
    n = psi.n_qubits
    per_subset: dict[int, float] = {}
    size_sums = {j: 0.0 for j in range(1, n)}
    for bits in range(1, 2**n - 1):
        mask = SubsetMask(bits, n)
        v = cut_concurrence_squared(psi, mask)
        per_subset[bits] = v
        size_sums[mask.size] += v
    return CutConcurrenceProfile(n, per_subset, size_sums)


_YY = np.kron(SIGMA_Y, SIGMA_Y)


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Concurrence of a two-qubit mixed state.

    max{lambda_1 - lambda_2 - lambda_3 - lambda_4, 0} where lambda_i are the
    decreasing square roots of the spectrum of rho (sy x sy) rho* (sy x sy).
    Computed through the Hermitian matrix sqrt(rho) rho~ sqrt(rho), which has
    the same spectrum and avoids a non-Hermitian eigensolver.
    """
    if rho.n_qubits != 2:
        raise WrongDimension(f"two-qubit formula applied to {rho.n_qubits} qubits")
    m = rho.matrix
    rho_tilde = _YY @ m.conj() @ _YY
    root = linalg.psd_sqrt(m)
    r = root @ rho_tilde @ root
    r = (r + r.conj().T) / 2  # scrub rounding asymmetry before eigh
    # unit trace fixes the natural scale of r, so eigenvalue dust on
    # states with vanishing concurrence gets floored to an exact zero
    lam = linalg.psd_sqrt_spectrum(r, scale=1.0)
    c = float(lam[0] - lam[1] - lam[2] - lam[3])
    return min(max(_clamp_dust(c), 0.0), 1.0)


@dataclass(frozen=True)
class PairwiseConcurrenceTable:
    """Wootters concurrence of every reduced two-qubit pair (i < j)."""

    n_qubits: int
    values: dict[tuple[int, int], float]

    def value(self, i: int, j: int) -> float:
        key = (min(i, j), max(i, j))
        if i == j or key not in self.values:
            raise WrongDimension(f"no pair ({i}, {j}) on {self.n_qubits} qubits")
        return self.values[key]

    def pairs(self):
        return sorted(self.values.items())

    @property
    def sum_of_squares(self) -> float:
        return sum(v * v for v in self.values.values())


def pairwise_table(rho: DensityMatrix) -> PairwiseConcurrenceTable:
    """Reduce to every qubit pair and apply the two-qubit formula."""
    n = rho.n_qubits
    if n < 2:
        raise WrongDimension("pairwise table needs at least 2 qubits")
    values = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        values[(i, j)] = wootters_concurrence(rho.reduced([i, j]))
    return PairwiseConcurrenceTable(n, values)


def h_invariant(psi: PureState) -> complex:
    """Polynomial invariant <psi| sy^(x n) |psi*>.

    sigma_y^(x n) maps basis index x to its bitwise complement with phase
    i^n (-1)^popcount(x), so the contraction needs no dense operator.
    Identically zero for odd n; |H| equals the concurrence for two qubits.
    """
    n = psi.n_qubits
    amps = psi.amplitudes
    idx = np.arange(2**n)
    flipped = idx ^ (2**n - 1)
    signs = np.where(np.bitwise_count(flipped) % 2 == 0, 1.0, -1.0)
    psi_tilde = (1j) ** n * signs * amps[flipped].conj()
    return complex(np.vdot(amps, psi_tilde))
