"""Analytic lower bounds on the squared mixed-state concurrence.

Three theorem bounds built from the pairwise-concurrence table (four qubits,
general N >= 5, and a sharper even-N variant), plus the closed-form exact
concurrence of the GHZ + white-noise family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .concurrence import PairwiseConcurrenceTable, pairwise_table
from .errors import ParameterOutOfRange, WrongQubitCount
from .states import DensityMatrix

THEOREMS = ("T1", "T2", "T3")

# Coefficients of the comparison bound from earlier work, kept as
# documentation constants for the four benchmark noise families
# (that bound itself is not implemented here).
PRIOR_BOUND_COEFFICIENTS = {
    "w-noise": 3.0,
    "dicke-noise": 3.0,
    "ex3": 2.0,
    "ex4": 1.0,
}

# Previously published entanglement-detection thresholds for the Dicke
# benchmark family; this package's Theorem-1 route detects at t > 0.6,
# strictly below both.
PRIOR_DICKE_DETECTION_THRESHOLDS = (0.618034, 0.636364)


@dataclass(frozen=True)
class BoundReport:
    """One certified lower bound: C^2(rho) >= coefficient * pair_sum."""

    theorem: str
    n_qubits: int
    pair_sum: float
    coefficient: float
    bound_on_C2: float
    bound_on_C: float

    def __post_init__(self):
        if self.theorem in THEOREMS:
            prod = self.coefficient * self.pair_sum
            if abs(self.bound_on_C2 - prod) > 1e-12 * max(1.0, abs(prod)):
                raise ParameterOutOfRange("bound_on_C2 must equal coefficient * pair_sum")
        if self.bound_on_C2 < 0 or self.bound_on_C < 0:
            raise ParameterOutOfRange("bounds must be nonnegative")


def theorem_coefficient(theorem: str, n: int) -> float:
    if theorem == "T1":
        return 7.0 / 8.0
    if theorem == "T2":
        return n / 2.0 ** (n - 2)
    if theorem == "T3":
        return (n - 2) / 2.0 ** (n - 3)
    raise ParameterOutOfRange(f"unknown theorem {theorem!r}")


def _report(theorem: str, table: PairwiseConcurrenceTable) -> BoundReport:
    coeff = theorem_coefficient(theorem, table.n_qubits)
    pair_sum = table.sum_of_squares
    c2 = coeff * pair_sum
    return BoundReport(theorem, table.n_qubits, pair_sum, coeff, c2, math.sqrt(c2))


def theorem1_bound(table: PairwiseConcurrenceTable) -> BoundReport:
    """Four-qubit bound: C^2 >= 7/8 sum_{i<j} C_ij^2."""
    if table.n_qubits != 4:
        raise WrongQubitCount(f"four-qubit bound applied to N={table.n_qubits}")
    return _report("T1", table)


def theorem2_bound(table: PairwiseConcurrenceTable) -> BoundReport:
    """General bound for N >= 5: C^2 >= N/2^(N-2) sum_{i<j} C_ij^2."""
    if table.n_qubits < 5:
        raise WrongQubitCount(
            f"N >= 5 bound applied to N={table.n_qubits} (use the four-qubit bound)"
        )
    return _report("T2", table)


def theorem3_bound(table: PairwiseConcurrenceTable) -> BoundReport:
    """Even-N bound for N >= 6: C^2 >= (N-2)/2^(N-3) sum_{i<j} C_ij^2."""
    n = table.n_qubits
    if n < 6 or n % 2 != 0:
        raise WrongQubitCount(f"even-N >= 6 bound applied to N={n}")
    return _report("T3", table)


def applicable_bounds(table: PairwiseConcurrenceTable) -> list[BoundReport]:
    """Every theorem bound whose qubit-count domain matches the table."""
    n = table.n_qubits
    reports = []
    if n == 4:
        reports.append(theorem1_bound(table))
    if n >= 5:
        reports.append(theorem2_bound(table))
    if n >= 6 and n % 2 == 0:
        reports.append(theorem3_bound(table))
    return reports


@dataclass(frozen=True)
class BestBound:
    """All applicable bounds for one state, strongest first."""

    table: PairwiseConcurrenceTable
    reports: tuple[BoundReport, ...]

    @property
    def best(self) -> BoundReport:
        return self.reports[0]


def best_bound(rho: DensityMatrix) -> BestBound:
    """Compute the pairwise table and rank every applicable theorem bound.

    For even N >= 6 the even-N coefficient dominates the general one, so
    that report leads, but all applicable bounds are retained.
    """
    if rho.n_qubits < 4:
        raise WrongQubitCount(f"theorem bounds need N >= 4, got {rho.n_qubits}")
    table = pairwise_table(rho)
    reports = applicable_bounds(table)
    reports.sort(key=lambda r: (r.bound_on_C2, r.coefficient), reverse=True)
    return BestBound(table, tuple(reports))


def ghz_noise_separability_edge(n: int) -> float:
    """Visibility below which the GHZ + white-noise state is fully separable."""
    return 1.0 / (2 ** (n - 1) + 1)


def ghz_noise_exact_concurrence(n: int, p: float) -> float:
    """Exact concurrence of (1-p)/2^n I + p |GHZ_n><GHZ_n|.

    sqrt((2^(n-1)-1)/2^(n-2)) * ((2^(n-1)+1) p - 1)/2^(n-1) on
    p in [1/(2^(n-1)+1), 1]; zero below that edge, where the family is
    fully separable.  At p = 1 this equals the pure GHZ concurrence.
    """
    if n < 2:
        raise ParameterOutOfRange("GHZ family needs at least 2 qubits")
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"visibility {p} outside [0, 1]")
    half = 2 ** (n - 1)
    if p < 1.0 / (half + 1):
        return 0.0
    return math.sqrt((half - 1) / 2 ** (n - 2)) * ((half + 1) * p - 1) / half
