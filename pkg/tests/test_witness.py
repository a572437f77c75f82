import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entbound.concurrence import pure_concurrence
from entbound.errors import (
    FamilyMismatch,
    NonMonotoneFamily,
    ParameterOutOfRange,
)
from entbound.oracle import (
    SamplerConfig,
    conjugate_by_local_unitaries,
    random_product_pure,
    random_single_qubit_unitaries,
)
from entbound.states import (
    DensityMatrix,
    example4_family,
    ghz_noise_family,
    ghz_state,
    w_state,
    white_noise_mix,
)
from entbound.witness import (
    Source,
    WitnessVerdict,
    certified_bound,
    detect_k_nonseparability,
    detection_threshold,
    k_nonsep_threshold,
)


def k2_threshold_reference(n: int, d: int) -> float:
    """Independently coded k=2 (genuine multipartite) threshold."""
    if n % 2 == 1:
        tail = 2 * sum(math.comb(n, i) / d**i for i in range(1, (n - 1) // 2 + 1))
    else:
        tail = 2 * sum(math.comb(n, i) / d**i for i in range(1, n // 2))
        tail += math.comb(n, n // 2) / d ** (n // 2)
    return 2 ** (1 - n / 2) * math.sqrt(2**n - 4 + 2 / d - tail)


class TestThreshold:
    def test_benchmark_value(self):
        assert k_nonsep_threshold(4, 2, 3) == pytest.approx(math.sqrt(22) / 4, abs=1e-13)

    def test_two_qubits_degenerate(self):
        assert k_nonsep_threshold(2, 2, 2) == 0.0

    def test_three_qubit_biseparability_threshold(self):
        assert k_nonsep_threshold(3, 2, 2) == pytest.approx(1.0, abs=1e-12)
        # GHZ_3 exceeds it, so the pure GHZ_3 state is certified genuinely
        # multipartite entangled.
        assert pure_concurrence(ghz_state(3)) == pytest.approx(math.sqrt(1.5), abs=1e-12)
        assert pure_concurrence(ghz_state(3)) > k_nonsep_threshold(3, 2, 2)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(2, 8), d=st.integers(2, 4))
    def test_nonincreasing_in_k(self, n, d):
        values = [k_nonsep_threshold(n, d, k) for k in range(2, n + 1)]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))

    @given(n=st.integers(2, 10), d=st.integers(2, 5))
    def test_k2_specialization(self, n, d):
        assert k_nonsep_threshold(n, d, 2) == pytest.approx(
            k2_threshold_reference(n, d), abs=1e-12
        )

    def test_pure_state_block_refinement_tightens(self):
        base = k_nonsep_threshold(8, 2, 2, min_block_size=1)
        for a in (2, 3, 4):
            assert k_nonsep_threshold(8, 2, 2, min_block_size=a) <= base + 1e-12

    def test_parameter_validation(self):
        with pytest.raises(ParameterOutOfRange):
            k_nonsep_threshold(4, 2, 1)
        with pytest.raises(ParameterOutOfRange):
            k_nonsep_threshold(4, 2, 5)
        with pytest.raises(ParameterOutOfRange):
            k_nonsep_threshold(4, 1, 2)
        with pytest.raises(ParameterOutOfRange):
            k_nonsep_threshold(4, 2, 3, min_block_size=2)


class TestSoundnessSampling:
    def test_fully_product_states_below_threshold(self):
        for n in (3, 4, 5):
            thr = k_nonsep_threshold(n, 2, n)
            cfg = SamplerConfig(n, seed=900 + n, count=50)
            for psi in random_product_pure(cfg, [[q] for q in range(1, n + 1)]):
                assert pure_concurrence(psi) <= thr + 1e-10

    def test_bipartite_product_states_below_k2_threshold(self):
        thr = k_nonsep_threshold(4, 2, 2)
        partitions = [[[1], [2, 3, 4]], [[1, 2], [3, 4]], [[1, 3], [2, 4]],
                      [[1, 2, 3], [4]], [[1, 4], [2, 3]]]
        for i, partition in enumerate(partitions):
            cfg = SamplerConfig(4, seed=950 + i, count=20)
            for psi in random_product_pure(cfg, partition):
                assert pure_concurrence(psi) <= thr + 1e-10


class TestDetect:
    def test_bell_pair_family_crossing_points(self):
        family = example4_family()
        above = detect_k_nonseparability(family.state_at(0.93), 3, Source.THEOREM1)
        below = detect_k_nonseparability(family.state_at(0.92), 3, Source.THEOREM1)
        assert above.detected and not below.detected
        assert above.threshold == pytest.approx(math.sqrt(22) / 4, abs=1e-13)

    def test_ghz_family_crossing_points(self):
        family = ghz_noise_family(4)
        above = detect_k_nonseparability(family.state_at(0.90), 3, Source.GHZ_EXACT)
        below = detect_k_nonseparability(family.state_at(0.89), 3, Source.GHZ_EXACT)
        assert above.detected and not below.detected

    def test_maximally_mixed_never_detected(self):
        rho = DensityMatrix(4, np.eye(16, dtype=complex) / 16)
        for k in (2, 3, 4):
            v = detect_k_nonseparability(rho, k, Source.THEOREM1)
            assert not v.detected
            assert v.certified_lower_bound_on_C == 0.0

    def test_pure_exact_source(self):
        rho = ghz_state(4).density_matrix()
        v = detect_k_nonseparability(rho, 4, Source.PURE_EXACT)
        assert v.detected
        assert v.certified_lower_bound_on_C == pytest.approx(
            pure_concurrence(ghz_state(4)), abs=1e-10
        )

    def test_pure_exact_rejects_mixed(self):
        rho = white_noise_mix(ghz_state(4), 0.5)
        with pytest.raises(FamilyMismatch):
            detect_k_nonseparability(rho, 3, Source.PURE_EXACT)

    def test_ghz_exact_rejects_other_states(self):
        rho = white_noise_mix(w_state(4), 0.9)
        with pytest.raises(FamilyMismatch):
            detect_k_nonseparability(rho, 3, Source.GHZ_EXACT)

    def test_user_supplied_bound(self):
        rho = DensityMatrix(4, np.eye(16, dtype=complex) / 16)
        v = detect_k_nonseparability(rho, 3, Source.USER_SUPPLIED, user_bound=1.2)
        assert v.detected
        with pytest.raises(ParameterOutOfRange):
            detect_k_nonseparability(rho, 3, Source.USER_SUPPLIED)

    def test_verdict_invariant_enforced(self):
        with pytest.raises(ParameterOutOfRange):
            WitnessVerdict(4, 2, 3, 1.0, 2.0, Source.THEOREM1, detected=False)
        with pytest.raises(ParameterOutOfRange):
            WitnessVerdict(4, 2, 5, 1.0, 0.5, Source.THEOREM1, detected=False)

    def test_detection_invariant_under_local_unitaries(self, rng):
        family = example4_family()
        for t in (0.93, 0.92):
            rho = family.state_at(t)
            us = random_single_qubit_unitaries(rng, 4)
            rotated = conjugate_by_local_unitaries(rho, us)
            v0 = detect_k_nonseparability(rho, 3, Source.THEOREM1)
            v1 = detect_k_nonseparability(rotated, 3, Source.THEOREM1)
            assert v0.detected == v1.detected


class TestDetectionThreshold:
    def test_bell_pair_family_k3(self):
        x = detection_threshold(example4_family(), 3, Source.THEOREM1)
        assert x == pytest.approx(0.9243, abs=1e-4)

    def test_ghz_exact_k3(self):
        x = detection_threshold(ghz_noise_family(4), 3, Source.GHZ_EXACT)
        assert x == pytest.approx(0.8991, abs=1e-4)

    def test_entanglement_mode(self):
        x = detection_threshold(example4_family(), None, Source.THEOREM1)
        assert x == pytest.approx(1 / 3, abs=1e-4)

    def test_no_crossing_sentinel(self):
        # k=2 threshold (1.369) lies above the family's maximum bound (1.323).
        assert detection_threshold(ghz_noise_family(4), 2, Source.GHZ_EXACT) is None

    def test_non_monotone_family_rejected(self):
        from entbound.states import example4_state

        class Bump:
            # folds the parameter back on itself, so the T1 bound rises
            # and then falls
            n_qubits = 4
            base = example4_state()

            def state_at(self, x):
                return white_noise_mix(example4_state(), 1.0 - abs(2 * x - 1))

        with pytest.raises(NonMonotoneFamily):
            detection_threshold(Bump(), 3, Source.THEOREM1)

    def test_ghz_exact_requires_ghz_family(self):
        with pytest.raises(FamilyMismatch):
            detection_threshold(example4_family(), 3, Source.GHZ_EXACT)


class TestCertifiedBound:
    def test_theorem_sources_match_reports(self):
        rho = white_noise_mix(w_state(4), 0.9)
        from entbound.bounds import theorem1_bound
        from entbound.concurrence import pairwise_table

        expected = theorem1_bound(pairwise_table(rho)).bound_on_C
        assert certified_bound(rho, Source.THEOREM1) == pytest.approx(expected, abs=1e-14)

    def test_ghz_exact_recovers_visibility(self):
        rho = white_noise_mix(ghz_state(5), 0.77)
        from entbound.bounds import ghz_noise_exact_concurrence

        assert certified_bound(rho, Source.GHZ_EXACT) == pytest.approx(
            ghz_noise_exact_concurrence(5, 0.77), abs=1e-10
        )
