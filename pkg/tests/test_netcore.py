import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metastable import (
    Constant,
    EmptyRate,
    NonpositiveEpsilon,
    Periodic,
    RateSpec,
    SequenceSpec,
    UnsupportedSampling,
    affine_sampling,
    brute_min_uniform_rate,
    check_rate,
    eps_cauchy_exact,
    metastable_witness,
    monotone_uniform_rate,
    osc_eta_exact,
    osc_eta_upper,
    osc_segment,
    osc_total_exact,
    periodicity_bound,
    rate_witness,
    sampling_from_function,
    sequence_from_csv,
    sequence_from_json,
    sequence_to_json,
    uniform_rate_audit,
)
from metastable.generators import (
    alternating_sequence,
    random_monotone_sequence,
    random_tail_sequence,
    step_sequence,
)

ETA1 = affine_sampling(1)


def harmonic_prefix(n):
    return SequenceSpec(prefix=tuple(F(1, k + 1) for k in range(n)),
                        tail=Constant())


class TestSequenceSpec:
    def test_constant_tail_values(self):
        s = SequenceSpec(prefix=(1, 2, 3), tail=Constant())
        assert [s.value(i) for i in range(6)] == [1, 2, 3, 3, 3, 3]

    def test_periodic_tail_values(self):
        s = SequenceSpec(prefix=(9, 0, 1), tail=Periodic(2))
        assert [s.value(i) for i in range(7)] == [9, 0, 1, 0, 1, 0, 1]

    def test_bound_validation(self):
        SequenceSpec(prefix=(0, 1), tail=Constant(), bound=1)
        with pytest.raises(ValueError):
            SequenceSpec(prefix=(0, 2), tail=Constant(), bound=1)

    def test_prefix_must_cover_period(self):
        with pytest.raises(ValueError):
            SequenceSpec(prefix=(1,), tail=Periodic(2))

    def test_float_mode(self):
        s = SequenceSpec(prefix=(0.0, 0.5), tail=Constant(), mode="float")
        assert eps_cauchy_exact(s, 0)
        assert metastable_witness(s, 0.5 - 1e-15, ETA1, 3) == 0

    def test_tuple_values_sup_metric(self):
        s = SequenceSpec(prefix=((0, 0), (1, F(1, 2))), tail=Constant())
        assert osc_segment(s, {0, 1}) == 1


class TestOscSegment:
    def test_constant(self):
        s = SequenceSpec(prefix=(F(1, 3),), tail=Constant())
        assert osc_segment(s, range(10)) == 0

    def test_alternating_pair(self):
        assert osc_segment(alternating_sequence(), {3, 4}) == 2

    def test_monotone_extremes(self):
        assert osc_segment(harmonic_prefix(5), range(5)) == F(4, 5)

    def test_singleton(self):
        assert osc_segment(alternating_sequence(), {7}) == 0


class TestWitness:
    def test_constant_witness_zero(self):
        s = SequenceSpec(prefix=(5,), tail=Constant())
        assert metastable_witness(s, 0, ETA1, 10) == 0

    def test_alternating_never(self):
        assert metastable_witness(alternating_sequence(), 1, ETA1, 100) is None

    def test_step_window_before_step(self):
        assert metastable_witness(step_sequence(5), F(1, 2), ETA1, 10) == 0


class TestCheckRate:
    def test_step_straddle_fails(self):
        for M in (0, 1, 4):
            seq = step_sequence(M)
            for eps in (F(1, 10), F(1, 2), F(9, 10)):
                assert osc_segment(seq, ETA1.eta(M)) == 1
                assert not check_rate(seq, eps, ETA1, {M})

    def test_constant_trivial(self):
        s = SequenceSpec(prefix=(2,), tail=Constant())
        assert check_rate(s, 0, ETA1, {0})

    def test_monotone_example(self):
        s = SequenceSpec(
            prefix=(0, F(3, 10), F(1, 2), F(3, 5), F(13, 20)), tail=Constant()
        )
        assert check_rate(s, F(2, 5), ETA1, {0, 1, 2})
        assert osc_segment(s, ETA1.eta(2)) == F(1, 10)

    def test_empty_rate(self):
        with pytest.raises(EmptyRate):
            check_rate(alternating_sequence(), 1, ETA1, set())

    def test_rate_witness_reports_first(self):
        assert rate_witness(step_sequence(0), F(1, 2), ETA1, {0, 1, 2}) == 1

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_witness_monotonicity(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        seq = random_tail_sequence(rng)
        eps = F(data.draw(st.integers(0, 8)), 4)
        E = frozenset(data.draw(st.sets(st.integers(0, 8), min_size=1)))
        if check_rate(seq, eps, ETA1, E):
            eps2 = eps + F(data.draw(st.integers(0, 4)), 3)
            extra = frozenset(data.draw(st.sets(st.integers(0, 12))))
            assert check_rate(seq, eps2, ETA1, E | extra)


class TestMonotoneUniformRate:
    def test_eps_one(self):
        assert monotone_uniform_rate(1, ETA1) == frozenset({0, 1})

    def test_doubling(self):
        eta = sampling_from_function(lambda n: 2 * n + 1)
        assert monotone_uniform_rate(F(2, 5), eta) == frozenset(range(8))

    def test_half(self):
        assert monotone_uniform_rate(F(1, 2), ETA1) == frozenset({0, 1, 2})

    def test_nonpositive(self):
        with pytest.raises(NonpositiveEpsilon):
            monotone_uniform_rate(0, ETA1)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10**6),
           eps=st.sampled_from([F(1), F(1, 2), F(2, 5), F(1, 4), F(1, 10)]),
           w=st.integers(1, 3))
    def test_rate_validates_on_random_monotone(self, seed, eps, w):
        rng = random.Random(seed)
        seq = random_monotone_sequence(rng)
        eta = affine_sampling(w)
        assert check_rate(seq, eps, eta, monotone_uniform_rate(eps, eta))


class TestOscEta:
    def test_constant_zero(self):
        s = SequenceSpec(prefix=(1, 2, 7), tail=Constant())
        assert osc_eta_exact(s, ETA1) == 0

    def test_alternating_two(self):
        assert osc_eta_exact(alternating_sequence(), ETA1) == 2

    def test_prefix_then_period(self):
        s = SequenceSpec(prefix=(0, 10, 0, 1), tail=Periodic(2))
        assert osc_eta_exact(s, ETA1) == 1

    def test_requires_affine(self):
        eta = sampling_from_function(lambda n: 2 * n + 1)
        with pytest.raises(UnsupportedSampling):
            osc_eta_exact(alternating_sequence(), eta)

    def test_upper_bound_flagged(self):
        got = osc_eta_upper(harmonic_prefix(12), ETA1, 10)
        assert got.upper_bound_only
        assert got.value == F(1, 11) - F(1, 12)

    def test_upper_matches_exact_on_alternating(self):
        got = osc_eta_upper(alternating_sequence(), ETA1, 50)
        assert got.value == 2 == osc_eta_exact(alternating_sequence(), ETA1)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6), w=st.integers(1, 3))
    def test_exact_threshold_brackets_witnesses(self, seed, w):
        # the exact eta-oscillation is the sharp witness threshold at the
        # periodicity bound: witnesses exist at or above it, never below
        rng = random.Random(seed)
        seq = random_tail_sequence(rng, max_prefix=5, max_period=3)
        eta = affine_sampling(w)
        B = periodicity_bound(seq, eta)
        exact = osc_eta_exact(seq, eta)
        for above in (exact, exact + F(1, 9), exact + 1):
            assert metastable_witness(seq, above, eta, B) is not None
        if exact > 0:
            for below in (exact * F(1, 2), exact * F(8, 9)):
                assert metastable_witness(seq, below, eta, B) is None

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6), w=st.integers(1, 3))
    def test_upper_nonincreasing_reaches_exact(self, seed, w):
        rng = random.Random(seed)
        seq = random_tail_sequence(rng, max_prefix=5, max_period=3)
        eta = affine_sampling(w)
        B = periodicity_bound(seq, eta)
        exact = osc_eta_exact(seq, eta)
        prev = None
        for budget in range(B + 1):
            value = osc_eta_upper(seq, eta, budget).value
            if prev is not None:
                assert value <= prev
            prev = value
        assert prev == exact


class TestPeriodicityBound:
    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10**6), w=st.integers(1, 3))
    def test_no_smaller_window_beyond_bound(self, seed, w):
        # the infimum over all window positions is already attained within
        # the periodicity bound; scanning five times farther finds nothing new
        rng = random.Random(seed)
        seq = random_tail_sequence(rng, max_prefix=5, max_period=4)
        eta = affine_sampling(w)
        B = periodicity_bound(seq, eta)
        assert osc_eta_upper(seq, eta, 5 * B).value == osc_eta_exact(seq, eta)


class TestOscTotal:
    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_matches_deep_tail_window(self, seed):
        # oracle: the diameter of any full-period window deep in the tail
        rng = random.Random(seed)
        seq = random_tail_sequence(rng)
        start = seq.tail_start + 7 * seq.period
        window = [seq.value(n) for n in range(start, start + seq.period)]
        from metastable.netcore import osc_points

        assert osc_total_exact(seq) == osc_points(window)

    def test_constant_tail(self):
        s = SequenceSpec(prefix=(4, 4, 9, 2), tail=Constant())
        assert osc_total_exact(s) == 0

    def test_periodic(self):
        s = SequenceSpec(prefix=(0, 1, F(1, 2)), tail=Periodic(3))
        assert osc_total_exact(s) == 1

    def test_constant_valued_period(self):
        s = SequenceSpec(prefix=(3, 3), tail=Periodic(2))
        assert osc_total_exact(s) == 0

    def test_eps_cauchy(self):
        s = SequenceSpec(prefix=(0, 1), tail=Periodic(2))
        assert eps_cauchy_exact(s, 1)
        assert not eps_cauchy_exact(s, F(9, 10))
        thirds = SequenceSpec(prefix=(0, F(1, 3), F(2, 3)), tail=Periodic(3))
        assert eps_cauchy_exact(thirds, F(2, 3))

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_zero_iff_constant_valued_tail(self, seed):
        rng = random.Random(seed)
        seq = random_tail_sequence(rng)
        assert (osc_total_exact(seq) == 0) == seq.is_constant_tail()
        assert osc_total_exact(seq) <= seq.bound


class TestUniformRateAudit:
    def test_empty_family_vacuous(self):
        assert uniform_rate_audit([], F(1, 2), ETA1, {0})

    def test_counterexample_reported(self):
        fam = [SequenceSpec(prefix=(0,), tail=Constant()), step_sequence(1)]
        result = uniform_rate_audit(fam, F(1, 2), ETA1, {1})
        assert not result
        assert result.index == 1

    def test_brute_min_constants(self):
        fam = [SequenceSpec(prefix=(c,), tail=Constant()) for c in range(3)]
        assert brute_min_uniform_rate(fam, F(1, 2), ETA1, 5) == frozenset({0})

    def test_brute_min_infeasible(self):
        fam = [alternating_sequence()]
        assert brute_min_uniform_rate(fam, 1, ETA1, 20) is None

    def test_brute_min_within_monotone_rate(self):
        rng = random.Random(11)
        fam = [random_monotone_sequence(rng) for _ in range(40)]
        eps = F(1, 2)
        E = brute_min_uniform_rate(fam, eps, ETA1, 10)
        assert E is not None and E <= monotone_uniform_rate(eps, ETA1)


class TestFinitarity:
    def test_check_rate_never_reads_past_cap(self):
        calls = []

        class Spy(SequenceSpec):
            def value(self, n):
                calls.append(n)
                return super().value(n)

        seq = Spy(prefix=(0, 1, 2), tail=Constant())
        E = {0, 2}
        check_rate(seq, 0, ETA1, E)
        assert max(calls) <= max(ETA1.max_index(i) for i in E)


class TestRateSpec:
    def test_single(self):
        r = RateSpec(single={0, 1})
        assert r.rate_for() == frozenset({0, 1})

    def test_per_epsilon_keys_above_r(self):
        with pytest.raises(ValueError):
            RateSpec(r=F(1, 2), per_epsilon={F(1, 4): {0}})

    def test_empty_set_rejected(self):
        with pytest.raises(EmptyRate):
            RateSpec(single=set())

    def test_cauchy_modulus_encoding(self):
        r = RateSpec.from_cauchy_modulus({F(1, 2): 7}, ["n+1"])
        assert r.rate_for(F(1, 2), "n+1") == frozenset({7})


class TestSerialization:
    def test_json_roundtrip(self):
        s = SequenceSpec(prefix=(0, F(1, 3), 1), tail=Periodic(2), bound=2)
        data = sequence_to_json(s)
        assert data["prefix"] == ["0", "1/3", "1"]
        assert sequence_from_json(data) == s

    def test_csv(self):
        s = sequence_from_csv("0\n1/2\n3/4\n")
        assert s.prefix == (0, F(1, 2), F(3, 4))
        assert isinstance(s.tail, Constant)

    def test_float_json(self):
        s = SequenceSpec(prefix=(0.25, 0.5), tail=Constant(), mode="float")
        assert sequence_from_json(sequence_to_json(s)) == s
