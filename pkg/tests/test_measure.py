import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metastable import (
    LInfFunction,
    MeasureStructure,
    UVOrder,
    audit_integration,
    audit_preloeb,
    check_measurability,
    integrate,
    linf_from_json,
    linf_to_json,
    measure_from_json,
    measure_to_json,
    total_variation,
)
from metastable.generators import (
    random_linf,
    random_positive_measure,
    random_signed_measure,
)


def uniform(n, kind="probability"):
    omega = tuple(f"w{i}" for i in range(n))
    return MeasureStructure(
        omega=omega, weights={w: F(1, n) for w in omega}, kind=kind
    )


def trivial_algebra(n=2):
    omega = tuple(f"w{i}" for i in range(n))
    return MeasureStructure(
        omega=omega,
        weights={w: F(1, n) for w in omega},
        kind="probability",
        algebra=(frozenset(), frozenset(omega)),
    )


class TestTotalVariation:
    def test_probability(self):
        M = MeasureStructure(("w1", "w2"),
                             {"w1": F(1, 2), "w2": F(1, 2)}, "probability")
        assert total_variation(M) == 1

    def test_signed_audit(self):
        M = MeasureStructure(("w1", "w2"), {"w1": 1, "w2": -1}, "signed")
        assert total_variation(M, audit=True) == 2

    def test_zero(self):
        M = MeasureStructure(("w1",), {"w1": 0}, "signed")
        assert total_variation(M) == 0 == total_variation(M, audit=True)

    def test_fast_equals_audit_powerset_exhaustive(self):
        grid = [F(0), F(1, 2), F(-1), F(4, 3)]
        for n in (1, 2, 3):
            for weights in product(grid, repeat=n):
                M = MeasureStructure(
                    tuple(f"w{i}" for i in range(n)),
                    {f"w{i}": weights[i] for i in range(n)},
                    "signed",
                )
                assert total_variation(M) == total_variation(M, audit=True)

    def test_fast_equals_audit_up_to_six_points(self):
        base = [F(-1), F(1, 2), F(4, 3), F(0), F(-3, 4), F(2, 5)]
        for n in (4, 5, 6):
            for offset in range(3):
                weights = {
                    f"w{i}": base[(i + offset) % len(base)] for i in range(n)
                }
                M = MeasureStructure(
                    tuple(f"w{i}" for i in range(n)), weights, "signed"
                )
                assert total_variation(M) == total_variation(M, audit=True)
                family = list(M.sets())
                for A in family:
                    for B in family:
                        assert M.mu(A | B) + M.mu(A & B) == M.mu(A) + M.mu(B)


class TestAuditPreloeb:
    def test_uniform_passes(self):
        assert audit_preloeb(uniform(4)).ok

    def test_missing_complement_reported(self):
        omega = ("w0", "w1")
        M = MeasureStructure(
            omega, {"w0": F(1, 2), "w1": F(1, 2)}, "finite",
            algebra=(frozenset(), frozenset(omega), frozenset({"w0"})),
        )
        report = audit_preloeb(M)
        assert not report.ok
        failures = {e.clause for e in report.failures()}
        assert "closed under complement" in failures

    def test_intersection_closure_failure_still_audits(self):
        omega = ("w0", "w1", "w2")
        M = MeasureStructure(
            omega, {w: F(1, 3) for w in omega}, "finite",
            algebra=(frozenset(), frozenset(omega),
                     frozenset({"w0", "w1"}), frozenset({"w1", "w2"})),
        )
        report = audit_preloeb(M)
        assert not report.ok
        failures = {e.clause for e in report.failures()}
        assert "closed under intersection" in failures \
            or "closed under complement" in failures

    def test_negative_weight_in_positive_mode(self):
        M = MeasureStructure(("w0", "w1"), {"w0": F(3, 2), "w1": F(-1, 2)},
                             "finite")
        report = audit_preloeb(M)
        assert not report.ok
        assert any("0 <= mu(A)" in e.clause for e in report.failures())

    def test_probability_needs_mass_one(self):
        M = MeasureStructure(("w0",), {"w0": F(1, 2)}, "probability")
        assert not audit_preloeb(M).ok

    def test_declared_bound_checked(self):
        M = MeasureStructure(("w0",), {"w0": 2}, "finite", bound=1)
        report = audit_preloeb(M)
        assert any("declared bound" in e.clause for e in report.failures())

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**6), n=st.integers(1, 4))
    def test_modularity_every_pair(self, seed, n):
        M = random_signed_measure(random.Random(seed), n)
        family = list(M.sets())
        for A in family:
            for B in family:
                assert M.mu(A | B) + M.mu(A & B) == M.mu(A) + M.mu(B)


class TestLInf:
    def test_pos_neg_decomposition(self):
        f = LInfFunction({"a": F(3, 2), "b": F(-1, 4), "c": 0})
        assert f.pos_part() - f.neg_part() == f
        assert f.pos_part() + f.neg_part() == f.abs()
        assert f.pos_part().inf() >= 0 and f.neg_part().inf() >= 0

    def test_norm_sup_inf(self):
        f = LInfFunction({"a": -2, "b": 1})
        assert f.norm() == 2 and f.sup() == 1 and f.inf() == -2

    def test_lattice_ops(self):
        f = LInfFunction({"a": 1, "b": 0})
        g = LInfFunction({"a": 0, "b": 2})
        assert f.meet(g).values == {"a": 0, "b": 0}
        assert f.join(g).values == {"a": 1, "b": 2}

    def test_chi(self):
        chi = LInfFunction.chi(("a", "b"), {"b"})
        assert chi.values == {"a": 0, "b": 1}


class TestIntegrate:
    def test_two_term_sum(self):
        M = MeasureStructure(("w1", "w2"), {"w1": F(1, 3), "w2": F(2, 3)},
                             "probability")
        assert integrate(M, LInfFunction({"w1": 3, "w2": 0})) == 1

    def test_chi_gives_measure(self):
        rng = random.Random(3)
        M = random_positive_measure(rng, 4)
        for A in M.sets():
            assert integrate(M, LInfFunction.chi(M.omega, A)) == M.mu(A)

    def test_unit_function_total_mass(self):
        M = uniform(3, "finite")
        assert integrate(M, LInfFunction.constant(M.omega, 1)) == M.norm()

    def test_signed_bound_example(self):
        M = MeasureStructure(("w1", "w2"), {"w1": 1, "w2": -1}, "signed")
        f = LInfFunction({"w1": 1, "w2": 1})
        assert integrate(M, f) == 0
        assert abs(integrate(M, f)) <= total_variation(M, audit=True) * f.norm()

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10**6), n=st.integers(1, 4))
    def test_audit_integration_positive(self, seed, n):
        rng = random.Random(seed)
        M = random_positive_measure(rng, n)
        fs = [random_linf(rng, M.omega) for _ in range(3)]
        assert audit_integration(M, fs).ok

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10**6), n=st.integers(1, 4))
    def test_audit_integration_signed(self, seed, n):
        rng = random.Random(seed)
        M = random_signed_measure(rng, n)
        fs = [random_linf(rng, M.omega) for _ in range(3)]
        assert audit_integration(M, fs).ok


class TestMeasurability:
    def test_powerset_always_present(self):
        rng = random.Random(7)
        M = random_positive_measure(rng, 4)
        f = random_linf(rng, M.omega)
        A = check_measurability(M, f, F(0), F(1, 2))
        assert A is not None
        assert all(f(w) <= F(1, 2) for w in A)
        assert all(f(w) >= 0 for w in set(M.omega) - A)

    def test_trivial_algebra_absent(self):
        M = trivial_algebra()
        f = LInfFunction({"w0": 0, "w1": 1})
        assert check_measurability(M, f, F(1, 4), F(3, 4)) is None

    def test_constant_always_present(self):
        M = trivial_algebra()
        f = LInfFunction.constant(M.omega, F(1, 2))
        for u, v in ((F(0), F(1, 4)), (F(3, 4), F(1)), (F(1, 4), F(3, 4))):
            assert check_measurability(M, f, u, v) is not None

    def test_uv_order(self):
        M = uniform(2)
        f = LInfFunction.constant(M.omega, 0)
        with pytest.raises(UVOrder):
            check_measurability(M, f, 1, 1)


class TestSerialization:
    def test_measure_roundtrip(self):
        M = MeasureStructure(("w1", "w2"), {"w1": F(1, 3), "w2": F(2, 3)},
                             "probability", anchor="w2")
        again = measure_from_json(measure_to_json(M))
        assert again == M

    def test_explicit_algebra_roundtrip(self):
        M = trivial_algebra()
        again = measure_from_json(measure_to_json(M))
        assert set(again.algebra) == set(M.algebra)

    def test_linf_roundtrip(self):
        f = LInfFunction({"a": F(1, 3), "b": -2})
        assert linf_from_json(linf_to_json(f)) == f
