import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from relent.errors import ConstructionError, SpaceMismatch, ZeroMassEvent
from relent.spaces import (
    Distribution,
    Event,
    JointDistribution,
    Partition,
    RandomVariable,
    SampleSpace,
    condition,
    conditional_prob,
    expectation,
    marginal,
)

from conftest import distributions, positive_distributions, space_of


class TestSampleSpace:
    def test_basic(self):
        s = SampleSpace(("a", "b", "c"))
        assert len(s) == 3
        assert "b" in s
        assert "z" not in s
        assert s.index == {"a": 0, "b": 1, "c": 2}

    def test_rejects_empty(self):
        with pytest.raises(ConstructionError) as ei:
            SampleSpace(())
        assert ei.value.code == "space.empty"

    def test_rejects_duplicates(self):
        with pytest.raises(ConstructionError) as ei:
            SampleSpace(("a", "b", "a"))
        assert ei.value.code == "space.duplicate_label"

    def test_rejects_non_string_labels(self):
        with pytest.raises(ConstructionError) as ei:
            SampleSpace(("a", 2))  # type: ignore[arg-type]
        assert ei.value.code == "space.bad_label"

    def test_equality_is_by_value(self):
        assert SampleSpace(("a", "b")) == SampleSpace(("a", "b"))
        assert SampleSpace(("a", "b")) != SampleSpace(("b", "a"))


class TestEvent:
    def test_indicator_alignment(self):
        s = SampleSpace(("a", "b", "c"))
        e = s.subset("c", "a")
        assert_allclose(e.indicator, [1.0, 0.0, 1.0])

    def test_unknown_label_rejected(self):
        s = SampleSpace(("a", "b"))
        with pytest.raises(ConstructionError) as ei:
            Event(s, frozenset({"a", "z"}))
        assert ei.value.code == "event.unknown_label"

    def test_set_algebra(self):
        s = SampleSpace(("a", "b", "c", "d"))
        e = s.subset("a", "b")
        f = s.subset("b", "c")
        assert e.intersect(f).members == {"b"}
        assert e.complement().members == {"c", "d"}
        assert e.difference(f).members == {"a"}
        assert e.intersect(f).issubset(e)

    def test_cross_space_rejected(self):
        e = SampleSpace(("a", "b")).subset("a")
        f = SampleSpace(("x", "y")).subset("x")
        with pytest.raises(SpaceMismatch):
            e.intersect(f)


class TestDistribution:
    def test_uniform(self):
        s = space_of(4)
        d = Distribution.uniform(s)
        assert_allclose(d.array, [0.25] * 4)

    def test_prob(self):
        s = SampleSpace(("a", "b", "c"))
        d = Distribution(s, (0.5, 0.3, 0.2))
        assert d.prob(s.subset("a", "c")) == pytest.approx(0.7)
        assert d.prob(s.subset()) == 0.0

    def test_rejects_length_mismatch(self):
        with pytest.raises(ConstructionError) as ei:
            Distribution(space_of(3), (0.5, 0.5))
        assert ei.value.code == "dist.length_mismatch"

    def test_rejects_negative(self):
        with pytest.raises(ConstructionError) as ei:
            Distribution(space_of(2), (1.1, -0.1))
        assert ei.value.code == "dist.negative_weight"

    def test_rejects_bad_sum(self):
        with pytest.raises(ConstructionError) as ei:
            Distribution(space_of(2), (0.5, 0.6))
        assert ei.value.code == "dist.sum_not_one"

    def test_rejects_nan(self):
        with pytest.raises(ConstructionError) as ei:
            Distribution(space_of(2), (float("nan"), 1.0))
        assert ei.value.code == "dist.not_finite"

    def test_tolerates_tiny_sum_error(self):
        # 0.1 added ten times misses 1.0 by float noise; stays within tolerance
        d = Distribution(space_of(10), (0.1,) * 10)
        assert d.prob(d.space.whole()) == pytest.approx(1.0)

    def test_array_is_readonly(self):
        d = Distribution.uniform(space_of(3))
        with pytest.raises(ValueError):
            d.array[0] = 0.9

    @given(distributions())
    def test_simplex_invariants(self, d: Distribution):
        assert min(d.weights) >= 0.0
        assert math.fsum(d.weights) == pytest.approx(1.0, abs=1e-9)


class TestRandomVariable:
    def test_from_mapping_aligns_to_space_order(self):
        s = SampleSpace(("a", "b", "c"))
        f = RandomVariable.from_mapping(s, {"c": 3.0, "a": 1.0, "b": 2.0})
        assert f.values == (1.0, 2.0, 3.0)

    def test_from_mapping_requires_totality(self):
        s = SampleSpace(("a", "b"))
        with pytest.raises(ConstructionError) as ei:
            RandomVariable.from_mapping(s, {"a": 1.0})
        assert ei.value.code == "variable.not_total"

    def test_from_mapping_rejects_unknown(self):
        s = SampleSpace(("a", "b"))
        with pytest.raises(ConstructionError) as ei:
            RandomVariable.from_mapping(s, {"a": 1.0, "b": 2.0, "z": 3.0})
        assert ei.value.code == "variable.unknown_label"

    def test_rejects_non_finite(self):
        with pytest.raises(ConstructionError) as ei:
            RandomVariable(space_of(2), (1.0, float("inf")))
        assert ei.value.code == "variable.not_finite"


class TestPartition:
    def test_valid(self):
        s = SampleSpace(("a", "b", "c", "d"))
        p = Partition.from_labels(s, [("a", "b"), ("c",), ("d",)])
        assert len(p.cells) == 3
        assert p.space == s

    def test_rejects_overlap(self):
        s = SampleSpace(("a", "b", "c"))
        with pytest.raises(ConstructionError) as ei:
            Partition.from_labels(s, [("a", "b"), ("b", "c")])
        assert ei.value.code == "partition.overlapping_cells"

    def test_rejects_gap(self):
        s = SampleSpace(("a", "b", "c"))
        with pytest.raises(ConstructionError) as ei:
            Partition.from_labels(s, [("a",), ("b",)])
        assert ei.value.code == "partition.not_exhaustive"

    def test_rejects_empty_cell(self):
        s = SampleSpace(("a", "b"))
        with pytest.raises(ConstructionError) as ei:
            Partition.from_labels(s, [("a", "b"), ()])
        assert ei.value.code == "partition.empty_cell"


class TestJointDistribution:
    def test_shape_validation(self):
        with pytest.raises(ConstructionError) as ei:
            JointDistribution(space_of(2), space_of(3), ((0.5, 0.5), (0.0, 0.0)))
        assert ei.value.code == "joint.shape_mismatch"

    def test_independent_marginals(self):
        p = Distribution(space_of(2), (0.3, 0.7))
        q = Distribution(SampleSpace(("x", "y", "z")), (0.2, 0.5, 0.3))
        j = JointDistribution.independent(p, q)
        assert_allclose(marginal(j, "row").array, p.array)
        assert_allclose(marginal(j, "col").array, q.array)

    def test_identity_coupling(self):
        d = Distribution(space_of(3), (0.2, 0.3, 0.5))
        j = JointDistribution.identity_coupling(d)
        assert_allclose(j.array, np.diag([0.2, 0.3, 0.5]))
        assert_allclose(marginal(j, "row").array, d.array)
        assert_allclose(marginal(j, "col").array, d.array)


class TestCondition:
    def test_known_values(self):
        # restricting (0.1, 0.2, 0.7) to the last two outcomes gives (0, 2/9, 7/9)
        s = space_of(3)
        d = Distribution(s, (0.1, 0.2, 0.7))
        out = condition(d, s.subset("w1", "w2"))
        assert_allclose(out.array, [0.0, 2.0 / 9.0, 7.0 / 9.0], rtol=0, atol=1e-15)

    def test_zero_mass_rejected(self):
        s = space_of(3)
        d = Distribution(s, (0.5, 0.5, 0.0))
        with pytest.raises(ZeroMassEvent):
            condition(d, s.subset("w2"))

    def test_empty_event_rejected(self):
        d = Distribution.uniform(space_of(2))
        with pytest.raises(ZeroMassEvent):
            condition(d, d.space.subset())

    @given(positive_distributions(), st.data())
    def test_idempotent(self, d: Distribution, data):
        labels = data.draw(
            st.lists(st.sampled_from(d.space.outcomes), min_size=1, unique=True)
        )
        e = d.space.subset(*labels)
        once = condition(d, e)
        twice = condition(once, e)
        assert_allclose(twice.array, once.array, rtol=0, atol=1e-15)
        assert once.prob(e) == pytest.approx(1.0)

    @given(positive_distributions())
    def test_whole_space_is_identity(self, d: Distribution):
        assert_allclose(condition(d, d.space.whole()).array, d.array, rtol=0, atol=1e-15)


class TestExpectation:
    def test_known_value(self):
        s = space_of(3)
        d = Distribution(s, (0.2, 0.3, 0.5))
        f = RandomVariable(s, (1.0, 2.0, 3.0))
        assert expectation(d, f) == pytest.approx(2.3)

    def test_cross_space_rejected(self):
        d = Distribution.uniform(space_of(2))
        f = RandomVariable(space_of(3), (1.0, 2.0, 3.0))
        with pytest.raises(SpaceMismatch):
            expectation(d, f)

    @given(positive_distributions())
    def test_constant_variable(self, d: Distribution):
        f = RandomVariable(d.space, (4.2,) * len(d.space))
        assert expectation(d, f) == pytest.approx(4.2)


class TestConditionalProb:
    def test_matches_ratio(self):
        s = SampleSpace(("a", "b", "c", "d"))
        d = Distribution(s, (0.1, 0.2, 0.3, 0.4))
        a = s.subset("a", "c")
        b = s.subset("c", "d")
        assert conditional_prob(d, a, b) == pytest.approx(0.3 / 0.7)

    def test_zero_mass_condition_rejected(self):
        s = space_of(2)
        d = Distribution(s, (1.0, 0.0))
        with pytest.raises(ZeroMassEvent):
            conditional_prob(d, s.subset("w0"), s.subset("w1"))

    @given(positive_distributions())
    def test_conditioning_on_whole_space(self, d: Distribution):
        a = d.space.subset(d.space.outcomes[0])
        assert conditional_prob(d, a, d.space.whole()) == pytest.approx(d.weights[0])

    @given(positive_distributions(), st.data())
    def test_agrees_with_condition_then_prob(self, d: Distribution, data):
        labels = data.draw(
            st.lists(st.sampled_from(d.space.outcomes), min_size=1, unique=True)
        )
        b = d.space.subset(*labels)
        a = d.space.subset(d.space.outcomes[0])
        assert conditional_prob(d, a, b) == pytest.approx(condition(d, b).prob(a))
