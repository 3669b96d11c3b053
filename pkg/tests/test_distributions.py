import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from models import Distribution, Event, OutcomeSpace
from engine.core import condition, conditional_probability, event_probability, validate_distribution
from engine.errors import (
    DimensionMismatch,
    NegativeWeight,
    NotNormalized,
    UnknownName,
    ValidationError,
    ZeroProbabilityEvent,
)

SPACE = OutcomeSpace(["w1", "w2", "w3", "w4"])


def test_validate_keeps_weights_as_given():
    d = validate_distribution(SPACE, [0.1, 0.2, 0.3, 0.4])
    assert d.as_list() == [0.1, 0.2, 0.3, 0.4]
    assert d.probability_of("w3") == 0.3


def test_weights_are_read_only():
    d = validate_distribution(SPACE, [0.25, 0.25, 0.25, 0.25])
    with pytest.raises(ValueError):
        d.weights[0] = 1.0


def test_negative_weight_is_reported_before_normalization():
    with pytest.raises(NegativeWeight):
        validate_distribution(SPACE, [-0.1, 0.5, 0.3, 0.3])


def test_sum_outside_tolerance_is_rejected():
    with pytest.raises(NotNormalized):
        validate_distribution(SPACE, [0.3, 0.3, 0.3, 0.2])


def test_sum_inside_tolerance_is_accepted():
    d = validate_distribution(SPACE, [0.25, 0.25, 0.25, 0.25 + 5e-10])
    assert d.weights[3] == 0.25 + 5e-10


def test_renormalize_divides_by_total():
    d = validate_distribution(SPACE, [1, 1, 1, 1], renormalize=True)
    assert d.as_list() == [0.25] * 4


def test_wrong_length_is_a_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        validate_distribution(SPACE, [0.5, 0.5])


def test_outcome_space_rejects_duplicates_and_unknown_labels():
    with pytest.raises(ValidationError):
        OutcomeSpace(["a", "a"])
    with pytest.raises(UnknownName):
        SPACE.index("w9")


def test_event_probability_of_empty_and_full_events():
    d = validate_distribution(SPACE, [0.1, 0.2, 0.3, 0.4])
    assert event_probability(d, Event.empty(SPACE)) == 0.0
    assert event_probability(d, Event.full(SPACE)) == pytest.approx(1.0, abs=1e-12)


def test_condition_zeroes_outside_and_renormalizes(jeffrey_case):
    p, a, _ = jeffrey_case
    given_a = condition(p, a)
    np.testing.assert_allclose(given_a.weights, [0.6, 0.4, 0.0, 0.0], atol=1e-12, rtol=0)


def test_condition_on_zero_probability_event():
    d = validate_distribution(SPACE, [0.5, 0.5, 0.0, 0.0])
    with pytest.raises(ZeroProbabilityEvent):
        condition(d, Event.from_labels(SPACE, ["w3", "w4"]))


def test_conditional_probability(jeffrey_case):
    p, a, b = jeffrey_case
    assert conditional_probability(p, b, a) == pytest.approx(0.6, abs=1e-12)
    assert conditional_probability(p, b, a.complement()) == pytest.approx(0.2, abs=1e-12)


def test_event_algebra():
    a = Event.from_labels(SPACE, ["w1", "w2"])
    b = Event.from_labels(SPACE, ["w2", "w3"])
    assert a.intersection(b) == Event.from_labels(SPACE, ["w2"])
    assert a.complement().indices == [2, 3]
    assert str(a) == "{w1, w2}"


@st.composite
def distributions(draw):
    raw = draw(st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=2, max_size=10))
    space = OutcomeSpace.indexed(len(raw), prefix="w")
    return Distribution(space, raw, renormalize=True)


@given(distributions(), st.data())
@settings(max_examples=200)
def test_conditioning_is_a_distribution_on_the_event(d, data):
    members = data.draw(st.sets(st.integers(0, len(d) - 1), min_size=1))
    a = Event(d.space, members)
    given_a = condition(d, a)
    assert given_a.weights.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(given_a.weights[~a.mask] == 0.0)


@given(distributions(), st.data())
@settings(max_examples=200)
def test_law_of_total_probability(d, data):
    n = len(d)
    a = Event(d.space, data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1)))
    b = Event(d.space, data.draw(st.sets(st.integers(0, n - 1))))
    not_a = a.complement()
    total = (
        conditional_probability(d, b, a) * event_probability(d, a)
        + conditional_probability(d, b, not_a) * event_probability(d, not_a)
    )
    assert total == pytest.approx(event_probability(d, b), abs=1e-12)


@given(distributions(), st.data())
@settings(max_examples=200)
def test_conditional_probability_is_probability_under_the_conditioned(d, data):
    n = len(d)
    a = Event(d.space, data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    b = Event(d.space, data.draw(st.sets(st.integers(0, n - 1))))
    assert conditional_probability(d, b, a) == pytest.approx(event_probability(condition(d, a), b), abs=1e-12)
