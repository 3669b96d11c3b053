import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from models import CandidateSet, Distribution, Event, JeffreyShift, OutcomeSpace, SecondOrderDistribution
from engine.core import condition, event_probability
from engine.errors import EmptyConditioningEvent, InvalidShiftTarget
from engine.hierarchy import condition_joint, flatten, marginal_world, model_event, predictive
from engine.kinematics import c3_conditionals, c3_deviation, jeffrey_update, verify_rigidity
from engine.utils import InstanceGenerator


def test_jeffrey_shift_of_worked_example(jeffrey_case):
    p, a, b = jeffrey_case
    final = jeffrey_update(p, JeffreyShift(a, 0.7))
    assert event_probability(final, b) == pytest.approx(0.48, abs=1e-12)
    assert event_probability(final, a) == pytest.approx(0.7, abs=1e-12)
    assert verify_rigidity(p, final, a)


def test_shift_to_current_value_changes_nothing(jeffrey_case):
    p, a, _ = jeffrey_case
    final = jeffrey_update(p, JeffreyShift(a, event_probability(p, a)))
    assert final.allclose(p, 1e-12)


@pytest.mark.parametrize("target", [0.0, 1.0, -0.2, 1.5])
def test_shift_to_certainty_or_outside_is_invalid(jeffrey_case, target):
    _, a, _ = jeffrey_case
    with pytest.raises(InvalidShiftTarget):
        JeffreyShift(a, target)


def test_shift_of_trivial_event_is_invalid(jeffrey_case):
    p, _, _ = jeffrey_case
    with pytest.raises(InvalidShiftTarget):
        JeffreyShift(Event.full(p.space), 0.5)
    with pytest.raises(InvalidShiftTarget):
        JeffreyShift(Event.empty(p.space), 0.5)


def test_shift_of_impossible_event_is_invalid():
    space = OutcomeSpace(["x", "y", "z"])
    p = Distribution(space, [0.0, 0.4, 0.6])
    with pytest.raises(InvalidShiftTarget):
        jeffrey_update(p, JeffreyShift(Event.from_labels(space, ["x"]), 0.5))


def test_rigidity_fails_for_an_unrelated_distribution(jeffrey_case):
    p, a, _ = jeffrey_case
    other = Distribution(p.space, [0.25, 0.25, 0.25, 0.25])
    assert not verify_rigidity(p, other, a)


@pytest.fixture
def c3_case():
    space = OutcomeSpace(["w1", "w2", "w3"])
    candidates = CandidateSet(
        space,
        [Distribution(space, [0.2, 0.3, 0.5]), Distribution(space, [0.4, 0.4, 0.2])],
        names=["P1", "P2"],
    )
    pp = SecondOrderDistribution(candidates, [0.5, 0.5])
    a = Event.from_labels(space, ["w1", "w2"])
    b = Event.from_labels(space, ["w1"])
    return pp, a, b


def test_c3_three_world_example(c3_case):
    pp, a, b = c3_case
    given_a_and_x, given_a = c3_conditionals(flatten(pp), pp.over, a, b, 0.5)
    assert given_a_and_x == pytest.approx(0.4, abs=1e-12)
    assert given_a == pytest.approx(6 / 13, abs=1e-12)


def test_c3_deviation_matches_enumeration_of_cells(c3_case):
    pp, a, b = c3_case
    cells = {
        (i, w): pp.weights[i] * pp.over.matrix[i, w]
        for i, w in itertools.product(range(2), range(3))
    }
    matching = [i for i in range(2) if abs(pp.over.matrix[i, a.indices].sum() - 0.5) <= 1e-9]
    joint_ab_x = sum(cells[i, w] for i in matching for w in a.intersection(b).indices)
    joint_a_x = sum(cells[i, w] for i in matching for w in a.indices)
    joint_ab = sum(cells[i, w] for i in range(2) for w in a.intersection(b).indices)
    joint_a = sum(cells[i, w] for i in range(2) for w in a.indices)
    expected = abs(joint_ab_x / joint_a_x - joint_ab / joint_a)
    assert c3_deviation(flatten(pp), pp.over, a, b, 0.5) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(abs(0.4 - 6 / 13), abs=1e-12)


def test_c3_holds_exactly_when_every_candidate_shares_the_value():
    space = OutcomeSpace(["w1", "w2", "w3"])
    candidates = CandidateSet(
        space, [Distribution(space, [0.2, 0.3, 0.5]), Distribution(space, [0.1, 0.4, 0.5])]
    )
    pp = SecondOrderDistribution(candidates, [0.25, 0.75])
    a = Event.from_labels(space, ["w1", "w2"])
    b = Event.from_labels(space, ["w1"])
    assert c3_deviation(flatten(pp), candidates, a, b, 0.5) == 0.0


def test_c3_without_matching_candidate(c3_case):
    pp, a, b = c3_case
    with pytest.raises(EmptyConditioningEvent):
        c3_deviation(flatten(pp), pp.over, a, b, 0.99)


@given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(min_value=0.01, max_value=0.99))
@settings(max_examples=200, deadline=None)
def test_jeffrey_update_is_rigid(seed, x_f):
    generator = InstanceGenerator(seed)
    space = generator.random_space(minimum=2)
    p = generator.random_distribution(space)
    a = generator.random_proper_event(space)
    final = jeffrey_update(p, JeffreyShift(a, x_f))
    assert verify_rigidity(p, final, a, tol=1e-12)
    assert event_probability(final, a) == pytest.approx(x_f, abs=1e-12)


def test_shift_close_to_certainty_approaches_conditioning(jeffrey_case):
    p, a, _ = jeffrey_case
    final = jeffrey_update(p, JeffreyShift(a, 1 - 1e-9))
    np.testing.assert_allclose(final.weights, condition(p, a).weights, atol=1e-6, rtol=0)


def test_swapping_weights_inside_the_event_breaks_rigidity(jeffrey_case):
    p, a, _ = jeffrey_case
    swapped = Distribution(p.space, [0.12, 0.18, 0.14, 0.56])
    assert not verify_rigidity(p, swapped, a)
    assert verify_rigidity(p, p, a)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_conditioning_the_joint_on_a_model_event_is_a_jeffrey_shift(seed):
    # Every candidate shares the conditionals given a and given not-a and differs only in P(a).
    generator = InstanceGenerator(seed)
    space = generator.random_space(minimum=2)
    a = generator.random_proper_event(space)
    inside = np.zeros(len(space))
    inside[a.mask] = generator.random_weights(len(a))
    outside = np.zeros(len(space))
    outside[~a.mask] = generator.random_weights(len(space) - len(a))
    shares = generator.rng.uniform(0.05, 0.95, size=int(generator.rng.integers(1, 6)))
    candidates = CandidateSet(space, [Distribution(space, t * inside + (1 - t) * outside) for t in shares])
    pp = SecondOrderDistribution(candidates, generator.random_weights(len(shares)))
    x_f = float(shares[0])

    conditioned = condition_joint(flatten(pp), rows=model_event(candidates, a, x_f))
    shifted = jeffrey_update(predictive(pp), JeffreyShift(a, x_f))
    np.testing.assert_allclose(marginal_world(conditioned).weights, shifted.weights, atol=1e-10, rtol=0)
