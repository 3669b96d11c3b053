"""
Operations on finite discrete distributions.
"""
import logging
from typing import Sequence

import numpy as np

from models import Distribution, Event, OutcomeSpace
from engine.errors import DimensionMismatch, ZeroProbabilityEvent
from engine.tolerances import NORMALIZATION_TOLERANCE, ZERO_TOLERANCE

logger = logging.getLogger("HigherOrder.Core")


def validate_distribution(
    space: OutcomeSpace,
    weights: Sequence[float],
    renormalize: bool = False,
    tol: float = NORMALIZATION_TOLERANCE
) -> Distribution:
    """
    Build a Distribution, checking every invariant.

    Args:
        space: Outcome space the weights are indexed by
        weights: One nonnegative weight per outcome
        renormalize: Divide by the total before checking (off by default)
        tol: Accepted deviation of the total from 1

    Returns:
        Distribution: The weights, stored exactly as given unless renormalized

    Raises:
        DimensionMismatch: Wrong number of weights
        NegativeWeight: Some weight below zero
        NotNormalized: Total outside tolerance
    """
    return Distribution(space, weights, tol=tol, renormalize=renormalize)


def _same_space(d: Distribution, e: Event) -> None:
    if d.space != e.space:
        raise DimensionMismatch(f"event over {e.space} does not match distribution over {d.space}")


def event_probability(d: Distribution, e: Event) -> float:
    """Sum of the weights of the outcomes in e"""
    _same_space(d, e)
    if e.is_empty():
        return 0.0
    return float(d.weights[e.indices].sum())


def condition(d: Distribution, a: Event, zero_tol: float = ZERO_TOLERANCE) -> Distribution:
    """
    Condition d on the event a.

    Weights outside a become 0 and the rest are divided by P(a).

    Raises:
        ZeroProbabilityEvent: P(a) is zero within zero_tol
    """
    p_a = event_probability(d, a)
    if p_a <= zero_tol:
        raise ZeroProbabilityEvent(f"cannot condition on {a}: probability {p_a!r}")
    conditioned = np.where(a.mask, d.weights / p_a, 0.0)
    logger.debug(f"Conditioned on {a} with P = {p_a:.6g}")
    return Distribution(d.space, conditioned)


def conditional_probability(d: Distribution, b: Event, a: Event, zero_tol: float = ZERO_TOLERANCE) -> float:
    """P(b | a) = P(b and a) / P(a)"""
    _same_space(d, b)
    p_a = event_probability(d, a)
    if p_a <= zero_tol:
        raise ZeroProbabilityEvent(f"cannot condition on {a}: probability {p_a!r}")
    return event_probability(d, b.intersection(a)) / p_a
