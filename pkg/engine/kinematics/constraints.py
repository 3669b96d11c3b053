"""
The constraint PP(b | a & P(a) = x) = PP(b | a), measured on a joint distribution.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from models import CandidateSet, Event, JointDistribution
from engine.errors import DimensionMismatch, EmptyConditioningEvent
from engine.hierarchy import model_event
from engine.tolerances import MATCH_TOLERANCE, ZERO_TOLERANCE

logger = logging.getLogger("HigherOrder.Kinematics")


def _conditional_on_rows(
    j: JointDistribution,
    rows: Sequence[int],
    a: Event,
    b: Event,
    zero_tol: float
) -> float:
    """Pr_j(b | a restricted to the given rows)"""
    block = j.grid[rows]
    mass = float(block[:, a.mask].sum())
    if mass <= zero_tol:
        raise EmptyConditioningEvent(f"the joint event {a} on rows {list(rows)} has probability {mass!r}")
    return float(block[:, a.intersection(b).mask].sum()) / mass


def c3_conditionals(
    j: JointDistribution,
    candidates: CandidateSet,
    a: Event,
    b: Event,
    x: float,
    match_tol: float = MATCH_TOLERANCE,
    zero_tol: float = ZERO_TOLERANCE
) -> Tuple[float, float]:
    """
    Both sides of the constraint.

    World events extend to the joint by column membership; [P(a) = x] is the
    set of rows whose candidate gives a probability x within match_tol.

    Returns:
        Tuple[float, float]: (Pr(b | a & [P(a) = x]), Pr(b | a))

    Raises:
        EmptyConditioningEvent: No candidate matches x, or a conditioning event has no mass
    """
    if j.space != candidates.space or j.space != a.space or j.space != b.space:
        raise DimensionMismatch("joint, candidates and events must share one world space")
    if len(j.rows) != len(candidates):
        raise DimensionMismatch(f"joint has {len(j.rows)} rows for {len(candidates)} candidates")
    matching = model_event(candidates, a, x, match_tol)
    if matching.is_empty():
        raise EmptyConditioningEvent(f"no candidate gives P({a}) = {x!r} (tolerance {match_tol:g})")
    given_a_and_x = _conditional_on_rows(j, matching.indices, a, b, zero_tol)
    given_a = _conditional_on_rows(j, list(range(len(j.rows))), a, b, zero_tol)
    logger.debug(f"C3 at x = {x:g}: {given_a_and_x:.6g} vs {given_a:.6g}")
    return given_a_and_x, given_a


def c3_deviation(
    j: JointDistribution,
    candidates: CandidateSet,
    a: Event,
    b: Event,
    x: float,
    match_tol: float = MATCH_TOLERANCE,
    zero_tol: float = ZERO_TOLERANCE
) -> float:
    """|Pr(b | a & [P(a) = x]) - Pr(b | a)|; 0 when the constraint holds at (a, b, x)"""
    given_a_and_x, given_a = c3_conditionals(j, candidates, a, b, x, match_tol, zero_tol)
    return abs(given_a_and_x - given_a)
