"""
Jeffrey's updating rule on a binary partition {a, not-a}.
"""
import logging

import numpy as np

from models import Distribution, Event, JeffreyShift
from engine.core import condition, event_probability
from engine.errors import InvalidShiftTarget
from engine.tolerances import RIGIDITY_TOLERANCE, ZERO_TOLERANCE

logger = logging.getLogger("HigherOrder.Kinematics")


def jeffrey_update(p: Distribution, shift: JeffreyShift, zero_tol: float = ZERO_TOLERANCE) -> Distribution:
    """
    Move the probability of shift.target to shift.new_probability, keeping the
    conditionals on a and on not-a fixed:

        P_f(w) = P(w | a) * x_f + P(w | not a) * (1 - x_f)

    Raises:
        InvalidShiftTarget: P(a) is 0 or 1, so one of the conditionals is undefined
    """
    a = shift.target
    p_a = event_probability(p, a)
    if p_a <= zero_tol or p_a >= 1.0 - zero_tol:
        raise InvalidShiftTarget(f"P({a}) = {p_a!r}; Jeffrey's rule needs both {a} and its complement possible")
    x_f = shift.new_probability
    given_a = condition(p, a, zero_tol)
    given_not_a = condition(p, a.complement(), zero_tol)
    updated = given_a.weights * x_f + given_not_a.weights * (1.0 - x_f)
    logger.debug(f"Jeffrey shift of P({a}) from {p_a:.6g} to {x_f:.6g}")
    return Distribution(p.space, updated)


def verify_rigidity(
    p_init: Distribution,
    p_final: Distribution,
    a: Event,
    tol: float = RIGIDITY_TOLERANCE,
    zero_tol: float = ZERO_TOLERANCE
) -> bool:
    """
    True iff the conditionals on a and on not-a agree elementwise within tol.

    On a finite space this is the same as P_i(b | a) = P_f(b | a) for every b.

    Raises:
        ZeroProbabilityEvent: a or not-a has probability 0 under either distribution
    """
    for side in (a, a.complement()):
        before = condition(p_init, side, zero_tol).weights
        after = condition(p_final, side, zero_tol).weights
        if not np.all(np.abs(before - after) <= tol):
            return False
    return True
