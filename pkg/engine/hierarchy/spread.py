"""
Spread of the candidate probabilities under the second-order distribution.
"""
from typing import Dict

import numpy as np

from models import SecondOrderDistribution


def second_order_spread(pp: SecondOrderDistribution) -> Dict[str, float]:
    """
    Standard deviation of P_i(w) under PP, for every world w.

    A spread near zero means the agent is sure of the first-order value; a
    large spread means the value would move readily with evidence. The spread
    never affects a decision, which depends on the predictive only.

    Args:
        pp: Second-order distribution

    Returns:
        Dict[str, float]: World label -> standard deviation
    """
    matrix = pp.over.matrix
    mean = pp.weights @ matrix
    variance = pp.weights @ (matrix - mean) ** 2
    # Rounding can leave a variance of -1e-18.
    deviation = np.sqrt(np.clip(variance, 0.0, None))
    return {label: float(v) for label, v in zip(pp.space, deviation)}
