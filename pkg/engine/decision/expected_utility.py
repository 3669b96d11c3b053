"""
Expected utility of an act under the three representations of belief:
a first-order distribution, a second-order distribution over candidates,
and a joint distribution over candidates x worlds.
"""
import numpy as np

from models import Distribution, JointDistribution, OutcomeSpace, SecondOrderDistribution, UtilityMatrix
from engine.errors import DimensionMismatch


def _check_space(space: OutcomeSpace, u: UtilityMatrix) -> None:
    if space != u.space:
        raise DimensionMismatch(f"belief over {space} does not match utilities over {u.space}")


def eu_first_order(p: Distribution, u: UtilityMatrix, act: int) -> float:
    """sum_w P(w) * U(act, w)"""
    _check_space(p.space, u)
    return float(np.dot(p.weights, u.row(act)))


def eu_second_order(pp: SecondOrderDistribution, u: UtilityMatrix, act: int) -> float:
    """sum_i PP(i) * [sum_w P_i(w) * U(act, w)]"""
    _check_space(pp.space, u)
    total = 0.0
    for weight, candidate in zip(pp.weights, pp.over):
        total += float(weight) * eu_first_order(candidate, u, act)
    return total


def eu_joint(j: JointDistribution, u: UtilityMatrix, act: int) -> float:
    """
    sum_{i,w} P'(i, w) * U(act, w)

    Utility depends on the world only, so any joint with the same world
    marginal yields the same value.
    """
    _check_space(j.space, u)
    return float((j.grid * u.row(act)).sum())
