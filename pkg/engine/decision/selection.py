"""
Act selection by maximum expected utility.
"""
import logging
from typing import Callable, Dict, List

from models import (
    ActSelection,
    DecisionProblem,
    JointDistribution,
    ModeComparison,
    SecondOrderDistribution,
    UtilityMatrix,
)
from engine.decision.expected_utility import eu_first_order, eu_joint, eu_second_order
from engine.errors import EquivalenceFailure
from engine.hierarchy import flatten, predictive
from engine.tolerances import EQUIVALENCE_TOLERANCE, TIE_TOLERANCE

logger = logging.getLogger("HigherOrder.Decision")

EVALUATORS: Dict[str, Callable] = {
    "first": eu_first_order,
    "second": eu_second_order,
    "joint": eu_joint,
}


class ActSelector:
    """
    Picks the act of maximum expected utility under any of the three belief
    representations, with a configured tie tolerance.
    """

    def __init__(self, tie_tolerance: float = TIE_TOLERANCE, equivalence_tolerance: float = EQUIVALENCE_TOLERANCE):
        """
        Initialize the act selector.

        Args:
            tie_tolerance: Acts within this of the maximum are tied
            equivalence_tolerance: Largest disagreement allowed between representations
        """
        self.tie_tolerance = tie_tolerance
        self.equivalence_tolerance = equivalence_tolerance

    def select(self, problem: DecisionProblem) -> ActSelection:
        """
        Evaluate every act and pick the best one.

        Args:
            problem: Utilities plus a belief in one of the three representations

        Returns:
            ActSelection: Values per act, the tied set and the chosen act
            (lowest index among the tied)
        """
        evaluate = EVALUATORS[problem.mode]
        utilities = problem.utilities
        values: List[float] = [evaluate(problem.belief, utilities, act) for act in range(utilities.act_count)]
        best = max(values)
        tied = [act for act, value in enumerate(values) if value >= best - self.tie_tolerance]
        selection = ActSelection(utilities.acts, values, tied, problem.mode)
        logger.debug(f"{selection}")
        return selection

    def compare(self, pp: SecondOrderDistribution, u: UtilityMatrix) -> ModeComparison:
        """
        Decide the same hierarchical belief under all three representations.

        The first-order problem uses the predictive of pp and the joint problem
        uses its flattening.

        Raises:
            EquivalenceFailure: Values differ by more than the equivalence
            tolerance or the tied sets differ
        """
        joint: JointDistribution = flatten(pp)
        comparison = ModeComparison({
            "first": self.select(DecisionProblem(u, predictive(pp))),
            "second": self.select(DecisionProblem(u, pp)),
            "joint": self.select(DecisionProblem(u, joint)),
        })
        tol = self.equivalence_tolerance
        if comparison.max_disagreement > tol or not comparison.tied_sets_agree:
            logger.error(f"Representations disagree: {comparison}")
            raise EquivalenceFailure(
                f"expected utilities disagree across representations by {comparison.max_disagreement!r} "
                f"(tolerance {tol:g}); tied sets {'agree' if comparison.tied_sets_agree else 'differ'}"
            )
        return comparison


def optimal_acts(problem: DecisionProblem, tie_tol: float = TIE_TOLERANCE) -> ActSelection:
    """Best act of a decision problem; see ActSelector.select"""
    return ActSelector(tie_tol).select(problem)


def compare_modes(
    pp: SecondOrderDistribution,
    u: UtilityMatrix,
    tie_tol: float = TIE_TOLERANCE,
    tol: float = EQUIVALENCE_TOLERANCE
) -> ModeComparison:
    """Act selections under all three representations; see ActSelector.compare"""
    return ActSelector(tie_tol, tol).compare(pp, u)
