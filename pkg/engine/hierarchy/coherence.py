"""
The expectation constraint linking first- and second-order probability,
and the Dutch-book check for an agent who violates it.
"""
import logging

import numpy as np

from models import CoherenceReport, Distribution, DutchBookWitness, SecondOrderDistribution
from engine.errors import DimensionMismatch
from engine.tolerances import COHERENCE_TOLERANCE

logger = logging.getLogger("HigherOrder.Coherence")


def predictive(pp: SecondOrderDistribution) -> Distribution:
    """
    First-order distribution coherent with pp: P(w) = sum_i PP(i) * P_i(w).

    Summed candidate by candidate, without building the joint grid.
    """
    total = np.zeros(len(pp.space))
    for weight, candidate in zip(pp.weights, pp.over):
        total = total + weight * candidate.weights
    return Distribution(pp.space, total)


def coherence_check(
    claimed: Distribution,
    pp: SecondOrderDistribution,
    tol: float = COHERENCE_TOLERANCE
) -> CoherenceReport:
    """
    Compare a claimed first-order distribution with the predictive of pp.

    Args:
        claimed: The agent's stated betting prices over W
        pp: The agent's second-order belief
        tol: Gaps at or below this are coherent

    Returns:
        CoherenceReport: Largest gap, the world where it occurs and, when the
        gap exceeds tol, a single-world unit bet exploiting it. When several
        worlds are within tol of the largest gap, the first of them is
        reported together with its own gap.
    """
    if claimed.space != pp.space:
        raise DimensionMismatch(f"claimed distribution over {claimed.space}, second order over {pp.space}")
    fair = predictive(pp)
    differences = np.abs(claimed.weights - fair.weights)
    # Worlds within tol of the largest difference tie; the lowest index wins.
    world = int(np.flatnonzero(differences >= differences.max() - tol)[0])
    gap = float(differences[world])
    witness = None
    if differences.max() > tol:
        witness = DutchBookWitness(claimed.space.label(world), claimed[world], fair[world])
        logger.info(f"Incoherent claim: gap {gap:.6g} at {witness.world}")
    return CoherenceReport(gap, world, claimed, fair, witness)
