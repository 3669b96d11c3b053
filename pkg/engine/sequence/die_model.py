"""
Independent, identically distributed trials under competing loading hypotheses:
Bayesian posterior over the loadings, the predictive for the next trial, and
the even-money bet on a single outcome.
"""
import logging
from typing import List, Sequence

import numpy as np

from models import DecisionProblem, Distribution, IIDModel, SecondOrderDistribution, UtilityMatrix
from engine.errors import ImpossibleObservation, InvalidObservation, ValidationError
from engine.hierarchy import predictive

logger = logging.getLogger("HigherOrder.Sequence")


def _counts(model: IIDModel, observations: Sequence[int]) -> np.ndarray:
    size = len(model.space)
    for position, outcome in enumerate(observations):
        if not 0 <= int(outcome) < size:
            raise InvalidObservation(f"observation {position} is outcome {outcome!r}, outside 0..{size - 1}")
    return np.bincount(np.asarray(observations, dtype=int), minlength=size)


def posterior(model: IIDModel, observations: Sequence[int]) -> SecondOrderDistribution:
    """
    Posterior over hypotheses after observing the given outcomes.

    Log-likelihoods are accumulated from outcome counts and exponentiated once
    at the end, so long sequences do not underflow and the result does not
    depend on the order of the observations.

    Args:
        model: Hypotheses and prior
        observations: Outcome indices

    Returns:
        SecondOrderDistribution: The prior itself when there are no observations

    Raises:
        InvalidObservation: An index outside the outcome space
        ImpossibleObservation: Every hypothesis with prior mass gives the sequence likelihood 0
    """
    if len(observations) == 0:
        return model.prior
    counts = _counts(model, observations)
    with np.errstate(divide="ignore"):
        log_prior = np.log(model.prior.weights)
        log_faces = np.log(model.hypotheses.matrix)
    seen = counts > 0
    # Unseen faces contribute nothing, even where a hypothesis gives them 0.
    log_likelihood = (log_faces[:, seen] * counts[seen]).sum(axis=1)
    log_posterior = log_prior + log_likelihood
    best = np.max(log_posterior)
    if not np.isfinite(best):
        raise ImpossibleObservation(f"every hypothesis gives the {len(observations)} observations likelihood 0")
    unnormalized = np.exp(log_posterior - best)
    weights = unnormalized / unnormalized.sum()
    logger.debug(f"Posterior after {len(observations)} observations: {weights}")
    return SecondOrderDistribution(model.hypotheses, weights)


def posterior_trajectory(model: IIDModel, observations: Sequence[int]) -> List[SecondOrderDistribution]:
    """Posterior after each prefix of the observations, in order"""
    return [posterior(model, observations[:end]) for end in range(1, len(observations) + 1)]


def with_prior(model: IIDModel, prior: SecondOrderDistribution) -> IIDModel:
    """Same hypotheses, different prior"""
    return IIDModel(model.hypotheses, prior)


def predictive_next(model: IIDModel, observations: Sequence[int]) -> Distribution:
    """Predictive distribution for the next trial: the posterior's expectation of the loadings"""
    return predictive(posterior(model, observations))


def build_bet_problem(
    model: IIDModel,
    observations: Sequence[int],
    target: int,
    stake: float = 1.0
) -> DecisionProblem:
    """
    Choose between betting at even money on the target outcome and abstaining.

    The bet wins +stake if the target occurs and -stake otherwise; abstaining
    is worth 0. The belief is the posterior over hypotheses.
    """
    if not stake > 0:
        raise ValidationError(f"stake must be positive, got {stake!r}")
    space = model.space
    if not 0 <= target < len(space):
        raise InvalidObservation(f"bet target {target!r} outside 0..{len(space) - 1}")
    bet = [stake if w == target else -stake for w in range(len(space))]
    abstain = [0.0] * len(space)
    utilities = UtilityMatrix([f"bet-on-{space.label(target)}", "abstain"], space, [bet, abstain])
    return DecisionProblem(utilities, posterior(model, observations))
