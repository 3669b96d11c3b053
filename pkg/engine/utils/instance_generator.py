"""
Seeded random instances for the property checks.
"""
from typing import List, Optional

import numpy as np

from models import (
    CandidateSet,
    Distribution,
    Event,
    IIDModel,
    OutcomeSpace,
    SecondOrderDistribution,
    UtilityMatrix,
)


class InstanceGenerator:
    """
    Generates random spaces, distributions, hierarchies and utilities.

    Every instance is drawn from the generator's own numpy Generator, so two
    generators built with the same seed produce the same sequence.
    """

    def __init__(self, seed: int, max_worlds: int = 10, max_candidates: int = 10, max_acts: int = 5):
        """
        Initialize the instance generator.

        Args:
            seed: Seed for the underlying numpy Generator
            max_worlds: Largest world space drawn
            max_candidates: Largest candidate set drawn
            max_acts: Largest act set drawn
        """
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.max_worlds = max_worlds
        self.max_candidates = max_candidates
        self.max_acts = max_acts

    def random_space(self, size: Optional[int] = None, minimum: int = 1, prefix: str = "w") -> OutcomeSpace:
        if size is None:
            size = int(self.rng.integers(minimum, self.max_worlds + 1))
        return OutcomeSpace.indexed(size, prefix=prefix)

    def random_weights(self, size: int, zero_probability: float = 0.0) -> np.ndarray:
        """Uniform draw from the simplex, optionally with some weights forced to 0"""
        weights = self.rng.dirichlet(np.ones(size))
        if zero_probability > 0 and size > 1:
            zeroed = self.rng.random(size) < zero_probability
            # Keep at least one outcome possible.
            zeroed[int(self.rng.integers(size))] = False
            weights = np.where(zeroed, 0.0, weights)
            weights = weights / weights.sum()
        return weights

    def random_distribution(self, space: OutcomeSpace, zero_probability: float = 0.0) -> Distribution:
        return Distribution(space, self.random_weights(len(space), zero_probability))

    def random_candidate_set(self, space: OutcomeSpace, size: Optional[int] = None) -> CandidateSet:
        if size is None:
            size = int(self.rng.integers(1, self.max_candidates + 1))
        return CandidateSet(space, [self.random_distribution(space) for _ in range(size)])

    def random_second_order(
        self,
        worlds: Optional[int] = None,
        candidates: Optional[int] = None,
        minimum_worlds: int = 1
    ) -> SecondOrderDistribution:
        space = self.random_space(worlds, minimum=minimum_worlds)
        over = self.random_candidate_set(space, candidates)
        return SecondOrderDistribution(over, self.random_weights(len(over)))

    def random_shared_second_order(self, minimum_worlds: int = 1, minimum_candidates: int = 1) -> SecondOrderDistribution:
        """Hierarchy whose candidates are all the same distribution; its flattening is a product joint"""
        space = self.random_space(minimum=minimum_worlds)
        size = int(self.rng.integers(minimum_candidates, self.max_candidates + 1))
        shared = self.random_distribution(space)
        over = CandidateSet(space, [shared] * size)
        return SecondOrderDistribution(over, self.random_weights(size))

    def random_utilities(self, space: OutcomeSpace, acts: Optional[int] = None, bound: float = 100.0) -> UtilityMatrix:
        if acts is None:
            acts = int(self.rng.integers(1, self.max_acts + 1))
        values = self.rng.uniform(-bound, bound, size=(acts, len(space)))
        return UtilityMatrix([f"A{j}" for j in range(acts)], space, values)

    def random_proper_event(self, space: OutcomeSpace) -> Event:
        """Event that is neither empty nor the whole space (needs at least two outcomes)"""
        size = len(space)
        count = int(self.rng.integers(1, size))
        return Event(space, self.rng.choice(size, size=count, replace=False))

    def random_observations(self, space: OutcomeSpace, max_length: int = 50) -> List[int]:
        length = int(self.rng.integers(0, max_length + 1))
        return [int(o) for o in self.rng.integers(0, len(space), size=length)]

    def random_iid_model(self, faces: int = 6, hypotheses: Optional[int] = None) -> IIDModel:
        prior = self.random_second_order(worlds=faces, candidates=hypotheses)
        return IIDModel.from_prior(prior)
