"""
Randomized property checks that exercise the equivalence of the first-order,
second-order and joint representations.
"""
import logging
import time
from typing import Any, Dict, Optional

import numpy as np

from models import DecisionProblem, Distribution, Event, JeffreyShift, SecondOrderDistribution
from engine.decision import ActSelector, eu_first_order, eu_joint, eu_second_order
from engine.core import event_probability
from engine.hierarchy import (
    coherence_check,
    condition_joint,
    flatten,
    is_product_form,
    marginal_model,
    marginal_world,
    predictive,
    same_marginals_witness,
)
from engine.kinematics import jeffrey_update, verify_rigidity
from engine.sequence import posterior, with_prior
from engine.tolerances import EQUIVALENCE_TOLERANCE, TIE_TOLERANCE
from engine.utils.instance_generator import InstanceGenerator
from engine.utils.statistics import DeviationTracker

# Tolerance of the exact-algebra properties (marginals, rigidity, posterior).
EXACT_TOLERANCE = 1e-12

COHERENCE_DELTA = 0.05


def _shares_one_candidate(pp: SecondOrderDistribution, tol: float) -> bool:
    """True iff every candidate with positive weight equals the first such candidate within tol"""
    rows = pp.over.matrix[pp.weights > 0]
    return bool(np.all(np.abs(rows - rows[0]) <= tol))


class SelfTest:
    """
    Runs every randomized property on seeded instances and tracks deviations.
    """

    def __init__(
        self,
        seed: int,
        instances: int = 1000,
        equivalence_tolerance: float = EQUIVALENCE_TOLERANCE,
        tie_tolerance: float = TIE_TOLERANCE,
        exact_tolerance: float = EXACT_TOLERANCE
    ) -> None:
        """
        Initialize the self-test.

        Args:
            seed: Seed shared by all instance families
            instances: Instances per property family (sequences use half as many)
            equivalence_tolerance: Allowed EU disagreement between representations
            tie_tolerance: Tie tolerance for act selection
            exact_tolerance: Tolerance of the exact-algebra properties
        """
        self.seed = seed
        self.instances = instances
        self.equivalence_tolerance = equivalence_tolerance
        self.tie_tolerance = tie_tolerance
        self.exact_tolerance = exact_tolerance
        self.tracker = DeviationTracker()
        self.logger = logging.getLogger("HigherOrder.SelfTest")

    def _generator(self, offset: int) -> InstanceGenerator:
        # One independent stream per family so adding a family leaves the others unchanged.
        return InstanceGenerator(self.seed + offset)

    def check_equivalence(self) -> None:
        """Expected utility and tied sets agree across the three representations."""
        names = ("eu_second_vs_joint", "eu_second_vs_first", "tied_sets_identical")
        for name in names[:2]:
            self.tracker.register(name, self.equivalence_tolerance)
        self.tracker.register(names[2], 0.0)
        selector = ActSelector(self.tie_tolerance)
        generator = self._generator(0)
        for instance in range(self.instances):
            pp = generator.random_second_order()
            u = generator.random_utilities(pp.space)
            joint = flatten(pp)
            first = predictive(pp)
            for act in range(u.act_count):
                second_value = eu_second_order(pp, u, act)
                self.tracker.record(names[0], abs(second_value - eu_joint(joint, u, act)), instance)
                self.tracker.record(names[1], abs(second_value - eu_first_order(first, u, act)), instance)
            tied = {
                selector.select(DecisionProblem(u, belief)).tied
                for belief in (first, pp, joint)
            }
            self.tracker.record_flag(names[2], len(tied) == 1, instance)

    def check_round_trip(self) -> None:
        """Marginals of the flattening recover the predictive and PP; product form tracks shared candidates."""
        self.tracker.register("marginal_world_is_predictive", self.exact_tolerance)
        self.tracker.register("marginal_model_is_second_order", self.exact_tolerance)
        self.tracker.register("product_form_iff_shared_candidates", 0.0)
        generator = self._generator(1)
        for instance in range(self.instances):
            # Every other instance repeats one candidate so both sides of the equivalence occur.
            if instance % 2:
                pp = generator.random_shared_second_order()
            else:
                pp = generator.random_second_order()
            joint = flatten(pp)
            world_gap = np.max(np.abs(marginal_world(joint).weights - predictive(pp).weights))
            model_gap = np.max(np.abs(marginal_model(joint).weights - pp.weights))
            self.tracker.record("marginal_world_is_predictive", float(world_gap), instance)
            self.tracker.record("marginal_model_is_second_order", float(model_gap), instance)
            self.tracker.record_flag(
                "product_form_iff_shared_candidates",
                is_product_form(joint, self.exact_tolerance) == _shares_one_candidate(pp, self.exact_tolerance),
                instance,
            )

    def check_witness(self) -> None:
        """On product joints, witnesses keep the marginals and the decision, and break product form."""
        self.tracker.register("witness_marginals", self.exact_tolerance)
        self.tracker.register("witness_not_product_form", 0.0)
        self.tracker.register("witness_eu_unchanged", self.exact_tolerance)
        generator = self._generator(2)
        for instance in range(self.instances):
            pp = generator.random_shared_second_order(minimum_worlds=2)
            joint = flatten(pp)
            witness = same_marginals_witness(joint)
            if not witness:
                continue
            gap = max(
                np.max(np.abs(marginal_world(witness).weights - marginal_world(joint).weights)),
                np.max(np.abs(marginal_model(witness).weights - marginal_model(joint).weights)),
            )
            self.tracker.record("witness_marginals", float(gap), instance)
            # A shift no larger than the tolerance cannot be told apart from product form.
            eps = float(np.max(np.abs(witness.grid - joint.grid)))
            if eps > self.exact_tolerance:
                self.tracker.record_flag(
                    "witness_not_product_form", not is_product_form(witness, self.exact_tolerance), instance
                )
            u = generator.random_utilities(pp.space)
            eu_gap = max(abs(eu_joint(joint, u, act) - eu_joint(witness, u, act)) for act in range(u.act_count))
            self.tracker.record("witness_eu_unchanged", eu_gap, instance)

    def check_jeffrey(self) -> None:
        """Jeffrey updates hit the target probability and preserve the conditionals."""
        self.tracker.register("jeffrey_rigidity", 0.0)
        self.tracker.register("jeffrey_target_probability", self.exact_tolerance)
        generator = self._generator(3)
        for instance in range(self.instances):
            space = generator.random_space(minimum=2)
            p = generator.random_distribution(space)
            a = generator.random_proper_event(space)
            x_f = float(generator.rng.uniform(0.01, 0.99))
            updated = jeffrey_update(p, JeffreyShift(a, x_f))
            self.tracker.record_flag("jeffrey_rigidity", verify_rigidity(p, updated, a, self.exact_tolerance), instance)
            self.tracker.record("jeffrey_target_probability", abs(event_probability(updated, a) - x_f), instance)

    def check_coherence(self) -> None:
        """The predictive is coherent; a shifted claim is caught with the right profit."""
        self.tracker.register("predictive_gap_is_zero", 0.0)
        self.tracker.register("perturbed_gap", self.exact_tolerance)
        self.tracker.register("witness_profit_is_gap", 0.0)
        generator = self._generator(4)
        for instance in range(self.instances):
            pp = generator.random_second_order(minimum_worlds=2)
            fair = predictive(pp)
            self.tracker.record("predictive_gap_is_zero", coherence_check(fair, pp).gap, instance)
            donor = int(np.argmax(fair.weights))
            receiver = (donor + 1) % len(fair)
            shifted = fair.weights.copy()
            shifted[donor] -= COHERENCE_DELTA
            shifted[receiver] += COHERENCE_DELTA
            report = coherence_check(Distribution(fair.space, shifted), pp)
            self.tracker.record("perturbed_gap", abs(report.gap - COHERENCE_DELTA), instance)
            self.tracker.record_flag(
                "witness_profit_is_gap",
                report.witness is not None and report.witness.expected_profit == report.gap,
                instance,
            )

    def check_sequences(self) -> None:
        """Posteriors ignore observation order, compose sequentially and match joint conditioning."""
        for name in ("posterior_permutation", "posterior_sequential", "posterior_single_toss_joint"):
            self.tracker.register(name, self.exact_tolerance)
        generator = self._generator(5)
        for instance in range(max(1, self.instances // 2)):
            model = generator.random_iid_model()
            observations = generator.random_observations(model.space)
            full = posterior(model, observations)
            shuffled = [observations[i] for i in generator.rng.permutation(len(observations))]
            self.tracker.record(
                "posterior_permutation",
                float(np.max(np.abs(posterior(model, shuffled).weights - full.weights))),
                instance,
            )
            split = int(generator.rng.integers(0, len(observations) + 1))
            staged = posterior(with_prior(model, posterior(model, observations[:split])), observations[split:])
            self.tracker.record(
                "posterior_sequential", float(np.max(np.abs(staged.weights - full.weights))), instance
            )
            outcome = int(generator.rng.integers(len(model.space)))
            conditioned = condition_joint(flatten(model.prior), columns=Event(model.space, [outcome]))
            single = posterior(model, [outcome])
            self.tracker.record(
                "posterior_single_toss_joint",
                float(np.max(np.abs(marginal_model(conditioned).weights - single.weights))),
                instance,
            )

    def run(self, families: Optional[Dict[str, bool]] = None) -> Dict[str, Any]:
        """
        Run the property families.

        Args:
            families: Optional mapping family -> enabled; all run by default

        Returns:
            Dict[str, Any]: Seed, instance count, per-property statistics
            and overall verdict
        """
        start_time = time.time()
        checks = {
            "equivalence": self.check_equivalence,
            "round_trip": self.check_round_trip,
            "witness": self.check_witness,
            "jeffrey": self.check_jeffrey,
            "coherence": self.check_coherence,
            "sequences": self.check_sequences,
        }
        for family, check in checks.items():
            if families is not None and not families.get(family, False):
                continue
            self.logger.info(f"Checking {family} on {self.instances} instances (seed {self.seed})")
            check()
        stats = self.tracker.get_final_stats()
        self.logger.info(f"Self-test completed in {time.time() - start_time:.2f} seconds")
        for name, entry in stats.items():
            if not entry["passed"]:
                self.logger.error(f"Property {name} failed: max deviation {entry['max_deviation']!r}")
        return {
            "seed": self.seed,
            "instances": self.instances,
            "properties": stats,
            "passed": self.tracker.passed,
        }
