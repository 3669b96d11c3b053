"""
Controlador de los subcomandos: carga el modelo, llama al motor y arma el reporte.
"""
import logging
from typing import Any, Dict, List, Optional

import numpy as np

from models import DecisionProblem, JeffreyShift, SecondOrderDistribution
from engine.core import event_probability
from engine.decision import ActSelector
from engine.errors import EquivalenceFailure, ValidationError
from engine.hierarchy import (
    coherence_check,
    flatten,
    is_product_form,
    marginal_model,
    marginal_world,
    model_event,
    predictive,
    same_marginals_witness,
    second_order_spread,
)
from engine.kinematics import c3_conditionals, jeffrey_update, verify_rigidity
from engine.sequence import build_bet_problem, posterior, posterior_trajectory, predictive_next
from engine.utils import SelfTest
from src.cli.models.model_file import ModelFile, parse_labels
from src.cli.models.report import Report
from src.cli.models.settings_model import SettingsModel

DECISION_MODES = ("first", "second", "joint", "all")


class CommandController:
    """Controlador que ejecuta cada subcomando sobre un archivo de modelo"""

    def __init__(self, settings_model: SettingsModel):
        """
        Inicializar el controlador.

        Args:
            settings_model: Modelo de configuraciones (tolerancias, semilla)
        """
        self.settings = settings_model
        self.logger = logging.getLogger("HigherOrder.CommandController")

    def _tol(self, key: str) -> float:
        return float(self.settings.get_setting(key))

    def _selector(self) -> ActSelector:
        return ActSelector(self._tol("tie_tolerance"), self._tol("equivalence_tolerance"))

    def _load(self, path: str) -> ModelFile:
        return ModelFile.load(path, tol=self._tol("normalization_tolerance"))

    def validate(self, path: str) -> Report:
        """Validar el modelo e informar el predictivo y la brecha de coherencia"""
        report = Report("validate", {"model": path})
        model = self._load(path)
        pp = model.second_order
        fair = predictive(pp)
        report.results = {
            "worlds": list(model.worlds.labels),
            "candidates": {
                name: {
                    "weights": candidate.as_list(),
                    "normalization_error": abs(float(candidate.weights.sum()) - 1.0),
                    "minimum_weight": float(candidate.weights.min()),
                }
                for name, candidate in zip(model.candidates.names, model.candidates)
            },
            "second_order": pp.distribution.to_dict(),
            "predictive": fair.as_list(),
            "spread": second_order_spread(pp),
            "coherence": None,
        }
        if model.claimed is not None:
            coherence = coherence_check(model.claimed, pp, tol=self._tol("coherence_tolerance"))
            report.results["coherence"] = coherence.to_dict()
            if not coherence.coherent:
                report.warn(f"claimed distribution is incoherent with the second-order belief (gap {coherence.gap!r})")
        for first, second in model.duplicate_candidates():
            report.warn(f"candidates {first} and {second} are identical; their weights are kept separate")
        self.logger.info(f"Modelo {path} validado con {len(model.candidates)} candidatos")
        return report

    def decide(self, path: str, mode: str) -> Report:
        """Elegir el acto óptimo bajo la representación pedida (o las tres)"""
        if mode not in DECISION_MODES:
            raise ValidationError(f"unknown mode {mode!r}; expected one of {list(DECISION_MODES)}")
        report = Report("decide", {"model": path, "mode": mode})
        model = self._load(path)
        utilities = model.require_utilities()
        pp = model.second_order
        selector = self._selector()
        if mode == "all":
            comparison = selector.compare(pp, utilities)
            selections = comparison.selections
            report.results["agreement"] = {
                "max_disagreement": comparison.max_disagreement,
                "tied_sets_agree": comparison.tied_sets_agree,
            }
        else:
            beliefs = {"first": predictive(pp), "second": pp, "joint": flatten(pp)}
            selections = {mode: selector.select(DecisionProblem(utilities, beliefs[mode]))}
        report.results["acts"] = list(utilities.acts.labels)
        report.results["columns"] = {
            name: {
                "values": list(selection.values),
                "tied": [selection.acts.label(i) for i in selection.tied],
                "chosen": selection.chosen_act,
            }
            for name, selection in selections.items()
        }
        if model.claimed is not None and not coherence_check(model.claimed, pp, self._tol("coherence_tolerance")).coherent:
            report.warn("the claimed distribution is ignored; first-order mode uses the predictive of the second-order belief")
        return report

    def flatten(self, path: str) -> Report:
        """Aplanar la jerarquía en la distribución conjunta y buscar un testigo"""
        report = Report("flatten", {"model": path})
        model = self._load(path)
        joint = flatten(model.second_order)
        exact = self._tol("product_form_tolerance")
        report.results = {
            **joint.to_dict(),
            "marginal_model": marginal_model(joint).as_list(),
            "marginal_world": marginal_world(joint).as_list(),
            "product_form": is_product_form(joint, exact),
            "witness": None,
            "witness_reason": None,
        }
        witness = same_marginals_witness(joint)
        if witness:
            gaps = (
                np.abs(marginal_model(witness).weights - marginal_model(joint).weights),
                np.abs(marginal_world(witness).weights - marginal_world(joint).weights),
            )
            if max(float(g.max()) for g in gaps) > exact:
                raise EquivalenceFailure("same-marginals witness changed a marginal")
            report.results["witness"] = {
                "grid": witness.as_lists(),
                "product_form": is_product_form(witness, exact),
            }
        else:
            report.results["witness_reason"] = witness.reason
        return report

    def jeffrey(self, path: str, event_name: str, to: float) -> Report:
        """Actualizar por la regla de Jeffrey y verificar la rigidez"""
        report = Report("jeffrey", {"model": path, "event": event_name, "to": to})
        model = self._load(path)
        a = model.event(event_name)
        if model.claimed is not None:
            source, initial = "claimed", model.claimed
        else:
            source, initial = "predictive", predictive(model.second_order)
        shift = JeffreyShift(a, to)
        zero_tol = self._tol("zero_tolerance")
        final = jeffrey_update(initial, shift, zero_tol)
        rigid = verify_rigidity(initial, final, a, self._tol("rigidity_tolerance"), zero_tol)
        if not rigid:
            raise EquivalenceFailure("Jeffrey update changed the conditionals on the shifted event")
        report.results = {
            "source": source,
            "event": event_name,
            "members": a.to_dict()["members"],
            "initial_probability": event_probability(initial, a),
            "target_probability": shift.new_probability,
            "initial": initial.as_list(),
            "final": final.as_list(),
            "rigidity": rigid,
            "event_probabilities": {
                name: {"initial": event_probability(initial, b), "final": event_probability(final, b)}
                for name, b in model.events.items()
            },
        }
        return report

    def check_c3(self, path: str, a_name: str, b_name: str, x: float) -> Report:
        """Medir la desviación de la restricción C3 en la conjunta"""
        report = Report("check-c3", {"model": path, "a": a_name, "b": b_name, "x": x})
        model = self._load(path)
        a, b = model.event(a_name), model.event(b_name)
        joint = flatten(model.second_order)
        match_tol = self._tol("match_tolerance")
        given_a_and_x, given_a = c3_conditionals(
            joint, model.candidates, a, b, x, match_tol, self._tol("zero_tolerance")
        )
        matching = model_event(model.candidates, a, x, match_tol)
        report.results = {
            "matching_candidates": [model.candidates.names[i] for i in matching.indices],
            "given_a_and_x": given_a_and_x,
            "given_a": given_a,
            "deviation": abs(given_a_and_x - given_a),
        }
        return report

    def sequence(self, path: str, observe: Optional[str], bet: Optional[str], stake: Optional[float]) -> Report:
        """Posterior sobre las hipótesis, predictivo del próximo ensayo y decisión de apuesta"""
        stake = float(self.settings.get_setting("default_stake")) if stake is None else stake
        report = Report("sequence", {"model": path, "observe": observe, "bet": bet, "stake": stake})
        model = self._load(path)
        iid = model.iid_model()
        labels = parse_labels(observe) if observe is not None else [model.worlds.label(i) for i in model.observations]
        observations = model.world_indices(labels, "--observe")
        trajectory = posterior_trajectory(iid, observations)
        final: SecondOrderDistribution = trajectory[-1] if trajectory else posterior(iid, observations)
        report.results = {
            "worlds": list(model.worlds.labels),
            "hypotheses": list(model.candidates.names),
            "observations": labels,
            "toss_index": len(observations) + 1,
            "prior": iid.prior.as_list(),
            "trajectory": [
                {"after": label, "posterior": step.as_list()} for label, step in zip(labels, trajectory)
            ],
            "posterior": final.as_list(),
            "predictive": predictive_next(iid, observations).as_list(),
            "bet": None,
        }
        if bet is not None:
            target = model.world_indices([bet], "--bet")[0]
            problem = build_bet_problem(iid, observations, target, stake)
            selection = self._selector().select(problem)
            report.results["bet"] = {
                "target": bet,
                "stake": stake,
                "acts": list(selection.acts.labels),
                "values": list(selection.values),
                "tied": [selection.acts.label(i) for i in selection.tied],
                "chosen": selection.chosen_act,
            }
        report.warn("direct inference is assumed applicable to the next trial")
        return report

    def selftest(self, seed: Optional[int], instances: Optional[int]) -> Report:
        """Ejecutar las verificaciones aleatorias de propiedades"""
        seed = int(self.settings.get_setting("default_seed")) if seed is None else seed
        instances = int(self.settings.get_setting("selftest_instances")) if instances is None else instances
        report = Report("selftest", {"seed": seed, "instances": instances})
        outcome: Dict[str, Any] = SelfTest(
            seed,
            instances,
            equivalence_tolerance=self._tol("equivalence_tolerance"),
            tie_tolerance=self._tol("tie_tolerance"),
        ).run()
        report.results = outcome
        if not outcome["passed"]:
            failed = [name for name, entry in outcome["properties"].items() if not entry["passed"]]
            report.error = {
                "type": EquivalenceFailure.__name__,
                "message": f"properties failed: {failed}",
                "location": None,
            }
            report.exit_status = EquivalenceFailure.exit_code
        return report
