"""
Modelo del archivo de modelo: lectura y validación de mundos, candidatos,
probabilidad de segundo orden, utilidades, eventos y observaciones.
"""
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from models import (
    CandidateSet,
    Distribution,
    Event,
    IIDModel,
    OutcomeSpace,
    SecondOrderDistribution,
    UtilityMatrix,
)
from engine.errors import HigherOrderError, MissingSection, ModelParseError, UnknownName, ValidationError
from engine.tolerances import NORMALIZATION_TOLERANCE

KNOWN_SECTIONS = ("worlds", "candidates", "second_order", "claimed", "utilities", "events", "observations")


def _reject_duplicates(pairs: List[tuple]) -> Dict[str, Any]:
    """object_pairs_hook que rechaza claves repetidas"""
    result: Dict[str, Any] = {}
    for key, value in pairs:
        if key in result:
            raise ModelParseError(f"duplicate key {key!r}")
        result[key] = value
    return result


def _reject_constant(name: str) -> None:
    raise ModelParseError(f"{name} is not a valid number in a model file")


def _number_list(raw: Any, location: str) -> List[float]:
    """Verificar que el valor sea una lista de números"""
    if not isinstance(raw, list):
        raise ModelParseError("expected a list of numbers", location)
    for position, value in enumerate(raw):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ModelParseError(f"entry {position} is {value!r}, not a number", location)
    return [float(v) for v in raw]


def _label_list(raw: Any, location: str) -> List[str]:
    if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
        raise ModelParseError("expected a list of labels", location)
    return list(raw)


def parse_labels(text: str) -> List[str]:
    """Separar una lista de etiquetas escrita como 'a,b,c'"""
    return [label.strip() for label in text.split(",") if label.strip()]


class ModelFile:
    """Archivo de modelo ya validado"""

    def __init__(
        self,
        source: str,
        candidates: CandidateSet,
        second_order: SecondOrderDistribution,
        claimed: Optional[Distribution] = None,
        utilities: Optional[UtilityMatrix] = None,
        events: Optional[Dict[str, Event]] = None,
        observations: Optional[List[int]] = None
    ) -> None:
        """
        Inicializar el modelo.

        Args:
            source: Ruta del archivo ('-' para entrada estándar)
            candidates: Conjunto de distribuciones candidatas
            second_order: Distribución de segundo orden sobre los candidatos
            claimed: Distribución de primer orden declarada (opcional)
            utilities: Matriz de utilidades (opcional)
            events: Eventos con nombre (opcional)
            observations: Observaciones como índices de mundo (opcional)
        """
        self.source = source
        self.candidates = candidates
        self.second_order = second_order
        self.claimed = claimed
        self.utilities = utilities
        self.events = events or {}
        self.observations = observations or []
        self.logger = logging.getLogger("HigherOrder.ModelFile")

    @property
    def worlds(self) -> OutcomeSpace:
        return self.candidates.space

    @classmethod
    def load(cls, path: str, tol: float = NORMALIZATION_TOLERANCE) -> "ModelFile":
        """
        Cargar un modelo desde un archivo JSON o desde la entrada estándar.

        Args:
            path: Ruta del archivo, o '-' para leer la entrada estándar
            tol: Tolerancia de normalización

        Returns:
            ModelFile: Modelo validado
        """
        logger = logging.getLogger("HigherOrder.ModelFile")
        try:
            if path == "-":
                text = sys.stdin.read()
            else:
                with open(path, "r", encoding="utf-8") as f:
                    text = f.read()
        except OSError as e:
            raise ModelParseError(f"cannot read model file: {e.strerror or e}", path)
        try:
            raw = json.loads(text, object_pairs_hook=_reject_duplicates, parse_constant=_reject_constant)
        except json.JSONDecodeError as e:
            raise ModelParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", path)
        except ModelParseError as e:
            raise e.with_location(path)
        logger.info(f"Modelo leído desde {path}")
        return cls.from_dict(raw, source=path, tol=tol)

    @classmethod
    def from_dict(cls, raw: Any, source: str = "<memory>", tol: float = NORMALIZATION_TOLERANCE) -> "ModelFile":
        """
        Construir el modelo a partir del documento ya decodificado.

        Raises:
            ModelParseError: Forma incorrecta del documento
            ValidationError: Valores que violan un invariante, con su ubicación
        """
        if not isinstance(raw, dict):
            raise ModelParseError("a model file must be a JSON object", source)
        for section in raw:
            if section not in KNOWN_SECTIONS:
                raise ModelParseError(f"unknown section {section!r}; expected {list(KNOWN_SECTIONS)}", source)
        for section in ("worlds", "candidates"):
            if section not in raw:
                raise ModelParseError(f"missing required section {section!r}", source)

        worlds = cls._section("worlds", lambda: OutcomeSpace(_label_list(raw["worlds"], "worlds")))
        candidates = cls._parse_candidates(raw["candidates"], worlds, tol)
        second_order = cls._parse_second_order(raw.get("second_order"), candidates, tol)

        claimed = None
        if "claimed" in raw:
            claimed = cls._section(
                "claimed", lambda: Distribution(worlds, _number_list(raw["claimed"], "claimed"), tol=tol)
            )
        utilities = None
        if "utilities" in raw:
            utilities = cls._section("utilities", lambda: cls._parse_utilities(raw["utilities"], worlds))
        events: Dict[str, Event] = {}
        if "events" in raw:
            if not isinstance(raw["events"], dict):
                raise ModelParseError("expected a mapping from event name to world labels", "events")
            for name, members in raw["events"].items():
                location = f"events.{name}"
                events[name] = cls._section(
                    location, lambda: Event.from_labels(worlds, _label_list(members, location))
                )
        observations: List[int] = []
        if "observations" in raw:
            labels = _label_list(raw["observations"], "observations")
            observations = cls._section("observations", lambda: [worlds.index(label) for label in labels])

        return cls(source, candidates, second_order, claimed, utilities, events, observations)

    @staticmethod
    def _section(location: str, build):
        """Ejecutar build agregando la ubicación a cualquier error del motor"""
        try:
            return build()
        except HigherOrderError as e:
            raise e.with_location(location)

    @classmethod
    def _parse_candidates(cls, raw: Any, worlds: OutcomeSpace, tol: float) -> CandidateSet:
        if not isinstance(raw, dict) or not raw:
            raise ModelParseError("expected a non-empty mapping from candidate name to weights", "candidates")
        distributions = []
        for name, weights in raw.items():
            location = f"candidates.{name}"
            distributions.append(
                cls._section(location, lambda: Distribution(worlds, _number_list(weights, location), tol=tol))
            )
        return cls._section("candidates", lambda: CandidateSet(worlds, distributions, names=list(raw)))

    @classmethod
    def _parse_second_order(cls, raw: Any, candidates: CandidateSet, tol: float) -> SecondOrderDistribution:
        if raw is None:
            if len(candidates) == 1:
                return SecondOrderDistribution(candidates, [1.0])
            raise ModelParseError("missing required section 'second_order'", "second_order")
        if isinstance(raw, dict):
            for name in raw:
                if name not in candidates.names:
                    raise UnknownName(f"no candidate named {name!r}", f"second_order.{name}")
            missing = [name for name in candidates.names if name not in raw]
            if missing:
                raise ValidationError(f"no second-order weight for {missing}", "second_order")
            weights = _number_list([raw[name] for name in candidates.names], "second_order")
        else:
            weights = _number_list(raw, "second_order")
        return cls._section("second_order", lambda: SecondOrderDistribution(candidates, weights, tol=tol))

    @staticmethod
    def _parse_utilities(raw: Any, worlds: OutcomeSpace) -> UtilityMatrix:
        if not isinstance(raw, dict) or set(raw) != {"acts", "values"}:
            raise ModelParseError("expected an object with 'acts' and 'values'")
        acts = _label_list(raw["acts"], "utilities.acts")
        if not isinstance(raw["values"], list):
            raise ModelParseError("expected one row of utilities per act", "utilities.values")
        rows = [_number_list(row, f"utilities.values[{i}]") for i, row in enumerate(raw["values"])]
        return UtilityMatrix(acts, worlds, rows)

    def event(self, name: str) -> Event:
        """Buscar un evento por nombre"""
        try:
            return self.events[name]
        except KeyError:
            raise UnknownName(f"unknown event {name!r}; defined events: {sorted(self.events)}", "events")

    def world_indices(self, labels: Sequence[str], location: str = "observations") -> List[int]:
        """Convertir etiquetas de mundo a índices"""
        return self._section(location, lambda: [self.worlds.index(label) for label in labels])

    def require_utilities(self) -> UtilityMatrix:
        if self.utilities is None:
            raise MissingSection("the model file has no 'utilities' section", self.source)
        return self.utilities

    def iid_model(self) -> IIDModel:
        """Los candidatos como hipótesis de carga con la distribución de segundo orden como prior"""
        return IIDModel(self.candidates, self.second_order)

    def duplicate_candidates(self) -> List[tuple]:
        """Pares de candidatos con pesos idénticos (se conservan sin fusionar)"""
        names = self.candidates.names
        matrix = self.candidates.matrix
        return [
            (names[i], names[k])
            for i in range(len(names))
            for k in range(i + 1, len(names))
            if (matrix[i] == matrix[k]).all()
        ]
