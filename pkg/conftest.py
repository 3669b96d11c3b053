"""
Configuración compartida de pytest: ruta raíz e instancias de ejemplo.
"""
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, ROOT)

from models import CandidateSet, Distribution, Event, IIDModel, OutcomeSpace, SecondOrderDistribution  # noqa: E402

FIXTURES = os.path.join(ROOT, "fixtures")

# Material de referencia de solo lectura, no forma parte de la suite
collect_ignore = ["examples"]


@pytest.fixture
def fixture_path():
    """Ruta a un archivo de modelo incluido en fixtures/"""
    def resolve(name: str) -> str:
        return os.path.join(FIXTURES, name)
    return resolve


@pytest.fixture
def coin():
    """Moneda justa o cargada 0.8/0.2, con la misma probabilidad de segundo orden"""
    space = OutcomeSpace(["heads", "tails"])
    candidates = CandidateSet(
        space,
        [Distribution(space, [0.5, 0.5]), Distribution(space, [0.8, 0.2])],
        names=["fair", "biased"],
    )
    return SecondOrderDistribution(candidates, [0.5, 0.5])


@pytest.fixture
def die_model():
    """Dado justo o cargado al dos, prior 0.5/0.5"""
    space = OutcomeSpace(["one", "two", "three", "four", "five", "six"])
    fair = Distribution(space, [1 / 6] * 6)
    loaded = Distribution(space, [0.1, 0.5, 0.1, 0.1, 0.1, 0.1])
    candidates = CandidateSet(space, [fair, loaded], names=["fair", "loaded"])
    return IIDModel(candidates, SecondOrderDistribution(candidates, [0.5, 0.5]))


@pytest.fixture
def jeffrey_case():
    """P(a) = 0.3, P(b | a) = 0.6, P(b | not a) = 0.2"""
    space = OutcomeSpace(["w1", "w2", "w3", "w4"])
    p = Distribution(space, [0.18, 0.12, 0.14, 0.56])
    a = Event.from_labels(space, ["w1", "w2"])
    b = Event.from_labels(space, ["w1", "w3"])
    return p, a, b
