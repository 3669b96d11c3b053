from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from engine.tolerances import NORMALIZATION_TOLERANCE
from engine.errors import (
    ActOutOfRange,
    DimensionMismatch,
    InvalidShiftTarget,
    NegativeWeight,
    NotNormalized,
    UnknownName,
    ValidationError,
)


def _read_only(values: Any, ndim: int, what: str) -> np.ndarray:
    """Copy values into a float64 array that cannot be written to."""
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{what} must be numeric: {e}")
    if array.ndim != ndim:
        raise DimensionMismatch(f"{what} must be {ndim}-dimensional, got shape {array.shape}")
    array.flags.writeable = False
    return array


def _check_weights(array: np.ndarray, tol: float, what: str) -> None:
    negative = np.flatnonzero(array.ravel() < 0)
    if negative.size:
        first = int(negative[0])
        raise NegativeWeight(f"{what} has a negative weight {array.ravel()[first]!r} at position {first}")
    total = float(array.sum())
    if not abs(total - 1.0) <= tol:
        raise NotNormalized(f"{what} sums to {total!r}, not 1 (tolerance {tol:g})")


class OutcomeSpace:
    """Ordered finite set of distinct outcome labels"""
    def __init__(self, labels: Iterable[str]) -> None:
        self.labels: Tuple[str, ...] = tuple(str(label) for label in labels)
        if not self.labels:
            raise ValidationError("an outcome space needs at least one outcome")
        self._index: Dict[str, int] = {}
        for position, label in enumerate(self.labels):
            if label in self._index:
                raise ValidationError(f"duplicate outcome label {label!r}")
            self._index[label] = position

    @classmethod
    def indexed(cls, size: int, prefix: str = "P") -> "OutcomeSpace":
        """Space labelled prefix0 .. prefix{size-1}"""
        return cls(f"{prefix}{i}" for i in range(size))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownName(f"unknown outcome {label!r}; expected one of {list(self.labels)}")

    def label(self, position: int) -> str:
        return self.labels[position]

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutcomeSpace):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __str__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert OutcomeSpace to dictionary for serialization"""
        return {"labels": list(self.labels)}


class Event:
    """Subset of an outcome space, stored as outcome indices"""
    def __init__(self, space: OutcomeSpace, members: Iterable[int]) -> None:
        self.space: OutcomeSpace = space
        self.members: FrozenSet[int] = frozenset(int(m) for m in members)
        outside = [m for m in self.members if not 0 <= m < len(space)]
        if outside:
            raise DimensionMismatch(f"event members {sorted(outside)} lie outside a space of size {len(space)}")

    @classmethod
    def from_labels(cls, space: OutcomeSpace, labels: Iterable[str]) -> "Event":
        return cls(space, (space.index(label) for label in labels))

    @classmethod
    def full(cls, space: OutcomeSpace) -> "Event":
        return cls(space, range(len(space)))

    @classmethod
    def empty(cls, space: OutcomeSpace) -> "Event":
        return cls(space, ())

    @property
    def indices(self) -> List[int]:
        """Members in ascending order"""
        return sorted(self.members)

    @property
    def mask(self) -> np.ndarray:
        mask = np.zeros(len(self.space), dtype=bool)
        mask[self.indices] = True
        return mask

    def complement(self) -> "Event":
        return type(self)(self.space, set(range(len(self.space))) - self.members)

    def intersection(self, other: "Event") -> "Event":
        if other.space != self.space:
            raise DimensionMismatch("cannot intersect events over different spaces")
        return type(self)(self.space, self.members & other.members)

    def is_empty(self) -> bool:
        return not self.members

    def is_full(self) -> bool:
        return len(self.members) == len(self.space)

    def __contains__(self, position: int) -> bool:
        return position in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Event):
            return NotImplemented
        return self.space == other.space and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.space, self.members))

    def __str__(self) -> str:
        return "{" + ", ".join(self.space.label(i) for i in self.indices) + "}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert Event to dictionary for serialization"""
        return {"members": [self.space.label(i) for i in self.indices]}


class ModelEvent(Event):
    """
    Event over the candidate (row) index space of a joint distribution,
    e.g. the proposition [P(a) = x] as the set of matching candidates.
    """


class Distribution:
    """Nonnegative weights summing to one over an ordered finite outcome space"""
    def __init__(
        self,
        space: OutcomeSpace,
        weights: Sequence[float],
        tol: float = NORMALIZATION_TOLERANCE,
        renormalize: bool = False
    ) -> None:
        array = _read_only(weights, 1, "weights")
        if array.shape[0] != len(space):
            raise DimensionMismatch(f"{array.shape[0]} weights given for a space of {len(space)} outcomes")
        if renormalize:
            total = float(array.sum())
            if (array >= 0).all() and total > 0:
                array = array / total
                array.flags.writeable = False
        _check_weights(array, tol, "distribution")
        self.space: OutcomeSpace = space
        self._weights: np.ndarray = array

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def probability_of(self, label: str) -> float:
        return float(self._weights[self.space.index(label)])

    def as_list(self) -> List[float]:
        return [float(w) for w in self._weights]

    def allclose(self, other: "Distribution", tol: float) -> bool:
        return self.space == other.space and bool(np.all(np.abs(self._weights - other._weights) <= tol))

    def __getitem__(self, position: int) -> float:
        return float(self._weights[position])

    def __len__(self) -> int:
        return len(self.space)

    def __str__(self) -> str:
        body = ", ".join(f"{label}: {w:.6f}" for label, w in zip(self.space, self._weights))
        return f"Distribution({body})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert Distribution to dictionary for serialization"""
        return {label: float(w) for label, w in zip(self.space, self._weights)}


class CandidateSet:
    """Finite ordered set of first-order distributions over a shared world space"""
    def __init__(
        self,
        space: OutcomeSpace,
        candidates: Sequence[Distribution],
        names: Optional[Sequence[str]] = None
    ) -> None:
        self.space: OutcomeSpace = space
        self.candidates: Tuple[Distribution, ...] = tuple(candidates)
        if not self.candidates:
            raise ValidationError("a candidate set needs at least one distribution")
        for position, candidate in enumerate(self.candidates):
            if candidate.space != space:
                raise DimensionMismatch(f"candidate {position} is over {candidate.space}, expected {space}")
        if names is None:
            self.index_space = OutcomeSpace.indexed(len(self.candidates))
        else:
            self.index_space = OutcomeSpace(names)
            if len(self.index_space) != len(self.candidates):
                raise DimensionMismatch(f"{len(self.index_space)} names given for {len(self.candidates)} candidates")
        self._matrix = np.vstack([c.weights for c in self.candidates])
        self._matrix.flags.writeable = False

    @property
    def names(self) -> Tuple[str, ...]:
        return self.index_space.labels

    @property
    def matrix(self) -> np.ndarray:
        """m x n array, row i is candidate i"""
        return self._matrix

    def __len__(self) -> int:
        return len(self.candidates)

    def __getitem__(self, position: int) -> Distribution:
        return self.candidates[position]

    def __iter__(self) -> Iterator[Distribution]:
        return iter(self.candidates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CandidateSet):
            return NotImplemented
        return (
            self.space == other.space
            and self.index_space == other.index_space
            and bool(np.array_equal(self._matrix, other._matrix))
        )

    def __hash__(self) -> int:
        return hash((self.space, self.index_space))

    def __str__(self) -> str:
        return "Candidates:\n" + "\n".join(f"  {name}: {c}" for name, c in zip(self.names, self.candidates))

    def to_dict(self) -> Dict[str, Any]:
        """Convert CandidateSet to dictionary for serialization"""
        return {name: c.as_list() for name, c in zip(self.names, self.candidates)}


class SecondOrderDistribution:
    """Distribution over the candidate indices of a CandidateSet (PP)"""
    def __init__(
        self,
        over: CandidateSet,
        weights: Union[Distribution, Sequence[float]],
        tol: float = NORMALIZATION_TOLERANCE,
        renormalize: bool = False
    ) -> None:
        if isinstance(weights, Distribution):
            if weights.space != over.index_space:
                raise DimensionMismatch("second-order weights are not indexed by the candidate set")
            distribution = weights
        else:
            distribution = Distribution(over.index_space, weights, tol=tol, renormalize=renormalize)
        self.over: CandidateSet = over
        self.distribution: Distribution = distribution

    @property
    def candidates(self) -> CandidateSet:
        return self.over

    @property
    def space(self) -> OutcomeSpace:
        """The world space W shared by every candidate"""
        return self.over.space

    @property
    def weights(self) -> np.ndarray:
        return self.distribution.weights

    def as_list(self) -> List[float]:
        return self.distribution.as_list()

    def __getitem__(self, position: int) -> float:
        return self.distribution[position]

    def __len__(self) -> int:
        return len(self.over)

    def __str__(self) -> str:
        body = ", ".join(f"{name}: {w:.6f}" for name, w in zip(self.over.names, self.weights))
        return f"SecondOrder({body})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert SecondOrderDistribution to dictionary for serialization"""
        return {
            "candidates": self.over.to_dict(),
            "second_order": self.distribution.to_dict(),
        }


class JointDistribution:
    """Distribution over the product of candidate rows and world columns"""
    def __init__(
        self,
        rows: OutcomeSpace,
        space: OutcomeSpace,
        grid: Sequence[Sequence[float]],
        tol: float = NORMALIZATION_TOLERANCE
    ) -> None:
        array = _read_only(grid, 2, "joint grid")
        if array.shape != (len(rows), len(space)):
            raise DimensionMismatch(f"joint grid has shape {array.shape}, expected {(len(rows), len(space))}")
        _check_weights(array, tol, "joint grid")
        self.rows: OutcomeSpace = rows
        self.space: OutcomeSpace = space
        self._grid: np.ndarray = array

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def shape(self) -> Tuple[int, int]:
        return self._grid.shape

    def cell(self, row: int, world: int) -> float:
        return float(self._grid[row, world])

    def as_lists(self) -> List[List[float]]:
        return [[float(v) for v in row] for row in self._grid]

    def __str__(self) -> str:
        lines = [f"Joint over {self.rows} x {self.space}"]
        for label, row in zip(self.rows, self._grid):
            lines.append(f"  {label}: " + " ".join(f"{v:.6f}" for v in row))
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        """Convert JointDistribution to dictionary for serialization"""
        return {
            "rows": list(self.rows.labels),
            "worlds": list(self.space.labels),
            "grid": self.as_lists(),
        }


class UtilityMatrix:
    """Utility U(A_j, w) of every act in every world"""
    def __init__(self, acts: Sequence[str], space: OutcomeSpace, values: Sequence[Sequence[float]]) -> None:
        self.acts: OutcomeSpace = OutcomeSpace(acts)
        self.space: OutcomeSpace = space
        array = _read_only(values, 2, "utility matrix")
        if array.shape != (len(self.acts), len(space)):
            raise DimensionMismatch(f"utility matrix has shape {array.shape}, expected {(len(self.acts), len(space))}")
        if not np.all(np.isfinite(array)):
            raise ValidationError("utility values must be finite")
        self._values: np.ndarray = array

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def act_count(self) -> int:
        return len(self.acts)

    def row(self, act: int) -> np.ndarray:
        if not 0 <= act < len(self.acts):
            raise ActOutOfRange(f"act index {act} outside 0..{len(self.acts) - 1}")
        return self._values[act]

    def rescaled(self, alpha: float, beta: float) -> "UtilityMatrix":
        """Positive affine transform alpha * U + beta"""
        if not alpha > 0:
            raise ValidationError(f"affine scale must be positive, got {alpha!r}")
        return UtilityMatrix(self.acts.labels, self.space, alpha * self._values + beta)

    def __str__(self) -> str:
        lines = [f"Utilities over {self.space}"]
        for act, row in zip(self.acts, self._values):
            lines.append(f"  {act}: " + " ".join(f"{v:g}" for v in row))
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        """Convert UtilityMatrix to dictionary for serialization"""
        return {
            "acts": list(self.acts.labels),
            "values": [[float(v) for v in row] for row in self._values],
        }


Belief = Union[Distribution, SecondOrderDistribution, JointDistribution]


class DecisionProblem:
    """Acts with utilities, plus one of the three belief representations"""
    def __init__(self, utilities: UtilityMatrix, belief: Belief) -> None:
        if isinstance(belief, (Distribution, SecondOrderDistribution, JointDistribution)):
            world_space = belief.space
        else:
            raise ValidationError(f"unsupported belief type {type(belief).__name__}")
        if world_space != utilities.space:
            raise DimensionMismatch(f"belief is over {world_space}, utilities over {utilities.space}")
        self.utilities: UtilityMatrix = utilities
        self.belief: Belief = belief

    @property
    def mode(self) -> str:
        """'first', 'second' or 'joint' depending on the belief representation"""
        if isinstance(self.belief, SecondOrderDistribution):
            return "second"
        if isinstance(self.belief, JointDistribution):
            return "joint"
        return "first"

    def __str__(self) -> str:
        return f"DecisionProblem({self.mode} order, acts: {', '.join(self.utilities.acts)})"


class JeffreyShift:
    """A shift of the probability of a proposition a to a new value strictly inside (0, 1)"""
    def __init__(self, target: Event, new_probability: float) -> None:
        new_probability = float(new_probability)
        if not 0.0 < new_probability < 1.0:
            raise InvalidShiftTarget(
                f"shift target probability must lie strictly between 0 and 1, got {new_probability!r}; "
                "a shift to certainty is plain conditioning"
            )
        if target.is_empty() or target.is_full():
            raise InvalidShiftTarget("shift target must be neither empty nor the full space")
        self.target: Event = target
        self.new_probability: float = new_probability

    def __str__(self) -> str:
        return f"Shift(P({self.target}) -> {self.new_probability:g})"


class IIDModel:
    """Loading hypotheses for i.i.d. trials together with a prior over them"""
    def __init__(self, hypotheses: CandidateSet, prior: SecondOrderDistribution) -> None:
        if prior.over is not hypotheses and prior.over != hypotheses:
            raise DimensionMismatch("prior does not index the hypothesis list")
        self.hypotheses: CandidateSet = hypotheses
        self.prior: SecondOrderDistribution = prior

    @classmethod
    def from_prior(cls, prior: SecondOrderDistribution) -> "IIDModel":
        return cls(prior.over, prior)

    @property
    def space(self) -> OutcomeSpace:
        return self.hypotheses.space

    def __str__(self) -> str:
        return f"IIDModel({len(self.hypotheses)} hypotheses over {self.space})"


class DutchBookWitness:
    """
    A unit bet on a single world, bought at the cheaper and sold at the dearer
    of the claimed price and the hierarchical (predictive) price.
    """
    def __init__(self, world: str, claimed_price: float, fair_price: float) -> None:
        self.world: str = world
        self.claimed_price: float = claimed_price
        self.fair_price: float = fair_price
        self.buy_price: float = min(claimed_price, fair_price)
        self.sell_price: float = max(claimed_price, fair_price)
        # The bettor trades with the agent at the agent's claimed price.
        self.bettor_action: str = "sell" if claimed_price > fair_price else "buy"
        self.expected_profit: float = self.sell_price - self.buy_price

    def __str__(self) -> str:
        return (
            f"{self.bettor_action} the unit bet on {self.world} at {self.claimed_price:.6f}, "
            f"fair hierarchical price {self.fair_price:.6f}, "
            f"expected profit {self.expected_profit:.6f} per unit"
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert DutchBookWitness to dictionary for serialization"""
        return {
            "world": self.world,
            "bettor_action": self.bettor_action,
            "claimed_price": self.claimed_price,
            "fair_price": self.fair_price,
            "buy_price": self.buy_price,
            "sell_price": self.sell_price,
            "expected_profit": self.expected_profit,
        }


class CoherenceReport:
    """Result of comparing a claimed first-order distribution to the predictive"""
    def __init__(
        self,
        gap: float,
        world_index: int,
        claimed: Distribution,
        predictive: Distribution,
        witness: Optional[DutchBookWitness]
    ) -> None:
        self.gap: float = gap
        self.world_index: int = world_index
        self.world: str = claimed.space.label(world_index)
        self.claimed: Distribution = claimed
        self.predictive: Distribution = predictive
        self.witness: Optional[DutchBookWitness] = witness

    @property
    def coherent(self) -> bool:
        return self.witness is None

    def __str__(self) -> str:
        if self.coherent:
            return f"Coherent (gap {self.gap:.6f})"
        return f"Incoherent: gap {self.gap:.6f} at {self.world}; {self.witness}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert CoherenceReport to dictionary for serialization"""
        return {
            "gap": self.gap,
            "world": self.world,
            "coherent": self.coherent,
            "claimed": self.claimed.as_list(),
            "predictive": self.predictive.as_list(),
            "witness": self.witness.to_dict() if self.witness else None,
        }


class NoWitness:
    """Marker returned when no same-marginals witness exists"""
    def __init__(self, reason: str) -> None:
        self.reason: str = reason

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"NoWitness({self.reason})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert NoWitness to dictionary for serialization"""
        return {"witness": None, "reason": self.reason}


class ActSelection:
    """Expected utility of every act and the optimal choice"""
    def __init__(self, acts: OutcomeSpace, values: Sequence[float], tied: Sequence[int], mode: str) -> None:
        self.acts: OutcomeSpace = acts
        self.values: Tuple[float, ...] = tuple(float(v) for v in values)
        self.tied: Tuple[int, ...] = tuple(sorted(tied))
        self.chosen: int = self.tied[0]
        self.mode: str = mode

    @property
    def chosen_act(self) -> str:
        return self.acts.label(self.chosen)

    def __str__(self) -> str:
        body = ", ".join(f"{act}: {v:.6f}" for act, v in zip(self.acts, self.values))
        return f"Choose {self.chosen_act} ({self.mode} order; {body})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert ActSelection to dictionary for serialization"""
        return {
            "mode": self.mode,
            "values": {act: v for act, v in zip(self.acts, self.values)},
            "tied": [self.acts.label(i) for i in self.tied],
            "chosen": self.chosen_act,
        }


class ModeComparison:
    """Act selections of one hierarchical belief under all three representations"""
    def __init__(self, selections: Dict[str, ActSelection]) -> None:
        self.selections: Dict[str, ActSelection] = dict(selections)
        columns = np.array([s.values for s in self.selections.values()])
        self.max_disagreement: float = float(np.max(columns.max(axis=0) - columns.min(axis=0)))
        self.tied_sets_agree: bool = len({s.tied for s in self.selections.values()}) == 1

    def __str__(self) -> str:
        return (
            f"ModeComparison(max disagreement {self.max_disagreement:.3g}, "
            f"tied sets {'agree' if self.tied_sets_agree else 'differ'})"
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert ModeComparison to dictionary for serialization"""
        return {
            "selections": {mode: s.to_dict() for mode, s in self.selections.items()},
            "max_disagreement": self.max_disagreement,
            "tied_sets_agree": self.tied_sets_agree,
        }
