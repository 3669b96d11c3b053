"""
Flattening of a second-order distribution into a joint distribution over
candidates x worlds, and the marginals that recover the hierarchy.
"""
import logging
from typing import Optional, Union

import numpy as np

from models import (
    CandidateSet,
    Distribution,
    Event,
    JointDistribution,
    ModelEvent,
    NoWitness,
    SecondOrderDistribution,
)
from engine.errors import DimensionMismatch, ZeroProbabilityEvent
from engine.tolerances import MATCH_TOLERANCE, PRODUCT_FORM_TOLERANCE, ZERO_TOLERANCE

logger = logging.getLogger("HigherOrder.Hierarchy")


def flatten(pp: SecondOrderDistribution) -> JointDistribution:
    """
    Joint distribution with cell (i, w) = PP(i) * P_i(w).

    Args:
        pp: Second-order distribution over a candidate set

    Returns:
        JointDistribution: m x n grid, rows labelled by candidate names
    """
    grid = pp.weights[:, np.newaxis] * pp.over.matrix
    return JointDistribution(pp.over.index_space, pp.space, grid)


def marginal_world(j: JointDistribution) -> Distribution:
    """Column sums of the grid"""
    return Distribution(j.space, j.grid.sum(axis=0))


def marginal_model(j: JointDistribution) -> Distribution:
    """Row sums of the grid, a distribution over candidate indices"""
    return Distribution(j.rows, j.grid.sum(axis=1))


def is_product_form(j: JointDistribution, tol: float = PRODUCT_FORM_TOLERANCE) -> bool:
    """True iff every cell equals the product of its row and column marginals within tol"""
    rows = j.grid.sum(axis=1)
    columns = j.grid.sum(axis=0)
    return bool(np.all(np.abs(j.grid - np.outer(rows, columns)) <= tol))


def same_marginals_witness(j: JointDistribution) -> Union[JointDistribution, NoWitness]:
    """
    A different joint with the same row and column sums.

    Takes the lexicographically first rectangle (i1 < i2, w1 < w2) whose four
    cells are strictly positive and moves eps = half its smallest cell onto
    the (i1, w1) / (i2, w2) diagonal, off the anti-diagonal.

    On a product-form input every witness cell moves by exactly eps away
    from the product of its marginals, so the witness fails is_product_form
    only when eps exceeds the tolerance used there. Rectangles whose smallest
    cell is at most twice that tolerance give a witness that still passes.

    Returns:
        JointDistribution, or NoWitness when no such rectangle exists
    """
    m, n = j.shape
    if m < 2 or n < 2:
        return NoWitness(f"a {m}x{n} joint is determined by its marginals")
    positive = j.grid > 0
    for i1 in range(m - 1):
        for i2 in range(i1 + 1, m):
            both = positive[i1] & positive[i2]
            columns = np.flatnonzero(both)
            if columns.size < 2:
                continue
            w1, w2 = int(columns[0]), int(columns[1])
            corners = (j.grid[i1, w1], j.grid[i1, w2], j.grid[i2, w1], j.grid[i2, w2])
            eps = 0.5 * min(corners)
            grid = j.grid.copy()
            grid[i1, w1] += eps
            grid[i2, w2] += eps
            grid[i1, w2] -= eps
            grid[i2, w1] -= eps
            logger.debug(f"Witness rectangle rows ({i1}, {i2}) columns ({w1}, {w2}), eps = {eps:.6g}")
            return JointDistribution(j.rows, j.space, grid)
    return NoWitness("no 2x2 rectangle of strictly positive cells")


def unflatten(j: JointDistribution, zero_tol: float = ZERO_TOLERANCE) -> SecondOrderDistribution:
    """
    Read a joint distribution back as a hierarchy.

    PP is the row marginal and candidate i is row i divided by its mass.

    Raises:
        ZeroProbabilityEvent: A row has no mass, so its candidate is undefined
    """
    masses = j.grid.sum(axis=1)
    candidates = []
    for label, row, mass in zip(j.rows, j.grid, masses):
        if mass <= zero_tol:
            raise ZeroProbabilityEvent(f"row {label} has no mass; its candidate is undefined")
        candidates.append(Distribution(j.space, row / mass))
    over = CandidateSet(j.space, candidates, names=j.rows.labels)
    return SecondOrderDistribution(over, masses)


def model_event(candidates: CandidateSet, a: Event, x: float, tol: float = MATCH_TOLERANCE) -> ModelEvent:
    """The proposition [P(a) = x]: candidates whose probability for a is within tol of x"""
    if a.space != candidates.space:
        raise DimensionMismatch(f"event over {a.space} does not match candidates over {candidates.space}")
    p_a = candidates.matrix[:, a.mask].sum(axis=1)
    return ModelEvent(candidates.index_space, np.flatnonzero(np.abs(p_a - x) <= tol))


def condition_joint(
    j: JointDistribution,
    rows: Optional[ModelEvent] = None,
    columns: Optional[Event] = None,
    zero_tol: float = ZERO_TOLERANCE
) -> JointDistribution:
    """
    Condition the joint on the cell set rows x columns (None leaves a side unrestricted).

    Raises:
        ZeroProbabilityEvent: The cell set has no mass
    """
    row_mask = np.ones(j.shape[0], dtype=bool)
    column_mask = np.ones(j.shape[1], dtype=bool)
    if rows is not None:
        if rows.space != j.rows:
            raise DimensionMismatch("model event is not over the joint's rows")
        row_mask = rows.mask
    if columns is not None:
        if columns.space != j.space:
            raise DimensionMismatch("world event is not over the joint's columns")
        column_mask = columns.mask
    cells = np.outer(row_mask, column_mask)
    mass = float(j.grid[cells].sum())
    if mass <= zero_tol:
        raise ZeroProbabilityEvent(f"conditioning cell set has probability {mass!r}")
    return JointDistribution(j.rows, j.space, np.where(cells, j.grid / mass, 0.0))
