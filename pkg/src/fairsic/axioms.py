"""Exhaustive validation of the rank-function axioms.

A rank function must map the empty set to zero, be increasing under set
inclusion, and be submodular.  The validator enumerates every subset pair
per receiver, so it is guarded to small user counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import DEFAULT_AXIOM_TOL, RankFunctionSet, mask_users, rank_value
from .errors import ValidationError

MAX_VALIDATABLE_USERS = 12


@dataclass(frozen=True)
class ReceiverAxiomReport:
    receiver: int
    normalization_violation: float
    monotonicity_violation: float
    submodularity_violation: float

    def passed(self, tol: float) -> bool:
        return (
            self.normalization_violation <= tol
            and self.monotonicity_violation <= tol
            and self.submodularity_violation <= tol
        )


@dataclass(frozen=True)
class AxiomReport:
    tol: float
    receivers: tuple[ReceiverAxiomReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed(self.tol) for r in self.receivers)

    @property
    def worst_violation(self) -> float:
        return max(
            max(r.normalization_violation, r.monotonicity_violation, r.submodularity_violation)
            for r in self.receivers
        )


def subset_value_table(ranks: RankFunctionSet, receiver: int) -> np.ndarray:
    """All 2^K rank values of one receiver, indexed by subset bitmask."""
    size = 1 << ranks.num_users
    table = np.empty(size)
    for mask in range(size):
        table[mask] = rank_value(ranks, receiver, mask_users(mask))
    return table


def _receiver_violations(table: np.ndarray) -> tuple[float, float, float]:
    size = table.shape[0]
    masks = np.arange(size)
    normalization = abs(float(table[0]))
    monotonicity = 0.0
    submodularity = 0.0
    for s in range(size):
        f_s = table[s]
        superset = (masks & s) == s
        superset[s] = False
        if superset.any():
            worst = float(f_s - table[superset].min())
            if worst > monotonicity:
                monotonicity = worst
        union = table[masks | s]
        intersection = table[masks & s]
        worst = float((union + intersection - table - f_s).max())
        if worst > submodularity:
            submodularity = worst
    return normalization, max(0.0, monotonicity), max(0.0, submodularity)


def validate_rank_axioms(
    ranks: RankFunctionSet, tol: float = DEFAULT_AXIOM_TOL
) -> AxiomReport:
    """Check normalization, monotonicity and submodularity by enumeration.

    Reports the worst violation magnitude per axiom and receiver; a clean
    receiver reports zeros.  Nothing is raised on failure, the report
    carries it.
    """
    if ranks.num_users > MAX_VALIDATABLE_USERS:
        raise ValidationError(
            f"axiom validation enumerates all subset pairs and is limited to "
            f"K <= {MAX_VALIDATABLE_USERS}, got K = {ranks.num_users}"
        )
    reports = []
    for receiver in range(1, ranks.num_users + 1):
        table = subset_value_table(ranks, receiver)
        normalization, monotonicity, submodularity = _receiver_violations(table)
        reports.append(
            ReceiverAxiomReport(receiver, normalization, monotonicity, submodularity)
        )
    return AxiomReport(tol, tuple(reports))
