"""Exhaustive enumeration of decoding profiles and greedy certification.

Only distinct decoding configurations are enumerated: the decoded suffix
in decode order plus a canonical (ascending) undecoded prefix.  Orderings
inside the prefix never change any rate, so this loses nothing while
shrinking the joint space.  Per receiver there are
sum over t of (K-1)!/t! configurations: 1, 2, 5, 16 for K = 1..4.

The search is a full scan, never pruned: this module is the trust anchor
the greedy solver is certified against.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .channels import DEFAULT_AXIOM_TOL, RankFunctionSet
from .errors import CapacityError
from .greedy import SolveReport, greedy_profile
from .ordering import DecodingOrder, DecodingProfile
from .rates import receiver_rate_bounds


@dataclass(frozen=True)
class EnumerationBudget:
    max_joint_configs: int = 10_000_000
    K_limit: int = 4

    def __post_init__(self) -> None:
        if self.max_joint_configs < 1 or self.K_limit < 1:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class BruteForceResult:
    opt_min_rate: float
    best_profile: DecodingProfile
    num_configs: int


@dataclass(frozen=True)
class CertificationReport:
    greedy: SolveReport
    oracle_min_rate: float
    oracle_best_profile: DecodingProfile
    gap: float
    passed: bool
    num_configs: int
    counterexample: DecodingProfile | None

    @property
    def greedy_min_rate(self) -> float:
        return self.greedy.min_rate


def count_orders(num_users: int) -> int:
    """Distinct decoding configurations per receiver."""
    return sum(
        math.factorial(num_users - 1) // math.factorial(t)
        for t in range(num_users)
    )


def enumerate_orders(
    num_users: int, receiver: int, budget: EnumerationBudget | None = None
) -> list[DecodingOrder]:
    """Every distinct decoding configuration for one receiver.

    Covers each subset containing the receiver's own user, in every decode
    order ending with that user, prefix canonical.
    """
    budget = budget or EnumerationBudget()
    if num_users > budget.K_limit:
        raise CapacityError(
            f"enumeration is limited to K <= {budget.K_limit}, got K = {num_users}"
        )
    others = [u for u in range(1, num_users + 1) if u != receiver]
    orders = []
    for decoded_before in range(num_users):
        for head in permutations(others, decoded_before):
            orders.append(
                DecodingOrder.from_decode_sequence(
                    receiver, head + (receiver,), num_users
                )
            )
    return orders


def _scan_chunk(
    config_min: list[list[float]], start: int, stop: int
) -> tuple[float, tuple[int, ...] | None]:
    """Full scan over combos whose first index lies in [start, stop).

    Combos are visited in lexicographic index order and the first strict
    improvement is kept, so the winner is the lexicographically smallest
    optimum of the chunk.  Every leaf is visited; there is no pruning.
    """
    levels = len(config_min)
    best_rate = -math.inf
    best_combo: tuple[int, ...] | None = None
    combo = [0] * levels

    def descend(level: int, current: float) -> None:
        nonlocal best_rate, best_combo
        if level == levels:
            if current > best_rate:
                best_rate = current
                best_combo = tuple(combo)
            return
        for index, bound in enumerate(config_min[level]):
            combo[level] = index
            descend(level + 1, current if current <= bound else bound)

    for first in range(start, stop):
        combo[0] = first
        descend(1, config_min[0][first])
    return best_rate, best_combo


def brute_force_maxmin(
    ranks: RankFunctionSet,
    budget: EnumerationBudget | None = None,
    *,
    clamp_tol: float = DEFAULT_AXIOM_TOL,
    jobs: int = 1,
) -> BruteForceResult:
    """True max-min optimum by evaluating every joint decoding profile.

    The minimum rate of a profile equals the smallest rate cap any
    receiver imposes on any user it decodes (every user has at least one
    decoder), so per-receiver caps are computed once per configuration and
    the joint scan reduces to minima of precomputed floats.  Ties on the
    optimum resolve to the lexicographically smallest concatenated
    permutation encoding, independent of scheduling.
    """
    budget = budget or EnumerationBudget()
    num_users = ranks.num_users
    per_receiver = [
        sorted(enumerate_orders(num_users, j, budget), key=lambda o: o.perm)
        for j in range(1, num_users + 1)
    ]
    total = math.prod(len(orders) for orders in per_receiver)
    if total > budget.max_joint_configs:
        raise CapacityError(
            f"{total} joint profiles exceed the budget of "
            f"{budget.max_joint_configs}"
        )
    config_min = [
        [
            min(receiver_rate_bounds(ranks, order, clamp_tol=clamp_tol).values())
            for order in orders
        ]
        for orders in per_receiver
    ]

    first_count = len(per_receiver[0])
    jobs = max(1, min(jobs, first_count))
    if jobs == 1:
        best_rate, best_combo = _scan_chunk(config_min, 0, first_count)
    else:
        bounds = [first_count * i // jobs for i in range(jobs + 1)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_scan_chunk, config_min, bounds[i], bounds[i + 1])
                for i in range(jobs)
            ]
            results = [f.result() for f in futures]
        best_rate, best_combo = -math.inf, None
        for rate, combo in results:
            if combo is None:
                continue
            if rate > best_rate or (rate == best_rate and combo < best_combo):
                best_rate, best_combo = rate, combo
    profile = DecodingProfile(
        tuple(per_receiver[j][index] for j, index in enumerate(best_combo))
    )
    return BruteForceResult(best_rate, profile, total)


def certify(
    ranks: RankFunctionSet,
    budget: EnumerationBudget | None = None,
    *,
    tol: float = DEFAULT_AXIOM_TOL,
    jobs: int = 1,
    force: bool = False,
) -> CertificationReport:
    """Compare the greedy solution against the exhaustive optimum."""
    greedy = greedy_profile(ranks, tol=tol, force=force)
    oracle = brute_force_maxmin(ranks, budget, jobs=jobs)
    gap = abs(oracle.opt_min_rate - greedy.min_rate)
    passed = gap <= tol
    return CertificationReport(
        greedy=greedy,
        oracle_min_rate=oracle.opt_min_rate,
        oracle_best_profile=oracle.best_profile,
        gap=gap,
        passed=passed,
        num_configs=oracle.num_configs,
        counterexample=None if passed else oracle.best_profile,
    )
