"""Achieved user rates under a decoding profile.

The rate cap a receiver imposes on a user it decodes is the marginal
rank-value gain between the order prefix up to the user and the prefix
just before it.  A user's achieved rate is the minimum cap over all
receivers that decode it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import DEFAULT_AXIOM_TOL, DEFAULT_EQ_TOL, RankFunctionSet, rank_value
from .errors import NonRankInputError
from .ordering import DecodingOrder, DecodingProfile, decoded_set, position_of


@dataclass(frozen=True)
class RateVector:
    """Per-user rates in bits per channel use, entry k-1 for user k."""

    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))

    def __len__(self) -> int:
        return len(self.rates)

    def __iter__(self):
        return iter(self.rates)

    def __getitem__(self, index: int) -> float:
        return self.rates[index]


def _clamped(diff: float, clamp_tol: float) -> float:
    if diff >= 0.0:
        return diff
    if diff >= -clamp_tol:
        return 0.0
    raise NonRankInputError(
        f"marginal rank difference {diff!r} is negative beyond tolerance "
        f"{clamp_tol}; the backend is not monotone"
    )


def receiver_rate_bounds(
    ranks: RankFunctionSet,
    order: DecodingOrder,
    *,
    clamp_tol: float = DEFAULT_AXIOM_TOL,
) -> dict[int, float]:
    """Rate caps this receiver imposes, keyed by decoded user.

    Walks the decoded suffix once; each cap is the rank value of the
    prefix through the user minus the rank value of the prefix before it.
    Sub-tolerance negative differences clamp to zero.
    """
    prefix = set(order.perm[: order.decoded_from - 1])
    previous = rank_value(ranks, order.receiver, prefix)
    bounds: dict[int, float] = {}
    for position in range(order.decoded_from, order.num_users + 1):
        user = order.perm[position - 1]
        prefix.add(user)
        current = rank_value(ranks, order.receiver, prefix)
        bounds[user] = _clamped(current - previous, clamp_tol)
        previous = current
    return bounds


def rate_of_user(
    ranks: RankFunctionSet,
    profile: DecodingProfile,
    user: int,
    *,
    clamp_tol: float = DEFAULT_AXIOM_TOL,
) -> float:
    """Achieved rate of one user: the binding cap among its decoders."""
    caps = []
    for order in profile.orders:
        if user not in decoded_set(order):
            continue
        prefix = frozenset(order.perm[: position_of(order, user) - 1])
        through = frozenset(order.perm[: position_of(order, user)])
        diff = rank_value(ranks, order.receiver, through) - rank_value(
            ranks, order.receiver, prefix
        )
        caps.append(_clamped(diff, clamp_tol))
    return min(caps)


def rate_vector(
    ranks: RankFunctionSet,
    profile: DecodingProfile,
    *,
    clamp_tol: float = DEFAULT_AXIOM_TOL,
) -> RateVector:
    """Achieved rates of all users under the profile."""
    best = [math.inf] * profile.num_users
    for order in profile.orders:
        for user, cap in receiver_rate_bounds(ranks, order, clamp_tol=clamp_tol).items():
            if cap < best[user - 1]:
                best[user - 1] = cap
    return RateVector(tuple(best))


def min_rate(
    rates: RateVector, *, tie_tol: float = DEFAULT_EQ_TOL
) -> tuple[float, frozenset[int]]:
    """Minimum rate and every user attaining it within ``tie_tol``."""
    if len(rates) == 0:
        raise ValueError("rate vector is empty")
    value = min(rates.rates)
    users = frozenset(
        k for k, r in enumerate(rates.rates, start=1) if r <= value + tie_tol
    )
    return value, users
