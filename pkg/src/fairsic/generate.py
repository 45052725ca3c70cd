"""Seeded random channel generation.

All randomness flows through a ``numpy.random.Generator`` backed by PCG64
and created from a single user-supplied seed; the same seed always yields
the same channel.
"""

from __future__ import annotations

import math

import numpy as np

from .channels import DmcChannel, GaussianChannel, TabulatedRanks

GAIN_RANGE = (0.05, 2.0)
POWER_RANGE = (0.5, 2.0)
NOISE_RANGE = (0.5, 2.0)
WEIGHT_RANGE = (0.1, 2.0)

GENERATOR_KINDS = ("gaussian", "dmc", "tabulated-submodular")


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_gaussian_channel(
    num_users: int,
    rng: np.random.Generator,
    *,
    power: float | None = None,
    noise: float | None = None,
) -> GaussianChannel:
    """Gains i.i.d. positive; powers and noise random unless pinned."""
    gains = rng.uniform(*GAIN_RANGE, size=(num_users, num_users))
    powers = (
        np.full(num_users, float(power))
        if power is not None
        else rng.uniform(*POWER_RANGE, size=num_users)
    )
    noise_vars = (
        np.full(num_users, float(noise))
        if noise is not None
        else rng.uniform(*NOISE_RANGE, size=num_users)
    )
    return GaussianChannel(gains, powers, noise_vars)


def _random_pmf(rng: np.random.Generator, size: int) -> np.ndarray:
    raw = rng.uniform(0.05, 1.0, size=size)
    return raw / raw.sum()


def random_dmc_channel(num_users: int, rng: np.random.Generator) -> DmcChannel:
    """Binary-alphabet channel with random valid pmfs everywhere."""
    pmfs = tuple(_random_pmf(rng, 2) for _ in range(num_users))
    joint = 1 << num_users
    transitions = tuple(
        np.vstack([_random_pmf(rng, 2) for _ in range(joint)])
        for _ in range(num_users)
    )
    return DmcChannel(pmfs, transitions)


def random_submodular_tables(
    num_users: int, rng: np.random.Generator
) -> TabulatedRanks:
    """Tabulated rank functions built as log2(1 + weighted subset sums).

    The generating form satisfies the rank axioms, so these tables always
    pass validation.
    """
    tables = []
    for _ in range(num_users):
        weights = rng.uniform(*WEIGHT_RANGE, size=num_users)
        table = {}
        for mask in range(1 << num_users):
            members = [k for k in range(num_users) if mask >> k & 1]
            table[mask] = math.log2(
                1.0 + math.fsum(float(weights[k]) for k in members)
            )
        tables.append(table)
    return TabulatedRanks(num_users, tuple(tables))


def generate_channel(
    kind: str,
    num_users: int,
    seed: int,
    *,
    power: float | None = None,
    noise: float | None = None,
):
    rng = rng_from_seed(seed)
    if kind == "gaussian":
        return random_gaussian_channel(num_users, rng, power=power, noise=noise)
    if kind == "dmc":
        return random_dmc_channel(num_users, rng)
    if kind == "tabulated-submodular":
        return random_submodular_tables(num_users, rng)
    raise ValueError(f"kind must be one of {GENERATOR_KINDS}, got {kind!r}")
