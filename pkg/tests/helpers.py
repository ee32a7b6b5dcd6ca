"""Shared oracles and random generators for the test suite.

The naive bel/pl oracles deliberately use the O(4^n) double loop over
subsets, independent of the package's zeta-transform path, so the two
implementations check each other.
"""

from __future__ import annotations

import random
from math import fsum

from beliefkit import CLOSED, EMPTY, Frame, MassFunction, OPEN

LETTERS = "abcdefgh"


def naive_bel(m: MassFunction, query: int) -> float:
    return fsum(v for k, v in m.masses.items() if k != EMPTY and (k | query) == query)


def naive_pl(m: MassFunction, query: int) -> float:
    return fsum(v for k, v in m.masses.items() if k & query)


def naive_bel_table(m: MassFunction) -> list[float]:
    return [naive_bel(m, key) for key in m.frame.subsets()]


def random_frame(rng: random.Random, min_n: int = 1, max_n: int = 4) -> Frame:
    n = rng.randint(min_n, max_n)
    return Frame(tuple(LETTERS[:n]))


def random_mass(
    rng: random.Random,
    frame: Frame,
    world: str = CLOSED,
    max_focals: int = 6,
) -> MassFunction:
    candidates = list(range(1, frame.num_subsets))
    if world == OPEN and rng.random() < 0.5:
        candidates.append(EMPTY)
    k = rng.randint(1, min(max_focals, len(candidates)))
    focals = rng.sample(candidates, k)
    weights = [rng.random() + 0.05 for _ in focals]
    total = sum(weights)
    return MassFunction(frame, {f: w / total for f, w in zip(focals, weights)}, world)


def random_key(rng: random.Random, frame: Frame, nonempty: bool = False) -> int:
    low = 1 if nonempty else 0
    return rng.randint(low, frame.full)


def mass_diff(m1: MassFunction, m2: MassFunction) -> float:
    """Largest componentwise difference between two mass assignments."""
    keys = set(m1.masses) | set(m2.masses)
    return max((abs(m1.mass(k) - m2.mass(k)) for k in keys), default=0.0)
