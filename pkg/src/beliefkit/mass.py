"""Mass functions, the bel/pl lattice transforms, and the pignistic transform.

A mass function allocates unit mass to subsets of a frame. ``bel(A)`` adds up
the mass of every non-empty subset of ``A`` and ``pl(A)`` the mass of every
set that meets ``A``; both are computed for all ``2**n`` subsets at once with
an in-place subset-sum (zeta) transform, ``O(n * 2**n)``. The inverse Möbius
transform recovers masses from a belief table.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import NoSolutionError
from .frames import EMPTY, Frame, bit_members

OPEN = "open"
CLOSED = "closed"

# Totals are accepted within SUM_TOL of 1 and then rescaled to sum exactly to
# 1, unless they are already within RESCALE_TOL (so re-parsing serialized
# output is a fixed point).
SUM_TOL = 1e-9
RESCALE_TOL = 1e-12


def _zeta_in_place(values: list[float], n: int) -> None:
    """values[S] <- sum of values[T] over T ⊆ S."""
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                values[mask] += values[mask ^ bit]


def _mobius_in_place(values: list[float], n: int) -> None:
    """Inverse of the subset-sum transform."""
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                values[mask] -= values[mask ^ bit]


@dataclass(frozen=True)
class MassFunction:
    """A basic belief assignment over the subsets of a frame.

    Only the focal sets (non-zero masses) are stored. Under the closed-world
    assumption no mass may sit on the empty set; the open world permits it.
    Instances are immutable and safe to share between threads.
    """

    frame: Frame
    masses: Mapping[int, float]
    world: str = CLOSED

    def __post_init__(self) -> None:
        if self.world not in (OPEN, CLOSED):
            raise ValueError(f"world must be {OPEN!r} or {CLOSED!r}, got {self.world!r}")
        cleaned: dict[int, float] = {}
        for key, value in self.masses.items():
            key = self.frame.check_key(key)
            value = float(value)
            if value < 0.0:
                raise ValueError(
                    f"negative mass {value!r} on {self.frame.format_set(key)}"
                )
            if value:
                cleaned[key] = value
        total = fsum(cleaned.values())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"masses sum to {total!r}, expected 1 within {SUM_TOL}")
        if abs(total - 1.0) > RESCALE_TOL:
            cleaned = {key: value / total for key, value in cleaned.items()}
        if self.world == CLOSED and EMPTY in cleaned:
            raise ValueError("a closed-world mass function cannot put mass on the empty set")
        object.__setattr__(self, "masses", MappingProxyType(cleaned))

    @classmethod
    def from_labels(
        cls,
        frame: Frame,
        label_masses: Mapping[Iterable[str], float],
        world: str = CLOSED,
    ) -> "MassFunction":
        """Build from a mapping of label collections to masses."""
        masses: dict[int, float] = {}
        for labels, value in label_masses.items():
            key = frame.key_of(labels)
            if key in masses:
                raise ValueError(f"duplicate set {frame.format_set(key)}")
            masses[key] = value
        return cls(frame, masses, world)

    def mass(self, key: int) -> float:
        return self.masses.get(self.frame.check_key(key), 0.0)

    def focal_sets(self) -> tuple[int, ...]:
        """Focal-set keys in canonical order."""
        return tuple(sorted(self.masses))

    def sorted_items(self) -> list[tuple[int, float]]:
        return sorted(self.masses.items())

    def to_label_dict(self) -> dict[tuple[str, ...], float]:
        return {self.frame.labels_of(key): value for key, value in self.sorted_items()}


@dataclass(frozen=True)
class BeliefView:
    """bel and pl tables over every subset, indexed by subset key."""

    frame: Frame
    bel: tuple[float, ...]
    pl: tuple[float, ...]

    def __post_init__(self) -> None:
        expected = self.frame.num_subsets
        if len(self.bel) != expected or len(self.pl) != expected:
            raise ValueError(f"bel/pl tables must have {expected} entries")


@dataclass(frozen=True)
class RandomSetCounts:
    """Set-valued frequency data: how many sampled units answered each subset."""

    frame: Frame
    counts: Mapping[int, int]
    population: int

    def __post_init__(self) -> None:
        if not isinstance(self.population, int) or self.population <= 0:
            raise ValueError(f"population must be a positive integer, got {self.population!r}")
        cleaned: dict[int, int] = {}
        for key, count in self.counts.items():
            key = self.frame.check_key(key)
            if key == EMPTY:
                raise ValueError("counts cannot be attached to the empty set")
            if not isinstance(count, int) or count < 0:
                raise ValueError(
                    f"count for {self.frame.format_set(key)} must be a non-negative integer"
                )
            cleaned[key] = count
        if sum(cleaned.values()) != self.population:
            raise ValueError(
                f"counts sum to {sum(cleaned.values())}, expected the population {self.population}"
            )
        object.__setattr__(self, "counts", MappingProxyType(cleaned))

    @classmethod
    def from_labels(
        cls, frame: Frame, label_counts: Mapping[Iterable[str], int], population: int
    ) -> "RandomSetCounts":
        return cls(
            frame,
            {frame.key_of(labels): count for labels, count in label_counts.items()},
            population,
        )


@dataclass(frozen=True)
class PignisticDistribution:
    """A probability over the frame's elements, indexed by element position."""

    frame: Frame
    prob: tuple[float, ...]

    def __post_init__(self) -> None:
        prob = tuple(float(p) for p in self.prob)
        object.__setattr__(self, "prob", prob)
        if len(prob) != self.frame.n:
            raise ValueError(f"expected {self.frame.n} probabilities, got {len(prob)}")
        if any(p < 0.0 for p in prob):
            raise ValueError("probabilities must be non-negative")
        total = fsum(prob)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1 within {SUM_TOL}")

    def of(self, key: int) -> float:
        """Probability of a subset, by additivity over its elements."""
        return fsum(self.prob[i] for i in bit_members(self.frame.check_key(key)))

    def by_label(self) -> dict[str, float]:
        return dict(zip(self.frame.elements, self.prob))


def from_counts(data: RandomSetCounts) -> MassFunction:
    """Turn set-valued frequencies into a closed-world mass function."""
    masses = {key: count / data.population for key, count in data.counts.items() if count}
    return MassFunction(data.frame, masses, CLOSED)


def belief(m: MassFunction) -> BeliefView:
    """Compute bel and pl for every subset of the frame.

    bel excludes whatever mass sits on the empty set, so bel(Ω) = 1 - m(∅),
    and pl is obtained from the duality pl(A) = bel(Ω) - bel(Ā).
    """
    n = m.frame.n
    table = [0.0] * m.frame.num_subsets
    for key, value in m.masses.items():
        if key != EMPTY:
            table[key] = value
    _zeta_in_place(table, n)
    total = table[m.frame.full]
    pl = tuple(total - table[m.frame.full ^ key] for key in m.frame.subsets())
    return BeliefView(m.frame, tuple(table), pl)


def masses_from_belief(frame: Frame, bel: Sequence[float]) -> MassFunction:
    """Recover the mass function whose belief table is ``bel``.

    The inverse Möbius transform of a valid belief table is non-negative;
    anything below -1e-9 means the input is not the belief function of any
    non-negative mass assignment and raises ValueError. Cancellation dust
    within 1e-12 of zero is discarded. Mass missing from the table's top
    value reappears on the empty set (open world).
    """
    if len(bel) != frame.num_subsets:
        raise ValueError(f"expected {frame.num_subsets} belief values, got {len(bel)}")
    values = [float(v) for v in bel]
    if abs(values[EMPTY]) > SUM_TOL:
        raise ValueError(f"bel(∅) must be 0, got {values[EMPTY]!r}")
    for key, v in enumerate(values):
        if v < -SUM_TOL or v > 1.0 + SUM_TOL:
            raise ValueError(f"belief value {v!r} for {frame.format_set(key)} is outside [0, 1]")
    values[EMPTY] = 0.0
    _mobius_in_place(values, frame.n)
    masses: dict[int, float] = {}
    for key in range(1, frame.num_subsets):
        v = values[key]
        if v < -SUM_TOL:
            raise ValueError(
                "input is not the belief function of any non-negative mass assignment: "
                f"recovered mass {v!r} on {frame.format_set(key)}"
            )
        if v > RESCALE_TOL:
            masses[key] = v
    leftover = 1.0 - fsum(masses.values())
    if leftover > RESCALE_TOL:
        masses[EMPTY] = leftover
        world = OPEN
    else:
        world = CLOSED
    return MassFunction(frame, masses, world)


def normalize(m: MassFunction) -> MassFunction:
    """Move to the closed world: drop m(∅) and rescale the rest to sum to 1."""
    conflict = m.mass(EMPTY)
    if m.world == CLOSED and conflict == 0.0:
        return m
    if conflict > 1.0 - SUM_TOL:
        raise NoSolutionError("total conflict: all mass sits on the empty set")
    scale = 1.0 - conflict
    masses = {key: value / scale for key, value in m.sorted_items() if key != EMPTY}
    return MassFunction(m.frame, masses, CLOSED)


def pignistic(m: MassFunction) -> PignisticDistribution:
    """Spread each focal set's mass uniformly over its elements.

    BetP(ω) = Σ_{X ∋ ω} m(X) / |X|. The input must already be normalized;
    callers holding open-world mass apply ``normalize`` first.
    """
    if m.mass(EMPTY) > 0.0:
        raise ValueError("pignistic transformation needs a normalized input, m(∅) must be 0")
    probs = [0.0] * m.frame.n
    for key, value in m.sorted_items():
        share = value / key.bit_count()
        for i in bit_members(key):
            probs[i] += share
    return PignisticDistribution(m.frame, tuple(probs))
