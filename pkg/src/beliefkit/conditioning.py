"""Conditioning rules for mass functions.

Learning "the answer is not in Ā" can revise a mass function in several
inequivalent ways. This module implements the classical catalogue:

* ``condition_open``: Dempster's rule without normalization; mass moves from
  X to X ∩ A and conflict accumulates on the empty set.
* ``condition_closed``: the same transfer followed by normalization (the rule
  of Shafer's monograph; the Bayesian rule is its special case).
* ``condition_yager_kohlas``: conflict is granted to A itself instead of ∅.
* ``condition_geometric``: masses outside A are discarded rather than moved.
* ``apply_specialization``: mass flows from each set to its own subsets under
  a row-stochastic coefficient family c(B, X).
* ``image_general`` / ``image_closest``: Lewis-style imaging, where an
  arbitrary stochastic transfer family F(B | X) moves mass anywhere.

``canonical_specialization`` and ``transfer_matrix_for`` express the named
rules as coefficient matrices, which the tests use to cross-check every rule
against the matrix machinery.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import fsum
from types import MappingProxyType
from typing import Mapping

from .errors import NoSolutionError
from .frames import EMPTY, Frame, bit_members
from .mass import (
    CLOSED,
    OPEN,
    RESCALE_TOL,
    SUM_TOL,
    MassFunction,
    PignisticDistribution,
    belief,
    normalize,
)


@dataclass(frozen=True)
class ConditioningOutcome:
    """A conditioning result plus its bookkeeping.

    ``conflict`` is the mass that landed on (or, for rules that reroute or
    discard it, would have landed on) the empty set before any normalization.
    ``normalization`` is the constant applied: 1 for unnormalized rules,
    1/pl(A) for normalized Dempster conditioning, 1/bel(A) for the
    closed-world geometric rule.
    """

    result: MassFunction
    conflict: float
    normalization: float


def _validated_rows(
    frame: Frame,
    rows: Mapping[int, Mapping[int, float]],
    require_subset: bool,
) -> Mapping[int, Mapping[int, float]]:
    checked: dict[int, Mapping[int, float]] = {}
    for source, row in rows.items():
        source = frame.check_key(source)
        cleaned: dict[int, float] = {}
        for dest, coef in row.items():
            dest = frame.check_key(dest)
            coef = float(coef)
            if coef < 0.0:
                raise ValueError(
                    f"negative coefficient {coef!r} for "
                    f"{frame.format_set(source)} -> {frame.format_set(dest)}"
                )
            if require_subset and (dest | source) != source:
                raise ValueError(
                    f"{frame.format_set(dest)} is not a subset of "
                    f"{frame.format_set(source)}: specialization can only move "
                    "mass downward"
                )
            if coef:
                cleaned[dest] = coef
        total = fsum(cleaned.values())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(
                f"coefficients for source {frame.format_set(source)} sum to "
                f"{total!r}, expected 1 within {SUM_TOL}"
            )
        if abs(total - 1.0) > RESCALE_TOL:
            cleaned = {dest: coef / total for dest, coef in cleaned.items()}
        checked[source] = MappingProxyType(cleaned)
    return MappingProxyType(checked)


@dataclass(frozen=True)
class SpecializationMatrix:
    """Row-stochastic coefficients c(B, X) with B ⊆ X, stored per source set.

    A source set absent from ``rows`` keeps its mass (identity row).
    """

    frame: Frame
    rows: Mapping[int, Mapping[int, float]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _validated_rows(self.frame, self.rows, True))

    def row(self, source: int) -> Mapping[int, float]:
        return self.rows.get(self.frame.check_key(source), MappingProxyType({source: 1.0}))


@dataclass(frozen=True)
class TransferMatrix:
    """Row-stochastic coefficients F(B | X) with no subset restriction.

    As for specialization matrices, missing sources default to identity rows.
    """

    frame: Frame
    rows: Mapping[int, Mapping[int, float]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _validated_rows(self.frame, self.rows, False))

    def row(self, source: int) -> Mapping[int, float]:
        return self.rows.get(self.frame.check_key(source), MappingProxyType({source: 1.0}))


@dataclass(frozen=True)
class ClosestWorldMap:
    """For each world, the retained world that is closest to it.

    ``targets[i]`` is the element index that element ``i`` moves to; worlds
    inside the retained set are closest to themselves.
    """

    frame: Frame
    retained: int
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        retained = self.frame.check_key(self.retained)
        if retained == EMPTY:
            raise ValueError("the retained set of a closest-world map cannot be empty")
        targets = tuple(self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) != self.frame.n:
            raise ValueError(f"expected {self.frame.n} targets, got {len(targets)}")
        for i, j in enumerate(targets):
            if not isinstance(j, int) or not 0 <= j < self.frame.n:
                raise ValueError(f"target {j!r} is not an element index")
            if not (retained >> j) & 1:
                raise ValueError(
                    f"{self.frame.elements[i]!r} maps to {self.frame.elements[j]!r}, "
                    "which is not in the retained set"
                )
            if (retained >> i) & 1 and i != j:
                raise ValueError(
                    f"{self.frame.elements[i]!r} is retained and must be its own closest world"
                )

    @classmethod
    def from_labels(
        cls, frame: Frame, retained_labels, closest: Mapping[str, str]
    ) -> "ClosestWorldMap":
        retained = frame.key_of(retained_labels)
        for label in closest:
            frame.index_of(label)
        targets = []
        for i, label in enumerate(frame.elements):
            if (retained >> i) & 1:
                if label in closest and closest[label] != label:
                    raise ValueError(f"{label!r} is retained and cannot move to {closest[label]!r}")
                targets.append(i)
            else:
                if label not in closest:
                    raise ValueError(f"no closest world given for {label!r}")
                targets.append(frame.index_of(closest[label]))
        return cls(frame, retained, tuple(targets))

    def target_set(self, key: int) -> int:
        """Image of a subset under the closest-world map."""
        out = 0
        for i in bit_members(self.frame.check_key(key)):
            out |= 1 << self.targets[i]
        return out


def condition_open(m: MassFunction, retained: int) -> ConditioningOutcome:
    """Unnormalized Dempster conditioning: move m(X) to X ∩ A.

    Always applicable, even for pl(A) = 0 or A = ∅. The result lives in the
    open world; the mass reaching ∅ equals m(∅) + bel(Ā).
    """
    retained = m.frame.check_key(retained)
    acc: dict[int, float] = defaultdict(float)
    for key, value in m.sorted_items():
        acc[key & retained] += value
    conflict = m.mass(EMPTY) + belief(m).bel[m.frame.complement(retained)]
    result = MassFunction(m.frame, acc, OPEN)
    return ConditioningOutcome(result, conflict, 1.0)


def condition_closed(m: MassFunction, retained: int) -> ConditioningOutcome:
    """Normalized Dempster conditioning: the open-world transfer, rescaled.

    Applies only when pl(A) > 0; the normalization constant is 1/pl(A). On a
    Bayesian mass function this is ordinary Bayesian conditioning.
    """
    retained = m.frame.check_key(retained)
    pl_retained = belief(m).pl[retained]
    if pl_retained <= SUM_TOL:
        raise NoSolutionError(
            f"no solution: pl({m.frame.format_set(retained)}) = 0, nothing can be retained"
        )
    opened = condition_open(m, retained)
    return ConditioningOutcome(normalize(opened.result), opened.conflict, 1.0 / pl_retained)


def condition_yager_kohlas(m: MassFunction, retained: int) -> ConditioningOutcome:
    """Conditioning that grants the conflicting mass to A itself.

    Mass moves from X to X ∩ A as usual, but whatever would reach the empty
    set is credited to A, so the result stays normalized and bel_A(A) = 1.
    Only defined for closed-world input.
    """
    if m.world != CLOSED or m.mass(EMPTY) > 0.0:
        raise ValueError(
            "Yager-Kohlas conditioning applies only to closed-world (normalized) mass functions"
        )
    retained = m.frame.check_key(retained)
    if retained == EMPTY:
        raise NoSolutionError("cannot retain the empty set under a normalized rule")
    acc: dict[int, float] = defaultdict(float)
    stray = 0.0
    for key, value in m.sorted_items():
        hit = key & retained
        if hit:
            acc[hit] += value
        else:
            stray += value
    acc[retained] += stray
    result = MassFunction(m.frame, acc, CLOSED)
    return ConditioningOutcome(result, stray, 1.0)


def condition_geometric(m: MassFunction, retained: int, world: str = CLOSED) -> ConditioningOutcome:
    """Geometric conditioning: masses not already inside A are nullified.

    Closed variant: m_A(B) = m(B)/bel(A) for non-empty B ⊆ A, undefined when
    bel(A) = 0. Open variant: same numerators with the discarded mass
    (1 - bel(A)) parked on the empty set instead of renormalized away.
    """
    if world not in (OPEN, CLOSED):
        raise ValueError(f"world must be {OPEN!r} or {CLOSED!r}, got {world!r}")
    retained = m.frame.check_key(retained)
    bel_retained = belief(m).bel[retained]
    inside = {
        key: value
        for key, value in m.sorted_items()
        if key != EMPTY and (key | retained) == retained
    }
    discarded = max(1.0 - bel_retained, 0.0)
    if world == CLOSED:
        if bel_retained <= SUM_TOL:
            raise NoSolutionError(
                f"no solution: bel({m.frame.format_set(retained)}) = 0 under the geometric rule"
            )
        scaled = {key: value / bel_retained for key, value in inside.items()}
        return ConditioningOutcome(
            MassFunction(m.frame, scaled, CLOSED), discarded, 1.0 / bel_retained
        )
    masses = dict(inside)
    if discarded > RESCALE_TOL:
        masses[EMPTY] = discarded
    return ConditioningOutcome(MassFunction(m.frame, masses, OPEN), discarded, 1.0)


def apply_specialization(m: MassFunction, matrix: SpecializationMatrix) -> MassFunction:
    """Distribute each focal set's mass among its subsets per c(B, X).

    The result lives in the open world, since rows may route mass to ∅.
    """
    if matrix.frame != m.frame:
        raise ValueError("specialization matrix frame does not match the mass function frame")
    acc: dict[int, float] = defaultdict(float)
    for key, value in m.sorted_items():
        for dest, coef in sorted(matrix.row(key).items()):
            acc[dest] += coef * value
    return MassFunction(m.frame, acc, OPEN)


def canonical_specialization(rule: str, retained: int, frame: Frame) -> SpecializationMatrix:
    """The specialization matrix that expresses a named conditioning rule.

    ``dempster``: c(X ∩ A, X) = 1, reproducing the unnormalized Dempster
    transfer. ``geometric``: sets inside A keep their mass, all others send
    it to ∅, reproducing the open-world geometric rule.
    """
    retained = frame.check_key(retained)
    rows: dict[int, dict[int, float]] = {}
    if rule == "dempster":
        for source in frame.subsets():
            hit = source & retained
            if hit != source:
                rows[source] = {hit: 1.0}
    elif rule == "geometric":
        for source in frame.subsets():
            if (source | retained) != retained:
                rows[source] = {EMPTY: 1.0}
    else:
        raise ValueError(f"unknown specialization rule {rule!r}")
    return SpecializationMatrix(frame, rows)


def image_general(m: MassFunction, matrix: TransferMatrix) -> MassFunction:
    """Move mass along an arbitrary stochastic transfer family F(B | X).

    Generalizes every conditioning rule in this module. Total mass is
    preserved; the result is closed-world exactly when nothing lands on ∅.
    """
    if matrix.frame != m.frame:
        raise ValueError("transfer matrix frame does not match the mass function frame")
    acc: dict[int, float] = defaultdict(float)
    for key, value in m.sorted_items():
        for dest, coef in sorted(matrix.row(key).items()):
            acc[dest] += coef * value
    world = OPEN if acc.get(EMPTY, 0.0) > 0.0 else CLOSED
    return MassFunction(m.frame, acc, world)


def image_closest(p: PignisticDistribution, cmap: ClosestWorldMap) -> PignisticDistribution:
    """Lewis imaging on a probability distribution.

    Each world's probability moves to its closest retained world, so the
    result puts probability 0 outside the retained set.
    """
    if p.frame != cmap.frame:
        raise ValueError("closest-world map frame does not match the distribution frame")
    probs = [0.0] * p.frame.n
    for i, value in enumerate(p.prob):
        probs[cmap.targets[i]] += value
    return PignisticDistribution(p.frame, tuple(probs))


def transfer_matrix_for(
    rule: str,
    retained: int | None = None,
    frame: Frame | None = None,
    *,
    specialization: SpecializationMatrix | None = None,
    closest: ClosestWorldMap | None = None,
) -> TransferMatrix:
    """Express a named rule as a transfer matrix for ``image_general``.

    ``dempster_open`` and ``yager_kohlas`` need ``retained`` and ``frame``;
    ``specialization`` wraps an existing matrix; ``closest`` extends a
    closest-world map to sets element by element (singleton rows reproduce
    Lewis imaging on distributions).
    """
    if rule == "dempster_open":
        if frame is None or retained is None:
            raise ValueError("dempster_open needs a retained set and a frame")
        retained = frame.check_key(retained)
        rows = {
            source: {source & retained: 1.0}
            for source in frame.subsets()
            if source & retained != source
        }
        return TransferMatrix(frame, rows)
    if rule == "yager_kohlas":
        if frame is None or retained is None:
            raise ValueError("yager_kohlas needs a retained set and a frame")
        retained = frame.check_key(retained)
        if retained == EMPTY:
            raise NoSolutionError("cannot retain the empty set under a normalized rule")
        rows = {}
        for source in frame.subsets():
            hit = source & retained
            if hit == source and source != EMPTY:
                continue
            rows[source] = {hit if hit else retained: 1.0}
        return TransferMatrix(frame, rows)
    if rule == "specialization":
        if specialization is None:
            raise ValueError("pass specialization=<matrix> for the specialization rule")
        return TransferMatrix(specialization.frame, dict(specialization.rows))
    if rule == "closest":
        if closest is None:
            raise ValueError("pass closest=<map> for the closest rule")
        rows = {}
        for source in closest.frame.subsets():
            dest = closest.target_set(source)
            if dest != source:
                rows[source] = {dest: 1.0}
        return TransferMatrix(closest.frame, rows)
    raise ValueError(f"unknown transfer rule {rule!r}")
