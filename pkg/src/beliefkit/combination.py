"""Conjunctive combination of independent mass functions.

The unnormalized rule multiplies masses onto intersections; conditioning on A
is the special case of combining with a categorical mass function on A, and
the normalized variant is Dempster's original rule of combination.
"""

from __future__ import annotations

from collections import defaultdict

from .conditioning import ConditioningOutcome
from .errors import NoSolutionError
from .frames import EMPTY
from .mass import OPEN, SUM_TOL, MassFunction, normalize


def conjunctive(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """m12(X) = Σ m1(B)·m2(C) over pairs with B ∩ C = X; open world."""
    if m1.frame != m2.frame:
        raise ValueError("mass functions must share a frame to be combined")
    acc: dict[int, float] = defaultdict(float)
    for key1, value1 in m1.sorted_items():
        for key2, value2 in m2.sorted_items():
            acc[key1 & key2] += value1 * value2
    return MassFunction(m1.frame, acc, OPEN)


def dempster_combine(m1: MassFunction, m2: MassFunction) -> ConditioningOutcome:
    """Conjunctive combination followed by normalization.

    Fails on total conflict (all product mass on the empty set); otherwise
    reports the conflict mass and the constant 1/(1 - conflict).
    """
    opened = conjunctive(m1, m2)
    conflict = opened.mass(EMPTY)
    if conflict > 1.0 - SUM_TOL:
        raise NoSolutionError("total conflict: the sources flatly contradict each other")
    return ConditioningOutcome(normalize(opened), conflict, 1.0 / (1.0 - conflict))
