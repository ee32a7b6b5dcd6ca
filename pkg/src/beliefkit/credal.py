"""Credal-set readings of a belief function.

A closed-world mass function determines the convex set of probability
distributions that dominate its bel; bel and pl are that set's lower and
upper envelopes. This module provides the envelope bounds, exact vertex
enumeration of the credal set, and upper/lower Bayesian conditioning both in
closed form and by direct optimization over the vertices. The two
conditioning routes are deliberately independent so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import fsum

from .errors import NoSolutionError
from .frames import Frame, bit_members
from .mass import CLOSED, SUM_TOL, MassFunction, belief

# n! vertices are enumerated exactly; past 7 elements that stops being cheap.
MAX_VERTEX_ELEMENTS = 7

_ATTAIN_TOL = 1e-9


@dataclass(frozen=True)
class IntervalBound:
    """A lower/upper probability (or proportion) pair."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        lower, upper = float(self.lower), float(self.upper)
        if lower < -SUM_TOL or upper > 1.0 + SUM_TOL:
            raise ValueError(f"bounds [{lower!r}, {upper!r}] leave [0, 1]")
        if lower > upper + 1e-12:
            raise ValueError(f"lower bound {lower!r} exceeds upper bound {upper!r}")
        object.__setattr__(self, "lower", min(max(lower, 0.0), 1.0))
        object.__setattr__(self, "upper", min(max(upper, 0.0), 1.0))


@dataclass(frozen=True)
class CredalVertex:
    """One extreme point of the credal set, as a probability per element."""

    frame: Frame
    prob: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.prob) != self.frame.n:
            raise ValueError(f"expected {self.frame.n} probabilities, got {len(self.prob)}")
        if any(p < 0.0 for p in self.prob):
            raise ValueError("vertex probabilities must be non-negative")
        total = fsum(self.prob)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"vertex probabilities sum to {total!r}, expected 1")

    def of(self, key: int) -> float:
        return fsum(self.prob[i] for i in bit_members(self.frame.check_key(key)))


def bounds(m: MassFunction, query: int) -> IntervalBound:
    """The envelope interval [bel(A), pl(A)] of a closed-world mass function."""
    if m.world != CLOSED:
        raise ValueError("bounds are defined for closed-world mass functions only")
    query = m.frame.check_key(query)
    view = belief(m)
    return IntervalBound(view.bel[query], view.pl[query])


def credal_vertices(m: MassFunction) -> list[CredalVertex]:
    """Every extreme point of the credal set dominated by bel.

    For each ordering of the elements, each focal set hands its whole mass to
    its highest-priority member; the distinct allocation vectors obtained
    this way are exactly the vertices of the credal set.
    """
    if m.world != CLOSED:
        raise ValueError("credal vertices are defined for closed-world mass functions only")
    n = m.frame.n
    if n > MAX_VERTEX_ELEMENTS:
        raise ValueError(
            f"vertex enumeration is capped at {MAX_VERTEX_ELEMENTS} elements, frame has {n}"
        )
    items = m.sorted_items()
    seen: dict[tuple[float, ...], CredalVertex] = {}
    for perm in permutations(range(n)):
        rank = [0] * n
        for position, element in enumerate(perm):
            rank[element] = position
        alloc = [0.0] * n
        for key, value in items:
            best = min(bit_members(key), key=rank.__getitem__)
            alloc[best] += value
        vector = tuple(alloc)
        if vector not in seen:
            seen[vector] = CredalVertex(m.frame, vector)
    return [seen[vector] for vector in sorted(seen)]


def oracle_conditional(m: MassFunction, retained: int, query: int) -> IntervalBound:
    """Conditional bounds by brute force over the credal-set vertices.

    Minimizes and maximizes v(A ∩ B)/v(A) over all vertices with v(A) > 0; a
    ratio of two linear functions over a polytope attains its extrema at
    vertices, so this is exact. Fails when v(A) = 0 at every vertex, i.e.
    when the conditional is undefined over the whole credal set.
    """
    retained = m.frame.check_key(retained)
    query = m.frame.check_key(query)
    ratios = []
    for vertex in credal_vertices(m):
        denominator = vertex.of(retained)
        if denominator > 0.0:
            ratios.append(vertex.of(retained & query) / denominator)
    if not ratios:
        raise NoSolutionError(
            f"P({m.frame.format_set(retained)}) = 0 over the whole credal set, "
            "conditional undefined"
        )
    return IntervalBound(min(ratios), max(ratios))


def fh_conditional(m: MassFunction, retained: int, query: int) -> IntervalBound:
    """Upper/lower Bayesian conditioning in closed form.

    lower = bel(A∩B) / (bel(A∩B) + pl(A∩B̄)) and
    upper = pl(A∩B) / (pl(A∩B) + bel(A∩B̄)), the envelopes of P(B|A) over the
    credal set. The lower, as a set function of B, is again a belief
    function. Where a bound degenerates to 0/0 the closed form alone is
    undefined: the conventional value (0 below, 1 above) is returned only if
    the vertex oracle confirms it is attained, otherwise this raises.
    """
    if m.world != CLOSED:
        raise ValueError("conditional bounds are defined for closed-world mass functions only")
    retained = m.frame.check_key(retained)
    query = m.frame.check_key(query)
    view = belief(m)
    if view.pl[retained] <= SUM_TOL:
        raise NoSolutionError(
            f"no solution: pl({m.frame.format_set(retained)}) = 0"
        )
    inside = retained & query
    outside = retained & m.frame.complement(query)

    denominator = view.bel[inside] + view.pl[outside]
    if denominator > 0.0:
        lower = view.bel[inside] / denominator
    else:
        oracle = oracle_conditional(m, retained, query)
        if oracle.lower > _ATTAIN_TOL:
            raise NoSolutionError(
                "lower conditional degenerates to 0/0 and 0 is not attained over "
                f"the credal set (minimum is {oracle.lower!r})"
            )
        lower = 0.0

    denominator = view.pl[inside] + view.bel[outside]
    if denominator > 0.0:
        upper = view.pl[inside] / denominator
    else:
        oracle = oracle_conditional(m, retained, query)
        if oracle.upper < 1.0 - _ATTAIN_TOL:
            raise NoSolutionError(
                "upper conditional degenerates to 0/0 and 1 is not attained over "
                f"the credal set (maximum is {oracle.upper!r})"
            )
        upper = 1.0
    return IntervalBound(lower, upper)
