"""The five-candidate voting study used as the worked example and demo.

100 respondents each name a subset of the candidates {a, b, c, d, e} that is
guaranteed to contain their final vote. The resulting set-valued frequencies
form the canonical mass function; conditioning on the survivors {c, d, e}
(candidates a and b drop out) illustrates every rule in the package, and
``demo_voting`` renders the classical result tables.
"""

from __future__ import annotations

from .conditioning import (
    SpecializationMatrix,
    TransferMatrix,
    condition_closed,
    condition_geometric,
    condition_open,
    condition_yager_kohlas,
    apply_specialization,
    image_general,
)
from .credal import fh_conditional
from .frames import EMPTY, Frame
from .mass import BeliefView, MassFunction, RandomSetCounts, belief, from_counts

CANDIDATES = ("a", "b", "c", "d", "e")

FRAME = Frame(CANDIDATES)

SURVIVORS = FRAME.key_of(("c", "d", "e"))

_ANSWER_COUNTS = {
    ("a",): 5,
    ("a", "b"): 8,
    ("a", "b", "c"): 15,
    ("b", "c", "d"): 21,
    ("a", "b", "c", "d"): 29,
    ("d", "e"): 22,
}


def monday_counts() -> RandomSetCounts:
    """The raw set-valued answers of the 100 respondents."""
    return RandomSetCounts.from_labels(FRAME, _ANSWER_COUNTS, 100)


def monday_mass() -> MassFunction:
    """The canonical mass function induced by the answer frequencies."""
    return from_counts(monday_counts())


def undecided_split() -> SpecializationMatrix:
    """Known per-answer splits once a and b drop out.

    {a,b,c} voters go to c; of the {b,c,d} voters a third goes to c, a third
    to d and a third stays undecided on {c,d}; half the {a,b,c,d} voters go
    to d, half stay on {c,d}; the {d,e} voters split evenly; {a} and {a,b}
    voters are left with nothing (blank votes).
    """
    k = FRAME.key_of
    third = 1.0 / 3.0
    rows = {
        k("a"): {EMPTY: 1.0},
        k("ab"): {EMPTY: 1.0},
        k("abc"): {k("c"): 1.0},
        k("bcd"): {k("c"): third, k("d"): third, k("cd"): third},
        k("abcd"): {k("d"): 0.5, k("cd"): 0.5},
        k("de"): {k("d"): 0.5, k("e"): 0.5},
    }
    return SpecializationMatrix(FRAME, rows)


def _conditioning_rows() -> dict[int, dict[int, float]]:
    """Dempster transfer rows for every answer that still meets the survivors."""
    return {
        source: {source & SURVIVORS: 1.0}
        for source in FRAME.subsets()
        if source & SURVIVORS not in (source, EMPTY)
    }


def reallocation_level1() -> TransferMatrix:
    """Orphaned {a} and {a,b} answers all move to c."""
    rows = _conditioning_rows()
    k = FRAME.key_of
    rows[k("a")] = {k("c"): 1.0}
    rows[k("ab")] = {k("c"): 1.0}
    return TransferMatrix(FRAME, rows)


def reallocation_level2() -> TransferMatrix:
    """Orphaned answers split 0.4 to {c} and 0.6 to {c,d}."""
    rows = _conditioning_rows()
    k = FRAME.key_of
    rows[k("a")] = {k("c"): 0.4, k("cd"): 0.6}
    rows[k("ab")] = {k("c"): 0.4, k("cd"): 0.6}
    return TransferMatrix(FRAME, rows)


def reallocation_level3() -> TransferMatrix:
    """Different splits for the {a} and the {a,b} answers."""
    rows = _conditioning_rows()
    k = FRAME.key_of
    rows[k("a")] = {k("c"): 0.4, k("cd"): 0.6}
    rows[k("ab")] = {k("c"): 0.5, k("cd"): 0.25, k("ce"): 0.25}
    return TransferMatrix(FRAME, rows)


TABLE_SELECTORS = ("2", "c1", "c2", "c3", "c4", "c5", "c6.1", "c6.2", "c6.3", "c7")

_TABLE2_SETS = ("a", "c", "d", "ab", "cd", "abc", "cde")
_CONDITIONED_SETS = ("c", "d", "cd", "cde")
_GEOMETRIC_SETS = ("cd", "de")
_CONDITIONAL_SETS = ("c", "d", "cd", "de")

_C7_NOTE = (
    "# note: the {c} upper bound is 74.7% (65/87) by both the closed form and\n"
    "# the credal-set maximum, not the 100.0% the original table prints for\n"
    "# this cell: the 0.22 of mass on {d,e} can never leave {c,d,e}."
)


def _pct(x: float) -> str:
    return f"{100.0 * x:.1f}%"


def _bounds_lines(view: BeliefView, set_literals: tuple[str, ...]) -> list[str]:
    lines = ["set\tlower\tupper"]
    for literal in set_literals:
        key = FRAME.key_of(literal)
        lines.append(f"{FRAME.format_set(key)}\t{_pct(view.bel[key])}\t{_pct(view.pl[key])}")
    return lines


def _render_table(selector: str) -> str:
    m = monday_mass()
    if selector == "2":
        lines = ["Table 2: proportion bounds before conditioning"]
        lines += _bounds_lines(belief(m), _TABLE2_SETS)
    elif selector == "c1":
        outcome = condition_open(m, SURVIVORS)
        lines = ["Table C.1: open-world conditioning on {c,d,e}"]
        lines += _bounds_lines(belief(outcome.result), _CONDITIONED_SETS)
        lines.append(f"conflict\t{_pct(outcome.conflict)}")
    elif selector == "c2":
        outcome = condition_closed(m, SURVIVORS)
        lines = ["Table C.2: normalized conditioning on {c,d,e}"]
        lines += _bounds_lines(belief(outcome.result), _CONDITIONED_SETS)
    elif selector == "c3":
        outcome = condition_yager_kohlas(m, SURVIVORS)
        lines = ["Table C.3: Yager-Kohlas conditioning on {c,d,e}"]
        lines += _bounds_lines(belief(outcome.result), _CONDITIONED_SETS)
    elif selector == "c4":
        outcome = condition_geometric(m, SURVIVORS)
        lines = ["Table C.4: geometric conditioning on {c,d,e}"]
        lines += _bounds_lines(belief(outcome.result), _GEOMETRIC_SETS)
    elif selector == "c5":
        result = apply_specialization(m, undecided_split())
        lines = ["Table C.5: specialization on {c,d,e} with known splits"]
        lines += _bounds_lines(belief(result), _CONDITIONED_SETS)
    elif selector == "c6.1":
        result = image_general(m, reallocation_level1())
        lines = ["Table C.6.1: imaging on {c,d,e}, displaced mass to {c}"]
        lines += _bounds_lines(belief(result), _CONDITIONED_SETS)
    elif selector == "c6.2":
        result = image_general(m, reallocation_level2())
        lines = ["Table C.6.2: imaging on {c,d,e}, displaced mass split {c}/{c,d}"]
        lines += _bounds_lines(belief(result), _CONDITIONED_SETS)
    elif selector == "c6.3":
        result = image_general(m, reallocation_level3())
        lines = ["Table C.6.3: imaging on {c,d,e}, displaced mass split per answer"]
        lines += _bounds_lines(belief(result), _CONDITIONED_SETS)
    elif selector == "c7":
        lines = ["Table C.7: conditional proportion bounds given {c,d,e}"]
        lines.append("set\tlower\tupper")
        for literal in _CONDITIONAL_SETS:
            key = FRAME.key_of(literal)
            bound = fh_conditional(m, SURVIVORS, key)
            lines.append(f"{FRAME.format_set(key)}\t{_pct(bound.lower)}\t{_pct(bound.upper)}")
            if literal == "c":
                lines.append(_C7_NOTE)
    else:
        raise ValueError(f"unknown table selector {selector!r}")
    return "\n".join(lines)


def demo_voting(selector: str = "all") -> str:
    """Render the voting-study tables; ``all`` emits every table in order."""
    if selector == "all":
        return "\n\n".join(_render_table(s) for s in TABLE_SELECTORS)
    return _render_table(selector)
