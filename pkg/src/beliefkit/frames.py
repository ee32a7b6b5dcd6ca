"""Finite frames of discernment and bitmask subset keys.

A subset of a frame is encoded as an integer: bit ``i`` is set exactly when
element ``i`` belongs to the subset. Key ``0`` is the empty set, key
``2**n - 1`` the whole frame, and the integer order on keys is the canonical
total order on subsets. Serialized output additionally sorts by
(cardinality, key) so tables read smallest-sets-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DocumentError

MAX_ELEMENTS = 16

EMPTY: int = 0

EMPTY_SET_GLYPH = "∅"


def bit_members(key: int) -> list[int]:
    """Indices of the elements contained in a subset key."""
    return [i for i in range(key.bit_length()) if (key >> i) & 1]


def subsets_of(key: int) -> Iterator[int]:
    """All subsets of ``key``, the empty set included."""
    sub = key
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & key


@dataclass(frozen=True)
class Frame:
    """An ordered frame of discernment with at most 16 elements.

    The element order fixes the subset encoding, so two frames with the same
    labels in a different order are distinct.
    """

    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not 1 <= len(elements) <= MAX_ELEMENTS:
            raise ValueError(
                f"a frame needs between 1 and {MAX_ELEMENTS} elements, got {len(elements)}"
            )
        for label in elements:
            if not isinstance(label, str) or not label:
                raise ValueError(f"frame labels must be non-empty strings, got {label!r}")
        if len(set(elements)) != len(elements):
            raise ValueError("frame labels must be unique")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        """Key of the whole frame."""
        return (1 << self.n) - 1

    @property
    def num_subsets(self) -> int:
        return 1 << self.n

    def index_of(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise ValueError(f"unknown label {label!r}") from None

    def singleton(self, label: str) -> int:
        return 1 << self.index_of(label)

    def key_of(self, labels: Iterable[str]) -> int:
        """Subset key for a collection of labels (duplicates collapse)."""
        key = 0
        for label in labels:
            key |= self.singleton(label)
        return key

    def labels_of(self, key: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bit_members(self.check_key(key)))

    def check_key(self, key: int) -> int:
        if not isinstance(key, int) or isinstance(key, bool):
            raise ValueError(f"subset keys are integers, got {key!r}")
        if not 0 <= key <= self.full:
            raise ValueError(f"subset key {key} is outside this frame (0..{self.full})")
        return key

    def complement(self, key: int) -> int:
        return self.full ^ self.check_key(key)

    def subsets(self) -> range:
        """All subset keys in canonical order."""
        return range(self.num_subsets)

    def sorted_subsets(self) -> list[int]:
        """All subset keys sorted by (cardinality, canonical order)."""
        return sorted(self.subsets(), key=lambda k: (k.bit_count(), k))

    def format_set(self, key: int) -> str:
        if key == EMPTY:
            return EMPTY_SET_GLYPH
        return "{" + ",".join(self.labels_of(key)) + "}"

    def parse_set(self, literal: str) -> int:
        """Parse a comma-separated label list; '' and the empty-set glyph mean ∅."""
        text = literal.strip()
        if text in ("", EMPTY_SET_GLYPH):
            return EMPTY
        key = 0
        for token in text.split(","):
            label = token.strip()
            if not label:
                raise DocumentError(f"empty label in set literal {literal!r}")
            try:
                key |= self.singleton(label)
            except ValueError as exc:
                raise DocumentError(f"bad set literal {literal!r}: {exc}") from None
        return key
