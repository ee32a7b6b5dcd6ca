"""JSON document formats for mass functions, matrices, and closest-world maps.

Mass-function document::

    {"frame": ["a","b","c"], "world": "closed",
     "masses": [{"set": ["a"], "mass": 0.4}, {"set": ["a","b"], "mass": 0.6}]}

Matrix document (specialization, or transfer when ``"transfer": true``)::

    {"frame": ["a","b","c"],
     "entries": [{"from": ["a","b"], "to": ["a"], "coef": 1.0}]}

A source set absent from ``entries`` keeps its mass (identity row); omitted
(from, to) pairs are 0. Closest-world map document::

    {"retained": ["b","c"], "map": {"a": "b"}}

Every parser raises :class:`DocumentError` with a diagnostic naming the
offending entry, and parsing the serialized form of a value reproduces it.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .conditioning import ClosestWorldMap, SpecializationMatrix, TransferMatrix
from .errors import DocumentError
from .frames import Frame
from .mass import CLOSED, OPEN, SUM_TOL, MassFunction


def _load_object(text: str, what: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON in {what}: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{what} must be a JSON object, got {type(doc).__name__}")
    return doc


def _reject_unknown_fields(doc: Mapping[str, Any], allowed: set[str], what: str) -> None:
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise DocumentError(f"unknown field(s) {unknown} in {what}")


def _frame_from(doc: Mapping[str, Any], what: str) -> Frame:
    labels = doc.get("frame")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise DocumentError(f"{what} needs a 'frame' list of string labels")
    try:
        return Frame(tuple(labels))
    except ValueError as exc:
        raise DocumentError(f"bad frame in {what}: {exc}") from None


def _set_from(value: Any, frame: Frame, where: str) -> int:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"{where}: a set must be a list of labels")
    if len(set(value)) != len(value):
        raise DocumentError(f"{where}: repeated label inside set {value}")
    try:
        return frame.key_of(value)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _number_from(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where}: expected a number, got {value!r}")
    return float(value)


def parse_bba(text: str) -> MassFunction:
    """Parse a mass-function document."""
    doc = _load_object(text, "mass document")
    _reject_unknown_fields(doc, {"frame", "world", "masses"}, "mass document")
    frame = _frame_from(doc, "mass document")
    world = doc.get("world")
    if world not in (OPEN, CLOSED):
        raise DocumentError(f"world must be 'open' or 'closed', got {world!r}")
    entries = doc.get("masses")
    if not isinstance(entries, list):
        raise DocumentError("mass document needs a 'masses' list")
    masses: dict[int, float] = {}
    for i, entry in enumerate(entries):
        where = f"masses entry {i}"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        _reject_unknown_fields(entry, {"set", "mass"}, where)
        if "set" not in entry or "mass" not in entry:
            raise DocumentError(f"{where}: needs 'set' and 'mass'")
        key = _set_from(entry["set"], frame, where)
        value = _number_from(entry["mass"], where)
        if value < 0.0:
            raise DocumentError(
                f"{where}: negative mass {value!r} on {frame.format_set(key)}"
            )
        if key in masses:
            raise DocumentError(f"{where}: duplicate set {frame.format_set(key)}")
        masses[key] = value
    total = sum(masses.values())
    if abs(total - 1.0) > SUM_TOL:
        raise DocumentError(f"masses sum to {total!r}, expected 1 within {SUM_TOL}")
    try:
        return MassFunction(frame, masses, world)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def bba_to_document(m: MassFunction) -> dict:
    return {
        "frame": list(m.frame.elements),
        "world": m.world,
        "masses": [
            {"set": list(m.frame.labels_of(key)), "mass": value}
            for key, value in sorted(m.masses.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
        ],
    }


def serialize_bba(m: MassFunction) -> str:
    return json.dumps(bba_to_document(m), indent=2) + "\n"


def _parse_matrix_rows(doc: Mapping[str, Any], frame: Frame) -> dict[int, dict[int, float]]:
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise DocumentError("matrix document needs an 'entries' list")
    rows: dict[int, dict[int, float]] = {}
    for i, entry in enumerate(entries):
        where = f"matrix entry {i}"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        _reject_unknown_fields(entry, {"from", "to", "coef"}, where)
        if "from" not in entry or "to" not in entry or "coef" not in entry:
            raise DocumentError(f"{where}: needs 'from', 'to' and 'coef'")
        source = _set_from(entry["from"], frame, where)
        dest = _set_from(entry["to"], frame, where)
        coef = _number_from(entry["coef"], where)
        row = rows.setdefault(source, {})
        if dest in row:
            raise DocumentError(
                f"{where}: duplicate pair {frame.format_set(source)} -> {frame.format_set(dest)}"
            )
        row[dest] = coef
    return rows


def parse_specialization_matrix(text: str) -> SpecializationMatrix:
    """Parse a specialization-matrix document (must not be marked transfer)."""
    doc = _load_object(text, "matrix document")
    _reject_unknown_fields(doc, {"frame", "entries", "transfer"}, "matrix document")
    if doc.get("transfer", False):
        raise DocumentError("document is marked 'transfer': not a specialization matrix")
    frame = _frame_from(doc, "matrix document")
    rows = _parse_matrix_rows(doc, frame)
    try:
        return SpecializationMatrix(frame, rows)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def parse_transfer_matrix(text: str) -> TransferMatrix:
    """Parse a transfer-matrix document (requires ``"transfer": true``)."""
    doc = _load_object(text, "matrix document")
    _reject_unknown_fields(doc, {"frame", "entries", "transfer"}, "matrix document")
    if doc.get("transfer") is not True:
        raise DocumentError("transfer-matrix document needs '\"transfer\": true'")
    frame = _frame_from(doc, "matrix document")
    rows = _parse_matrix_rows(doc, frame)
    try:
        return TransferMatrix(frame, rows)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def parse_closest_map(text: str, frame: Frame) -> ClosestWorldMap:
    """Parse a closest-world map document against a known frame."""
    doc = _load_object(text, "closest-world document")
    _reject_unknown_fields(doc, {"retained", "map"}, "closest-world document")
    retained = doc.get("retained")
    if not isinstance(retained, list) or not all(isinstance(x, str) for x in retained):
        raise DocumentError("closest-world document needs a 'retained' list of labels")
    mapping = doc.get("map")
    if not isinstance(mapping, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in mapping.items()
    ):
        raise DocumentError("closest-world document needs a 'map' of label -> label")
    try:
        return ClosestWorldMap.from_labels(frame, retained, mapping)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
