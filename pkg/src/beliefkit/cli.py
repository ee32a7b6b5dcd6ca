"""Command-line front-end.

Subcommands operate on JSON documents (see :mod:`beliefkit.documents`) and
render either a tab-separated bel/pl table with percentages to one decimal,
or full-precision JSON with ``--format json``. Exit status: 0 on success, 1
when an operation has no defined result for the inputs, 2 on usage or parse
errors. Output is deterministic byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .combination import conjunctive, dempster_combine
from .conditioning import (
    apply_specialization,
    condition_closed,
    condition_geometric,
    condition_open,
    condition_yager_kohlas,
    image_general,
    transfer_matrix_for,
)
from .credal import fh_conditional, oracle_conditional
from .documents import (
    bba_to_document,
    parse_bba,
    parse_closest_map,
    parse_specialization_matrix,
    parse_transfer_matrix,
)
from .errors import DocumentError, NoSolutionError
from .frames import EMPTY
from .mass import CLOSED, OPEN, MassFunction, belief, pignistic
from .voting import TABLE_SELECTORS, demo_voting

TSV, JSON = "tsv", "json"


@dataclass
class CommandRequest:
    """A fully parsed invocation, ready to dispatch."""

    subcommand: str
    in_path: str | None = None
    in2_path: str | None = None
    matrix_path: str | None = None
    closest_path: str | None = None
    rule: str | None = None
    retain: str | None = None
    query: str | None = None
    method: str | None = None
    world: str | None = None
    normalize_result: bool = False
    table: str = "all"
    fmt: str = TSV


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefkit",
        description="Belief functions on finite frames: conditioning, combination, "
        "credal bounds, and the pignistic transformation.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("--in", dest="in_path", required=True, metavar="FILE",
                           help="mass-function document")
        p.add_argument("--format", dest="fmt", choices=(TSV, JSON), default=TSV)

    p = sub.add_parser("bel", help="bel/pl table of a mass function")
    add_common(p)

    p = sub.add_parser("condition", help="condition on a retained set")
    p.add_argument("--rule", required=True, choices=("c1", "c2", "c3", "geometric"))
    p.add_argument("--retain", required=True, metavar="SET",
                   help="comma-separated labels of the retained set")
    p.add_argument("--world", choices=(OPEN, CLOSED), default=None,
                   help="variant of the geometric rule (default: closed)")
    add_common(p)

    p = sub.add_parser("specialize", help="apply a specialization matrix")
    p.add_argument("--matrix", dest="matrix_path", required=True, metavar="FILE")
    add_common(p)

    p = sub.add_parser("image", help="apply a transfer matrix or a closest-world map")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--matrix", dest="matrix_path", metavar="FILE")
    group.add_argument("--closest", dest="closest_path", metavar="FILE")
    add_common(p)

    p = sub.add_parser("combine", help="conjunctive combination with a second source")
    p.add_argument("--in2", dest="in2_path", required=True, metavar="FILE")
    p.add_argument("--normalize", dest="normalize_result", action="store_true",
                   help="normalize the combined result (Dempster's rule)")
    add_common(p)

    p = sub.add_parser("betp", help="pignistic probability of a normalized mass function")
    add_common(p)

    p = sub.add_parser("credal", help="upper/lower conditional probability bounds")
    p.add_argument("--method", required=True, choices=("fh", "oracle"))
    p.add_argument("--retain", required=True, metavar="SET")
    p.add_argument("--query", required=True, metavar="SET")
    add_common(p)

    p = sub.add_parser("demo", help="reproduce the voting-study tables")
    p.add_argument("topic", choices=("voting",))
    p.add_argument("--table", default="all", choices=("all",) + TABLE_SELECTORS)
    return parser


def request_from_args(namespace: argparse.Namespace) -> CommandRequest:
    fields = {f: getattr(namespace, f) for f in CommandRequest.__dataclass_fields__
              if hasattr(namespace, f)}
    return CommandRequest(**fields)


def _read(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {what} {path!r}: {exc}") from None


def _load_bba(path: str) -> MassFunction:
    return parse_bba(_read(path, "mass document"))


def _parse_retained(request: CommandRequest, m: MassFunction) -> int:
    retained = m.frame.parse_set(request.retain or "")
    normalized_rule = request.rule in ("c2", "c3") or (
        request.rule == "geometric" and (request.world or CLOSED) == CLOSED
    )
    if retained == EMPTY and (request.subcommand == "credal" or normalized_rule):
        raise DocumentError("the empty set cannot be retained here")
    return retained


def _table_rows(m: MassFunction) -> list[tuple[int, float, float]]:
    view = belief(m)
    return [(key, view.bel[key], view.pl[key]) for key in m.frame.sorted_subsets()]


def _render_bounds_tsv(m: MassFunction, rows: list[tuple[int, float, float]]) -> str:
    lines = ["set\tlower\tupper"]
    for key, lower, upper in rows:
        lines.append(f"{m.frame.format_set(key)}\t{100 * lower:.1f}%\t{100 * upper:.1f}%")
    return "\n".join(lines)


def _render_bounds_json(m: MassFunction, rows: list[tuple[int, float, float]]) -> str:
    payload = {
        "rows": [
            {"set": list(m.frame.labels_of(key)), "lower": lower, "upper": upper}
            for key, lower, upper in rows
        ]
    }
    return json.dumps(payload, indent=2)


def _render_result(request: CommandRequest, m: MassFunction, extra: dict | None = None) -> str:
    if request.fmt == JSON:
        payload: dict = {"result": bba_to_document(m)}
        if extra:
            payload.update(extra)
        return json.dumps(payload, indent=2)
    return _render_bounds_tsv(m, _table_rows(m))


def _dispatch(request: CommandRequest) -> str:
    if request.subcommand == "demo":
        return demo_voting(request.table)

    m = _load_bba(request.in_path)

    if request.subcommand == "bel":
        rows = _table_rows(m)
        if request.fmt == JSON:
            return _render_bounds_json(m, rows)
        return _render_bounds_tsv(m, rows)

    if request.subcommand == "condition":
        retained = _parse_retained(request, m)
        if request.world is not None and request.rule != "geometric":
            raise DocumentError("--world applies only to the geometric rule")
        if request.rule == "c1":
            outcome = condition_open(m, retained)
        elif request.rule == "c2":
            outcome = condition_closed(m, retained)
        elif request.rule == "c3":
            outcome = condition_yager_kohlas(m, retained)
        else:
            outcome = condition_geometric(m, retained, request.world or CLOSED)
        return _render_result(
            request,
            outcome.result,
            {"conflict": outcome.conflict, "normalization": outcome.normalization},
        )

    if request.subcommand == "specialize":
        matrix = parse_specialization_matrix(_read(request.matrix_path, "matrix document"))
        return _render_result(request, apply_specialization(m, matrix))

    if request.subcommand == "image":
        if request.matrix_path is not None:
            matrix = parse_transfer_matrix(_read(request.matrix_path, "matrix document"))
        else:
            cmap = parse_closest_map(
                _read(request.closest_path, "closest-world document"), m.frame
            )
            matrix = transfer_matrix_for("closest", closest=cmap)
        return _render_result(request, image_general(m, matrix))

    if request.subcommand == "combine":
        m2 = _load_bba(request.in2_path)
        if request.normalize_result:
            outcome = dempster_combine(m, m2)
            return _render_result(
                request,
                outcome.result,
                {"conflict": outcome.conflict, "normalization": outcome.normalization},
            )
        return _render_result(request, conjunctive(m, m2))

    if request.subcommand == "betp":
        distribution = pignistic(m)
        if request.fmt == JSON:
            return json.dumps({"prob": distribution.by_label()}, indent=2)
        lines = ["element\tprob"]
        lines += [f"{label}\t{p!r}" for label, p in distribution.by_label().items()]
        return "\n".join(lines)

    if request.subcommand == "credal":
        retained = _parse_retained(request, m)
        query = m.frame.parse_set(request.query or "")
        conditional = fh_conditional if request.method == "fh" else oracle_conditional
        bound = conditional(m, retained, query)
        if request.fmt == JSON:
            return json.dumps(
                {
                    "set": list(m.frame.labels_of(query)),
                    "lower": bound.lower,
                    "upper": bound.upper,
                    "method": request.method,
                },
                indent=2,
            )
        return (
            "set\tlower\tupper\n"
            f"{m.frame.format_set(query)}\t{100 * bound.lower:.1f}%\t{100 * bound.upper:.1f}%"
        )

    raise DocumentError(f"unknown subcommand {request.subcommand!r}")


def run(request: CommandRequest) -> tuple[int, str]:
    """Execute a request; returns (exit status, rendered output or diagnostic)."""
    try:
        return 0, _dispatch(request)
    except DocumentError as exc:
        return 2, f"error: {exc}"
    except (NoSolutionError, ValueError) as exc:
        return 1, f"error: {exc}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    status, output = run(request_from_args(namespace))
    print(output, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
