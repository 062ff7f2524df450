"""JSON interchange for chamber maps, plus small text parsers for the CLI.

A chamber-map file looks like::

    {
      "schema": "chamber-map/1",
      "source": {"n": 2, "q": 2},
      "target": {"n": 2, "q": 2, "dual": false},
      "pairs": [[chamber, chamber], ...]
    }

where a chamber is a list of subspaces (one per projective dimension,
ascending), a subspace is a list of reduced-row-echelon rows, and a row is a
list of field codes.  ``pairs`` is sorted by source chamber, covers every
source chamber exactly once, and round-trips byte-identically through
``dump_map``/``load_map``.

All validation problems raise :class:`FormatError` with a message naming
the offending entry.
"""

from __future__ import annotations

import json
from pathlib import Path

from .buildings import Chamber, chambers_of, check_chamber
from .chamber_maps import ChamberMap
from .gf import SUPPORTED_ORDERS, Subspace
from .projective import ProjSpace

__all__ = [
    "SCHEMA",
    "FormatError",
    "parse_rows",
    "encode_chamber",
    "decode_chamber",
    "encode_map",
    "decode_map",
    "dump_map",
    "load_map",
]

SCHEMA = "chamber-map/1"


class FormatError(ValueError):
    """A file or text value does not follow the expected format."""


def parse_rows(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse ``"1,0,0;0,1,0"`` into a tuple of integer rows."""
    rows = []
    for chunk in text.strip().split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise FormatError(f"empty row in {text!r}")
        try:
            rows.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError as exc:
            raise FormatError(f"row {chunk!r} is not a comma-separated "
                              "list of integers") from exc
    if not rows:
        raise FormatError("no rows given")
    if len({len(r) for r in rows}) != 1:
        raise FormatError(f"rows of unequal length in {text!r}")
    return tuple(rows)


def encode_chamber(chamber: Chamber) -> list:
    return [[list(row) for row in part.rows] for part in chamber.parts]


def decode_chamber(space: ProjSpace, data) -> Chamber:
    if not isinstance(data, list) or len(data) != space.n:
        raise FormatError(
            f"a chamber must be a list of {space.n} subspaces, got {data!r}"
        )
    parts = []
    for part in data:
        if (
            not isinstance(part, list)
            or not part
            or not all(
                isinstance(row, list)
                and len(row) == space.ambient
                and all(isinstance(x, int) for x in row)
                for row in part
            )
        ):
            raise FormatError(f"invalid subspace encoding: {part!r}")
        for row in part:
            for x in row:
                if not 0 <= x < space.q:
                    raise FormatError(
                        f"code {x} out of range for GF({space.q}) in {part!r}"
                    )
        sub = Subspace.span(space.gf, space.ambient, [tuple(r) for r in part])
        if sub.rank != len(part):
            raise FormatError(f"dependent rows in subspace encoding {part!r}")
        parts.append(sub)
    chamber = Chamber(tuple(parts))
    try:
        check_chamber(space, chamber)
    except ValueError as exc:
        raise FormatError(f"not a chamber: {exc}") from exc
    return chamber


def _space_entry(space: ProjSpace, dual=None) -> dict:
    entry = {"n": space.n, "q": space.q}
    if dual is not None:
        entry["dual"] = bool(dual)
    return entry


def _decode_space(entry, label: str) -> ProjSpace:
    if not isinstance(entry, dict) or "n" not in entry or "q" not in entry:
        raise FormatError(f"{label} must be an object with 'n' and 'q'")
    n, q = entry["n"], entry["q"]
    if not isinstance(n, int) or n < 2:
        raise FormatError(f"{label} dimension must be an integer >= 2, got {n!r}")
    if q not in SUPPORTED_ORDERS:
        raise FormatError(
            f"{label} order {q!r} unsupported; supported: "
            + ", ".join(map(str, SUPPORTED_ORDERS))
        )
    return ProjSpace.of(n, q)


def encode_map(f: ChamberMap, dual: bool = False) -> dict:
    pairs = sorted(f.table.items(), key=lambda kv: kv[0].sort_key())
    return {
        "schema": SCHEMA,
        "source": _space_entry(f.source),
        "target": _space_entry(f.target, dual=dual),
        "pairs": [[encode_chamber(a), encode_chamber(b)] for a, b in pairs],
    }


def decode_map(data) -> ChamberMap:
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    if data.get("schema") != SCHEMA:
        raise FormatError(
            f"unknown schema {data.get('schema')!r}; expected {SCHEMA!r}"
        )
    source = _decode_space(data.get("source"), "source")
    target = _decode_space(data.get("target"), "target")
    if source.n != target.n:
        raise FormatError("source and target dimensions differ")
    pairs = data.get("pairs")
    if not isinstance(pairs, list):
        raise FormatError("'pairs' must be a list")
    table = {}
    for entry in pairs:
        if not isinstance(entry, list) or len(entry) != 2:
            raise FormatError(f"each pair must be [chamber, chamber], got {entry!r}")
        key = decode_chamber(source, entry[0])
        if key in table:
            raise FormatError(f"duplicate source chamber {key!r}")
        table[key] = decode_chamber(target, entry[1])
    missing = set(chambers_of(source)) - table.keys()
    if missing:
        raise FormatError(f"{len(missing)} source chambers are missing a pair")
    return ChamberMap(source, target, table)


def dump_map(f: ChamberMap, path, dual: bool = False) -> None:
    text = json.dumps(encode_map(f, dual=dual), indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def load_map(path) -> ChamberMap:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return decode_map(data)
