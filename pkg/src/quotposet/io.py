"""JSON formats for posets and partitions, and Graphviz DOT output.

Poset documents look like ``{"n": 3, "labels": ["a", "b", "c"], "covers":
[[0, 1], [1, 2]]}``; ``labels`` is optional and ``covers`` may contain any
generating pairs (the order is their reflexive-transitive closure).
Partition documents look like ``{"blocks": [[0, 2], [1]]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import BadIndex, FormatError, InvalidPartition
from .partition import Partition
from .poset import Poset, from_covers


def _parse(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{source}: line {exc.lineno}, column {exc.colno}") from exc


def _int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"expected an integer, got {value!r}", field)
    return value


def poset_to_json(p: Poset) -> dict:
    return {"n": p.n, "labels": list(p.labels), "covers": [list(c) for c in p.covers()]}


def poset_from_json(doc: Any, source: str = "poset") -> Poset:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object", source)
    if "n" not in doc:
        raise FormatError("missing field", f"{source}.n")
    n = _int(doc["n"], f"{source}.n")
    if n < 0:
        raise FormatError("must be nonnegative", f"{source}.n")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n:
            raise FormatError(f"expected a list of {n} strings", f"{source}.labels")
        for k, lab in enumerate(labels):
            if not isinstance(lab, str):
                raise FormatError("expected a string", f"{source}.labels[{k}]")
    raw = doc.get("covers", [])
    if not isinstance(raw, list):
        raise FormatError("expected a list of pairs", f"{source}.covers")
    covers = []
    for k, pair in enumerate(raw):
        field = f"{source}.covers[{k}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError("expected a pair [i, j]", field)
        i, j = _int(pair[0], field + "[0]"), _int(pair[1], field + "[1]")
        covers.append((i, j))
    try:
        return from_covers(n, covers, labels)
    except BadIndex as exc:
        raise FormatError(str(exc), f"{source}.covers") from exc


def partition_to_json(t: Partition) -> dict:
    return {"blocks": [list(b) for b in t.blocks]}


def partition_from_json(doc: Any, n: int, source: str = "partition") -> Partition:
    if not isinstance(doc, dict) or "blocks" not in doc:
        raise FormatError('expected an object with a "blocks" field', source)
    blocks = doc["blocks"]
    if not isinstance(blocks, list):
        raise FormatError("expected a list of blocks", f"{source}.blocks")
    out = []
    for k, b in enumerate(blocks):
        field = f"{source}.blocks[{k}]"
        if not isinstance(b, list) or not b:
            raise FormatError("expected a nonempty list of element indices", field)
        out.append([_int(x, f"{field}[{m}]") for m, x in enumerate(b)])
    try:
        return Partition.from_blocks(n, out)
    except (InvalidPartition, BadIndex) as exc:
        raise FormatError(str(exc), f"{source}.blocks") from exc


def parse_poset(text: str, source: str = "poset") -> Poset:
    return poset_from_json(_parse(text, source), source)


def parse_partition(text: str, n: int, source: str = "partition") -> Partition:
    return partition_from_json(_parse(text, source), n, source)


def load_poset(path: str | Path) -> Poset:
    return parse_poset(Path(path).read_text(), str(path))


def load_partition(path: str | Path, n: int) -> Partition:
    return parse_partition(Path(path).read_text(), n, str(path))


def fixture_to_json(p: Poset, t: Partition, **extra: Any) -> dict:
    doc = {"poset": poset_to_json(p), "partition": partition_to_json(t)}
    doc.update(extra)
    return doc


def fixture_from_json(doc: Any) -> tuple[Poset, Partition]:
    if not isinstance(doc, dict) or "poset" not in doc or "partition" not in doc:
        raise FormatError('expected an object with "poset" and "partition"', "fixture")
    p = poset_from_json(doc["poset"], "fixture.poset")
    return p, partition_from_json(doc["partition"], p.n, "fixture.partition")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(p: Poset, partition: Partition | None = None, name: str = "P") -> str:
    """Hasse diagram, bottom to top; classes of ``partition`` become clusters."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    if partition is None:
        for x in range(p.n):
            lines.append(f"  n{x} [label={_quote(p.labels[x])}];")
    else:
        for k, block in enumerate(partition.blocks):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append("    style=rounded;")
            for x in block:
                lines.append(f"    n{x} [label={_quote(p.labels[x])}];")
            lines.append("  }")
    for a, b in p.covers():
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
