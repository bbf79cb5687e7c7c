"""Text formats for graphs and families.

Graph block: a header line "n <n>", one "x y" line per edge (1 <= x <= n <
y <= 2n, any order), terminated by a blank line.  Family file: a header
"family n=<n> k=<k>" followed by kn graph blocks in order.
"""

from __future__ import annotations

import re
from typing import Iterator

from .graphs import BipartiteGraph, GraphError, GraphFamily

_FAMILY_HEADER = re.compile(r"^family n=(\d+) k=(\d+)\s*$")
_GRAPH_HEADER = re.compile(r"^n (\d+)\s*$")


def format_graph(g: BipartiteGraph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{x} {y}" for x, y in g.edges())
    lines.append("")
    return "\n".join(lines) + "\n"


def format_family(family: GraphFamily) -> str:
    parts = [f"family n={family.n} k={family.k}\n"]
    parts.extend(format_graph(g) for g in family.members)
    return "".join(parts)


def write_graph(path, g: BipartiteGraph) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))


def write_family(path, family: GraphFamily) -> None:
    with open(path, "w") as fh:
        fh.write(format_family(family))


def _parse_graph_block(lines: Iterator[str], header: str) -> BipartiteGraph:
    m = _GRAPH_HEADER.match(header)
    if not m:
        raise GraphError(f"expected graph header 'n <n>', got {header!r}")
    n = int(m.group(1))
    edges = []
    for line in lines:
        line = line.strip()
        if not line:
            break
        try:
            x, y = map(int, line.split())
        except ValueError as exc:
            raise GraphError(f"bad edge line {line!r}") from exc
        edges.append((x, y))
    return BipartiteGraph.from_edges(n, edges)


def parse_graph(text: str) -> BipartiteGraph:
    lines = iter(text.splitlines())
    for line in lines:
        if line.strip():
            return _parse_graph_block(lines, line.strip())
    raise GraphError("empty graph file")


def parse_family(text: str) -> GraphFamily:
    lines = iter(text.splitlines())
    header = None
    for line in lines:
        if line.strip():
            header = line.strip()
            break
    if header is None:
        raise GraphError("empty family file")
    m = _FAMILY_HEADER.match(header)
    if not m:
        raise GraphError(f"expected family header 'family n=<n> k=<k>', got {header!r}")
    n, k = int(m.group(1)), int(m.group(2))
    members = []
    for line in lines:
        if not line.strip():
            continue
        members.append(_parse_graph_block(lines, line.strip()))
        if len(members) == k * n:
            break
    if len(members) != k * n:
        raise GraphError(f"family needs {k * n} graph blocks, found {len(members)}")
    return GraphFamily(n, k, tuple(members))


def read_graph(path) -> BipartiteGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def read_family(path) -> GraphFamily:
    with open(path) as fh:
        return parse_family(fh.read())
