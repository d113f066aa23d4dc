"""Plain-text ultragraph files.

    ultragraph
    # comment lines and blank lines are allowed anywhere
    vertex v
    edge e v { w u }

The header must be the first meaningful line.  Every edge names its source
and a braced, nonempty list of range vertices; all references must resolve.
Diagnostics carry 1-based line numbers.  Emission is canonical: sorted
vertices, then sorted edges with sorted ranges, so parse and emit round-trip.
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .core import Ultragraph

HEADER = "ultragraph"
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _check_name(num: int, kind: str, name: str) -> str:
    if not _NAME.match(name):
        raise ParseError(num, f"bad {kind} name '{name}'")
    return name


def parse(text: str) -> Ultragraph:
    vertices: List[str] = []
    seen_vertices: set = set()
    edges: Dict[str, Tuple[str, Tuple[str, ...]]] = {}
    header_seen = False
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != HEADER:
                raise ParseError(num, f"expected header '{HEADER}', got '{line}'")
            header_seen = True
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise ParseError(num, "vertex lines take exactly one name")
            name = _check_name(num, "vertex", tokens[1])
            if name in seen_vertices:
                raise ParseError(num, f"duplicate vertex '{name}'")
            seen_vertices.add(name)
            vertices.append(name)
        elif tokens[0] == "edge":
            if len(tokens) < 5 or tokens[3] != "{" or tokens[-1] != "}":
                raise ParseError(
                    num, "edge lines look like: edge <name> <source> { <vertex>... }"
                )
            name = _check_name(num, "edge", tokens[1])
            if name in edges:
                raise ParseError(num, f"duplicate edge '{name}'")
            src = _check_name(num, "vertex", tokens[2])
            if src not in seen_vertices:
                raise ParseError(num, f"edge '{name}' has unknown source '{src}'")
            rng = tokens[4:-1]
            if not rng:
                raise ParseError(num, f"edge '{name}' has an empty range")
            for w in rng:
                _check_name(num, "vertex", w)
                if w not in seen_vertices:
                    raise ParseError(num, f"edge '{name}' has unknown range vertex '{w}'")
            if len(set(rng)) != len(rng):
                raise ParseError(num, f"edge '{name}' repeats a range vertex")
            edges[name] = (src, tuple(rng))
        else:
            raise ParseError(num, f"unknown directive '{tokens[0]}'")
    if not header_seen:
        raise ParseError(1, f"missing header '{HEADER}'")
    if not vertices:
        raise ParseError(1, "an ultragraph needs at least one vertex")
    return Ultragraph.build(vertices, edges)


def parse_file(path: str) -> Ultragraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def emit(g: Ultragraph) -> str:
    lines = [HEADER]
    lines.extend(f"vertex {v}" for v in g.vertices_sorted())
    for e in g.edges_sorted():
        rng = " ".join(sorted(g.range[e]))
        lines.append(f"edge {e} {g.source[e]} {{ {rng} }}")
    return "\n".join(lines) + "\n"


def emit_file(g: Ultragraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(g))
