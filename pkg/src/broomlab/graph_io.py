"""Edge-list and DIMACS col readers and writers.

Canonical output sorts edges and uses LF line endings, so a write
followed by a read and a second write is byte-identical.  DIMACS is
1-indexed on the wire and converted to 0-indexed here, in one place.
"""

from __future__ import annotations

from pathlib import Path

from .graphs import Graph


class GraphParseError(ValueError):
    def __init__(self, path: str, line_no: int, message: str):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


def _parse_edgelist(text: str, path: str) -> Graph:
    n = None
    m = None
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2:
                raise GraphParseError(path, line_no, "header must be 'n m'")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(path, line_no, "header must be integers")
            continue
        if len(parts) != 2:
            raise GraphParseError(path, line_no, "edge line must be 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(path, line_no, "edge endpoints must be integers")
        if u == v:
            raise GraphParseError(path, line_no, f"self-loop at {u}")
        if n is not None and not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(path, line_no, f"endpoint out of range 0..{n - 1}")
        edges.append((u, v))
    if n is None:
        raise GraphParseError(path, 1, "missing 'n m' header")
    if m is not None and len(edges) != m:
        raise GraphParseError(
            path, 1, f"header promises {m} edges, file has {len(edges)}"
        )
    return Graph(n, edges)


def _parse_dimacs(text: str, path: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    declared = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphParseError(path, line_no, "problem line must be 'p edge N M'")
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError(path, line_no, "problem line must carry integers")
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError(path, line_no, "edge before problem line")
            if len(parts) != 3:
                raise GraphParseError(path, line_no, "edge line must be 'e u v'")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphParseError(path, line_no, "edge endpoints must be integers")
            if u == v:
                raise GraphParseError(path, line_no, f"self-loop at {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(path, line_no, f"endpoint out of range 1..{n}")
            edges.append((u, v))
        else:
            raise GraphParseError(path, line_no, f"unknown record {parts[0]!r}")
    if n is None:
        raise GraphParseError(path, 1, "missing problem line")
    g = Graph(n, edges)
    if declared is not None and g.m != declared:
        raise GraphParseError(
            path, 1, f"problem line promises {declared} edges, file has {g.m}"
        )
    return g


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    p = Path(path)
    text = p.read_text()
    kind = fmt or ("dimacs" if p.suffix == ".col" else "edgelist")
    if kind == "dimacs":
        return _parse_dimacs(text, str(p))
    if kind == "edgelist":
        return _parse_edgelist(text, str(p))
    raise ValueError(f"unknown format {kind!r}")


def render_graph(g: Graph, fmt: str = "edgelist") -> str:
    edges = g.sorted_edges()
    if fmt == "edgelist":
        lines = [f"{g.n} {len(edges)}"]
        lines += [f"{u} {v}" for u, v in edges]
        return "\n".join(lines) + "\n"
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {len(edges)}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in edges]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    p = Path(path)
    kind = fmt or ("dimacs" if p.suffix == ".col" else "edgelist")
    p.write_text(render_graph(g, kind), newline="\n")
