"""Line-oriented text formats for digraphs and graphs, plus DOT export.

Digraph files start with ``digraph <n>`` or ``kpartite <n1> ... <nk>`` and
list ``arc <u> <v>`` lines. Graph files start with ``graph <n>`` and list
``edge <u> <v>`` lines. ``#`` starts a comment anywhere on a line.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterator, List, Optional, Set, Tuple, Union

from stepcomp.core.digraph import Digraph, Graph, PartitionedDigraph, PartitionSpec
from stepcomp.core.errors import ArcFormatError, DigraphError

AnyDigraph = Union[Digraph, PartitionedDigraph]


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield line_no, body.split()


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ArcFormatError(f"{what} must be an integer, got {token!r}", line_no) from None


def _parse_header(tokens: List[str], line_no: int) -> Tuple[str, int, Optional[PartitionSpec]]:
    keyword = tokens[0].lower()
    if keyword in {"digraph", "graph"}:
        if len(tokens) != 2:
            raise ArcFormatError(f"expected '{keyword} <n>'", line_no)
        n = _parse_int(tokens[1], line_no, "vertex count")
        if n < 0:
            raise ArcFormatError("vertex count must be non-negative", line_no)
        return keyword, n, None
    if keyword == "kpartite":
        sizes = [_parse_int(token, line_no, "partite-set size") for token in tokens[1:]]
        if len(sizes) < 2:
            raise ArcFormatError("kpartite needs at least two partite-set sizes", line_no)
        if any(size < 1 for size in sizes):
            raise ArcFormatError("partite-set sizes must be positive", line_no)
        if any(a < b for a, b in zip(sizes, sizes[1:])):
            raise ArcFormatError("partite-set sizes must be non-increasing", line_no)
        partition = PartitionSpec(tuple(sizes))
        return keyword, partition.n, partition
    raise ArcFormatError(f"unknown header {tokens[0]!r}", line_no)


def _parse_pairs(
    text: str, expected_headers: Set[str], pair_keyword: str, directed: bool
) -> Tuple[str, int, Optional[PartitionSpec], List[Tuple[int, int]]]:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None:
        raise ArcFormatError("empty input")
    line_no, tokens = first
    header, n, partition = _parse_header(tokens, line_no)
    if header not in expected_headers:
        raise ArcFormatError(f"expected a {' or '.join(sorted(expected_headers))} header", line_no)

    pairs: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for line_no, tokens in lines:
        if tokens[0].lower() != pair_keyword or len(tokens) != 3:
            raise ArcFormatError(f"expected '{pair_keyword} <u> <v>'", line_no)
        u = _parse_int(tokens[1], line_no, "vertex")
        v = _parse_int(tokens[2], line_no, "vertex")
        for vertex in (u, v):
            if not 0 <= vertex < n:
                raise ArcFormatError(f"vertex {vertex} out of range 0..{n - 1}", line_no)
        if u == v:
            raise ArcFormatError(f"loop at vertex {u}", line_no)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise ArcFormatError(f"duplicate {pair_keyword} {u} {v}", line_no)
        if directed and (v, u) in seen:
            raise ArcFormatError(f"arc {u} {v} reverses an earlier arc (directed 2-cycle)", line_no)
        seen.add(key)
        pairs.append((u, v))
    return header, n, partition, pairs


def parse_digraph(text: str) -> AnyDigraph:
    """Parse arc-list text into a ``Digraph`` or, for ``kpartite`` headers, a ``PartitionedDigraph``."""

    _, n, partition, arcs = _parse_pairs(text, {"digraph", "kpartite"}, "arc", directed=True)
    digraph = Digraph(n, frozenset(arcs))
    if partition is None:
        return digraph
    try:
        return PartitionedDigraph(digraph, partition)
    except DigraphError as exc:
        raise ArcFormatError(f"not an orientation of {partition.label()}: {exc}") from exc


def parse_graph(text: str) -> Graph:
    _, n, _, edges = _parse_pairs(text, {"graph"}, "edge", directed=False)
    return Graph(n, frozenset(edges))


def parse_any(text: str) -> Union[AnyDigraph, Graph]:
    """Dispatch on the header keyword."""

    first = next(_content_lines(text), None)
    if first is not None and first[1][0].lower() == "graph":
        return parse_graph(text)
    return parse_digraph(text)


def emit_digraph(digraph: AnyDigraph) -> str:
    if isinstance(digraph, PartitionedDigraph):
        header = "kpartite " + " ".join(str(size) for size in digraph.partition.sizes)
        arcs = digraph.digraph.sorted_arcs()
    else:
        header = f"digraph {digraph.n}"
        arcs = digraph.sorted_arcs()
    lines = [header] + [f"arc {u} {v}" for u, v in arcs]
    return "\n".join(lines) + "\n"


def emit_graph(graph: Graph) -> str:
    lines = [f"graph {graph.n}"] + [f"edge {u} {v}" for u, v in graph.sorted_edges()]
    return "\n".join(lines) + "\n"


def export_dot(obj: Union[AnyDigraph, Graph], name: str = "D") -> str:
    """Render a DOT block; partite blocks become same-rank clusters."""

    if isinstance(obj, Graph):
        lines = [f"graph {name} {{"]
        lines.extend(f"  {v};" for v in obj.vertices())
        lines.extend(f"  {u} -- {v};" for u, v in obj.sorted_edges())
        lines.append("}")
        return "\n".join(lines) + "\n"

    lines = [f"digraph {name} {{"]
    if isinstance(obj, PartitionedDigraph):
        for index, block in enumerate(obj.partition.blocks()):
            members = " ".join(f"{v};" for v in block)
            lines.append(
                f"  subgraph cluster_{index + 1} {{ label=\"V{index + 1}\"; rank=same; {members} }}"
            )
        digraph = obj.digraph
    else:
        digraph = obj
        lines.extend(f"  {v};" for v in digraph.vertices())
    lines.extend(f"  {u} -> {v};" for u, v in digraph.sorted_arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ArcFormatError(f"{path} is not UTF-8 text (byte {exc.start})") from exc


def read_digraph(path: Path) -> AnyDigraph:
    return parse_digraph(_read(path))


def read_any(path: Path) -> Union[AnyDigraph, Graph]:
    return parse_any(_read(path))


def write_text(path: Path, text: str) -> None:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


__all__ = [
    "AnyDigraph",
    "parse_digraph",
    "parse_graph",
    "parse_any",
    "emit_digraph",
    "emit_graph",
    "export_dot",
    "read_digraph",
    "read_any",
    "write_text",
]
