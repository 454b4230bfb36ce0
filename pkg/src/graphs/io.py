"""
Graph Formats
Edge-list text, DOT export and msgpack snapshots (see FORMATS.md).
"""

from pathlib import Path
from typing import List, Optional, Set, Tuple, Union

import msgpack
import numpy as np

from ..core.exceptions import EdgeListFormatError, GraphError
from ..utils.logging import get_logger
from .core import Graph

logger = get_logger(__name__)

SNAPSHOT_FORMAT = "pseudograph-graph"
SNAPSHOT_VERSION = 1

PathLike = Union[str, Path]


def format_edge_list(g: Graph) -> str:
    """Edge-list text: header "n m", then one "u v" line per edge, u <= v."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_edge_list(g), encoding="utf-8")
    logger.debug(f"Wrote edge list for {g.label} to {path}")
    return path


def _parse_int(token: str, line: int, column: int, what: str) -> int:
    if not (token.isascii() and token.isdigit()):
        raise EdgeListFormatError(f"{what} {token!r} is not a non-negative integer", line, column)
    return int(token)


def _split(text: str) -> List[Tuple[str, int]]:
    """Tokens of a line with their 1-based columns."""
    tokens = []
    column = 0
    for token in text.split():
        column = text.index(token, column)
        tokens.append((token, column + 1))
        column += len(token)
    return tokens


def parse_edge_list(text: str, name: Optional[str] = None) -> Graph:
    """Parse edge-list text, raising EdgeListFormatError with line/column."""
    lines = text.split("\n")
    # a single trailing newline is part of the format
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise EdgeListFormatError("missing header line \"n m\"", 1, 1)

    header = _split(lines[0])
    if len(header) != 2:
        raise EdgeListFormatError(
            f"header must contain exactly two integers \"n m\", found {len(header)} tokens", 1, 1
        )
    n = _parse_int(header[0][0], 1, header[0][1], "vertex count")
    declared_m = _parse_int(header[1][0], 1, header[1][1], "edge count")

    seen: Set[Tuple[int, int]] = set()
    edges: List[Tuple[int, int]] = []
    for offset, raw in enumerate(lines[1:]):
        line_no = offset + 2
        tokens = _split(raw)
        if len(tokens) != 2:
            raise EdgeListFormatError(
                f"expected two vertices \"u v\", found {len(tokens)} tokens", line_no, 1
            )
        (tu, cu), (tv, cv) = tokens
        u = _parse_int(tu, line_no, cu, "vertex")
        v = _parse_int(tv, line_no, cv, "vertex")
        if u >= n:
            raise EdgeListFormatError(f"vertex {u} out of range [0, {n})", line_no, cu)
        if v >= n:
            raise EdgeListFormatError(f"vertex {v} out of range [0, {n})", line_no, cv)
        if u > v:
            raise EdgeListFormatError(f"edge ({u}, {v}) violates u <= v ordering", line_no, cu)
        if (u, v) in seen:
            raise EdgeListFormatError(f"duplicate edge ({u}, {v})", line_no, cu)
        seen.add((u, v))
        edges.append((u, v))

    if len(edges) != declared_m:
        raise EdgeListFormatError(
            f"header declares m = {declared_m} but {len(edges)} edge lines follow", 1, header[1][1]
        )
    return Graph.from_edge_list(n, edges, name=name)


def validate_edge_list(path: PathLike) -> Graph:
    """Read and validate an edge-list file."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Edge-list file not found: {path}")
    graph = parse_edge_list(path.read_text(encoding="utf-8"), name=path.stem)
    logger.debug(f"Read {graph!r} from {path}")
    return graph


def to_dot(g: Graph) -> str:
    """DOT export; edges appear in the same order as in the edge list."""
    name = (g.name or "G").replace('"', "'")
    lines = [f'graph "{name}" {{']
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot(text: str) -> Graph:
    """Read back the DOT subset written by to_dot."""
    vertices: Set[int] = set()
    edges: List[Tuple[int, int]] = []
    name = None
    for line in text.splitlines():
        line = line.strip().rstrip(";")
        if line.startswith("graph "):
            name = line[len("graph ") :].rstrip("{").strip().strip('"')
        elif "--" in line:
            u, v = (int(x) for x in line.split("--"))
            edges.append((u, v))
        elif line.isdigit():
            vertices.add(int(line))
    n = max(vertices) + 1 if vertices else 0
    return Graph.from_edge_list(n, edges, name=name)


def write_dot(g: Graph, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_dot(g), encoding="utf-8")
    return path


def pack_graph(g: Graph) -> bytes:
    """Compact msgpack snapshot of a graph."""
    edges = g.edge_array()
    payload = {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "n": g.n,
        "name": g.name,
        "edges": edges.astype("<i8").tobytes(),
    }
    return msgpack.packb(payload, use_bin_type=True)


def unpack_graph(data: bytes) -> Graph:
    payload = msgpack.unpackb(data, raw=False)
    if payload.get("format") != SNAPSHOT_FORMAT:
        raise GraphError(f"Not a graph snapshot (format={payload.get('format')!r})")
    if payload.get("version") != SNAPSHOT_VERSION:
        raise GraphError(f"Unsupported snapshot version {payload.get('version')}")
    edges = np.frombuffer(payload["edges"], dtype="<i8").reshape(-1, 2)
    return Graph.from_pairs(payload["n"], edges, name=payload.get("name"))


def write_snapshot(g: Graph, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(pack_graph(g))
    return path


def read_snapshot(path: PathLike) -> Graph:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Graph snapshot not found: {path}")
    return unpack_graph(path.read_bytes())


def load_graph(path: PathLike) -> Graph:
    """Load a graph by extension: .gpk snapshot, .dot, otherwise edge list."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".gpk":
        return read_snapshot(path)
    if suffix in (".dot", ".gv"):
        if not path.is_file():
            raise FileNotFoundError(f"DOT file not found: {path}")
        return parse_dot(path.read_text(encoding="utf-8"))
    return validate_edge_list(path)
