"""Reading and writing graphs as graph6 strings or plain edge lists."""

from __future__ import annotations

from pathlib import Path

from .errors import InputError
from .graph import Graph, graph_from_edges


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]


def to_graph6(g: Graph) -> str:
    """graph6 encoding, without the optional ``>>graph6<<`` header."""
    bits = []
    for j in range(1, g.n):
        mj = g.adj[j]
        row = set(mj)
        for i in range(j):
            bits.append(1 if i in row else 0)
    bits += [0] * (-len(bits) % 6)
    out = _encode_n(g.n)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out).decode("ascii")


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    data = [ord(c) - 63 for c in s]
    if not data or any(d < 0 or d > 63 for d in data):
        raise InputError("not a graph6 string")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] != 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise InputError(f"graph6 body has {len(body)} bytes, expected {need}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if (body[byte] >> (5 - off)) & 1:
                edges.append((i, j))
            k += 1
    return graph_from_edges(n, edges)


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise InputError("edge list must start with a 'n m' line")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise InputError(f"bad edge line: {' '.join(r)}")
        edges.append((int(r[0]), int(r[1])))
    if len(edges) != m:
        raise InputError(f"header announces {m} edges, found {len(edges)}")
    return graph_from_edges(n, edges)


def read_graph(path: str | Path) -> Graph:
    """Load a graph; ``.g6`` files are graph6, anything else is tried as an edge list."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".g6":
        return from_graph6(text.splitlines()[0])
    try:
        return from_edgelist(text)
    except (InputError, ValueError):
        return from_graph6(text.splitlines()[0])


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("graph6" if path.suffix == ".g6" else "edgelist")
    if fmt == "graph6":
        text = to_graph6(g) + "\n"
    elif fmt == "edgelist":
        text = to_edgelist(g)
    else:
        raise InputError(f"unknown graph format {fmt!r}")
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
