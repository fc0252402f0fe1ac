"""Reading and writing graphs: graph6 and plain edge lists."""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph

GRAPH6_HEADER = b">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(G: Graph) -> str:
    """graph6 encoding (no header)."""
    bitstream = []
    for j in range(1, G.n):
        for i in range(j):
            bitstream.append(G.adj[i] >> j & 1)
    while len(bitstream) % 6:
        bitstream.append(0)
    body = bytes(
        63 + int("".join(map(str, bitstream[k:k + 6])), 2) for k in range(0, len(bitstream), 6)
    )
    return (_encode_size(G.n) + body).decode("ascii")


def parse_graph6(text: bytes | str) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise ParseError("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        bad = next(chr(c) for c in data if c < 63 or c > 126)
        raise ParseError(f"invalid graph6 character {bad!r}")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for c in data[2:8]:
            n = n << 6 | (c - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        n = 0
        for c in data[1:4]:
            n = n << 6 | (c - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    stream = []
    for c in body:
        v = c - 63
        stream.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(stream[nbits:]):
        raise ParseError("nonzero graph6 padding bits")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def parse_edge_list(text: bytes | str, n: int | None = None) -> Graph:
    """Parse ``u v`` lines (0-indexed, ``#`` comments).

    ``n`` forces the vertex count, which is how isolated vertices are
    expressed.  Self-loops and repeated edges are rejected.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"edge list is not UTF-8: {exc}") from exc
    edges = []
    seen = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex index")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
        top = max(top, u, v)
    if n is None:
        n = top + 1
    elif top >= n:
        raise ParseError(f"vertex {top} out of range for n={n}")
    return Graph.from_edges(n, edges)


def to_edge_list(G: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in G.edges())


def parse(fmt: str, text: bytes | str, n: int | None = None) -> Graph:
    if fmt == "graph6":
        G = parse_graph6(text)
        if n is not None and n != G.n:
            raise ParseError(f"--n {n} disagrees with graph6 vertex count {G.n}")
        return G
    if fmt in ("edge-list", "edgelist"):
        return parse_edge_list(text, n)
    raise ParseError(f"unknown graph format {fmt!r}")


__all__ = ["parse", "parse_graph6", "parse_edge_list", "to_graph6", "to_edge_list"]
