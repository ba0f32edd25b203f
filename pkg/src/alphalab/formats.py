"""Text formats: graph6 (n < 63), DIMACS edge format, and a plain edge list.

Every parser raises ``ParseError`` carrying the byte offset of the first problem.
"""

from __future__ import annotations

from .errors import ParseError
from .graphcore import Graph, from_edge_list, pair_order

GRAPH6_HEADER = ">>graph6<<"


def emit_graph6(g: Graph) -> str:
    if g.n >= 63:
        raise ValueError("graph6 output is limited to n < 63")
    bits = [g.rows[i] >> j & 1 for i, j in pair_order(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    start = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER.encode()) else 0
    if len(data) <= start:
        raise ParseError("missing graph6 size byte", start)
    head = data[start]
    if head == 126:
        raise ParseError("graph6 with n >= 63 is not supported", start)
    if not 63 <= head <= 125:
        raise ParseError(f"invalid graph6 size byte {head!r}", start)
    n = head - 63
    pairs = pair_order(n)
    nbytes = -(-len(pairs) // 6)
    body = data[start + 1:]
    if len(body) < nbytes:
        raise ParseError(f"graph6 body too short: need {nbytes} bytes, got {len(body)}", start + 1 + len(body))
    if len(body) > nbytes:
        raise ParseError("trailing bytes after graph6 body", start + 1 + nbytes)
    bits: list[int] = []
    for k, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise ParseError(f"invalid graph6 byte {byte!r}", start + 1 + k)
        value = byte - 63
        bits.extend((value >> s) & 1 for s in range(5, -1, -1))
    if any(bits[len(pairs):]):
        raise ParseError("nonzero padding bits in graph6 body", start + nbytes)
    rows = [0] * n
    for (i, j), b in zip(pairs, bits):
        if b:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def _lines_with_offsets(text: str):
    offset = 0
    for line in text.splitlines(keepends=True):
        yield offset, line.strip()
        offset += len(line.encode())


def _ints(fields: list[str], offset: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}", offset) from None


def parse_dimacs(text: str) -> Graph:
    """``p edge <n> <m>`` followed by ``e <u> <v>`` lines with 1-based vertices."""
    n = None
    declared_m = 0
    edges = []
    for offset, line in _lines_with_offsets(text):
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", offset)
            if len(fields) != 4 or fields[1] != "edge":
                raise ParseError(f"malformed problem line {line!r}", offset)
            n, declared_m = _ints(fields[2:], offset)
            if n < 0 or declared_m < 0:
                raise ParseError("negative size in problem line", offset)
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", offset)
            if len(fields) != 3:
                raise ParseError(f"malformed edge line {line!r}", offset)
            u, v = _ints(fields[1:], offset)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n} in {line!r}", offset)
            if u == v:
                raise ParseError(f"self-loop in {line!r}", offset)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {fields[0]!r}", offset)
    if n is None:
        raise ParseError("missing problem line", len(text.encode()))
    if len(edges) != declared_m:
        raise ParseError(f"problem line declares {declared_m} edges, found {len(edges)}", len(text.encode()))
    return from_edge_list(n, edges)


def emit_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """First line ``n <count>``, then one 0-based ``u v`` pair per line."""
    n = None
    edges = []
    for offset, line in _lines_with_offsets(text):
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ParseError(f"expected header 'n <count>', got {line!r}", offset)
            (n,) = _ints(fields[1:], offset)
            if n < 0:
                raise ParseError("negative vertex count", offset)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", offset)
        u, v = _ints(fields, offset)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1} in {line!r}", offset)
        if u == v:
            raise ParseError(f"self-loop in {line!r}", offset)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing header 'n <count>'", 0)
    return from_edge_list(n, edges)


def emit_edge_list(g: Graph) -> str:
    return "".join([f"n {g.n}\n"] + [f"{u} {v}\n" for u, v in g.edges()])


PARSERS = {"graph6": parse_graph6, "dimacs": parse_dimacs, "edges": parse_edge_list}


def guess_format(text: str) -> str:
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s == "c" or s.startswith(("c ", "p ")):
            return "dimacs"
        if s.startswith("n "):
            return "edges"
        return "graph6"
    return "graph6"
