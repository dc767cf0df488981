"""graph6 and edge-list serialization, plus certificate JSON emission.

The graph6 parser is strict: one graph per line, no whitespace tolerance
beyond a trailing newline, and any decoded degree above 3 is rejected so
nothing non-subcubic can enter through this door.
"""

from __future__ import annotations

import json

from .errors import (
    DegreeOverflow,
    DuplicateEdge,
    MalformedGraph6,
    MalformedLine,
    NotSubcubic,
    SelfLoop,
)
from .graph import Graph

_OFFSET = 63


def _bits_from_bytes(data: bytes) -> list[int]:
    bits = []
    for byte in data:
        val = byte - _OFFSET
        if val < 0 or val > 63:
            raise MalformedGraph6(f"byte {byte} outside graph6 range")
        for shift in range(5, -1, -1):
            bits.append((val >> shift) & 1)
    return bits


def parse_graph6(line: str | bytes) -> Graph:
    """Decode one graph6 line into a Graph, enforcing the degree cap."""
    if isinstance(line, str):
        line = line.encode("ascii")
    line = line.rstrip(b"\n")
    if not line:
        raise MalformedGraph6("empty line")
    if line.startswith(b">>graph6<<"):
        line = line[len(b">>graph6<<"):]
    pos = 0
    if line[pos] == 126:  # '~' extended size header
        if len(line) >= 2 and line[1] == 126:
            raise MalformedGraph6("8-byte size header not supported (n too large)")
        if len(line) < 4:
            raise MalformedGraph6("truncated extended size header")
        n = 0
        for byte in line[1:4]:
            val = byte - _OFFSET
            if val < 0 or val > 63:
                raise MalformedGraph6("bad byte in size header")
            n = (n << 6) | val
        pos = 4
    else:
        n = line[0] - _OFFSET
        if n < 0 or n > 62:
            raise MalformedGraph6("bad size byte")
        pos = 1
    nbits = n * (n - 1) // 2
    body = line[pos:]
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise MalformedGraph6(f"body has {len(body)} bytes, expected {expected}")
    bits = _bits_from_bytes(body)
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits")
    g = Graph()
    for v in range(n):
        g.add_vertex(v)
    degrees = [0] * n
    idx = 0
    edges = []
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                degrees[i] += 1
                degrees[j] += 1
                if degrees[i] > 3 or degrees[j] > 3:
                    raise NotSubcubic("decoded graph has a vertex of degree > 3")
                edges.append((i, j))
            idx += 1
    for i, j in edges:
        g.add_edge(i, j)
    return g


def write_graph6(g: Graph) -> str:
    """Encode a labeled graph; vertices are relabeled 0..n-1 in sorted order.

    When the vertex ids already are 0..n-1 (every generator and the whole
    corpus), parse(write(g)) reproduces the graph exactly.
    """
    ids = g.vertices()
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    if n > 258047:
        raise MalformedGraph6("n too large for 4-byte graph6 header")
    if n <= 62:
        head = bytes([n + _OFFSET])
    else:
        head = bytes([126, (n >> 12) + _OFFSET, ((n >> 6) & 63) + _OFFSET, (n & 63) + _OFFSET])
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(ids[i], ids[j]) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytearray()
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(val + _OFFSET)
    return (head + bytes(body)).decode("ascii")


def parse_edgelist(text: str) -> Graph:
    """Parse "u v" lines; '#' comments ignored; optional leading "n m" header.

    A first data line (a, b) is read as a header exactly when the remaining
    data-line count equals b, all edge endpoints are below a, and parsing the
    rest as edges succeeds; otherwise every line is an edge.
    """
    data_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected two fields, got {stripped!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer field in {stripped!r}") from None
        if a < 0 or b < 0:
            raise MalformedLine(f"line {lineno}: negative vertex id in {stripped!r}")
        data_lines.append((a, b))
    if not data_lines:
        raise MalformedLine("no edges in input")

    def build(pairs, declared_n=None) -> Graph:
        g = Graph()
        top = declared_n - 1 if declared_n is not None else max(max(p) for p in pairs)
        for v in range(top + 1):
            g.add_vertex(v)
        for u, v in pairs:
            if u == v:
                raise SelfLoop(f"self-loop {u} {v}")
            if g.has_edge(u, v):
                raise DuplicateEdge(f"duplicate edge {u} {v}")
            try:
                g.add_edge(u, v)
            except DegreeOverflow:
                raise NotSubcubic(f"vertex degree above 3 at edge {u} {v}") from None
        return g

    first_n, first_m = data_lines[0]
    rest = data_lines[1:]
    if len(rest) == first_m and rest and all(u < first_n and v < first_n for u, v in rest):
        return build(rest, declared_n=first_n)
    return build(data_lines)


def write_edgelist(g: Graph) -> str:
    census = g.degree_census()
    lines = [f"{census.n} {census.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def certificate_dict(cert) -> dict:
    """Stable-order dict form of a SolveCertificate (see emit_certificate_json)."""
    census = cert.bound.census
    return {
        "schema": 1,
        "n": census.n,
        "m": census.m,
        "n1": census.n1,
        "I": cert.bound.cubic,
        "K": cert.bound.k2,
        "lambda_times_6": cert.bound.lambda_times_6,
        "matching": sorted([u, v] for u, v in cert.matching),
        "matching_size": len(cert.matching),
        "rule_trace": [
            {
                "rule": step.rule,
                "case": step.case,
                "deleted": sorted(step.deleted),
                "added": sorted([u, v] for u, v in step.added_edges),
            }
            for step in cert.trace
        ],
        "k33_special": cert.k33_special,
        "valid": cert.valid,
        "elapsed_ms": cert.elapsed_ms,
    }


def emit_certificate_json(cert) -> str:
    """One-line JSON for a solve certificate, stable key order."""
    return json.dumps(certificate_dict(cert), separators=(",", ":"))
