"""Headerless graph6 encoding of undirected graphs.

Format: N(v) size prefix, then the upper triangle of the adjacency matrix
read column-wise (x01, x02, x12, x03, ...), packed big-endian into 6-bit
groups, each group offset by 63 into printable ASCII.
"""

from __future__ import annotations

from .srg import Graph


class Graph6Error(ValueError):
    pass


def _encode_size(v: int) -> bytes:
    if v < 0:
        raise Graph6Error("negative vertex count")
    if v <= 62:
        return bytes([v + 63])
    if v <= 258047:
        return bytes([126, (v >> 12) + 63, ((v >> 6) & 63) + 63, (v & 63) + 63])
    raise Graph6Error("vertex counts above 258047 are not supported")


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 data")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4 or data[1] == 126:
        raise Graph6Error("unsupported or truncated size prefix")
    v = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
    return v, 4


def encode(g: Graph) -> bytes:
    """graph6 bytes of the adjacency structure (labels are not encoded)."""
    v = g.v
    out = bytearray(_encode_size(v))
    group = 0
    nbits = 0
    for j in range(1, v):
        col = g.rows[j]
        for i in range(j):
            group = (group << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(group + 63)
                group = 0
                nbits = 0
    if nbits:
        out.append((group << (6 - nbits)) + 63)
    return bytes(out)


def decode(data: bytes, labels=None) -> Graph:
    """Graph from graph6 bytes; labels default to 1..v."""
    data = data.strip()
    v, pos = _decode_size(data)
    need = (v * (v - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"body has {len(body)} groups, expected {need}")
    for ch in body:
        if not 63 <= ch <= 126:
            raise Graph6Error(f"byte {ch} outside the graph6 alphabet")
    rows = [0] * v
    bitpos = 0
    for j in range(1, v):
        for i in range(j):
            ch = body[bitpos // 6] - 63
            bit = (ch >> (5 - bitpos % 6)) & 1
            bitpos += 1
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    if labels is None:
        labels = tuple(range(1, v + 1))
    else:
        labels = tuple(labels)
        if len(labels) != v:
            raise Graph6Error("label count does not match the vertex count")
    return Graph(labels, tuple(rows))


def write_files(g: Graph, path: str) -> None:
    """Write `path` (graph6) and `path`.labels (vertex index -> point integer)."""
    with open(path, "wb") as fh:
        fh.write(encode(g))
        fh.write(b"\n")
    with open(path + ".labels", "w", encoding="ascii") as fh:
        for i, p in enumerate(g.labels):
            fh.write(f"{i} {p}\n")


def read_files(path: str) -> Graph:
    """Inverse of write_files."""
    with open(path, "rb") as fh:
        data = fh.read()
    labels = []
    with open(path + ".labels", "r", encoding="ascii") as fh:
        for line in fh:
            _, p = line.split()
            labels.append(int(p))
    return decode(data, labels)
