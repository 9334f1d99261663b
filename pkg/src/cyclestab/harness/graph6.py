"""graph6 codec (short form, n <= 62), compatible with nauty's tools."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from ..graph import SimpleGraph, from_rows

MAX_GRAPH6_N = 62
HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def encode(G: SimpleGraph) -> str:
    n = G.n
    if n > MAX_GRAPH6_N:
        raise Graph6Error(f"short-form graph6 holds at most {MAX_GRAPH6_N} vertices, got {n}")
    out = [chr(n + 63)]
    acc = 0
    filled = 0
    rows = G.rows
    for j in range(1, n):
        col = rows[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(acc + 63))
                acc = filled = 0
    if filled:
        out.append(chr((acc << (6 - filled)) + 63))
    return "".join(out)


def decode(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 record")
    values = []
    for ch in s:
        b = ord(ch)
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the graph6 range 63..126")
        values.append(b - 63)
    n = values[0]
    if n == 63:
        raise Graph6Error("long-form graph6 (n >= 63) is not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = values[1:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits after the last edge bit")
    return from_rows(rows, check=False)


def read_graph6(path: str | Path) -> Iterator[SimpleGraph]:
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield decode(line)
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}") from None


def write_graph6(graphs: Iterable[SimpleGraph], path: str | Path) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for G in graphs:
            fh.write(encode(G) + "\n")
            count += 1
    return count
