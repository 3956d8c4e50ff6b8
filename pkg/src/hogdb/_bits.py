"""Shared bit-layout primitives for the graph6 encoding.

A graph on n vertices is identified with its upper-triangle adjacency
bit vector in column-major order: x(0,1), x(0,2), x(1,2), x(0,3), ...
Throughout the package this vector is packed into a single integer
("code") with x(0,1) as the most significant bit, so that integer
comparison of codes agrees with lexicographic comparison of graph6
strings for a fixed n.
"""

from __future__ import annotations

GRAPH6_MAX_N = 258047  # largest n representable with the 3-byte size prefix


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def size_prefix(n: int) -> str:
    """graph6 size prefix N(n): one byte below 63, four bytes up to 258047."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n <= 62:
        return chr(n + 63)
    if n <= GRAPH6_MAX_N:
        return "~" + chr(((n >> 12) & 0x3F) + 63) + chr(((n >> 6) & 0x3F) + 63) + chr((n & 0x3F) + 63)
    raise ValueError(f"vertex count {n} exceeds graph6 limit {GRAPH6_MAX_N}")


def line_from_code(n: int, code: int) -> str:
    """graph6 line (no newline) for the packed upper-triangle code."""
    w = pair_count(n)
    padded = -(-w // 6) * 6
    code <<= padded - w
    chars = [size_prefix(n)]
    for shift in range(padded - 6, -1, -6):
        chars.append(chr(((code >> shift) & 0x3F) + 63))
    return "".join(chars)


def code_from_rows(n: int, rows) -> int:
    """Pack adjacency bitmask rows into the column-major code integer."""
    code = 0
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            code = (code << 1) | ((rj >> i) & 1)
    return code


def rows_from_code(n: int, code: int) -> list[int]:
    """Inverse of code_from_rows."""
    rows = [0] * n
    shift = pair_count(n)
    for j in range(1, n):
        for i in range(j):
            shift -= 1
            if (code >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows
