"""Arithmetic of 3x3 matrices over the field with two elements.

A matrix is packed into a single integer in [0, 511), one bit per entry:

    bit 8 7 6   row 1
        5 4 3   row 2
        2 1 0   row 3

so entry (i, j), rows and columns counted from 1, sits at bit 11 - 3*i - j.
The all-zero matrix is 0 and the identity is 273 (0b100010001).

Addition over F2 is XOR of the packed words.  Multiplication is served from
a precomputed 512 x 512 table; the table is built once at import time by
combining row images (row vector times matrix costs three XORs), and the
naive triple loop over entries stays the contract that tests compare
against exhaustively.
"""

from __future__ import annotations

__all__ = [
    "ZERO",
    "IDENTITY",
    "encode",
    "decode",
    "mat_add",
    "mat_mul",
    "MUL_FLAT",
]

ZERO = 0
IDENTITY = 273


def encode(rows) -> int:
    """Pack a 3x3 iterable of 0/1 entries into an integer."""
    rows = [list(r) for r in rows]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 array of bits")
    a = 0
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            a |= v << (8 - 3 * i - j)
    return a


def decode(a: int):
    """Unpack an integer into a tuple of three rows of bits."""
    _check(a)
    return tuple(tuple((a >> (8 - 3 * i - j)) & 1 for j in range(3)) for i in range(3))


def _check(a: int) -> None:
    if not isinstance(a, int) or not 0 <= a < 512:
        raise ValueError("packed matrix must be an integer in [0, 512)")


def _build_mul_flat():
    # Flat layout: product a*b lives at index (b << 9) | a.  Row images of b
    # (all eight products v*b for 3-bit row vectors v) reduce each of the
    # 512 a-values to three table lookups, done in one comprehension per b.
    table = []
    for b in range(512):
        b1, b2, b3 = b >> 6, (b >> 3) & 7, b & 7
        ri = [
            (b1 if v & 4 else 0) ^ (b2 if v & 2 else 0) ^ (b3 if v & 1 else 0)
            for v in range(8)
        ]
        hi = [r << 6 for r in ri]
        mid = [r << 3 for r in ri]
        table.extend(h | m | l for h in hi for m in mid for l in ri)
    return table


MUL_FLAT = _build_mul_flat()


def mat_add(a: int, b: int) -> int:
    """Sum over F2, entrywise XOR."""
    _check(a)
    _check(b)
    return a ^ b


def mat_mul(a: int, b: int) -> int:
    """Product a*b over F2."""
    _check(a)
    _check(b)
    return MUL_FLAT[(b << 9) | a]
