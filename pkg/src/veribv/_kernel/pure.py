"""Pure Python kernel for banded element arithmetic and set closures.

Elements are handled in their payload form: 3k packed blocks as big-endian
uint16 words, diagonal by diagonal, three blocks per diagonal.  Diagonal d
of a product is

    c_d(i) = a_d(i) + b_d(i) + sum_{j=1..d-1} a_j(i) * b_{d-j}(i+j)

over F2, with block positions cyclic mod 3 and terms beyond diagonal k
quotiented away.  Inverses solve the same convolution diagonal by diagonal.

The compiled kernel in _corec.pyx mirrors this module exactly; parity is
enforced by tests.  Budget semantics: a closure may return exactly `budget`
elements and raises as soon as one more would be needed.
"""

from __future__ import annotations

import struct

from ..errors import BudgetExceededError
from ..f2algebra import MUL_FLAT

KERNEL_NAME = "pure"

_structs: dict[int, struct.Struct] = {}


def _st(nblocks: int) -> struct.Struct:
    s = _structs.get(nblocks)
    if s is None:
        s = _structs[nblocks] = struct.Struct(">%dH" % nblocks)
    return s


def _check_pair(pa: bytes, pb: bytes) -> int:
    if len(pa) != len(pb):
        raise ValueError("payloads have different truncation levels")
    return _check_one(pa)


def _check_one(pa: bytes) -> int:
    n = len(pa)
    if n == 0 or n % 6:
        raise ValueError("payload length must be a positive multiple of 6")
    return n // 2


def mul(pa: bytes, pb: bytes) -> bytes:
    """Product of two payloads at the same truncation level."""
    n = _check_pair(pa, pb)
    st = _st(n)
    a = st.unpack(pa)
    b = st.unpack(pb)
    if max(a) > 511 or max(b) > 511:
        raise ValueError("payload block out of range")
    m = MUL_FLAT
    out = [0] * n
    for d in range(n // 3):
        base = 3 * d
        for i in range(3):
            acc = a[base + i] ^ b[base + i]
            for j in range(1, d + 1):
                acc ^= m[(b[3 * (d - j) + (i + j) % 3] << 9) | a[3 * (j - 1) + i]]
            out[base + i] = acc
    return st.pack(*out)


def inv(pa: bytes) -> bytes:
    """Inverse payload, solved diagonal by diagonal."""
    n = _check_one(pa)
    st = _st(n)
    a = st.unpack(pa)
    if max(a) > 511:
        raise ValueError("payload block out of range")
    m = MUL_FLAT
    z = [0] * n
    for d in range(n // 3):
        base = 3 * d
        for i in range(3):
            acc = a[base + i]
            for j in range(1, d + 1):
                acc ^= m[(z[3 * (d - j) + (i + j) % 3] << 9) | a[3 * (j - 1) + i]]
            z[base + i] = acc
    return st.pack(*z)


def _prep_seeds(seeds, others) -> list[bytes]:
    sizes = {len(p) for p in seeds} | {len(p) for p in others}
    if len(sizes) != 1:
        raise ValueError("all payloads must share one truncation level")
    _check_one(next(iter(seeds)))
    out: list[bytes] = []
    seen: set[bytes] = set()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def closure_left(seeds, mults, budget: int) -> list[bytes]:
    """Breadth-first closure of `seeds` under left multiplication by `mults`.

    Discovery order is deterministic: FIFO frontier, multipliers applied in
    the given order.  Returns the full discovery-order list.
    """
    out = _prep_seeds(seeds, mults)
    if len(out) > budget:
        raise BudgetExceededError(budget, len(out), "closure")
    seen = set(out)
    head = 0
    while head < len(out):
        cur = out[head]
        head += 1
        for mlt in mults:
            child = mul(mlt, cur)
            if child not in seen:
                if len(out) >= budget:
                    raise BudgetExceededError(budget, len(out) + 1, "closure")
                seen.add(child)
                out.append(child)
    return out


def closure_conj(seeds, conjugators, budget: int) -> list[bytes]:
    """Breadth-first closure of `seeds` under m -> s*m*s^-1 for each s."""
    out = _prep_seeds(seeds, conjugators)
    if len(out) > budget:
        raise BudgetExceededError(budget, len(out), "orbit closure")
    pairs = [(s, inv(s)) for s in conjugators]
    seen = set(out)
    head = 0
    while head < len(out):
        cur = out[head]
        head += 1
        for s, si in pairs:
            child = mul(mul(s, cur), si)
            if child not in seen:
                if len(out) >= budget:
                    raise BudgetExceededError(budget, len(out) + 1, "orbit closure")
                seen.add(child)
                out.append(child)
    return out
