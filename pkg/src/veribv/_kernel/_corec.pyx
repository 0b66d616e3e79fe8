# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for banded element arithmetic and set closures.

Same contract as the pure module: payloads are big-endian uint16 blocks,
three per diagonal; see pure.py for the convolution formulas and the budget
semantics.  The 512x512 block product table is rebuilt here from the naive
triple loop, independently of the Python-side table.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Malloc, PyMem_Free

from ..errors import BudgetExceededError

KERNEL_NAME = "c"

DEF MAXK = 255
DEF MAXBLOCKS = 765  # 3 * MAXK

cdef unsigned short MUL[512][512]


cdef void _build_table() noexcept:
    cdef int a, b, i, j, m, s, out
    for a in range(512):
        for b in range(512):
            out = 0
            for i in range(3):
                for j in range(3):
                    s = 0
                    for m in range(3):
                        s ^= ((a >> (8 - 3 * i - m)) & 1) & ((b >> (8 - 3 * m - j)) & 1)
                    out |= s << (8 - 3 * i - j)
            MUL[a][b] = <unsigned short> out

_build_table()


cdef int _load(bytes p, unsigned short *dst) except -1:
    """Unpack a payload into blocks; returns the block count."""
    cdef Py_ssize_t nb = len(p)
    cdef int n, t
    cdef const unsigned char *raw = p
    if nb == 0 or nb % 6:
        raise ValueError("payload length must be a positive multiple of 6")
    n = <int> (nb // 2)
    if n > MAXBLOCKS:
        raise ValueError("truncation level beyond compiled kernel limit (%d)" % MAXK)
    for t in range(n):
        dst[t] = (raw[2 * t] << 8) | raw[2 * t + 1]
        if dst[t] > 511:
            raise ValueError("payload block out of range")
    return n


cdef bytes _dump(unsigned short *src, int n):
    cdef unsigned char buf[2 * MAXBLOCKS]
    cdef int t
    for t in range(n):
        buf[2 * t] = src[t] >> 8
        buf[2 * t + 1] = src[t] & 0xFF
    return PyBytes_FromStringAndSize(<char *> buf, 2 * n)


cdef void _mul_core(unsigned short *a, unsigned short *b, unsigned short *out, int n) noexcept:
    cdef int d, i, j, acc, base
    for d in range(n / 3):
        base = 3 * d
        for i in range(3):
            acc = a[base + i] ^ b[base + i]
            for j in range(1, d + 1):
                acc ^= MUL[a[3 * (j - 1) + i]][b[3 * (d - j) + (i + j) % 3]]
            out[base + i] = acc


cdef void _inv_core(unsigned short *a, unsigned short *z, int n) noexcept:
    cdef int d, i, j, acc, base
    for d in range(n / 3):
        base = 3 * d
        for i in range(3):
            acc = a[base + i]
            for j in range(1, d + 1):
                acc ^= MUL[a[3 * (j - 1) + i]][z[3 * (d - j) + (i + j) % 3]]
            z[base + i] = acc


def mul(bytes pa, bytes pb):
    """Product of two payloads at the same truncation level."""
    cdef unsigned short a[MAXBLOCKS]
    cdef unsigned short b[MAXBLOCKS]
    cdef unsigned short c[MAXBLOCKS]
    cdef int n
    if len(pa) != len(pb):
        raise ValueError("payloads have different truncation levels")
    n = _load(pa, a)
    _load(pb, b)
    _mul_core(a, b, c, n)
    return _dump(c, n)


def inv(bytes pa):
    """Inverse payload, solved diagonal by diagonal."""
    cdef unsigned short a[MAXBLOCKS]
    cdef unsigned short z[MAXBLOCKS]
    cdef int n
    n = _load(pa, a)
    _inv_core(a, z, n)
    return _dump(z, n)


cdef list _dedupe(seeds):
    out = []
    seen = set()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


cdef int _check_sizes(seeds, others) except -1:
    sizes = {len(p) for p in seeds} | {len(p) for p in others}
    if len(sizes) != 1:
        raise ValueError("all payloads must share one truncation level")
    return 0


def closure_left(seeds, mults, long long budget):
    """Breadth-first closure under left multiplication; see pure.py."""
    cdef unsigned short cur[MAXBLOCKS]
    cdef unsigned short child[MAXBLOCKS]
    cdef unsigned short *mbuf
    cdef int n = 0, nm, mi
    cdef Py_ssize_t head
    cdef bytes curb, childb

    _check_sizes(seeds, mults)
    out = _dedupe(seeds)
    if len(out) > budget:
        raise BudgetExceededError(budget, len(out), "closure")
    nm = len(mults)
    mbuf = <unsigned short *> PyMem_Malloc(nm * MAXBLOCKS * sizeof(unsigned short))
    if mbuf == NULL:
        raise MemoryError()
    try:
        for mi in range(nm):
            n = _load(mults[mi], mbuf + mi * MAXBLOCKS)
        seen = set(out)
        head = 0
        while head < len(out):
            curb = <bytes> out[head]
            head += 1
            _load(curb, cur)
            for mi in range(nm):
                _mul_core(mbuf + mi * MAXBLOCKS, cur, child, n)
                childb = _dump(child, n)
                if childb not in seen:
                    if len(out) >= budget:
                        raise BudgetExceededError(budget, len(out) + 1, "closure")
                    seen.add(childb)
                    out.append(childb)
    finally:
        PyMem_Free(mbuf)
    return out


def closure_conj(seeds, conjugators, long long budget):
    """Breadth-first closure under m -> s*m*s^-1; see pure.py."""
    cdef unsigned short cur[MAXBLOCKS]
    cdef unsigned short tmp[MAXBLOCKS]
    cdef unsigned short child[MAXBLOCKS]
    cdef unsigned short *cbuf
    cdef int n = 0, nc, ci
    cdef Py_ssize_t head
    cdef bytes curb, childb

    _check_sizes(seeds, conjugators)
    out = _dedupe(seeds)
    if len(out) > budget:
        raise BudgetExceededError(budget, len(out), "orbit closure")
    nc = len(conjugators)
    # layout: conjugator i at slot 2i, its inverse at slot 2i+1
    cbuf = <unsigned short *> PyMem_Malloc(2 * nc * MAXBLOCKS * sizeof(unsigned short))
    if cbuf == NULL:
        raise MemoryError()
    try:
        for ci in range(nc):
            n = _load(conjugators[ci], cbuf + (2 * ci) * MAXBLOCKS)
            _inv_core(cbuf + (2 * ci) * MAXBLOCKS, cbuf + (2 * ci + 1) * MAXBLOCKS, n)
        seen = set(out)
        head = 0
        while head < len(out):
            curb = <bytes> out[head]
            head += 1
            _load(curb, cur)
            for ci in range(nc):
                _mul_core(cbuf + (2 * ci) * MAXBLOCKS, cur, tmp, n)
                _mul_core(tmp, cbuf + (2 * ci + 1) * MAXBLOCKS, child, n)
                childb = _dump(child, n)
                if childb not in seen:
                    if len(out) >= budget:
                        raise BudgetExceededError(budget, len(out) + 1, "orbit closure")
                    seen.add(childb)
                    out.append(childb)
    finally:
        PyMem_Free(cbuf)
    return out
