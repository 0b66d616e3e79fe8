"""Elements of the truncation quotients: banded unipotent matrices mod level k.

An element is an infinite unipotent upper-triangular matrix I + N where N is
supported on upper diagonals 1..k and each diagonal repeats with period 3:
diagonal j is described by a triple of packed 3x3 blocks (positions 1..3,
cyclically indexed), and the entry at block-row r, diagonal j is
triple_j.block(r).  Level-k truncation discards diagonals beyond k.

Storage is dense and canonical: the payload of an element is its 3k blocks
as big-endian uint16 words in diagonal order, so byte-lexicographic order of
payloads equals lexicographic order of diagonals and hashing is trivial.
The vanish count l is the number of leading all-zero diagonals; the display
form `M_l([A,B,C],...)` lists the diagonals from l+1 on, mirroring the usual
notation for these elements.

Generic multiplication is the banded convolution

    c_d(i) = sum_{j=0..d} a_j(i) * b_{d-j}(i+j)       (a_0 = b_0 = I)

and is the source of truth; the closed forms for squares, conjugation and
high-vanish products are accelerations validated against it.
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import _kernel
from .f2algebra import mat_mul

__all__ = [
    "DiagTriple",
    "ZERO_TRIPLE",
    "GroupElement",
    "elem_identity",
    "elem_mul",
    "elem_inv",
    "truncate",
    "square_closed_form",
    "conj_closed_form",
    "xor_product_prefix",
    "first_two_diagonals",
    "format_element",
    "parse_element",
    "element_to_lists",
    "element_from_lists",
]


class DiagTriple(NamedTuple):
    """One period-3 diagonal: packed blocks at positions 1, 2, 3."""

    b1: int
    b2: int
    b3: int

    def block(self, i: int) -> int:
        """Block at any integer position, cyclic with period 3."""
        return self[(i - 1) % 3]


ZERO_TRIPLE = DiagTriple(0, 0, 0)


def _as_triple(t) -> DiagTriple:
    trip = DiagTriple(*t)
    for b in trip:
        if not isinstance(b, int) or not 0 <= b < 512:
            raise ValueError("diagonal blocks must be integers in [0, 512)")
    return trip


@dataclass(frozen=True, order=True, slots=True)
class GroupElement:
    """Level-k truncation of a banded unipotent element.

    Ordering and equality follow (k, payload); payload byte order equals
    diagonal-lexicographic order, making min() over elements canonical.
    """

    k: int
    payload: bytes

    @classmethod
    def from_payload(cls, k: int, payload: bytes) -> "GroupElement":
        if k < 1:
            raise ValueError("truncation level must be >= 1")
        if len(payload) != 6 * k:
            raise ValueError("payload length %d does not match level %d" % (len(payload), k))
        if max(struct.unpack(">%dH" % (3 * k), payload), default=0) > 511:
            raise ValueError("payload block out of range")
        return cls(k, payload)

    @classmethod
    def from_triples(cls, triples: Iterable) -> "GroupElement":
        trips = [_as_triple(t) for t in triples]
        if not trips:
            raise ValueError("truncation level must be >= 1")
        flat = [b for t in trips for b in t]
        return cls(len(trips), struct.pack(">%dH" % len(flat), *flat))

    @classmethod
    def identity(cls, k: int) -> "GroupElement":
        if k < 1:
            raise ValueError("truncation level must be >= 1")
        return cls(k, bytes(6 * k))

    def triples(self) -> tuple[DiagTriple, ...]:
        flat = struct.unpack(">%dH" % (3 * self.k), self.payload)
        return tuple(DiagTriple(*flat[3 * d : 3 * d + 3]) for d in range(self.k))

    def triple(self, d: int) -> DiagTriple:
        """Diagonal d, 1-indexed."""
        if not 1 <= d <= self.k:
            raise ValueError("diagonal index out of range")
        return DiagTriple(*struct.unpack(">3H", self.payload[6 * (d - 1) : 6 * d]))

    def band_block(self, r: int, d: int) -> int:
        """Packed block at block-row r, upper diagonal d."""
        return self.triple(d).block(r)

    @property
    def vanish_count(self) -> int:
        p = self.payload
        zero = bytes(6)
        l = 0
        while l < self.k and p[6 * l : 6 * l + 6] == zero:
            l += 1
        return l

    @property
    def is_identity(self) -> bool:
        return self.payload == bytes(6 * self.k)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return elem_mul(self, other)

    def inverse(self) -> "GroupElement":
        return elem_inv(self)

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return elem_inv(self) ** (-n)
        result = GroupElement.identity(self.k)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return "<element k=%d %s>" % (self.k, format_element(self))


def elem_identity(k: int) -> GroupElement:
    return GroupElement.identity(k)


def elem_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.k != b.k:
        raise ValueError("truncation level mismatch: %d vs %d" % (a.k, b.k))
    return GroupElement(a.k, _kernel.mul(a.payload, b.payload))


def elem_inv(a: GroupElement) -> GroupElement:
    return GroupElement(a.k, _kernel.inv(a.payload))


def truncate(a: GroupElement, k: int) -> GroupElement:
    """Image of `a` in the level-k quotient, k <= a.k."""
    if not 1 <= k <= a.k:
        raise ValueError("can only truncate to a level in [1, %d]" % a.k)
    return GroupElement(k, a.payload[: 6 * k])


# ---------------------------------------------------------------------------
# closed forms


def first_two_diagonals(a: GroupElement) -> tuple[int, DiagTriple, DiagTriple]:
    """Vanish count l plus diagonals l+1 and l+2 (zero-filled past level k)."""
    if a.is_identity:
        raise ValueError("identity has no non-trivial diagonals")
    l = a.vanish_count
    a1 = a.triple(l + 1)
    a2 = a.triple(l + 2) if l + 2 <= a.k else ZERO_TRIPLE
    return l, a1, a2


def square_closed_form(a: GroupElement) -> tuple[int, DiagTriple, DiagTriple]:
    """First two diagonals of a^2 from those of a.

    For a with vanish count l the square has vanish count 2l+1 and

        c1(i) = a1(i) a1(l+i+1)
        c2(i) = a1(i) a2(l+i+1) + a2(i) a1(l+i+2)

    valid whenever those diagonals survive truncation.
    """
    l, a1, a2 = first_two_diagonals(a)
    c1 = DiagTriple(*(mat_mul(a1[i], a1[(i + l + 1) % 3]) for i in range(3)))
    c2 = DiagTriple(
        *(
            mat_mul(a1[i], a2[(i + l + 1) % 3]) ^ mat_mul(a2[i], a1[(i + l + 2) % 3])
            for i in range(3)
        )
    )
    return 2 * l + 1, c1, c2


def conj_closed_form(a: GroupElement, b1) -> tuple[DiagTriple, DiagTriple]:
    """First two diagonals of g a g^-1 for any g with first diagonal b1.

    The leading diagonal is unchanged and

        c2(i) = a2(i) + b1(i) a1(i+1) + a1(i) b1(l+i+1)

    depends only on b1; conjugating by g and by g^-1 agree.
    """
    b1 = _as_triple(b1)
    l, a1, a2 = first_two_diagonals(a)
    c2 = DiagTriple(
        *(
            a2[i] ^ mat_mul(b1[i], a1[(i + 1) % 3]) ^ mat_mul(a1[i], b1[(i + l + 1) % 3])
            for i in range(3)
        )
    )
    return a1, c2


def xor_product_prefix(a: GroupElement, b: GroupElement) -> tuple[GroupElement, int]:
    """Entrywise-XOR form of a product with a high-vanish factor.

    With la = vanish(a) and lb = vanish(b), the products a*b and b*a agree
    with payload XOR on every diagonal up to la+lb+1; cross terms only enter
    beyond that depth.  Returns the XOR element truncated to the valid depth
    (capped at level k) together with that depth.
    """
    if a.k != b.k:
        raise ValueError("truncation level mismatch")
    depth = min(a.k, a.vanish_count + b.vanish_count + 1)
    merged = bytes(x ^ y for x, y in zip(a.payload, b.payload))
    return GroupElement(depth, merged[: 6 * depth]), depth


# ---------------------------------------------------------------------------
# display and interchange forms

_TRIPLE_RE = re.compile(r"\[(\d+),(\d+),(\d+)\]")
_ELEMENT_RE = re.compile(r"^M_(\d+)\((.*)\)$")


def format_element(a: GroupElement) -> str:
    """Render as M_l([...],...), listing diagonals l+1..k."""
    l = a.vanish_count
    tail = (a.triple(d) for d in range(l + 1, a.k + 1))
    return "M_%d(%s)" % (l, ",".join("[%d,%d,%d]" % t for t in tail))


def parse_element(text: str, k: int) -> GroupElement:
    """Inverse of format_element at a given level k."""
    m = _ELEMENT_RE.match(text.strip())
    if not m:
        raise ValueError("malformed element text %r" % text)
    l = int(m.group(1))
    body = "".join(m.group(2).split())
    trips = [_as_triple(tuple(map(int, g))) for g in _TRIPLE_RE.findall(body)]
    if ",".join("[%d,%d,%d]" % t for t in trips) != body:
        raise ValueError("malformed element text %r" % text)
    if l < 0 or l + len(trips) > k:
        raise ValueError("element text does not fit level %d" % k)
    full = [ZERO_TRIPLE] * l + trips
    full += [ZERO_TRIPLE] * (k - len(full))
    return GroupElement.from_triples(full)


def element_to_lists(a: GroupElement) -> list[list[int]]:
    """All k diagonals as plain lists, for JSON interchange."""
    return [list(t) for t in a.triples()]


def element_from_lists(rows: Sequence[Sequence[int]]) -> GroupElement:
    return GroupElement.from_triples(rows)
