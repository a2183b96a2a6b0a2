"""Linear algebra over GF(2) with rows packed into Python ints.

Bit ``i`` of an int is column ``i``.  Echelon forms are kept fully reduced
(RREF) with the lowest set column of each row as its pivot, so a span has a
unique stored form no matter in which order its rows arrived.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BitVector",
    "RowBasis",
    "iter_bits",
    "kernel_basis",
    "intersect",
    "member",
    "quotient_dim",
    "express",
    "to_bitstring",
]


def iter_bits(v: int) -> Iterator[int]:
    """Yield the set bit positions of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def to_bitstring(v: int, width: int) -> str:
    """Column 0 first."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(width))


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over GF(2)."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside of vector length")

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise IndexError(f"bit {i} out of range for length {length}")
            bits ^= 1 << i
        return cls(length, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"bit {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return (self[i] for i in range(self.length))

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: "BitVector") -> int:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __str__(self) -> str:
        return to_bitstring(self.bits, self.length)


def _as_int(v, width: int) -> int:
    if isinstance(v, BitVector):
        if v.length != width:
            raise ValueError(f"length mismatch: {v.length} != {width}")
        return v.bits
    v = int(v)
    if v < 0 or v >> width:
        raise ValueError(f"vector does not fit in width {width}")
    return v


class RowBasis:
    """Reduced row echelon basis of a subspace of GF(2)^width.

    Rows are added one at a time with :meth:`add_row`, so a constraint system
    can be streamed through without ever holding the full matrix.
    """

    def __init__(self, width: int, rows: Iterable = ()):
        if width < 0:
            raise ValueError("negative width")
        self.width = width
        self._rows: dict[int, int] = {}  # pivot column -> row
        self._pivmask = 0
        for r in rows:
            self.add_row(r)

    def reduce(self, v) -> int:
        """Return the canonical remainder of ``v`` modulo the span."""
        v = _as_int(v, self.width)
        hits = v & self._pivmask
        rows = self._rows
        while hits:
            low = hits & -hits
            v ^= rows[low.bit_length() - 1]
            hits ^= low
        return v

    def add_row(self, v) -> bool:
        """Insert ``v``; return True if it was already in the span (absorbed)."""
        v = self.reduce(v)
        if not v:
            return True
        low = v & -v
        p = low.bit_length() - 1
        rows = self._rows
        for q, r in rows.items():
            if r & low:
                rows[q] = r ^ v
        rows[p] = v
        self._pivmask |= low
        return False

    def extend(self, vectors: Iterable) -> int:
        """Add many rows; return how many raised the rank."""
        return sum(not self.add_row(v) for v in vectors)

    def __contains__(self, v) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    @property
    def rows(self) -> list[int]:
        """Rows ordered by pivot column."""
        return [self._rows[p] for p in sorted(self._rows)]

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.width, r) for r in self.rows]

    def copy(self) -> "RowBasis":
        out = RowBasis(self.width)
        out._rows = dict(self._rows)
        out._pivmask = self._pivmask
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RowBasis):
            return NotImplemented
        return self.width == other.width and self._rows == other._rows

    def __repr__(self) -> str:
        return f"RowBasis(width={self.width}, rank={self.rank})"


def kernel_basis(rows: Iterable, width: int) -> RowBasis:
    """Basis of {x : r.x = 0 for every row r}."""
    basis = rows if isinstance(rows, RowBasis) else RowBasis(width, rows)
    if basis.width != width:
        raise ValueError("width mismatch")
    pivot_rows = basis._rows
    free = [c for c in range(width) if not (basis._pivmask >> c) & 1]
    out = RowBasis(width)
    for f in free:
        fbit = 1 << f
        x = fbit
        for p, r in pivot_rows.items():
            if r & fbit:
                x |= 1 << p
        out.add_row(x)
    return out


def member(basis: RowBasis, v) -> bool:
    return v in basis


def quotient_dim(ambient_dim: int, sub: RowBasis) -> int:
    return ambient_dim - sub.rank


def intersect(spans: Sequence[RowBasis]) -> RowBasis:
    """Intersection of subspaces, computed as the annihilator of the sum of annihilators."""
    if not spans:
        raise ValueError("need at least one span")
    width = spans[0].width
    if any(s.width != width for s in spans):
        raise ValueError("width mismatch")
    if len(spans) == 1:
        return spans[0].copy()
    stacked = RowBasis(width)
    for s in spans:
        for r in kernel_basis(s, width).rows:
            stacked.add_row(r)
    return kernel_basis(stacked, width)


def express(vectors: Sequence[int], v: int, width: int) -> int | None:
    """Find a mask ``c`` with XOR of ``vectors[j]`` over set bits j equal to ``v``.

    Returns None when ``v`` is outside the span.
    """
    k = len(vectors)
    aug = RowBasis(width + k)
    for j, u in enumerate(vectors):
        aug.add_row(_as_int(u, width) | (1 << (width + j)))
    r = aug.reduce(_as_int(v, width))
    if r & ((1 << width) - 1):
        return None
    return r >> width
