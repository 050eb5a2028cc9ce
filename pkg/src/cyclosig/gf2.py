"""Bit-packed linear algebra over GF(2).

Vectors are Python ints (bit ``j`` is coordinate ``j``); matrices are
row-major ``uint64`` word arrays with little-endian bit order inside each
word. Rank of a packed matrix runs an online elimination compiled with numba.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numba
import numpy as np

WORD = 64


@dataclass(frozen=True)
class SignVector:
    """An element of GF(2)^dim; bits past ``dim`` are always zero."""

    dim: int
    bits: int = 0

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dim must be non-negative")
        if self.bits < 0 or self.bits >> self.dim:
            raise ValueError(f"bits do not fit in dimension {self.dim}")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> SignVector:
        values = list(values)
        bits = 0
        for j, v in enumerate(values):
            if v & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    @classmethod
    def ones(cls, dim: int) -> SignVector:
        return cls(dim, (1 << dim) - 1)

    @classmethod
    def zeros(cls, dim: int) -> SignVector:
        return cls(dim, 0)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.dim:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __xor__(self, other: SignVector) -> SignVector:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return SignVector(self.dim, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.dim

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.dim)]

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def is_all_ones(self) -> bool:
        return self.bits == (1 << self.dim) - 1


def n_words(dim: int) -> int:
    return max(1, -(-dim // WORD))


def pack_bool_rows(rows: np.ndarray) -> np.ndarray:
    """Pack a 2-d boolean array into ``uint64`` words, little-endian bit order."""
    rows = np.asarray(rows, dtype=bool)
    nrows, dim = rows.shape
    packed = np.packbits(rows, axis=1, bitorder="little")
    width = n_words(dim) * 8
    out = np.zeros((nrows, width), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view(np.uint64)


def unpack_words(words: np.ndarray, dim: int) -> np.ndarray:
    raw = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little", count=dim).astype(bool)


def words_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(row).tobytes(), "little")


def int_to_words(bits: int, dim: int) -> np.ndarray:
    nbytes = n_words(dim) * 8
    return np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint64).copy()


@dataclass(frozen=True, eq=False)
class SignMatrix:
    """Immutable packed GF(2) matrix with residue labels on rows and columns."""

    words: np.ndarray
    row_labels: tuple[int, ...]
    col_labels: tuple[int, ...]

    def __post_init__(self):
        words = np.ascontiguousarray(self.words, dtype=np.uint64)
        if words.ndim != 2:
            raise ValueError("words must be a 2-d array")
        if words.shape[0] != len(self.row_labels):
            raise ValueError("one row label per row required")
        if words.shape[1] != n_words(len(self.col_labels)):
            raise ValueError("word width does not match the number of columns")
        words = words.copy()
        words.flags.writeable = False
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "row_labels", tuple(int(a) for a in self.row_labels))
        object.__setattr__(self, "col_labels", tuple(int(b) for b in self.col_labels))

    @classmethod
    def from_bool(cls, entries, row_labels=None, col_labels=None) -> SignMatrix:
        entries = np.atleast_2d(np.asarray(entries, dtype=bool))
        nrows, dim = entries.shape
        row_labels = range(1, nrows + 1) if row_labels is None else row_labels
        col_labels = range(1, dim + 1) if col_labels is None else col_labels
        return cls(pack_bool_rows(entries), tuple(row_labels), tuple(col_labels))

    @classmethod
    def from_vectors(cls, rows: Sequence[SignVector], row_labels=None, col_labels=None) -> SignMatrix:
        if not rows:
            raise ValueError("at least one row required")
        dim = rows[0].dim
        if any(r.dim != dim for r in rows):
            raise ValueError("all rows must share one dimension")
        words = np.stack([int_to_words(r.bits, dim) for r in rows])
        row_labels = range(1, len(rows) + 1) if row_labels is None else row_labels
        col_labels = range(1, dim + 1) if col_labels is None else col_labels
        return cls(words, tuple(row_labels), tuple(col_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @property
    def dim(self) -> int:
        return len(self.col_labels)

    def row(self, i: int) -> SignVector:
        """Row at 0-based position ``i``."""
        return SignVector(self.dim, words_to_int(self.words[i]))

    @property
    def rows(self) -> list[SignVector]:
        return [self.row(i) for i in range(self.shape[0])]

    def row_for(self, a: int) -> SignVector:
        return self.row(self.row_labels.index(a))

    def entry(self, a: int, b: int) -> int:
        """Entry at row label ``a`` and column label ``b``."""
        i = self.row_labels.index(a)
        j = self.col_labels.index(b)
        return int((self.words[i, j // WORD] >> np.uint64(j % WORD)) & np.uint64(1))

    def to_bool(self) -> np.ndarray:
        return unpack_words(self.words, self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and np.array_equal(self.words, other.words)
        )


@numba.njit(cache=True)
def _online_rank(words, ncols, target):
    nrows, width = words.shape
    cap = min(nrows, ncols)
    pivots = np.empty((max(cap, 1), width), dtype=np.uint64)
    pivot_cols = np.empty(max(cap, 1), dtype=np.int64)
    row = np.empty(width, dtype=np.uint64)
    one = np.uint64(1)
    rank = 0
    for i in range(nrows):
        for j in range(width):
            row[j] = words[i, j]
        for p in range(rank):
            c = pivot_cols[p]
            w0 = c >> 6
            if (row[w0] >> np.uint64(c & 63)) & one:
                for j in range(w0, width):
                    row[j] ^= pivots[p, j]
        lead = -1
        for j in range(width):
            x = row[j]
            if x != 0:
                b = 0
                while not (x >> np.uint64(b)) & one:
                    b += 1
                lead = j * 64 + b
                break
        if lead >= 0:
            for j in range(width):
                pivots[rank, j] = row[j]
            pivot_cols[rank] = lead
            rank += 1
            if rank == cap or rank == target:
                break
    return rank


def rank(matrix: SignMatrix, stop_at: int | None = None) -> int:
    """GF(2) rank of ``matrix``; the matrix itself is never modified.

    Rows are inserted one at a time into an echelon basis. Elimination stops
    once the rank reaches the column count, or ``stop_at`` if given, so the
    result is then ``min(true rank, stop_at)``.
    """
    nrows, dim = matrix.shape
    if nrows == 0 or dim == 0:
        return 0
    target = -1 if stop_at is None else int(stop_at)
    if target == 0:
        return 0
    return int(_online_rank(matrix.words, dim, target))


@dataclass(frozen=True)
class SpanBasis:
    """Reduced row-echelon basis of a subspace of GF(2)^dim.

    ``pivots`` maps each pivot column to its basis vector; a basis vector
    has a 1 in its own pivot column and 0 in every other pivot column.
    """

    dim: int
    pivots: tuple[tuple[int, int], ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, bits: int) -> int:
        for col, vec in self.pivots:
            if (bits >> col) & 1:
                bits ^= vec
        return bits

    def vectors(self) -> list[SignVector]:
        return [SignVector(self.dim, vec) for _, vec in self.pivots]

    def _check(self, v: SignVector):
        if v.dim != self.dim:
            raise ValueError(f"dimension mismatch: basis {self.dim}, vector {v.dim}")

    def contains(self, v: SignVector) -> bool:
        self._check(v)
        return self._reduce(v.bits) == 0

    def insert(self, v: SignVector) -> tuple[SpanBasis, bool]:
        self._check(v)
        bits = self._reduce(v.bits)
        if bits == 0:
            return self, False
        col = (bits & -bits).bit_length() - 1
        pivots = [
            (c, vec ^ bits) if (vec >> col) & 1 else (c, vec) for c, vec in self.pivots
        ]
        pivots.append((col, bits))
        pivots.sort()
        return SpanBasis(self.dim, tuple(pivots)), True


def span_insert(basis: SpanBasis, v: SignVector) -> tuple[SpanBasis, bool]:
    return basis.insert(v)


def contains(basis: SpanBasis, v: SignVector) -> bool:
    return basis.contains(v)


def span_of(vectors: Iterable[SignVector], dim: int) -> SpanBasis:
    basis = SpanBasis(dim)
    for v in vectors:
        basis, _ = basis.insert(v)
    return basis


def independent_subset(vectors: Sequence[SignVector], dim: int) -> list[int]:
    """Positions of a maximal independent subset, chosen greedily in order."""
    basis = SpanBasis(dim)
    keep = []
    for i, v in enumerate(vectors):
        basis, added = basis.insert(v)
        if added:
            keep.append(i)
    return keep


__all__ = [
    "SignVector",
    "SignMatrix",
    "SpanBasis",
    "rank",
    "span_insert",
    "contains",
    "span_of",
    "independent_subset",
    "pack_bool_rows",
    "unpack_words",
]
