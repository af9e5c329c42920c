"""Exact sparse integer matrices and fraction-free rank."""

from __future__ import annotations

import hashlib
from math import gcd
from typing import Iterable, Mapping


class SparseIntMatrix:
    """Immutable integer matrix stored as ``{row: {col: value}}`` without zeros."""

    __slots__ = ("shape", "_rows")

    def __init__(self, shape: tuple[int, int], entries: Mapping[tuple[int, int], int] = ()):
        self.shape = (int(shape[0]), int(shape[1]))
        rows: dict = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < self.shape[0] and 0 <= c < self.shape[1]):
                raise IndexError(f"entry ({r}, {c}) outside shape {self.shape}")
            if v:
                row = rows.setdefault(r, {})
                row[c] = row.get(c, 0) + int(v)
        cleaned = ({c: v for c, v in row.items() if v} for row in rows.values())
        self._rows = {r: row for r, row in zip(rows, cleaned) if row}

    @classmethod
    def _wrap(cls, shape, rows):
        m = cls.__new__(cls)
        m.shape = shape
        m._rows = rows
        return m

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "SparseIntMatrix":
        return cls._wrap((n, n if m is None else m), {})

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls._wrap((n, n), {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable[int]]) -> "SparseIntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls((len(rows), ncols), {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    # -- access -----------------------------------------------------------

    def items(self):
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def entries(self) -> dict:
        return dict(self.items())

    def __getitem__(self, rc):
        r, c = rc
        return self._rows.get(r, {}).get(c, 0)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.shape[1] for _ in range(self.shape[0])]
        for (r, c), v in self.items():
            out[r][c] = v
        return out

    def digest(self) -> str:
        h = hashlib.sha256(repr((self.shape, list(self.items()))).encode())
        return h.hexdigest()[:12]

    def without_entry(self, r: int, c: int) -> "SparseIntMatrix":
        """Copy with entry (r, c) set to zero."""
        rows = {i: dict(row) for i, row in self._rows.items()}
        rows.get(r, {}).pop(c, None)
        return SparseIntMatrix._wrap(self.shape, {i: row for i, row in rows.items() if row})

    def restrict_columns(self, cols) -> "SparseIntMatrix":
        keep = set(cols)
        rows = {}
        for r, row in self._rows.items():
            kept = {c: v for c, v in row.items() if c in keep}
            if kept:
                rows[r] = kept
        return SparseIntMatrix._wrap(self.shape, rows)

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> "SparseIntMatrix":
        rows: dict = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseIntMatrix._wrap((self.shape[1], self.shape[0]), rows)

    def _combine(self, other, sign):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = rows.setdefault(r, {})
            for c, v in row.items():
                s = target.get(c, 0) + sign * v
                if s:
                    target[c] = s
                else:
                    target.pop(c, None)
        return SparseIntMatrix._wrap(self.shape, {r: row for r, row in rows.items() if row})

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SparseIntMatrix._wrap(self.shape, {r: {c: -v for c, v in row.items()} for r, row in self._rows.items()})

    def __mul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return SparseIntMatrix.zeros(*self.shape)
        return SparseIntMatrix._wrap(self.shape, {r: {c: scalar * v for c, v in row.items()} for r, row in self._rows.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows = {}
        for r, row in self._rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow:
                    for c, b in brow.items():
                        acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return SparseIntMatrix._wrap((self.shape[0], other.shape[1]), rows)

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        return f"SparseIntMatrix({self.shape}, {self.entries()})"


def product(factors, n: int) -> SparseIntMatrix:
    """Ordered product of ``factors``; the n x n identity when empty."""
    out = None
    for f in factors:
        out = f if out is None else out @ f
    return SparseIntMatrix.identity(n) if out is None else out


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()} if g > 1 else row


def rank(vectors: Iterable[Mapping]) -> int:
    """Rank over Q of sparse integer vectors given as ``{coordinate: value}``.

    Integer-only elimination: a row is reduced against a pivot row by
    ``a*row - b*pivot`` and then divided by the gcd of its entries, so no
    fractions ever appear and entries stay small.
    """
    pivots: dict = {}
    for vec in vectors:
        row = {c: int(v) for c, v in vec.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _primitive(row)
                break
            a, b = piv[lead], row[lead]
            new = {}
            for c in row.keys() | piv.keys():
                v = a * row.get(c, 0) - b * piv.get(c, 0)
                if v:
                    new[c] = v
            row = _primitive(new)
    return len(pivots)


def flatten(m: SparseIntMatrix) -> dict:
    """The matrix as a vector indexed by ``(row, col)``."""
    return m.entries()
