"""Exact sparse matrices over the rationals, stored column-wise.

Entries are Python ``int`` where possible and :class:`fractions.Fraction`
otherwise; integral fractions are demoted to ``int`` so that integer
operators stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator

__all__ = ["SparseMatrix"]


def _clean(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    return v


class SparseMatrix:
    """Square exact matrix; ``cols[c][r]`` holds the nonzero entry at (r, c)."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim: int, cols: dict[int, dict[int, Rational]] | None = None):
        self.dim = dim
        self.cols: dict[int, dict[int, Rational]] = {}
        for c, col in (cols or {}).items():
            kept = {r: _clean(v) for r, v in col.items() if v != 0}
            if kept:
                self.cols[c] = kept

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, int, Rational]]) -> SparseMatrix:
        cols: dict[int, dict[int, Rational]] = {}
        for r, c, v in entries:
            if not (0 <= r < dim and 0 <= c < dim):
                raise IndexError(f"entry ({r}, {c}) outside dimension {dim}")
            col = cols.setdefault(c, {})
            col[r] = col.get(r, 0) + v
        return cls(dim, cols)

    @classmethod
    def identity(cls, dim: int) -> SparseMatrix:
        return cls(dim, {i: {i: 1} for i in range(dim)})

    @classmethod
    def zero(cls, dim: int) -> SparseMatrix:
        return cls(dim)

    @classmethod
    def diagonal(cls, values: Iterable[Rational]) -> SparseMatrix:
        values = list(values)
        return cls(len(values), {i: {i: v} for i, v in enumerate(values)})

    # inspection
    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.cols.values())

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self.cols.get(c, {}).get(r, 0)

    def entries(self) -> Iterator[tuple[int, int, Rational]]:
        """Nonzero entries in canonical (col, row) order."""
        for c in sorted(self.cols):
            col = self.cols[c]
            for r in sorted(col):
                yield r, c, col[r]

    def column(self, c: int) -> dict[int, Rational]:
        return dict(self.cols.get(c, {}))

    def is_zero(self) -> bool:
        return not self.cols

    def is_diagonal(self) -> bool:
        return all(set(col) <= {c} for c, col in self.cols.items())

    def diag(self) -> list[Rational]:
        return [self[i, i] for i in range(self.dim)]

    def to_dense(self) -> list[list[Rational]]:
        out = [[0] * self.dim for _ in range(self.dim)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    # arithmetic
    def _check(self, other: SparseMatrix) -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and self.cols == other.cols

    __hash__ = None

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        self._check(other)
        cols = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            tgt = cols.setdefault(c, {})
            for r, v in col.items():
                tgt[r] = tgt.get(r, 0) + v
        return SparseMatrix(self.dim, cols)

    def __neg__(self) -> SparseMatrix:
        return self.scale(-1)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def scale(self, k: Rational) -> SparseMatrix:
        if k == 0:
            return SparseMatrix(self.dim)
        k = _clean(k)
        return SparseMatrix(
            self.dim, {c: {r: k * v for r, v in col.items()} for c, col in self.cols.items()}
        )

    def __rmul__(self, k: Rational) -> SparseMatrix:
        if isinstance(k, Rational):
            return self.scale(k)
        return NotImplemented

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        self._check(other)
        cols: dict[int, dict[int, Rational]] = {}
        mine = self.cols
        for c, ocol in other.cols.items():
            acc: dict[int, Rational] = {}
            for k, w in ocol.items():
                src = mine.get(k)
                if not src:
                    continue
                for r, v in src.items():
                    acc[r] = acc.get(r, 0) + v * w
            cols[c] = acc
        return SparseMatrix(self.dim, cols)

    def apply(self, vec: dict[int, Rational]) -> dict[int, Rational]:
        """Matrix times sparse vector."""
        acc: dict[int, Rational] = {}
        for k, w in vec.items():
            for r, v in self.cols.get(k, {}).items():
                acc[r] = acc.get(r, 0) + v * w
        return {r: _clean(v) for r, v in acc.items() if v != 0}

    def transpose(self) -> SparseMatrix:
        return SparseMatrix.from_entries(self.dim, ((c, r, v) for r, c, v in self.entries()))

    def restrict_columns(self, keep: Iterable[int]) -> SparseMatrix:
        keep = set(keep)
        return SparseMatrix(self.dim, {c: col for c, col in self.cols.items() if c in keep})

    def dump(self) -> str:
        """Text form: header ``dim rows cols nnz`` then ``row col value`` in (col, row) order."""
        lines = [f"dim {self.dim} {self.dim} {self.nnz}"]
        lines += [f"{r} {c} {Fraction(v)}" for r, c, v in self.entries()]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> SparseMatrix:
        lines = text.strip().splitlines()
        head = lines[0].split()
        if head[0] != "dim" or head[1] != head[2]:
            raise ValueError("malformed matrix dump header")
        dim, nnz = int(head[1]), int(head[3])
        ents = []
        for ln in lines[1:]:
            r, c, v = ln.split()
            ents.append((int(r), int(c), Fraction(v)))
        if len(ents) != nnz:
            raise ValueError(f"header says {nnz} entries, found {len(ents)}")
        return cls.from_entries(dim, ents)

    def __repr__(self) -> str:
        return f"SparseMatrix(dim={self.dim}, nnz={self.nnz})"
