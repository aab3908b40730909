"""Sparse exact row reduction over Q and Q(i).

Vectors are ``dict[int, scalar]`` with zero entries omitted.  Every system
solved by this package (intertwiner equations, invariance constraints,
Kan-extension quotients) has a handful of non-zeros per equation, so a
dict-of-rows echelon form is far cheaper than dense elimination.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from collections.abc import Iterable, Mapping

from .scalars import Scalar

SparseVec = dict[int, Scalar]


class Echelon:
    """Incrementally maintained echelon basis of a row space.

    With ``high_pivots=False`` each row pivots on its lowest column; with
    ``high_pivots=True`` on its highest, which leaves the low-index
    coordinates free (useful when those coordinates should survive as a
    quotient basis).
    """

    def __init__(self, high_pivots: bool = False):
        self.high = high_pivots
        self.rows: dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _key(self, col: int) -> int:
        return -col if self.high else col

    def reduce(self, vec: Mapping[int, Scalar]) -> SparseVec:
        """Remainder of ``vec`` after eliminating every pivot column."""
        row = {c: v for c, v in vec.items() if v}
        heap = [self._key(c) for c in row if c in self.rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            c = -c if self.high else c
            f = row.get(c)
            if not f:
                continue
            for j, v in self.rows[c].items():
                nv = row.get(j, 0) - f * v
                if nv:
                    if j not in row and j in self.rows:
                        heapq.heappush(heap, self._key(j))
                    row[j] = nv
                else:
                    row.pop(j, None)
        return row

    def add(self, vec: Mapping[int, Scalar]) -> bool:
        """Insert a row; return True when it raised the rank."""
        row = self.reduce(vec)
        if not row:
            return False
        lead = max(row) if self.high else min(row)
        a = row[lead]
        if a == 1:
            self.rows[lead] = row
        elif a == -1:
            self.rows[lead] = {c: -v for c, v in row.items()}
        else:
            # unit pivots keep integer systems in int arithmetic
            inv = Fraction(1) / a
            self.rows[lead] = {c: v * inv for c, v in row.items()}
        return True

    def extend(self, vecs: Iterable[Mapping[int, Scalar]]) -> Echelon:
        for v in vecs:
            self.add(v)
        return self

    def reduced(self) -> dict[int, SparseVec]:
        """Fully reduced rows (pivot columns appear in exactly one row)."""
        out: dict[int, SparseVec] = {}
        # back-substitute from the far end so each row only meets finished rows
        for c in sorted(self.rows, key=self._key, reverse=True):
            row = dict(self.rows[c])
            for j in [j for j in row if j != c and j in out]:
                f = row[j]
                for jj, v in out[j].items():
                    nv = row.get(jj, 0) - f * v
                    if nv:
                        row[jj] = nv
                    else:
                        row.pop(jj, None)
            out[c] = row
        return out

    def nullspace(self, n: int) -> list[SparseVec]:
        """Basis of ``{x in F^n : row . x = 0 for every row}``.

        One vector per free column, ordered by column; the free column
        carries coefficient 1.
        """
        red = self.reduced()
        by_free: dict[int, SparseVec] = {}
        for c, row in red.items():
            for j, v in row.items():
                if j != c:
                    by_free.setdefault(j, {})[c] = -v
        basis = []
        for f in range(n):
            if f in red:
                continue
            vec = by_free.get(f, {})
            vec[f] = 1
            basis.append(vec)
        return basis


def rank(vecs: Iterable[Mapping[int, Scalar]]) -> int:
    return Echelon().extend(vecs).rank


def nullity(vecs: Iterable[Mapping[int, Scalar]], n: int) -> int:
    return n - rank(vecs)


def matmul(a, b):
    """Product of dense matrices given as sequences of row sequences.

    Zero entries are skipped, which makes products of permutation
    matrices linear in the dimension.
    """
    if not a or not b:
        cols = len(b[0]) if b else 0
        return tuple(tuple(0 for _ in range(cols)) for _ in a)
    cols = len(b[0])
    b_nz = [[(j, w) for j, w in enumerate(brow) if w] for brow in b]
    out = []
    for row in a:
        acc = [0] * cols
        for k, v in enumerate(row):
            if v:
                for j, w in b_nz[k]:
                    acc[j] += v * w
        out.append(tuple(acc))
    return tuple(out)


def identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def trace(a) -> Scalar:
    return sum((a[i][i] for i in range(len(a))), 0)
