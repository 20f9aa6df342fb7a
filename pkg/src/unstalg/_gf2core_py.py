"""Pure-Python GF(2) elimination kernel.

Rows are Python ints used as bitsets (bit i = column i). This backend is
always available; `unstalg._gf2core_c` is the compiled drop-in replacement.
"""

from __future__ import annotations


class Echelon:
    """Growing reduced-row-echelon basis of a subspace of F2^ncols.

    Pivots are highest set bits. Rows are kept fully reduced against each
    other, so `rows()` is the canonical basis of the span: two Echelons
    describe the same subspace iff their rows agree.
    """

    __slots__ = ("ncols", "_rows")

    def __init__(self, ncols: int):
        if ncols < 0:
            raise ValueError("ncols must be nonnegative")
        self.ncols = ncols
        self._rows: dict[int, int] = {}  # pivot bit -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: int) -> int:
        """Canonical residue of v modulo the current span."""
        if v < 0 or v >> self.ncols:
            raise ValueError("vector does not fit in ncols columns")
        rows = self._rows
        rest = v
        while rest:
            p = rest.bit_length() - 1
            row = rows.get(p)
            if row is not None:
                v ^= row
                rest = v & ((1 << p) - 1)
            else:
                rest &= (1 << p) - 1
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def add(self, v: int) -> bool:
        """Insert v; returns True iff the rank grew."""
        v = self.reduce(v)
        if v == 0:
            return False
        p = v.bit_length() - 1
        rows = self._rows
        # back-substitute to keep stored rows reduced
        for q, row in rows.items():
            if (row >> p) & 1:
                rows[q] = row ^ v
        rows[p] = v
        return True

    def rows(self) -> list[int]:
        """Basis rows in pivot-descending order."""
        return [self._rows[p] for p in sorted(self._rows, reverse=True)]

    def pivots(self) -> list[int]:
        return sorted(self._rows, reverse=True)
