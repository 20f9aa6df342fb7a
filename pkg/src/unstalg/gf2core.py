"""Bit-packed exact linear algebra over F2 and binary-digit combinatorics.

Vectors live in F2^n with bit i of a Python int representing column i.
The elimination kernel (class `Echelon`) has two interchangeable backends:
a compiled one (`_gf2core_c`, built from Cython) and a pure-Python one.
The compiled backend is picked when importable; set UNSTALG_GF2_BACKEND to
"py" or "c" to force a choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

_requested = os.environ.get("UNSTALG_GF2_BACKEND", "")
if _requested == "py":
    from . import _gf2core_py as _kernel
elif _requested == "c":
    from . import _gf2core_c as _kernel  # type: ignore[no-redef]
elif _requested == "":
    try:
        from . import _gf2core_c as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _gf2core_py as _kernel  # type: ignore[no-redef]
else:
    raise ImportError(f"unknown UNSTALG_GF2_BACKEND {_requested!r} (expected 'py' or 'c')")

Echelon = _kernel.Echelon
BACKEND = "c" if _kernel.__name__.endswith("_c") else "py"


class DegreeOverflowError(Exception):
    """A graded object was queried above its truncation degree."""


def binom_mod2(n: int, k: int) -> int:
    """C(n, k) mod 2 via Lucas: 1 iff the bits of k sit inside those of n.

    One boundary convention beyond nonnegative arguments: C(-1, 0) = 1.
    The symmetric-algebra Wu formula needs exactly this case (top square,
    l = 0 term); all other negative inputs are rejected.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n < 0:
        if n == -1 and k == 0:
            return 1
        raise ValueError(f"binom_mod2 undefined for n={n}, k={k}")
    return 1 if (n & k) == k else 0


def alpha(m: int) -> int:
    """Number of ones in the binary expansion of m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return m.bit_count()


def nu(m: int) -> int:
    """2-adic valuation: largest e with 2^e dividing m (m >= 1)."""
    if m < 1:
        raise ValueError("m must be positive")
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class GapDecomposition:
    """The unique way to write m = 2^r - sum(2^b_j) with 0 <= b_1 < ... < b_s < r-1.

    `p` and `d_word` are the derived basis labels: p = r - s and the
    multi-index (2^a_1, ..., 2^a_s) with a_j = b_j - j + 1.
    """

    r: int
    b: tuple[int, ...]

    @property
    def value(self) -> int:
        return (1 << self.r) - sum(1 << bj for bj in self.b)

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def p(self) -> int:
        return self.r - len(self.b)

    @property
    def d_word(self) -> tuple[int, ...]:
        return tuple(1 << (bj - j) for j, bj in enumerate(self.b))


def gap_decompose(m: int) -> GapDecomposition:
    """Decompose m >= 1 as 2^r minus a strictly increasing set of two-powers.

    r is forced to be the least two-power exponent with 2^r >= m whose
    complement stays below 2^(r-1); the reconstruction is re-checked before
    returning.
    """
    if m < 1:
        raise ValueError("m must be positive")
    r = (m - 1).bit_length()
    c = (1 << r) - m
    b = tuple(i for i in range(c.bit_length()) if (c >> i) & 1)
    dec = GapDecomposition(r, b)
    if dec.value != m or any(bj >= r - 1 for bj in b):
        raise AssertionError(f"gap decomposition failed for m={m}")
    return dec


@dataclass(frozen=True)
class BitVector:
    """A vector in F2^length; bit i of `bits` is coordinate i."""

    bits: int
    length: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits exceed declared length")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse "1100" with the leftmost character as coordinate 0."""
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid bit character {ch!r}")
        return cls(bits, len(s))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))


@dataclass(frozen=True)
class BitMatrix:
    """Rows of equal length over F2."""

    rows: tuple[BitVector, ...]
    ncols: int

    def __post_init__(self):
        if any(r.length != self.ncols for r in self.rows):
            raise ValueError("all rows must have the declared length")

    @classmethod
    def from_strings(cls, rows: list[str]) -> "BitMatrix":
        vecs = tuple(BitVector.from_string(r) for r in rows)
        ncols = vecs[0].length if vecs else 0
        return cls(vecs, ncols)


def row_reduce(mat: BitMatrix) -> tuple[int, BitMatrix]:
    """Rank and reduced echelon form with the same row span."""
    ech = Echelon(mat.ncols)
    for row in mat.rows:
        ech.add(row.bits)
    rows = tuple(BitVector(r, mat.ncols) for r in ech.rows())
    return ech.rank, BitMatrix(rows, mat.ncols)


def in_span(v: BitVector, mat: BitMatrix) -> bool:
    """True iff v is an F2-combination of the rows of mat."""
    if v.length != mat.ncols:
        raise ValueError("length mismatch between vector and matrix")
    ech = Echelon(mat.ncols)
    for row in mat.rows:
        ech.add(row.bits)
    return ech.contains(v.bits)


class GradedSubspace:
    """Per-degree echelon spans over an indexed basis, truncated at `bound`.

    Querying a degree above the bound raises DegreeOverflowError: above the
    truncation degree membership is unknown, not zero.
    """

    def __init__(self, bound: int, ncols_of_degree):
        self.bound = bound
        self._ncols = ncols_of_degree
        self._layers: dict[int, object] = {}

    def _layer(self, d: int):
        if d > self.bound or d < 0:
            raise DegreeOverflowError(f"degree {d} outside [0, {self.bound}]")
        layer = self._layers.get(d)
        if layer is None:
            layer = self._layers[d] = Echelon(self._ncols(d))
        return layer

    def add(self, d: int, mask: int) -> bool:
        return self._layer(d).add(mask)

    def contains(self, d: int, mask: int) -> bool:
        return self._layer(d).contains(mask)

    def reduce(self, d: int, mask: int) -> int:
        return self._layer(d).reduce(mask)

    def dim(self, d: int) -> int:
        return self._layer(d).rank

    def rows(self, d: int) -> list[int]:
        return self._layer(d).rows()

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.bound + 1)]
