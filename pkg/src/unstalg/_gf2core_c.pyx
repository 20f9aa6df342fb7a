# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled GF(2) elimination kernel.

Drop-in replacement for `unstalg._gf2core_py`: same Echelon interface,
rows held in a packed uint64 buffer so the reduce/insert XOR loops run
without interpreter overhead. Selected at import by `unstalg.gf2core`.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy, memmove, memset

ctypedef unsigned long long u64


cdef class Echelon:
    """Reduced-row-echelon basis of a subspace of F2^ncols (packed rows)."""

    cdef readonly Py_ssize_t ncols
    cdef Py_ssize_t nwords
    cdef Py_ssize_t nrows
    cdef Py_ssize_t cap
    cdef u64 *buf          # cap * nwords, rows sorted by pivot descending
    cdef Py_ssize_t *pivs  # pivot bit per row
    cdef u64 *scr          # scratch row

    def __cinit__(self, ncols):
        if ncols < 0:
            raise ValueError("ncols must be nonnegative")
        self.ncols = ncols
        self.nwords = (ncols + 63) >> 6
        if self.nwords == 0:
            self.nwords = 1
        self.nrows = 0
        self.cap = 16
        self.buf = <u64 *> malloc(self.cap * self.nwords * sizeof(u64))
        self.pivs = <Py_ssize_t *> malloc(self.cap * sizeof(Py_ssize_t))
        self.scr = <u64 *> malloc(self.nwords * sizeof(u64))
        if self.buf == NULL or self.pivs == NULL or self.scr == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.buf)
        free(self.pivs)
        free(self.scr)

    @property
    def rank(self):
        return self.nrows

    cdef void _grow(self):
        self.cap *= 2
        self.buf = <u64 *> realloc(self.buf, self.cap * self.nwords * sizeof(u64))
        self.pivs = <Py_ssize_t *> realloc(self.pivs, self.cap * sizeof(Py_ssize_t))
        if self.buf == NULL or self.pivs == NULL:
            raise MemoryError()

    cdef void _load(self, object v) except *:
        """Python int -> scratch row (little-endian words)."""
        cdef bytes b = v.to_bytes(self.nwords * 8, "little")
        cdef const unsigned char *p = b
        cdef Py_ssize_t w, k
        cdef u64 word
        for w in range(self.nwords):
            word = 0
            for k in range(8):
                word |= (<u64> p[8 * w + k]) << (8 * k)
            self.scr[w] = word

    cdef object _store(self):
        """Scratch row -> Python int."""
        cdef bytearray ba = bytearray(self.nwords * 8)
        cdef Py_ssize_t w, k
        cdef u64 word
        for w in range(self.nwords):
            word = self.scr[w]
            for k in range(8):
                ba[8 * w + k] = <unsigned char> ((word >> (8 * k)) & 0xFF)
        return int.from_bytes(bytes(ba), "little")

    cdef Py_ssize_t _top_bit(self) nogil:
        """Highest set bit of scratch, or -1."""
        cdef Py_ssize_t w, n
        cdef u64 word
        for w in range(self.nwords - 1, -1, -1):
            word = self.scr[w]
            if word:
                n = 0
                while word:
                    word >>= 1
                    n += 1
                return 64 * w + n - 1
        return -1

    cdef void _reduce_scratch(self) nogil:
        """Clear every pivot bit of scratch (rows are pivot-descending)."""
        cdef Py_ssize_t i, w, p
        cdef u64 *row
        for i in range(self.nrows):
            p = self.pivs[i]
            if (self.scr[p >> 6] >> (p & 63)) & 1:
                row = self.buf + i * self.nwords
                for w in range(self.nwords):
                    self.scr[w] ^= row[w]

    cdef void _check(self, object v) except *:
        if v < 0 or (v >> self.ncols) != 0:
            raise ValueError("vector does not fit in ncols columns")

    def reduce(self, v):
        """Canonical residue of v modulo the current span."""
        self._check(v)
        self._load(v)
        self._reduce_scratch()
        return self._store()

    def contains(self, v):
        self._check(v)
        self._load(v)
        self._reduce_scratch()
        cdef Py_ssize_t w
        for w in range(self.nwords):
            if self.scr[w]:
                return False
        return True

    def add(self, v):
        """Insert v; returns True iff the rank grew."""
        self._check(v)
        self._load(v)
        self._reduce_scratch()
        cdef Py_ssize_t p = self._top_bit()
        if p < 0:
            return False
        if self.nrows == self.cap:
            self._grow()
        # back-substitute the new row into stored rows carrying bit p
        cdef Py_ssize_t i, w, pos
        cdef u64 *row
        cdef u64 mask = (<u64> 1) << (p & 63)
        cdef Py_ssize_t pw = p >> 6
        for i in range(self.nrows):
            row = self.buf + i * self.nwords
            if row[pw] & mask:
                for w in range(self.nwords):
                    row[w] ^= self.scr[w]
        # insert keeping pivots descending
        pos = 0
        while pos < self.nrows and self.pivs[pos] > p:
            pos += 1
        if pos < self.nrows:
            memmove(self.buf + (pos + 1) * self.nwords, self.buf + pos * self.nwords,
                    (self.nrows - pos) * self.nwords * sizeof(u64))
            memmove(self.pivs + pos + 1, self.pivs + pos,
                    (self.nrows - pos) * sizeof(Py_ssize_t))
        memcpy(self.buf + pos * self.nwords, self.scr, self.nwords * sizeof(u64))
        self.pivs[pos] = p
        self.nrows += 1
        return True

    def rows(self):
        """Basis rows in pivot-descending order."""
        cdef list out = []
        cdef Py_ssize_t i
        for i in range(self.nrows):
            memcpy(self.scr, self.buf + i * self.nwords, self.nwords * sizeof(u64))
            out.append(self._store())
        return out

    def pivots(self):
        cdef list out = []
        cdef Py_ssize_t i
        for i in range(self.nrows):
            out.append(self.pivs[i])
        return out
