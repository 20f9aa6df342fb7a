"""The symmetric algebra S = F2[w_1, w_2, ...] with its Steenrod action.

Monomials are nondecreasing tuples of positive indices ((1, 2, 2) is
w_1*w_2^2, () is 1); a polynomial is an F2-set of monomials. The action is
generated by the Wu formula on the w_m and the Cartan formula on products.

Monomial order (fixed here, frozen by golden tests): compare index tuples
reading from the largest index down, i.e. by `tuple(reversed(mono))` under
lexicographic order, a tuple that exhausts first being smaller. The
"leading monomial" of a polynomial is its minimum. Within one degree the
comparison always resolves on a differing index.
"""

from __future__ import annotations

from functools import cache

from .gf2core import binom_mod2
from .steenrod import SqWord

Monomial = tuple[int, ...]


def mono_degree(mono: Monomial) -> int:
    return sum(mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def order_key(mono: Monomial) -> tuple[int, ...]:
    return tuple(reversed(mono))


def _validate_mono(mono) -> Monomial:
    mono = tuple(mono)
    if any(i < 1 for i in mono):
        raise ValueError(f"monomial indices must be positive: {mono}")
    if any(mono[i] > mono[i + 1] for i in range(len(mono) - 1)):
        raise ValueError(f"monomial indices must be nondecreasing: {mono}")
    return mono


class SymPolynomial:
    """An F2-set of monomials; + is symmetric difference, * distributes."""

    __slots__ = ("monomials",)

    def __init__(self, monomials=()):
        self.monomials: frozenset[Monomial] = frozenset(_validate_mono(m) for m in monomials)

    @classmethod
    def _raw(cls, monos: frozenset) -> "SymPolynomial":
        p = object.__new__(cls)
        p.monomials = monos
        return p

    @classmethod
    def zero(cls) -> "SymPolynomial":
        return _ZERO

    @classmethod
    def one(cls) -> "SymPolynomial":
        return _ONE

    @classmethod
    def w(cls, m: int) -> "SymPolynomial":
        """The generator w_m; w_0 is 1."""
        if m < 0:
            raise ValueError("negative generator index")
        return _ONE if m == 0 else cls._raw(frozenset({(m,)}))

    def __add__(self, other: "SymPolynomial") -> "SymPolynomial":
        return SymPolynomial._raw(self.monomials ^ other.monomials)

    def __mul__(self, other: "SymPolynomial") -> "SymPolynomial":
        acc: set[Monomial] = set()
        for a in self.monomials:
            for b in other.monomials:
                acc ^= {mono_mul(a, b)}
        return SymPolynomial._raw(frozenset(acc))

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPolynomial) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(self.monomials)

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.monomials}) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous polynomial; None for zero."""
        degs = {mono_degree(m) for m in self.monomials}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous polynomial with degrees {sorted(degs)}")
        return degs.pop()

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.monomials, key=order_key)

    def indecomposable_part(self) -> "SymPolynomial":
        """The single-generator monomials (image in the quotient by products)."""
        return SymPolynomial._raw(frozenset(m for m in self.monomials if len(m) == 1))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SymPolynomial({format_poly(self)!r})"


_ZERO = SymPolynomial._raw(frozenset())
_ONE = SymPolynomial._raw(frozenset({()}))


def leading_monomial(p: SymPolynomial) -> Monomial:
    """Minimal monomial of a nonzero polynomial in the fixed order."""
    if not p.monomials:
        raise ValueError("zero polynomial has no leading monomial")
    return min(p.monomials, key=order_key)


# ---------------------------------------------------------------------------
# Steenrod action

@cache
def _wu_raw(j: int, m: int) -> frozenset[Monomial]:
    """Sq^j w_m as a set of monomials (zero for j > m)."""
    if j > m:
        return frozenset()
    if j == 0:
        return frozenset({(m,)})
    terms = []
    for l in range(j + 1):
        n = m - j + l - 1  # equals -1 only at the top square's l = 0 term
        if binom_mod2(n, l):
            terms.append((m + l,) if l == j else (j - l, m + l))
    return frozenset(terms)


def wu_sq(j: int, m: int) -> SymPolynomial:
    """The Wu formula: Sq^j w_m = sum_l C(m-j+l-1, l) w_{j-l} w_{m+l}."""
    if j < 0 or m < 1:
        raise ValueError("need j >= 0 and m >= 1")
    return SymPolynomial._raw(_wu_raw(j, m))


@cache
def _sq_mono(j: int, mono: Monomial) -> frozenset[Monomial]:
    """Sq^j on a monomial by the Cartan formula, splitting off the first factor."""
    if j == 0:
        return frozenset({mono})
    if not mono:
        return frozenset()
    head, tail = mono[0], mono[1:]
    acc: set[Monomial] = set()
    for t in range(min(j, head) + 1):
        head_part = _wu_raw(t, head)
        if not head_part:
            continue
        for b in _sq_mono(j - t, tail):
            for a in head_part:
                acc ^= {mono_mul(a, b)}
    return frozenset(acc)


def sq_on_poly(j: int, p: SymPolynomial) -> SymPolynomial:
    """Sq^j extended to polynomials (linear over F2)."""
    if j < 0:
        raise ValueError("negative square index")
    acc: set[Monomial] = set()
    for mono in p.monomials:
        acc ^= _sq_mono(j, mono)
    return SymPolynomial._raw(frozenset(acc))


def sq_word_on_poly(word: SqWord, p: SymPolynomial) -> SymPolynomial:
    """Apply a word letter by letter, rightmost letter first."""
    for i in reversed(word):
        p = sq_on_poly(i, p)
    return p


def sq_element_on_poly(words, p: SymPolynomial) -> SymPolynomial:
    """Apply an F2-sum of words."""
    acc = SymPolynomial.zero()
    for word in words:
        acc = acc + sq_word_on_poly(word, p)
    return acc


# ---------------------------------------------------------------------------
# Distinguished elements and relations

def t_expr(m: int) -> SymPolynomial:
    """Rebuild w_m from two-power classes and two-power squares.

    For m = 2^{n_1} + ... + 2^{n_s} (n_1 > ... > n_s) this evaluates
    (Sq^{2^{n_s}} + w_{2^{n_s}}) ... (Sq^{2^{n_2}} + w_{2^{n_2}}) w_{2^{n_1}},
    which collapses to the single monomial w_m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    bits = [i for i in range(m.bit_length()) if (m >> i) & 1]
    top = bits.pop()  # remaining bits descend below the top one
    p = SymPolynomial.w(1 << top)
    for n in reversed(bits):
        q = 1 << n
        p = sq_on_poly(q, p) + SymPolynomial.w(q) * p
    return p


def theta(k: int, i: int, cutoff: int = 1) -> SymPolynomial:
    """The degree-(2^k + 2^i) relation element, evaluated in S.

    theta(k, i) = Sq^{2^i} w_{2^k} + Sq^{2^{k-1}} Sq^{2^i} w_{2^{k-1}}
                + Sq^{2^{k-1}} (w_{2^{k-1}} w_{2^i})
                + sum_{l=0}^{2^{k-i-1}-2} w_{2^{k-1}-2^i l} w_{2^{k-1}+2^i+2^i l}

    and is zero in S for every 0 <= i <= k-2. `cutoff` > 1 deletes each
    summand containing a class w_m with m < cutoff (the truncation used in
    the connected-cover quotients); cutoff=1 keeps everything.
    """
    if k < 2 or i < 0 or i > k - 2:
        raise ValueError("need k >= 2 and 0 <= i <= k-2")
    half, small = 1 << (k - 1), 1 << i
    parts = [
        sq_on_poly(small, SymPolynomial.w(1 << k)),
        sq_word_on_poly((half, small), SymPolynomial.w(half)),
    ]
    if small >= cutoff:
        parts.append(sq_on_poly(half, SymPolynomial.w(half) * SymPolynomial.w(small)))
    for l in range((1 << (k - i - 1)) - 1):
        lo, hi = half - small * l, half + small + small * l
        if lo >= cutoff and hi >= cutoff:
            parts.append(SymPolynomial.w(lo) * SymPolynomial.w(hi))
    total = SymPolynomial.zero()
    for part in parts:
        total = total + part
    return total


def premagic_residual(j: int, r: int) -> SymPolynomial:
    """Sq^{2^{j-1}} w_{r 2^j} + w_{2^{j-1}} w_{r 2^j} + w_{2^{j-1} + r 2^j}; zero in S."""
    if j < 1 or r < 1:
        raise ValueError("need j >= 1 and r >= 1")
    half, m = 1 << (j - 1), r << j
    return (
        sq_on_poly(half, SymPolynomial.w(m))
        + SymPolynomial.w(half) * SymPolynomial.w(m)
        + SymPolynomial.w(half + m)
    )


def q_action(j: int, m: int) -> tuple[int, int]:
    """Induced action on the indecomposable quotient: Sq^j w_m = C(m-1, j) w_{m+j}."""
    if j < 0 or m < 1:
        raise ValueError("need j >= 0 and m >= 1")
    return binom_mod2(m - 1, j), m + j


# ---------------------------------------------------------------------------
# Per-degree monomial bases and packed coordinates

@cache
def degree_monomials(d: int) -> tuple[Monomial, ...]:
    """All monomials of degree d (partitions of d), sorted by the fixed order."""
    if d < 0:
        return ()
    return tuple(sorted(_partitions(d, d), key=order_key))


@cache
def _partitions(d: int, max_part: int) -> tuple[Monomial, ...]:
    if d == 0:
        return ((),)
    out = []
    for top in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - top, top):
            out.append(rest + (top,))
    return tuple(out)


@cache
def mono_index(d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(degree_monomials(d))}


def poly_to_mask(p: SymPolynomial, d: int) -> int:
    """Coordinates of a homogeneous degree-d polynomial over degree_monomials(d)."""
    idx = mono_index(d)
    mask = 0
    for mono in p.monomials:
        mask |= 1 << idx[mono]
    return mask


def mask_to_poly(mask: int, d: int) -> SymPolynomial:
    monos = degree_monomials(d)
    out = set()
    while mask:
        low = mask & -mask
        out.add(monos[low.bit_length() - 1])
        mask ^= low
    return SymPolynomial._raw(frozenset(out))


@cache
def sq_action_masks(j: int, d: int) -> tuple[int, ...]:
    """Row i = coordinates of Sq^j applied to the i-th degree-d monomial."""
    target = mono_index(d + j)
    rows = []
    for mono in degree_monomials(d):
        mask = 0
        for out in _sq_mono(j, mono):
            mask |= 1 << target[out]
        rows.append(mask)
    return tuple(rows)


@cache
def mult_action_bits(k: int, d: int) -> tuple[int, ...]:
    """Row i = coordinates of w_k times the i-th degree-d monomial."""
    target = mono_index(d + k)
    return tuple(1 << target[mono_mul(mono, (k,))] for mono in degree_monomials(d))


def apply_mask_rows(rows, mask: int) -> int:
    """XOR together rows[i] over the set bits i of mask."""
    out = 0
    while mask:
        low = mask & -mask
        out ^= rows[low.bit_length() - 1]
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Text syntax: monomial "w1*w2^2", sum "w5 + w1*w4"

class ParseError(ValueError):
    """Syntax error with the character position of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def format_poly(p: SymPolynomial) -> str:
    if not p.monomials:
        return "0"
    parts = []
    for mono in sorted(p.monomials, key=order_key, reverse=True):
        if not mono:
            parts.append("1")
            continue
        factors = []
        for idx in sorted(set(mono)):
            e = mono.count(idx)
            factors.append(f"w{idx}^{e}" if e > 1 else f"w{idx}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def parse_poly(text: str) -> SymPolynomial:
    """Inverse of format_poly; round-trips bit-exactly."""
    if text.strip() == "":
        raise ParseError("empty polynomial", 0)
    monos: set[Monomial] = set()
    pos = 0
    for chunk in text.split("+"):
        term = chunk.strip()
        start = pos + (len(chunk) - len(chunk.lstrip()))
        pos += len(chunk) + 1
        if term == "0":
            continue
        if term == "1":
            monos ^= {()}
            continue
        indices: list[int] = []
        fpos = start
        for factor in term.split("*"):
            f = factor.strip()
            if not f.startswith("w"):
                raise ParseError(f"expected generator like w3, got {f!r}", fpos)
            body = f[1:].split("^")
            try:
                idx = int(body[0])
                exp = int(body[1]) if len(body) > 1 else 1
            except (ValueError, IndexError):
                raise ParseError(f"malformed factor {f!r}", fpos) from None
            if len(body) > 2 or idx < 1 or exp < 1:
                raise ParseError(f"malformed factor {f!r}", fpos)
            indices.extend([idx] * exp)
            fpos += len(factor) + 1
        monos ^= {tuple(sorted(indices))}
    return SymPolynomial._raw(frozenset(monos))
