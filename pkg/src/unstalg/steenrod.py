"""Words in the mod-2 Steenrod operations Sq^i and their Adem normal form.

A word is a tuple of positive ints (i_1, ..., i_k), composing right to
left: Sq^{i_1} is applied last. The empty tuple is the identity. An F2-sum
of words is a frozenset (mod-2 cancellation = symmetric difference).
"""

from __future__ import annotations

from functools import cache

from .gf2core import binom_mod2

SqWord = tuple[int, ...]


def word_degree(word: SqWord) -> int:
    return sum(word)


def excess(word: SqWord) -> int:
    """i_1 - (i_2 + ... + i_k); zero for the identity word."""
    if not word:
        return 0
    return word[0] - sum(word[1:])


def is_admissible(word: SqWord) -> bool:
    """True iff i_j >= 2*i_{j+1} for every adjacent pair."""
    return all(word[i] >= 2 * word[i + 1] for i in range(len(word) - 1))


@cache
def adem_pair(a: int, b: int) -> frozenset[SqWord]:
    """Adem expansion of the inadmissible pair Sq^a Sq^b (a < 2b).

    Sq^a Sq^b = sum_c C(b-1-c, a-2c) Sq^{a+b-c} Sq^c, the c = 0 term being
    the single letter Sq^{a+b}.
    """
    if a >= 2 * b:
        raise ValueError(f"pair ({a},{b}) is already admissible")
    words = set()
    for c in range(a // 2 + 1):
        if binom_mod2(b - 1 - c, a - 2 * c):
            words.add((a + b - c, c) if c else (a + b,))
    return frozenset(words)


def _first_inadmissible(word: SqWord) -> int:
    for i in range(len(word) - 1):
        if word[i] < 2 * word[i + 1]:
            return i
    return -1


def adem_reduce(words) -> frozenset[SqWord]:
    """Rewrite an F2-sum of words into admissible form.

    Accepts any iterable of words (a single word must be wrapped, e.g.
    [word]). Repeatedly replaces the leftmost inadmissible adjacent pair
    via `adem_pair`, cancelling mod 2 as it goes; the result is the unique
    admissible normal form of the element.
    """
    result: set[SqWord] = set()
    pending: set[SqWord] = set()
    for w in words:
        pending ^= {tuple(w)}
    while pending:
        w = pending.pop()
        i = _first_inadmissible(w)
        if i < 0:
            result ^= {w}
            continue
        head, tail = w[:i], w[i + 2:]
        for rep in adem_pair(w[i], w[i + 1]):
            pending ^= {head + rep + tail}
    return frozenset(result)


@cache
def _admissible_words(degree: int, max_first: int) -> tuple[SqWord, ...]:
    if degree == 0:
        return ((),)
    out = []
    for i1 in range(min(degree, max_first), 0, -1):
        for tail in _admissible_words(degree - i1, i1 // 2):
            out.append((i1,) + tail)
    return tuple(out)


def admissible_basis(total_degree: int, excess_max: int, strict: bool = False) -> tuple[SqWord, ...]:
    """All admissible words of the given degree with bounded excess.

    strict=False keeps excess <= excess_max (the free unstable module
    convention), strict=True keeps excess < excess_max (the indecomposable
    filtration convention). Sorted for deterministic iteration.
    """
    if total_degree < 0:
        return ()
    words = _admissible_words(total_degree, total_degree)
    if strict:
        words = tuple(w for w in words if excess(w) < excess_max)
    else:
        words = tuple(w for w in words if excess(w) <= excess_max)
    return tuple(sorted(words))


def format_sq_word(word: SqWord) -> str:
    """Render as printed: "Sq^4 Sq^2 Sq^1"; the identity is "Sq^0"."""
    if not word:
        return "Sq^0"
    return " ".join(f"Sq^{i}" for i in word)


def parse_sq_word(text: str) -> SqWord:
    """Parse whitespace-separated "Sq^i" tokens (left-to-right composition).

    "Sq^0" letters are the identity and are dropped.
    """
    letters = []
    for tok in text.split():
        if not tok.startswith("Sq^"):
            raise ValueError(f"expected Sq^<int>, got {tok!r}")
        try:
            i = int(tok[3:])
        except ValueError:
            raise ValueError(f"expected Sq^<int>, got {tok!r}") from None
        if i < 0:
            raise ValueError(f"negative square index in {tok!r}")
        if i > 0:
            letters.append(i)
    return tuple(letters)
