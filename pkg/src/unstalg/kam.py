"""D-operations realized through the degree conversion D_j x_l = Sq^{l-j} x_l.

A D-word J = (j_1, ..., j_s) applies its rightmost letter first, so the
equivalent Sq-word depends only on the degree of the homogeneous argument.
D-words are never rewritten against each other; they are only applied.
"""

from __future__ import annotations

from .steenrod import SqWord
from .symalg import Monomial, SymPolynomial, sq_on_poly, sq_word_on_poly

DWord = tuple[int, ...]


def d_word_degree(J: DWord, l: int) -> int:
    """Fold d -> 2d - j over the word, rightmost letter first, starting at l."""
    d = l
    for j in reversed(J):
        d = 2 * d - j
    return d


def d_word_as_sq_word(J: DWord, l: int) -> SqWord | None:
    """The Sq-word acting as D_J on homogeneous elements of degree l.

    Returns None when some letter annihilates (j exceeds the current
    degree); letters converting to Sq^0 are dropped.
    """
    letters: list[int] = []
    d = l
    for j in reversed(J):
        if j < 0:
            raise ValueError("D-word letters must be nonnegative")
        a = d - j
        if a < 0:
            return None
        if a > 0:
            letters.append(a)
        d = 2 * d - j
    return tuple(reversed(letters))


def d_apply(j: int, x: SymPolynomial) -> SymPolynomial:
    """D_j on a homogeneous polynomial: Sq^{l-j} x for degree l, zero for j > l."""
    if not x:
        return x
    l = x.degree()  # raises on inhomogeneous input
    if j > l:
        return SymPolynomial.zero()
    return sq_on_poly(l - j, x)


def d_word_apply(J: DWord, x: SymPolynomial) -> SymPolynomial:
    """Iterated D-application, rightmost letter first."""
    if not x:
        return x
    word = d_word_as_sq_word(J, x.degree())
    if word is None:
        return SymPolynomial.zero()
    return sq_word_on_poly(word, x)


def k_cartan_residual(i: int, x: SymPolynomial, y: SymPolynomial) -> SymPolynomial:
    """D_i(xy) + sum_t D_t(x) D_{i-t}(y); zero by the coproduct formula."""
    total = d_apply(i, x * y)
    for t in range(i + 1):
        total = total + d_apply(t, x) * d_apply(i - t, y)
    return total


def leading_term_expected(J: DWord, m: int) -> Monomial:
    """Predicted leading monomial of D_J w_m for a basis-shaped word.

    For J = (j_1 <= ... <= j_s), all j_s < m, this is
    w_{m-j_s}^{2^{s-1}} w_{m-j_{s-1}}^{2^{s-2}} ... w_{m-j_1} w_m.
    """
    if any(J[t] > J[t + 1] for t in range(len(J) - 1)):
        raise ValueError(f"D-word must be nondecreasing: {J}")
    if J and not 0 <= J[0] <= J[-1] < m:
        raise ValueError(f"D-word letters must lie in [0, {m - 1}]: {J}")
    factors = [m]
    for t, j in enumerate(J):  # 1-indexed j_t carries multiplicity 2^{t-1}
        factors.extend([m - j] * (1 << t))
    return tuple(sorted(factors))


def format_d_word(J: DWord) -> str:
    if not J:
        return "1"
    return " ".join(f"D_{j}" for j in J)


def parse_d_word(text: str) -> DWord:
    """Parse whitespace-separated "D_j" tokens."""
    letters = []
    for tok in text.split():
        if not tok.startswith("D_"):
            raise ValueError(f"expected D_<int>, got {tok!r}")
        try:
            j = int(tok[2:])
        except ValueError:
            raise ValueError(f"expected D_<int>, got {tok!r}") from None
        if j < 0:
            raise ValueError(f"negative D index in {tok!r}")
        letters.append(j)
    return tuple(letters)
