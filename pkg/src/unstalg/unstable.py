"""Free unstable modules, their maps into S, and saturated submodule quotients.

A free module on generators of distinct degrees (a generator is named by
its degree) has basis {Sq^I gen_m : I admissible, excess(I) <= m}; an
element is a frozenset of (word, m) terms. Composing a square with a basis
word Adem-reduces and then discards admissible words of excess > m, which
vanish by instability.

Saturation closes a set of homogeneous elements under the left Steenrod
action degree by degree, applying only two-power squares: these generate
the whole algebra, and every composite factors through intermediate
degrees that are themselves in the closed set.
"""

from __future__ import annotations

from functools import cache

from .gf2core import GradedSubspace, alpha, gap_decompose
from .kam import DWord, d_word_as_sq_word, d_word_degree
from .report import DegreeReport
from .steenrod import SqWord, adem_reduce, admissible_basis, excess
from .symalg import SymPolynomial, poly_to_mask, sq_word_on_poly
from . import symalg

FreeTerm = tuple[SqWord, int]
FreeElement = frozenset  # of FreeTerm


def two_powers_upto(n: int) -> list[int]:
    return [1 << i for i in range((n).bit_length())] if n >= 1 else []


def _norm_gens(gens) -> tuple[int, ...]:
    if isinstance(gens, int):
        gens = (gens,)
    out = tuple(sorted(gens))
    if len(set(out)) != len(out) or any(m < 1 for m in out):
        raise ValueError("generator degrees must be distinct positive ints")
    return out


def free_basis_words(m: int, d: int) -> tuple[SqWord, ...]:
    """Admissible words giving the degree-d basis of the free module on gen_m."""
    if d < m:
        return ()
    return admissible_basis(d - m, m, strict=False)


def free_basis(m: int, d: int) -> tuple[FreeElement, ...]:
    return tuple(frozenset({(w, m)}) for w in free_basis_words(m, d))


@cache
def free_basis_terms(gens: tuple[int, ...], d: int) -> tuple[FreeTerm, ...]:
    return tuple((w, m) for m in gens for w in free_basis_words(m, d))


@cache
def _term_index(gens: tuple[int, ...], d: int) -> dict[FreeTerm, int]:
    return {t: i for i, t in enumerate(free_basis_terms(gens, d))}


def element_degree(e: FreeElement) -> int:
    degs = {m + sum(w) for (w, m) in e}
    if len(degs) != 1:
        raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def module_reduce(words, m: int) -> frozenset[SqWord]:
    """Adem normal form of an F2-sum of words acting on gen_m."""
    return frozenset(w for w in adem_reduce(words) if excess(w) <= m)


def sq_on_element(j: int, e: FreeElement) -> FreeElement:
    acc: set[FreeTerm] = set()
    for word, m in e:
        acc ^= {(w, m) for w in module_reduce([(j,) + word], m)}
    return frozenset(acc)


def element_to_mask(e: FreeElement, gens: tuple[int, ...], d: int) -> int:
    idx = _term_index(gens, d)
    mask = 0
    for term in e:
        mask |= 1 << idx[term]
    return mask


def mask_to_element(mask: int, gens: tuple[int, ...], d: int) -> FreeElement:
    terms = free_basis_terms(gens, d)
    out = set()
    while mask:
        low = mask & -mask
        out.add(terms[low.bit_length() - 1])
        mask ^= low
    return frozenset(out)


def map_to_S(e: FreeElement) -> SymPolynomial:
    """Send gen_m to w_m and act through the symmetric algebra."""
    total = SymPolynomial.zero()
    for word, m in e:
        total = total + sq_word_on_poly(word, SymPolynomial.w(m))
    return total


@cache
def _free_sq_masks(gens: tuple[int, ...], j: int, d: int) -> tuple[int, ...]:
    """Coordinates of Sq^j applied to each degree-d basis term."""
    idx = _term_index(gens, d + j)
    rows = []
    for word, m in free_basis_terms(gens, d):
        mask = 0
        for w in module_reduce([(j,) + word], m):
            mask |= 1 << idx[(w, m)]
        rows.append(mask)
    return tuple(rows)


def saturate_submodule(gens, rel_gens, bound: int) -> GradedSubspace:
    """Smallest graded subspace containing rel_gens closed under all Sq^j, j >= 1.

    Built degree by degree: the layer in degree d is spanned by the
    relation generators of that degree together with two-power squares
    applied to a basis of every lower layer.
    """
    gens = _norm_gens(gens)
    sub = GradedSubspace(bound, lambda d: len(free_basis_terms(gens, d)))
    by_degree: dict[int, list[FreeElement]] = {}
    for e in rel_gens:
        d = element_degree(e)
        if d <= bound:
            by_degree.setdefault(d, []).append(e)
    for d in range(bound + 1):
        for e in by_degree.get(d, ()):
            sub.add(d, element_to_mask(e, gens, d))
        for j in two_powers_upto(d):
            src = d - j
            if not free_basis_terms(gens, src):
                continue
            rows = _free_sq_masks(gens, j, src)
            for v in sub.rows(src):
                sub.add(d, symalg.apply_mask_rows(rows, v))
    return sub


def quotient_dims(gens, sat: GradedSubspace, bound: int) -> list[int]:
    gens = _norm_gens(gens)
    return [len(free_basis_terms(gens, d)) - sat.dim(d) for d in range(bound + 1)]


def quotient_representatives(gens, sat: GradedSubspace, d: int) -> list[FreeElement]:
    """Greedy coset basis: basis terms independent of the saturated layer."""
    gens = _norm_gens(gens)
    from .gf2core import Echelon

    ech = Echelon(len(free_basis_terms(gens, d)))
    for row in sat.rows(d):
        ech.add(row)
    reps = []
    for i, term in enumerate(free_basis_terms(gens, d)):
        if ech.add(1 << i):
            reps.append(frozenset({term}))
    return reps


# ---------------------------------------------------------------------------
# The cyclic quotients M(p,1) and M(n,0)

def m_relations(p: int) -> list[FreeElement]:
    """Sq^{2^i} gen for i <= p-2 on the degree-(2^p - 1) generator."""
    gen = (1 << p) - 1
    return [frozenset({((1 << i,), gen)}) for i in range(p - 1)]


def m_module_dims(p: int, bound: int) -> list[int]:
    """Graded dimensions of F(2^p - 1) / A{Sq^{2^i} : i <= p-2}.

    The rank theorem says this is 1 exactly in degrees with alpha number p.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    gen = (1 << p) - 1
    if gen > bound:
        raise ValueError(f"generator degree {gen} exceeds bound {bound}")
    sat = saturate_submodule(gen, m_relations(p), bound)
    return quotient_dims(gen, sat, bound)


def m0_relations(n: int) -> list[FreeElement]:
    return [frozenset({((1 << i,), 1 << n)}) for i in range(n - 1)]


def m0_module_dims(n: int, bound: int) -> list[int]:
    """Graded dimensions of F(2^n) / A{Sq^{2^i} : i <= n-2}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = 1 << n
    if gen > bound:
        raise ValueError(f"generator degree {gen} exceeds bound {bound}")
    sat = saturate_submodule(gen, m0_relations(n), bound)
    return quotient_dims(gen, sat, bound)


def alpha_multi_indices(p: int, bound: int) -> list[DWord]:
    """Nondecreasing D-words with entries 2^k - 1 (k < p) on gen 2^p - 1,
    every fold degree staying within bound. Includes the empty word."""
    gen = (1 << p) - 1
    entries = [(1 << k) - 1 for k in range(p)]
    out: list[DWord] = []

    def rec(applied: list[int], deg: int, max_entry: int):
        out.append(tuple(reversed(applied)))
        for a in entries:
            if a > max_entry:
                continue
            nd = 2 * deg - a
            if nd <= bound:
                applied.append(a)
                rec(applied, nd, a)
                applied.pop()

    rec([], gen, entries[-1] if entries else -1)
    return out


def m_basis_check(p: int, bound: int) -> DegreeReport:
    """Check the D-multi-index family realizes exactly the alpha(d) = p degrees.

    Each index is applied rightmost letter first (through the Sq
    conversion), reduced in the free module, and tested against the
    saturated relation submodule: its class must be nonzero, and each
    qualifying degree must be hit exactly once.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    gen = (1 << p) - 1
    sat = saturate_submodule(gen, m_relations(p), bound)
    hits: dict[int, int] = {d: 0 for d in range(bound + 1)}
    dead = []
    for J in alpha_multi_indices(p, bound):
        d = d_word_degree(J, gen)
        word = d_word_as_sq_word(J, gen)
        terms = frozenset((w, gen) for w in module_reduce([word], gen))
        if terms and not sat.contains(d, element_to_mask(terms, (gen,), d)):
            hits[d] += 1
        else:
            dead.append(J)
    rep = DegreeReport(f"m({p},1)-basis-degrees")
    rep.notes.append("D-words applied rightmost letter first")
    if dead:
        rep.notes.append(f"indices with zero class: {dead}")
    for d in range(bound + 1):
        rep.add(d, 1 if alpha(d) == p else 0, hits[d])
    return rep


def qg_basis_for_degree(m: int) -> tuple[int, DWord]:
    """The unique indecomposable basis label (p, I) in degree m.

    Derived from the gap decomposition m = 2^r - sum 2^{b_j}: p = r - s and
    I = (2^{a_1}, ..., 2^{a_s}) with a_j = b_j - j + 1; the label satisfies
    d_word_degree(I, 2^p) = m with nondecreasing entries below 2^p.
    """
    dec = gap_decompose(m)
    p, word = dec.p, dec.d_word
    if d_word_degree(word, 1 << p) != m:
        raise AssertionError(f"basis label degree mismatch for m={m}")
    if any(word[i] > word[i + 1] for i in range(len(word) - 1)) or (
        word and word[-1] >= 1 << p
    ):
        raise AssertionError(f"basis label constraint violated for m={m}")
    return p, word


def verify_injectivity(bound: int, gens) -> DegreeReport:
    """Joint rank check: the images of all free-module basis elements stay
    linearly independent in S, degree by degree."""
    gens = _norm_gens(gens)
    from .gf2core import Echelon

    rep = DegreeReport(f"free-injectivity-gens-{','.join(map(str, gens))}")
    for d in range(1, bound + 1):
        terms = free_basis_terms(gens, d)
        ech = Echelon(len(symalg.degree_monomials(d)))
        for term in terms:
            ech.add(poly_to_mask(map_to_S(frozenset({term})), d))
        rep.add(d, len(terms), ech.rank)
    return rep
