"""F2[y] with the binomial squaring action, and its filtration by alpha numbers.

Verifies that the cyclic quotients of free unstable modules on classes in
degrees 2^p - 1 reassemble the cohomology of infinite projective space:
per-degree ranks, the relation family Sq^{2^i} s_{2^k-1} =
Sq^{2^{k-1}} Sq^{2^i} s_{2^{k-1}-1}, and its nonredundancy.
"""

from __future__ import annotations

from .gf2core import alpha, binom_mod2
from .report import DegreeReport
from .unstable import (
    element_degree,
    free_basis_terms,
    m_module_dims,
    quotient_dims,
    saturate_submodule,
)

YElement = frozenset  # of positive exponents: {l} is y^l, set() is 0


def sq_on_y(j: int, l: int) -> YElement:
    """Sq^j y^l = C(l, j) y^{l+j}."""
    if j < 0 or l < 1:
        raise ValueError("need j >= 0 and l >= 1")
    return frozenset({l + j}) if binom_mod2(l, j) else frozenset()


def sq_on_y_element(j: int, e: YElement) -> YElement:
    out: set[int] = set()
    for l in e:
        out ^= sq_on_y(j, l)
    return frozenset(out)


def filtration_dims(p: int, bound: int) -> list[int]:
    """Indicator series of the p-th filtered quotient: alpha(degree) = p."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return [1 if alpha(d) == p else 0 for d in range(bound + 1)]


def filtered_quotient_iso_check(p: int, bound: int) -> DegreeReport:
    """The cyclic quotient on a degree-(2^p - 1) class matches the p-th
    filtered quotient of F2[y].

    (i) graded dimensions agree with the alpha indicator; (ii) the
    generator map respects relations: Sq^{2^i} y^{2^p-1} drops to a
    strictly lower filtration level for i <= p-2.
    """
    rep = DegreeReport(f"filtered-quotient-iso-p{p}")
    module = m_module_dims(p, bound)
    indicator = filtration_dims(p, bound)
    for d in range(bound + 1):
        rep.add(d, indicator[d], module[d])
    gen = (1 << p) - 1
    for i in range(p - 1):
        image = sq_on_y(1 << i, gen)
        levels = {alpha(l) for l in image}
        ok = all(level < p for level in levels)
        rep.add(gen + (1 << i), 0, 0 if ok else 1,
                witness=f"Sq^{1 << i} y^{gen} filtration {sorted(levels)}")
    return rep


# ---------------------------------------------------------------------------
# The minimal presentation of F2[y]

def presentation_generators(bound: int) -> tuple[int, ...]:
    """Generator degrees 2^k - 1 (k >= 1) within bound."""
    return tuple((1 << k) - 1 for k in range(1, bound.bit_length() + 1) if (1 << k) - 1 <= bound)


def presentation_relations(bound: int) -> dict[tuple[int, int], frozenset]:
    """Relation elements Sq^{2^i} s_{2^k-1} + Sq^{2^{k-1}} Sq^{2^i} s_{2^{k-1}-1},
    keyed by (k, i), restricted to degrees within bound."""
    gens = presentation_generators(bound)
    rels = {}
    for k in range(2, len(gens) + 1):
        hi, lo = (1 << k) - 1, (1 << (k - 1)) - 1
        for i in range(k - 1):
            deg = hi + (1 << i)
            if deg > bound:
                continue
            rels[(k, i)] = frozenset({
                (((1 << i),), hi),
                ((1 << (k - 1), 1 << i), lo),
            })
    return rels


def _relations_hold_in_y(bound: int) -> list[tuple[tuple[int, int], bool]]:
    results = []
    for (k, i), e in presentation_relations(bound).items():
        total: set[int] = set()
        for word, gen in e:
            img: YElement = frozenset({gen})
            for j in reversed(word):
                img = sq_on_y_element(j, img)
            total ^= img
        results.append(((k, i), not total))
    return results


def rp_presentation_verify(bound: int) -> DegreeReport:
    """Three-part certificate for the minimal presentation of F2[y].

    (i) every relation holds in F2[y] under s_{2^k-1} -> y^{2^k-1};
    (ii) the abstract quotient has rank exactly one in each positive
    degree; (iii) dropping any single relation strictly increases some
    dimension within bound.
    """
    rep = DegreeReport("rp-presentation")
    gens = presentation_generators(bound)
    rels = presentation_relations(bound)
    for (k, i), ok in _relations_hold_in_y(bound):
        rep.add((1 << k) - 1 + (1 << i), 0, 0 if ok else 1,
                witness=f"relation ({k},{i}) in F2[y]")
    for e in rels.values():
        element_degree(e)  # homogeneity guard
    sat = saturate_submodule(gens, rels.values(), bound)
    dims = quotient_dims(gens, sat, bound)
    for d in range(1, bound + 1):
        rep.add(d, 1, dims[d])
    for dropped in sorted(rels):
        rest = [e for key, e in rels.items() if key != dropped]
        other = quotient_dims(gens, saturate_submodule(gens, rest, bound), bound)
        grew = any(other[d] > dims[d] for d in range(bound + 1))
        shrank = any(other[d] < dims[d] for d in range(bound + 1))
        rep.add((1 << dropped[0]) - 1 + (1 << dropped[1]), 0,
                0 if grew and not shrank else 1,
                witness=f"dropping relation {dropped} frees the quotient")
    rep.notes.append(f"generators in degrees {list(gens)}")
    return rep


def suspension_link_check(bound: int) -> DegreeReport:
    """The squaring coefficients on the indecomposables of S and on F2[y]
    agree under the degree-one shift: both are C(m-1, j)."""
    from .symalg import q_action

    rep = DegreeReport("suspension-link")
    for m in range(2, bound + 1):
        mismatches = 0
        for j in range(bound - m + 1):
            coeff, _ = q_action(j, m)
            y_side = 1 if sq_on_y(j, m - 1) else 0
            if coeff != y_side:
                mismatches += 1
        rep.add(m, 0, mismatches)
    return rep
