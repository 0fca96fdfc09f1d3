"""The Taylor complex of a monomial ideal, with its standard multiplication.

Basis elements e_U are indexed by subsets U of the ordered generators
u_0 < u_1 < ... (indices refer to positions in the chosen order), listed in
each homological degree |U| by lexicographic index order.  Labels carry the
multidegree m_U = lcm(u_i : i in U).

Differential (sign sigma(u, U) = #{v in U : v < u}):

    d(e_U) = sum_{u in U} (-1)^{sigma(u,U)} (m_U / m_{U-u}) e_{U-u}

Multiplication (zero when the index sets meet; sigma(V, W) counts the pairs
(v, w) in V x W with v > w):

    e_V e_W = (-1)^{sigma(V,W)} (m_V m_W / m_{V union W}) e_{V union W}

This product is unital, associative, graded commutative, and satisfies the
Leibniz rule, so the Taylor complex is always a dg algebra (Gemeda 1976).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .complexes import BasisLabel, LabeledFreeComplex, VecT
from .poly import (
    Monomial,
    MonomialIdeal,
    PolyError,
    Polynomial,
    lcm_of,
    monomial_divide,
)

MAX_GENERATORS = 63  # subsets fit in an int bitmask


def taylor_label(ideal: MonomialIdeal, indices: Sequence[int]) -> BasisLabel:
    idx = tuple(sorted(indices))
    m = lcm_of((ideal.generators[i] for i in idx), ideal.ring)
    return BasisLabel(("e",) + idx, m)


def taylor_resolution(
    ideal: MonomialIdeal, order: Sequence[int] | Sequence[str] | None = None
) -> LabeledFreeComplex:
    """Taylor complex of Q/I with generators taken in `order` (a permutation
    of the given generator list; default: given order)."""
    if order is not None:
        ideal = ideal.reorder(order)
    t = len(ideal.generators)
    if t > MAX_GENERATORS:
        raise PolyError(f"too many generators for the Taylor complex ({t} > {MAX_GENERATORS})")
    if not ideal.is_minimal_system():
        raise PolyError("generators are not a minimal system; minimalize first")
    ring = ideal.ring
    basis: dict[int, list[BasisLabel]] = {}
    by_idx: dict[tuple[int, ...], BasisLabel] = {}
    for size in range(t + 1):
        row = []
        for idx in combinations(range(t), size):
            l = taylor_label(ideal, idx)
            by_idx[idx] = l
            row.append(l)
        basis[size] = row
    diff: dict[int, dict[BasisLabel, VecT]] = {}
    for size in range(1, t + 1):
        cols: dict[BasisLabel, VecT] = {}
        for idx in combinations(range(t), size):
            lab = by_idx[idx]
            col: VecT = {}
            for pos, u in enumerate(idx):
                rest = idx[:pos] + idx[pos + 1 :]
                sub = by_idx[rest]
                coeff = monomial_divide(lab.multidegree, sub.multidegree)
                sign = Fraction(-1) ** pos  # sigma(u, U) = #{v in U : v < u}
                col[sub] = Polynomial.monomial(coeff, sign)
            cols[lab] = col
        diff[size] = cols
    return LabeledFreeComplex(ring, basis, diff, name=f"Taylor{ideal}")


def taylor_sign(V: Sequence[int], W: Sequence[int]) -> int:
    """(-1)^sigma with sigma(V, W) = #{(v, w) in V x W : v > w}."""
    sigma = sum(1 for v in V for w in W if v > w)
    return -1 if sigma % 2 else 1


def taylor_product_label(
    ideal: MonomialIdeal, V: Sequence[int], W: Sequence[int]
) -> tuple[Fraction, Monomial, tuple[int, ...]] | None:
    """e_V e_W as (coefficient sign, monomial coefficient, union indices);
    None when V and W intersect (the product is zero)."""
    sv, sw = set(V), set(W)
    if sv & sw:
        return None
    union = tuple(sorted(sv | sw))
    mv = lcm_of((ideal.generators[i] for i in V), ideal.ring)
    mw = lcm_of((ideal.generators[i] for i in W), ideal.ring)
    mu = lcm_of((ideal.generators[i] for i in union), ideal.ring)
    coeff = monomial_divide(mv * mw, mu)
    return Fraction(taylor_sign(V, W)), coeff, union


def taylor_product(
    ideal: MonomialIdeal, T: LabeledFreeComplex, a: BasisLabel, b: BasisLabel
) -> VecT:
    """Product of two Taylor basis labels inside the complex T."""
    V = a.tag[1:]
    W = b.tag[1:]
    res = taylor_product_label(ideal, V, W)
    if res is None:
        return {}
    sign, coeff, union = res
    lab = T.find_label(("e",) + union, degree=len(union))
    return {lab: Polynomial.monomial(coeff, sign)}


def taylor_dg_structure(
    ideal: MonomialIdeal,
    T: LabeledFreeComplex | None = None,
    order: Sequence[int] | Sequence[str] | None = None,
):
    """The Taylor complex as a dg algebra (complex + multiplication)."""
    from .dg import DGStructure, Element

    if order is not None:
        ideal = ideal.reorder(order)
    if T is None:
        T = taylor_resolution(ideal)

    def product(a: BasisLabel, b: BasisLabel):
        deg = (len(a.tag) - 1) + (len(b.tag) - 1)
        return Element(T, deg, taylor_product(ideal, T, a, b))

    return DGStructure(T, product, name=f"Taylor{ideal}")
