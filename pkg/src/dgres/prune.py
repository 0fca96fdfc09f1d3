"""Pruning of free complexes (Boocher 2012) and dg descent along pruning.

Given a complex of free Q-modules with chosen bases (differentials as
matrices A_i) and a set Z of variables, the pruning P(F, Z) over Q/(Z) is
computed by one pass i = 1..top:

  (a) set the variables in Z to zero inside A_i; let U index the columns
      of A_i that became identically zero;
  (b) delete the rows of A_{i+1}, the basis elements of F_i, and the
      columns of A_i indexed by U.

The intermediate stages need not be complexes; the result is, and for the
minimal free resolution of a monomial ideal it is the minimal free
resolution of the pruned ideal over the smaller ring (Boocher 2012,
Thm 2.3).

For a squarefree monomial ideal whose minimal resolution F carries a dg
algebra structure presented as a Taylor quotient T/J (J spanned by the
two-term subcomplexes Q e_V -> Q d(e_V) over the sources of a Morse
matching), the dg structure descends to P(F, Z): the span

    I_Z = < e_V, d(e_V) : V contains a generator divisible by some z in Z >

is a dg ideal of T, its image under T ->> T/J = F is a dg ideal of F, and
F / im(I_Z) tensored down to Q/(Z) is P(F, Z).  `prune_dg` carries out the
whole pipeline with machine checks at each stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    BasisLabel,
    ComplexReport,
    LabeledFreeComplex,
    VecT,
    complexes_equal,
    tag_to_json,
)
from .dg import (
    Element,
    QuotientDG,
    SpanGenerator,
    SubmoduleSpan,
    dg_ideal_closure,
    quotient_dg,
    span_from_matching_sources,
)
from .morse import lyubeznik_matching, lyubeznik_resolution, matching_sources
from .poly import Monomial, MonomialIdeal, Polynomial
from .taylor import taylor_dg_structure


def prune_ideal(ideal: MonomialIdeal, znames) -> MonomialIdeal:
    """I' = I/(Z) over Q/(Z): drop generators divisible by a Z-variable."""
    znames = tuple(znames)
    ring2 = ideal.ring.deactivate(znames)
    idx = [ideal.ring.index(n) for n in znames]
    gens = tuple(
        Monomial(ring2, g.exponents)
        for g in ideal.generators
        if not any(g.exponents[i] for i in idx)
    )
    return MonomialIdeal(ring2, gens)


@dataclass
class PruneStage:
    """Snapshot of one loop iteration: A_i after substitution and column
    deletion, the deleted degree-i basis tags, and A_{i+1} after the row
    deletion (entries of A_{i+1} not yet substituted)."""

    degree: int
    deleted: list
    matrix: list[list[str]]
    next_matrix: list[list[str]]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "deleted": self.deleted,
            "matrix": self.matrix,
            "next_matrix": self.next_matrix,
        }


@dataclass
class PruneResult:
    original: LabeledFreeComplex
    pruned: LabeledFreeComplex
    stages: list[PruneStage]
    report: ComplexReport

    def to_json(self) -> dict:
        return {
            "stages": [s.to_json() for s in self.stages],
            "pruned": self.pruned.to_json(),
            "report": self.report.to_json(),
        }


def prune_complex(F: LabeledFreeComplex, znames) -> PruneResult:
    """Boocher's pruning loop, with a per-stage trace.

    Surviving labels keep their tags; their multidegrees get the
    Z-exponents stripped so the result is multigraded over Q/(Z).
    """
    znames = tuple(znames)
    bases: dict[int, list[BasisLabel]] = {i: list(F.labels(i)) for i in F.degrees()}
    diffs: dict[int, dict[BasisLabel, VecT]] = {
        i: {c: dict(col) for c, col in F.diff.get(i, {}).items()}
        for i in F.degrees()
        if i >= 1
    }
    zero = Polynomial.zero(F.ring)

    def grid(rows, cols, mat) -> list[list[str]]:
        return [[str(mat.get(c, {}).get(r, zero)) for c in cols] for r in rows]

    stages: list[PruneStage] = []
    for i in range(1, F.top_degree() + 1):
        cols = diffs.get(i, {})
        for c in list(cols):
            newcol: VecT = {}
            for r, p in cols[c].items():
                q = p.substitute_zero(znames)
                if not q.is_zero():
                    newcol[r] = q
            cols[c] = newcol
        dead = [c for c in bases.get(i, []) if not cols.get(c)]
        deadset = set(dead)
        bases[i] = [c for c in bases[i] if c not in deadset]
        for c in dead:
            cols.pop(c, None)
        nxt = diffs.get(i + 1, {})
        for c2 in list(nxt):
            nxt[c2] = {r: p for r, p in nxt[c2].items() if r not in deadset}
        stages.append(
            PruneStage(
                degree=i,
                deleted=[tag_to_json(c.tag) for c in dead],
                matrix=grid(bases.get(i - 1, []), bases.get(i, []), cols),
                next_matrix=grid(bases.get(i, []), bases.get(i + 1, []), nxt),
            )
        )

    ring2 = F.ring.deactivate(znames)
    idx = [F.ring.index(n) for n in znames]

    def strip(l: BasisLabel) -> BasisLabel:
        exps = list(l.multidegree.exponents)
        for j in idx:
            exps[j] = 0
        return BasisLabel(l.tag, Monomial(ring2, tuple(exps)))

    newlab = {l: strip(l) for i in bases for l in bases[i]}
    basis = {i: [newlab[l] for l in lbls] for i, lbls in bases.items() if lbls}
    diff = {
        i: {
            newlab[c]: {newlab[r]: p.reinterpret(ring2) for r, p in col.items()}
            for c, col in cols.items()
        }
        for i, cols in diffs.items()
        if cols
    }
    pruned = LabeledFreeComplex(
        ring2, basis, diff, name=f"P({F.name}, {{{', '.join(znames)}}})"
    )
    return PruneResult(F, pruned, stages, pruned.verify())


# ---------------------------------------------------------------------------
# dg descent


def z_divisible_subsets(ideal: MonomialIdeal, znames) -> list[tuple[int, ...]]:
    """Index subsets V of G(I) containing a generator divisible by some
    variable in Z (the index sets spanning the dg ideal I_Z)."""
    idx = [ideal.ring.index(n) for n in znames]
    zgens = {
        j
        for j, g in enumerate(ideal.generators)
        if any(g.exponents[i] for i in idx)
    }
    t = len(ideal.generators)
    out = []
    for size in range(1, t + 1):
        for V in combinations(range(t), size):
            if set(V) & zgens:
                out.append(V)
    return out


def principal_ideal_span(
    T: LabeledFreeComplex, ideal: MonomialIdeal, znames
) -> SubmoduleSpan:
    """The span of {e_V, d(e_V) : V meets the Z-divisible generators}
    inside the Taylor complex; a dg ideal of T."""
    return span_from_matching_sources(T, z_divisible_subsets(ideal, znames))


@dataclass
class PrunedDG:
    ideal: MonomialIdeal
    pruned_ideal: MonomialIdeal
    matching: list
    resolution_quotient: QuotientDG  # F = T/J
    projection_closure: dict | None  # im(I_Z) is a dg ideal of F
    pruned_quotient: QuotientDG  # (F / im(I_Z)) tensor Q/(Z)
    boocher: PruneResult  # direct pruning of the same F
    matches_boocher: bool


def prune_dg(
    ideal: MonomialIdeal,
    znames,
    order=None,
    check_closure: bool = True,
) -> PrunedDG:
    """Descend the Lyubeznik-quotient dg structure along pruning by Z.

    Pipeline: T with its product; J from the standard-matching sources;
    F = T/J as a dg quotient (checked against the Lyubeznik restriction);
    the image of I_Z in F (optionally certified as a dg ideal there); and
    the quotient of F by that image over Q/(Z), compared entry-by-entry
    with Boocher pruning of F.
    """
    znames = tuple(znames)
    if order is not None:
        ideal = ideal.reorder(order)
    dgT = taylor_dg_structure(ideal)
    T = dgT.complex
    matching = lyubeznik_matching(ideal)
    sources = matching_sources(matching)
    prefer = {("e",) + tuple(t) for _, t in matching} | {
        ("e",) + tuple(s) for s in sources
    }
    qF = quotient_dg(dgT, span_from_matching_sources(T, sources),
                     prefer_eliminate=prefer, name=f"F{ideal}")

    gens: list[SpanGenerator] = []
    for V in z_divisible_subsets(ideal, znames):
        lab = T.find_label(("e",) + V, degree=len(V))
        e = Element.basis(T, lab, len(V))
        pe = qF.project(e)
        if not pe.is_zero():
            gens.append(SpanGenerator(("e",) + V, pe))
        pde = qF.project(e.diff())
        if not pde.is_zero():
            gens.append(SpanGenerator(("de",) + V, pde))
    span_image = SubmoduleSpan(qF.structure.complex, gens)

    closure = None
    if check_closure:
        ok, closure = dg_ideal_closure(qF.structure, span_image)
        if not ok:
            raise ValueError("image of the Z-ideal is not a dg ideal of F")

    fcx = qF.structure.complex
    zidx = [fcx.ring.index(n) for n in znames]
    prefer2 = {
        l.tag
        for i in fcx.degrees()
        for l in fcx.labels(i)
        if any(l.multidegree.exponents[j] for j in zidx)
    }
    qP = quotient_dg(
        qF.structure,
        span_image,
        kill_vars=znames,
        prefer_eliminate=prefer2,
        name=f"P(F{ideal}, {{{', '.join(znames)}}})",
    )

    boocher = prune_complex(lyubeznik_resolution(ideal), znames)
    return PrunedDG(
        ideal=ideal,
        pruned_ideal=prune_ideal(ideal, znames),
        matching=matching,
        resolution_quotient=qF,
        projection_closure=closure,
        pruned_quotient=qP,
        boocher=boocher,
        matches_boocher=complexes_equal(qP.structure.complex, boocher.pruned),
    )
