"""Differential graded algebra structures on labeled free complexes.

A `DGStructure` is a complex together with a multiplication given on basis
labels (extended bilinearly) and a distinguished degree-0 unit.  `dg_check`
machine-verifies the axioms on all basis pairs and triples:

  unitality, multiplicative closure with |ab| = |a| + |b|, multigraded
  homogeneity of products, graded commutativity ab = (-1)^{|a||b|} ba,
  squares of odd-degree elements vanish, associativity, and the Leibniz
  rule d(ab) = d(a) b + (-1)^{|a|} a d(b).

Commutativity, squares, and Leibniz are checked on both orientations /
directly from the stored products, not derived from one another.

`SubmoduleSpan` + `submodule_membership` decide membership of a homogeneous
element in a multigraded submodule spanned by finitely many homogeneous
elements: in each multidegree b a generator g contributes the single
monomial multiple (b / mdeg g) * g, so membership is a rational linear
solve and the witness is an exact coefficient list.

`quotient_dg` forms the quotient of a dg algebra by a dg ideal given as a
span, by per-degree elimination with unit pivots, optionally over a smaller
ring (kill_vars), preferring to eliminate caller-designated labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .complexes import (
    BasisLabel,
    ComplexError,
    LabeledFreeComplex,
    VecT,
    tag_to_json,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from .poly import Monomial, PolyError, Polynomial, monomial_divide


class DGError(ValueError):
    pass


@dataclass
class Element:
    """A homogeneous-homological-degree element of a labeled complex."""

    complex: LabeledFreeComplex
    degree: int
    coords: VecT

    def __post_init__(self):
        self.coords = {k: v for k, v in self.coords.items() if not v.is_zero()}

    @staticmethod
    def zero(cx: LabeledFreeComplex, degree: int) -> "Element":
        return Element(cx, degree, {})

    @staticmethod
    def basis(cx: LabeledFreeComplex, label: BasisLabel, degree: int | None = None) -> "Element":
        d = degree if degree is not None else cx.degree_of(label)
        return Element(cx, d, {label: Polynomial.constant(cx.ring, 1)})

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "Element") -> "Element":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DGError("adding elements of different homological degrees")
        return Element(self.complex, self.degree, vec_add(self.coords, other.coords))

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def scale(self, c) -> "Element":
        return Element(self.complex, self.degree, vec_scale(self.coords, c))

    def diff(self) -> "Element":
        if self.degree == 0 or self.is_zero():
            return Element.zero(self.complex, max(self.degree - 1, 0))
        return Element(
            self.complex, self.degree - 1, self.complex.apply_diff(self.degree, self.coords)
        )

    def multidegree(self) -> Monomial | None:
        """Common multidegree coeff*mdeg(label), or None if mixed/zero."""
        found = None
        for l, p in self.coords.items():
            md = p.multidegree()
            if md is None:
                return None
            total = md * l.multidegree
            if found is None:
                found = total
            elif found != total:
                return None
        return found

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = [f"({p})*{l}" for l, p in sorted(self.coords.items(), key=lambda kv: str(kv[0].tag))]
        return " + ".join(parts)


class DGStructure:
    """A complex with a basis-level product and unit.

    `product_fn(a, b)` must return the product of basis labels a, b as an
    Element.  Products are cached; `multiply` extends bilinearly.
    """

    def __init__(
        self,
        complex: LabeledFreeComplex,
        product_fn: Callable[[BasisLabel, BasisLabel], Element],
        name: str = "",
    ):
        self.complex = complex
        self.product_fn = product_fn
        self.name = name or complex.name
        deg0 = complex.labels(0)
        if len(deg0) != 1:
            raise DGError("dg structure needs rank-1 degree 0")
        self.unit = deg0[0]
        self._table: dict[tuple, Element] = {}

    def all_labels(self) -> list[BasisLabel]:
        return [l for i in self.complex.degrees() for l in self.complex.labels(i)]

    def basis_product(self, a: BasisLabel, b: BasisLabel) -> Element:
        key = (a.tag, b.tag)
        got = self._table.get(key)
        if got is None:
            got = self.product_fn(a, b)
            self._table[key] = got
        return got

    def multiply(self, x: Element, y: Element) -> Element:
        deg = x.degree + y.degree
        out = Element.zero(self.complex, deg)
        for a, p in x.coords.items():
            for b, q in y.coords.items():
                prod = self.basis_product(a, b)
                if prod.is_zero():
                    continue
                pq = p * q
                out = out + Element(
                    self.complex, deg, {l: pq * r for l, r in prod.coords.items()}
                )
        return out


@dataclass
class DGReport:
    ok: bool = True
    checked_pairs: int = 0
    checked_triples: int = 0
    failures: dict[str, list] = field(default_factory=dict)

    def record(self, axiom: str, witness: dict, cap: int = 10):
        self.ok = False
        bucket = self.failures.setdefault(axiom, [])
        if len(bucket) < cap:
            bucket.append(witness)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked_pairs": self.checked_pairs,
            "checked_triples": self.checked_triples,
            "failures": self.failures,
        }


def _homogeneous_product_ok(a: BasisLabel, b: BasisLabel, prod: Element) -> bool:
    want = a.multidegree * b.multidegree
    for l, p in prod.coords.items():
        md = p.multidegree()
        if md is None or md * l.multidegree != want:
            return False
    return True


def dg_check(dg: DGStructure, triples: bool = True) -> DGReport:
    """Verify the dg-algebra axioms exhaustively on basis pairs/triples."""
    cx = dg.complex
    report = DGReport()
    labels = dg.all_labels()
    degree = {l: cx.degree_of(l) for l in labels}
    top = cx.top_degree()
    one = dg.unit

    for a in labels:
        left = dg.basis_product(one, a)
        right = dg.basis_product(a, one)
        want = Element.basis(cx, a, degree[a])
        if not (left - want).is_zero():
            report.record("unital", {"a": tag_to_json(a.tag), "got": str(left)})
        if not (right - want).is_zero():
            report.record("unital", {"a": tag_to_json(a.tag), "got": str(right)})

    for a in labels:
        for b in labels:
            prod = dg.basis_product(a, b)
            report.checked_pairs += 1
            dab = degree[a] + degree[b]
            if not prod.is_zero():
                if prod.degree != dab:
                    report.record(
                        "degree",
                        {"a": tag_to_json(a.tag), "b": tag_to_json(b.tag), "got_degree": prod.degree},
                    )
                if dab > top:
                    report.record(
                        "closure",
                        {"a": tag_to_json(a.tag), "b": tag_to_json(b.tag), "detail": "product beyond top degree"},
                    )
                if not _homogeneous_product_ok(a, b, prod):
                    report.record(
                        "homogeneous",
                        {"a": tag_to_json(a.tag), "b": tag_to_json(b.tag), "got": str(prod)},
                    )
            # graded commutativity, both orientations computed directly
            ba = dg.basis_product(b, a)
            sign = -1 if (degree[a] * degree[b]) % 2 else 1
            if not (prod - ba.scale(sign)).is_zero():
                report.record(
                    "graded_commutativity",
                    {
                        "a": tag_to_json(a.tag),
                        "b": tag_to_json(b.tag),
                        "ab": str(prod),
                        "ba": str(ba),
                    },
                )
            # Leibniz: d(ab) = d(a) b + (-1)^{|a|} a d(b)
            ea = Element.basis(cx, a, degree[a])
            eb = Element.basis(cx, b, degree[b])
            lhs = prod.diff()
            rhs = dg.multiply(ea.diff(), eb) + dg.multiply(ea, eb.diff()).scale(
                -1 if degree[a] % 2 else 1
            )
            if not (lhs - rhs).is_zero():
                report.record(
                    "leibniz",
                    {
                        "a": tag_to_json(a.tag),
                        "b": tag_to_json(b.tag),
                        "d_ab": str(lhs),
                        "da_b_plus_a_db": str(rhs),
                    },
                )
        if degree[a] % 2 == 1:
            sq = dg.basis_product(a, a)
            if not sq.is_zero():
                report.record("odd_squares", {"a": tag_to_json(a.tag), "a2": str(sq)})

    if triples:
        for a in labels:
            for b in labels:
                ab = dg.basis_product(a, b)
                eb_ = None
                for c in labels:
                    report.checked_triples += 1
                    bc = dg.basis_product(b, c)
                    if ab.is_zero() and bc.is_zero():
                        continue
                    ec = Element.basis(cx, c, degree[c])
                    if eb_ is None:
                        eb_ = Element.basis(cx, b, degree[b])
                    lhs = dg.multiply(ab, ec)
                    ea = Element.basis(cx, a, degree[a])
                    rhs = dg.multiply(ea, bc)
                    if not (lhs - rhs).is_zero():
                        report.record(
                            "associativity",
                            {
                                "a": tag_to_json(a.tag),
                                "b": tag_to_json(b.tag),
                                "c": tag_to_json(c.tag),
                                "ab_c": str(lhs),
                                "a_bc": str(rhs),
                            },
                        )
    return report


# ---------------------------------------------------------------------------
# spans, membership, dg ideals


@dataclass
class SpanGenerator:
    gen_id: tuple
    element: Element


class SubmoduleSpan:
    """A multigraded submodule given by homogeneous generators."""

    def __init__(self, cx: LabeledFreeComplex, generators: Sequence[SpanGenerator]):
        self.complex = cx
        self.generators = list(generators)
        for g in self.generators:
            if g.element.multidegree() is None and not g.element.is_zero():
                raise DGError(f"span generator {g.gen_id} is not multigraded")

    def by_degree(self, i: int) -> list[SpanGenerator]:
        return [g for g in self.generators if g.element.degree == i and not g.element.is_zero()]


def submodule_membership(
    span: SubmoduleSpan, element: Element
) -> tuple[bool, list[dict] | None]:
    """Decide element in span; on success return the witness
    [{gen, coefficient, monomial_multiple}] with exact rationals.

    The element must be multigraded (single multidegree b); each span
    generator g of the same homological degree with mdeg(g) | b contributes
    the single multiple (b / mdeg g) * g, so this is a linear solve over Q.
    """
    if element.is_zero():
        return True, []
    b = element.multidegree()
    if b is None:
        raise DGError("membership needs a multigraded element")
    cands = [
        g
        for g in span.by_degree(element.degree)
        if g.element.multidegree() is not None and g.element.multidegree().divides(b)
    ]
    # row space: all labels appearing anywhere
    rows: list[BasisLabel] = []
    seen = set()
    for g in cands:
        for l in g.element.coords:
            if l not in seen:
                seen.add(l)
                rows.append(l)
    for l in element.coords:
        if l not in seen:
            seen.add(l)
            rows.append(l)
    # scalar matrix: coefficient of each label inside each generator
    mat = []
    for l in rows:
        mat.append([
            g.element.coords.get(l, Polynomial.zero(span.complex.ring)).single_term()[1]
            if l in g.element.coords
            else Fraction(0)
            for g in cands
        ])
    rhs = []
    for l in rows:
        p = element.coords.get(l)
        rhs.append(p.single_term()[1] if p is not None else Fraction(0))
    sol = linalg.solve(mat, rhs) if cands else (None if any(rhs) else [])
    if sol is None:
        return False, None
    witness = []
    for g, c in zip(cands, sol):
        if c:
            mult = monomial_divide(b, g.element.multidegree())
            witness.append(
                {
                    "gen": tag_to_json(g.gen_id),
                    "coefficient": str(c),
                    "monomial_multiple": str(mult),
                }
            )
    return True, witness


def span_from_matching_sources(
    cx: LabeledFreeComplex, sources: Iterable[tuple[int, ...]]
) -> SubmoduleSpan:
    """The span of {e_V, d(e_V)} over the given Taylor index sets V.

    For a Morse matching with source set A_+ this is the direct sum of the
    two-term subcomplexes 0 -> Q e_V -> Q d(e_V) -> 0 over V in A_+.
    """
    gens: list[SpanGenerator] = []
    for V in sorted(sources, key=lambda v: (len(v), v)):
        lab = cx.find_label(("e",) + tuple(V), degree=len(V))
        e = Element.basis(cx, lab, len(V))
        gens.append(SpanGenerator(("e",) + tuple(V), e))
        de = e.diff()
        if not de.is_zero():
            gens.append(SpanGenerator(("de",) + tuple(V), de))
    return SubmoduleSpan(cx, gens)


def dg_ideal_closure(
    dg: DGStructure, span: SubmoduleSpan, require_boundary_closed: bool = True
) -> tuple[bool, dict]:
    """Check that the span is a dg ideal: closed under the differential and
    absorbing under multiplication by every basis element.

    The boundary-closure precondition raises if violated (a span that is not
    a subcomplex cannot be quotiented).  Left products suffice once
    dg_check has established graded commutativity; this routine still checks
    e_U * g for every basis label e_U and every span generator g, recording
    a membership witness for each nonzero product.
    """
    report: dict = {"boundary_closed": True, "products": [], "failures": []}
    for g in span.generators:
        ok, _ = submodule_membership(span, g.element.diff())
        if not ok:
            report["boundary_closed"] = False
            if require_boundary_closed:
                raise DGError(
                    f"span is not closed under the differential at generator {g.gen_id}"
                )
    for u in dg.all_labels():
        eu = Element.basis(dg.complex, u)
        for g in span.generators:
            prod = dg.multiply(eu, g.element)
            if prod.is_zero():
                continue
            ok, witness = submodule_membership(span, prod)
            entry = {
                "factor": tag_to_json(u.tag),
                "gen": tag_to_json(g.gen_id),
                "product": str(prod),
            }
            if ok:
                entry["witness"] = witness
                report["products"].append(entry)
            else:
                report["failures"].append(entry)
    report["ok"] = report["boundary_closed"] and not report["failures"]
    return report["ok"], report


# ---------------------------------------------------------------------------
# quotients


@dataclass
class QuotientDG:
    structure: DGStructure
    eliminated: dict[int, list[tuple]]
    survivors: dict[int, list[BasisLabel]]
    rules_json: dict
    project: Callable[["Element"], "Element"] | None = None

    def to_json(self) -> dict:
        return {
            "complex": self.structure.complex.to_json(),
            "eliminated": {
                str(i): [tag_to_json(t) for t, _ in rules]
                for i, rules in self.eliminated.items()
            },
            "rules": self.rules_json,
        }


def _kill(vec: VecT, kill_names: tuple[str, ...]) -> VecT:
    if not kill_names:
        return dict(vec)
    out = {}
    for l, p in vec.items():
        q = p.substitute_zero(kill_names)
        if not q.is_zero():
            out[l] = q
    return out


def quotient_dg(
    dg: DGStructure,
    span: SubmoduleSpan,
    kill_vars: Sequence[str] = (),
    prefer_eliminate: Iterable[tuple] = (),
    name: str = "",
) -> QuotientDG:
    """Quotient of a dg algebra by the dg ideal spanned by `span`.

    Per homological degree, each span generator is reduced by the rules
    found so far (and by setting kill_vars to zero, which is how a quotient
    over the smaller ring Q/<kill_vars> is formed); a basis label with a
    nonzero *constant* coefficient is chosen as the pivot and eliminated.
    Labels whose tags are in `prefer_eliminate` are preferred as pivots, so
    callers can steer the surviving basis (e.g. to the Morse-critical
    cells).  Generators with no unit pivot go to a retry queue; if a full
    pass makes no progress the quotient is not free and we raise.
    """
    cx = dg.complex
    kill = tuple(kill_vars)
    prefer = set(prefer_eliminate)
    rules_order: dict[int, list[tuple[BasisLabel, VecT]]] = {}
    rules_map: dict[int, dict[BasisLabel, VecT]] = {}

    def substitute(vec: VecT, i: int) -> VecT:
        rmap = rules_map.get(i, {})
        out = _kill(vec, kill)
        # each substitution only introduces labels from later rules, so a
        # bounded number of passes reaches a fixpoint
        for _ in range(len(rmap) + 1):
            hit = [l for l in out if l in rmap]
            if not hit:
                return out
            for l in hit:
                p = out.pop(l)
                out = vec_add(out, _kill({k: p * q for k, q in rmap[l].items()}, kill))
        raise DGError("rule substitution did not terminate")

    for i in sorted({g.element.degree for g in span.generators}):
        queue = list(span.by_degree(i))
        while queue:
            progressed = False
            retry = []
            for g in queue:
                vec = substitute(dict(g.element.coords), i)
                if not vec:
                    progressed = True
                    continue
                pivots = [l for l, p in vec.items() if p.is_nonzero_constant()]
                if not pivots:
                    retry.append(g)
                    continue
                preferred = [l for l in pivots if l.tag in prefer]
                pool = preferred or pivots
                pivot = min(pool, key=lambda l: str(l.tag))
                c = vec[pivot].constant_coefficient()
                rhs = vec_scale({l: p for l, p in vec.items() if l != pivot}, Fraction(-1, 1) / c)
                rules_order.setdefault(i, []).append((pivot, rhs))
                rules_map.setdefault(i, {})[pivot] = rhs
                progressed = True
            if retry and not progressed:
                raise DGError(
                    f"no unit pivot in degree {i}: quotient is not a free complex"
                )
            queue = retry
        # normalize: back-substitute so every rule rhs is rule-free
        if i in rules_order:
            for pivot, rhs in reversed(rules_order[i]):
                rules_map[i][pivot] = substitute(rhs, i)

    # boundary closure consistency: every generator's boundary must vanish in
    # the quotient, otherwise the span was not a subcomplex
    for g in span.generators:
        dv = g.element.diff()
        if substitute(dict(dv.coords), dv.degree):
            raise DGError(
                f"span not a subcomplex: boundary of {g.gen_id} survives the quotient"
            )

    dead = {i: set(l for l, _ in rules) for i, rules in rules_order.items()}
    ring = cx.ring.deactivate(kill) if kill else cx.ring

    def relabel(l: BasisLabel) -> BasisLabel:
        if not kill:
            return l
        exps = l.multidegree.exponents
        for nm in kill:
            if exps[cx.ring.index(nm)]:
                raise DGError(
                    f"surviving label {l} has multidegree divisible by {nm}; "
                    "the span does not kill everything it must"
                )
        return BasisLabel(l.tag, Monomial(ring, exps))

    survivors = {
        i: [l for l in cx.labels(i) if l not in dead.get(i, set())]
        for i in cx.degrees()
    }
    new_labels = {l: relabel(l) for i in cx.degrees() for l in survivors[i]}

    def push(vec: VecT) -> VecT:
        out = {}
        for l, p in vec.items():
            q = p.reinterpret(ring) if kill else p
            if not q.is_zero():
                out[new_labels[l]] = q
        return out

    basis = {i: [new_labels[l] for l in survivors[i]] for i in cx.degrees() if survivors[i]}
    one = Polynomial.constant(cx.ring, 1)
    diff: dict[int, dict[BasisLabel, VecT]] = {}
    for i in cx.degrees():
        if i == 0:
            continue
        cols = {}
        for l in survivors.get(i, []):
            img = substitute(cx.apply_diff(i, {l: one}), i - 1)
            cols[new_labels[l]] = push(img)
        if cols:
            diff[i] = cols
    qcx = LabeledFreeComplex(ring, basis, diff, name=name or f"{dg.name}/span")

    back = {v: k for k, v in new_labels.items()}

    def qproduct(a: BasisLabel, b: BasisLabel) -> Element:
        prod = dg.basis_product(back[a], back[b])
        if prod.is_zero():
            return Element.zero(qcx, qcx.degree_of(a) + qcx.degree_of(b))
        vec = substitute(dict(prod.coords), prod.degree)
        return Element(qcx, prod.degree, push(vec))

    structure = DGStructure(qcx, qproduct, name=name or f"{dg.name}/span")

    def project_fn(el: Element) -> Element:
        vec = substitute(dict(el.coords), el.degree)
        return Element(qcx, el.degree, push(vec))

    rules_json = {
        str(i): [
            {
                "eliminated": tag_to_json(piv.tag),
                "equals": {
                    "-".join(map(str, tag_to_json(l.tag))) if isinstance(l.tag, tuple) else str(l.tag): str(p)
                    for l, p in rhs.items()
                },
            }
            for piv, rhs in rules
        ]
        for i, rules in rules_order.items()
    }
    return QuotientDG(
        structure,
        {i: [(l, r) for l, r in rules] for i, rules in rules_order.items()},
        survivors,
        rules_json,
        project_fn,
    )
