"""Discrete Morse machinery on the Taylor complex.

The Taylor graph of an ordered minimal generating set has a vertex for each
subset of the generators and an arc sigma -> tau whenever tau = sigma minus
one element, lcm(sigma) = lcm(tau), and |tau| >= 2 (so cancellations never
touch homological degrees 0 and 1).

A Morse matching is a set A of arcs no two of which share an endpoint such
that reversing the arcs of A leaves the digraph acyclic.  `morse_reduce`
cancels the matched pairs one at a time by exact unit-pivot elimination,
producing the induced smaller complex on the unmatched (critical) cells; a
Morse matching guarantees this terminates.

`lyubeznik_matching` implements the matching A(<) of Batzies-Welker:
M(sigma) is the smallest generator u_q dividing lcm{u in sigma : u > u_q},
matched via sigma <-> sigma + {M(sigma)}.  Its critical cells are exactly
the subsets accepted by the classical Lyubeznik survivor rule, and
`lyubeznik_resolution` builds that subcomplex of the Taylor complex
directly; the two constructions are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complexes import BasisLabel, LabeledFreeComplex, VecT
from .poly import MonomialIdeal, Polynomial, PolyError, lcm_of

Arc = tuple[tuple[int, ...], tuple[int, ...]]  # (source subset, target subset)


class MorseError(ValueError):
    pass


MAX_GRAPH_GENERATORS = 20


@dataclass
class TaylorGraph:
    ideal: MonomialIdeal
    arcs: tuple[Arc, ...]

    def arc_set(self) -> set[Arc]:
        return set(self.arcs)

    def to_dot(self, matching: tuple[Arc, ...] | None = None) -> str:
        """Graphviz DOT text; matched arcs are drawn reversed and dashed."""
        matched = set(matching or ())
        lines = ["digraph taylor {", '  rankdir="LR";']

        def node(v: tuple[int, ...]) -> str:
            return '"{' + ",".join(str(i) for i in v) + '}"'

        seen = set()
        for s, t in self.arcs:
            for v in (s, t):
                if v not in seen:
                    seen.add(v)
                    lines.append(f"  {node(v)};")
        for s, t in self.arcs:
            if (s, t) in matched:
                lines.append(f"  {node(t)} -> {node(s)} [style=dashed, color=red];")
            else:
                lines.append(f"  {node(s)} -> {node(t)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def taylor_graph(ideal: MonomialIdeal) -> TaylorGraph:
    """All arcs sigma -> tau with tau = sigma minus a point, equal lcm,
    |tau| >= 2; arcs sorted by (|tau|, sigma, tau)."""
    t = len(ideal.generators)
    if t > MAX_GRAPH_GENERATORS:
        raise MorseError(f"Taylor graph limited to {MAX_GRAPH_GENERATORS} generators")
    gens = ideal.generators
    arcs: list[Arc] = []
    for size in range(3, t + 1):
        for sigma in combinations(range(t), size):
            m_sigma = lcm_of((gens[i] for i in sigma), ideal.ring)
            for drop in sigma:
                tau = tuple(i for i in sigma if i != drop)
                if lcm_of((gens[i] for i in tau), ideal.ring) == m_sigma:
                    arcs.append((sigma, tau))
    arcs.sort(key=lambda a: (len(a[1]), a[0], a[1]))
    return TaylorGraph(ideal, tuple(arcs))


def validate_matching(graph: TaylorGraph, matching) -> dict:
    """Check a candidate Morse matching: arcs belong to the graph, no two
    arcs share an endpoint, and reversing them leaves the digraph acyclic
    (Kahn peeling).  Returns a report dict with 'ok'."""
    matching = [
        (tuple(s), tuple(t)) for s, t in matching
    ]
    report: dict = {"ok": True, "not_in_graph": [], "incident": [], "acyclic": True}
    arcset = graph.arc_set()
    for a in matching:
        if a not in arcset:
            report["not_in_graph"].append(a)
    used: dict[tuple[int, ...], Arc] = {}
    for a in matching:
        for v in a:
            if v in used and used[v] != a:
                report["incident"].append((used[v], a))
            used[v] = a
    # digraph with matched arcs reversed
    matched = set(matching)
    adj: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    indeg: dict[tuple[int, ...], int] = {}

    def add_edge(u, v):
        adj.setdefault(u, []).append(v)
        indeg[v] = indeg.get(v, 0) + 1
        indeg.setdefault(u, 0)

    for s, t in graph.arcs:
        if (s, t) in matched:
            add_edge(t, s)
        else:
            add_edge(s, t)
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in adj.get(v, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    report["acyclic"] = seen == len(indeg)
    report["ok"] = (
        not report["not_in_graph"] and not report["incident"] and report["acyclic"]
    )
    return report


def matching_sources(matching) -> set[tuple[int, ...]]:
    return {tuple(s) for s, _ in matching}


def matching_targets(matching) -> set[tuple[int, ...]]:
    return {tuple(t) for _, t in matching}


def is_superset_closed(ideal: MonomialIdeal, matching) -> tuple[bool, dict | None]:
    """Is the source set A_+ closed under taking supersets inside the
    subset lattice of G(I)?  Returns a witness (sigma in A_+, superset not
    in A_+) when it is not."""
    t = len(ideal.generators)
    sources = matching_sources(matching)
    for sigma in sorted(sources, key=lambda v: (len(v), v)):
        others = [i for i in range(t) if i not in sigma]
        for k in range(1, len(others) + 1):
            for extra in combinations(others, k):
                sup = tuple(sorted(sigma + extra))
                if sup not in sources:
                    return False, {"source": list(sigma), "superset": list(sup)}
    return True, None


# ---------------------------------------------------------------------------
# the Batzies-Welker matching A(<)


def _min_divisor_index(ideal: MonomialIdeal, sigma: frozenset[int]) -> int | None:
    """M(sigma): least q with u_q | lcm{u_j in sigma : j > q}, else None."""
    gens = ideal.generators
    for q in range(len(gens)):
        later = [gens[j] for j in sigma if j > q]
        if not later:
            break
        if gens[q].divides(lcm_of(later, ideal.ring)):
            return q
    return None


def lyubeznik_matching(ideal: MonomialIdeal) -> tuple[Arc, ...]:
    """The matching A(<) for the given generator order, deduplicated.

    A subset sigma with M(sigma) = q is matched along
    (sigma + {q}) -> (sigma - {q}); sigma and sigma + {q} produce the same
    arc.  Subsets with no M value are critical.
    """
    t = len(ideal.generators)
    arcs: set[Arc] = set()
    for size in range(t + 1):
        for sigma in combinations(range(t), size):
            q = _min_divisor_index(ideal, frozenset(sigma))
            if q is None:
                continue
            source = tuple(sorted(set(sigma) | {q}))
            target = tuple(i for i in source if i != q)
            arcs.add((source, target))
    return tuple(sorted(arcs, key=lambda a: (len(a[1]), a[0], a[1])))


def lyubeznik_critical(ideal: MonomialIdeal) -> dict[int, list[tuple[int, ...]]]:
    """Subsets passing the classical survivor rule, by cardinality:
    U = {u_{i_1} < ... < u_{i_s}} survives iff no generator u_q below some
    u_{i_t} divides lcm(u_{i_t}, ..., u_{i_s})."""
    gens = ideal.generators
    t = len(gens)
    out: dict[int, list[tuple[int, ...]]] = {}
    for size in range(t + 1):
        for U in combinations(range(t), size):
            alive = True
            for pos, it in enumerate(U):
                tail = lcm_of((gens[j] for j in U[pos:]), ideal.ring)
                if any(gens[q].divides(tail) for q in range(it)):
                    alive = False
                    break
            if alive:
                out.setdefault(size, []).append(U)
    return out


def lyubeznik_resolution(ideal: MonomialIdeal, order=None) -> LabeledFreeComplex:
    """The Lyubeznik subcomplex of the Taylor complex for the given order.

    The survivor sets are closed under subsets, so the Taylor differential
    restricts to them; this builds that restriction directly.
    """
    from .taylor import taylor_resolution

    if order is not None:
        ideal = ideal.reorder(order)
    T = taylor_resolution(ideal)
    crit = lyubeznik_critical(ideal)
    keep = {("e",) + U for size, Us in crit.items() for U in Us}
    basis = {
        i: [l for l in T.labels(i) if l.tag in keep] for i in T.degrees()
    }
    diff: dict[int, dict[BasisLabel, VecT]] = {}
    for i in T.degrees():
        if i == 0:
            continue
        cols = {}
        for l in basis.get(i, []):
            col = {
                r: p for r, p in T.column(i, l).items() if r.tag in keep
            }
            # survivors are subset-closed, so nothing may be lost here
            if len(col) != len([p for p in T.column(i, l).values() if not p.is_zero()]):
                raise MorseError("survivor sets are not subset-closed; bad input order")
            cols[l] = col
        if cols:
            diff[i] = cols
    return LabeledFreeComplex(ideal.ring, basis, diff, name=f"Lyubeznik{ideal}")


# ---------------------------------------------------------------------------
# algebraic Morse reduction


def morse_reduce(
    T: LabeledFreeComplex, matching, tag_prefix: str = "e"
) -> LabeledFreeComplex:
    """Cancel the matched pairs of a Morse matching by unit-pivot Gaussian
    elimination, one pair at a time.

    Pairs are processed by decreasing homological degree of the source and
    lexicographic order of the source subset; a pair whose current pivot
    entry is not a nonzero rational is deferred, and if a whole pass defers
    everything we raise (cannot happen for an acyclic matching).  Each
    cancellation of (tau, sigma) with pivot c = <d sigma, tau> updates the
    remaining degree-|tau| differential entries by

        d'(tau', sigma') = d(tau', sigma') - d(tau', sigma) d(tau, sigma') / c,

    drops the sigma-component of the degree-|sigma|+1 differential, and
    deletes both basis elements.  Critical cells keep their labels, so the
    result can be compared against subcomplex constructions label by label.
    """
    # mutable copy of the differential, column-major by label
    basis: dict[int, list[BasisLabel]] = {i: list(T.labels(i)) for i in T.degrees()}
    diff: dict[int, dict[BasisLabel, VecT]] = {
        i: {c: dict(T.column(i, c)) for c in T.labels(i)} for i in T.degrees() if i > 0
    }
    bytag: dict[tuple, BasisLabel] = {
        l.tag: l for i in T.degrees() for l in T.labels(i)
    }
    degree_of = {l: i for i in T.degrees() for l in T.labels(i)}

    pairs = []
    for s, t in matching:
        st, tt = (tag_prefix,) + tuple(s), (tag_prefix,) + tuple(t)
        if st not in bytag or tt not in bytag:
            raise MorseError(f"matched pair ({s},{t}) not in the complex")
        pairs.append((bytag[st], bytag[tt]))
    pairs.sort(key=lambda p: (-degree_of[p[0]], str(p[0].tag)))

    def cancel(sigma: BasisLabel, tau: BasisLabel) -> bool:
        i = degree_of[sigma]
        col_sigma = diff[i].get(sigma, {})
        pivot = col_sigma.get(tau)
        if pivot is None or not pivot.is_nonzero_constant():
            return False
        c = pivot.constant_coefficient()
        # fill-in on the remaining degree-i columns
        dsigma_rest = {r: p for r, p in col_sigma.items() if r != tau and not p.is_zero()}
        for sp in basis[i]:
            if sp is sigma:
                continue
            col = diff[i].get(sp, {})
            hit = col.get(tau)
            if hit is None or hit.is_zero():
                continue
            f = hit * (Fraction(-1) / c)
            for r, p in dsigma_rest.items():
                acc = col.get(r, Polynomial.zero(T.ring)) + f * p
                if acc.is_zero():
                    col.pop(r, None)
                else:
                    col[r] = acc
            col.pop(tau, None)
        # drop the sigma-row of the degree-(i+1) differential
        for col in diff.get(i + 1, {}).values():
            col.pop(sigma, None)
        # delete the pair
        basis[i].remove(sigma)
        basis[i - 1].remove(tau)
        diff[i].pop(sigma, None)
        diff.get(i - 1, {}).pop(tau, None)
        return True

    queue = pairs
    while queue:
        retry = []
        progressed = False
        for sigma, tau in queue:
            if cancel(sigma, tau):
                progressed = True
            else:
                retry.append((sigma, tau))
        if retry and not progressed:
            raise MorseError("stuck: no matched pair has a unit pivot (matching not acyclic?)")
        queue = retry

    basis_out = {i: lbls for i, lbls in basis.items() if lbls}
    diff_out = {
        i: {c: {r: p for r, p in col.items() if not p.is_zero()} for c, col in cols.items()}
        for i, cols in diff.items()
        if basis_out.get(i)
    }
    return LabeledFreeComplex(T.ring, basis_out, diff_out, name=f"morse({T.name})")
