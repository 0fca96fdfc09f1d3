"""Classification of dg trees and dg cycles, with machine-checked
certificates.

For a tree of diameter d, the minimal free resolution of Q/I admits a dg
algebra structure iff d <= 4; for a cycle C_n iff n <= 5.  `classify`
returns a `Certificate` whose evidence is recomputable:

  * d <= 2 trees: the Taylor resolution is already minimal (no proper
    subset of the generators has full lcm), and Taylor resolutions are dg
    (Gemeda).
  * d = 3 trees (and the 3-cycle): a Lyubeznik resolution for a total
    order starting at the central edge is minimal; the matching sources
    form a superset-closed family, so the span of their two-term
    subcomplexes is a dg ideal and the Taylor quotient is dg.  The
    quotient is built and all dg axioms are machine-checked.
  * d = 4 trees: the mapping-cone resolution glued from the Taylor
    resolutions of the star ideal I = (z x_i) and the leaf ideal
    J = (x_i y_{i,j}), with its explicit product; all axioms checked.
  * C_4, C_5: explicit acyclic Morse matchings on the Taylor complex whose
    reductions are minimal; the spanned ideal is closed under
    multiplication (with membership witnesses) and the quotient passes
    all dg axioms.  (C_5's source family is *not* superset-closed, so it
    also witnesses that superset-closure is sufficient but not necessary.)
  * C_6: the Betti vector (1, 6, 9, 6, 2) is not the f-vector of any
    simplicial complex (Kruskal-Katona fails at the 4-element level:
    2 = C(4,4) + C(3,3) forces at least C(4,3) + C(3,2) = 7 > 6 faces
    below), so by Katthaen's structure theorem the resolution carries no
    dg structure.
  * trees of diameter >= 5 and cycles on >= 7 vertices: six consecutive
    geodesic vertices span a facet-induced 5-edge path; pruning by the
    complementary vertices carries a dg structure down to the minimal
    resolution of the path quotient (Boocher + dg descent), which admits
    none (Avramov; Katthaen).  The pruning computation is included in the
    certificate; non-dg-ness of the 5-path is the single cited input.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .combin import Graph, GraphError, edge_ideal, graph_diameter, tree_longest_path
from .complexes import total_betti
from .dg import dg_check, dg_ideal_closure, quotient_dg, span_from_matching_sources
from .diam4 import (
    build_cone_resolution,
    check_boundary_action,
    check_phi_z_multiplicative,
    check_sigma_zification,
    diam4_betti,
    lyubeznik_betti,
    star_decompose,
)
from .morse import (
    is_superset_closed,
    lyubeznik_matching,
    lyubeznik_resolution,
    matching_sources,
    morse_reduce,
    taylor_graph,
    validate_matching,
)
from .poly import MonomialIdeal, lcm_of
from .prune import prune_ideal
from .taylor import taylor_dg_structure, taylor_resolution

VERSION = "0.1.0"

# size guards: above these the expensive checks are recorded as skipped
STRAND_VAR_CAP = 12  # is_resolution_of enumerates 2^vars strands
TRIPLE_LABEL_CAP = 220  # dg_check associativity/Leibniz on triples


class UnsupportedGraphError(GraphError):
    """The classification covers trees and cycles only."""


CITED_FACTS: dict[str, dict] = {
    "taylor-dg": {
        "statement": "The Taylor resolution of a monomial quotient is a dg algebra.",
        "source": "Gemeda (1976); see also Avramov",
    },
    "morse-resolution": {
        "statement": "A homogeneous acyclic matching on the Taylor complex "
        "yields a free resolution on the critical cells; Lyubeznik "
        "resolutions arise this way.",
        "source": "Batzies-Welker (2002)",
    },
    "hilbert-burch": {
        "statement": "Codimension-two perfect quotients are resolved by the "
        "Hilbert-Burch complex, which is a dg algebra.",
        "source": "Hilbert-Burch; cf. Herzog's account",
    },
    "buchsbaum-eisenbud-short": {
        "statement": "Minimal free resolutions of length at most three admit "
        "dg algebra structures.",
        "source": "Buchsbaum-Eisenbud (1977)",
    },
    "katthan-structure": {
        "statement": "If the minimal free resolution of a squarefree "
        "monomial quotient is dg, it is a quotient of the Taylor dg algebra "
        "by a dg ideal spanned by two-term subcomplexes.",
        "source": "Katthaen (2019), structure theorem",
    },
    "katthan-fvector": {
        "statement": "If the minimal free resolution of Q/I is dg then its "
        "Betti vector is the f-vector of a simplicial complex (a cone).",
        "source": "Katthaen (2019)",
    },
    "katthan-5path": {
        "statement": "The minimal free resolution of the quotient by the "
        "edge ideal of the 5-edge path admits no dg algebra structure "
        "(polarization of Avramov's obstruction for (x^2,xy,yz,zw,w^2)).",
        "source": "Katthaen (2019); Avramov (1981)",
    },
    "avramov-obstruction": {
        "statement": "The minimal free resolution of "
        "k[x,y,z,w]/(x^2,xy,yz,zw,w^2) admits no dg algebra structure.",
        "source": "Avramov (1981)",
    },
    "boocher-pruning": {
        "statement": "Pruning the minimal free resolution of a monomial "
        "ideal yields the minimal free resolution of the pruned ideal over "
        "the smaller ring.",
        "source": "Boocher (2012), Thm 2.3",
    },
    "kruskal-katona": {
        "statement": "Characterization of f-vectors of simplicial complexes "
        "via cascade (shadow) inequalities.",
        "source": "Kruskal (1963), Katona (1968)",
    },
}


# ---------------------------------------------------------------------------
# Kruskal-Katona


def cascade_representation(n: int, j: int) -> list[tuple[int, int]]:
    """Greedy j-cascade n = C(a_j, j) + C(a_{j-1}, j-1) + ... with
    a_j > a_{j-1} > ... >= 1."""
    if n < 0 or j < 1:
        raise ValueError("cascade needs n >= 0, j >= 1")
    rep: list[tuple[int, int]] = []
    while n > 0 and j >= 1:
        a = j
        while comb(a + 1, j) <= n:
            a += 1
        rep.append((a, j))
        n -= comb(a, j)
        j -= 1
    if n > 0:
        raise ValueError("cascade representation failed")
    return rep


def cascade_shadow_bound(rep: list[tuple[int, int]]) -> int:
    """Lower bound C(a_j, j-1) + C(a_{j-1}, j-2) + ... for the size of the
    lower shadow of any family realizing the cascade."""
    return sum(comb(a, j - 1) for a, j in rep)


def kruskal_katona_is_fvector(fvec) -> dict:
    """Is (f_0, f_1, ..., f_d) with f_i = #faces on i vertices the f-vector
    of a simplicial complex?  Returns {"ok": bool, "failures": [...]} with
    the failing level, cascade, and bound when not."""
    f = list(fvec)
    failures = []
    if not f or f[0] != 1:
        failures.append({"level": 0, "reason": "f_0 must be 1 (the empty face)"})
    for j in range(1, len(f)):
        if f[j] < 0:
            failures.append({"level": j, "reason": "negative entry"})
            continue
        if f[j] == 0:
            if any(f[k] for k in range(j + 1, len(f))):
                failures.append({"level": j, "reason": "zero below a nonzero entry"})
            continue
        if j == 1:
            continue
        rep = cascade_representation(f[j], j)
        bound = cascade_shadow_bound(rep)
        if f[j - 1] < bound:
            failures.append(
                {
                    "level": j,
                    "count": f[j],
                    "cascade": [[a, jj] for a, jj in rep],
                    "shadow_bound": bound,
                    "previous": f[j - 1],
                }
            )
    return {"ok": not failures, "failures": failures}


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    family: str  # "tree" | "cycle"
    verdict: str  # "dg" | "not_dg"
    diameter: int
    parameters: dict
    betti: list[int] | None
    evidence: dict
    cited: list[str]
    graph: dict

    def to_json(self) -> dict:
        return {
            "version": VERSION,
            "family": self.family,
            "verdict": self.verdict,
            "diameter": self.diameter,
            "parameters": self.parameters,
            "betti": self.betti,
            "evidence": self.evidence,
            "cited": sorted(self.cited),
            "citations": {k: CITED_FACTS[k] for k in sorted(self.cited)},
            "graph": self.graph,
        }


def _dg_check_summary(dg) -> dict:
    labels = sum(dg.complex.ranks())
    triples = labels <= TRIPLE_LABEL_CAP
    rep = dg_check(dg, triples=triples)
    out = rep.to_json()
    out["triples_checked"] = triples
    if not rep.ok:
        raise GraphError(f"dg axiom failure on {dg.name}: {out['failures']}")
    return out


def _resolution_summary(cx, ideal) -> dict:
    if len(ideal.ring.active_names()) > STRAND_VAR_CAP:
        return {"checked": False, "reason": "ring too large for strand sweep"}
    ok, rep = cx.is_resolution_of(ideal)
    if not ok:
        raise GraphError(f"{cx.name} is not a resolution of {ideal}: {rep}")
    return {"checked": True, "ok": True}


def _taylor_minimal_evidence(ideal: MonomialIdeal) -> tuple[dict, list[int]]:
    T = taylor_resolution(ideal)
    gens = ideal.generators
    full = lcm_of(gens, ideal.ring) if gens else ideal.ring.one()
    drop = []
    for u, g in enumerate(gens):
        rest = [h for v, h in enumerate(gens) if v != u]
        m = lcm_of(rest, ideal.ring) if rest else ideal.ring.one()
        drop.append({"dropped": str(g), "lcm_without": str(m), "full_lcm_kept": str(m) != str(full)})
    if gens and not all(d["full_lcm_kept"] for d in drop):
        raise GraphError("Taylor resolution is not minimal; wrong branch")
    dgT = taylor_dg_structure(ideal)
    evidence = {
        "kind": "taylor-minimal",
        "ranks": list(T.ranks()),
        "is_minimal": T.is_minimal(),
        "drop_one_lcms": drop,
        "resolution": _resolution_summary(T, ideal),
        "dg_check": _dg_check_summary(dgT),
    }
    return evidence, list(T.ranks())


def _lyubeznik_evidence(ideal: MonomialIdeal, order: list[str]) -> tuple[dict, list[int]]:
    """Minimal Lyubeznik resolution + superset-closed matching + quotient
    dg structure, fully machine-checked."""
    ordered = ideal.reorder(order)
    L = lyubeznik_resolution(ordered)
    if not L.is_minimal():
        raise GraphError("Lyubeznik resolution not minimal for chosen order")
    matching = lyubeznik_matching(ordered)
    tg = taylor_graph(ordered)
    val = validate_matching(tg, matching)
    if not val["ok"]:
        raise GraphError(f"invalid matching: {val}")
    closed, witness = is_superset_closed(ordered, matching)
    if not closed:
        raise GraphError(f"matching sources not superset-closed: {witness}")
    dgT = taylor_dg_structure(ordered)
    sources = matching_sources(matching)
    span = span_from_matching_sources(dgT.complex, sources)
    ok, closure = dg_ideal_closure(dgT, span)
    if not ok:
        raise GraphError("matching span is not a dg ideal")
    prefer = {("e",) + tuple(t) for _, t in matching} | {
        ("e",) + tuple(s) for s in sources
    }
    q = quotient_dg(dgT, span, prefer_eliminate=prefer)
    evidence = {
        "kind": "lyubeznik-quotient",
        "generator_order": order,
        "matching": [[list(s), list(t)] for s, t in matching],
        "matching_valid": val,
        "superset_closed": True,
        "ranks": list(L.ranks()),
        "quotient_ranks": list(q.structure.complex.ranks()),
        "resolution": _resolution_summary(L, ordered),
        "dg_check": _dg_check_summary(q.structure),
        "closure_products_checked": len(closure["products"]),
    }
    return evidence, list(total_betti(L))


def _morse_quotient_evidence(ideal: MonomialIdeal, matching) -> tuple[dict, list[int]]:
    """Explicit Morse matching evidence: validity, minimal reduction,
    dg-ideal closure with witnesses, and a fully checked quotient."""
    tg = taylor_graph(ideal)
    val = validate_matching(tg, matching)
    if not val["ok"]:
        raise GraphError(f"invalid matching: {val}")
    dgT = taylor_dg_structure(ideal)
    T = dgT.complex
    reduced = morse_reduce(T, matching)
    if not reduced.is_minimal():
        raise GraphError("Morse reduction is not minimal")
    closed, witness = is_superset_closed(ideal, matching)
    sources = matching_sources(matching)
    span = span_from_matching_sources(T, sources)
    ok, closure = dg_ideal_closure(dgT, span)
    if not ok:
        raise GraphError("matching span is not a dg ideal")
    prefer = {("e",) + tuple(t) for _, t in matching} | {
        ("e",) + tuple(s) for s in sources
    }
    q = quotient_dg(dgT, span, prefer_eliminate=prefer)
    evidence = {
        "kind": "morse-quotient",
        "matching": [[list(s), list(t)] for s, t in matching],
        "matching_valid": val,
        "superset_closed": closed,
        "ranks": list(reduced.ranks()),
        "quotient_ranks": list(q.structure.complex.ranks()),
        "resolution": _resolution_summary(reduced, ideal),
        "dg_check": _dg_check_summary(q.structure),
        "closure_products_checked": len(closure["products"]),
    }
    if not closed:
        evidence["superset_closure_counterexample"] = {
            "source": list(witness["source"]),
            "superset": list(witness["superset"]),
        }
    return evidence, list(total_betti(reduced))


def _cone_evidence(graph: Graph) -> tuple[dict, list[int], dict]:
    res = build_cone_resolution(graph)
    dec = res.decomposition
    rep = res.cone.verify()
    if not rep.ok:
        raise GraphError(f"cone complex invalid: {rep.to_json()}")
    if not res.cone.is_minimal():
        raise GraphError("cone resolution is not minimal")
    counts = [len(dec.leaves[s]) for s in dec.spokes]
    formula = list(diam4_betti(dec.n, counts))
    betti = list(total_betti(res.cone))
    if betti != formula:
        raise GraphError(f"Betti mismatch: computed {betti}, formula {formula}")
    lemmas = {
        "phi_z_multiplicative": check_phi_z_multiplicative(dec)["ok"],
        "sigma_zification": check_sigma_zification(dec)["ok"],
        "boundary_action": check_boundary_action(res)["ok"],
    }
    if not all(lemmas.values()):
        raise GraphError(f"structural lemma failed: {lemmas}")
    evidence = {
        "kind": "cone-product",
        "center": dec.center,
        "spokes": list(dec.spokes),
        "leaf_counts": counts,
        "ranks": list(res.cone.ranks()),
        "betti_formula": formula,
        "resolution": _resolution_summary(res.cone, dec.ideal_total),
        "dg_check": _dg_check_summary(res.dg),
        "lemma_checks": lemmas,
    }
    params = {"spokes": dec.n, "leaves": sum(counts)}
    return evidence, betti, params


def _path_window_evidence(graph: Graph, window: list[str]) -> dict:
    """Prune down to the 5-edge path spanned by six consecutive vertices."""
    ideal = edge_ideal(graph)
    zvars = [v for v in graph.non_isolated() if v not in set(window)]
    pruned = prune_ideal(ideal, zvars)
    masked = ideal.ring.deactivate(zvars)
    expected = {
        masked.variable(a) * masked.variable(b)
        for a, b in zip(window, window[1:])
    }
    if set(pruned.generators) != expected:
        raise GraphError("window does not prune to the 5-edge path")
    ptay = taylor_resolution(pruned)
    pbetti = list(total_betti(ptay))
    kk = kruskal_katona_is_fvector(pbetti)
    return {
        "kind": "prunes-to-non-dg-path",
        "window": list(window),
        "pruned_variables": zvars,
        "pruned_generators": [str(g) for g in pruned.generators],
        "path_betti": pbetti,
        "path_betti_f_vector_test": kk,
    }


# ---------------------------------------------------------------------------
# trees


def _d3_order(graph: Graph, ideal: MonomialIdeal) -> list[str]:
    """Generator order starting with the central edge of a diameter-3 tree
    (or any edge of a triangle)."""
    path = tree_longest_path(graph)
    a, b = path[1], path[2]
    ring = ideal.ring
    first = ring.variable(a) * ring.variable(b)
    rest = sorted(
        (str(g) for g in ideal.generators if g != first),
    )
    return [str(first)] + rest


def classify_tree(graph: Graph) -> Certificate:
    if not graph.is_tree():
        raise UnsupportedGraphError("not a tree")
    d = graph_diameter(graph)
    ideal = edge_ideal(graph)
    gj = graph.to_json()
    if d <= 2:
        if ideal.is_zero():
            evidence = {
                "kind": "taylor-minimal",
                "ranks": [1],
                "is_minimal": True,
                "drop_one_lcms": [],
                "resolution": {"checked": True, "ok": True},
                "dg_check": {"ok": True, "note": "zero ideal"},
            }
            betti = [1]
        else:
            evidence, betti = _taylor_minimal_evidence(ideal)
        return Certificate(
            family="tree", verdict="dg", diameter=d, parameters={},
            betti=betti, evidence=evidence, cited=["taylor-dg"], graph=gj,
        )
    if d == 3:
        order = _d3_order(graph, ideal)
        evidence, betti = _lyubeznik_evidence(ideal, order)
        path = tree_longest_path(graph)
        a = graph.degree(path[1]) - 1
        b = graph.degree(path[2]) - 1
        formula = list(lyubeznik_betti(a, b, 0))
        if betti != formula:
            raise GraphError(f"Betti mismatch: {betti} vs formula {formula}")
        evidence["betti_formula"] = formula
        return Certificate(
            family="tree", verdict="dg", diameter=d,
            parameters={"a": a, "b": b, "c": 0},
            betti=betti, evidence=evidence,
            cited=["taylor-dg", "morse-resolution"], graph=gj,
        )
    if d == 4:
        evidence, betti, params = _cone_evidence(graph)
        return Certificate(
            family="tree", verdict="dg", diameter=d, parameters=params,
            betti=betti, evidence=evidence, cited=["taylor-dg"], graph=gj,
        )
    path = tree_longest_path(graph)
    evidence = _path_window_evidence(graph, path[:6])
    return Certificate(
        family="tree", verdict="not_dg", diameter=d, parameters={},
        betti=None, evidence=evidence,
        cited=[
            "boocher-pruning", "katthan-structure", "katthan-5path",
            "avramov-obstruction",
        ],
        graph=gj,
    )


# ---------------------------------------------------------------------------
# cycles

# Explicit homogeneous acyclic matchings on the Taylor complex, with
# generators ordered along the cycle: (v1v2, v2v3, ..., v_{n-1}v_n, v1v_n).
C4_MATCHING: list[tuple[tuple[int, ...], tuple[int, ...]]] = [
    ((0, 1, 2, 3), (0, 2, 3)),
    ((0, 1, 2), (0, 2)),
    ((0, 1, 3), (1, 3)),
]

C5_MATCHING: list[tuple[tuple[int, ...], tuple[int, ...]]] = [
    ((0, 1, 2, 4), (0, 2, 4)),
    ((0, 1, 2), (0, 2)),
    ((0, 1, 3, 4), (0, 1, 3)),
    ((0, 1, 4), (1, 4)),
    ((0, 1, 2, 3, 4), (0, 1, 2, 3)),
    ((2, 3, 4), (2, 4)),
    ((0, 3, 4), (0, 3)),
    ((0, 2, 3, 4), (0, 2, 3)),
    ((1, 2, 3), (1, 3)),
    ((1, 2, 3, 4), (1, 2, 4)),
]


def _cycle_consecutive_ideal(graph: Graph) -> MonomialIdeal:
    ideal = edge_ideal(graph)
    verts = list(graph.vertices)
    ring = ideal.ring
    order = [
        str(ring.variable(a) * ring.variable(b))
        for a, b in zip(verts, verts[1:] + verts[:1])
    ]
    return ideal.reorder(order)


def classify_cycle(graph: Graph) -> Certificate:
    if not graph.is_cycle():
        raise UnsupportedGraphError("not a cycle")
    n = len(graph.vertices)
    d = graph_diameter(graph)
    gj = graph.to_json()
    ideal = _cycle_consecutive_ideal(graph)
    if n == 3:
        order = [str(g) for g in ideal.generators]
        evidence, betti = _lyubeznik_evidence(ideal, order)
        return Certificate(
            family="cycle", verdict="dg", diameter=d, parameters={"n": n},
            betti=betti, evidence=evidence,
            cited=["taylor-dg", "morse-resolution", "hilbert-burch",
                   "buchsbaum-eisenbud-short"],
            graph=gj,
        )
    if n == 4 or n == 5:
        matching = C4_MATCHING if n == 4 else C5_MATCHING
        evidence, betti = _morse_quotient_evidence(ideal, matching)
        return Certificate(
            family="cycle", verdict="dg", diameter=d, parameters={"n": n},
            betti=betti, evidence=evidence,
            cited=["taylor-dg", "morse-resolution", "buchsbaum-eisenbud-short"],
            graph=gj,
        )
    if n == 6:
        betti = list(total_betti(taylor_resolution(ideal)))
        kk = kruskal_katona_is_fvector(betti)
        if kk["ok"]:
            raise GraphError(
                f"expected Kruskal-Katona failure for Betti vector {betti}"
            )
        evidence = {
            "kind": "betti-not-f-vector",
            "betti": betti,
            "f_vector_test": kk,
        }
        return Certificate(
            family="cycle", verdict="not_dg", diameter=d, parameters={"n": n},
            betti=betti, evidence=evidence,
            cited=["katthan-structure", "katthan-fvector", "kruskal-katona"],
            graph=gj,
        )
    window = list(graph.vertices[:6])
    evidence = _path_window_evidence(graph, window)
    return Certificate(
        family="cycle", verdict="not_dg", diameter=d, parameters={"n": n},
        betti=None, evidence=evidence,
        cited=[
            "boocher-pruning", "katthan-structure", "katthan-5path",
            "avramov-obstruction",
        ],
        graph=gj,
    )


def classify(graph: Graph) -> Certificate:
    """Classify a tree or cycle; raise UnsupportedGraphError otherwise."""
    if graph.is_cycle():
        return classify_cycle(graph)
    if graph.is_tree():
        return classify_tree(graph)
    raise UnsupportedGraphError(
        "classification covers trees and cycles only"
    )


def verify_certificate(cert: dict) -> dict:
    """Recompute the certificate for the embedded graph and compare; also
    independently re-check any Kruskal-Katona failure it claims."""
    graph = Graph.from_json(cert["graph"])
    fresh = classify(graph).to_json()
    mismatches = []
    for key in ("family", "verdict", "diameter", "betti", "parameters"):
        if fresh.get(key) != cert.get(key):
            mismatches.append(
                {"field": key, "given": cert.get(key), "recomputed": fresh.get(key)}
            )
    if fresh["evidence"].get("kind") != cert.get("evidence", {}).get("kind"):
        mismatches.append(
            {
                "field": "evidence.kind",
                "given": cert.get("evidence", {}).get("kind"),
                "recomputed": fresh["evidence"].get("kind"),
            }
        )
    kk = cert.get("evidence", {}).get("f_vector_test")
    if kk is not None and cert.get("betti"):
        redo = kruskal_katona_is_fvector(cert["betti"])
        if redo != kk:
            mismatches.append({"field": "f_vector_test", "recomputed": redo})
    return {"ok": not mismatches, "mismatches": mismatches}
