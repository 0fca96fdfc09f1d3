"""Minimal dg resolutions for edge ideals of trees of diameter at most 4.

A tree of diameter <= 4 is a star of stars: a center z, spokes x_1..x_n,
and a_i leaves y_{i,1}..y_{i,a_i} hanging off spoke x_i.  Its edge ideal
splits as I_Gamma = I + J with I = (z x_1, ..., z x_n) (a diameter-<=2
star, Taylor-minimal) and J = (x_i y_{i,j}) (a forest of stars,
Taylor-minimal).  The resolution of Q/I_Gamma is glued from the Taylor
resolutions F of Q/I and G of Q/J:

  * G' := Cone(z * id on the desuspended truncation of G) resolves J/zJ;
    its degree-i piece is G_{i+1} (+) z-twisted G_i.
  * Psi: G' -> F is the chain map that in degree 0 sends a generator of J
    to itself (an element of F_0 = Q) and in higher degrees sends the
    twisted copy of g_W to y_W f_{W_z} ("z-ification": each x_i y_{i,j} in
    W is replaced by z x_i; if two members of W share a spoke the target
    f_{W_z} is read as 0).
  * Cone(Psi) is then a minimal free resolution of Q/I_Gamma; its degree-i
    piece is F_i (+) G_i (+) z-twisted G_{i-1}, written (f, g1, g2).

The product: with Phi(g_W) := y_W f_{W_z} extended linearly, and
omega_f(g) := -x_q * (g moved to the twisted copy) when f is a degree-1
basis element of F with d(f) = z x_q (omega is 0 on degrees != 1 and is
extended linearly in f),

  (f,0,0)(f',0,0)   = (f f', 0, 0)            products inside F
  (0,g,0)(0,g',0)   = (0, g g', 0)            products inside G
  (f,0,0)(0,g,0)    = ((1/z) f Phi(g), 0, omega_f(g))
  (0,g,0)(f,0,0)    = ((1/z) Phi(g) f, 0, (-1)^{|g|} omega_f(g))
  (0,g,0)(0,0,g')   = (-1)^{|g|} (0, 0, g g')
  (0,0,g)(0,g',0)   = (0, 0, g g')
  (f,0,0)(0,0,g) = (0,0,g)(f,0,0) = (0,0,g)(0,0,g') = 0

The division by z is realized by exact monomial division and is always
possible because (1/z) f_V Phi(g_W) is either 0 or y_W f_{V union W_z}; a
failed division raises instead of storing a rational function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .combin import Graph, GraphError, graph_diameter
from .complexes import (
    BasisLabel,
    ChainMap,
    LabeledFreeComplex,
    VecT,
    desuspend_truncation,
    mapping_cone,
    multiplication_map,
)
from .dg import DGStructure, Element
from .poly import (
    Monomial,
    MonomialIdeal,
    Polynomial,
    VariableSet,
    lcm_of,
    monomial_divide,
)
from .taylor import taylor_product_label, taylor_resolution, taylor_sign


@dataclass
class StarDecomposition:
    graph: Graph
    ring: VariableSet
    center: str
    spokes: tuple[str, ...]
    leaves: dict[str, tuple[str, ...]]  # spoke -> leaves, both in fixed order
    ideal_i: MonomialIdeal  # (z x_i), spoke order
    ideal_j: MonomialIdeal  # (x_i y_{i,l}), (spoke, leaf) order
    ideal_total: MonomialIdeal  # generators of I then J

    @property
    def n(self) -> int:
        return len(self.spokes)

    @property
    def ell(self) -> int:
        return len(self.ideal_j.generators)

    def spoke_of_leaf_generator(self, j: int) -> int:
        """Index (into the spokes) of the spoke under the j-th J-generator."""
        count = 0
        for i, s in enumerate(self.spokes):
            for _ in self.leaves[s]:
                if count == j:
                    return i
                count += 1
        raise IndexError(j)


def star_decompose(graph: Graph) -> StarDecomposition:
    """Decompose a tree of diameter <= 4 as center/spokes/leaves.

    The center is a vertex of eccentricity <= 2 (the middle of a longest
    path); ties are broken by degree and then vertex order, so the result
    is deterministic.  Raises for non-trees and diameter >= 5.
    """
    if not graph.is_tree():
        raise GraphError("star_decompose needs a tree")
    if len(graph.vertices) < 2:
        raise GraphError("star_decompose needs at least one edge")
    d = graph_diameter(graph)
    if d > 4:
        raise GraphError(f"tree has diameter {d} > 4")
    adj = graph.adjacency()

    def ecc(v: str) -> int:
        dist = {v: 0}
        frontier = [v]
        e = 0
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        e = max(e, dist[w])
                        nxt.append(w)
            frontier = nxt
        return e

    candidates = [v for v in graph.vertices if ecc(v) <= 2]
    if not candidates:
        raise GraphError("no eccentricity-2 center; diameter bookkeeping is off")
    center = max(candidates, key=lambda v: (graph.degree(v), -graph.vertices.index(v)))

    spokes = tuple(adj[center])
    leaves = {
        s: tuple(w for w in adj[s] if w != center) for s in spokes
    }
    ring = VariableSet(graph.non_isolated())
    z = ring.variable(center)
    gens_i = tuple(z * ring.variable(s) for s in spokes)
    gens_j = tuple(
        ring.variable(s) * ring.variable(y) for s in spokes for y in leaves[s]
    )
    return StarDecomposition(
        graph=graph,
        ring=ring,
        center=center,
        spokes=spokes,
        leaves=leaves,
        ideal_i=MonomialIdeal(ring, gens_i),
        ideal_j=MonomialIdeal(ring, gens_j),
        ideal_total=MonomialIdeal(ring, gens_i + gens_j),
    )


# ---------------------------------------------------------------------------
# z-ification


def zify_indices(dec: StarDecomposition, W) -> tuple[tuple[int, ...], bool]:
    """Map a subset W of G(J) to spoke indices in G(I).

    Returns (sorted spoke index set, repeat_free); with a repeat (two
    members of W on one spoke) the z-ified Taylor symbol is read as 0.
    """
    spokes = [dec.spoke_of_leaf_generator(j) for j in W]
    return tuple(sorted(set(spokes))), len(set(spokes)) == len(spokes)


def y_part(dec: StarDecomposition, W) -> Monomial:
    """y_W = m_W / x_W: the leaf part of the lcm of the J-generators in W."""
    m_w = lcm_of((dec.ideal_j.generators[j] for j in W), dec.ring)
    spoke_set, _ = zify_indices(dec, W)
    x_w = lcm_of((dec.ring.variable(dec.spokes[i]) for i in spoke_set), dec.ring)
    return monomial_divide(m_w, x_w)


# ---------------------------------------------------------------------------
# the complexes


def build_g_prime(dec: StarDecomposition) -> tuple[LabeledFreeComplex, LabeledFreeComplex]:
    """(G', G): G is the Taylor resolution of Q/J and G' = Cone(mu_z) on the
    desuspended truncation of G, resolving J/zJ.

    G'-labels: ("G", W...) with multidegree m_W at homological degree
    |W| - 1, and ("S", W...) with multidegree z m_W at degree |W|.
    """
    G = taylor_resolution(dec.ideal_j)
    S = desuspend_truncation(G)
    z = dec.ring.variable(dec.center)
    mu = multiplication_map(S, z)
    Gp = mapping_cone(
        mu,
        target_relabel=lambda tag: ("G",) + tag[1:],
        source_relabel=lambda tag: ("S",) + tag[1:],
        name="G'",
    )
    return Gp, G


def build_psi(
    dec: StarDecomposition, Gp: LabeledFreeComplex, F: LabeledFreeComplex
) -> ChainMap:
    """Psi: G' -> F; degree 0 sends g_{w} to w * 1_F, higher degrees send
    the twisted copy of g_W to y_W f_{W_z} and the plain copy to 0."""
    unit_f = F.labels(0)[0]
    entries: dict[BasisLabel, VecT] = {}
    for i in Gp.degrees():
        for l in Gp.labels(i):
            kind, W = l.tag[0], l.tag[1:]
            if i == 0:
                # G-copy of a single J-generator; its boundary in G_0 = Q
                entries[l] = {unit_f: Polynomial.monomial(l.multidegree)}
            elif kind == "S":
                spoke_set, repeat_free = zify_indices(dec, W)
                if repeat_free:
                    target = F.find_label(("e",) + spoke_set, degree=len(spoke_set))
                    entries[l] = {target: Polynomial.monomial(y_part(dec, W))}
                else:
                    entries[l] = {}
            else:
                entries[l] = {}
    return ChainMap(Gp, F, entries)


@dataclass
class ConeResolution:
    decomposition: StarDecomposition
    F: LabeledFreeComplex
    G: LabeledFreeComplex
    Gp: LabeledFreeComplex
    cone: LabeledFreeComplex
    dg: DGStructure


def build_cone_resolution(graph_or_dec) -> ConeResolution:
    """Cone(Psi) with its multiplication, for a tree of diameter <= 4.

    For diameter <= 2 the ideal J is zero, G' is the empty complex, and the
    cone is just the Taylor resolution F (relabeled); the product table is
    then the Taylor product.
    """
    dec = (
        graph_or_dec
        if isinstance(graph_or_dec, StarDecomposition)
        else star_decompose(graph_or_dec)
    )
    F = taylor_resolution(dec.ideal_i)
    Gp, G = build_g_prime(dec)
    psi = build_psi(dec, Gp, F)
    cone = mapping_cone(
        psi,
        target_relabel=lambda tag: ("F",) + tag[1:],
        source_relabel=lambda tag: tag,
        name=f"Cone(Psi){dec.ideal_total}",
    )
    dg = DGStructure(cone, _cone_product_fn(dec, cone), name=cone.name)
    return ConeResolution(dec, F, G, Gp, cone, dg)


def _cone_product_fn(dec, cone):
    ring = dec.ring
    z = ring.variable(dec.center)
    zero = lambda deg: Element.zero(cone, deg)

    def find(tag, size):
        return cone.find_label(tag, degree=size)

    def f_times_f(V, W):
        res = taylor_product_label(dec.ideal_i, V, W)
        if res is None:
            return {}
        sign, coeff, union = res
        return {find(("F",) + union, len(union)): Polynomial.monomial(coeff, sign)}

    def g_times_g(V, W, copy: str):
        res = taylor_product_label(dec.ideal_j, V, W)
        if res is None:
            return {}
        sign, coeff, union = res
        deg = len(union) if copy == "G" else len(union) + 1
        return {find((copy,) + union, deg): Polynomial.monomial(coeff, sign)}

    def phi_times_f(V, W):
        """(1/z) f_V Phi(g_W) as an element of the F-part (V from G(I),
        W from G(J)); equals y_W f_{V union W_z} or 0."""
        spoke_set, repeat_free = zify_indices(dec, W)
        if not repeat_free:
            return {}
        res = taylor_product_label(dec.ideal_i, V, spoke_set)
        if res is None:
            return {}
        sign, coeff, union = res
        poly = Polynomial.monomial(coeff, sign) * Polynomial.monomial(y_part(dec, W))
        divided = poly.divide_by_monomial(z)  # raises if z does not divide
        return {find(("F",) + union, len(union)): divided}

    def omega(V, W):
        """omega_{f_V}(g_W): -x_q g_W moved to the twisted copy when
        V = {q} (so d f_V = z x_q); zero in higher degrees."""
        if len(V) != 1:
            return {}
        xq = ring.variable(dec.spokes[V[0]])
        lab = find(("S",) + tuple(W), len(W) + 1)
        return {lab: Polynomial.monomial(xq, -1)}

    def product(a: BasisLabel, b: BasisLabel) -> Element:
        ka, va = a.tag[0], a.tag[1:]
        kb, vb = b.tag[0], b.tag[1:]
        da = cone.degree_of(a)
        db = cone.degree_of(b)
        deg = da + db
        # unit action
        if ka == "F" and not va:
            return Element.basis(cone, b, db)
        if kb == "F" and not vb:
            return Element.basis(cone, a, da)
        if ka == "F" and kb == "F":
            return Element(cone, deg, f_times_f(va, vb))
        if ka == "G" and kb == "G":
            return Element(cone, deg, g_times_g(va, vb, "G"))
        if ka == "F" and kb == "G":
            coords = dict(phi_times_f(va, vb))
            for l, p in omega(va, vb).items():
                coords[l] = coords.get(l, Polynomial.zero(ring)) + p
            return Element(cone, deg, coords)
        if ka == "G" and kb == "F":
            # (0,g,0)(f,0,0) = ((1/z) Phi(g) f, 0, (-1)^{|g|} omega_f(g));
            # commuting Phi(g) past f inside F gives the global sign
            # (-1)^{|g||f|}, and omega is only nonzero for |f| = 1.
            sign = -1 if (da % 2 and db % 2) else 1
            coords = dict(phi_times_f(vb, va))
            for l, p in omega(vb, va).items():
                coords[l] = coords.get(l, Polynomial.zero(ring)) + p
            return Element(cone, deg, coords).scale(sign)
        if ka == "G" and kb == "S":
            sign = -1 if da % 2 else 1
            return Element(cone, deg, g_times_g(va, vb, "S")).scale(sign)
        if ka == "S" and kb == "G":
            return Element(cone, deg, g_times_g(va, vb, "S"))
        # (F,S), (S,F), (S,S) all vanish
        return zero(deg)

    return product


# ---------------------------------------------------------------------------
# Betti numbers


def diam4_betti(n: int, leaf_counts) -> tuple[int, ...]:
    """Total Betti numbers of Q/I_Gamma for the diameter-<=4 tree with n
    spokes and the given leaf counts:
    beta_0 = 1, beta_1 = ell + n, beta_i = C(ell+1, i) + C(n, i) for i >= 2,
    ending at pd = max(ell + 1, n)."""
    counts = tuple(leaf_counts)
    if len(counts) != n:
        raise ValueError("need one leaf count per spoke")
    ell = sum(counts)
    if ell == 0:
        pd = n
        out = [1] + [comb(n, i) for i in range(1, pd + 1)]
        return tuple(out)
    pd = max(ell + 1, n)
    out = [1, ell + n]
    for i in range(2, pd + 1):
        out.append(comb(ell + 1, i) + comb(n, i))
    return tuple(out)


def lyubeznik_betti(a: int, b: int, c: int) -> tuple[int, ...]:
    """Total Betti numbers of Q/I_{L(a,b,c)}: 1, a+b+2c+1, then
    C(a+c+1, i) + C(b+c+1, i); pd = max(a+c+1, b+c+1)."""
    pd = max(a + c + 1, b + c + 1)
    out = [1, a + b + 2 * c + 1]
    for i in range(2, pd + 1):
        out.append(comb(a + c + 1, i) + comb(b + c + 1, i))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# the structural facts behind the product, machine-checkable per tree


def check_phi_z_multiplicative(dec: StarDecomposition) -> dict:
    """z Phi(g V g W) = Phi(g V) Phi(g W) on every pair of G-basis subsets.

    (This is the off-by-z failure of Phi to be a dg morphism; exactness of
    the relation is what makes the (1/z)-products land in F.)
    """
    ring = dec.ring
    z = ring.variable(dec.center)
    ell = dec.ell
    failures = []

    def phi_vec(W, scale: Polynomial) -> dict[tuple[int, ...], Polynomial]:
        spoke_set, repeat_free = zify_indices(dec, W)
        if not repeat_free:
            return {}
        return {spoke_set: scale * Polynomial.monomial(y_part(dec, W))}

    one = Polynomial.constant(ring, 1)
    for sa in range(1, ell + 1):
        for V in combinations(range(ell), sa):
            for sb in range(1, ell + 1):
                for W in combinations(range(ell), sb):
                    res = taylor_product_label(dec.ideal_j, V, W)
                    lhs: dict[tuple[int, ...], Polynomial] = {}
                    if res is not None:
                        sign, coeff, union = res
                        lhs = phi_vec(
                            union, Polynomial.monomial(coeff * z, sign)
                        )
                    rhs: dict[tuple[int, ...], Polynomial] = {}
                    pv = phi_vec(V, one)
                    pw = phi_vec(W, one)
                    for uv, cv in pv.items():
                        for uw, cw in pw.items():
                            resf = taylor_product_label(dec.ideal_i, uv, uw)
                            if resf is None:
                                continue
                            signf, cf, unionf = resf
                            q = rhs.get(unionf, Polynomial.zero(ring)) + (
                                cv * cw * Polynomial.monomial(cf, signf)
                            )
                            if q.is_zero():
                                rhs.pop(unionf, None)
                            else:
                                rhs[unionf] = q
                    if {k: v for k, v in lhs.items() if not v.is_zero()} != {
                        k: v for k, v in rhs.items() if not v.is_zero()
                    }:
                        failures.append({"V": list(V), "W": list(W)})
    return {"ok": not failures, "failures": failures}


def check_sigma_zification(dec: StarDecomposition) -> dict:
    """For disjoint V, W in G(J) with repeat-free, disjoint z-ifications,
    the commutation signs agree: sigma(V, W) = sigma(V_z, W_z) mod 2."""
    ell = dec.ell
    failures = []
    for sa in range(1, ell + 1):
        for V in combinations(range(ell), sa):
            zv, rv = zify_indices(dec, V)
            if not rv:
                continue
            for sb in range(1, ell + 1):
                for W in combinations(range(ell), sb):
                    if set(V) & set(W):
                        continue
                    zw, rw = zify_indices(dec, W)
                    if not rw or set(zv) & set(zw):
                        continue
                    if taylor_sign(V, W) != taylor_sign(zv, zw):
                        failures.append({"V": list(V), "W": list(W)})
    return {"ok": not failures, "failures": failures}


def check_boundary_action(res: ConeResolution) -> dict:
    """(d f, 0, 0) (0, g, 0) equals ((1/z) d(f) Phi(g), 0, 0) for |f| > 1
    and (0, d(f) g, 0) for |f| = 1, on all basis pairs.

    (The |f| = 1 case is where omega comes from: d(f_q) = z x_q acts on the
    G-copy through the scalar z x_q.)
    """
    dec, cone, dg = res.decomposition, res.cone, res.dg
    ring = dec.ring
    failures = []
    for i in cone.degrees():
        for f in cone.labels(i):
            if f.tag[0] != "F" or len(f.tag) == 1:
                continue
            V = f.tag[1:]
            df = Element.basis(cone, f, i).diff()
            for j in cone.degrees():
                for g in cone.labels(j):
                    if g.tag[0] != "G":
                        continue
                    eg = Element.basis(cone, g, j)
                    lhs = dg.multiply(df, eg)
                    if len(V) == 1:
                        scalar = Polynomial.monomial(f.multidegree)  # d(f_q) = z x_q
                        rhs = Element(cone, j, {g: scalar})
                    else:
                        rhs = Element.zero(cone, i - 1 + j)
                        for fl, p in df.coords.items():
                            prod = dg.basis_product(fl, g)
                            keep = {
                                l: p * q
                                for l, q in prod.coords.items()
                                if l.tag[0] == "F"
                            }
                            rhs = rhs + Element(cone, i - 1 + j, keep)
                    if not (lhs - rhs).is_zero():
                        failures.append({"f": list(V), "g": list(g.tag[1:])})
    return {"ok": not failures, "failures": failures}
