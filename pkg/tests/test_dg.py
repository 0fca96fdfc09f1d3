"""DG-algebra verification: exhaustive axiom checking on Taylor structures,
a deliberately sign-broken product caught by the Leibniz check, exact
submodule membership with rational witnesses, dg-ideal closure, and unit-pivot
quotients (including the 5-cycle whose matching sources are a dg ideal
without being superset-closed)."""

import pytest

from dgres import (
    DGError,
    DGStructure,
    Element,
    MonomialIdeal,
    Polynomial,
    SpanGenerator,
    SubmoduleSpan,
    VariableSet,
    complexes_equal,
    dg_check,
    dg_ideal_closure,
    lyubeznik_matching,
    lyubeznik_resolution,
    parse_polynomial,
    quotient_dg,
    span_from_matching_sources,
    submodule_membership,
    taylor_dg_structure,
    taylor_graph,
    taylor_product,
    taylor_resolution,
    validate_matching,
)
from dgres.classify import C5_MATCHING
from dgres.morse import is_superset_closed, matching_sources, matching_targets

RING3 = VariableSet(("x", "y", "z"))


def ideal(ring, *gens):
    return MonomialIdeal.from_strings(ring, list(gens))


class TestElement:
    def test_add_requires_equal_degree(self):
        F = taylor_resolution(ideal(RING3, "x", "y"))
        a = Element.basis(F, F.find_label(("e", 0)))
        b = Element.basis(F, F.find_label(("e", 0, 1)))
        with pytest.raises(DGError):
            a + b

    def test_diff_squares_to_zero(self):
        F = taylor_resolution(ideal(RING3, "x*y", "y*z", "x*z"))
        for i in F.degrees():
            for l in F.labels(i):
                assert Element.basis(F, l).diff().diff().is_zero()

    def test_multidegree(self):
        F = taylor_resolution(ideal(RING3, "x", "y"))
        e0 = F.find_label(("e", 0))
        e1 = F.find_label(("e", 1))
        one = Polynomial.constant(RING3, 1)
        assert str(Element(F, 1, {e0: parse_polynomial(RING3, "y")}).multidegree()) == "x*y"
        mixed = Element(F, 1, {e0: one, e1: one})
        assert mixed.multidegree() is None
        assert Element.zero(F, 2).multidegree() is None


class TestDGCheck:
    def test_taylor_passes(self, corpus):
        for I in corpus[:4]:
            dg = taylor_dg_structure(I)
            report = dg_check(dg)
            assert report.ok, report.to_json()
            n = sum(dg.complex.ranks())
            assert report.checked_pairs == n * n
            assert report.checked_triples == n**3
            assert report.failures == {}

    def test_pairs_only_mode(self, taylor_fixture_ideal):
        report = dg_check(taylor_dg_structure(taylor_fixture_ideal), triples=False)
        assert report.ok
        assert report.checked_triples == 0

    def test_broken_unit_detected(self, taylor_fixture_ideal):
        I = taylor_fixture_ideal
        T = taylor_resolution(I)

        def product(a, b):
            deg = (len(a.tag) - 1) + (len(b.tag) - 1)
            coords = taylor_product(I, T, a, b)
            el = Element(T, deg, coords)
            if len(a.tag) == 1 or len(b.tag) == 1:  # unit factor: drop it
                return Element.zero(T, deg)
            return el

        report = dg_check(DGStructure(T, product), triples=False)
        assert not report.ok
        assert "unital" in report.failures

    def test_sign_mutated_product_fails_leibniz(self, taylor_fixture_ideal):
        # negating products of two degree-1 elements keeps graded
        # commutativity and odd squares intact but breaks the Leibniz rule
        # (and with it associativity against degree-2 factors)
        I = taylor_fixture_ideal
        T = taylor_resolution(I)

        def mutated(a, b):
            da, db = len(a.tag) - 1, len(b.tag) - 1
            el = Element(T, da + db, taylor_product(I, T, a, b))
            if da == 1 and db == 1:
                return el.scale(-1)
            return el

        report = dg_check(DGStructure(T, mutated))
        assert not report.ok
        assert set(report.failures) == {"leibniz", "associativity"}
        witness = report.failures["leibniz"][0]
        assert witness["a"] == ["e", 0]
        assert witness["b"] == ["e", 1]
        assert witness["d_ab"] != witness["da_b_plus_a_db"]
        for w in report.failures["leibniz"]:
            assert set(w) == {"a", "b", "d_ab", "da_b_plus_a_db"}

    def test_failure_bucket_cap(self, taylor_fixture_ideal):
        I = taylor_fixture_ideal
        T = taylor_resolution(I)

        def broken(a, b):  # everything vanishes: units fail on every label
            return Element.zero(T, (len(a.tag) - 1) + (len(b.tag) - 1))

        report = dg_check(DGStructure(T, broken), triples=False)
        assert not report.ok
        assert len(report.failures["unital"]) == 10  # capped


@pytest.fixture(scope="module")
def koszul():
    return taylor_resolution(ideal(RING3, "x", "y", "z"))


@pytest.fixture(scope="module")
def dg5(c5_ideal):
    return taylor_dg_structure(c5_ideal)


class TestSubmoduleMembership:
    def test_generator_is_member(self, koszul):
        span = span_from_matching_sources(koszul, [(0, 1)])
        de = Element.basis(koszul, koszul.find_label(("e", 0, 1))).diff()
        ok, witness = submodule_membership(span, de)
        assert ok
        assert witness == [
            {"gen": ["de", 0, 1], "coefficient": "1", "monomial_multiple": "1"}
        ]

    def test_monomial_multiple_recorded(self, koszul):
        span = span_from_matching_sources(koszul, [(0, 1)])
        e01 = koszul.find_label(("e", 0, 1))
        el = Element(koszul, 2, {e01: parse_polynomial(RING3, "z")})
        ok, witness = submodule_membership(span, el)
        assert ok
        assert witness == [
            {"gen": ["e", 0, 1], "coefficient": "1", "monomial_multiple": "z"}
        ]

    def test_non_member(self, koszul):
        span = span_from_matching_sources(koszul, [(0, 1)])
        e02 = Element.basis(koszul, koszul.find_label(("e", 0, 2)))
        ok, witness = submodule_membership(span, e02)
        assert not ok
        assert witness is None

    def test_zero_element(self, koszul):
        span = span_from_matching_sources(koszul, [(0, 1)])
        assert submodule_membership(span, Element.zero(koszul, 2)) == (True, [])

    def test_mixed_multidegree_rejected(self, koszul):
        span = span_from_matching_sources(koszul, [(0, 1)])
        one = Polynomial.constant(RING3, 1)
        mixed = Element(
            koszul,
            2,
            {
                koszul.find_label(("e", 0, 1)): one,
                koszul.find_label(("e", 0, 2)): one,
            },
        )
        with pytest.raises(DGError):
            submodule_membership(span, mixed)

    def test_non_multigraded_generator_rejected(self, koszul):
        one = Polynomial.constant(RING3, 1)
        mixed = Element(
            koszul,
            2,
            {
                koszul.find_label(("e", 0, 1)): one,
                koszul.find_label(("e", 0, 2)): one,
            },
        )
        with pytest.raises(DGError):
            SubmoduleSpan(koszul, [SpanGenerator(("bad",), mixed)])


class TestDGIdealClosure:
    def test_principal_span_not_an_ideal(self):
        I = ideal(RING3, "x", "y", "z")
        dg = taylor_dg_structure(I)
        span = span_from_matching_sources(dg.complex, [(0, 1)])
        ok, report = dg_ideal_closure(dg, span)
        assert not ok
        assert report["boundary_closed"]
        assert report["failures"]
        entry = report["failures"][0]
        assert set(entry) == {"factor", "gen", "product"}

    def test_boundary_closure_precondition(self):
        I = ideal(RING3, "x", "y", "z")
        dg = taylor_dg_structure(I)
        cx = dg.complex
        e01 = Element.basis(cx, cx.find_label(("e", 0, 1)))
        bare = SubmoduleSpan(cx, [SpanGenerator(("e", 0, 1), e01)])
        with pytest.raises(DGError):
            dg_ideal_closure(dg, bare)
        ok, report = dg_ideal_closure(dg, bare, require_boundary_closed=False)
        assert not ok
        assert not report["boundary_closed"]

    def test_whisker_matching_span_is_ideal(self):
        ring = VariableSet(("x", "y", "x1", "y1", "z"))
        I = MonomialIdeal.from_strings(ring, ["x*y", "x*z", "y*z", "x*x1", "y*y1"])
        dg = taylor_dg_structure(I)
        span = span_from_matching_sources(
            dg.complex, matching_sources(lyubeznik_matching(I))
        )
        ok, report = dg_ideal_closure(dg, span)
        assert ok
        assert all("witness" in e for e in report["products"])


class TestQuotient:
    def test_whisker_quotient_equals_subcomplex(self):
        ring = VariableSet(("x", "y", "x1", "y1", "z"))
        I = MonomialIdeal.from_strings(ring, ["x*y", "x*z", "y*z", "x*x1", "y*y1"])
        dg = taylor_dg_structure(I)
        matching = lyubeznik_matching(I)
        span = span_from_matching_sources(dg.complex, matching_sources(matching))
        prefer = {("e",) + t for t in matching_targets(matching)} | {
            ("e",) + s for s in matching_sources(matching)
        }
        q = quotient_dg(dg, span, prefer_eliminate=prefer)
        assert complexes_equal(q.structure.complex, lyubeznik_resolution(I))
        assert dg_check(q.structure).ok

    def test_project_kills_span_and_fixes_unit(self):
        ring = VariableSet(("x", "y", "x1", "y1", "z"))
        I = MonomialIdeal.from_strings(ring, ["x*y", "x*z", "y*z", "x*x1", "y*y1"])
        dg = taylor_dg_structure(I)
        matching = lyubeznik_matching(I)
        span = span_from_matching_sources(dg.complex, matching_sources(matching))
        q = quotient_dg(dg, span)
        for g in span.generators:
            assert q.project(g.element).is_zero()
        unit = Element.basis(dg.complex, dg.unit)
        projected = q.project(unit)
        assert not projected.is_zero()
        assert projected.degree == 0

    def test_no_unit_pivot_raises(self):
        I = ideal(RING3, "x", "y", "z")
        T = taylor_resolution(I)
        dg = taylor_dg_structure(I, T)
        e0 = T.find_label(("e", 0))
        gen = SpanGenerator(("g",), Element(T, 1, {e0: parse_polynomial(RING3, "x")}))
        with pytest.raises(DGError):
            quotient_dg(dg, SubmoduleSpan(T, [gen]))

    def test_non_subcomplex_span_raises(self):
        I = ideal(RING3, "x", "y", "z")
        T = taylor_resolution(I)
        dg = taylor_dg_structure(I, T)
        e01 = Element.basis(T, T.find_label(("e", 0, 1)))
        bare = SubmoduleSpan(T, [SpanGenerator(("e", 0, 1), e01)])
        with pytest.raises(DGError):
            quotient_dg(dg, bare)

    def test_to_json_shape(self):
        ring = VariableSet(("x", "y", "x1", "y1", "z"))
        I = MonomialIdeal.from_strings(ring, ["x*y", "x*z", "y*z", "x*x1", "y*y1"])
        dg = taylor_dg_structure(I)
        span = span_from_matching_sources(
            dg.complex, matching_sources(lyubeznik_matching(I))
        )
        q = quotient_dg(dg, span)
        data = q.to_json()
        assert set(data) == {"complex", "eliminated", "rules"}


class TestFiveCycle:
    """The pentagon edge ideal: the hand-built Morse matching is valid and
    its source span is a dg ideal even though the sources are not closed
    under supersets, so the quotient still carries a dg-algebra structure."""

    def test_matching_is_valid(self, c5_ideal):
        report = validate_matching(taylor_graph(c5_ideal), C5_MATCHING)
        assert report["ok"], report

    def test_not_superset_closed(self, c5_ideal):
        closed, witness = is_superset_closed(c5_ideal, C5_MATCHING)
        assert not closed
        assert witness == {"source": [0, 1, 2], "superset": [0, 1, 2, 3]}

    def test_span_is_dg_ideal(self, dg5):
        span = span_from_matching_sources(
            dg5.complex, matching_sources(C5_MATCHING)
        )
        ok, report = dg_ideal_closure(dg5, span)
        assert ok, report["failures"]
        assert len(report["products"]) == 155
        assert report["failures"] == []

    def test_five_term_membership_witness(self, dg5):
        span = span_from_matching_sources(
            dg5.complex, matching_sources(C5_MATCHING)
        )
        el = Element.basis(dg5.complex, dg5.complex.find_label(("e", 0, 1, 2, 3)))
        ok, witness = submodule_membership(span, el)
        assert ok
        assert witness == [
            {"gen": ["e", 0, 1, 2, 4], "coefficient": "1", "monomial_multiple": "1"},
            {"gen": ["e", 0, 1, 3, 4], "coefficient": "-1", "monomial_multiple": "1"},
            {"gen": ["e", 0, 2, 3, 4], "coefficient": "1", "monomial_multiple": "1"},
            {"gen": ["e", 1, 2, 3, 4], "coefficient": "-1", "monomial_multiple": "1"},
            {"gen": ["de", 0, 1, 2, 3, 4], "coefficient": "1", "monomial_multiple": "1"},
        ]

    def test_quotient_is_minimal_dg_resolution(self, dg5, c5_ideal):
        span = span_from_matching_sources(
            dg5.complex, matching_sources(C5_MATCHING)
        )
        prefer = {("e",) + t for t in matching_targets(C5_MATCHING)} | {
            ("e",) + s for s in matching_sources(C5_MATCHING)
        }
        q = quotient_dg(dg5, span, prefer_eliminate=prefer)
        cx = q.structure.complex
        assert cx.ranks() == (1, 5, 5, 1)
        assert cx.is_minimal()
        ok, _ = cx.is_resolution_of(c5_ideal)
        assert ok
        report = dg_check(q.structure)
        assert report.ok, report.to_json()
