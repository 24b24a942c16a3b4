import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ALPHAS, k_system
from oracles import all_reduction_results, random_polynomial, reduce_random_order, words
from doubleore.fields import PrimeField
from doubleore.presentation import Presentation, build_base_algebra, build_double_extension, family_K, BaseData
from doubleore.rewriting import (NcPolynomial, RewriteRule, RewriteSystem, RewritingError,
                                 UncertifiedSystemError, deglex_compare, free_system,
                                 make_rewrite_system, parse_polynomial, parse_word, render_polynomial)


def W(text):
    return parse_word(text)


class TestDeglex:
    def test_degree_first(self):
        assert deglex_compare(W("x1.x1"), W("y2")) == 1

    def test_lex_within_degree(self):
        assert deglex_compare(W("x2.x1"), W("x1.x2")) == 1
        assert deglex_compare(W("y1.x1"), W("x2.y2")) == 1

    def test_equal(self):
        assert deglex_compare(W("y1.x2"), W("y1.x2")) == 0

    def test_generator_order(self):
        gens = [W(n) for n in ("x1", "x2", "y1", "y2")]
        assert all(deglex_compare(a, b) == -1 for a, b in zip(gens, gens[1:]))


class TestParsing:
    def test_roundtrip_render(self):
        p = parse_polynomial("x2.y1 - (3/5)*x1^2")
        assert render_polynomial(p) == "+(1)*x2*y1 -(3/5)*x1^2"
        assert parse_polynomial(render_polynomial(p)) == p

    def test_unknown_generator(self):
        with pytest.raises(RewritingError):
            parse_polynomial("x3*x1")

    def test_malformed(self):
        with pytest.raises(RewritingError):
            parse_polynomial("x1 x2")

    def test_zero_rendering(self):
        assert render_polynomial(NcPolynomial.zero()) == "0"


class TestOrientation:
    def test_family_K_rules(self):
        a = Fraction(3, 5)
        rs = k_system(a)
        rules = {r.lead: r.tail for r in rs.rules}
        expected = {
            "x2.x1": "-x1.x2", "y2.y1": "-y1.y2", "y1.x1": "x1.y1",
            "y1.x2": "x2.y2", "y2.x1": "x1.y2", "y2.x2": "(3/5)*x2.y1",
        }
        assert rules == {W(k): parse_polynomial(v) for k, v in expected.items()}

    def test_lead_count(self, rs_K):
        # six quadratic leads: the words not of the form x_i x_j (i<=j), y_i y_j (i<=j), x y
        assert len(rs_K.rules) == 6
        assert all(len(r.lead) == 2 for r in rs_K.rules)
        assert len(rs_K.normal_monomials(2)) == 16 - 6

    def test_degenerate_relation(self):
        pres = Presentation(("x1", "x2"), (NcPolynomial.zero(),))
        with pytest.raises(RewritingError, match="degenerate"):
            make_rewrite_system(pres)

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            Presentation(("x1", "x2"), (parse_polynomial("x2.x1 - x1", ("x1", "x2")),))

    def test_dependent_relations_drop_out(self):
        r = parse_polynomial("x2.x1 + x1.x2", ("x1", "x2"))
        rs = make_rewrite_system(Presentation(("x1", "x2"), (r, r.scale(2))))
        assert len(rs.rules) == 1

    def test_rule_validation(self):
        with pytest.raises(RewritingError):
            RewriteRule(W("x1.x2"), parse_polynomial("x2.x1"))
        with pytest.raises(RewritingError):
            RewriteRule(W("x2.x1"), parse_polynomial("x1"))

    def test_shared_lead_rejected(self):
        r = RewriteRule(W("x2.x1"), parse_polynomial("x1.x2"))
        with pytest.raises(RewritingError):
            RewriteSystem([r, RewriteRule(W("x2.x1"), parse_polynomial("-x1.x2"))])

    def test_mixed_degrees_interreduced(self):
        rs = k_system(1)
        extra = [NcPolynomial.gen(0), NcPolynomial.gen(1)]
        q = make_rewrite_system(build_double_extension(family_K(1)).with_relations(extra))
        assert q.certified()
        assert q.hilbert_coefficients(5) == [d + 1 for d in range(6)]
        assert rs.hilbert_coefficients(1) == [1, 4]


class TestNormalForm:
    def test_y2_y1_x2(self, alpha):
        rs = k_system(alpha)
        nf = rs.normal_form(NcPolynomial.monomial(W("y2.y1.x2")))
        assert nf == NcPolynomial.monomial(W("x2.y1.y2"), alpha)
        assert all_reduction_results(rs.rules, NcPolynomial.monomial(W("y2.y1.x2"))) == {nf}

    def test_every_short_word_confluent(self, rs_K1):
        for d in range(4):
            for w in words(4, d):
                p = NcPolynomial.monomial(w, Fraction(1))
                assert all_reduction_results(rs_K1.rules, p) == {rs_K1.normal_form(p)}

    def test_normal_forms_are_normal(self, rs_K1):
        rng = random.Random(3)
        for _ in range(100):
            nf = rs_K1.normal_form(random_polynomial(rng))
            assert all(rs_K1.is_normal(w) for w in nf.words())

    def test_prime_field(self):
        F = PrimeField(101)
        rs = make_rewrite_system(build_double_extension(family_K(F("3/5"), F)))
        nf = rs.normal_form(NcPolynomial.monomial(W("y2.x2"), F(1)))
        assert nf.coefficient(W("x2.y1")) * 5 == 3


class TestOverlaps:
    def test_family_K_overlaps(self, rs_K):
        ovs = rs_K.critical_overlaps(6)
        assert sorted(rs_K.render_word(o.word, False) for o in ovs) == [
            "y1.x2.x1", "y2.x2.x1", "y2.y1.x1", "y2.y1.x2"]
        rep = rs_K.gs_basis_check(6)
        assert rep.resolvable and not rep.failures
        assert rs_K.certified()

    def test_overlaps_brute_force(self, rs_K1):
        leads = {r.lead for r in rs_K1.rules}
        brute = set()
        for w in words(4, 3):
            if w[:2] in leads and w[1:] in leads:
                brute.add(w)
        assert {o.word for o in rs_K1.critical_overlaps(6)} == brute

    def test_bad_system_reports_residue(self):
        rules = [RewriteRule(W("x2.x1"), parse_polynomial("x1.x2 + x1.x1")),
                 RewriteRule(W("y1.x2"), parse_polynomial("x2.y1")),
                 RewriteRule(W("y1.x1"), parse_polynomial("2*x1.y1"))]
        rs = RewriteSystem(rules)
        rep = rs.gs_basis_check(3)
        assert not rep.resolvable
        assert [rs.render_word(o.word, False) for o, _ in rep.failures] == ["y1.x2.x1"]
        residue = rep.failures[0][1]
        assert residue == parse_polynomial("-2*x1.x1.y1")
        assert not rs.certified()
        with pytest.raises(UncertifiedSystemError):
            rs.require_certified()


class TestHilbert:
    def test_family_K(self, rs_K):
        assert rs_K.hilbert_coefficients(12) == [comb(d + 3, 3) for d in range(13)]

    def test_base_algebras(self):
        for q12, q11 in [(-1, 0), (1, 1), (Fraction(2, 3), 0)]:
            rs = make_rewrite_system(build_base_algebra(BaseData(Fraction(q12), Fraction(q11))))
            assert rs.certified()
            assert rs.hilbert_coefficients(12) == [d + 1 for d in range(13)]

    def test_free_algebra(self):
        assert free_system().hilbert_coefficients(4) == [1, 4, 16, 64, 256]

    def test_degree_two_basis(self, rs_K1):
        got = [rs_K1.render_word(w) for w in rs_K1.normal_monomials(2)]
        assert got == ["x1^2", "x1*x2", "x1*y1", "x1*y2", "x2^2", "x2*y1", "x2*y2",
                       "y1^2", "y1*y2", "y2^2"]


# property checks with hypothesis

terms = st.dictionaries(
    st.lists(st.integers(0, 3), max_size=6).map(tuple),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=5)
polys = terms.map(NcPolynomial)
alphas = st.sampled_from(ALPHAS)

SYSTEMS = {a: k_system(a) for a in ALPHAS}


@settings(max_examples=60, deadline=None)
@given(polys, alphas)
def test_idempotent(p, a):
    rs = SYSTEMS[a]
    nf = rs.normal_form(p)
    assert rs.normal_form(nf) == nf


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.fractions(min_value=-3, max_value=3, max_denominator=4), alphas)
def test_linear(p, q, c, a):
    rs = SYSTEMS[a]
    assert rs.normal_form(p + q.scale(c)) == rs.normal_form(p) + rs.normal_form(q).scale(c)


@settings(max_examples=40, deadline=None)
@given(polys, alphas, st.integers(0, 10 ** 6))
def test_confluent_random_order(p, a, seed):
    rs = SYSTEMS[a]
    assert reduce_random_order(rs.rules, p, random.Random(seed)) == rs.normal_form(p)


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys, alphas)
def test_associative(p, q, r, a):
    rs = SYSTEMS[a]
    assert rs.multiply(rs.multiply(p, q), r) == rs.multiply(p, rs.multiply(q, r))
