"""Tests for raaghom.raags: Salvetti boundaries, quotients, cover homology."""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from raaghom.complexes import SimplicialComplex, flag_completion
from raaghom.exact import F2, QQ, FieldSpec, rank
from raaghom.raags import (
    FiniteQuotient,
    GroupRingElement,
    Raag,
    abelian_quotient,
    cover_betti,
    dfg_betti_raag,
    gradient_sequence,
    graph_product_betti,
    salvetti_boundary,
    specialize,
    weighted_nerve_betti,
)

from fixtures import c4, full_simplex, random_flag_complex, rp2_six, two_points

F3 = FieldSpec.prime_field(3)


def raag_two_points() -> Raag:
    return Raag(two_points())


def raag_edge() -> Raag:
    return Raag(SimplicialComplex("ab", [("a", "b")]))


class TestGroupRingElement:
    def test_free_reduction(self):
        e = GroupRingElement(QQ, {(1, -1, 2): 1})
        assert list(e.terms) == [(2,)]

    def test_mul_and_cancellation(self):
        a = GroupRingElement.generator_minus_one(1, QQ)
        b = GroupRingElement.generator_minus_one(2, QQ)
        prod = a.mul(b)  # (x-1)(y-1) = xy - x - y + 1
        assert len(prod.terms) == 4
        diff = prod.add(b.mul(a).neg())  # xy - yx, nonzero freely
        assert not diff.is_zero()
        assert not diff.normalised_terms(lambda g, h: True)  # zero if x, y commute
        assert diff.normalised_terms(lambda g, h: False)


class TestSalvettiBoundary:
    def test_two_points_d1(self):
        A = raag_two_points()
        d1 = salvetti_boundary(A, 1, QQ)
        assert (d1.rows, d1.cols) == (1, 2)
        assert d1.entry(0, 0) == GroupRingElement(QQ, {(1,): 1, (): -1})
        assert d1.entry(0, 1) == GroupRingElement(QQ, {(2,): 1, (): -1})

    def test_torus_d2_and_composition(self):
        A = raag_edge()
        d1 = salvetti_boundary(A, 1, QQ)
        d2 = salvetti_boundary(A, 2, QQ)
        # d2(e_ab) = (a-1) e_b - (b-1) e_a
        assert d2.entry(0, 0) == GroupRingElement(QQ, {(2,): -1, (): 1})  # row e_a
        assert d2.entry(1, 0) == GroupRingElement(QQ, {(1,): 1, (): -1})  # row e_b
        comp = d1.mul(d2)
        assert not comp.entry(0, 0).is_zero()  # ab - ba does not cancel freely
        assert comp.is_zero_up_to_commutation()

    def test_dd_zero_random_flag_complexes(self):
        rng = random.Random(987)
        for _ in range(20):
            L = random_flag_complex(rng, 8)
            A = Raag(L)
            for k in range(1, L.dim + 2):
                dk = salvetti_boundary(A, k, F2)
                dk1 = salvetti_boundary(A, k + 1, F2)
                assert dk.mul(dk1).is_zero_up_to_commutation()

    def test_non_flag_complex_rejected(self):
        hollow = SimplicialComplex("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        with pytest.raises(ValueError):
            Raag(hollow)


class TestQuotients:
    def test_trivial_quotient(self):
        q = abelian_quotient(raag_two_points(), {})
        assert q.order == 1 and q.transitive

    def test_abelian_two_points(self):
        A = raag_two_points()
        q = abelian_quotient(A, {"a": 3, "b": 3})
        assert q.order == 9
        # generator a shifts the first coordinate
        assert q.action["a"][0] == 1 and q.action["a"][2] == 0

    def test_c4_all_n(self):
        A = Raag(c4())
        q = abelian_quotient(A, {v: 2 for v in c4().vertices})
        assert q.order == 16 and q.transitive

    def test_commutation_validated(self):
        A = raag_edge()
        # transpositions (01) and (12) on three points do not commute
        with pytest.raises(ValueError):
            FiniteQuotient(A, 3, {"a": [1, 0, 2], "b": [0, 2, 1]})
        # but they are fine for non-adjacent generators
        B = raag_two_points()
        q = FiniteQuotient(B, 3, {"a": [1, 0, 2], "b": [0, 2, 1]})
        assert q.transitive

    def test_invalid_permutation_rejected(self):
        with pytest.raises(ValueError):
            FiniteQuotient(raag_two_points(), 2, {"a": [0, 0], "b": [0, 1]})

    def test_missing_generator_rejected(self):
        with pytest.raises(ValueError):
            FiniteQuotient(raag_two_points(), 2, {"a": [1, 0]})


class TestSpecialize:
    def test_trivial_quotient_kills_generator_minus_one(self):
        A = raag_two_points()
        q = abelian_quotient(A, {})
        d1 = salvetti_boundary(A, 1, QQ)
        s = specialize(d1, q)
        assert s.rows == 1 and s.cols == 2 and s.is_zero()

    def test_z2_regular_block(self):
        A = raag_two_points()
        q = FiniteQuotient(A, 2, {"a": [1, 0], "b": [0, 1]})
        m = specialize(salvetti_boundary(A, 1, QQ), q)
        block = [[m.entry(r, c) for c in range(2)] for r in range(2)]
        assert block == [[Fraction(-1), Fraction(1)], [Fraction(1), Fraction(-1)]]
        assert rank(m) == 1

    def test_rank_of_specialised_d1_is_order_minus_one(self):
        A = raag_two_points()
        for n in (1, 2, 3, 4):
            q = abelian_quotient(A, {"a": n, "b": n})
            m = specialize(salvetti_boundary(A, 1, F2), q)
            assert rank(m) == n * n - 1

    def test_specialisation_is_multiplicative(self):
        rng = random.Random(2024)
        A = Raag(c4())
        words = [(), (1,), (2, 3), (-1, 4), (1, 1), (4, -2, 3)]
        for trial in range(10):
            moduli = {v: rng.choice((1, 2, 3)) for v in c4().vertices}
            q = abelian_quotient(A, moduli)
            if q.order > 24:
                continue
            x = GroupRingElement(QQ, {rng.choice(words): rng.randint(-2, 2) for _ in range(3)})
            y = GroupRingElement(QQ, {rng.choice(words): rng.randint(-2, 2) for _ in range(3)})
            mx = _as_matrix(A, x, QQ)
            my = _as_matrix(A, y, QQ)
            lhs = specialize(mx.mul(my), q)
            rhs = specialize(mx, q).mul(specialize(my, q))
            assert lhs == rhs


def _as_matrix(A, elem, field):
    from raaghom.raags import GroupRingMatrix

    return GroupRingMatrix(1, 1, A, field, {(0, 0): elem})


class TestCoverBetti:
    def test_trivial_quotient_full_simplex_is_torus(self):
        for k in (1, 2, 3, 4):
            A = Raag(full_simplex(k))
            q = abelian_quotient(A, {})
            report = cover_betti(A, q, QQ)
            assert list(report.betti) == [comb(k, p) for p in range(k + 1)]

    def test_two_points_free_cover(self):
        A = raag_two_points()
        for n in (1, 2, 3):
            q = abelian_quotient(A, {"a": n, "b": n})
            report = cover_betti(A, q, QQ)
            assert report.betti[0] == 1
            assert report.betti[1] == n * n + 1

    def test_c4_kunneth_cover(self):
        A = Raag(c4())
        for n in (1, 2):
            q = abelian_quotient(A, {v: n for v in c4().vertices})
            report = cover_betti(A, q, F2)
            assert report.betti[2] == (n * n + 1) ** 2

    def test_b0_equals_orbit_count(self):
        A = raag_two_points()
        # intransitive: both generators act as the same 2-cycle on 4 points
        perm = [1, 0, 3, 2]
        q = FiniteQuotient(A, 4, {"a": perm, "b": perm})
        assert q.orbit_count == 2
        report = cover_betti(A, q, QQ)
        assert report.betti[0] == 2

    def test_euler_characteristic_scales(self):
        rng = random.Random(55)
        for _ in range(6):
            L = random_flag_complex(rng, 4)
            A = Raag(L)
            moduli = {v: rng.choice((1, 2)) for v in L.vertices}
            q = abelian_quotient(A, moduli)
            report = cover_betti(A, q, F2)
            chi_base = sum((-1) ** k * L.n_faces(k - 1) for k in range(L.dim + 2))
            chi_cover = sum((-1) ** k * b for k, b in enumerate(report.betti))
            assert chi_cover == q.order * chi_base

    def test_report_json_exact_rationals(self):
        A = raag_two_points()
        q = abelian_quotient(A, {"a": 2, "b": 2})
        obj = cover_betti(A, q, QQ).to_json_dict()
        assert obj["N"] == 4
        assert obj["normalized"][1] == "5/4"


class TestGradientSequence:
    def test_z2_torus_gradient(self):
        A = raag_edge()
        chain = [abelian_quotient(A, {"a": n, "b": n}) for n in (1, 2, 3)]
        vals = gradient_sequence(A, chain, QQ, 1)
        assert vals == [Fraction(2), Fraction(1, 2), Fraction(2, 9)]

    def test_two_points_gradient(self):
        A = raag_two_points()
        chain = [abelian_quotient(A, {"a": n, "b": n}) for n in (1, 2, 3)]
        vals = gradient_sequence(A, chain, F2, 1)
        assert vals == [Fraction(2), Fraction(5, 4), Fraction(10, 9)]

    def test_degree_zero_transitive(self):
        A = raag_two_points()
        chain = [abelian_quotient(A, {"a": n, "b": n}) for n in (1, 2)]
        assert gradient_sequence(A, chain, QQ, 0) == [Fraction(1), Fraction(1, 4)]

    def test_order_monotonicity_enforced(self):
        A = raag_two_points()
        chain = [abelian_quotient(A, {"a": 2, "b": 2}), abelian_quotient(A, {})]
        with pytest.raises(ValueError):
            gradient_sequence(A, chain, QQ, 1)


class TestClosedForms:
    def test_rp2_headline_values(self):
        A = Raag(flag_completion_of_rp2())
        assert dfg_betti_raag(A, F2, 3) == 1
        assert dfg_betti_raag(A, QQ, 3) == 0

    def test_two_points_degree_one(self):
        A = raag_two_points()
        for field in (QQ, F2, F3):
            assert dfg_betti_raag(A, field, 1) == 1

    def test_c4_degree_two(self):
        A = Raag(c4())
        for field in (QQ, F2):
            assert dfg_betti_raag(A, field, 2) == 1

    def test_graph_product_values(self):
        assert graph_product_betti(c4(), QQ, 2) == 1
        for k in range(1, 5):
            assert graph_product_betti(full_simplex(4), QQ, k) == 0
        two_triangles = flag_completion(
            range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        )
        assert graph_product_betti(two_triangles, F2, 1) == 1

    def test_graph_product_requires_flag(self):
        hollow = SimplicialComplex("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        with pytest.raises(ValueError):
            graph_product_betti(hollow, QQ, 1)


def flag_completion_of_rp2():
    from raaghom.complexes import barycentric_subdivision

    return barycentric_subdivision(rp2_six())


class TestWeightedNerve:
    def test_cone_apex_over_c4(self):
        # cone over a 4-cycle: the link of the apex is the 4-cycle
        verts = ["apex", 0, 1, 2, 3]
        edges = [(0, 1), (1, 2), (2, 3), (3, 0)] + [("apex", i) for i in range(4)]
        K = flag_completion(verts, edges)
        assert weighted_nerve_betti(K, {"apex": 1}, QQ, 2) == 1
        assert weighted_nerve_betti(K, {"apex": 2}, QQ, 2) == 2  # linear in the weight

    def test_empty_weight_set(self):
        for p in range(4):
            assert weighted_nerve_betti(c4(), {}, QQ, p) == 0

    def test_adjacent_vertices_rejected(self):
        with pytest.raises(ValueError):
            weighted_nerve_betti(c4(), {0: 1, 1: 1}, QQ, 1)

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError):
            weighted_nerve_betti(c4(), {0: 0}, QQ, 1)
