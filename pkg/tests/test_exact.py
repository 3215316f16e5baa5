"""Tests for raaghom.exact: rank, solve, nullspace, Smith normal form."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from raaghom.exact import (
    F2,
    QQ,
    ExactMatrix,
    FieldSpec,
    IntMatrix,
    SmithForm,
    betti_from_boundaries,
    nullspace,
    rank,
    smith_normal_form,
    solve,
)

from oracles import (
    bareiss_determinant,
    brute_force_has_solution,
    dense_rank_mod_p,
    dense_rank_rationals,
)

F3 = FieldSpec.prime_field(3)
F5 = FieldSpec.prime_field(5)


def random_int_matrix(rng, rows, cols, density=0.5, lo=-4, hi=4):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                v = rng.randint(lo, hi)
                if v:
                    entries[(r, c)] = v
    return IntMatrix(rows, cols, entries)


def dense_rows(m: IntMatrix) -> list[list[int]]:
    return [[m.entry(r, c) for c in range(m.cols)] for r in range(m.rows)]


class TestFieldSpec:
    def test_tokens_round_trip(self):
        for tok in ["Q", "F2", "F3", "F97"]:
            assert FieldSpec.from_token(tok).token() == tok

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec.prime_field(6)
        with pytest.raises(ValueError):
            FieldSpec.from_token("F4")

    def test_fraction_coercion_mod_p(self):
        assert F3.of(Fraction(1, 2)) == 2  # 1/2 = 2 mod 3
        with pytest.raises(ZeroDivisionError):
            F2.of(Fraction(1, 2))


class TestRank:
    def test_empty_matrix(self):
        assert rank(ExactMatrix.zeros(0, 0, QQ)) == 0

    def test_identity_over_f2(self):
        assert rank(ExactMatrix.identity(3, F2)) == 3

    def test_rank_drop_under_specialisation(self):
        # [[2,4],[1,2]] has rank 1 over Q; over F_2 it reduces to
        # [[0,0],[1,0]] which still has rank 1
        data = [[2, 4], [1, 2]]
        assert dense_rank_rationals([[Fraction(v) for v in row] for row in data]) == 1
        assert dense_rank_mod_p(data, 2) == 1
        assert rank(ExactMatrix.from_rows(data, QQ)) == 1
        assert rank(ExactMatrix.from_rows(data, F2)) == 1
        # a matrix that genuinely dies mod 2
        dead = [[2, 4], [6, 2]]
        assert rank(ExactMatrix.from_rows(dead, QQ)) == 2
        assert rank(ExactMatrix.from_rows(dead, F2)) == 0

    def test_matches_dense_oracle_random(self):
        rng = random.Random(20240811)
        for _ in range(60):
            m = random_int_matrix(rng, rng.randint(0, 7), rng.randint(0, 7))
            rows = dense_rows(m)
            assert rank(m.over_field(QQ)) == dense_rank_rationals(
                [[Fraction(v) for v in row] for row in rows]
            )
            for p in (2, 3, 5):
                fp = FieldSpec.prime_field(p)
                assert rank(m.over_field(fp)) == dense_rank_mod_p(rows, p)

    def test_rank_equals_rank_of_transpose(self):
        rng = random.Random(7)
        for _ in range(40):
            m = random_int_matrix(rng, rng.randint(0, 6), rng.randint(0, 6))
            for field in (QQ, F2, F3):
                em = m.over_field(field)
                assert rank(em) == rank(em.transpose())

    def test_rank_over_q_at_least_rank_mod_p(self):
        rng = random.Random(99)
        for _ in range(40):
            m = random_int_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), lo=-6, hi=6)
            rq = rank(m.over_field(QQ))
            for p in (2, 3, 5):
                assert rq >= rank(m.over_field(FieldSpec.prime_field(p)))


class TestSolve:
    def test_identity(self):
        m = ExactMatrix.identity(4, QQ)
        b = [Fraction(3), Fraction(-1), Fraction(0), Fraction(7, 2)]
        assert solve(m, b) == b

    def test_zero_matrix_no_solution(self):
        m = ExactMatrix.zeros(2, 3, F2)
        assert solve(m, [1, 0]) is None
        assert solve(m, [0, 0]) == [0, 0, 0]

    def test_odd_support_sum_over_f2(self):
        m = ExactMatrix.from_rows([[1, 1]], F2)
        x = solve(m, [1])
        assert x is not None
        assert sum(x) % 2 == 1
        assert m.mul_vector(x) == [1]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve(ExactMatrix.identity(2, QQ), [Fraction(1)])

    def test_solutions_verified_and_failures_brute_forced(self):
        rng = random.Random(4242)
        for _ in range(80):
            rows_n = rng.randint(1, 4)
            cols_n = rng.randint(1, 5)
            p = rng.choice((2, 3))
            fp = FieldSpec.prime_field(p)
            m = random_int_matrix(rng, rows_n, cols_n, density=0.6, lo=0, hi=p - 1)
            b = [rng.randrange(p) for _ in range(rows_n)]
            x = solve(m.over_field(fp), b)
            if x is not None:
                assert m.over_field(fp).mul_vector(x) == [v % p for v in b]
            else:
                assert not brute_force_has_solution(dense_rows(m), b, p, cols_n)

    def test_rational_solution_exact(self):
        m = ExactMatrix.from_rows([[2, 1], [1, 3]], QQ)
        x = solve(m, [Fraction(1), Fraction(0)])
        assert x == [Fraction(3, 5), Fraction(-1, 5)]


class TestNullspace:
    def test_dimension_theorem(self):
        rng = random.Random(11)
        for _ in range(30):
            m = random_int_matrix(rng, rng.randint(0, 5), rng.randint(0, 5))
            for field in (QQ, F3):
                em = m.over_field(field)
                basis = nullspace(em)
                assert len(basis) == em.cols - rank(em)
                for vec in basis:
                    assert all(v == 0 for v in em.mul_vector(vec))

    def test_circle_cycle(self):
        # boundary of a 3-cycle graph: kernel is one-dimensional
        d1 = ExactMatrix.from_rows([[-1, 0, 1], [1, -1, 0], [0, 1, -1]], QQ)
        basis = nullspace(d1)
        assert len(basis) == 1


class TestSmithNormalForm:
    def test_diag_2_3(self):
        sf = smith_normal_form(IntMatrix.diagonal([2, 3]))
        assert sf.rank == 2
        assert sf.elementary_divisors == (1, 6)

    def test_zero_matrix(self):
        sf = smith_normal_form(IntMatrix(3, 4, {}))
        assert sf.rank == 0
        assert sf.elementary_divisors == ()

    def test_divisor_chain_enforced_by_type(self):
        with pytest.raises(ValueError):
            SmithForm(rank=2, elementary_divisors=(2, 3))
        with pytest.raises(ValueError):
            SmithForm(rank=1, elementary_divisors=(1, 2))

    def test_product_of_divisors_is_abs_determinant(self):
        rng = random.Random(314)
        done = 0
        while done < 25:
            n = rng.randint(1, 5)
            m = random_int_matrix(rng, n, n, density=0.8, lo=-5, hi=5)
            det = bareiss_determinant(dense_rows(m))
            if det == 0:
                continue
            sf = smith_normal_form(m)
            assert sf.rank == n
            prod = 1
            for d in sf.elementary_divisors:
                prod *= d
            assert prod == abs(det)
            done += 1

    def test_rank_matches_rational_rank(self):
        rng = random.Random(2718)
        for _ in range(30):
            m = random_int_matrix(rng, rng.randint(0, 5), rng.randint(0, 6))
            assert smith_normal_form(m).rank == rank(m.over_field(QQ))

    def test_known_presentation(self):
        # cokernel Z/2 + Z/4: divisors (2, 4) after chain repair
        m = IntMatrix.from_rows([[2, 0], [2, 4]])
        sf = smith_normal_form(m)
        assert sf.elementary_divisors == (2, 4)
        assert sf.torsion_divisors == (2, 4)


class TestBettiFromBoundaries:
    def test_both_zero_shared_dimension(self):
        d_k = ExactMatrix.zeros(3, 5, QQ)
        d_k1 = ExactMatrix.zeros(5, 2, QQ)
        assert betti_from_boundaries(d_k, d_k1) == 5

    def test_circle_one_zero_cell(self):
        d1 = ExactMatrix.zeros(1, 1, QQ)  # the 1-cell maps to v - v = 0
        d2 = ExactMatrix.zeros(1, 0, QQ)
        d0 = ExactMatrix.zeros(0, 1, QQ)
        assert betti_from_boundaries(d0, d1) == 1  # b_0
        assert betti_from_boundaries(d1, d2) == 1  # b_1

    def test_composability_rejected(self):
        with pytest.raises(ValueError):
            betti_from_boundaries(ExactMatrix.zeros(2, 3, QQ), ExactMatrix.zeros(4, 1, QQ))

    def test_nonzero_composition_rejected(self):
        a = ExactMatrix.identity(2, QQ)
        with pytest.raises(ValueError):
            betti_from_boundaries(a, a)


class TestSerialisation:
    def test_json_round_trip(self):
        m = ExactMatrix.from_rows([[Fraction(1, 2), 0], [0, -3]], QQ)
        again = ExactMatrix.from_json_dict(m.to_json_dict())
        assert again == m

    def test_json_round_trip_mod_p(self):
        m = ExactMatrix.from_rows([[1, 2], [0, 1]], F3)
        assert ExactMatrix.from_json_dict(m.to_json_dict()) == m

    def test_no_zero_entries_stored(self):
        m = ExactMatrix(2, 2, F2, {(0, 0): 2, (1, 1): 1})
        assert m.nnz == 1
