import pytest
from hypothesis import given, settings, strategies as st

from chamberforms.polyring import (ExactDivisionError, IntPoly, ONE, ZERO,
                                   PolyMatrix, const, det_by_expansion,
                                   exact_div, int_det, poly_det, poly_eval,
                                   poly_pow, q_integer)

coeff_lists = st.lists(st.integers(-50, 50), max_size=8)


def schoolbook_mul(a, b):
    if not a.coeffs or not b.coeffs:
        return ZERO
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return IntPoly(out)


class TestIntPoly:
    def test_normalization_strips_trailing_zeros(self):
        assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
        assert IntPoly([0, 0]).coeffs == ()

    def test_zero_degree_sentinel(self):
        assert ZERO.degree is None
        assert IntPoly([5]).degree == 0

    def test_arithmetic(self):
        p = IntPoly([1, 1])
        assert p + p == IntPoly([2, 2])
        assert p - p == ZERO
        assert -p == IntPoly([-1, -1])
        assert p * p == IntPoly([1, 2, 1])

    def test_shift_and_scale(self):
        assert IntPoly([1, 2]).shifted(2) == IntPoly([0, 0, 1, 2])
        assert IntPoly([1, 2]).scaled(-3) == IntPoly([-3, -6])

    def test_equality_with_int(self):
        assert const(7) == 7
        assert ZERO == 0

    @given(coeff_lists, coeff_lists)
    @settings(deadline=None)
    def test_mul_matches_schoolbook(self, a, b):
        pa, pb = IntPoly(a), IntPoly(b)
        assert pa * pb == schoolbook_mul(pa, pb)

    @given(coeff_lists, coeff_lists)
    @settings(deadline=None)
    def test_mul_with_large_coefficients(self, a, b):
        pa = IntPoly([c * 10 ** 30 + 7 for c in a])
        pb = IntPoly([c * 10 ** 21 - 3 for c in b])
        assert pa * pb == schoolbook_mul(pa, pb)


class TestQInteger:
    def test_one(self):
        assert q_integer(1) == ONE

    def test_two(self):
        assert q_integer(2) == IntPoly([1, 0, 1])

    def test_four(self):
        assert q_integer(4) == IntPoly([1, 0, 1, 0, 1, 0, 1])

    def test_degree_and_coefficients(self):
        for n in range(1, 12):
            p = q_integer(n)
            assert p.degree == 2 * n - 2
            assert set(p.coeffs) <= {0, 1}

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            q_integer(0)

    def test_evaluates_to_n_at_one(self):
        for n in range(1, 40):
            assert poly_eval(q_integer(n), 1) == n


class TestEval:
    def test_examples(self):
        assert poly_eval(IntPoly([1, 0, 1]), 1) == 2
        assert poly_eval(q_integer(4), 1) == 4
        assert poly_eval(IntPoly([1, 0, 2, 0, 1]), 2) == 25

    @given(coeff_lists, st.integers(-9, 9))
    @settings(deadline=None)
    def test_horner_matches_powers(self, a, x):
        p = IntPoly(a)
        assert poly_eval(p, x) == sum(c * x ** k for k, c in enumerate(p.coeffs))


class TestExactDiv:
    @given(coeff_lists, coeff_lists)
    @settings(deadline=None)
    def test_product_roundtrip(self, a, b):
        pa, pb = IntPoly(a), IntPoly(b)
        if pb.is_zero():
            return
        assert exact_div(pa * pb, pb) == pa

    def test_inexact_raises(self):
        with pytest.raises(ExactDivisionError):
            exact_div(IntPoly([1, 0, 1]), IntPoly([1, 1]))

    def test_division_by_zero_raises(self):
        with pytest.raises(ExactDivisionError):
            exact_div(ONE, ZERO)


class TestIntDet:
    def test_examples(self):
        assert int_det([[3, 1], [1, 3]]) == 8
        assert int_det([[3, -2], [-2, 4]]) == 8
        assert int_det([[3]]) == 3
        assert int_det([]) == 1

    def test_singular(self):
        assert int_det([[1, 2], [2, 4]]) == 0

    def test_needs_pivoting(self):
        assert int_det([[0, 1], [1, 0]]) == -1

    @given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                    min_size=4, max_size=4))
    @settings(deadline=None)
    def test_matches_permutation_sum(self, rows):
        expected = det_by_expansion([[const(x) for x in row] for row in rows])
        assert const(int_det(rows)) == expected


class TestPolyDet:
    def test_constant_examples(self):
        assert poly_det([[const(2), const(-1)], [const(-1), const(2)]]) == 3
        eye = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
        assert poly_det(eye) == 1

    def test_example17_matrix(self):
        h1 = IntPoly([1, 0, 1, 0, 1])        # diagonal of the triangle chamber
        off = IntPoly([0, -1, 0, -1])        # -q(1+q^2)
        h2 = IntPoly([1, 0, 2, 0, 1])
        det = poly_det([[h1, off], [off, h2]])
        assert det == q_integer(4) * q_integer(2)

    def test_empty_matrix(self):
        assert poly_det([]) == ONE

    def test_zero_column_short_circuit(self):
        m = [[ZERO, ONE], [ZERO, ONE]]
        assert poly_det(m) == ZERO

    def test_constant_embedding_agrees_with_int_det(self):
        rows = [[5, -3, 2], [1, 0, -4], [2, 2, 2]]
        assert poly_det([[const(x) for x in r] for r in rows]) == int_det(rows)

    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.lists(st.integers(-4, 4), max_size=3),
                     min_size=n, max_size=n),
            min_size=n, max_size=n)))
    @settings(deadline=None, max_examples=60)
    def test_matches_laplace_oracle(self, rows):
        mat = [[IntPoly(e) for e in row] for row in rows]
        assert poly_det(mat) == det_by_expansion(mat)

    def test_block_diagonal_multiplicativity(self):
        import random
        rng = random.Random(5)
        for _ in range(10):
            na, nb = rng.randint(1, 3), rng.randint(1, 3)
            a = [[IntPoly([rng.randint(-3, 3) for _ in range(2)])
                  for _ in range(na)] for _ in range(na)]
            b = [[IntPoly([rng.randint(-3, 3) for _ in range(2)])
                  for _ in range(nb)] for _ in range(nb)]
            block = [[a[i][j] if i < na and j < na else
                      b[i - na][j - na] if i >= na and j >= na else ZERO
                      for j in range(na + nb)] for i in range(na + nb)]
            assert poly_det(block) == poly_det(a) * poly_det(b)


class TestPolyMatrix:
    def test_shape_and_label_validation(self):
        with pytest.raises(ValueError):
            PolyMatrix(("a", "a"), [[ONE, ZERO], [ZERO, ONE]])
        with pytest.raises(ValueError):
            PolyMatrix(("a", "b"), [[ONE]])

    def test_serialization_form(self):
        assert IntPoly([1, 0, -2]).coeff_strings() == ["1", "0", "-2"]
        assert ZERO.coeff_strings() == ["0"]


def test_poly_pow():
    assert poly_pow(q_integer(2), 3) == q_integer(2) * q_integer(2) * q_integer(2)
    assert poly_pow(q_integer(5), 0) == ONE
