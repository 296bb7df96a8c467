import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from facevol.linalg import (
    Polynomial,
    RationalMatrix,
    char_poly,
    det_fraction_free,
    eigen_multiplicity,
    exact_sqrt,
    format_rational,
    parse_rational,
    poly_divides,
    rank,
)
from facevol.spectral import build_gram, divisor_matrix

from oracles import (
    charpoly_by_cofactors,
    cofactor_det,
    rationals,
    square_matrices,
    sympy_rank,
)


def seeded_matrix(side, rng, max_num=6, max_den=3):
    return RationalMatrix(
        [
            [
                Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
                for _ in range(side)
            ]
            for _ in range(side)
        ]
    )


class TestDeterminant:
    def test_identity(self):
        assert det_fraction_free(RationalMatrix.identity(3)) == 1

    def test_3x3_example(self):
        m = RationalMatrix([[3, 6, 0], [1, 6, 2], [0, 4, 5]])
        assert cofactor_det([list(r) for r in m.rows]) == 36
        assert det_fraction_free(m) == 36

    def test_proportional_rows(self):
        assert det_fraction_free(RationalMatrix([[1, 2], [2, 4]])) == 0

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            det_fraction_free(RationalMatrix([[1, 2, 3], [4, 5, 6]]))

    @given(square_matrices(max_side=4))
    def test_agrees_with_cofactor_expansion(self, m):
        assert det_fraction_free(m) == cofactor_det([list(r) for r in m.rows])

    @given(st.integers(min_value=1, max_value=3), st.data())
    def test_multiplicative(self, side, data):
        entries = st.lists(
            st.lists(rationals(max_num=4, max_den=2), min_size=side, max_size=side),
            min_size=side,
            max_size=side,
        )
        a = RationalMatrix(data.draw(entries))
        b = RationalMatrix(data.draw(entries))
        assert det_fraction_free(a @ b) == det_fraction_free(a) * det_fraction_free(b)


class TestCharPoly:
    def test_identity_2x2(self):
        # x^2 - 2x + 1
        assert char_poly(RationalMatrix.identity(2)) == Polynomial([1, -2, 1])

    def test_zero_2x2(self):
        assert char_poly(RationalMatrix([[0, 0], [0, 0]])) == Polynomial([0, 0, 1])

    def test_divisor_n4(self):
        # x^3 - 14x^2 + 49x - 36, cross-checked by polynomial cofactor expansion
        d = divisor_matrix(4)
        expected = Polynomial([-36, 49, -14, 1])
        assert charpoly_by_cofactors(d) == expected
        assert char_poly(d) == expected

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            char_poly(RationalMatrix([[1, 2]]))

    @given(square_matrices(max_side=4))
    def test_agrees_with_cofactor_route(self, m):
        assert char_poly(m) == charpoly_by_cofactors(m)

    @pytest.mark.parametrize("side", [5])
    def test_agrees_with_cofactor_route_side5(self, side):
        rng = random.Random(2024)
        for _ in range(3):
            m = seeded_matrix(side, rng)
            assert char_poly(m) == charpoly_by_cofactors(m)

    @pytest.mark.parametrize("side", range(1, 7))
    def test_cayley_hamilton(self, side):
        rng = random.Random(side)
        zero = RationalMatrix([[0] * side for _ in range(side)])
        for _ in range(3):
            m = seeded_matrix(side, rng)
            assert char_poly(m).evaluate_matrix(m) == zero

    def test_integer_and_fraction_paths_agree(self):
        from facevol.linalg import _charpoly_fracs, _charpoly_ints

        rng = random.Random(7)
        for side in (2, 3, 4, 5):
            m = seeded_matrix(side, rng, max_den=1)
            ints = _charpoly_ints([[x.numerator for x in row] for row in m.rows], side)
            fracs = _charpoly_fracs([list(row) for row in m.rows], side)
            assert ints == fracs


class TestRank:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_identity(self, k):
        assert rank(RationalMatrix.identity(k)) == k

    def test_all_ones(self):
        assert rank(RationalMatrix([[1, 1, 1]] * 3)) == 1

    def test_gram_shift_nullity(self):
        shifted = build_gram(4).shifted(1)
        assert sympy_rank(shifted) == 5
        assert rank(shifted) == 5

    @given(
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=1, max_value=4),
        st.data(),
    )
    def test_rank_nullity(self, nr, nc, data):
        m = RationalMatrix(
            data.draw(
                st.lists(
                    st.lists(rationals(max_num=3, max_den=2), min_size=nc, max_size=nc),
                    min_size=nr,
                    max_size=nr,
                )
            )
        )
        r = rank(m)
        assert r == sympy_rank(m)
        nullity = m.ncols - r
        assert r + nullity == m.ncols
        assert 0 <= r <= min(nr, nc)


class TestEigenMultiplicity:
    def test_identity(self):
        assert eigen_multiplicity(RationalMatrix.identity(4), 1) == 4

    def test_gram_n4(self):
        gram = build_gram(4)
        assert eigen_multiplicity(gram, 4) == 4
        assert eigen_multiplicity(gram, 7) == 0


class TestPolynomials:
    def test_divides_trivial(self):
        assert poly_divides(Polynomial([-1, 1]), Polynomial([-1, 0, 1]))
        assert not poly_divides(Polynomial([0, 0, 1]), Polynomial([0, 1]))

    def test_zero_divisor_rejected(self):
        with pytest.raises(ValueError):
            poly_divides(Polynomial([0]), Polynomial([1, 1]))

    def test_divisor_charpoly_divides_gram_charpoly(self):
        assert poly_divides(char_poly(divisor_matrix(4)), char_poly(build_gram(4)))

    def test_from_roots(self):
        assert Polynomial.from_roots([1, 1]) == Polynomial([1, -2, 1])

    def test_normalization(self):
        assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
        assert Polynomial([0, 0]).is_zero
        assert Polynomial([0]).degree == -1

    @given(
        st.lists(rationals(), min_size=1, max_size=5).map(Polynomial),
        st.lists(rationals(), min_size=1, max_size=4).map(Polynomial),
    )
    def test_divmod_reconstructs(self, p, d):
        if d.is_zero:
            return
        q, r = divmod(p, d)
        assert q * d + r == p
        assert r.is_zero or r.degree < d.degree

    def test_evaluate(self):
        p = Polynomial([-36, 49, -14, 1])
        assert p.evaluate(9) == 0
        assert p.evaluate(2) == Fraction(-36 + 98 - 56 + 8)


class TestRationalFormat:
    def test_format(self):
        assert format_rational(Fraction(3, 4)) == "3/4"
        assert format_rational(Fraction(-5)) == "-5"
        assert format_rational(7) == "7"

    @given(rationals(max_num=100, max_den=40))
    def test_roundtrip(self, x):
        assert parse_rational(format_rational(x)) == x

    def test_exact_sqrt(self):
        assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert exact_sqrt(Fraction(2)) is None
        assert exact_sqrt(Fraction(-1)) is None


class TestMatrixBasics:
    def test_constructor_rejects_ragged(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 2], [3]])

    def test_constructor_rejects_empty(self):
        with pytest.raises(ValueError):
            RationalMatrix([])

    def test_matmul_shape_check(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 2]]) @ RationalMatrix([[1, 2]])

    def test_transpose_and_symmetry(self):
        m = RationalMatrix([[1, 2], [2, 5]])
        assert m.is_symmetric()
        assert m.transpose() == m
        assert not RationalMatrix([[1, 2], [3, 4]]).is_symmetric()

    def test_mul_vector(self):
        m = RationalMatrix([[1, 2], [3, 4]])
        assert m.mul_vector((1, 1)) == (3, 7)

    def test_shifted(self):
        m = RationalMatrix([[2, 1], [1, 2]])
        assert m.shifted(2) == RationalMatrix([[0, 1], [1, 0]])
