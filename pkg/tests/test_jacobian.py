import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facevol.geometry import EdgeLengthAssignment, squared_volume
from facevol.jacobian import (
    d_sqvol_d_sqlen,
    fd_crosscheck,
    independence_certificate,
    jacobian_squared_map,
    scaled_jacobian_at_regular,
)
from facevol.linalg import RationalMatrix, det_fraction_free
from facevol.subsets import build_incidence_matrix, subsets_colex

from oracles import sympy_rank


def exact_central_difference(E, face, edge, h=Fraction(1, 7)):
    """Independent derivative oracle: the squared volume is a polynomial of
    degree <= 2 in each squared length, so the exact rational central
    difference equals the derivative for any step."""
    up = squared_volume(E.with_squared(edge, E.squared(*edge) + h), face)
    down = squared_volume(E.with_squared(edge, E.squared(*edge) - h), face)
    return (up - down) / (2 * h)


def seeded_point(n, seed, spread=2):
    rng = random.Random(seed)
    sq = {
        e: Fraction(16 + rng.randint(-spread, spread), 16)
        for e in subsets_colex(n + 1, 2)
    }
    return EdgeLengthAssignment(n, sq)


class TestPartials:
    def test_unit_triangle_edge(self):
        E = EdgeLengthAssignment.regular(4)
        # Heron: 16 V^2 = 2xy + 2yz + 2zx - x^2 - y^2 - z^2, so at x=y=z=1
        # the partial in each variable is (2 + 2 - 2)/16 = 1/8
        assert exact_central_difference(E, (1, 2, 3), (1, 2)) == Fraction(1, 8)
        assert d_sqvol_d_sqlen(E, (1, 2, 3), (1, 2)) == Fraction(1, 8)

    def test_disjoint_edge_is_zero(self):
        E = EdgeLengthAssignment.regular(4)
        assert d_sqvol_d_sqlen(E, (1, 2, 3), (4, 5)) == 0

    def test_triangle_symmetry(self):
        E = EdgeLengthAssignment.regular(4)
        partials = {
            d_sqvol_d_sqlen(E, (1, 2, 3), e) for e in [(1, 2), (1, 3), (2, 3)]
        }
        assert partials == {Fraction(1, 8)}

    def test_rejects_malformed(self):
        E = EdgeLengthAssignment.regular(4)
        with pytest.raises(ValueError):
            d_sqvol_d_sqlen(E, (1, 2), (1, 2))  # not a codim-2 face
        with pytest.raises(ValueError):
            d_sqvol_d_sqlen(E, (1, 2, 3), (1, 2, 3))

    @settings(max_examples=30)
    @given(
        st.integers(min_value=0, max_value=10_000),
        st.sampled_from([(1, 2, 3), (1, 3, 5), (2, 4, 5)]),
        st.sampled_from([(1, 2), (1, 3), (3, 5), (4, 5), (2, 4)]),
    )
    def test_matches_exact_difference_quotient(self, seed, face, edge):
        E = seeded_point(4, seed)
        assert d_sqvol_d_sqlen(E, face, edge) == exact_central_difference(
            E, face, edge
        )

    @pytest.mark.parametrize("n", [4, 5])
    def test_euler_homogeneity_identity(self, n):
        # degree n-2 homogeneity of the squared volume in the squared lengths
        for seed in (0, 1):
            E = seeded_point(n, seed)
            for face in list(subsets_colex(n + 1, n - 1))[:4]:
                total = sum(
                    E.squared(*e) * d_sqvol_d_sqlen(E, face, e)
                    for e in subsets_colex(n + 1, 2)
                )
                assert total == (n - 2) * squared_volume(E, face)


class TestJacobianMatrix:
    def test_regular_n4_entries(self):
        jac = jacobian_squared_map(EdgeLengthAssignment.regular(4))
        m = build_incidence_matrix(4)
        assert jac == m.scaled(Fraction(1, 8))

    def test_regular_n3_identity(self):
        jac = jacobian_squared_map(EdgeLengthAssignment.regular(3))
        assert jac == RationalMatrix.identity(6)

    def test_sparsity_equals_incidence_support(self):
        E = seeded_point(4, 99)
        jac = jacobian_squared_map(E)
        m = build_incidence_matrix(4)
        for i in range(10):
            for j in range(10):
                assert (jac[i, j] != 0) == (m[i, j] == 1)

    def test_rejects_degenerate(self):
        E = EdgeLengthAssignment.regular(4).with_squared((1, 2), Fraction(100))
        with pytest.raises(ValueError):
            jacobian_squared_map(E)


class TestScaledJacobian:
    def test_entry_arithmetic_n4(self):
        # per-entry: (n-1)/(2 F^2) * dV^2 = 3 * (1/8) / (2 * 3/16) = 1
        scale = Fraction(3) / (2 * Fraction(3, 16))
        assert scale * Fraction(1, 8) == 1

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_equals_incidence_matrix(self, n):
        assert scaled_jacobian_at_regular(n) == build_incidence_matrix(n)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            scaled_jacobian_at_regular(2)


class TestIndependenceCertificate:
    def test_n4_regular_point_only(self):
        # the incidence determinant is 48, so rank 10 is forced
        m = build_incidence_matrix(4)
        assert det_fraction_free(m) != 0
        cert = independence_certificate(4)
        assert cert.ranks == (10,)
        assert cert.full_rank == 10
        assert cert.verdict
        assert cert.scaling_constant_squared == Fraction(1, 12)

    def test_n3_identity(self):
        cert = independence_certificate(3)
        assert cert.ranks == (6,)
        assert cert.verdict

    def test_n4_three_samples_seed_42(self):
        cert = independence_certificate(4, extra_samples=3, seed=42)
        assert len(cert.points) == 4
        assert cert.ranks == (10, 10, 10, 10)
        assert cert.verdict

    def test_deterministic_given_seed(self):
        a = independence_certificate(4, extra_samples=3, seed=42)
        b = independence_certificate(4, extra_samples=3, seed=42)
        assert a == b
        c = independence_certificate(4, extra_samples=3, seed=43)
        assert c.points != a.points

    def test_sample_grid_and_nondegeneracy(self):
        cert = independence_certificate(5, extra_samples=2, seed=7)
        allowed = {Fraction(16 + k, 16) for k in range(-2, 3)}
        for point in cert.points[1:]:
            assert set(point.squared_lengths.values()) <= allowed

    def test_rank_agrees_with_sympy(self):
        cert = independence_certificate(4, extra_samples=1, seed=5)
        for point, rk in zip(cert.points, cert.ranks):
            assert sympy_rank(jacobian_squared_map(point)) == rk


class TestFdCrosscheck:
    @pytest.mark.parametrize("n", [4, 5])
    def test_small_deviation_at_default_step(self, n):
        dev = fd_crosscheck(EdgeLengthAssignment.regular(n), 1e-4)
        assert dev <= 1e-5

    def test_second_order_convergence(self):
        E = EdgeLengthAssignment.regular(4)
        coarse = fd_crosscheck(E, 2e-2)
        fine = fd_crosscheck(E, 1e-2)
        assert 3.0 < coarse / fine < 5.0

    def test_rejects_bad_input(self):
        E = EdgeLengthAssignment.regular(4)
        with pytest.raises(ValueError):
            fd_crosscheck(E, 0.0)
        with pytest.raises(ValueError):
            fd_crosscheck(E.with_squared((1, 2), Fraction(100)), 1e-4)
