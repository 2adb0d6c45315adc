import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hhfactor import (
    DenseOrthogonal,
    HouseholderProduct,
    Reflector,
    apply,
    check_orthogonal,
    eigenspace_one_dimension,
    make_reflector,
    materialize,
    same_reflector,
    symmetric_eigendecomposition,
    symmetric_part,
)


def random_product(rng, n, m):
    return HouseholderProduct(
        n, tuple(make_reflector(rng.standard_normal(n)) for _ in range(m))
    )


# ---------------------------------------------------------------- reflectors


def test_make_reflector_normalizes():
    r = make_reflector([4 / 3, 2 / 3, 4 / 3])
    np.testing.assert_allclose(r.u, [2 / 3, 1 / 3, 2 / 3], atol=1e-15)


def test_make_reflector_keeps_unit_canonical_input():
    r = make_reflector([0.0, 0.0, 1.0])
    np.testing.assert_array_equal(r.u, [0.0, 0.0, 1.0])


def test_make_reflector_canonicalizes_sign():
    r = make_reflector([-1.0, 0.0])
    np.testing.assert_array_equal(r.u, [1.0, 0.0])


def test_make_reflector_rejects_zero():
    with pytest.raises(ValueError, match="degenerate reflector"):
        make_reflector(np.zeros(4))


def test_reflector_rejects_non_unit():
    with pytest.raises(ValueError, match="unit norm"):
        Reflector(np.array([1.0, 1.0]))


def test_reflector_direction_is_read_only():
    r = make_reflector([3.0, 4.0])
    with pytest.raises(ValueError):
        r.u[0] = 0.0


def test_same_reflector_identifies_signs():
    rng = np.random.default_rng(0)
    v = rng.standard_normal(9)
    assert same_reflector(make_reflector(v), make_reflector(-v))
    assert not same_reflector(make_reflector(v), make_reflector(rng.standard_normal(9)))


@settings(deadline=None)
@given(
    arrays(
        np.float64,
        st.integers(2, 16),
        elements=st.floats(-1e3, 1e3, allow_nan=False),
    ).filter(lambda v: np.linalg.norm(v) > 1e-3)
)
def test_sign_of_input_does_not_matter(v):
    assert np.array_equal(make_reflector(v).u, make_reflector(-v).u)


# ------------------------------------------------------------------- apply


def test_apply_empty_product_is_identity():
    p = HouseholderProduct(3)
    np.testing.assert_array_equal(apply(p, [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])


def test_apply_single_reflector_worked_example():
    p = HouseholderProduct(3, (make_reflector([2 / 3, 1 / 3, 2 / 3]),))
    np.testing.assert_allclose(
        apply(p, [1.0, 1.0, 0.0]), [-1 / 3, 1 / 3, -4 / 3], atol=1e-15
    )


def test_apply_matches_dense_product():
    rng = np.random.default_rng(1)
    p = random_product(rng, 12, 3)
    x = rng.standard_normal(12)
    np.testing.assert_allclose(
        apply(p, x),
        materialize(p) @ x,
        atol=1e-10 * np.sqrt(12) * np.linalg.norm(x),
    )


def test_apply_rejects_dimension_mismatch():
    p = HouseholderProduct(3, (make_reflector([1.0, 0.0, 0.0]),))
    with pytest.raises(ValueError, match="dimension mismatch"):
        apply(p, np.ones(4))


@settings(deadline=None, max_examples=50)
@given(st.integers(2, 64), st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_apply_agrees_with_materialize_randomized(n, m, seed):
    rng = np.random.default_rng(seed)
    p = random_product(rng, n, min(m, n))
    x = rng.standard_normal(n)
    np.testing.assert_allclose(
        apply(p, x), materialize(p) @ x, atol=1e-9 * max(np.linalg.norm(x), 1.0)
    )


@settings(deadline=None, max_examples=50)
@given(st.integers(2, 32), st.integers(0, 2**32 - 1))
def test_single_reflection_is_an_involution(n, seed):
    rng = np.random.default_rng(seed)
    p = random_product(rng, n, 1)
    x = rng.standard_normal(n)
    np.testing.assert_allclose(
        apply(p, apply(p, x)), x, atol=1e-10 * max(np.linalg.norm(x), 1.0)
    )


# -------------------------------------------------------------- materialize


def test_materialize_single_reflector(reflection_3x3):
    p = HouseholderProduct(3, (make_reflector([2 / 3, 1 / 3, 2 / 3]),))
    np.testing.assert_allclose(materialize(p), reflection_3x3, atol=1e-15)


def test_materialize_empty_product():
    np.testing.assert_array_equal(materialize(HouseholderProduct(4)), np.eye(4))


def test_materialize_orthogonal_directions_commute_to_a_sum():
    u1 = make_reflector([1.0, 0.0, 0.0, 0.0])
    u2 = make_reflector([0.0, 0.0, 3.0, 4.0])
    p = HouseholderProduct(4, (u1, u2))
    expected = np.eye(4) - 2 * np.outer(u1.u, u1.u) - 2 * np.outer(u2.u, u2.u)
    np.testing.assert_allclose(materialize(p), expected, atol=1e-15)


def test_materialized_product_is_orthogonal():
    rng = np.random.default_rng(2)
    for n, m in [(5, 2), (16, 16), (33, 7)]:
        M = materialize(random_product(rng, n, m))
        assert np.linalg.norm(M.T @ M - np.eye(n), "fro") <= 1e-10 * n


def test_reflection_matrix_properties():
    # symmetric, involutory, determinant -1
    rng = np.random.default_rng(3)
    for n in (2, 5, 17):
        H = materialize(random_product(rng, n, 1))
        assert np.linalg.norm(H - H.T, "fro") <= 1e-9
        assert np.linalg.norm(H @ H - np.eye(n), "fro") <= 1e-9
        assert abs(np.linalg.det(H) + 1.0) <= 1e-9


# ----------------------------------------------------------- symmetric part


def test_symmetric_part_fixes_symmetric_input():
    A = np.array([[2.0, 1.0], [1.0, 5.0]])
    np.testing.assert_array_equal(symmetric_part(A), A)


def test_symmetric_part_of_rotation_is_scaled_identity():
    theta = 0.7
    c, s = np.cos(theta), np.sin(theta)
    R = np.array([[c, -s], [s, c]])
    np.testing.assert_allclose(symmetric_part(R), c * np.eye(2), atol=1e-15)


def test_symmetric_part_of_reflection_pair():
    # (H1 H2 + (H1 H2)^T)/2 = I - 2 u1 u1^T - 2 u2 u2^T + 2k (u1 u2^T + u2 u1^T)
    rng = np.random.default_rng(4)
    u1 = make_reflector(rng.standard_normal(6)).u
    u2 = make_reflector(rng.standard_normal(6)).u
    k = u1 @ u2
    V = materialize(
        HouseholderProduct(6, (Reflector(u1), Reflector(u2)))
    )
    expected = (
        np.eye(6)
        - 2 * np.outer(u1, u1)
        - 2 * np.outer(u2, u2)
        + 2 * k * (np.outer(u1, u2) + np.outer(u2, u1))
    )
    np.testing.assert_allclose(symmetric_part(V), expected, atol=1e-12)


# ---------------------------------------------------- eigendecomposition


def test_eigendecomposition_identity():
    spectrum = symmetric_eigendecomposition(np.eye(5))
    np.testing.assert_allclose(spectrum.eigenvalues, np.ones(5))


def test_eigendecomposition_reflection_spectrum():
    rng = np.random.default_rng(5)
    r = make_reflector(rng.standard_normal(8))
    H = materialize(HouseholderProduct(8, (r,)))
    spectrum = symmetric_eigendecomposition(H)
    np.testing.assert_allclose(spectrum.eigenvalues[0], -1.0, atol=1e-12)
    np.testing.assert_allclose(spectrum.eigenvalues[1:], np.ones(7), atol=1e-12)
    bottom = spectrum.eigenvectors[:, 0]
    assert min(np.linalg.norm(bottom - r.u), np.linalg.norm(bottom + r.u)) <= 1e-10


def test_eigendecomposition_pair_has_doubled_bottom_eigenvalue():
    rng = np.random.default_rng(6)
    u1 = make_reflector(rng.standard_normal(9)).u
    u2 = make_reflector(rng.standard_normal(9)).u
    k = u1 @ u2
    V = materialize(HouseholderProduct(9, (Reflector(u1), Reflector(u2))))
    spectrum = symmetric_eigendecomposition(symmetric_part(V))
    np.testing.assert_allclose(
        spectrum.eigenvalues[:2], [-1 + 2 * k**2] * 2, atol=1e-10
    )
    np.testing.assert_allclose(spectrum.eigenvalues[2:], np.ones(7), atol=1e-10)


def test_eigendecomposition_contract_on_random_symmetric_inputs():
    rng = np.random.default_rng(7)
    for n in (3, 10, 40):
        A = rng.standard_normal((n, n))
        A = (A + A.T) / 2
        spectrum = symmetric_eigendecomposition(A)
        lam, Q = spectrum.eigenvalues, spectrum.eigenvectors
        assert np.all(np.diff(lam) >= 0)
        assert np.linalg.norm(Q.T @ Q - np.eye(n), "fro") <= 1e-10 * n
        reconstruction = (Q * lam) @ Q.T
        assert np.linalg.norm(reconstruction - A, "fro") <= 1e-8 * n


def test_eigendecomposition_rejects_nonsymmetric():
    with pytest.raises(ValueError, match="not symmetric"):
        symmetric_eigendecomposition(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_symmetric_part_eigenvalues_of_orthogonal_stay_in_unit_interval():
    # real parts of unit-modulus eigenvalues
    rng = np.random.default_rng(8)
    for n, m in [(6, 3), (12, 12)]:
        V = materialize(random_product(rng, n, m))
        lam = symmetric_eigendecomposition(symmetric_part(V)).eigenvalues
        assert lam[0] >= -1.0 - 1e-10
        assert lam[-1] <= 1.0 + 1e-10


def test_eigendecomposition_is_deterministic():
    rng = np.random.default_rng(9)
    A = rng.standard_normal((12, 12))
    A = (A + A.T) / 2
    first = symmetric_eigendecomposition(A)
    second = symmetric_eigendecomposition(A.copy())
    np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
    np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)


# ------------------------------------------------------- fixed subspace dim


def test_eigenspace_dimension_of_identity():
    assert eigenspace_one_dimension(np.eye(6)) == 6


def test_eigenspace_dimension_of_single_reflection():
    rng = np.random.default_rng(10)
    H = materialize(random_product(rng, 7, 1))
    assert eigenspace_one_dimension(H) == 6


def test_eigenspace_dimension_of_negated_identity():
    assert eigenspace_one_dimension(-np.eye(5)) == 0


@pytest.mark.parametrize("n,m", [(8, 1), (8, 5), (16, 9), (24, 24)])
def test_eigenspace_dimension_of_random_products(n, m):
    rng = np.random.default_rng(100 + n + m)
    V = materialize(random_product(rng, n, m))
    assert eigenspace_one_dimension(V) == n - m


# --------------------------------------------------------------- validation


def test_check_orthogonal_rejects_non_orthogonal():
    with pytest.raises(ValueError, match="not orthogonal"):
        check_orthogonal(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_check_orthogonal_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        check_orthogonal(np.ones((2, 3)))


def test_dense_orthogonal_validates_and_freezes():
    V = DenseOrthogonal(np.eye(3))
    assert V.n == 3
    with pytest.raises(ValueError):
        V.entries[0, 0] = 2.0
    with pytest.raises(ValueError, match="not orthogonal"):
        DenseOrthogonal(np.full((3, 3), 0.5))


def test_dense_orthogonal_accepts_wider_tolerance():
    V = np.eye(3)
    V[0, 0] = 1.0 + 1e-6
    with pytest.raises(ValueError):
        DenseOrthogonal(V)
    assert DenseOrthogonal(V, tol=1e-3).n == 3


def test_operations_accept_wrapped_matrices(reflection_3x3):
    wrapped = DenseOrthogonal(reflection_3x3)
    assert eigenspace_one_dimension(wrapped) == 2
    np.testing.assert_array_equal(
        symmetric_part(wrapped), symmetric_part(reflection_3x3)
    )


def test_product_rejects_mismatched_factor_dimension():
    with pytest.raises(ValueError, match="dimension"):
        HouseholderProduct(3, (make_reflector([1.0, 0.0]),))
