import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gpt_tomo.errors import ContractError, DecompositionError, DimensionMismatch, RankError
from gpt_tomo.linalg import (
    TOL_NUM,
    Subspace,
    annihilator,
    conic_membership,
    convex_membership,
    dual_basis,
    independent_subset,
    min_eigenvalue_symmetric,
    oblique_projector,
    rank,
    span_basis,
    sum_subspace,
    zero_subspace,
)
from oracles import annihilator_dim, jacobi_eigenvalues, linprog_convex

small = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def matrices(max_rows=6, max_cols=6):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.float64, s, elements=small)
    )


def low_rank(draw_seed, rows, cols, r):
    g = np.random.default_rng(draw_seed)
    return g.normal(size=(rows, r)) @ g.normal(size=(r, cols))


# ------------------------------------------------------------ spans and ranks


def test_span_basis_drops_parallel_vectors():
    sub = span_basis([[1.0, 0.0], [2.0, 0.0]])
    assert sub.dim == 1
    np.testing.assert_allclose(np.abs(sub.basis), [[1.0, 0.0]])


def test_span_basis_of_nothing_is_zero():
    sub = span_basis(np.zeros((0, 3)), ambient_dim=3)
    assert sub.dim == 0 and sub.ambient_dim == 3


def test_mixed_dimensions_rejected():
    with pytest.raises(DimensionMismatch):
        span_basis([[1.0, 0.0], [1.0, 0.0, 0.0]])


@given(st.integers(0, 10_000), st.integers(1, 7), st.integers(1, 7), st.integers(0, 7))
def test_span_basis_orthonormal_and_matches_rank(seed, rows, cols, r):
    r = min(r, rows, cols)
    m = low_rank(seed, rows, cols, r) if r else np.zeros((rows, cols))
    sub = span_basis(m)
    np.testing.assert_allclose(sub.basis @ sub.basis.T, np.eye(sub.dim), atol=1e-12)
    assert sub.dim == np.linalg.matrix_rank(m) == rank(m)
    for row in m:
        assert sub.contains(row, tol=1e-9 * max(1.0, np.abs(row).max()))


@given(st.integers(0, 10_000), st.integers(2, 8), st.integers(1, 5))
def test_independent_subset_preserves_span(seed, rows, r):
    m = low_rank(seed, rows, 6, min(r, rows))
    sub = independent_subset(m)
    assert len(sub) == np.linalg.matrix_rank(m)
    assert span_basis(sub).equals(span_basis(m), tol=1e-9)


def test_sum_subspace():
    a = span_basis([[1.0, 0.0, 0.0]])
    b = span_basis([[0.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
    assert sum_subspace(a, b).dim == 2
    with pytest.raises(DimensionMismatch):
        sum_subspace(a, zero_subspace(2))


def test_subspace_equality_and_residual():
    a = span_basis([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    b = span_basis([[1.0, 1.0, 1.0], [1.0, 1.0, -1.0]])
    assert a.equals(b)
    assert not a.equals(span_basis([[1.0, 0.0, 0.0]]))
    assert a.residual([1.0, -1.0, 0.0]) == pytest.approx(1.0)


# ---------------------------------------------------------------- annihilators


def test_annihilator_of_axis():
    ann = annihilator(span_basis([[1.0, 0.0, 0.0]]))
    assert ann.dim == 2
    np.testing.assert_allclose(ann.basis[:, 0], 0.0)


def test_annihilator_of_zero_is_everything():
    assert annihilator(zero_subspace(4)).dim == 4


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 8))
def test_annihilator_matches_null_space_oracle(seed, r, n):
    m = low_rank(seed, 5, n, min(r, n))
    ann = annihilator(span_basis(m))
    assert ann.dim == annihilator_dim(m, n)
    np.testing.assert_allclose(m @ ann.basis.T, 0.0, atol=1e-9)


# ----------------------------------------------------------------- projectors


def test_oblique_projector_reference():
    p = oblique_projector(span_basis([[1.0, 0.0]]), span_basis([[1.0, 1.0]]))
    np.testing.assert_allclose(p, [[1.0, -1.0], [0.0, 0.0]], atol=1e-15)


def test_oblique_projector_rejects_overlap():
    x = span_basis([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    with pytest.raises(DecompositionError):
        oblique_projector(x, span_basis([[1.0, 1.0, 0.0]]))
    with pytest.raises(DecompositionError):
        oblique_projector(x, span_basis([[0.0, 0.0, 1.0], [1.0, 0.0, 1.0]]))


@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(2, 6))
def test_oblique_projector_properties(seed, k, n):
    k = min(k, n - 1)
    g = np.random.default_rng(seed)
    image = span_basis(g.normal(size=(k, n)))
    kernel = span_basis(g.normal(size=(n - k, n)))
    p = oblique_projector(image, kernel)
    np.testing.assert_allclose(p @ p, p, atol=1e-7 * max(1.0, np.abs(p).max()) ** 2)
    np.testing.assert_allclose(p @ image.basis.T, image.basis.T, atol=1e-7 * max(1.0, np.abs(p).max()))
    np.testing.assert_allclose(p @ kernel.basis.T, 0.0, atol=1e-7 * max(1.0, np.abs(p).max()))


def test_dual_basis():
    v = np.array([[1.0, 1.0], [0.0, 2.0]])
    t = dual_basis(v)
    np.testing.assert_allclose(t @ v.T, np.eye(2), atol=1e-15)
    with pytest.raises(RankError):
        dual_basis([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(RankError):
        dual_basis([[1.0, 2.0, 3.0]])


# ----------------------------------------------------------------- eigenvalues


@given(st.integers(0, 10_000), st.integers(1, 8))
def test_min_eigenvalue_matches_jacobi_oracle(seed, n):
    a = np.random.default_rng(seed).normal(size=(n, n))
    a = a + a.T
    assert min_eigenvalue_symmetric(a) == pytest.approx(jacobi_eigenvalues(a)[0], abs=1e-9)


def test_min_eigenvalue_stack_and_errors():
    stack = np.array([np.diag([1.0, -2.0]), np.diag([3.0, 4.0])])
    np.testing.assert_allclose(min_eigenvalue_symmetric(stack), [-2.0, 3.0])
    with pytest.raises(ContractError):
        min_eigenvalue_symmetric([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(DimensionMismatch):
        min_eigenvalue_symmetric(np.ones((2, 3)))


# ------------------------------------------------------------------------- LP


SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


def test_convex_membership_inside():
    res = convex_membership([0.25, 0.5], SQUARE)
    assert res.feasible
    assert res.weights.sum() == pytest.approx(1.0)
    np.testing.assert_allclose(res.weights @ SQUARE, [0.25, 0.5], atol=1e-12)


def test_convex_membership_outside_has_separating_witness():
    point = np.array([1.5, 0.2])
    res = convex_membership(point, SQUARE)
    assert not res.feasible
    y = res.witness
    assert np.all(np.hstack([SQUARE, np.ones((4, 1))]) @ y <= 1e-9)
    assert np.append(point, 1.0) @ y > 0


def test_conic_membership():
    gens = np.array([[1.0, 0.0], [1.0, 1.0]])
    assert conic_membership([3.0, 1.0], gens).feasible
    assert not conic_membership([-1.0, 0.5], gens).feasible
    with pytest.raises(DimensionMismatch):
        conic_membership([1.0, 0.0, 0.0], gens)


def test_degenerate_lp_with_redundant_rows():
    # Duplicated constraints do not upset Phase I.
    gens = np.array([[1.0, 1.0], [0.0, 0.0], [2.0, 2.0]])
    assert convex_membership([0.5, 0.5], gens).feasible
    assert not convex_membership([0.5, 0.4], gens).feasible


@given(st.integers(0, 10_000), st.integers(2, 5), st.integers(3, 12))
def test_convex_membership_agrees_with_highs(seed, n, k):
    g = np.random.default_rng(seed)
    gens = g.normal(size=(k, n))
    point = g.normal(size=n) * g.uniform(0.2, 1.5)
    res = convex_membership(point, gens)
    assert res.feasible == linprog_convex(point, gens)
    if res.feasible:
        np.testing.assert_allclose(res.weights @ gens, point, atol=1e-8)
        assert np.all(res.weights >= 0)


def test_subspace_reshapes_flat_basis():
    sub = Subspace(np.array([1.0, 0.0]), 2)
    assert sub.dim == 1 and sub.contains([3.0, 0.0]) and not sub.contains([0.0, TOL_NUM * 10])
