import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import complex_gaussian
from schmidt_strata.errors import NotIndependent, NotSameState, UnequalLength
from schmidt_strata.lemma import recover_change_of_basis, transform_expression
from schmidt_strata.states import TensorExpression


def random_expression(rng, n, m, k):
    return TensorExpression(complex_gaussian(rng, n, k), complex_gaussian(rng, m, k))


def test_identity_case():
    expr = random_expression(np.random.default_rng(0), 3, 4, 2)
    cert = recover_change_of_basis(expr, expr)
    np.testing.assert_allclose(cert.C, np.eye(2), atol=1e-12)
    assert cert.certified
    assert max(cert.residual_z, cert.residual_w, cert.block_residual) < 1e-12


def test_scalar_rescaling():
    x = np.array([1.0, 2.0j, -1.0])
    y = np.array([0.5, 1.0, 0.0, 2.0])
    cert = recover_change_of_basis(
        TensorExpression.from_terms([(x, y)]), TensorExpression.from_terms([(2 * x, y / 2)])
    )
    np.testing.assert_allclose(cert.C, [[0.5]], atol=1e-15)
    np.testing.assert_allclose(x * np.linalg.inv(cert.C.T)[0, 0], 2 * x, atol=1e-15)
    assert cert.certified


def test_generate_then_recover():
    rng = np.random.default_rng(2024)
    expr = random_expression(rng, 5, 6, 4)
    C0 = complex_gaussian(rng, 4, 4)
    cert = recover_change_of_basis(expr, transform_expression(expr, C0))
    np.testing.assert_allclose(cert.C, C0, atol=1e-8)
    assert cert.certified


def test_errors():
    rng = np.random.default_rng(1)
    e2 = random_expression(rng, 3, 4, 2)
    with pytest.raises(UnequalLength):
        recover_change_of_basis(e2, random_expression(rng, 3, 4, 1))
    with pytest.raises(NotSameState):
        recover_change_of_basis(e2, random_expression(rng, 3, 4, 2))
    x, y = complex_gaussian(rng, 3), complex_gaussian(rng, 4)
    dep = TensorExpression.from_terms([(x, y), (2 * x, y)])
    with pytest.raises(NotIndependent):
        recover_change_of_basis(dep, dep)


def test_block_residual_detects_wrong_pairing():
    # same vector, but a certificate built from mismatched data must not certify
    rng = np.random.default_rng(3)
    expr = random_expression(rng, 3, 3, 2)
    cert = recover_change_of_basis(expr, transform_expression(expr, complex_gaussian(rng, 2, 2)), tol=1e-8)
    assert cert.block_residual < 1e-8
    from schmidt_strata.lemma import block_identity_residual

    swapped = TensorExpression(expr.left[:, ::-1], expr.right)
    assert block_identity_residual(expr, swapped) > 0.1


configs = st.tuples(st.integers(1, 6), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32 - 1))


@given(configs)
def test_inverse_symmetry_and_left_relation(cfg):
    k, dn, dm, seed = cfg
    rng = np.random.default_rng(seed)
    e1 = random_expression(rng, k + dn, k + dm, k)
    e2 = transform_expression(e1, complex_gaussian(rng, k, k))
    c12 = recover_change_of_basis(e1, e2)
    c21 = recover_change_of_basis(e2, e1)
    np.testing.assert_allclose(c21.C, np.linalg.inv(c12.C), atol=1e-7)
    np.testing.assert_allclose(e1.left @ np.linalg.inv(c12.C.T), e2.left, atol=1e-8)


@given(configs)
def test_composition(cfg):
    k, dn, dm, seed = cfg
    rng = np.random.default_rng(seed)
    e1 = random_expression(rng, k + dn, k + dm, k)
    e2 = transform_expression(e1, complex_gaussian(rng, k, k))
    e3 = transform_expression(e2, complex_gaussian(rng, k, k))
    C = recover_change_of_basis(e1, e2).C
    Cp = recover_change_of_basis(e2, e3).C
    np.testing.assert_allclose(recover_change_of_basis(e1, e3).C, C @ Cp, atol=1e-7)
