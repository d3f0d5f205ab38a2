import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import complex_gaussian, explicit_polynomials_3x4, theorem_one_tensor_sum
from schmidt_strata.charts import (
    GrassmannChartPoint,
    ProjectiveMatrixPoint,
    StratumPoint,
    grassmann_from_span,
    random_stratum_point,
)
from schmidt_strata.embedding import (
    core_in_orthonormal_frames,
    embed,
    homogeneous_coordinates,
    roundtrip_fidelity,
    segre_vectors,
    to_stratum_point,
)
from schmidt_strata.errors import ZeroState
from schmidt_strata.states import (
    PureState,
    random_local_unitary,
    sample_state,
    schmidt_decompose,
    schmidt_rank,
)

seeds = st.integers(0, 2**32 - 1)


@st.composite
def configs(draw, max_dim=6):
    n = draw(st.integers(1, max_dim))
    m = draw(st.integers(n, max_dim))
    k = draw(st.integers(1, n))
    return n, m, k, draw(seeds)


def test_identity_blocks():
    p = StratumPoint(
        GrassmannChartPoint.principal(np.zeros((2, 1))),
        ProjectiveMatrixPoint.from_matrix(np.eye(2) / np.sqrt(2)),
        GrassmannChartPoint.principal(np.zeros((2, 2))),
    )
    expected = (np.kron([1, 0, 0], [1, 0, 0, 0]) + np.kron([0, 1, 0], [0, 1, 0, 0])) / np.sqrt(2)
    np.testing.assert_allclose(embed(p).vec, expected, atol=1e-15)


def test_explicit_polynomials_3x4():
    rng = np.random.default_rng(17)
    x = complex_gaussian(rng, 2, 1)
    a = complex_gaussian(rng, 2, 2)
    a[0, 0] = 1
    y = complex_gaussian(rng, 2, 2)
    p = StratumPoint.from_principal_coordinates(x, a, y)
    d = homogeneous_coordinates(p).d
    printed = explicit_polynomials_3x4(
        x[0, 0], x[1, 0], a[0, 1], a[1, 0], a[1, 1], y[0, 0], y[0, 1], y[1, 0], y[1, 1]
    )
    np.testing.assert_allclose((d / d[0, 0]).ravel(), printed, atol=1e-12)
    oracle = theorem_one_tensor_sum(x, a, y)
    np.testing.assert_allclose(oracle, printed, atol=1e-12)
    out = embed(p).vec
    np.testing.assert_allclose(out / out[0], printed, atol=1e-12)


@given(st.integers(1, 6), st.integers(1, 6), seeds)
def test_segre_case(n, m, seed):
    p = random_stratum_point(n, m, 1, seed)
    x, y = segre_vectors(p)
    np.testing.assert_allclose(homogeneous_coordinates(p).d.ravel(), np.kron(x, y), atol=1e-12)
    state = embed(p)
    kron = np.kron(x, y)
    np.testing.assert_allclose(state.vec, kron / np.linalg.norm(kron) * np.sign(kron[0].real), atol=1e-12)


def test_segre_3x3_is_cp2_times_cp2():
    # every product state is reached; chart coords are x/x_1 and y/y_1
    rng = np.random.default_rng(4)
    u, v = complex_gaussian(rng, 3), complex_gaussian(rng, 3)
    p = to_stratum_point(PureState.from_vector(np.kron(u, v), 3, 3))
    assert p.k == 1
    np.testing.assert_allclose(p.left.coeffs.ravel(), u[1:] / u[0], atol=1e-12)
    np.testing.assert_allclose(p.right.coeffs.ravel(), v[1:] / v[0], atol=1e-12)


def test_bell_like_inverse():
    state = PureState.from_vector(
        np.kron([1, 0, 0], [1, 0, 0, 0]) + np.kron([0, 1, 0], [0, 1, 0, 0]), 3, 4
    )
    p = to_stratum_point(state)
    assert p.left.is_principal and p.right.is_principal
    np.testing.assert_allclose(p.left.coeffs, 0, atol=1e-15)
    np.testing.assert_allclose(p.right.coeffs, 0, atol=1e-15)
    np.testing.assert_allclose(p.core.B, np.eye(2) / np.sqrt(2), atol=1e-15)


def test_zero_state_rejected():
    with pytest.raises(ZeroState):
        to_stratum_point(PureState.from_vector(np.zeros(4), 2, 2))


def test_roundtrip_fidelity_examples():
    rng = np.random.default_rng(0)
    for _ in range(5):
        prod = PureState.from_vector(np.kron(complex_gaussian(rng, 3), complex_gaussian(rng, 4)), 3, 4)
        assert abs(roundtrip_fidelity(prod) - 1) < 1e-12
    assert roundtrip_fidelity(sample_state(3, 4, 2, seed=1)) >= 1 - 1e-10
    assert roundtrip_fidelity(sample_state(5, 6, None, seed=1)) >= 1 - 1e-10


def test_off_principal_chart_state():
    # column space misses e_1, row space misses d_1 and d_2
    left = np.zeros((3, 2), dtype=complex)
    left[1:, :] = np.eye(2)
    right = np.zeros((4, 2), dtype=complex)
    right[2:, :] = [[1, 1j], [2, -1]]
    state = PureState.from_matrix(left @ np.diag([0.8, 0.6]) @ right.T)
    p = to_stratum_point(state)
    assert p.left.pivot_cols == (1, 2) and p.right.pivot_cols == (2, 3)
    assert state.fidelity(embed(p)) >= 1 - 1e-12


def test_principal_chart_conversion_preserves_state():
    rng = np.random.default_rng(12)
    for _ in range(10):
        state = sample_state(4, 5, 2, seed=int(rng.integers(1 << 30)))
        p = to_stratum_point(state)
        q = p.to_principal_chart()
        assert embed(p).fidelity(embed(q)) >= 1 - 1e-12


@given(configs())
def test_roundtrip_point(cfg):
    n, m, k, seed = cfg
    p = random_stratum_point(n, m, k, seed)
    state = embed(p)
    assert schmidt_rank(state) == k
    assert homogeneous_coordinates(p).rank == k
    assert p.distance(to_stratum_point(state)) <= 1e-9


@given(configs())
def test_roundtrip_state(cfg):
    n, m, k, seed = cfg
    assert roundtrip_fidelity(sample_state(n, m, k, seed)) >= 1 - 1e-10


@given(configs())
def test_injective_on_random_pairs(cfg):
    n, m, k, seed = cfg
    p, q = random_stratum_point(n, m, k, seed), random_stratum_point(n, m, k, seed + 1)
    if n == m == k == 1:
        return  # the stratum is a single point
    assert embed(p).fidelity(embed(q)) < 1 - 1e-6


@given(configs(5))
def test_subspace_transport(cfg):
    n, m, k, seed = cfg
    state = sample_state(n, m, k, seed)
    rng = np.random.default_rng(seed + 7)
    U, V = random_local_unitary(rng, n), random_local_unitary(rng, m)
    moved = PureState.from_vector(np.kron(U, V) @ state.vec, n, m)
    dec = schmidt_decompose(state)
    p = to_stratum_point(moved)
    expected_left = grassmann_from_span(U @ dec.left_frame)
    expected_right = grassmann_from_span(V @ dec.right_frame)
    assert p.left.pivot_cols == expected_left.pivot_cols
    np.testing.assert_allclose(p.left.coeffs, expected_left.coeffs, atol=1e-9)
    assert p.right.pivot_cols == expected_right.pivot_cols
    np.testing.assert_allclose(p.right.coeffs, expected_right.coeffs, atol=1e-9)


@given(configs(5))
def test_core_in_orthonormal_frames_reproduces_state(cfg):
    n, m, k, seed = cfg
    p = random_stratum_point(n, m, k, seed)
    core = core_in_orthonormal_frames(p)
    mat = p.left.orthonormal_basis() @ core.B @ p.right.orthonormal_basis().T
    assert embed(p).fidelity(PureState.from_matrix(mat)) >= 1 - 1e-12
