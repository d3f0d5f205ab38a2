"""Bipartite pure states, tensor-sum expressions and the Schmidt decomposition.

Basis ordering is row-major throughout the package: the product basis vector
``e_j (x) d_s`` sits at flat index ``j * m + s`` (0-based), so a state vector
reshapes to its ``n x m`` coefficient matrix with ``vec.reshape(n, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidRank, ZeroState

NORM_TOL = 1e-12
RANK_TOL = 1e-10
PHASE_TOL = 1e-8
DEGENERACY_TOL = 1e-8
ZERO_TOL = 1e-300


def relative_rank(mat: np.ndarray, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    s = np.linalg.svd(np.atleast_2d(mat), compute_uv=False)
    if s.size == 0 or s[0] <= ZERO_TOL:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def phase_anchor(values: np.ndarray, tol: float = PHASE_TOL) -> complex:
    """Unit phase that makes the first entry with modulus > ``tol`` real positive.

    ``values`` is scanned in C (row-major) order. Returns 1 when every entry is
    below ``tol``.
    """
    flat = np.ravel(values)
    idx = np.flatnonzero(np.abs(flat) > tol)
    if idx.size == 0:
        return 1.0 + 0.0j
    z = flat[idx[0]]
    return complex(z / abs(z))


def canonical_phase(values: np.ndarray, tol: float = PHASE_TOL) -> np.ndarray:
    """Rotate ``values`` by a global phase so its anchor entry is real positive."""
    out = np.asarray(values, dtype=complex) * np.conj(phase_anchor(values, tol))
    flat = out.reshape(-1)
    idx = np.flatnonzero(np.abs(flat) > tol)
    if idx.size:
        flat[idx[0]] = abs(flat[idx[0]])
    return out


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector in C^n (x) C^m with declared factor dimensions."""

    n: int
    m: int
    vec: np.ndarray = field(repr=False)

    def __post_init__(self):
        vec = np.array(self.vec, dtype=complex).ravel()
        if self.n < 1 or self.m < 1:
            raise DimensionMismatch(f"factor dimensions must be positive, got ({self.n}, {self.m})")
        if vec.size != self.n * self.m:
            raise DimensionMismatch(
                f"vector of length {vec.size} does not match n*m = {self.n}*{self.m}"
            )
        nrm = np.linalg.norm(vec)
        if nrm <= ZERO_TOL:
            raise ZeroState("state vector is zero")
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm = {nrm!r}); use PureState.from_vector")
        vec.setflags(write=False)
        object.__setattr__(self, "vec", vec)

    @classmethod
    def from_vector(cls, vec, n: int, m: int, *, swap: bool = False) -> "PureState":
        """Normalize ``vec`` and wrap it.

        With ``swap=True`` and ``n > m`` the two factors are exchanged so that
        the stored state satisfies ``n <= m``.
        """
        vec = np.asarray(vec, dtype=complex).ravel()
        if vec.size != n * m:
            raise DimensionMismatch(f"vector of length {vec.size} does not match n*m = {n}*{m}")
        nrm = np.linalg.norm(vec)
        if not np.isfinite(nrm) or nrm <= ZERO_TOL:
            raise ZeroState("state vector is zero")
        state = cls(n, m, vec / nrm)
        if swap and n > m:
            state = state.swapped()
        return state

    @classmethod
    def from_matrix(cls, mat) -> "PureState":
        mat = np.asarray(mat, dtype=complex)
        n, m = mat.shape
        return cls.from_vector(mat.ravel(), n, m)

    def matrix(self) -> np.ndarray:
        """The ``n x m`` coefficient matrix (a read-only view)."""
        return self.vec.reshape(self.n, self.m)

    def swapped(self) -> "PureState":
        """Same state with the tensor factors exchanged."""
        return PureState(self.m, self.n, self.matrix().T.ravel())

    def with_canonical_phase(self) -> "PureState":
        return PureState(self.n, self.m, canonical_phase(self.vec))

    def fidelity(self, other: "PureState") -> float:
        """|<self, other>|, the overlap modulus of the two unit vectors."""
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatch("states live in different spaces")
        return float(abs(np.vdot(self.vec, other.vec)))


@dataclass(frozen=True, eq=False)
class TensorExpression:
    """Finite sum ``x = sum_i x_i (x) y_i``.

    ``left`` is ``n x k`` with the x_i as columns, ``right`` is ``m x k`` with
    the y_i as columns.
    """

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        left = np.array(self.left, dtype=complex)
        right = np.array(self.right, dtype=complex)
        if left.ndim != 2 or right.ndim != 2:
            raise DimensionMismatch("left and right must be 2-D (vectors as columns)")
        if left.shape[1] != right.shape[1]:
            raise DimensionMismatch(
                f"{left.shape[1]} left vectors but {right.shape[1]} right vectors"
            )
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def from_terms(cls, terms) -> "TensorExpression":
        """Build from an iterable of ``(x_i, y_i)`` pairs."""
        terms = list(terms)
        if not terms:
            raise DimensionMismatch("an expression needs at least one term")
        left = np.column_stack([np.asarray(x, dtype=complex) for x, _ in terms])
        right = np.column_stack([np.asarray(y, dtype=complex) for _, y in terms])
        return cls(left, right)

    @property
    def n(self) -> int:
        return self.left.shape[0]

    @property
    def m(self) -> int:
        return self.right.shape[0]

    @property
    def k(self) -> int:
        return self.left.shape[1]

    @property
    def terms(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [(self.left[:, i], self.right[:, i]) for i in range(self.k)]

    def coefficient_matrix(self) -> np.ndarray:
        return self.left @ self.right.T

    def evaluate(self) -> np.ndarray:
        """The (unnormalized) vector sum_i x_i (x) y_i of length n*m."""
        return self.coefficient_matrix().ravel()

    def is_linearly_independent(self, tol: float = RANK_TOL) -> bool:
        return relative_rank(self.left, tol) == self.k and relative_rank(self.right, tol) == self.k

    def to_state(self) -> PureState:
        return PureState.from_vector(self.evaluate(), self.n, self.m)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``state = sum_i coefficients[i] * left_frame[:, i] (x) right_frame[:, i]``."""

    coefficients: np.ndarray
    left_frame: np.ndarray
    right_frame: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    @property
    def n(self) -> int:
        return self.left_frame.shape[0]

    @property
    def m(self) -> int:
        return self.right_frame.shape[0]

    @property
    def degenerate(self) -> bool:
        """True when two consecutive coefficients agree within 1e-8."""
        return bool(np.any(np.abs(np.diff(self.coefficients)) < DEGENERACY_TOL))

    def matrix(self) -> np.ndarray:
        return (self.left_frame * self.coefficients) @ self.right_frame.T

    def reconstruct(self) -> PureState:
        return PureState.from_vector(self.matrix().ravel(), self.n, self.m)

    def as_expression(self) -> TensorExpression:
        return TensorExpression(self.left_frame * self.coefficients, self.right_frame)


def schmidt_decompose(state: PureState, rank_tol: float = RANK_TOL) -> SchmidtDecomposition:
    """Schmidt decomposition via the SVD of the coefficient matrix.

    Only singular values above ``rank_tol * sigma_1`` are kept. Each left frame
    vector has its first entry of modulus > 1e-8 made real positive, with the
    conjugate phase pushed onto the matching right vector.
    """
    if not isinstance(state, PureState):
        raise TypeError("schmidt_decompose expects a PureState")
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    u, s, vh = np.linalg.svd(state.matrix(), full_matrices=False)
    if s[0] <= ZERO_TOL:
        raise ZeroState("state vector is zero")
    k = int(np.count_nonzero(s > rank_tol * s[0]))
    left = u[:, :k].copy()
    right = vh[:k].T.copy()
    for i in range(k):
        ph = phase_anchor(left[:, i])
        left[:, i] *= np.conj(ph)
        right[:, i] *= ph
    for arr in (s, left, right):
        arr.setflags(write=False)
    return SchmidtDecomposition(s[:k], left, right)


def schmidt_rank(state: PureState, rank_tol: float = RANK_TOL) -> int:
    return relative_rank(state.matrix(), rank_tol)


def length(expr: TensorExpression, rank_tol: float = RANK_TOL) -> int:
    """Schmidt rank of the vector an expression evaluates to.

    Equals ``expr.k`` exactly when the expression is linearly independent.
    """
    mat = expr.coefficient_matrix()
    scale = float(np.sum(np.linalg.norm(expr.left, axis=0) * np.linalg.norm(expr.right, axis=0)))
    # cancellation down to roundoff counts as zero
    if np.linalg.norm(mat) <= max(ZERO_TOL, 1e-14 * scale):
        raise ZeroState("expression evaluates to the zero vector")
    return relative_rank(mat, rank_tol)


def random_frame(rng: np.random.Generator, dim: int, k: int) -> np.ndarray:
    """``dim x k`` matrix with orthonormal columns, Haar distributed."""
    g = (rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_state(n: int, m: int, k: int | None = None, seed=None) -> PureState:
    """Random pure state, optionally with prescribed Schmidt rank ``k``.

    Without ``k`` the state is a normalized complex Gaussian vector. With ``k``
    it is ``sum_i mu_i a_i (x) b_i`` for Haar frames and coefficients drawn
    from U(0.1, 1) before normalization, which keeps the rank exactly ``k`` at
    any tolerance below 0.1.
    """
    rng = np.random.default_rng(seed)
    if k is None:
        vec = rng.standard_normal(n * m) + 1j * rng.standard_normal(n * m)
        return PureState.from_vector(vec, n, m)
    if not 1 <= k <= min(n, m):
        raise InvalidRank(f"rank {k} impossible in {n} x {m}")
    left = random_frame(rng, n, k)
    right = random_frame(rng, m, k)
    mu = np.sort(rng.uniform(0.1, 1.0, size=k))[::-1]
    mu /= np.linalg.norm(mu)
    return PureState.from_matrix((left * mu) @ right.T)


def random_local_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    return random_frame(rng, dim, dim)
