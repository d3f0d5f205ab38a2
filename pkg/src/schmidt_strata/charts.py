"""Chart coordinates for G(n,k) x (CP^{k^2-1} minus det = 0) x G(m,k).

A k-dimensional subspace of C^dim is stored as an echelon matrix: ``k x dim``,
identity at the pivot columns, free coordinates elsewhere, subspace = row
span. The principal chart (pivots ``0..k-1``) is used whenever its minor is
well conditioned; otherwise pivots come from a column-pivoted QR.

Column indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ChartError, InvalidRank, NotIndependent, OnHypersurface, ZeroMatrix
from .states import PHASE_TOL, RANK_TOL, canonical_phase

HYPERSURFACE_TOL = 1e-10
# smallest singular value of the principal rows of an orthonormal basis
# below which the pivoted chart is preferred; bounds coordinates by ~1e2
PRINCIPAL_CHART_TOL = 1e-2


@dataclass(frozen=True, eq=False)
class GrassmannChartPoint:
    ambient_dim: int
    k: int
    pivot_cols: tuple[int, ...]
    coeffs: np.ndarray

    def __post_init__(self):
        piv = tuple(int(p) for p in self.pivot_cols)
        if len(piv) != self.k or any(b <= a for a, b in zip(piv, piv[1:])):
            raise ChartError(f"pivot columns {piv} must be {self.k} strictly increasing indices")
        if piv and (piv[0] < 0 or piv[-1] >= self.ambient_dim):
            raise ChartError(f"pivot columns {piv} out of range for dimension {self.ambient_dim}")
        coeffs = np.array(self.coeffs, dtype=complex).reshape(self.k, self.ambient_dim - self.k)
        if not np.all(np.isfinite(coeffs)):
            raise ChartError("chart coordinates must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "pivot_cols", piv)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def principal(cls, coeffs) -> "GrassmannChartPoint":
        """Point of the chart with identity in the first k columns."""
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        k, rest = coeffs.shape
        return cls(k + rest, k, tuple(range(k)), coeffs)

    @property
    def free_cols(self) -> tuple[int, ...]:
        piv = set(self.pivot_cols)
        return tuple(c for c in range(self.ambient_dim) if c not in piv)

    @property
    def is_principal(self) -> bool:
        return self.pivot_cols == tuple(range(self.k))

    def full_matrix(self) -> np.ndarray:
        """``k x ambient_dim`` echelon matrix whose rows span the subspace."""
        full = np.zeros((self.k, self.ambient_dim), dtype=complex)
        full[:, list(self.pivot_cols)] = np.eye(self.k)
        full[:, list(self.free_cols)] = self.coeffs
        return full

    def orthonormal_basis(self) -> np.ndarray:
        """Gram-Schmidt of the echelon rows, as ``ambient_dim x k`` columns."""
        q, r = np.linalg.qr(self.full_matrix().T)
        d = np.diagonal(r)
        return q * (d / np.abs(d))

    def to_principal(self, tol: float = RANK_TOL) -> tuple["GrassmannChartPoint", np.ndarray]:
        """Re-express in the principal chart.

        Returns the new point and the ``k x k`` matrix ``M`` with
        ``full_matrix() = M @ new.full_matrix()``.
        """
        full = self.full_matrix()
        M = full[:, : self.k]
        s = np.linalg.svd(M, compute_uv=False)
        if self.k and (s[-1] <= tol * max(s[0], 1.0)):
            raise ChartError("subspace is not in the principal chart")
        new = np.linalg.solve(M, full)
        return GrassmannChartPoint.principal(new[:, self.k :]), M


def grassmann_from_span(vectors, tol: float = RANK_TOL) -> GrassmannChartPoint:
    """Echelon chart point of the span of ``vectors``.

    ``vectors`` is a sequence of k vectors; a 2-D array is read column-wise.
    The result depends only on the subspace.
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        V = vectors.astype(complex)
    else:
        V = np.column_stack([np.asarray(v, dtype=complex).ravel() for v in vectors])
    dim, k = V.shape
    if k == 0 or k > dim:
        raise NotIndependent(f"cannot span a {k}-dimensional subspace of C^{dim}")
    s = np.linalg.svd(V, compute_uv=False)
    if s[0] == 0 or s[-1] <= tol * s[0]:
        raise NotIndependent("spanning vectors are linearly dependent")
    Q, _ = np.linalg.qr(V)
    return chart_from_orthonormal(Q)


def chart_from_orthonormal(Q: np.ndarray) -> GrassmannChartPoint:
    dim, k = Q.shape
    principal_sv = np.linalg.svd(Q[:k], compute_uv=False)
    if principal_sv[-1] >= PRINCIPAL_CHART_TOL:
        pivots = list(range(k))
    else:
        # row norms and residual projections of Q are invariant under Q -> QU,
        # so the greedy choice depends only on the subspace (up to exact ties)
        _, _, perm = scipy.linalg.qr(Q.T, pivoting=True, mode="economic")
        pivots = sorted(int(p) for p in perm[:k])
    Xt = np.linalg.solve(Q[pivots].T, Q.T).T  # dim x k, identity at pivot rows
    free = [c for c in range(dim) if c not in set(pivots)]
    return GrassmannChartPoint(dim, k, tuple(pivots), Xt[free].T)


def is_on_hypersurface(B, tol: float = HYPERSURFACE_TOL) -> bool:
    """Whether [B] lies on det B = 0, judged by sigma_min(B / ||B||_F) < tol."""
    B = np.asarray(B, dtype=complex)
    nrm = np.linalg.norm(B)
    if nrm == 0:
        raise ZeroMatrix("the zero matrix has no projective class")
    return bool(np.linalg.svd(B / nrm, compute_uv=False)[-1] < tol)


def canonical_projective_matrix(B) -> np.ndarray:
    B = np.asarray(B, dtype=complex)
    nrm = np.linalg.norm(B)
    if nrm == 0:
        raise ZeroMatrix("the zero matrix has no projective class")
    return canonical_phase(B / nrm)


@dataclass(frozen=True, eq=False)
class ProjectiveMatrixPoint:
    """Unit-Frobenius, phase-fixed representative of a class [B] in CP^{k^2-1}."""

    k: int
    B: np.ndarray
    det_modulus: float

    @classmethod
    def from_matrix(cls, B, tol: float = HYPERSURFACE_TOL) -> "ProjectiveMatrixPoint":
        B = np.atleast_2d(np.asarray(B, dtype=complex))
        if B.shape[0] != B.shape[1]:
            raise ValueError(f"core matrix must be square, got shape {B.shape}")
        if is_on_hypersurface(B, tol):
            raise OnHypersurface("core matrix is singular")
        canon = canonical_projective_matrix(B)
        canon.setflags(write=False)
        return cls(B.shape[0], canon, float(abs(np.linalg.det(canon))))

    @classmethod
    def from_affine(cls, a) -> "ProjectiveMatrixPoint":
        """From affine coordinates with the top-left entry set to 1."""
        a = np.array(a, dtype=complex)
        a[0, 0] = 1.0
        return cls.from_matrix(a)

    def affine(self) -> np.ndarray:
        """Representative scaled so that the top-left entry equals 1."""
        b11 = self.B[0, 0]
        if abs(b11) <= PHASE_TOL:
            raise ChartError("b_11 vanishes; no affine chart with a_11 = 1")
        return self.B / b11


@dataclass(frozen=True, eq=False)
class StratumPoint:
    left: GrassmannChartPoint
    core: ProjectiveMatrixPoint
    right: GrassmannChartPoint

    def __post_init__(self):
        if not (self.left.k == self.core.k == self.right.k):
            raise InvalidRank(
                f"inconsistent ranks: left {self.left.k}, core {self.core.k}, right {self.right.k}"
            )

    @property
    def k(self) -> int:
        return self.core.k

    @property
    def n(self) -> int:
        return self.left.ambient_dim

    @property
    def m(self) -> int:
        return self.right.ambient_dim

    def distance(self, other: "StratumPoint") -> float:
        """Max entrywise difference of all chart data; inf across different charts."""
        if (
            self.left.pivot_cols != other.left.pivot_cols
            or self.right.pivot_cols != other.right.pivot_cols
            or (self.n, self.m, self.k) != (other.n, other.m, other.k)
        ):
            return float("inf")
        parts = [
            self.left.coeffs - other.left.coeffs,
            self.core.B - other.core.B,
            self.right.coeffs - other.right.coeffs,
        ]
        return float(max((np.max(np.abs(p)) if p.size else 0.0) for p in parts))

    def to_principal_chart(self) -> "StratumPoint":
        """Same point with both Grassmann factors in the principal chart.

        ``X^T A Y = X'^T (M^T A N) Y'`` where ``X = M X'`` and ``Y = N Y'``.
        """
        left, M = self.left.to_principal()
        right, N = self.right.to_principal()
        return StratumPoint(left, ProjectiveMatrixPoint.from_matrix(M.T @ self.core.B @ N), right)

    def principal_coordinates(self) -> dict[str, np.ndarray]:
        """Principal-chart coordinates ``x`` (k x (n-k)), ``a`` (a_11 = 1), ``y`` (k x (m-k))."""
        p = self.to_principal_chart()
        return {"x": p.left.coeffs, "a": p.core.affine(), "y": p.right.coeffs}

    @classmethod
    def from_principal_coordinates(cls, x, a, y) -> "StratumPoint":
        return cls(
            GrassmannChartPoint.principal(x),
            ProjectiveMatrixPoint.from_affine(a),
            GrassmannChartPoint.principal(y),
        )


def random_stratum_point(n: int, m: int, k: int, seed=None, scale: float = 1.0) -> StratumPoint:
    """Principal-chart point with complex Gaussian coordinates of variance ``scale**2``."""
    if not 1 <= k <= min(n, m):
        raise InvalidRank(f"rank {k} impossible in {n} x {m}")
    rng = np.random.default_rng(seed)

    def gauss(*shape):
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)

    x = gauss(k, n - k)
    core = gauss(k, k)
    y = gauss(k, m - k)
    return StratumPoint(
        GrassmannChartPoint.principal(x),
        ProjectiveMatrixPoint.from_matrix(core),
        GrassmannChartPoint.principal(y),
    )


def stratum_complex_dimension(n: int, m: int, k: int) -> int:
    """k(n-k) + (k^2 - 1) + k(m-k) = k(n+m-k) - 1."""
    if not 1 <= k <= min(n, m):
        raise InvalidRank(f"rank {k} impossible in {n} x {m}")
    return k * (n - k) + (k * k - 1) + k * (m - k)
