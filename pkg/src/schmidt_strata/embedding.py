"""The correspondence between rank-k states and G(n,k) x (CP^{k^2-1} \\ M) x G(m,k).

Forward: with echelon matrices X (k x n), Y (k x m) and core A (k x k), the
homogeneous coordinates of the state are

    d = X^T A Y,    d_js = sum_l B_jl Y_ls,    B = X^T A.

Inverse: the chart points are read off the column and row spaces of the
coefficient matrix, and since X^T and Y^T carry identity blocks at the pivot
rows, the core is the pivot minor of the coefficient matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charts import (
    HYPERSURFACE_TOL,
    ProjectiveMatrixPoint,
    StratumPoint,
    chart_from_orthonormal,
    is_on_hypersurface,
)
from .errors import OnHypersurface, ZeroState
from .states import RANK_TOL, PureState, canonical_phase, schmidt_decompose


@dataclass(frozen=True, eq=False)
class EmbeddedCoordinates:
    n: int
    m: int
    d: np.ndarray

    @property
    def rank(self) -> int:
        s = np.linalg.svd(self.d, compute_uv=False)
        return int(np.count_nonzero(s > RANK_TOL * s[0]))

    def to_state(self) -> PureState:
        return PureState.from_vector(canonical_phase(self.d.ravel()), self.n, self.m)


def embed_matrices(X: np.ndarray, A: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """``d = (X^T A) Y`` for arbitrary (not necessarily echelon) inputs."""
    B = X.T @ A
    return B @ Y


def homogeneous_coordinates(p: StratumPoint) -> EmbeddedCoordinates:
    if is_on_hypersurface(p.core.B, HYPERSURFACE_TOL):
        raise OnHypersurface("core point lies on det = 0")
    d = embed_matrices(p.left.full_matrix(), p.core.B, p.right.full_matrix())
    return EmbeddedCoordinates(p.n, p.m, d)


def embed(p: StratumPoint) -> PureState:
    """Unit state with canonical global phase for the stratum point ``p``."""
    return homogeneous_coordinates(p).to_state()


def to_stratum_point(state: PureState, rank_tol: float = RANK_TOL) -> StratumPoint:
    """Inverse of :func:`embed` on the rank-k stratum containing ``state``.

    The rank is decided by ``rank_tol`` (relative to the largest Schmidt
    coefficient); smaller coefficients are discarded before reading the core.
    """
    dec = schmidt_decompose(state, rank_tol)
    if dec.rank == 0:
        raise ZeroState("state has rank 0")
    left = chart_from_orthonormal(dec.left_frame)
    right = chart_from_orthonormal(dec.right_frame)
    d = dec.matrix()
    core = d[np.ix_(left.pivot_cols, right.pivot_cols)]
    return StratumPoint(left, ProjectiveMatrixPoint.from_matrix(core), right)


def roundtrip_fidelity(state: PureState, rank_tol: float = RANK_TOL) -> float:
    return state.fidelity(embed(to_stratum_point(state, rank_tol)))


def core_in_orthonormal_frames(p: StratumPoint) -> ProjectiveMatrixPoint:
    """Core expressed in the Gram-Schmidt bases of the two subspaces.

    With ``X^T = Q_x R_x`` and ``Y^T = Q_y R_y``, the state is
    ``Q_x (R_x A R_y^T) Q_y^T``; this returns the class of ``R_x A R_y^T``.
    """
    Qx = p.left.orthonormal_basis()
    Qy = p.right.orthonormal_basis()
    Rx = Qx.conj().T @ p.left.full_matrix().T
    Ry = Qy.conj().T @ p.right.full_matrix().T
    return ProjectiveMatrixPoint.from_matrix(Rx @ p.core.B @ Ry.T)


def segre_vectors(p: StratumPoint) -> tuple[np.ndarray, np.ndarray]:
    """For k = 1, the chart vectors x, y with ``embed(p)`` proportional to x (x) y."""
    if p.k != 1:
        raise ValueError("Segre vectors are defined only for rank-1 points")
    return p.left.full_matrix()[0], p.right.full_matrix()[0]

