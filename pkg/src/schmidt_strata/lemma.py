"""Change of basis between two linearly independent expressions of one state.

If ``x = sum_i x_i (x) y_i = sum_i w_i (x) z_i`` with both expressions
linearly independent, there is an invertible ``k x k`` matrix ``C`` with

    (z_1 ... z_k) = (y_1 ... y_k) C,    (w_1 ... w_k) = (x_1 ... x_k) (C^T)^-1.

``recover_change_of_basis`` finds ``C`` from the right factors and turns both
relations, plus the block identity of the coefficient matrices, into residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotIndependent, NotSameState, UnequalLength
from .states import RANK_TOL, TensorExpression

CERTIFY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LemmaCertificate:
    C: np.ndarray
    residual_z: float
    residual_w: float
    block_residual: float
    tol: float = CERTIFY_TOL

    @property
    def det_modulus(self) -> float:
        return float(abs(np.linalg.det(self.C)))

    @property
    def certified(self) -> bool:
        return (
            self.det_modulus > 0
            and max(self.residual_z, self.residual_w, self.block_residual) < self.tol
        )


def _complete_basis(vectors: np.ndarray) -> np.ndarray:
    """Append an orthonormal complement so the columns form a basis of C^dim."""
    dim, k = vectors.shape
    if k == dim:
        return vectors
    u, _, _ = np.linalg.svd(vectors, full_matrices=True)
    return np.hstack([vectors, u[:, k:]])


def block_identity_residual(expr1: TensorExpression, expr2: TensorExpression) -> float:
    """Max deviation of ``A^T B`` from ``diag(E_k, 0)``.

    ``A`` (``k x n``) and ``B`` (``k x m``) hold the coordinates of the w_j and
    z_j in bases of the two factors that extend x_1..x_k and y_1..y_k.
    """
    k = expr1.k
    at = np.linalg.solve(_complete_basis(expr1.left), expr2.left)  # n x k, = A^T
    bt = np.linalg.solve(_complete_basis(expr1.right), expr2.right)  # m x k, = B^T
    target = np.zeros((expr1.n, expr1.m), dtype=complex)
    target[:k, :k] = np.eye(k)
    return float(np.max(np.abs(at @ bt.T - target)))


def recover_change_of_basis(
    expr1: TensorExpression, expr2: TensorExpression, tol: float = CERTIFY_TOL
) -> LemmaCertificate:
    """Recover ``C`` relating ``expr1`` (x_i, y_i) to ``expr2`` (w_i, z_i).

    ``C`` is the least-squares solution of ``Y C = Z``; the left relation and
    the block identity are then checked independently.

    Raises
    ------
    UnequalLength
        If the term counts differ.
    NotIndependent
        If either expression is not linearly independent.
    NotSameState
        If the two expressions evaluate to different vectors (relative to tol).
    """
    if expr1.k != expr2.k:
        raise UnequalLength(f"expressions have {expr1.k} and {expr2.k} terms")
    if (expr1.n, expr1.m) != (expr2.n, expr2.m):
        raise NotSameState("expressions live in different spaces")
    for name, e in (("first", expr1), ("second", expr2)):
        if not e.is_linearly_independent(RANK_TOL):
            raise NotIndependent(f"{name} expression is not linearly independent")
    v1, v2 = expr1.evaluate(), expr2.evaluate()
    scale = max(np.linalg.norm(v1), np.linalg.norm(v2))
    if np.linalg.norm(v1 - v2) > tol * scale:
        raise NotSameState(
            f"expressions differ by {np.linalg.norm(v1 - v2):.3e} (relative tol {tol:g})"
        )

    Y, Z = expr1.right, expr2.right
    X, W = expr1.left, expr2.left
    C, *_ = np.linalg.lstsq(Y, Z, rcond=None)
    residual_z = float(np.max(np.linalg.norm(Z - Y @ C, axis=0)))
    residual_w = float(np.max(np.linalg.norm(W - X @ np.linalg.inv(C.T), axis=0)))
    return LemmaCertificate(
        C=C,
        residual_z=residual_z,
        residual_w=residual_w,
        block_residual=block_identity_residual(expr1, expr2),
        tol=tol,
    )


def transform_expression(expr: TensorExpression, C: np.ndarray) -> TensorExpression:
    """The expression ``(x (C^T)^-1, y C)``, which evaluates to the same vector."""
    C = np.asarray(C, dtype=complex)
    return TensorExpression(expr.left @ np.linalg.inv(C.T), expr.right @ C)
