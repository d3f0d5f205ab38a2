"""Metric on pure-state projective space and numerical dimension certificates.

A dimension claim is certified by building a smooth real parameterization of
the set near a random point, mapping into affine coordinates of CP^{N-1}
(divide by the largest coordinate at the base point, drop it), and reading
the rank of the central finite-difference Jacobian off its singular values.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg

from .charts import (
    GrassmannChartPoint,
    ProjectiveMatrixPoint,
    StratumPoint,
    random_stratum_point,
    stratum_complex_dimension,
)
from .embedding import embed, embed_matrices
from .errors import DegenerateCoefficients, IllConditioned, InvalidRank
from .orbits import OrbitPoint, OrbitSpec, orbit_point_to_state, orbit_real_dimension, sample_orbit_point

FD_STEP = 1e-5
RANK_REL_TOL = 1e-6
# finite-difference noise sits near 1e-10; anything below this is a zero column
RANK_ABS_TOL = 1e-8
PASS_GAP = 1e4
ILL_GAP = 1e2


class MetricMode(str, enum.Enum):
    VERBATIM = "verbatim"
    FUBINI_STUDY = "fubini_study"


@dataclass(frozen=True, eq=False)
class ChartPoint:
    """Affine point of the chart {z_alpha != 0} of CP^{N-1}; ``alpha`` is 0-based."""

    ambient_dim: int
    alpha: int
    z: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=complex).ravel()
        if z.size != self.ambient_dim - 1:
            raise ValueError(f"need {self.ambient_dim - 1} affine coordinates, got {z.size}")
        if not 0 <= self.alpha < self.ambient_dim:
            raise ValueError(f"chart index {self.alpha} out of range")
        if not np.all(np.isfinite(z)):
            raise ValueError("affine coordinates must be finite")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @classmethod
    def from_vector(cls, vec, alpha: int | None = None) -> "ChartPoint":
        vec = np.asarray(vec, dtype=complex).ravel()
        if alpha is None:
            alpha = int(np.argmax(np.abs(vec)))
        if vec[alpha] == 0:
            raise ValueError(f"coordinate {alpha} vanishes; point is outside this chart")
        return cls(vec.size, alpha, np.delete(vec / vec[alpha], alpha))

    def to_vector(self) -> np.ndarray:
        return np.insert(self.z, self.alpha, 1.0)


@dataclass(frozen=True, eq=False)
class MetricTensor:
    h: np.ndarray
    mode: MetricMode


def metric_tensor(pt: ChartPoint, mode: MetricMode | str = MetricMode.VERBATIM) -> MetricTensor:
    """h_kj = ((1 + |z|^2) delta_kj - z_j conj(z_k)) / (1 + |z|^2)^p.

    ``p = 1`` in verbatim mode (the denominator as printed with the original
    formula), ``p = 2`` for the standard Fubini-Study form.
    """
    mode = MetricMode(mode)
    z = pt.z
    s = 1.0 + float(np.vdot(z, z).real)
    h = s * np.eye(z.size, dtype=complex) - np.outer(z.conj(), z)
    h = h / (s if mode is MetricMode.VERBATIM else s * s)
    return MetricTensor(h, mode)


def density_stratum_dimension(n: int, r: int) -> int:
    """Real dimension 2nr - r^2 - 1 of rank-r density matrices on C^n."""
    if not 1 <= r <= n:
        raise InvalidRank(f"rank {r} impossible for density matrices on C^{n}")
    return 2 * n * r - r * r - 1


@dataclass(frozen=True, eq=False)
class DimensionCertificate:
    claimed: int
    measured: int
    singular_values: np.ndarray
    gap_ratio: float
    passed: bool | None
    warnings: tuple[str, ...] = field(default=())

    @property
    def ill_conditioned(self) -> bool:
        return self.gap_ratio <= PASS_GAP

    def check(self) -> "DimensionCertificate":
        """Raise unless the certificate is a clean pass (degenerate ones excepted)."""
        if self.gap_ratio < ILL_GAP:
            raise IllConditioned(f"singular-value gap {self.gap_ratio:.3g} below {ILL_GAP:g}")
        if self.passed is False:
            raise AssertionError(
                f"measured rank {self.measured} != claimed {self.claimed} "
                f"(gap {self.gap_ratio:.3g})"
            )
        return self


def numerical_rank(singular_values: np.ndarray) -> tuple[int, float]:
    """Rank ``r`` = #(sigma_i / sigma_1 > 1e-6) and gap ``sigma_r / sigma_{r+1}``.

    Singular values below an absolute floor of 1e-8 never count.
    """
    s = np.asarray(singular_values)
    if s.size == 0 or s[0] <= RANK_ABS_TOL:
        return 0, float("inf")
    r = int(np.count_nonzero((s / s[0] > RANK_REL_TOL) & (s > RANK_ABS_TOL)))
    if r == s.size:
        return r, float("inf")
    nxt = s[r]
    return r, float("inf") if nxt == 0 else float(s[r - 1] / nxt)


def affine_map(vector_fn: Callable[[np.ndarray], np.ndarray], base_params: np.ndarray):
    """Compose ``vector_fn`` with real affine coordinates fixed at the base point."""
    v0 = vector_fn(base_params)
    alpha = int(np.argmax(np.abs(v0)))

    def f(params):
        v = vector_fn(params)
        z = np.delete(v / v[alpha], alpha)
        return np.concatenate([z.real, z.imag])

    return f


def finite_difference_jacobian(f, x0: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    x0 = np.asarray(x0, dtype=float)
    cols = []
    for j in range(x0.size):
        e = np.zeros_like(x0)
        e[j] = step
        cols.append((f(x0 + e) - f(x0 - e)) / (2 * step))
    return np.column_stack(cols) if cols else np.zeros((f(x0).size, 0))


def certify(vector_fn, base_params, claimed: int, fd_step: float = FD_STEP, degenerate=False):
    """Jacobian-rank certificate for the image of ``vector_fn`` in CP^{N-1}."""
    f = affine_map(vector_fn, base_params)
    jac = finite_difference_jacobian(f, base_params, fd_step)
    s = np.linalg.svd(jac, compute_uv=False) if jac.size else np.zeros(0)
    measured, gap = numerical_rank(s)
    notes = []
    if degenerate:
        notes.append("DegenerateCoefficients: repeated Schmidt coefficients, formula not applicable")
        passed = None
    else:
        passed = measured == claimed and gap > PASS_GAP
    if gap <= PASS_GAP:
        notes.append(f"IllConditioned: singular-value gap {gap:.3g} at rank {measured}")
    return DimensionCertificate(claimed, measured, s, gap, passed, tuple(notes))


def _split_complex(params: np.ndarray, sizes: list[int]) -> list[np.ndarray]:
    out, i = [], 0
    for size in sizes:
        out.append(params[i : i + size] + 1j * params[i + size : i + 2 * size])
        i += 2 * size
    return out


def _join_complex(arrays) -> np.ndarray:
    parts = []
    for a in arrays:
        a = np.ravel(a)
        parts += [a.real, a.imag]
    return np.concatenate(parts) if parts else np.zeros(0)


def stratum_parameterization(p: StratumPoint, mode: str = "chart"):
    """Real parameterization of the rank-k stratum around ``embed(p)``.

    ``mode="chart"`` uses the chart coordinates of ``p`` (the core in its affine
    chart at its largest entry), one real parameter per real dimension.
    ``mode="redundant"`` lets the full X, A, Y vary, so GL(k) x GL(k) and the
    core scale are redundant and the rank is a genuine image dimension.
    Returns ``(vector_fn, base_params)``.
    """
    n, m, k = p.n, p.m, p.k
    if mode == "redundant":
        X0, A0, Y0 = p.left.full_matrix(), np.array(p.core.B), p.right.full_matrix()
        sizes = [X0.size, A0.size, Y0.size]

        def fn(params):
            X, A, Y = _split_complex(params, sizes)
            return embed_matrices(X.reshape(k, n), A.reshape(k, k), Y.reshape(k, m)).ravel()

        return fn, _join_complex([X0, A0, Y0])
    if mode != "chart":
        raise ValueError(f"unknown parameterization mode {mode!r}")

    B0 = np.array(p.core.B)
    pivot = int(np.argmax(np.abs(B0)))
    a0 = np.delete((B0 / B0.flat[pivot]).ravel(), pivot)
    sizes = [p.left.coeffs.size, a0.size, p.right.coeffs.size]

    def fn(params):
        x, a, y = _split_complex(params, sizes)
        core = np.insert(a, pivot, 1.0).reshape(k, k)
        q = StratumPoint(
            GrassmannChartPoint(n, k, p.left.pivot_cols, x.reshape(k, n - k)),
            ProjectiveMatrixPoint.from_matrix(core),
            GrassmannChartPoint(m, k, p.right.pivot_cols, y.reshape(k, m - k)),
        )
        return embed(q).vec

    return fn, _join_complex([p.left.coeffs, a0, p.right.coeffs])


def certify_stratum_dimension(
    n: int, m: int, k: int, seed=0, fd_step: float = FD_STEP, mode: str = "chart"
) -> DimensionCertificate:
    """Certify real dimension 2k(n+m-k) - 2 of the rank-k pure states in C^n (x) C^m."""
    claimed = 2 * stratum_complex_dimension(n, m, k)
    p = random_stratum_point(n, m, k, seed)
    fn, x0 = stratum_parameterization(p, mode)
    return certify(fn, x0, claimed, fd_step)


def _anti_hermitian(params: np.ndarray, dim: int) -> np.ndarray:
    """Anti-Hermitian matrix from dim^2 real parameters."""
    K = np.zeros((dim, dim), dtype=complex)
    K[np.diag_indices(dim)] = 1j * params[:dim]
    iu = np.triu_indices(dim, 1)
    npair = iu[0].size
    upper = params[dim : dim + npair] + 1j * params[dim + npair : dim + 2 * npair]
    K[iu] = upper
    K[(iu[1], iu[0])] = -upper.conj()
    return K


def _complete_unitary(frame: np.ndarray) -> np.ndarray:
    dim, k = frame.shape
    if k == dim:
        return frame
    u, _, _ = np.linalg.svd(frame, full_matrices=True)
    return np.hstack([frame, u[:, k:]])


def orbit_parameterization(pt: OrbitPoint):
    """Real parameterization of the fixed-coefficient orbit around ``pt``.

    Frames move by ``U0 expm(K)`` for anti-Hermitian K (n^2 + m^2 real
    parameters); the k-1 relative phases are added on top. The parameters are
    redundant: the torus and the unitary groups of the complements act trivially.
    """
    spec = pt.spec
    n, m, k = spec.n, spec.m, spec.k
    U0 = _complete_unitary(pt.left_frame)
    V0 = _complete_unitary(pt.right_frame)

    def fn(params):
        KL = _anti_hermitian(params[: n * n], n)
        KR = _anti_hermitian(params[n * n : n * n + m * m], m)
        beta = pt.phases + params[n * n + m * m :]
        left = (U0 @ scipy.linalg.expm(KL))[:, :k]
        right = (V0 @ scipy.linalg.expm(KR))[:, :k]
        return orbit_point_to_state(OrbitPoint(spec, left, right, beta)).vec

    return fn, np.zeros(n * n + m * m + k - 1)


def certify_orbit_dimension(spec: OrbitSpec, seed=0, fd_step: float = FD_STEP) -> DimensionCertificate:
    """Certify real dimension 2k(m+n-k) - k - 1 of a fixed-coefficient orbit.

    For degenerate coefficients a :class:`DegenerateCoefficients` warning is
    emitted and the certificate carries ``passed=None``.
    """
    claimed = orbit_real_dimension(spec.n, spec.m, spec.k)
    if spec.degenerate:
        warnings.warn(
            f"Schmidt coefficients {spec.mu} are degenerate; measured rank is reported "
            "without a verdict on the formula",
            DegenerateCoefficients,
            stacklevel=2,
        )
    fn, x0 = orbit_parameterization(sample_orbit_point(spec, seed))
    return certify(fn, x0, claimed, fd_step, degenerate=spec.degenerate)


def certify_density_stratum_dimension(
    n: int, r: int, seed=0, fd_step: float = FD_STEP
) -> DimensionCertificate:
    """Certify 2nr - r^2 - 1 for rank-r density matrices via rho = W W^dag / tr.

    Hermitian rho is mapped to real coordinates by its real and imaginary parts,
    which play the role of the projective coordinates in :func:`certify`.
    """
    claimed = density_stratum_dimension(n, r)
    rng = np.random.default_rng(seed)
    W0 = (rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))) / np.sqrt(2)

    def fn(params):
        (W,) = _split_complex(params, [n * r])
        W = W.reshape(n, r)
        rho = W @ W.conj().T
        return rho / np.trace(rho).real

    def f(params):
        rho = fn(params)
        return np.concatenate([rho.real.ravel(), rho.imag.ravel()])

    x0 = _join_complex([W0])
    jac = finite_difference_jacobian(f, x0, fd_step)
    s = np.linalg.svd(jac, compute_uv=False)
    measured, gap = numerical_rank(s)
    passed = measured == claimed and gap > PASS_GAP
    notes = () if gap > PASS_GAP else (f"IllConditioned: singular-value gap {gap:.3g}",)
    return DimensionCertificate(claimed, measured, s, gap, passed, notes)
