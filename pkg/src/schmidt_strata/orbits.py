"""Pure states with prescribed Schmidt coefficients.

A point of the orbit is ``sum_i mu_i exp(i theta_i) a_i (x) b_i`` with
orthonormal frames (a_i), (b_i) and relative phases ``theta_1 = 0``,
``theta_{i+1} = beta_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, FrameNotOrthonormal, InvalidRank
from .states import DEGENERACY_TOL, PureState, random_frame

FRAME_TOL = 1e-10
MU_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OrbitSpec:
    n: int
    m: int
    mu: np.ndarray

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float).ravel()
        k = mu.size
        if not 1 <= k <= self.n <= self.m:
            raise InvalidRank(f"need 1 <= k <= n <= m, got k={k}, n={self.n}, m={self.m}")
        if np.any(mu <= 0):
            raise ValueError("Schmidt coefficients must be positive")
        if np.any(np.diff(mu) > 0):
            raise ValueError("Schmidt coefficients must be non-increasing")
        if abs(np.sum(mu**2) - 1.0) > MU_TOL:
            raise ValueError(f"sum of mu^2 is {np.sum(mu**2)!r}, not 1")
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)

    @classmethod
    def from_coefficients(cls, n: int, m: int, mu) -> "OrbitSpec":
        """Sort descending and normalize ``mu`` before validation."""
        mu = np.sort(np.asarray(mu, dtype=float).ravel())[::-1]
        return cls(n, m, mu / np.linalg.norm(mu))

    @property
    def k(self) -> int:
        return self.mu.size

    @property
    def degenerate(self) -> bool:
        return bool(np.any(np.abs(np.diff(self.mu)) < DEGENERACY_TOL))


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    spec: OrbitSpec
    left_frame: np.ndarray
    right_frame: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        k = self.spec.k
        left = np.array(self.left_frame, dtype=complex)
        right = np.array(self.right_frame, dtype=complex)
        phases = np.mod(np.array(self.phases, dtype=float).ravel(), 2 * np.pi)
        if left.shape != (self.spec.n, k) or right.shape != (self.spec.m, k):
            raise DimensionMismatch(
                f"frames of shape {left.shape}, {right.shape} for n={self.spec.n}, "
                f"m={self.spec.m}, k={k}"
            )
        if phases.size != k - 1:
            raise DimensionMismatch(f"expected {k - 1} relative phases, got {phases.size}")
        for arr in (left, right, phases):
            arr.setflags(write=False)
        object.__setattr__(self, "left_frame", left)
        object.__setattr__(self, "right_frame", right)
        object.__setattr__(self, "phases", phases)

    def to_state(self) -> PureState:
        return orbit_point_to_state(self)


def _check_frame(frame: np.ndarray, name: str):
    k = frame.shape[1]
    err = np.max(np.abs(frame.conj().T @ frame - np.eye(k)))
    if err > FRAME_TOL:
        raise FrameNotOrthonormal(f"{name} frame deviates from orthonormal by {err:.2e}")


def orbit_point_to_state(pt: OrbitPoint) -> PureState:
    _check_frame(pt.left_frame, "left")
    _check_frame(pt.right_frame, "right")
    theta = np.concatenate([[0.0], pt.phases])
    weights = pt.spec.mu * np.exp(1j * theta)
    return PureState.from_matrix((pt.left_frame * weights) @ pt.right_frame.T)


def schmidt_spectrum(state: PureState) -> np.ndarray:
    """All min(n, m) singular values of the coefficient matrix, descending."""
    return np.linalg.svd(state.matrix(), compute_uv=False)


def same_orbit(s1: PureState, s2: PureState, tol: float = 1e-10) -> bool:
    if (s1.n, s1.m) != (s2.n, s2.m):
        raise DimensionMismatch(f"states in {s1.n}x{s1.m} and {s2.n}x{s2.m}")
    return bool(np.max(np.abs(schmidt_spectrum(s1) - schmidt_spectrum(s2))) <= tol)


def orbit_real_dimension(n: int, m: int, k: int) -> int:
    """2k(m+n-k) - k - 1, valid for distinct coefficients."""
    if not 1 <= k <= min(n, m):
        raise InvalidRank(f"rank {k} impossible in {n} x {m}")
    return 2 * k * (m + n - k) - k - 1


def orbit_dimension_product_form(n: int, m: int, k: int) -> int:
    """Real dimension of (CP^{n-1} x CP^{m-1}) x ... x (CP^{n-k} x CP^{m-k}) x T^{k-1}."""
    if not 1 <= k <= min(n, m):
        raise InvalidRank(f"rank {k} impossible in {n} x {m}")
    return sum(2 * (n - i) + 2 * (m - i) for i in range(1, k + 1)) + (k - 1)


def sample_orbit_point(spec: OrbitSpec, seed=None) -> OrbitPoint:
    """Haar frames and uniform relative phases, deterministic per seed."""
    rng = np.random.default_rng(seed)
    left = random_frame(rng, spec.n, spec.k)
    right = random_frame(rng, spec.m, spec.k)
    phases = rng.uniform(0.0, 2 * math.pi, size=spec.k - 1)
    return OrbitPoint(spec, left, right, phases)
