"""Harmonic-oscillator basis operators and the standard fluxonium baseline.

The phase and charge operators are tridiagonal in the number basis once a
length scale theta0 is fixed:

    theta = (theta0 / sqrt(2)) (a_dag + a)
    N     = (i / (sqrt(2) theta0)) (a_dag - a)

Functions of theta (the cosine term) are evaluated by eigendecomposing theta
in a large embedding space and truncating afterwards, so every matrix size is
a sub-matrix of the same embedded operator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .circuits import CircuitSpec, Family
from .dvr import OperatorMatrix
from .errors import ConfigError

DEFAULT_EMBED_DIM = 1001

_embed_lock = threading.Lock()


class LengthScale(str, Enum):
    LC = "lc"
    PLASMA = "plasma"


@dataclass(frozen=True)
class HoBasis:
    theta0: float
    dim: int
    embed_dim: int = DEFAULT_EMBED_DIM

    def __post_init__(self):
        if not self.theta0 > 0:
            raise ConfigError(f"theta0 must be positive, got {self.theta0}")
        if self.dim < 1:
            raise ConfigError(f"dim must be >= 1, got {self.dim}")
        if self.embed_dim < self.dim:
            raise ConfigError(f"embed_dim {self.embed_dim} < dim {self.dim}")

    @property
    def basis_tag(self) -> str:
        return f"ho[theta0={self.theta0:.6g}, dim={self.dim}]"


def length_scale(spec: CircuitSpec, which: LengthScale) -> float:
    """theta0 for the LC frequency or the plasma frequency of a circuit."""
    if spec.family is Family.TRANSMON:
        raise ConfigError("the transmon has no inductive length scale")
    if which is LengthScale.LC:
        return (8.0 * spec.E_C / spec.E_L) ** 0.25
    if spec.E_J is None:
        raise ConfigError("plasma length scale requires a Josephson energy")
    return (math.sqrt(8.0 * spec.E_C * spec.E_J) / spec.E_L) ** 0.5


def _ladder_offdiag(dim: int) -> np.ndarray:
    return np.sqrt(np.arange(1, dim) / 2.0)


def ho_operators(basis: HoBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    """(theta, N) as dim x dim tridiagonal matrices, normalized so [theta, N] = i."""
    if basis.dim < 2:
        raise ConfigError("ho_operators needs dim >= 2")
    off = _ladder_offdiag(basis.dim)
    theta = np.diag(basis.theta0 * off, 1) + np.diag(basis.theta0 * off, -1)
    n = np.diag(-1j * off / basis.theta0, 1) + np.diag(1j * off / basis.theta0, -1)
    tag = basis.basis_tag
    return OperatorMatrix(theta, tag), OperatorMatrix(n, tag)


def quadratic_operators(basis: HoBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    """(theta^2, N^2) as sub-matrices of the exact infinite-basis operators.

    Squaring the tridiagonal operators two sizes up and truncating gives the
    analytic pentadiagonal elements without edge corruption.
    """
    big = HoBasis(basis.theta0, basis.dim + 2, max(basis.embed_dim, basis.dim + 2))
    theta, n = ho_operators(big)
    d = basis.dim
    theta2 = (theta.entries @ theta.entries)[:d, :d].real
    n2 = (n.entries @ n.entries)[:d, :d].real
    return OperatorMatrix(theta2, basis.basis_tag), OperatorMatrix(n2, basis.basis_tag)


@lru_cache(maxsize=16)
def _embedded_theta_eigh(theta0: float, embed_dim: int) -> tuple[np.ndarray, np.ndarray]:
    off = theta0 * _ladder_offdiag(embed_dim)
    return eigh_tridiagonal(np.zeros(embed_dim), off)


@lru_cache(maxsize=8)
def _embedded_cos(theta0: float, embed_dim: int, A: float) -> np.ndarray:
    w, u = _embedded_theta_eigh(theta0, embed_dim)
    return (u * np.cos(w + 2.0 * np.pi * A)) @ u.T


def cos_in_ho(basis: HoBasis, A: float) -> OperatorMatrix:
    """cos(theta + 2*pi*A), built in embed_dim states and truncated to dim."""
    with _embed_lock:
        c = _embedded_cos(basis.theta0, basis.embed_dim, A)
    return OperatorMatrix(c[: basis.dim, : basis.dim], basis.basis_tag)
