"""Hamiltonian assembly per representation and the dense Hermitian eigensolver.

A representation descriptor names a basis family (sinc DVR, harmonic
oscillator, finite differences) together with its grid; :func:`assemble`
instantiates it at a concrete matrix size and builds the circuit Hamiltonian.
Reference energies come from a closed form (LC), a large harmonic-oscillator
diagonalization (fluxonium), or a converged charge-basis oracle (transmon).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .circuits import CircuitSpec, Family, HamiltonianTerm, OperatorKind, terms
from .dvr import (
    DvrBasis,
    DvrKind,
    OperatorMatrix,
    Spacing,
    conj_function_truncated,
    conj_moment_traditional,
    conj_moment_truncated,
    cosine_in_charge,
    diag_of_discretized,
)
from .errors import ConfigError, IncompatibleRepresentationError, NumericalError
from .fdm import Boundary, FdGrid, fd_hamiltonian
from .ho import DEFAULT_EMBED_DIM, HoBasis, LengthScale, cos_in_ho, length_scale, quadratic_operators

EIGEN_RESIDUAL_RTOL = 1e-10

_reference_lock = threading.Lock()


@dataclass(frozen=True)
class DvrRep:
    """A sinc-DVR family at fixed grid spacing.

    ``spacing=None`` is allowed only for the truncated phase DVR of the
    transmon, where dTheta = 2*pi/d is a function of the matrix size.
    """

    kind: DvrKind
    spacing: Spacing | None

    @property
    def label(self) -> str:
        if self.spacing is None:
            return f"{self.kind.value}[2pi/d]"
        star = "pi" if self.spacing.pi else ""
        return f"{self.kind.value}[{self.spacing.num}/{self.spacing.den}{star}]"


@dataclass(frozen=True)
class HoRep:
    scale: LengthScale
    embed_dim: int = DEFAULT_EMBED_DIM

    @property
    def label(self) -> str:
        return f"ho[{self.scale.value}]"


@dataclass(frozen=True)
class FdRep:
    """Finite differences; ``spacing=None`` means the periodic 2*pi/d grid."""

    spacing: float | None
    order_M: int = 1
    boundary: Boundary = Boundary.BOUNDED

    @property
    def label(self) -> str:
        s = "2pi/d" if self.spacing is None else f"{self.spacing:.6g}"
        return f"fdm[{self.boundary.value},{s},M={self.order_M}]"


Representation = DvrRep | HoRep | FdRep


def charge_basis() -> DvrRep:
    """The textbook charge basis: traditional charge DVR with dN = 1."""
    return DvrRep(DvrKind.TRADITIONAL_CHARGE, Spacing(1, 1))


@dataclass(frozen=True)
class Spectrum:
    energies: np.ndarray
    eigvectors: np.ndarray  # column-major: eigvectors[:, i] belongs to energies[i]
    dim: int

    def __post_init__(self):
        if np.any(np.diff(self.energies) < 0):
            raise NumericalError("energies must be ascending")
        norms = np.linalg.norm(self.eigvectors, axis=0)
        if self.eigvectors.size and np.abs(norms - 1.0).max() > 1e-12:
            raise NumericalError("eigenvectors must be unit-norm")


def _transmon_compatible(rep: Representation) -> bool:
    if isinstance(rep, DvrRep):
        if rep.kind is DvrKind.TRADITIONAL_CHARGE:
            return rep.spacing is not None and rep.spacing.fraction == 1 and not rep.spacing.pi
        if rep.kind is DvrKind.TRUNCATED_PHASE:
            return rep.spacing is None
        return False
    if isinstance(rep, FdRep):
        return rep.boundary is Boundary.PERIODIC and rep.spacing is None
    return False


def check_compatible(spec: CircuitSpec, rep: Representation) -> None:
    if spec.family is Family.TRANSMON:
        if not _transmon_compatible(rep):
            raise IncompatibleRepresentationError(
                f"{rep!r} cannot represent the transmon: its 2*pi-periodic potential "
                "quantizes charge to integers, so only the dN=1 charge basis, the "
                "truncated phase DVR with dTheta = 2*pi/d, or the periodic "
                "finite-difference grid apply"
            )
        return
    if isinstance(rep, DvrRep):
        if rep.spacing is None:
            raise ConfigError("size-dependent spacing is reserved for the transmon")
    elif isinstance(rep, FdRep):
        if rep.boundary is Boundary.PERIODIC:
            raise IncompatibleRepresentationError(
                f"{spec.family.value} has a non-periodic potential; use a bounded grid"
            )
        if rep.spacing is None:
            raise ConfigError("bounded finite differences require an explicit spacing")
    elif isinstance(rep, HoRep):
        pass
    else:
        raise ConfigError(f"unknown representation {rep!r}")


def _dvr_term(basis: DvrBasis, term: HamiltonianTerm) -> np.ndarray:
    kind = term.kind
    if basis.kind.is_phase:
        if kind is OperatorKind.THETA_SQUARED:
            return diag_of_discretized(basis, np.square).entries
        if kind is OperatorKind.COS_THETA:
            shift = term.sign * 2.0 * np.pi * term.flux
            return diag_of_discretized(basis, lambda th: np.cos(th + shift)).entries
        if kind is OperatorKind.N_SQUARED:
            if basis.kind.is_truncated:
                return conj_moment_truncated(basis, 2).entries
            return conj_moment_traditional(basis, 2).entries
        if kind is OperatorKind.N_SHIFTED_SQUARED:
            ng = term.offset
            if basis.kind.is_truncated:
                return conj_function_truncated(basis, lambda y: (y - ng) ** 2).entries
            n1 = conj_moment_traditional(basis, 1).entries
            n2 = conj_moment_traditional(basis, 2).entries
            return n2 - 2.0 * ng * n1 + ng * ng * np.eye(basis.dim)
    else:
        if kind is OperatorKind.N_SQUARED:
            return diag_of_discretized(basis, np.square).entries
        if kind is OperatorKind.N_SHIFTED_SQUARED:
            ng = term.offset
            return diag_of_discretized(basis, lambda n: (n - ng) ** 2).entries
        if kind is OperatorKind.THETA_SQUARED:
            if basis.kind.is_truncated:
                return conj_moment_truncated(basis, 2).entries
            return conj_moment_traditional(basis, 2).entries
        if kind is OperatorKind.COS_THETA:
            return cosine_in_charge(basis, term.flux, term.sign).entries
    raise ConfigError(f"term {kind!r} not supported in {basis.kind.value}")


def concrete_dvr_basis(rep: DvrRep, dim: int) -> DvrBasis:
    if dim < 1 or dim % 2 == 0:
        raise ConfigError(f"matrix dimension must be odd and positive, got {dim}")
    m = (dim - 1) // 2
    if rep.spacing is None:
        return DvrBasis(rep.kind, Spacing(2, dim, pi=True), m)
    return DvrBasis(rep.kind, rep.spacing, m)


def _assemble_dvr(spec: CircuitSpec, rep: DvrRep, dim: int) -> OperatorMatrix:
    basis = concrete_dvr_basis(rep, dim)
    h = sum(term.coefficient * _dvr_term(basis, term) for term in terms(spec))
    return OperatorMatrix(h, basis.basis_tag)


@lru_cache(maxsize=8)
def _ho_embedded_hamiltonian(spec: CircuitSpec, scale: LengthScale, embed_dim: int) -> np.ndarray:
    """Full embedded Hamiltonian whose leading blocks give every smaller size."""
    theta0 = length_scale(spec, scale)
    basis = HoBasis(theta0, embed_dim, embed_dim)
    theta2, n2 = quadratic_operators(basis)
    h = 4.0 * spec.E_C * n2.entries + 0.5 * spec.E_L * theta2.entries
    if spec.family is Family.FLUXONIUM:
        h = h - spec.E_J * cos_in_ho(basis, spec.A).entries
    return h


def _assemble_ho(spec: CircuitSpec, rep: HoRep, dim: int) -> OperatorMatrix:
    if spec.family is Family.TRANSMON:
        raise IncompatibleRepresentationError("harmonic-oscillator transmon is unsupported")
    with _reference_lock:
        h = _ho_embedded_hamiltonian(spec, rep.scale, rep.embed_dim)
    theta0 = length_scale(spec, rep.scale)
    tag = f"ho[theta0={theta0:.6g}, dim={dim}]"
    return OperatorMatrix(np.array(h[:dim, :dim]), tag)


def _assemble_fd(spec: CircuitSpec, rep: FdRep, dim: int) -> OperatorMatrix:
    if dim < 3 or dim % 2 == 0:
        raise ConfigError(f"matrix dimension must be odd and >= 3, got {dim}")
    half = (dim - 1) // 2
    spacing = 2.0 * math.pi / dim if rep.spacing is None else rep.spacing
    grid = FdGrid(spacing, half, order_M=rep.order_M, boundary=rep.boundary)
    return fd_hamiltonian(spec, grid)


def assemble(spec: CircuitSpec, rep: Representation, dim: int) -> OperatorMatrix:
    """Hermitian dim x dim Hamiltonian of the circuit in the representation (GHz)."""
    check_compatible(spec, rep)
    if isinstance(rep, DvrRep):
        return _assemble_dvr(spec, rep, dim)
    if isinstance(rep, HoRep):
        return _assemble_ho(spec, rep, dim)
    return _assemble_fd(spec, rep, dim)


def _as_solver_matrix(h: np.ndarray) -> np.ndarray:
    """Drop a numerically-zero imaginary part so LAPACK takes the real path."""
    if np.iscomplexobj(h):
        scale = max(float(np.abs(h).max(initial=0.0)), 1.0)
        if float(np.abs(h.imag).max(initial=0.0)) <= 1e-14 * scale:
            return np.ascontiguousarray(h.real)
    return h


def eigensolve(h: OperatorMatrix, k: int) -> Spectrum:
    """Lowest k eigenpairs of a Hermitian matrix, ascending and unit-norm."""
    mat = h.entries
    dim = h.dim
    if not 1 <= k <= dim:
        raise ConfigError(f"k must be in [1, {dim}], got {k}")
    norm = max(float(np.abs(mat).max(initial=0.0)), 1.0)
    defect = float(np.abs(mat - mat.conj().T).max(initial=0.0))
    if defect > EIGEN_RESIDUAL_RTOL * norm:
        raise NumericalError(f"input is not Hermitian (defect {defect:.3e})")
    energies, vectors = scipy.linalg.eigh(
        _as_solver_matrix(mat), subset_by_index=(0, k - 1)
    )
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    return Spectrum(energies, vectors, dim)


def eigenvalues(spec: CircuitSpec, rep: Representation, dim: int, upto: int) -> np.ndarray:
    """Lowest upto+1 eigenvalues; values-only fast path for sweeps."""
    h = _as_solver_matrix(assemble(spec, rep, dim).entries)
    return scipy.linalg.eigvalsh(h, subset_by_index=(0, min(upto, dim - 1)))


@lru_cache(maxsize=32)
def _fluxonium_reference(spec: CircuitSpec, embed_dim: int) -> np.ndarray:
    h = _ho_embedded_hamiltonian(spec, LengthScale.LC, embed_dim)
    return scipy.linalg.eigvalsh(h)


@lru_cache(maxsize=32)
def _transmon_reference(spec: CircuitSpec, dim: int) -> np.ndarray:
    h = _as_solver_matrix(_assemble_dvr(spec, charge_basis(), dim).entries)
    k = min(64, dim)
    energies, vectors = scipy.linalg.eigh(h, subset_by_index=(0, k - 1))
    # In the charge limit ||H|| grows like E_C * dim^2, so plain double-precision
    # eigenvalues carry backward error ~eps * ||H|| (1e-11 GHz at dim 601).  One
    # Rayleigh-quotient pass in extended precision removes it: the quotient error
    # is quadratic in the eigenvector error, well below 1e-12 GHz.
    wide = np.clongdouble if np.iscomplexobj(h) else np.longdouble
    hw = h.astype(wide)
    vw = vectors.astype(wide)
    hv = hw @ vw
    num = np.einsum("ij,ij->j", vw.conj(), hv)
    den = np.einsum("ij,ij->j", vw.conj(), vw)
    return (num / den).real.astype(float)


def reference_energy(spec: CircuitSpec, level: int, oracle_dim: int | None = None) -> float:
    """Converged reference energy of one level, in GHz.

    LC: the closed form sqrt(8 E_C E_L) (n + 1/2).  Fluxonium: the standard
    1001-state harmonic-oscillator diagonalization.  Transmon: a 401-state
    charge-basis diagonalization standing in for the exact characteristic
    values.
    """
    if level < 0:
        raise ConfigError(f"level must be >= 0, got {level}")
    if spec.family is Family.LC:
        return math.sqrt(8.0 * spec.E_C * spec.E_L) * (level + 0.5)
    with _reference_lock:
        if spec.family is Family.FLUXONIUM:
            return float(_fluxonium_reference(spec, oracle_dim or DEFAULT_EMBED_DIM)[level])
        return float(_transmon_reference(spec, oracle_dim or 401)[level])
