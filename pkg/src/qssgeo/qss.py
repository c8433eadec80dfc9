"""The quantum state space: regular density matrices with the SLD-Fisher metric.

A point of the state space is an n x n Hermitian, strictly positive-definite
matrix of unit trace; a tangent vector at such a point is Hermitian and
traceless.  The symmetric logarithmic derivative (SLD) of a tangent vector X
at rho is the Hermitian matrix L solving X = (rho L + L rho) / 2, and the
SLD-Fisher metric is <X, Y>_rho = Tr(X^H L_rho(Y)).

All computations go through the eigendecomposition of rho, where the SLD and
its inverse are elementwise rescalings: with rho = h diag(theta) h^H and
Xt = h^H X h,

    (h^H L h)_jk = 2 / (theta_j + theta_k) * Xt_jk,

well-defined on the whole space because every theta_j is strictly positive.
Dense eigendecompositions keep this practical up to dimension ~64.

All types are immutable after construction and all operations are pure
functions, so everything here is safe to use from concurrent contexts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BaseMismatchError,
    DecompositionFailedError,
    DimensionTooSmallError,
    NotHermitianError,
    NotInSldSpaceError,
    NotPositiveDefiniteError,
    NotTracelessError,
    NotUnitTraceError,
)

# Tolerances, sized for double-precision eigendecompositions with headroom.
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PD = 1e-12
TOL_RECON = 1e-9
TOL_SLD = 1e-9
TOL_METRIC = 1e-9


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """Return (A + A^H) / 2."""
    return (a + a.conj().T) / 2


def hermitian_deviation(a: np.ndarray) -> float:
    """Return max |A - A^H|, the distance from being Hermitian."""
    return float(np.max(np.abs(a - a.conj().T)))


def frobenius(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _as_square_complex(entries) -> np.ndarray:
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A state: Hermitian, strictly positive-definite, unit-trace matrix.

    Construction validates all three invariants.  Inputs within TOL_HERM of
    Hermitian are symmetrized silently; larger deviations are rejected rather
    than masked.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = _as_square_complex(self.entries)
        dev = hermitian_deviation(a)
        if dev > TOL_HERM:
            raise NotHermitianError(dev)
        a = hermitian_part(a)
        trace_dev = abs(float(np.trace(a).real) - 1.0)
        if trace_dev > TOL_TRACE:
            raise NotUnitTraceError(trace_dev)
        smallest = float(np.linalg.eigvalsh(a)[0])
        if smallest <= TOL_PD:
            raise NotPositiveDefiniteError(smallest)
        object.__setattr__(self, "entries", _freeze(a))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and np.array_equal(
            self.entries, other.entries
        )

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())


@dataclass(frozen=True, eq=False)
class TangentVector:
    """A tangent vector at ``base``: Hermitian and traceless."""

    entries: np.ndarray
    base: DensityMatrix

    def __post_init__(self):
        a = _as_square_complex(self.entries)
        if a.shape[0] != self.base.dim:
            raise BaseMismatchError(
                f"tangent dimension {a.shape[0]} does not match base dimension {self.base.dim}"
            )
        dev = hermitian_deviation(a)
        if dev > TOL_HERM:
            raise NotHermitianError(dev)
        a = hermitian_part(a)
        trace_dev = abs(float(np.trace(a).real))
        if trace_dev > TOL_TRACE:
            raise NotTracelessError(trace_dev)
        object.__setattr__(self, "entries", _freeze(a))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class SldMatrix:
    """An SLD at ``base``: Hermitian with Tr(rho X + X rho) = 0.

    These matrices form the image of the tangent space under the SLD map,
    which is a linear bijection (see :func:`sld` / :func:`sld_inverse`).
    """

    entries: np.ndarray
    base: DensityMatrix

    def __post_init__(self):
        a = _as_square_complex(self.entries)
        if a.shape[0] != self.base.dim:
            raise BaseMismatchError(
                f"SLD dimension {a.shape[0]} does not match base dimension {self.base.dim}"
            )
        dev = hermitian_deviation(a)
        if dev > TOL_HERM:
            raise NotHermitianError(dev)
        a = hermitian_part(a)
        # Tr(rho X + X rho) = 2 Tr(rho X) for Hermitian arguments.
        pairing = 2.0 * float(np.trace(self.base.entries @ a).real)
        if abs(pairing) > TOL_TRACE:
            raise NotInSldSpaceError(abs(pairing))
        object.__setattr__(self, "entries", _freeze(a))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Unitary eigenvectors and descending real eigenvalues of a Hermitian matrix."""

    unitary: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "unitary", _freeze(np.asarray(self.unitary, dtype=complex)))
        object.__setattr__(
            self, "eigenvalues", _freeze(np.asarray(self.eigenvalues, dtype=float))
        )


def make_density(entries) -> DensityMatrix:
    """Validate ``entries`` as a density matrix.

    Raises
    ------
    NotHermitianError, NotUnitTraceError, NotPositiveDefiniteError
        Naming the violated invariant together with the measured deviation.
    """
    return DensityMatrix(np.asarray(entries, dtype=complex))


def random_density(n: int, seed: int) -> DensityMatrix:
    """Draw a random density matrix, deterministically per seed.

    Builds G with independent standard complex Gaussian entries and returns
    G G^H normalized by its trace, which is almost surely positive definite.
    """
    if n < 2:
        raise DimensionTooSmallError(n)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = g @ g.conj().T
    return DensityMatrix(a / np.trace(a).real)


def random_tangent(rho: DensityMatrix, seed: int, scale: float = 1.0) -> TangentVector:
    """Draw a random tangent vector at ``rho`` with Frobenius norm ``scale``."""
    rng = np.random.default_rng(seed)
    n = rho.dim
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x = hermitian_part(m)
    x -= (np.trace(x).real / n) * np.eye(n)
    x *= scale / frobenius(x)
    return TangentVector(x, rho)


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecompose a Hermitian matrix, eigenvalues in descending order.

    Parameters
    ----------
    a : array_like
        Square matrix, Hermitian within TOL_HERM.

    Returns
    -------
    EigenDecomposition
        With ``unitary @ diag(eigenvalues) @ unitary^H`` reconstructing the
        symmetrized input within TOL_RECON (relative to Frobenius scale).
    """
    a = _as_square_complex(a)
    dev = hermitian_deviation(a)
    if dev > TOL_HERM:
        raise NotHermitianError(dev)
    a = hermitian_part(a)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailedError(str(exc)) from exc
    # eigh returns ascending order; flip to descending.
    w = np.ascontiguousarray(w[::-1])
    v = np.ascontiguousarray(v[:, ::-1])
    recon_err = frobenius((v * w) @ v.conj().T - a)
    if recon_err > TOL_RECON * max(1.0, frobenius(a)):
        raise DecompositionFailedError(
            f"eigendecomposition reconstruction error {recon_err:.6e} exceeds tolerance"
        )
    return EigenDecomposition(v, w)


def _to_eigenbasis(e: EigenDecomposition, a: np.ndarray) -> np.ndarray:
    return e.unitary.conj().T @ a @ e.unitary


def _from_eigenbasis(e: EigenDecomposition, a: np.ndarray) -> np.ndarray:
    return e.unitary @ a @ e.unitary.conj().T


def sld(rho: DensityMatrix, x: TangentVector) -> SldMatrix:
    """Symmetric logarithmic derivative of a tangent vector.

    Returns the unique Hermitian L with X = (rho L + L rho) / 2, computed in
    the eigenbasis of rho where it is the elementwise rescaling by
    2 / (theta_j + theta_k).  Degenerate eigenvalues need no special casing:
    the rescaling depends only on the spectral projectors.
    """
    if x.base != rho:
        raise BaseMismatchError("tangent vector is not attached to the given state")
    e = eig_hermitian(rho.entries)
    theta = e.eigenvalues
    xt = _to_eigenbasis(e, x.entries)
    lt = 2.0 * xt / (theta[:, None] + theta[None, :])
    return SldMatrix(_from_eigenbasis(e, lt), rho)


def sld_inverse(rho: DensityMatrix, xi: SldMatrix) -> TangentVector:
    """Invert the SLD map: return X with (rho Xi + Xi rho) / 2 = X.

    The image characterization Tr(rho Xi + Xi rho) = 0 is re-checked so that
    hand-built inputs outside the admissible space fail loudly.
    """
    if xi.base != rho:
        raise BaseMismatchError("SLD matrix is not attached to the given state")
    pairing = 2.0 * float(np.trace(rho.entries @ xi.entries).real)
    if abs(pairing) > TOL_TRACE:
        raise NotInSldSpaceError(abs(pairing))
    e = eig_hermitian(rho.entries)
    theta = e.eigenvalues
    xit = _to_eigenbasis(e, xi.entries)
    xt = 0.5 * (theta[:, None] + theta[None, :]) * xit
    return TangentVector(_from_eigenbasis(e, xt), rho)


def fisher_metric(rho: DensityMatrix, x: TangentVector, y: TangentVector) -> float:
    """SLD-Fisher inner product <X, Y>_rho = Tr(X^H L_rho(Y)).

    Symmetric, bilinear, and positive definite on the tangent space.
    """
    if x.base != rho or y.base != rho:
        raise BaseMismatchError("tangent vectors are not attached to the given state")
    l_y = sld(rho, y)
    return float(np.trace(x.entries.conj().T @ l_y.entries).real)


def fisher_metric_from_slds(rho: DensityMatrix, x: TangentVector, y: TangentVector) -> float:
    """Same metric through the symmetrized SLD product Tr(rho {L_X, L_Y}) / 2."""
    if x.base != rho or y.base != rho:
        raise BaseMismatchError("tangent vectors are not attached to the given state")
    lx = sld(rho, x).entries
    ly = sld(rho, y).entries
    return float(0.5 * np.trace(rho.entries @ (lx @ ly + ly @ lx)).real)


def fisher_metric_eigenbasis(rho: DensityMatrix, x: TangentVector, y: TangentVector) -> float:
    """Same metric as an eigenbasis sum of 2 / (theta_j + theta_k) weighted products."""
    if x.base != rho or y.base != rho:
        raise BaseMismatchError("tangent vectors are not attached to the given state")
    e = eig_hermitian(rho.entries)
    theta = e.eigenvalues
    xt = _to_eigenbasis(e, x.entries)
    yt = _to_eigenbasis(e, y.entries)
    weights = 2.0 / (theta[:, None] + theta[None, :])
    return float(np.sum(weights * np.conj(xt) * yt).real)
