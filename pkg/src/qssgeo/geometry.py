"""Exponential-type parallel transport and its geodesics on the state space.

The exponential-type (e-) transport moves a tangent vector X at rho1 to

    tau(X) = (rho2 L + L rho2) / 2 - Tr(rho2 L) rho2,      L = sld(rho1, X),

which is the direct form of the defining relation on SLDs,
L_rho2(tau(X)) = L_rho1(X) - Tr(rho2 L_rho1(X)) I.  The autoparallel curves
of this transport admit a closed form: from rho0 with initial tangent X0 and
L = sld(rho0, X0),

    rho(t) = E(t) rho0 E(t) / Tr(E(t) rho0 E(t)),      E(t) = exp(t L / 2),

evaluated spectrally since L is Hermitian.  No marching is needed; each time
is a pointwise evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    BaseMismatchError,
    DimensionMismatchError,
    InvalidStepError,
    NegativeTimeDisabledError,
)
from .qss import (
    TOL_SLD,
    DensityMatrix,
    SldMatrix,
    TangentVector,
    eig_hermitian,
    frobenius,
    hermitian_part,
    random_density,
    sld,
    sld_inverse,
)


@dataclass(frozen=True, eq=False)
class GeodesicSpec:
    """Initial data of a geodesic: start point, initial tangent, and its SLD.

    The SLD is computed on construction when not supplied; a supplied one is
    checked against sld(start, initial_tangent) within TOL_SLD.
    """

    start: DensityMatrix
    initial_tangent: TangentVector
    cached_sld: SldMatrix | None = None

    def __post_init__(self):
        if self.initial_tangent.base != self.start:
            raise BaseMismatchError("initial tangent is not attached to the start point")
        computed = sld(self.start, self.initial_tangent)
        if self.cached_sld is None:
            object.__setattr__(self, "cached_sld", computed)
        else:
            if self.cached_sld.base != self.start:
                raise BaseMismatchError("cached SLD is not attached to the start point")
            gap = frobenius(self.cached_sld.entries - computed.entries)
            if gap > TOL_SLD:
                raise ValueError(
                    f"cached SLD deviates from sld(start, initial_tangent) by {gap:.6e}"
                )

    @property
    def dim(self) -> int:
        return self.start.dim

    @cached_property
    def _sld_eig(self):
        e = eig_hermitian(self.cached_sld.entries)
        return e.eigenvalues, e.unitary


def e_transport(rho1: DensityMatrix, rho2: DensityMatrix, x: TangentVector) -> TangentVector:
    """Transport ``x`` from rho1 to rho2.

    The result is Hermitian and traceless by construction; its SLD at rho2
    equals sld(rho1, x) shifted by -Tr(rho2 sld(rho1, x)) I.
    """
    if x.base != rho1:
        raise BaseMismatchError("tangent vector is not attached to the source state")
    if rho1.dim != rho2.dim:
        raise DimensionMismatchError(
            f"source dimension {rho1.dim} != target dimension {rho2.dim}"
        )
    l = sld(rho1, x).entries
    r2 = rho2.entries
    out = 0.5 * (r2 @ l + l @ r2) - float(np.trace(r2 @ l).real) * r2
    return TangentVector(out, rho2)


def is_e_parallel(x1: TangentVector, x2: TangentVector, tol: float) -> bool:
    """Whether ``x2`` equals the transport of ``x1`` to x2's base, within ``tol``."""
    if x1.dim != x2.dim:
        raise DimensionMismatchError(f"dimensions differ: {x1.dim} != {x2.dim}")
    moved = e_transport(x1.base, x2.base, x1)
    return frobenius(x2.entries - moved.entries) <= tol


def e_geodesic(spec: GeodesicSpec, t: float, allow_negative: bool = False) -> DensityMatrix:
    """Evaluate the geodesic of ``spec`` at time ``t``.

    Spectral evaluation: eigendecompose the Hermitian SLD once (cached on the
    spec), exponentiate eigenvalues, conjugate the start point, normalize the
    trace.  Exponents are shifted by their maximum before exponentiating; the
    shift cancels in the trace normalization and prevents overflow.

    Negative times are well-defined by the same formula but disabled by
    default to match the curve's stated domain t >= 0.
    """
    if t < 0 and not allow_negative:
        raise NegativeTimeDisabledError(t)
    lam, v = spec._sld_eig
    expo = 0.5 * t * lam
    e_half = (v * np.exp(expo - expo.max())) @ v.conj().T
    m = e_half @ spec.start.entries @ e_half
    m = hermitian_part(m)
    return DensityMatrix(m / np.trace(m).real)


def autoparallel_residual(spec: GeodesicSpec, t: float, dt_fd: float) -> float:
    """Frobenius gap between the curve's velocity and the transported initial tangent.

    The velocity at ``t`` is approximated by the central difference with step
    ``dt_fd``, so the returned residual is O(dt_fd^2) for a true autoparallel
    curve.
    """
    if dt_fd <= 0 or dt_fd >= t:
        raise InvalidStepError(f"step must satisfy 0 < dt_fd < t, got dt_fd={dt_fd}, t={t}")
    ahead = e_geodesic(spec, t + dt_fd).entries
    behind = e_geodesic(spec, t - dt_fd).entries
    velocity_fd = (ahead - behind) / (2.0 * dt_fd)
    moved = e_transport(spec.start, e_geodesic(spec, t), spec.initial_tangent)
    return frobenius(velocity_fd - moved.entries)


def random_geodesic_spec(n: int, seed: int, sld_scale: float = 1.0) -> GeodesicSpec:
    """Draw a random geodesic spec with an SLD of Frobenius norm ``sld_scale``.

    Sampling the SLD (rather than the tangent) keeps the curve's speed
    independent of how small the state's eigenvalues happen to be.
    """
    rng = np.random.default_rng(seed)
    rho = random_density(n, seed)
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    xi = hermitian_part(m)
    # Project onto Tr(rho Xi) = 0, the admissible space of SLDs at rho.
    xi -= float(np.trace(rho.entries @ xi).real) * np.eye(n)
    xi *= sld_scale / frobenius(xi)
    x0 = sld_inverse(rho, SldMatrix(xi, rho))
    return GeodesicSpec(rho, x0)
