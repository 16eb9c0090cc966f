"""Weierstrass functions on the lattice Z + Z*tau.

High-accuracy wp, wp', zeta, quasi-periods eta1/eta2, half-period values
e_k and invariants g2/g3 for tau in the upper half-plane.  Evaluation always
reduces tau to the standard fundamental domain (so the nome stays tiny) and
the argument into the centred lattice cell, then undoes both reductions
through the weight laws; see ``_kernels`` for the series.

All functions are pure; ModuliPoint and LatticeData are frozen.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .errors import DomainError, NearSingular
from .modular import ModularMatrix, reduce_to_standard

NEAR_SINGULAR_DIST = 1e-8
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ReductionRecord:
    """How a tau was moved into the standard fundamental domain.

    ``gamma`` satisfies gamma.tau_original = tau_reduced; applying the
    inverse Moebius map to tau_reduced recovers tau_original.
    """

    gamma: ModularMatrix
    tau_reduced: complex
    tau_original: complex

    def apply_to_reduced(self) -> complex:
        return self.gamma.inverse().moebius(self.tau_reduced)


@dataclass(frozen=True)
class ModuliPoint:
    """A point tau in the upper half-plane with its cached nome."""

    tau: complex
    q: complex
    reduction: Optional[ReductionRecord] = None

    @classmethod
    def from_tau(cls, tau: complex, reduce: bool = True) -> "ModuliPoint":
        tau = complex(tau)
        if not (tau.imag > 0.0) or not math.isfinite(tau.imag):
            raise DomainError(f"Im tau must be positive, got tau = {tau}")
        q = cmath.exp(2j * math.pi * tau)
        rec = None
        if reduce:
            tred, g = reduce_to_standard(tau)
            rec = ReductionRecord(gamma=g, tau_reduced=tred, tau_original=tau)
        return cls(tau=tau, q=q, reduction=rec)


@dataclass(frozen=True)
class HalfPeriods:
    """The fixed indexed family omega_0..omega_3 attached to a tau."""

    omega0: complex
    omega1: complex
    omega2: complex
    omega3: complex

    @classmethod
    def of(cls, m: ModuliPoint) -> "HalfPeriods":
        return cls(0.0 + 0j, 1.0 + 0j, m.tau, 1.0 + m.tau)

    def as_tuple(self):
        return (self.omega0, self.omega1, self.omega2, self.omega3)


@dataclass(frozen=True)
class LatticeData:
    """Per-tau bundle of quasi-periods, half-period values and invariants."""

    eta1: complex
    eta2: complex
    e1: complex
    e2: complex
    e3: complex
    g2: complex
    g3: complex
    est_error: float


def _as_point(m) -> ModuliPoint:
    if isinstance(m, ModuliPoint):
        return m
    return ModuliPoint.from_tau(m)


def weierstrass_p(z: complex, m) -> tuple[complex, complex]:
    """wp(z|tau) and wp'(z|tau).

    Raises NearSingular when z is within the guard distance of the lattice
    after reduction; callers handle lattice-point behaviour explicitly.
    """
    m = _as_point(m)
    z = complex(z)
    wp, wpp, zeta, eta1, eta2, g2, g3, dist, err = _kernels.elliptic_at(z, m.tau)
    if dist < NEAR_SINGULAR_DIST:
        raise NearSingular(
            f"z = {z} is within {dist:.3e} of the lattice for tau = {m.tau}"
        )
    return wp, wpp


def weierstrass_zeta(z: complex, m) -> complex:
    """zeta(z|tau), principal determination with zeta(z) = 1/z + O(z^3).

    Lattice translations used during reduction are undone exactly through
    the quasi-periods.
    """
    m = _as_point(m)
    z = complex(z)
    wp, wpp, zeta, eta1, eta2, g2, g3, dist, err = _kernels.elliptic_at(z, m.tau)
    if dist < NEAR_SINGULAR_DIST:
        raise NearSingular(
            f"z = {z} is within {dist:.3e} of the lattice for tau = {m.tau}"
        )
    return zeta


def quasi_periods(m) -> tuple[complex, complex]:
    """(eta1, eta2) with tau*eta1 - eta2 = 2*pi*i.

    eta1 comes from the Eisenstein series E2; eta2 from the Legendre
    relation, cross-checked against the independent value 2*zeta(tau/2|tau).
    """
    m = _as_point(m)
    eta1, eta2, g2, g3, e1, e2, e3, err = _kernels.lattice_values(m.tau)
    # Cross-check: oddness + quasi-periodicity force eta2 = 2*zeta(tau/2).
    zeta_half = _kernels.elliptic_at(0.5 * m.tau, m.tau)[2]
    resid = abs(2.0 * zeta_half - eta2)
    scale = 1.0 + abs(eta1) + abs(eta2)
    if resid > 1e-9 * scale:  # pragma: no cover - internal consistency guard
        raise DomainError(
            f"quasi-period cross-check failed at tau = {m.tau}: residual {resid:.3e}"
        )
    return eta1, eta2


def invariants_g(m) -> LatticeData:
    """Invariants g2, g3, half-period values e_k and quasi-periods at tau."""
    m = _as_point(m)
    eta1, eta2, g2, g3, e1, e2, e3, err = _kernels.lattice_values(m.tau)
    return LatticeData(
        eta1=eta1, eta2=eta2, e1=e1, e2=e2, e3=e3, g2=g2, g3=g3, est_error=err
    )


def eta_derivatives(m) -> tuple[complex, complex]:
    """d(eta1)/d(tau) and d(eta2)/d(tau).

    eta1' follows from the Ramanujan identity q dE2/dq = (E2^2 - E4)/12,
    rewritten in terms of eta1 and g2; eta2' from the Legendre relation.
    """
    m = _as_point(m)
    eta1, eta2, g2, g3, *_ = _kernels.lattice_values(m.tau)
    eta1p = 1j * (12.0 * eta1 * eta1 - g2) / (24.0 * math.pi)
    eta2p = eta1 + m.tau * eta1p
    return eta1p, eta2p
