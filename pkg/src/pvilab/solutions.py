"""Closed-form solution values: the cover map t(tau), wp(p_{r,s}(tau)|tau)
and lambda_{r,s}(t), with pole detection.

wp(p) = wp(alpha) + [3 wp'(alpha) Z^2 + (12 wp(alpha)^2 - g2) Z
                       + 3 wp(alpha) wp'(alpha)] / (2 Z2),
with alpha = r + s*tau, Z the Hecke form and Z2 its weight-3 cube
combination.  The map to the t-plane is

    t = (e3 - e1)/(e2 - e1),    lambda = (wp(p) - e1)/(e2 - e1).

Poles of lambda are exactly the tau where alpha hits the lattice or Z2
vanishes; near a lattice hit the direct formula cancels catastrophically and
evaluation switches to a Laurent expansion in the small shifted argument
whose 1/alpha cancellation is done symbolically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Union

from . import _kernels
from .elliptic import ModuliPoint, _as_point, eta_derivatives, invariants_g
from .errors import Degenerate, Inconclusive, NewtonStall
from .modular import branch_copy
from .premodular import TorsionPair, z2_with_scale

_PI = math.pi

# |alpha - lattice| below which the direct formula for wp(p) is abandoned
# for the Laurent expansion.  The direct path loses ~eps/|alpha|^3 through
# three nested cancellations (numerator, denominator, final subtraction)
# while the expansion truncates at O(alpha^4) relative; the error curves
# cross near 1e-3, leaving [8e-4, 6e-3] as the annulus where both paths are
# good to 1e-6 relative.
EXPANSION_SWITCH = 2e-3
# |alpha - lattice| treated as an exact lattice hit (a pole of lambda).
LATTICE_HIT = 1e-12
# |Z2| below this multiple of its natural scale counts as a zero of the
# denominator (a pole of lambda).
Z2_ZERO_RTOL = 1e-12

_INF = complex(math.inf, 0.0)


def _is_inf(x: Optional[complex]) -> bool:
    return x is not None and (math.isinf(x.real) or math.isinf(x.imag))


@dataclass(frozen=True)
class PoleExpansion:
    """Laurent data of wp(p) at a lattice-type pole.

    ``leading`` is -c0/(3*alpha_shifted) at the queried tau (infinite at an
    exact hit); c0 = r*eta1 + s*eta2 for the lattice-shifted pair equals
    -2*pi*i*s_shifted at the hit.
    """

    c0: complex
    c1: complex
    leading: complex


@dataclass(frozen=True)
class ZeroWitness:
    """Newton-refined zero of Z2 backing a z2-type pole verdict."""

    tau0: complex
    residual: float
    dz_mag: float
    newton_iters: int


@dataclass(frozen=True)
class SolutionValue:
    """lambda_{r,s} at one tau, with the moduli data used to compute it."""

    tau: ModuliPoint
    t: complex
    wp_p: complex
    lam: complex
    is_pole: bool
    branch_note: str
    alpha: complex


def t_of_tau(m) -> complex:
    """The Gamma(2)-invariant cover map t = (e3 - e1)/(e2 - e1)."""
    m = _as_point(m)
    lat = invariants_g(m)
    return (lat.e3 - lat.e1) / (lat.e2 - lat.e1)


def _lattice_shift(pair: TorsionPair, tau: complex):
    """Shifted parameters (r~, s~) and alpha~ = r~ + s~*tau with alpha~ the
    representative of alpha nearest the origin."""
    r, s = pair.as_complex()
    alpha = r + s * tau
    z0, mm, nn, dist = _kernels.reduce_z(alpha, tau)
    # reduce_z centres on the rounded cell; re-centre on the true nearest point
    best = (abs(z0), 0, 0)
    for em in (-1, 0, 1):
        for en in (-1, 0, 1):
            w = z0 - em - en * tau
            if abs(w) < best[0]:
                best = (abs(w), em, en)
    mm += best[1]
    nn += best[2]
    atil = alpha - mm - nn * tau
    return r - mm, s - nn, atil


def _wp_of_p_direct(pair: TorsionPair, m: ModuliPoint) -> complex:
    r, s = pair.as_complex()
    z, wp, wpp, z2v, g2, g3, eta1, eta2, scale, dist, err = _kernels.premodular_at(
        r, s, m.tau
    )
    if abs(z2v) <= Z2_ZERO_RTOL * scale:
        return _INF
    num = 3.0 * wpp * z * z + (12.0 * wp * wp - g2) * z + 3.0 * wp * wpp
    return wp + num / (2.0 * z2v)


def _wp_of_p_expansion(pair: TorsionPair, m: ModuliPoint) -> complex:
    """Laurent evaluation for alpha within EXPANSION_SWITCH of the lattice.

    With a = alpha~ and c0 = r~ eta1 + s~ eta2 (everything at the current
    tau), the symbolically cancelled series reads

        wp(p) = -c0/(3a) - c0^2/9 - (g2/(9 c0) + c0^3/27) a
                + (g2/20 + 2 g2/135 + g3/(6 c0^2) - c0^4/81) a^2 + O(a^3).
    """
    rt, st, a = _lattice_shift(pair, m.tau)
    eta1, eta2, g2, g3, e1, e2, e3, err = _kernels.lattice_values(m.tau)
    c0 = rt * eta1 + st * eta2
    if abs(c0) < 1e-10:
        raise Degenerate(
            "vanishing c0 in the lattice expansion: the pair degenerates"
        )
    if abs(a) < LATTICE_HIT:
        return _INF
    return (
        -c0 / (3.0 * a)
        - c0 * c0 / 9.0
        - (g2 / (9.0 * c0) + c0**3 / 27.0) * a
        + (g2 / 20.0 + 2.0 * g2 / 135.0 + g3 / (6.0 * c0 * c0) - c0**4 / 81.0) * a * a
    )


def wp_of_p(p: TorsionPair, m) -> complex:
    """wp(p_{r,s}(tau)|tau); complex infinity when tau is a pole of lambda."""
    if p.degenerate:
        raise Degenerate(f"(r, s) = {p.r, p.s} is degenerate")
    m = _as_point(m)
    _, _, atil = _lattice_shift(p, m.tau)
    if abs(atil) < EXPANSION_SWITCH:
        return _wp_of_p_expansion(p, m)
    return _wp_of_p_direct(p, m)


def lambda_rs(p: TorsionPair, m) -> SolutionValue:
    """Full solution value at tau: t, wp(p), lambda and pole flag."""
    m = _as_point(m)
    lat = invariants_g(m)
    t = (lat.e3 - lat.e1) / (lat.e2 - lat.e1)
    wpp_val = wp_of_p(p, m)
    if _is_inf(wpp_val):
        lam = _INF
        pole = True
    else:
        lam = (wpp_val - lat.e1) / (lat.e2 - lat.e1)
        pole = False
    r, s = p.as_complex()
    return SolutionValue(
        tau=m,
        t=t,
        wp_p=wpp_val,
        lam=lam,
        is_pole=pole,
        branch_note=branch_copy(m.tau),
        alpha=r + s * m.tau,
    )


def _newton_z2(pair: TorsionPair, tau0: complex, max_iter: int = 50):
    """Newton refinement of a zero of Z2 in tau, derivative by a 4-point
    central difference on the holomorphic function (step 1e-6)."""
    h = 1e-6
    tau = tau0
    last_scale = 1.0
    for it in range(1, max_iter + 1):
        f, scale = z2_with_scale(pair, ModuliPoint.from_tau(tau, reduce=False))
        last_scale = scale
        if abs(f) <= 1e-13 * scale:
            fp = _z2_derivative(pair, tau, h)
            return tau, abs(f), abs(fp), it
        fp = _z2_derivative(pair, tau, h)
        if fp == 0:
            break
        step = f / fp
        tau = tau - step
        if tau.imag <= 1e-6:
            break
        if abs(step) < 1e-14 * max(1.0, abs(tau)):
            f2, scale2 = z2_with_scale(pair, ModuliPoint.from_tau(tau, reduce=False))
            fp2 = _z2_derivative(pair, tau, h)
            return tau, abs(f2), abs(fp2), it
    f, scale = z2_with_scale(pair, ModuliPoint.from_tau(tau, reduce=False))
    if abs(f) <= 1e-10 * scale:
        fp = _z2_derivative(pair, tau, h)
        return tau, abs(f), abs(fp), max_iter
    raise NewtonStall(
        f"Newton failed to converge for {pair} from {tau0}: |Z2| = {abs(f):.3e}"
    )


def _z2_derivative(pair: TorsionPair, tau: complex, h: float) -> complex:
    def f(t):
        return z2_with_scale(pair, ModuliPoint.from_tau(t, reduce=False))[0]

    return (f(tau - 2 * h) - 8.0 * f(tau - h) + 8.0 * f(tau + h) - f(tau + 2 * h)) / (
        12.0 * h
    )


def _default_pole_tol(pair: TorsionPair, scale: float) -> float:
    """1e-9 times the cusp-asymptotic magnitude when that is available and
    non-tiny, otherwise 1e-9 times the local term scale."""
    base = scale
    if pair.is_real:
        from .premodular import cusp_asymptotic

        lead, order = cusp_asymptotic(pair)
        if abs(lead) > 1e-6:
            base = abs(lead)
    return 1e-9 * base


def pole_test(
    p: TorsionPair, m, tol: Optional[float] = None
) -> tuple[bool, str, Union[PoleExpansion, ZeroWitness, None]]:
    """Is t(tau) a pole of lambda_{r,s}?  Returns (is_pole, kind, witness).

    kind is "lattice" when alpha = r + s*tau lies on the lattice, "z2-zero"
    when the denominator vanishes (Newton-refined before judging), "none"
    otherwise.  |Z2| inside (tol, 10 tol) of the decision scale raises
    Inconclusive.
    """
    if p.degenerate:
        raise Degenerate(f"(r, s) = {p.r, p.s} is degenerate")
    m = _as_point(m)
    rt, st, atil = _lattice_shift(p, m.tau)
    if abs(atil) < 1e-8:
        eta1, eta2, g2, g3, *_ = _kernels.lattice_values(m.tau)
        eta1p, eta2p = eta_derivatives(m)
        c0 = rt * eta1 + st * eta2
        c1 = (rt / st) * eta1p + eta2p if st != 0 else eta2p
        leading = -c0 / (3.0 * atil) if abs(atil) > 0 else _INF
        return True, "lattice", PoleExpansion(c0=c0, c1=c1, leading=leading)

    val, scale = z2_with_scale(p, m)
    tol_abs = tol * scale if tol is not None else _default_pole_tol(p, scale)
    if abs(val) <= tol_abs:
        tau0, resid, dz, iters = _newton_z2(p, m.tau)
        return True, "z2-zero", ZeroWitness(
            tau0=tau0, residual=resid, dz_mag=dz, newton_iters=iters
        )
    if abs(val) <= 10.0 * tol_abs:
        raise Inconclusive(
            f"|Z2| = {abs(val):.3e} inside the ambiguity band "
            f"({tol_abs:.3e}, {10 * tol_abs:.3e}); tighten precision"
        )
    return False, "none", None


def symmetry_check(N: int, m) -> dict:
    """Residuals of the two reflection identities tying the three basic
    N-torsion solutions together.

    Identity 1 (via tau' = -1/tau, where t -> 1 - t):
        lambda_{1/N,0}(1 - t) = 1 - lambda_{0,1/N}(t)
    Identity 2 (via tau' = tau - 1, where t -> 1/t):
        lambda_{1/N,1/N}(1/t) = lambda_{0,1/N}(t) / t
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    from fractions import Fraction

    m = _as_point(m)
    tau = m.tau
    p_0N = TorsionPair.of(0, Fraction(1, N))
    p_N0 = TorsionPair.of(Fraction(1, N), 0)
    p_NN = TorsionPair.of(Fraction(1, N), Fraction(1, N))

    base = lambda_rs(p_0N, m)
    t = base.t

    m_inv = ModuliPoint.from_tau(-1.0 / tau)
    left1 = lambda_rs(p_N0, m_inv)
    resid1 = abs(left1.lam - (1.0 - base.lam))
    t_check1 = abs(left1.t - (1.0 - t))

    m_shift = ModuliPoint.from_tau(tau - 1.0)
    left2 = lambda_rs(p_NN, m_shift)
    resid2 = abs(left2.lam - base.lam / t)
    t_check2 = abs(left2.t - 1.0 / t)

    return {
        "residual_one_minus_t": resid1,
        "residual_inverse_t": resid2,
        "t_map_one_minus": t_check1,
        "t_map_inverse": t_check2,
        "t": t,
    }
