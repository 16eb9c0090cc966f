"""Scalar numeric kernels: Fourier (q-) series for Weierstrass functions.

Everything here is nopython-compatible and wrapped by ``@njit`` unless the
numpy backend is forced (see ``_backend``).  The evaluation strategy for a
point tau in the upper half-plane:

1. reduce tau to the standard fundamental domain {|Re| <= 1/2, |tau| >= 1}
   with an integer matrix, so the nome q = exp(2*pi*i*tau_red) satisfies
   |q| <= exp(-pi*sqrt(3)) ~ 4.33e-3 and ~20 series terms give full double
   precision;
2. reduce the argument z by lattice translations into the centred cell,
   tracking the integer shifts exactly (they re-enter zeta through the
   quasi-periods);
3. sum the trigonometric q-series for wp, wp', zeta and the Eisenstein
   series E2, E4, E6;
4. undo both reductions through the weight laws (wp ~ weight 2, wp' ~ 3,
   zeta ~ 1, g2 ~ 4, g3 ~ 6; eta1 picks up the quasi-modular 2*pi*i*c/j
   shift).

All exponentials are arranged so their arguments have non-negative decay:
the series run in A_k = exp(2*pi*i*(tau+z))^k and B_k = exp(2*pi*i*(tau-z))^k,
both of modulus <= exp(-pi*Im(tau_red)) after reduction, so nothing
overflows even for very large Im(tau).
"""

import cmath
import math

from ._backend import njit

_PI = math.pi
_EPS = 2.220446049250313e-16

# Series iteration cap; after fundamental-domain reduction ~20 terms reach
# double precision, the cap only matters for pathological inputs.
_KMAX = 400


@njit
def reduce_tau(tau):
    """Reduce tau into {|Re| <= 1/2, |tau| >= 1}.

    Returns (tau_red, a, b, c, d) with tau_red = (a*tau + b)/(c*tau + d)
    and a*d - b*c = 1.
    """
    a = 1
    b = 0
    c = 0
    d = 1
    t = tau
    for _ in range(512):
        n = int(math.floor(t.real + 0.5))
        if n != 0:
            t = t - n
            a -= n * c
            b -= n * d
        if (t.real * t.real + t.imag * t.imag) < 1.0 - 1e-14:
            t = -1.0 / t
            na = -c
            nb = -d
            c, d = a, b
            a, b = na, nb
        else:
            break
    return t, a, b, c, d


@njit
def reduce_z(z, tau):
    """Translate z by the lattice Z + Z*tau into the centred cell.

    Returns (z0, m, n, dist) with z = z0 + m + n*tau, |Im z0| <= Im(tau)/2,
    and dist = distance from z0 to the nearest lattice point.
    """
    y = z.imag / tau.imag
    x = z.real - y * tau.real
    m = int(math.floor(x + 0.5))
    n = int(math.floor(y + 0.5))
    z0 = z - m - n * tau
    dist = 1e308
    for em in (-1, 0, 1):
        for en in (-1, 0, 1):
            w = z0 - em - en * tau
            dw = abs(w)
            if dw < dist:
                dist = dw
    return z0, m, n, dist


@njit
def eisenstein(q):
    """E2, E4, E6 at the (reduced) nome q, plus a truncation-tail bound."""
    e2 = 1.0 + 0j
    e4 = 1.0 + 0j
    e6 = 1.0 + 0j
    qk = 1.0 + 0j
    tail = 0.0
    for k in range(1, _KMAX):
        qk = qk * q
        f = qk / (1.0 - qk)
        kf = float(k)
        k3 = kf * kf * kf
        e2 -= 24.0 * kf * f
        e4 += 240.0 * k3 * f
        e6 -= 504.0 * k3 * kf * kf * f
        m = 504.0 * k3 * kf * kf * abs(qk)
        if m < 1e-18 and k >= 6:
            tail = 2.0 * m
            break
    return e2, e4, e6, tail


@njit
def wz_series(z, tau, q):
    """wp, wp', and the eta1-free part of zeta at reduced (z, tau).

    Requires |Im z| <= Im(tau)/2 and z not too close to the lattice.  The
    returned third value is zeta(z|tau) - eta1(tau)*z; the caller adds the
    quasi-period term.  Fourth value is a truncation-tail estimate.
    """
    # Trigonometric parts through u = exp(+-2*pi*i*z) with |u| <= 1.
    if z.imag >= 0.0:
        u = cmath.exp(2j * _PI * z)
        cot = -1j * (1.0 + u) / (1.0 - u)
    else:
        u = cmath.exp(-2j * _PI * z)
        cot = 1j * (1.0 + u) / (1.0 - u)
    one_m_u = 1.0 - u
    inv_sin2 = -4.0 * u / (one_m_u * one_m_u)  # 1/sin^2(pi z)

    pi2 = _PI * _PI
    wp = pi2 * (-1.0 / 3.0) + pi2 * inv_sin2
    wpp = -2.0 * _PI * pi2 * cot * inv_sin2  # -2 pi^3 cos/sin^3
    zt = _PI * cot

    a1 = cmath.exp(2j * _PI * (tau + z))
    b1 = cmath.exp(2j * _PI * (tau - z))
    ak = 1.0 + 0j
    bk = 1.0 + 0j
    qk = 1.0 + 0j
    s_wp = 0.0 + 0j
    s_wpp = 0.0 + 0j
    s_zt = 0.0 + 0j
    tail = 0.0
    for k in range(1, _KMAX):
        ak = ak * a1
        bk = bk * b1
        qk = qk * q
        inv = 1.0 / (1.0 - qk)
        kf = float(k)
        half = 0.5 * (ak + bk)
        s_wp += kf * (half - qk) * inv  # k q^k (cos(2 pi k z) - 1)/(1-q^k)
        s_wpp += (kf * kf) * (-0.5j) * (ak - bk) * inv
        s_zt += (ak - bk) * inv
        m = abs(ak) + abs(bk) + abs(qk)
        if (kf * kf * m) < 1e-19 and k >= 6:
            tail = kf * kf * m
            break
    wp += -8.0 * pi2 * s_wp
    wpp += 16.0 * _PI * pi2 * s_wpp
    zt += -2j * _PI * s_zt
    return wp, wpp, zt, tail


@njit
def elliptic_at(z, tau):
    """Full evaluation bundle at arbitrary (z, tau), Im tau > 0.

    Returns (wp, wp', zeta, eta1, eta2, g2, g3, dist, err) where dist is the
    reduced-cell distance of z from the lattice and err is a crude absolute
    error estimate (truncation tail + 10 eps amplification).  When
    dist < 1e-12 the series values are returned as NaN; callers must check
    dist before trusting them.
    """
    tred, a, b, c, d = reduce_tau(tau)
    qred = cmath.exp(2j * _PI * tred)
    e2, e4, e6, tail_e = eisenstein(qred)
    pi2 = _PI * _PI
    eta1_r = pi2 / 3.0 * e2
    eta2_r = tred * eta1_r - 2j * _PI
    g2_r = 4.0 * pi2 * pi2 / 3.0 * e4
    g3_r = 8.0 * pi2 * pi2 * pi2 / 27.0 * e6

    j = c * tau + d
    j2 = j * j
    eta1 = eta1_r / j2 + 2j * _PI * c / j
    eta2 = tau * eta1 - 2j * _PI
    g2 = g2_r / (j2 * j2)
    g3 = g3_r / (j2 * j2 * j2)

    zr = z / j
    z0, m, n, dist = reduce_z(zr, tred)
    if dist < 1e-12:
        nan = complex(math.nan, math.nan)
        return nan, nan, nan, eta1, eta2, g2, g3, dist, math.nan

    wp_r, wpp_r, zt_part, tail = wz_series(z0, tred, qred)
    zeta_r = zt_part + eta1_r * (z0 + m) + eta2_r * n
    wp = wp_r / j2
    wpp = wpp_r / (j2 * j)
    zeta = zeta_r / j

    amp = abs(wp_r) + abs(wpp_r) + abs(zeta_r) + 1.0
    err = (tail + tail_e + 10.0 * _EPS * amp) / max(1.0, abs(j))
    return wp, wpp, zeta, eta1, eta2, g2, g3, dist, err


@njit
def lattice_values(tau):
    """Quasi-periods, invariants and half-period values at tau.

    Returns (eta1, eta2, g2, g3, e1, e2, e3, err).
    """
    tred, a, b, c, d = reduce_tau(tau)
    qred = cmath.exp(2j * _PI * tred)
    ee2, ee4, ee6, tail_e = eisenstein(qred)
    pi2 = _PI * _PI
    eta1_r = pi2 / 3.0 * ee2
    g2_r = 4.0 * pi2 * pi2 / 3.0 * ee4
    g3_r = 8.0 * pi2 * pi2 * pi2 / 27.0 * ee6

    j = c * tau + d
    j2 = j * j
    eta1 = eta1_r / j2 + 2j * _PI * c / j
    eta2 = tau * eta1 - 2j * _PI
    g2 = g2_r / (j2 * j2)
    g3 = g3_r / (j2 * j2 * j2)

    e1 = complex(0.0, 0.0)
    e2v = complex(0.0, 0.0)
    e3v = complex(0.0, 0.0)
    tails = 0.0
    for idx in range(3):
        if idx == 0:
            zk = complex(0.5, 0.0)
        elif idx == 1:
            zk = 0.5 * tau
        else:
            zk = 0.5 * (1.0 + tau)
        zr = zk / j
        z0, m, n, dist = reduce_z(zr, tred)
        wp_r, wpp_r, zt_part, tail = wz_series(z0, tred, qred)
        tails += tail
        val = wp_r / j2
        if idx == 0:
            e1 = val
        elif idx == 1:
            e2v = val
        else:
            e3v = val

    amp = abs(e1) + abs(e2v) + abs(e3v) + abs(g2) + abs(eta1) + 1.0
    err = tails + tail_e + 10.0 * _EPS * amp
    return eta1, eta2, g2, g3, e1, e2v, e3v, err


@njit
def premodular_at(r, s, tau):
    """Hecke form and premodular form for torsion parameters (r, s) at tau.

    Returns (Z, wp, wpp, z2, g2, g3, eta1, eta2, scale, dist, err) where
    z2 = Z^3 - 3*wp*Z - wpp, scale = |Z|^3 + 3|wp||Z| + |wpp| (the natural
    magnitude of the three-term combination) and dist is the reduced-cell
    distance of alpha = r + s*tau from the lattice.  NaN values when
    dist < 1e-12, as in ``elliptic_at``.
    """
    alpha = r + s * tau
    wp, wpp, zeta, eta1, eta2, g2, g3, dist, err = elliptic_at(alpha, tau)
    z = zeta - r * eta1 - s * eta2
    z2 = z * z * z - 3.0 * wp * z - wpp
    scale = abs(z) ** 3 + 3.0 * abs(wp) * abs(z) + abs(wpp)
    return z, wp, wpp, z2, g2, g3, eta1, eta2, scale, dist, err


@njit
def z2_many(r, s, taus, out_val, out_scale):
    """Batch premodular values along an array of tau samples."""
    for i in range(taus.shape[0]):
        z, wp, wpp, z2, g2, g3, e1, e2, scale, dist, err = premodular_at(
            r, s, taus[i]
        )
        out_val[i] = z2
        out_scale[i] = scale


def warmup():
    """Force JIT compilation of every kernel (no-op on the numpy backend)."""
    tau = complex(0.1, 1.3)
    reduce_tau(tau)
    reduce_z(complex(0.3, 0.2), tau)
    eisenstein(cmath.exp(2j * _PI * tau))
    elliptic_at(complex(0.3, 0.2), tau)
    lattice_values(tau)
    premodular_at(complex(0.3, 0.0), complex(0.2, 0.0), tau)
    import numpy as np

    taus = np.array([tau, tau + 0.1], dtype=np.complex128)
    out_v = np.empty(2, dtype=np.complex128)
    out_s = np.empty(2, dtype=np.float64)
    z2_many(complex(0.3, 0.0), complex(0.2, 0.0), taus, out_v, out_s)
