"""The Hecke form Z_{r,s}, the weight-3 form Z2_{r,s}, and the product M_N.

Z_{r,s}(tau)  = zeta(r + s*tau | tau) - r*eta1(tau) - s*eta2(tau)
Z2_{r,s}(tau) = Z^3 - 3*wp(r + s*tau)*Z - wp'(r + s*tau)

Z transforms with weight 1 and Z2 with weight 3 under tau -> gamma.tau with
(s', r') = (s, r).gamma^{-1} (see ``modular.transport_pair``).  Both are
identically zero on the three half-period parameter pairs and identically
infinite on integer pairs; those are rejected as Degenerate.

For s in {0, 1/2} the form vanishes at the cusp and a direct evaluation at
large Im(tau) loses everything to cancellation; ``z2_cusp_expansion``
assembles the Fourier expansion in p = q^(1/2) with the cancellation done at
the coefficient level, and ``z2_stable`` switches to it automatically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import _kernels
from .elliptic import ModuliPoint, _as_point
from .errors import Degenerate, NearLattice
from .modular import ModularMatrix  # noqa: F401  (re-exported type)

_PI = math.pi
NEAR_LATTICE_DIST = 1e-8

Rational = Union[int, Fraction]


def _is_half_integer(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return Fraction(2) * Fraction(x) == int(Fraction(2) * Fraction(x))
    if isinstance(x, complex):
        if abs(x.imag) > 1e-12:
            return False
        x = x.real
    return abs(2.0 * x - round(2.0 * x)) < 1e-12


@dataclass(frozen=True)
class TorsionPair:
    """An ordered parameter pair (r, s) labelling a solution branch.

    r, s may be complex; in the exact (algebraic) case they are Fractions
    k1/N, k2/N and arithmetic on them stays exact.
    """

    r: Union[complex, Fraction]
    s: Union[complex, Fraction]

    @property
    def exact(self) -> bool:
        return isinstance(self.r, Fraction) and isinstance(self.s, Fraction)

    @property
    def is_real(self) -> bool:
        if self.exact:
            return True
        return abs(complex(self.r).imag) < 1e-14 and abs(complex(self.s).imag) < 1e-14

    @property
    def degenerate(self) -> bool:
        """True when (r, s) is in (1/2)Z^2."""
        return _is_half_integer(self.r) and _is_half_integer(self.s)

    def as_complex(self) -> tuple[complex, complex]:
        return complex(self.r), complex(self.s)

    def alpha(self, tau: complex) -> complex:
        r, s = self.as_complex()
        return r + s * tau

    def reduced_real(self) -> tuple[float, float]:
        """Representative of +-(r, s) mod Z^2 in the window [0,1) x [0,1/2].

        Only meaningful for real pairs.
        """
        if self.exact:
            r = Fraction(self.r) % 1
            s = Fraction(self.s) % 1
            if 2 * s > 1:
                r, s = (-r) % 1, (-s) % 1
            return float(r), float(s)
        r, s = self.as_complex()
        r, s = r.real % 1.0, s.real % 1.0
        if s > 0.5 + 1e-15:
            r, s = (-r) % 1.0, (-s) % 1.0
        return r, s

    @classmethod
    def of(cls, r, s) -> "TorsionPair":
        def norm(x):
            if isinstance(x, (Fraction, int)):
                return Fraction(x)
            return complex(x)

        return cls(norm(r), norm(s))


def _check_usable(p: TorsionPair):
    if p.degenerate:
        r, s = p.as_complex()
        if abs(r - round(r.real)) < 1e-12 and abs(s - round(s.real)) < 1e-12:
            raise Degenerate(f"(r, s) = {p.r, p.s} is an integer pair: Z2 == inf")
        raise Degenerate(f"(r, s) = {p.r, p.s} is a half-period pair: Z2 == 0")


def hecke_Z(p: TorsionPair, m) -> complex:
    """Z_{r,s}(tau) = zeta(r + s*tau) - r*eta1 - s*eta2."""
    _check_usable(p)
    m = _as_point(m)
    r, s = p.as_complex()
    z, wp, wpp, z2, g2, g3, eta1, eta2, scale, dist, err = _kernels.premodular_at(
        r, s, m.tau
    )
    if dist < NEAR_LATTICE_DIST:
        raise NearLattice(
            f"alpha = r + s*tau is within {dist:.3e} of the lattice; "
            "use the Laurent-expansion path"
        )
    return z


def z2(p: TorsionPair, m) -> complex:
    """Z2_{r,s}(tau) = Z^3 - 3 wp(alpha) Z - wp'(alpha)."""
    value, scale = z2_with_scale(p, m)
    return value


def z2_with_scale(p: TorsionPair, m) -> tuple[complex, float]:
    """Z2 value together with its natural magnitude |Z|^3+3|wp Z|+|wp'|.

    The scale is what residual and boundary-clearance thresholds are
    measured against.
    """
    _check_usable(p)
    m = _as_point(m)
    r, s = p.as_complex()
    z, wp, wpp, val, g2, g3, eta1, eta2, scale, dist, err = _kernels.premodular_at(
        r, s, m.tau
    )
    if dist < NEAR_LATTICE_DIST:
        raise NearLattice(
            f"alpha = r + s*tau is within {dist:.3e} of the lattice; "
            "use the Laurent-expansion path"
        )
    return val, scale


def cusp_asymptotic(p: TorsionPair) -> tuple[complex, Fraction]:
    """Leading behaviour of Z2_{r,s} as Im(tau) -> infinity, for real (r, s).

    Returns (leading coefficient, q-power):
      s in (0,1/2) u (1/2,1):  (4 pi^3 i s(1-s)(2s-1), 0)
      s = 0:                   (-48 pi^3 sin(2 pi r), 1)
      s = 1/2:                 (-12 pi^3 sin(2 pi r), 1/2)
    """
    _check_usable(p)
    if not p.is_real:
        raise Degenerate("cusp asymptotics are stated for real parameter pairs")
    r, s = p.reduced_real()
    # classify s against {0, 1/2} with a guard band
    if abs(s) < 1e-12:
        return complex(-48.0 * _PI**3 * math.sin(2.0 * _PI * r)), Fraction(1)
    if abs(s - 0.5) < 1e-12:
        return complex(-12.0 * _PI**3 * math.sin(2.0 * _PI * r)), Fraction(1, 2)
    return 4j * _PI**3 * s * (1.0 - s) * (2.0 * s - 1.0), Fraction(0)


# ---------------------------------------------------------------------------
# Stable Fourier expansion in p = q^(1/2) for s in {0, 1/2}
# ---------------------------------------------------------------------------


def _cusp_coeff_arrays(r: float, half: bool, terms: int):
    """p-series coefficient arrays of Z, wp, wp' for s = 0 or s = 1/2.

    Index n holds the coefficient of p^n, p = exp(pi*i*tau).  Built from the
    same trigonometric series as the kernels, but ordered by powers of p so
    the constant-term cancellation in Z^3 - 3 wp Z - wp' happens between
    O(1) coefficients instead of catastrophically at evaluation time.
    """
    M = terms
    zc = np.zeros(M, dtype=np.complex128)
    wc = np.zeros(M, dtype=np.complex128)
    dc = np.zeros(M, dtype=np.complex128)
    pi2 = _PI * _PI
    pi3 = _PI * pi2
    if not half:
        # s = 0: everything is a series in q = p^2 with real-trig coefficients.
        sin_pr = math.sin(_PI * r)
        cos_pr = math.cos(_PI * r)
        cot = cos_pr / sin_pr
        zc[0] = _PI * cot
        wc[0] = pi2 * (-1.0 / 3.0 + 1.0 / (sin_pr * sin_pr))
        dc[0] = -2.0 * pi3 * cos_pr / sin_pr**3
        for k in range(1, M // 2 + 1):
            s2k = math.sin(2.0 * _PI * k * r)
            c2k = math.cos(2.0 * _PI * k * r)
            for mth in range(1, M // (2 * k) + 1):
                n = 2 * k * mth
                if n >= M:
                    break
                zc[n] += 4.0 * _PI * s2k
                wc[n] += -8.0 * pi2 * k * (c2k - 1.0)
                dc[n] += 16.0 * pi3 * (k * k) * s2k
    else:
        # s = 1/2: z = r + tau/2, U = exp(2 pi i z) = e^{2 pi i r} p.
        # The constant 2*pi*i*s = i*pi cancels the -i*pi limit of pi*cot(pi z).
        w = cmath.exp(2j * _PI * r)
        zc[0] = 0.0
        wc[0] = -pi2 / 3.0
        dc[0] = 0.0
        for n in range(1, M):
            wn = w**n
            zc[n] += -2j * _PI * wn          # pi*cot(pi z) tail
            wc[n] += -4.0 * pi2 * n * wn     # pi^2/sin^2 tail
            dc[n] += -8j * pi3 * (n * n) * wn  # -2 pi^3 cos/sin^3 tail
        for k in range(1, M + 1):
            wk = w**k
            wkc = wk.conjugate()  # |w| = 1 so conj = inverse
            for mth in range(0, M):
                nA = 3 * k + 2 * k * mth      # A_k q^{k m}: p^{3k + 2km}
                nB = k + 2 * k * mth          # B_k q^{k m}: p^{k + 2km}
                nQ = 2 * k + 2 * k * mth      # q^k q^{k m}: p^{2k + 2km}
                if nB >= M and nQ >= M and nA >= M:
                    break
                if nA < M:
                    zc[nA] += -2j * _PI * wk
                    wc[nA] += -4.0 * pi2 * k * wk
                    dc[nA] += -8j * pi3 * (k * k) * wk
                if nB < M:
                    zc[nB] += 2j * _PI * wkc
                    wc[nB] += -4.0 * pi2 * k * wkc
                    dc[nB] += 8j * pi3 * (k * k) * wkc
                if nQ < M:
                    wc[nQ] += 8.0 * pi2 * k
    return zc, wc, dc


def _poly_mul(a: np.ndarray, b: np.ndarray, M: int) -> np.ndarray:
    return np.convolve(a, b)[:M]


def z2_cusp_expansion(p: TorsionPair, terms: int = 48) -> np.ndarray:
    """Coefficients of Z2_{r,s} as a series in p = q^(1/2), for s in {0, 1/2}.

    Coefficients below the leading power (p^2 for s = 0, p^1 for s = 1/2)
    vanish identically; their numerical residue is round-off from the
    coefficient-level cancellation and is zeroed after a sanity check, so
    evaluating the series near the cusp never sees it.
    """
    _check_usable(p)
    if not p.is_real:
        raise Degenerate("cusp expansion requires a real parameter pair")
    r, s = p.reduced_real()
    if abs(s) < 1e-12:
        half = False
    elif abs(s - 0.5) < 1e-12:
        half = True
    else:
        raise ValueError("cusp expansion only applies to s in {0, 1/2}")
    M = terms
    zc, wc, dc = _cusp_coeff_arrays(r, half, M)
    z2c = _poly_mul(_poly_mul(zc, zc, M), zc, M) - 3.0 * _poly_mul(wc, zc, M) - dc
    lead = 1 if half else 2
    floor_scale = float(np.max(np.abs(z2c))) + 1.0
    for n in range(lead):
        if abs(z2c[n]) > 1e-9 * floor_scale:  # pragma: no cover - sanity guard
            raise ValueError(
                f"sub-leading cusp coefficient p^{n} failed to cancel: {z2c[n]}"
            )
        z2c[n] = 0.0
    return z2c


def z2_stable(p: TorsionPair, m) -> tuple[complex, float]:
    """Z2 with automatic switch to the cusp series for s in {0, 1/2}.

    Direct evaluation cancels to noise once the surviving term drops below
    round-off of the O(1) pieces; beyond Im(tau) ~ 2 the p-series is both
    stable and fully converged.
    """
    m = _as_point(m)
    if p.is_real:
        r, s = p.reduced_real()
        degenerate_s = abs(s) < 1e-12 or abs(s - 0.5) < 1e-12
        if degenerate_s and m.tau.imag > 2.0:
            coeffs = z2_cusp_expansion(p)
            pp = cmath.exp(1j * _PI * m.tau)
            val = complex(np.polyval(coeffs[::-1], pp))
            # natural magnitude of the would-be cancelling combination
            _, scale = _direct_scale(p, m)
            return val, scale
    return z2_with_scale(p, m)


def _direct_scale(p: TorsionPair, m: ModuliPoint) -> tuple[complex, float]:
    r, s = p.as_complex()
    z, wp, wpp, val, g2, g3, eta1, eta2, scale, dist, err = _kernels.premodular_at(
        r, s, m.tau
    )
    return val, scale


# ---------------------------------------------------------------------------
# The modular product M_N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MnValue:
    """M_N(tau) in log-magnitude form: value = exp(log_abs + i*arg)."""

    log_abs: float
    arg: float
    raw: Optional[complex]

    def magnitude(self) -> float:
        return math.exp(self.log_abs) if self.log_abs < 700.0 else math.inf


def m_n(N: int, m) -> MnValue:
    """Product of Z2_{r,s} over all (r, s) in Q_N, accumulated in log space.

    Factors are visited in sorted index order, so the reduction is
    deterministic.  Factors with s-component in {0, 1/2} use the stable cusp
    series at large Im(tau).
    """
    from .orbits import enumerate_qn  # local import to avoid a cycle

    if N < 3:
        raise ValueError("N must be >= 3")
    m = _as_point(m)
    log_abs = 0.0
    arg = 0.0
    for rp in enumerate_qn(N):
        pair = TorsionPair.of(Fraction(rp.k1, rp.N), Fraction(rp.k2, rp.N))
        val, scale = z2_stable(pair, m)
        av = abs(val)
        if av == 0.0:
            return MnValue(log_abs=-math.inf, arg=0.0, raw=0.0 + 0j)
        log_abs += math.log(av)
        arg = math.remainder(arg + cmath.phase(val), 2.0 * _PI)
    raw: Optional[complex] = None
    if abs(log_abs) < 700.0:
        raw = cmath.exp(complex(log_abs, arg))
    return MnValue(log_abs=log_abs, arg=arg, raw=raw)
