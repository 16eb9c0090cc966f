"""Zero counting and location for Z2_{r,s} in modular fundamental domains.

Winding numbers come from adaptive phase tracking of Z2 along the domain
boundary: the phase step between consecutive samples is bisected until it is
below pi/8, so unwrapping is unambiguous.  The cusp at infinity is closed
analytically: the leading behaviour c*q^ord contributes exactly
2*pi*ord*(Re change) across the cap, which is added instead of sampled.

Real-axis cusps need case analysis.  Near a cusp x_c the form factors as

    Z2_{r,s}(tau) = (tau - x_c)^{-3} * Z2_{r_c,s_c}(-1/(tau - x_c)),

with (r_c, s_c) = (s, -(r + x_c s)).  When s_c is not in (1/2)Z the
transported factor tends to a non-zero constant and |Z2| blows up like
dist^{-3}: the contour is simply cut just above the cusp with a short
horizontal connector.  When s_c IS in (1/2)Z the transported factor vanishes
at the cusp, so along any approach the direct value dies exponentially while
the computed one is cancellation noise; a disk around the cusp is excised
and the phase change across it is evaluated analytically from the factor
(tau - x_c)^{-3} and the leading power q~^ord of the transported expansion.
Both corrections are exact up to O(q~) terms far below the winding slack.

For the same reason, samples with Im(tau) > 2 for pairs whose own
s-component is in (1/2)Z are evaluated through the coefficient-level cusp
series instead of the cancelling direct formula.

Domains:
  F0: {0 <= Re <= 1, |tau - 1/2| >= 1/2}       (index-3 subgroup domain)
  F:  {0 <= Re < 1, |tau| >= 1, |tau - 1| > 1} (modular domain, shifted)
  F2: {0 <= Re < 2, |tau-1/2| >= 1/2, |tau-3/2| > 1/2} (level-2 domain)

For real non-half-integer (r, s), Z2 never vanishes on the boundary of F0
(nor on its images bounding F2), which is what makes the F0 contour the
safe workhorse: zeros are transported into F or F2 by the group action.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .elliptic import ModuliPoint
from .errors import BoundaryTooClose, DomainError, IncoherentWinding
from .modular import (
    ModularMatrix,
    in_domain_f,
    reduce_to_shifted_domain,
    transport_pair,
)
from .premodular import (
    TorsionPair,
    cusp_asymptotic,
    z2_cusp_expansion,
    z2_with_scale,
)
from .solutions import _newton_z2

_PI = math.pi
_TWO_PI = 2.0 * math.pi

# Boundary clearance: directly-evaluated samples with |Z2| below this
# multiple of the local term scale abort the winding computation.
BOUNDARY_RTOL = 1e-8
# Max phase step per boundary segment after adaptive refinement.
MAX_PHASE_STEP = _PI / 8.0
# Accepted distance of the accumulated phase from an integer multiple of
# 2*pi, in turns.
WINDING_SLACK = 0.05
# Height above which degenerate-s pairs switch to the stable cusp series.
SERIES_HEIGHT = 2.0


@dataclass(frozen=True)
class DomainSpec:
    """A truncated fundamental domain with a piecewise boundary."""

    kind: str  # "F0" | "F" | "F2"
    truncation_height: float = 10.0
    cusp_clearance: float = 0.03

    def __post_init__(self):
        if self.kind not in ("F0", "F", "F2"):
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.truncation_height < 5.0:
            raise DomainError("truncation height must be >= 5")

    @property
    def strip(self) -> tuple[float, float]:
        return (0.0, 2.0 if self.kind == "F2" else 1.0)

    @property
    def disks(self) -> tuple[tuple[complex, float], ...]:
        if self.kind == "F0":
            return ((0.5 + 0j, 0.5),)
        if self.kind == "F2":
            return ((0.5 + 0j, 0.5), (1.5 + 0j, 0.5))
        return ((0j, 1.0), (1.0 + 0j, 1.0))

    @property
    def cusps(self) -> tuple[int, ...]:
        if self.kind == "F0":
            return (0, 1)
        if self.kind == "F2":
            return (0, 1, 2)
        return ()

    def contains(self, tau: complex, margin: float = 0.0) -> bool:
        """Interior membership with an optional safety margin."""
        xl, xr = self.strip
        if not (xl + margin <= tau.real <= xr - margin):
            return False
        if not (0.0 < tau.imag <= self.truncation_height):
            return False
        for c, rad in self.disks:
            if abs(tau - c) < rad + margin:
                return False
        return True


F0 = DomainSpec("F0")
F = DomainSpec("F")
F2 = DomainSpec("F2")


@dataclass(frozen=True)
class ZeroCertificate:
    """A located, Newton-refined simple zero of Z2_{r,s}."""

    tau0: complex
    residual: float
    dz_mag: float
    newton_iters: int
    region: str
    torsion: TorsionPair
    scale: float


@dataclass(frozen=True)
class TrianglePosition:
    tag: str  # "D0" | "D1" | "D2" | "D3" | "boundary" | "outside"


def classify_triangle(p: TorsionPair) -> TrianglePosition:
    """Locate the window representative of (r, s) among the four open
    triangles partitioning [0,1] x [0,1/2].

    Exact for rational pairs; floats get a 1e-12 guard band mapped to
    "boundary".
    """
    if not p.is_real:
        raise DomainError("triangle classification needs a real pair")
    if p.exact:
        r = Fraction(p.r) % 1
        s = Fraction(p.s) % 1
        if 2 * s > 1:
            r, s = (-r) % 1, (-s) % 1
        half = Fraction(1, 2)
        one = Fraction(1)
        on_boundary = (
            r == 0
            or r == half
            or r == one
            or s == 0
            or s == half
            or r + s == half
            or r + s == one
        )
        if on_boundary:
            return TrianglePosition("boundary")
        if 0 < r < half and 0 < s < half and r + s > half:
            return TrianglePosition("D0")
        if half < r < one and 0 < s < half and r + s > one:
            return TrianglePosition("D1")
        if half < r < one and 0 < s < half and r + s < one:
            return TrianglePosition("D2")
        if r > 0 and s > 0 and r + s < half:
            return TrianglePosition("D3")
        return TrianglePosition("outside")
    r, s = p.reduced_real()
    guard = 1e-12
    for edge in (r, r - 0.5, r - 1.0, s, s - 0.5, r + s - 0.5, r + s - 1.0):
        if abs(edge) < guard:
            return TrianglePosition("boundary")
    if 0 < r < 0.5 and 0 < s < 0.5 and r + s > 0.5:
        return TrianglePosition("D0")
    if 0.5 < r < 1 and 0 < s < 0.5 and r + s > 1:
        return TrianglePosition("D1")
    if 0.5 < r < 1 and 0 < s < 0.5 and r + s < 1:
        return TrianglePosition("D2")
    if r > 0 and s > 0 and r + s < 0.5:
        return TrianglePosition("D3")
    return TrianglePosition("outside")


# ---------------------------------------------------------------------------
# Per-pair evaluation along contours (with the stable high-Im routing)
# ---------------------------------------------------------------------------


class _PairEvaluator:
    """Batch Z2 evaluation that silently switches to the cusp series where
    the direct formula would cancel to noise (degenerate s, high Im), and
    that knows the expected exponential attenuation near degenerate cusps.
    """

    def __init__(self, pair: TorsionPair):
        self.pair = pair
        self.r, self.s = pair.as_complex()
        self.series_coeffs: Optional[np.ndarray] = None
        self.deg_cusps: list[tuple[int, float]] = []
        if pair.is_real and not pair.degenerate:
            _, s_red = pair.reduced_real()
            if abs(s_red) < 1e-12 or abs(s_red - 0.5) < 1e-12:
                self.series_coeffs = z2_cusp_expansion(pair)
            for x_c in (0, 1, 2):
                pair_c = _transported_cusp_pair(pair, x_c)
                if pair_c.degenerate:
                    continue
                _, order_c = cusp_asymptotic(pair_c)
                if order_c > 0:
                    self.deg_cusps.append((x_c, float(order_c)))

    def __call__(self, taus: np.ndarray):
        """Returns (values, scales, exact_mask); exact_mask marks samples
        evaluated by the series, whose tiny magnitudes are trustworthy."""
        taus = np.ascontiguousarray(taus, dtype=np.complex128)
        vals = np.empty(len(taus), dtype=np.complex128)
        scales = np.empty(len(taus), dtype=np.float64)
        _kernels.z2_many(self.r, self.s, taus, vals, scales)
        mask = np.zeros(len(taus), dtype=bool)
        if self.series_coeffs is not None:
            mask = taus.imag > SERIES_HEIGHT
            if mask.any():
                pp = np.exp(1j * _PI * taus[mask])
                vals[mask] = np.polyval(self.series_coeffs[::-1], pp)
        return vals, scales, mask

    def attenuation(self, taus: np.ndarray) -> np.ndarray:
        """Expected |Z2|/scale suppression factor near degenerate cusps.

        Towards a cusp whose pulled-back factor vanishes like q~^ord, the
        honest magnitude dies like exp(-2 pi ord Im(-1/(tau - x_c))) while
        the term scale does not; the boundary-clearance threshold is scaled
        down accordingly.
        """
        att = np.ones(len(taus))
        for x_c, order_c in self.deg_cusps:
            j = taus - x_c
            im_t = j.imag / np.abs(j) ** 2
            att = np.minimum(att, np.exp(-_TWO_PI * order_c * np.maximum(im_t, 0.0)))
        return att


def _eval_many(pair: TorsionPair, taus: np.ndarray):
    vals, scales, _ = _PairEvaluator(pair)(taus)
    return vals, scales


# ---------------------------------------------------------------------------
# Contours
# ---------------------------------------------------------------------------


def _transported_cusp_pair(pair: TorsionPair, x_c: int) -> TorsionPair:
    """Parameters of the factor pulled back from the cusp x_c to infinity:
    (r_c, s_c) = (s, -(r + x_c * s))."""
    if pair.exact:
        r, s = Fraction(pair.r), Fraction(pair.s)
    else:
        r, s = pair.as_complex()
    return TorsionPair.of(s, -(r + x_c * s))


def _cusp_order(pair_c: TorsionPair) -> tuple[complex, float]:
    lead, order = cusp_asymptotic(pair_c)
    return lead, float(order)


def _gap_radius(order: float) -> float:
    # Noise onset of the direct formula moves outward with the cusp order;
    # radii chosen so retained samples keep >= 3 accurate digits.
    return 0.25 if order >= 0.75 else 0.12


def _arc_point_at_cusp_distance(center: complex, x_c: float, delta: float) -> complex:
    """Point on the circle |tau - center| = 1/2 at distance delta from the
    cusp x_c (which lies on that circle)."""
    # |tau - x_c|^2 = +-(Re tau - x_c) on these circles; both reduce to
    # Re tau = x_c -+ delta^2 with Im > 0.
    if x_c < center.real:
        x = x_c + delta * delta
    else:
        x = x_c - delta * delta
    y2 = 0.25 - (x - center.real) ** 2
    return complex(x, math.sqrt(max(y2, 0.0)))


@dataclass(frozen=True)
class _Jump:
    """Analytic phase change inserted between two numeric contour points."""

    delta: float


def _cusp_jump(x_c: int, tau_in: complex, tau_out: complex, order: float) -> _Jump:
    """Phase change of Z2 through the excised cusp disk.

    Z2(tau) = j^{-3} Z2_c(-1/j) with j = tau - x_c, and Z2_c ~ c q~^ord, so
    d(arg) = -3 d(Arg j) + 2 pi ord d(Re(-1/j)); Arg j stays in (0, pi) and
    Re(-1/j) is single-valued, so endpoint differences are exact.
    """
    j_in = tau_in - x_c
    j_out = tau_out - x_c
    d_arg = -3.0 * (cmath.phase(j_out) - cmath.phase(j_in))
    d_arg += _TWO_PI * order * ((-1.0 / j_out).real - (-1.0 / j_in).real)
    return _Jump(d_arg)


def _cap_jump(d: DomainSpec, order_inf: float) -> _Jump:
    xl, xr = d.strip
    return _Jump(_TWO_PI * order_inf * (xl - xr))


def _build_contour(d: DomainSpec, pair: TorsionPair) -> list:
    """Positively-oriented boundary as numeric pieces and analytic jumps.

    Starts at the top-left corner; numeric pieces are ("seg", z0, z1) or
    ("arc", centre, radius, th0, th1); jumps are _Jump instances.
    """
    T = d.truncation_height
    y0 = d.cusp_clearance
    _, order_inf = _cusp_order(pair)

    if d.kind == "F":
        return [
            ("seg", complex(0.0, T), complex(0.0, 1.0)),
            ("arc", 0j, 1.0, _PI / 2.0, _PI / 3.0),
            ("arc", 1.0 + 0j, 1.0, 2.0 * _PI / 3.0, _PI / 2.0),
            ("seg", complex(1.0, 1.0), complex(1.0, T)),
            _cap_jump(d, order_inf),
        ]

    cusp_info = {}
    for x_c in d.cusps:
        pair_c = _transported_cusp_pair(pair, x_c)
        if pair_c.degenerate:
            raise DomainError(
                f"{pair} degenerates at the cusp {x_c}; no contour exists"
            )
        _, order_c = _cusp_order(pair_c)
        degenerate_dir = order_c > 0.0
        cusp_info[x_c] = (order_c, _gap_radius(order_c) if degenerate_dir else 0.0)

    pieces: list = []
    # left edge down
    o0, d0 = cusp_info[0]
    y_left = d0 if d0 > 0.0 else y0
    pieces.append(("seg", complex(0.0, T), complex(0.0, y_left)))
    disks = d.disks
    # walk the bottom arcs left to right
    prev_exit = complex(0.0, y_left)
    for i, (center, rad) in enumerate(disks):
        left_cusp = int(round(center.real - 0.5))
        right_cusp = int(round(center.real + 0.5))
        ol, dl = cusp_info[left_cusp]
        orr, dr = cusp_info[right_cusp]
        # entry onto this arc
        if dl > 0.0:
            a_in = _arc_point_at_cusp_distance(center, left_cusp, dl)
            pieces.append(_cusp_jump(left_cusp, prev_exit, a_in, ol))
        else:
            dx = math.sqrt(0.25 - y0 * y0)
            a_in = complex(center.real - dx, y0)
            pieces.append(("seg", prev_exit, a_in))
        # exit from this arc
        if dr > 0.0:
            a_out = _arc_point_at_cusp_distance(center, right_cusp, dr)
        else:
            dx = math.sqrt(0.25 - y0 * y0)
            a_out = complex(center.real + dx, y0)
        th_in = cmath.phase(a_in - center)
        th_out = cmath.phase(a_out - center)
        pieces.append(("arc", center, rad, th_in, th_out))
        prev_exit = a_out
    # connect to the right edge
    xr = d.strip[1]
    o_r, d_r = cusp_info[int(xr)]
    if d_r > 0.0:
        edge_bottom = complex(xr, d_r)
        pieces.append(_cusp_jump(int(xr), prev_exit, edge_bottom, o_r))
    else:
        edge_bottom = complex(xr, y0)
        pieces.append(("seg", prev_exit, edge_bottom))
    pieces.append(("seg", edge_bottom, complex(xr, T)))
    pieces.append(_cap_jump(d, order_inf))
    return pieces


# ---------------------------------------------------------------------------
# Adaptive phase tracking
# ---------------------------------------------------------------------------


def _piece_points(piece: tuple, t: np.ndarray) -> np.ndarray:
    if piece[0] == "seg":
        _, z0, z1 = piece
        return z0 + t * (z1 - z0)
    _, c, rad, th0, th1 = piece
    return c + rad * np.exp(1j * (th0 + t * (th1 - th0)))


_EPS = 2.220446049250313e-16


def _check_clearance(ev: _PairEvaluator, taus, vals, scales, exact, piece):
    checked = ~exact
    if not checked.any():
        return
    att = ev.attenuation(taus)
    thresh = np.maximum(BOUNDARY_RTOL * scales * att, 1e3 * _EPS * scales)
    bad = checked & (np.abs(vals) < thresh)
    if bad.any():
        i = int(np.argmax(bad))
        raise BoundaryTooClose(
            f"|Z2| = {abs(vals[i]):.3e} below clearance on boundary piece "
            f"{piece[0]} at tau = {taus[i]} (scale {scales[i]:.3e})"
        )


def _phase_along_piece(
    ev: _PairEvaluator, piece: tuple, n0: int = 17, max_rounds: int = 18
) -> tuple[float, complex, complex]:
    """Accumulated phase change of Z2 along one numeric boundary piece."""
    t = np.linspace(0.0, 1.0, n0)
    taus = _piece_points(piece, t)
    vals, scales, exact = ev(taus)
    _check_clearance(ev, taus, vals, scales, exact, piece)
    for _ in range(max_rounds):
        ratios = vals[1:] / vals[:-1]
        steps = np.angle(ratios)
        bad = np.abs(steps) > MAX_PHASE_STEP
        if not bad.any():
            return float(np.sum(steps)), complex(vals[0]), complex(vals[-1])
        mid_t = 0.5 * (t[:-1][bad] + t[1:][bad])
        mid_taus = _piece_points(piece, mid_t)
        mid_vals, mid_scales, mid_exact = ev(mid_taus)
        _check_clearance(ev, mid_taus, mid_vals, mid_scales, mid_exact, piece)
        t = np.concatenate([t, mid_t])
        order = np.argsort(t)
        t = t[order]
        vals = np.concatenate([vals, mid_vals])[order]
    raise IncoherentWinding(
        f"phase refinement did not settle on piece {piece[0]} for {ev.pair}"
    )


def _winding_over(pieces: list, ev: _PairEvaluator, n0: int = 17) -> float:
    """Total phase (in turns) around a closed piecewise contour."""
    total = 0.0
    prev_val: Optional[complex] = None
    first_val: Optional[complex] = None
    for piece in pieces:
        if isinstance(piece, _Jump):
            total += piece.delta
            prev_val = None
            continue
        dphi, v0, v1 = _phase_along_piece(ev, piece, n0=n0)
        if prev_val is not None:
            total += float(np.angle(v0 / prev_val))
        if first_val is None:
            first_val = v0
        total += dphi
        prev_val = v1
    if prev_val is not None and first_val is not None:
        total += float(np.angle(first_val / prev_val))
    return total / _TWO_PI


def winding_count(p: TorsionPair, d: DomainSpec) -> int:
    """Number of zeros of Z2_{r,s} in the truncated domain, by the argument
    principle with analytic cusp closures.

    Real parameter pairs only: the cusp corrections come from the stated
    leading behaviour, and boundary non-vanishing is only guaranteed there.
    """
    if not p.is_real:
        raise DomainError("winding counts are restricted to real pairs")
    if p.degenerate:
        raise DomainError("degenerate pairs have no meaningful winding")
    ev = _PairEvaluator(p)
    turns = _winding_over(_build_contour(d, p), ev)
    w = round(turns)
    if abs(turns - w) > WINDING_SLACK:
        raise IncoherentWinding(
            f"accumulated phase {turns:.4f} turns is not near an integer "
            f"for {p} over {d.kind}"
        )
    return int(w)


# ---------------------------------------------------------------------------
# Zero location
# ---------------------------------------------------------------------------


def _interior_grid(d: DomainSpec, nx: int, ny: int) -> np.ndarray:
    xl, xr = d.strip
    xs = np.linspace(xl + 0.02, xr - 0.02, nx)
    y_lo = max(d.cusp_clearance + 0.02, 0.05)
    ys = np.geomspace(y_lo, d.truncation_height, ny)
    pts = []
    for x in xs:
        for y in ys:
            tau = complex(x, y)
            if d.contains(tau, margin=1e-3):
                pts.append(tau)
    return np.array(pts, dtype=np.complex128)


def _rect_winding(pair: TorsionPair, x0, x1, y0, y1) -> int:
    """Winding over a plain rectangle (no cusps, no cap)."""
    ev = _PairEvaluator(pair)
    pieces = [
        ("seg", complex(x1, y0), complex(x1, y1)),
        ("seg", complex(x1, y1), complex(x0, y1)),
        ("seg", complex(x0, y1), complex(x0, y0)),
        ("seg", complex(x0, y0), complex(x1, y0)),
    ]
    turns = _winding_over(pieces, ev, n0=9)
    w = round(turns)
    if abs(turns - w) > WINDING_SLACK:
        raise IncoherentWinding(f"rectangle winding incoherent: {turns:.4f}")
    return int(w)


def locate_zeros(
    p: TorsionPair, d: DomainSpec, expected: Optional[int] = None
) -> list[ZeroCertificate]:
    """All zeros of Z2_{r,s} inside the truncated domain, Newton-refined.

    The certificate count is required to equal the winding number of the
    domain boundary; each zero is additionally isolated by a rectangle
    winding around it whenever that rectangle stays inside the domain.
    """
    w = winding_count(p, d) if expected is None else expected
    if w == 0:
        return []
    found: list[complex] = []
    certs: list[ZeroCertificate] = []
    for nx, ny in ((29, 25), (57, 49), (113, 97)):
        grid = _interior_grid(d, nx, ny)
        vals, scales = _eval_many(p, grid)
        quality = np.abs(vals) / np.maximum(scales, 1e-300)
        order = np.argsort(quality)
        starts = grid[order[: max(8, 4 * w)]]
        for tau_start in starts:
            try:
                tau0, resid, dz, iters = _newton_z2(p, complex(tau_start))
            except Exception:
                continue
            if not d.contains(tau0, margin=1e-9):
                continue
            if any(abs(tau0 - z) < 1e-7 for z in found):
                continue
            found.append(tau0)
            _, scale = z2_with_scale(p, ModuliPoint.from_tau(tau0, reduce=False))
            certs.append(
                ZeroCertificate(
                    tau0=tau0,
                    residual=resid,
                    dz_mag=dz,
                    newton_iters=iters,
                    region=d.kind,
                    torsion=p,
                    scale=scale,
                )
            )
            if len(certs) == w:
                break
        if len(certs) == w:
            break
    if len(certs) != w:
        raise IncoherentWinding(
            f"located {len(certs)} zeros but winding is {w} for {p} in {d.kind}"
        )
    # independent per-zero isolation where the box fits inside the domain
    for cert in certs:
        x, y = cert.tau0.real, cert.tau0.imag
        h = 0.04
        corners = [
            complex(x - h, y - h),
            complex(x + h, y + h),
            complex(x - h, y + h),
            complex(x + h, y - h),
        ]
        if all(d.contains(c, margin=1e-6) for c in corners):
            if _rect_winding(p, x - h, x + h, y - h, y + h) != 1:
                raise IncoherentWinding(
                    f"cell check around {cert.tau0} did not isolate one zero"
                )
    return certs


# ---------------------------------------------------------------------------
# Zeros of the product M_N
# ---------------------------------------------------------------------------


@dataclass
class MnZeroReport:
    """Multiplicity-weighted zeros of M_N over a fundamental domain."""

    N: int
    domain: str
    interior_count: int
    certificates: list[ZeroCertificate] = field(default_factory=list)
    merge_events: list[tuple] = field(default_factory=list)


def _window_pair(k1: int, k2: int, N: int) -> TorsionPair:
    return TorsionPair.of(Fraction(k1 % N, N), Fraction(k2 % N, N))


def _class_zero_in_f0(rep, spec_f0: DomainSpec) -> Optional[ZeroCertificate]:
    pair = TorsionPair.of(rep.r, rep.s)
    tag = classify_triangle(pair).tag
    if tag not in ("D1", "D2", "D3"):
        return None
    certs = locate_zeros(pair, spec_f0, expected=1)
    return certs[0]


def count_mn_zeros(N: int, d: DomainSpec = F, T: float = 10.0) -> MnZeroReport:
    """Zeros of M_N = prod Z2 over the requested domain, with multiplicity.

    Works per +-class of Q_N: each class has at most one zero in F0 (present
    exactly when the window representative lies in one of the three open
    triangles), located there and then accounted to the requested domain:

      F0: kept as is;
      F:  transported by the reducing group element; re-discoveries of the
          same (transported class, point) collapse, genuinely distinct
          classes at one point are kept and flagged as merge events;
      F2: the F0 zero plus the unit translate of the shifted class's zero
          (F2 is F0 together with F0 + 1).

    Every certificate counts with multiplicity 2 for its +- pair.
    """
    from .orbits import RationalPair, pm_class_reps

    if not (3 <= N <= 24):
        raise DomainError("desk-scale N only (3 <= N <= 24)")
    spec_f0 = DomainSpec("F0", truncation_height=T, cusp_clearance=F0.cusp_clearance)
    reps = pm_class_reps(N)
    report = MnZeroReport(N=N, domain=d.kind, interior_count=0)

    if d.kind == "F0":
        for rep in reps:
            cert = _class_zero_in_f0(rep, spec_f0)
            if cert is not None:
                report.certificates.append(cert)
    elif d.kind == "F":
        seen: dict[tuple, ZeroCertificate] = {}
        for rep in reps:
            cert = _class_zero_in_f0(rep, spec_f0)
            if cert is None:
                continue
            tau_f, g = reduce_to_shifted_domain(cert.tau0)
            r2, s2 = transport_pair(Fraction(rep.r), Fraction(rep.s), g)
            k1 = int((Fraction(r2) % 1) * N)
            k2 = int((Fraction(s2) % 1) * N)
            key_pair = RationalPair(k1 % N, k2 % N, N).pm_canonical()
            # re-polish at the transported location for an honest certificate
            pair2 = _window_pair(key_pair.k1, key_pair.k2, N)
            tau_ref, resid, dz, iters = _newton_z2(pair2, tau_f)
            _, scale = z2_with_scale(
                pair2, ModuliPoint.from_tau(tau_ref, reduce=False)
            )
            key = (
                key_pair.k1,
                key_pair.k2,
                round(tau_ref.real, 7),
                round(tau_ref.imag, 7),
            )
            if key in seen:
                continue
            for (ok1, ok2, ox, oy), other in seen.items():
                if abs(complex(ox, oy) - tau_ref) < 1e-8 and (ok1, ok2) != (
                    key_pair.k1,
                    key_pair.k2,
                ):
                    report.merge_events.append(((ok1, ok2), key[:2], tau_ref))
            seen[key] = ZeroCertificate(
                tau0=tau_ref,
                residual=resid,
                dz_mag=dz,
                newton_iters=iters,
                region="F",
                torsion=pair2,
                scale=scale,
            )
        report.certificates.extend(seen.values())
    elif d.kind == "F2":
        for rep in reps:
            cert = _class_zero_in_f0(rep, spec_f0)
            if cert is not None:
                report.certificates.append(cert)
            # the copy F0 + 1 carries the zeros of the T-shifted class
            shifted = _window_pair(
                int((Fraction(rep.r) + Fraction(rep.s)) % 1 * N), rep.k2, N
            )
            tag = classify_triangle(shifted).tag
            if tag in ("D1", "D2", "D3"):
                base = locate_zeros(shifted, spec_f0, expected=1)[0]
                pair0 = TorsionPair.of(rep.r, rep.s)
                tau_ref, resid, dz, iters = _newton_z2(pair0, base.tau0 + 1.0)
                _, scale = z2_with_scale(
                    pair0, ModuliPoint.from_tau(tau_ref, reduce=False)
                )
                report.certificates.append(
                    ZeroCertificate(
                        tau0=tau_ref,
                        residual=resid,
                        dz_mag=dz,
                        newton_iters=iters,
                        region="F2",
                        torsion=pair0,
                        scale=scale,
                    )
                )
    report.interior_count = 2 * len(report.certificates)
    return report


def valence_check(N: int) -> dict:
    """Book-keeping of the zero count of M_N against the weight formula.

    interior zeros (over F) + nu_infinity must equal |Q_N|/4, with the cusp
    order measured both by the totient formula and by the decay slope of
    log|M_N(iT)|; the orders at i and rho are checked to vanish by direct
    non-zero evaluation.
    """
    from .orbits import euler_phi, p_of_n, qn_size
    from .premodular import m_n

    if not (3 <= N <= 12):
        raise DomainError("desk-scale N only (3 <= N <= 12)")
    nu_inf_formula = euler_phi(N) + euler_phi(Fraction(N, 2))
    report = count_mn_zeros(N, F)
    interior = report.interior_count

    heights = (8.0, 10.0, 12.0)
    logs = [m_n(N, ModuliPoint.from_tau(1j * t)).log_abs for t in heights]
    slope = (logs[0] - logs[-1]) / (_TWO_PI * (heights[-1] - heights[0]))

    rho = cmath.exp(1j * _PI / 3.0)
    mag_i = m_n(N, ModuliPoint.from_tau(1j)).log_abs
    mag_rho = m_n(N, ModuliPoint.from_tau(rho)).log_abs

    balance = interior + nu_inf_formula == qn_size(N) // 4
    mismatch = abs(slope - nu_inf_formula) > 0.1
    return {
        "N": N,
        "interior_count": interior,
        "P_N": p_of_n(N),
        "nu_inf_formula": int(nu_inf_formula),
        "nu_inf_slope": slope,
        "balance_exact": balance,
        "slope_mismatch": mismatch,
        "log_abs_MN_at_i": mag_i,
        "log_abs_MN_at_rho": mag_rho,
        "nu_i_zero": math.isfinite(mag_i),
        "nu_rho_zero": math.isfinite(mag_rho),
        "Q_N_quarter": qn_size(N) // 4,
        "merge_events": report.merge_events,
    }
