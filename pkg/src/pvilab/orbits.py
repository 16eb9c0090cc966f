"""Exact torsion-point combinatorics: Q_N, Euler phi, pole counts, orbits.

Everything here is integer/rational arithmetic; no floats.  Parameter pairs
ride as row vectors (s, r) = (k2, k1)/N and the level-2 group acts on the
right, matching ``modular.transport_pair``.

The orbit classifier follows the constructive parity case analysis on
(m1, m2) = (k1, k2)/gcd and on (L, N): each case produces an explicit
witness chain gamma = gamma2 . gamma1 in Gamma(2) connecting the input to
one of the three representatives (0, 1/N), (1/N, 0), (1/N, 1/N), and the
resulting congruence is re-verified exactly before the report is returned.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DepthExceeded, InternalError
from .modular import ModularMatrix


@dataclass(frozen=True)
class RationalPair:
    """A primitive N-torsion parameter pair (k1/N, k2/N)."""

    k1: int
    k2: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if not (0 <= self.k1 < self.N and 0 <= self.k2 < self.N):
            raise ValueError("require 0 <= k1, k2 <= N-1")
        if math.gcd(self.k1, self.k2, self.N) != 1:
            raise ValueError(
                f"gcd(k1, k2, N) = {math.gcd(self.k1, self.k2, self.N)} != 1"
            )

    @property
    def r(self) -> Fraction:
        return Fraction(self.k1, self.N)

    @property
    def s(self) -> Fraction:
        return Fraction(self.k2, self.N)

    def row(self) -> tuple[int, int]:
        """Numerators of the row vector (s, r)."""
        return (self.k2, self.k1)

    def negated(self) -> "RationalPair":
        return RationalPair((-self.k1) % self.N, (-self.k2) % self.N, self.N)

    def pm_canonical(self) -> "RationalPair":
        """Lexicographically smaller of the pair and its negation."""
        neg = self.negated()
        return min(self, neg, key=lambda p: (p.k1, p.k2))


def euler_phi(n: Union[int, Fraction, float]) -> int:
    """Euler totient, extended by 0 to non-integer arguments."""
    if isinstance(n, float):
        if n != int(n):
            return 0
        n = int(n)
    if isinstance(n, Fraction):
        if n.denominator != 1:
            return 0
        n = int(n)
    if n < 1:
        raise ValueError("argument must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def enumerate_qn(N: int) -> list[RationalPair]:
    """All primitive N-torsion pairs, sorted lexicographically by (k1, k2)."""
    if N < 3:
        raise ValueError("N must be >= 3")
    out = []
    for k1 in range(N):
        for k2 in range(N):
            if math.gcd(math.gcd(k1, k2), N) == 1:
                out.append(RationalPair(k1, k2, N))
    return out


def qn_size(N: int) -> int:
    """|Q_N| = N^2 prod_{p | N} (p^2 - 1)/p^2, exactly."""
    size = N * N
    m = N
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            size = size // (p * p) * (p * p - 1)
        p += 1 if p == 2 else 2
    if m > 1:
        size = size // (m * m) * (m * m - 1)
    return size


def p_of_n(N: int) -> int:
    """Multiplicity-weighted zero count of M_N over one modular fundamental
    domain: |Q_N|/4 - phi(N) - phi(N/2)."""
    if N < 3:
        raise ValueError("N must be >= 3")
    size = qn_size(N)
    if size % 4 != 0:
        raise InternalError(f"|Q_{N}| = {size} is not divisible by 4")
    return size // 4 - (euler_phi(N) + euler_phi(Fraction(N, 2)))


def pole_count(N: int) -> tuple[int, int]:
    """(number of solutions, poles per solution) for the D_N parameter set.

    Odd N: one solution with 3|Q_N|/4 - 3 phi(N) poles; even N: three
    solutions with |Q_N|/4 - phi(N) - phi(N/2) poles each.  Cross-checked
    against 3 P(N) / P(N).
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    size = qn_size(N)
    if N % 2 == 1:
        poles = 3 * size // 4 - 3 * euler_phi(N)
        if poles != 3 * p_of_n(N):
            raise InternalError("odd-N pole count disagrees with 3 P(N)")
        return (1, poles)
    poles = size // 4 - (euler_phi(N) + euler_phi(N // 2))
    if poles != p_of_n(N):
        raise InternalError("even-N pole count disagrees with P(N)")
    return (3, poles)


# ---------------------------------------------------------------------------
# Constructive orbit classification
# ---------------------------------------------------------------------------

_REPRESENTATIVES = {
    # keyed by the row vector (s', r') in units of 1/N
    (1, 0): "(0,1/N)",
    (0, 1): "(1/N,0)",
    (1, 1): "(1/N,1/N)",
}


@dataclass(frozen=True)
class OrbitReport:
    """Witnessed classification of a torsion pair under Gamma(2) and +-."""

    input: RationalPair
    representative: RationalPair
    gamma_witness: ModularMatrix
    sign: int
    shift: tuple[int, int]
    verified: bool


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    return old_r, old_s, old_t


def _gamma2_first_row(A: int, B: int) -> ModularMatrix:
    """gamma in Gamma(2) with first row (A, B); needs A odd, B even,
    gcd(A, B) = 1."""
    assert A % 2 == 1 and B % 2 == 0 and math.gcd(A, B) == 1
    g, x, y = _xgcd(A, B)
    if g == -1:
        x, y = -x, -y
    # A*y' - B*x' = 1 with y' = x, x' = -y
    yy, xx = x, -y
    if xx % 2 != 0:  # shift x' by A (odd) to fix parity; y' follows by B
        xx += A
        yy += B
    m = ModularMatrix(A, B, xx, yy)
    if not m.in_gamma2:
        raise InternalError(f"first-row construction left Gamma(2): {m}")
    return m


def _gamma2_second_row(C: int, D: int) -> ModularMatrix:
    """gamma in Gamma(2) with second row (C, D); needs C even, D odd,
    gcd(C, D) = 1."""
    assert C % 2 == 0 and D % 2 == 1 and math.gcd(C, D) == 1
    g, x, y = _xgcd(D, C)
    if g == -1:
        x, y = -x, -y
    # x'*D - y'*C = 1 with x' = x, y' = -y
    xx, yy = x, -y
    if yy % 2 != 0:  # shift y' by D (odd); x' follows by C
        yy += D
        xx += C
    m = ModularMatrix(xx, yy, C, D)
    if not m.in_gamma2:
        raise InternalError(f"second-row construction left Gamma(2): {m}")
    return m


def _gamma2_column_sums(P: int, Q: int) -> ModularMatrix:
    """gamma = [[a,b],[c,d]] in Gamma(2) with a + c = P, b + d = Q; needs
    P, Q odd and gcd(P, Q) = 1."""
    assert P % 2 == 1 and Q % 2 == 1 and math.gcd(P, Q) == 1
    # a, d solve Q*a + P*d = 1 + P*Q with a odd (then d is odd automatically).
    g, x, y = _xgcd(Q, P)
    if g == -1:
        x, y = -x, -y
    rhs = 1 + P * Q
    a = x * rhs
    d = y * rhs
    # general solution a += t*P, d -= t*Q
    t = a // P if P != 0 else 0
    a -= t * P
    d += t * Q
    if a % 2 == 0:
        a += P
        d -= Q
    c = P - a
    b = Q - d
    m = ModularMatrix(a, b, c, d)
    if not m.in_gamma2:
        raise InternalError(f"column-sum construction left Gamma(2): {m}")
    return m


def classify_orbit(p: RationalPair) -> OrbitReport:
    """Representative and exact Gamma(2) witness for a primitive pair.

    The congruence (s, r) == sign * (s', r') . gamma mod Z^2 is re-verified
    in integer arithmetic; failure raises InternalError.
    """
    N = p.N
    k1, k2 = p.k1, p.k2
    L = math.gcd(k1, k2)
    if L == 0:  # pragma: no cover - excluded by the gcd-1 constraint
        raise InternalError("zero pair cannot be classified")
    m1, m2 = k1 // L, k2 // L

    if m1 % 2 == 1 and m2 % 2 == 1:
        # both odd: route through the diagonal pair (L/N, L/N)
        gamma1 = _gamma2_column_sums(m2, m1)
        if N % 2 == 1:
            if L % 2 == 1:
                gamma2 = _gamma2_first_row(L, L - N)
                rep_row = (1, 0)
            else:
                gamma2 = _gamma2_second_row(L, L - N)
                rep_row = (0, 1)
        else:
            gamma2 = _gamma2_column_sums(L, L - N)
            rep_row = (1, 1)
    elif m1 % 2 == 0:
        # m1 even, m2 odd: route through (L/N, 0)
        gamma1 = _gamma2_first_row(m2, m1)
        if N % 2 == 0:
            gamma2 = _gamma2_first_row(L, N)
            rep_row = (1, 0)
        elif L % 2 == 0:
            gamma2 = _gamma2_second_row(L, N)
            rep_row = (0, 1)
        else:
            gamma2 = _gamma2_column_sums(L, N)
            rep_row = (1, 1)
    else:
        # m2 even, m1 odd: route through (0, L/N)
        gamma1 = _gamma2_second_row(m2, m1)
        if N % 2 == 0:
            gamma2 = _gamma2_second_row(N, L)
            rep_row = (0, 1)
        elif L % 2 == 0:
            gamma2 = _gamma2_first_row(N, L)
            rep_row = (1, 0)
        else:
            gamma2 = _gamma2_column_sums(N, L)
            rep_row = (1, 1)

    gamma = gamma2 @ gamma1
    rep_s, rep_r = rep_row
    representative = RationalPair(rep_r % N, rep_s % N, N)

    # exact verification: (k2, k1) == (rep_s, rep_r) . gamma + N * shift
    img = gamma.act_rows(rep_row)
    ds = k2 - img[0]
    dr = k1 - img[1]
    if ds % N != 0 or dr % N != 0:
        raise InternalError(
            f"witness verification failed for {p}: image {img}, rep {rep_row}"
        )
    shift = (ds // N, dr // N)
    if not gamma.in_gamma2:
        raise InternalError(f"witness chain left Gamma(2) for {p}")
    return OrbitReport(
        input=p,
        representative=representative,
        gamma_witness=gamma,
        sign=1,
        shift=shift,
        verified=True,
    )


# ---------------------------------------------------------------------------
# Brute-force oracle: BFS over Gamma(2) generators
# ---------------------------------------------------------------------------

_GENERATORS = (
    ModularMatrix(1, 2, 0, 1),
    ModularMatrix(1, 0, 2, 1),
    ModularMatrix(1, -2, 0, 1),
    ModularMatrix(1, 0, -2, 1),
)


def orbit_brute_force(N: int, max_depth: int = 24) -> list[frozenset]:
    """Partition of Q_N/+- under the right action of Gamma(2).

    BFS over the generator set {[[1,2],[0,1]], [[1,0],[2,1]]} and inverses
    acting on (s, r) row vectors mod Z^2, quotiented by the central +-.
    Raises DepthExceeded when a class has not stabilised within max_depth
    BFS layers.
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    all_pairs = enumerate_qn(N)
    canon = {}
    for pr in all_pairs:
        canon[pr.row()] = pr.pm_canonical().row()

    def canonical(row):
        k2, k1 = row[0] % N, row[1] % N
        return canon[(k2, k1)]

    seen_global: set = set()
    classes: list[frozenset] = []
    for pr in all_pairs:
        start = canonical(pr.row())
        if start in seen_global:
            continue
        cls = {start}
        frontier = deque([start])
        depth = 0
        while frontier:
            if depth > max_depth:
                raise DepthExceeded(
                    f"orbit BFS for N={N} exceeded depth {max_depth}"
                )
            next_frontier = deque()
            while frontier:
                row = frontier.popleft()
                for g in _GENERATORS:
                    nxt = canonical(g.act_rows(row))
                    if nxt not in cls:
                        cls.add(nxt)
                        next_frontier.append(nxt)
            frontier = next_frontier
            depth += 1
        classes.append(frozenset(cls))
        seen_global |= cls
    classes.sort(key=lambda c: min(c))
    return classes


def pm_class_reps(N: int) -> list[RationalPair]:
    """One representative per +-class of Q_N (lexicographic minimum)."""
    reps = {}
    for pr in enumerate_qn(N):
        c = pr.pm_canonical()
        reps[(c.k1, c.k2)] = c
    return [reps[k] for k in sorted(reps)]
