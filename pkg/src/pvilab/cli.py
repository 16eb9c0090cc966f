"""Command-line front end: JSON reports and CSV grids for the library.

Subcommands:
  eval    lambda_{r,s}, t and wp(p) at a given (r, s, tau)
  zeros   locate zeros of Z2_{r,s} over a fundamental domain
  count   P(N), pole counts, M_N zero count and valence bookkeeping
  orbits  witnessed orbit classification and the BFS partition for Q_N
  scan    CSV grid of Z2 over a tau rectangle, or of windings over (r, s)
  verify  run the acceptance suite; exit 0 iff all criteria pass

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 acceptance
failure.  Complex numbers are written "a+bi", rationals "p/q".
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from ._backend import backend_name
from .errors import (
    BoundaryTooClose,
    DomainError,
    Inconclusive,
    IncoherentWinding,
    PviLabError,
)
from .elliptic import ModuliPoint, invariants_g
from .locator import (
    DomainSpec,
    classify_triangle,
    count_mn_zeros,
    locate_zeros,
    valence_check,
    winding_count,
)
from .orbits import (
    classify_orbit,
    enumerate_qn,
    orbit_brute_force,
    p_of_n,
    pole_count,
    qn_size,
)
from .premodular import TorsionPair, z2_stable
from .report import Report, format_complex, parse_rational_or_float
from .solutions import lambda_rs

CSV_HEADER = "re,im,value_re,value_im,abs,winding"


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("PVI_LAB_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _domain(args) -> DomainSpec:
    return DomainSpec(args.domain, truncation_height=args.T)


def _pair(args) -> TorsionPair:
    if args.r is None or args.s is None:
        raise DomainError("--r and --s are required")
    return TorsionPair.of(parse_rational_or_float(args.r), parse_rational_or_float(args.s))


def _tau(args) -> ModuliPoint:
    if args.tau is None:
        raise DomainError("--tau is required")
    t = parse_rational_or_float(args.tau)
    return ModuliPoint.from_tau(complex(t))


def _emit(report: Report, args) -> None:
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_eval(args) -> int:
    pair = _pair(args)
    m = _tau(args)
    t0 = time.time()
    sv = lambda_rs(pair, m)
    lat = invariants_g(m)
    results = {
        "t": sv.t,
        "wp_p": sv.wp_p,
        "lambda": sv.lam,
        "is_pole": sv.is_pole,
        "branch_copy": sv.branch_note,
        "alpha": sv.alpha,
    }
    rep = Report(
        command="eval",
        inputs={"r": pair.r, "s": pair.s, "tau": m.tau},
        results=results,
        diagnostics={
            "est_error": lat.est_error,
            "backend": backend_name(),
            "timings": {"eval": time.time() - t0},
        },
        version=__version__,
    )
    _emit(rep, args)
    return 0


def _cmd_zeros(args) -> int:
    pair = _pair(args)
    d = _domain(args)
    t0 = time.time()
    w = winding_count(pair, d)
    certs = locate_zeros(pair, d, expected=w)
    results = {
        "winding": w,
        "triangle": classify_triangle(pair).tag if pair.is_real else "complex",
        "zeros": [
            {
                "tau0": c.tau0,
                "residual": c.residual,
                "dz_mag": c.dz_mag,
                "newton_iters": c.newton_iters,
                "region": c.region,
            }
            for c in certs
        ],
    }
    rep = Report(
        command="zeros",
        inputs={"r": pair.r, "s": pair.s, "domain": d.kind, "T": d.truncation_height},
        results=results,
        diagnostics={"backend": backend_name(), "timings": {"zeros": time.time() - t0}},
        version=__version__,
    )
    _emit(rep, args)
    return 0


def _cmd_count(args) -> int:
    N = args.N
    if N is None or N < 3:
        raise DomainError("--N must be an integer >= 3")
    t0 = time.time()
    nsol, per = pole_count(N)
    results = {
        "N": N,
        "Q_N_size": qn_size(N),
        "P": p_of_n(N),
        "solutions": nsol,
        "poles_per_solution": per,
    }
    if N <= 12:
        v = valence_check(N)
        results["valence"] = {
            "interior": v["interior_count"],
            "cusp": v["nu_inf_formula"],
            "total": v["interior_count"] + v["nu_inf_formula"],
            "cusp_order_slope": v["nu_inf_slope"],
            "balance_exact": v["balance_exact"],
        }
        results["merge_events"] = v["merge_events"]
    rep = Report(
        command="count",
        inputs={"N": N},
        results=results,
        diagnostics={"backend": backend_name(), "timings": {"count": time.time() - t0}},
        version=__version__,
    )
    _emit(rep, args)
    return 0


def _cmd_orbits(args) -> int:
    N = args.N
    if N is None or N < 3:
        raise DomainError("--N must be an integer >= 3")
    t0 = time.time()
    classes = orbit_brute_force(N)
    reports = []
    for pr in enumerate_qn(N):
        rep = classify_orbit(pr)
        reports.append(
            {
                "pair": [Fraction(pr.k1, pr.N), Fraction(pr.k2, pr.N)],
                "representative": [
                    Fraction(rep.representative.k1, N),
                    Fraction(rep.representative.k2, N),
                ],
                "gamma": list(rep.gamma_witness.as_tuple()),
                "sign": rep.sign,
                "shift": list(rep.shift),
                "verified": rep.verified,
            }
        )
    results = {
        "N": N,
        "classes": len(classes),
        "class_sizes": sorted(len(c) for c in classes),
        "elements": reports,
    }
    rep = Report(
        command="orbits",
        inputs={"N": N},
        results=results,
        diagnostics={"backend": backend_name(), "timings": {"orbits": time.time() - t0}},
        version=__version__,
    )
    _emit(rep, args)
    return 0


def _scan_tau(args, pair: TorsionPair, nx: int, ny: int, threads: int) -> list[str]:
    x0, x1 = args.re_min, args.re_max
    y0, y1 = args.im_min, args.im_max
    rows = []
    xs = [x0 + (x1 - x0) * i / max(nx - 1, 1) for i in range(nx)]
    ys = [y0 + (y1 - y0) * j / max(ny - 1, 1) for j in range(ny)]

    def row_for(y):
        out = []
        for x in xs:
            tau = complex(x, y)
            val, _ = z2_stable(pair, ModuliPoint.from_tau(tau, reduce=False))
            out.append(
                f"{x!r},{y!r},{val.real!r},{val.imag!r},{abs(val)!r},"
            )
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk in pool.map(row_for, ys):
                rows.extend(chunk)
    else:
        for y in ys:
            rows.extend(row_for(y))
    return rows


def _scan_winding(args, nx: int, ny: int, threads: int) -> list[str]:
    d = _domain(args)
    x0, x1 = args.re_min, args.re_max
    y0, y1 = args.im_min, args.im_max
    rs = [x0 + (x1 - x0) * i / max(nx - 1, 1) for i in range(nx)]
    ss = [y0 + (y1 - y0) * j / max(ny - 1, 1) for j in range(ny)]

    def row_for(s):
        out = []
        for r in rs:
            pair = TorsionPair.of(r, s)
            try:
                w = winding_count(pair, d)
                out.append(f"{r!r},{s!r},,,,{w}")
            except PviLabError:
                out.append(f"{r!r},{s!r},,,,")
        return out

    rows = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk in pool.map(row_for, ss):
                rows.extend(chunk)
    else:
        for s in ss:
            rows.extend(row_for(s))
    return rows


def _cmd_scan(args) -> int:
    threads = _threads(args)
    nx, ny = args.nx, args.ny
    t0 = time.time()
    if args.mode == "z2":
        pair = _pair(args)
        rows = _scan_tau(args, pair, nx, ny, threads)
        inputs = {
            "mode": "z2",
            "r": pair.r,
            "s": pair.s,
            "rect": [args.re_min, args.re_max, args.im_min, args.im_max],
        }
    else:
        rows = _scan_winding(args, nx, ny, threads)
        inputs = {
            "mode": "winding",
            "domain": args.domain,
            "rect": [args.re_min, args.re_max, args.im_min, args.im_max],
        }
    csv_text = "\n".join([CSV_HEADER] + rows) + "\n"
    if args.format == "csv" or args.out:
        path = args.out or "scan.csv"
        with open(path, "w") as fh:
            fh.write(csv_text)
        print(f"wrote {len(rows)} rows to {path}")
    else:
        print(csv_text, end="")
    if args.format == "json":
        rep = Report(
            command="scan",
            inputs=inputs,
            results={"rows": len(rows)},
            diagnostics={"timings": {"scan": time.time() - t0}},
            version=__version__,
        )
        print(rep.to_json())
    return 0


def _cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(echo=print)
    n_failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - n_failed}/{len(results)} criteria passed")
    return 0 if n_failed == 0 else 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pvilab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, need_pair=False, need_tau=False, need_domain=False):
        p.add_argument("--N", type=int, default=None)
        p.add_argument("--r", type=str, default=None, help="rational p/q, float or a+bi")
        p.add_argument("--s", type=str, default=None)
        p.add_argument("--tau", type=str, default=None, help="complex a+bi, Im > 0")
        p.add_argument("--domain", choices=("F0", "F", "F2"), default="F0")
        p.add_argument("--T", type=float, default=10.0, help="truncation height")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--threads", type=int, default=None)

    p_eval = sub.add_parser("eval", help="lambda_{r,s}, t, wp(p) at (r, s, tau)")
    common(p_eval)
    p_zeros = sub.add_parser("zeros", help="locate zeros of Z2 over a domain")
    common(p_zeros)
    p_count = sub.add_parser("count", help="pole-count formulas and valence for N")
    common(p_count)
    p_orbits = sub.add_parser("orbits", help="orbit classification for Q_N")
    common(p_orbits)
    p_scan = sub.add_parser("scan", help="CSV grid of Z2 or windings")
    common(p_scan)
    p_scan.add_argument("--mode", choices=("z2", "winding"), default="z2")
    p_scan.add_argument("--re-min", type=float, default=0.0)
    p_scan.add_argument("--re-max", type=float, default=1.0)
    p_scan.add_argument("--im-min", type=float, default=0.1)
    p_scan.add_argument("--im-max", type=float, default=2.0)
    p_scan.add_argument("--nx", type=int, default=21)
    p_scan.add_argument("--ny", type=int, default=21)
    p_verify = sub.add_parser("verify", help="run the acceptance suite")
    common(p_verify)
    return ap


_DISPATCH = {
    "eval": _cmd_eval,
    "zeros": _cmd_zeros,
    "count": _cmd_count,
    "orbits": _cmd_orbits,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return _DISPATCH[args.cmd](args)
    except (Inconclusive, BoundaryTooClose, IncoherentWinding) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except PviLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
