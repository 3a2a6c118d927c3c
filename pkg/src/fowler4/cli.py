"""Command-line front end: parameter sweeps, verification, data export.

Subcommands: coeffs, signs, classify, integrate, pohozaev, shoot, fit,
verify.  Rational inputs are accepted as "p/q" strings and kept exact
end-to-end; outputs are deterministic (17 significant digits, no
timestamps).  Exit codes: 0 success (verify: all checks pass or are
documented mismatches), 1 unexpected failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import acceptance
from .asymptotics import classify_regime, fit_log_corrected, fit_power_law
from .coefficients import (BUILD_SIGMA, derive_cyl_coeffs_numeric, oracle_autonomous,
                           printed_autonomous, sign_report)
from .integrate import integrate
from .ledger import build_ledger, check_ledger, format_number, ledger_to_csv, ledger_to_json
from .odes import make_autonomous_rhs
from .output import gnuplot_companion, write_csv, write_json
from .params import DomainError, Params, special_exponents
from .pohozaev import limiting_levels, pohozaev_series
from .profiles import AvilesProfile, Bubble, SingularPower
from .shooting import critical_constants, orbit_table


class UsageError(Exception):
    pass


def _parse_scalar(text: str):
    """Exact parse: 'p/q', integers and decimal strings all become Fractions."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse scalar {text!r}: {exc}") from None


def _parse_n_range(text: str) -> List[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _common(ap: argparse.ArgumentParser, need_s: bool = False):
    ap.add_argument("--n", required=True, help="dimension (or lo:hi range)")
    ap.add_argument("--s", required=need_s, default=None,
                    help="power, exact 'p/q' accepted")
    ap.add_argument("--p", type=int, default=1, help="component count")
    ap.add_argument("--rel-tol", type=float, default=1e-10)
    ap.add_argument("--abs-tol", type=float, default=1e-12)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--out", default=None, help="output path (default: stdout)")
    ap.add_argument("--sigma", type=int, choices=(1, -1), default=BUILD_SIGMA)
    ap.add_argument("--c-mode", choices=("measured", "unit"), default="measured")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                    help="worker pool size for sweeps (results keep input order)")
    ap.add_argument("--gnuplot", action="store_true",
                    help="also emit a companion gnuplot script (text only)")


def _config(args, **extra):
    cfg = {"n": args.n, "p": args.p, "rel_tol": args.rel_tol, "abs_tol": args.abs_tol,
           "sigma": args.sigma, "c_mode": args.c_mode, "seed": args.seed}
    if getattr(args, "s", None) is not None:
        cfg["s"] = str(args.s)
    cfg.update(extra)
    return cfg


def _emit(args, text: str, columns=None):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        if args.gnuplot and columns:
            with open(args.out + ".gp", "w") as fh:
                fh.write(gnuplot_companion(args.out, columns))
    else:
        sys.stdout.write(text)


def cmd_coeffs(args) -> int:
    ns = _parse_n_range(args.n)
    s = _parse_scalar(args.s)
    rows = []
    for n in ns:
        printed = printed_autonomous(n, s)
        oracle = oracle_autonomous(n, s, args.sigma)
        numeric = derive_cyl_coeffs_numeric(n, 0.3, s=float(s), scaling="autonomous",
                                            sigma=args.sigma)
        for key in ("K0", "K1", "K2", "K3", "J0", "J1"):
            verdict = "MATCH" if printed[key] == oracle[key] else \
                ("SIGN_CONVENTION" if printed[key] == -oracle[key] else "MISMATCH")
            rows.append([n, str(s), key, format_number(printed[key]),
                         format_number(oracle[key]),
                         format_number(float(numeric[key])), verdict])
    cols = ["n", "s", "symbol", "printed", "oracle", "chain_rule", "verdict"]
    if args.format == "json":
        results = [dict(zip(cols, r)) for r in rows]
        text = write_json(None, _config(args), results, ledger=[])
    else:
        text = write_csv(None, cols, rows, _config(args))
    _emit(args, text, cols)
    return 0


def cmd_signs(args) -> int:
    ns = _parse_n_range(args.n)
    grid = int(args.s_grid)
    rows = []
    for n in ns:
        ex = special_exponents(n)
        smin, smax = 1.02, float(ex.critical_power) * 1.1
        for i in range(grid):
            s = smin + (smax - smin) * i / (grid - 1)
            rep = sign_report(Params(n, s), args.sigma)
            rows.append([n, s, int(rep["in_window"])] +
                        [rep["signs"][k] for k in ("K0", "K1", "K2", "K3", "J0", "J1")])
    cols = ["n", "s", "in_window", "sgn_K0", "sgn_K1", "sgn_K2", "sgn_K3",
            "sgn_J0", "sgn_J1"]
    text = write_csv(None, cols, rows, _config(args, s_grid=grid)) \
        if args.format == "csv" else \
        write_json(None, _config(args, s_grid=grid),
                   [dict(zip(cols, r)) for r in rows])
    _emit(args, text, cols)
    return 0


def cmd_classify(args) -> int:
    ns = _parse_n_range(args.n)
    s = _parse_scalar(args.s)
    results = []
    for n in ns:
        rep = classify_regime(n, s)
        results.append({
            "n": n, "s": str(s), "regime": rep.regime.value,
            "predicted_exponent": rep.predicted_exponent,
            "predicted_amplitude": rep.predicted_amplitude,
            "log_correction_exponent": rep.log_correction_exponent,
            "description": rep.description,
            "K0": format_number(oracle_autonomous(n, s, args.sigma)["K0"]),
        })
    if args.format == "csv":
        cols = list(results[0].keys())
        text = write_csv(None, cols, [[r[c] for c in cols] for r in results],
                         _config(args))
    else:
        text = write_json(None, _config(args), results)
    _emit(args, text)
    return 0


def cmd_integrate(args) -> int:
    ns = _parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError("integrate takes a single dimension")
    n = ns[0]
    s = _parse_scalar(args.s)
    params = Params(n, s, args.p)
    y0 = np.array([float(Fraction(v)) for v in args.init.split(",")])
    if y0.size != 4 * args.p:
        raise UsageError(f"initial state needs {4 * args.p} entries, got {y0.size}")
    rhs = make_autonomous_rhs(params, args.sigma)
    traj = integrate(rhs, 0.0, y0, args.t_end, rel_tol=args.rel_tol,
                     abs_tol=args.abs_tol)
    cfg = _config(args, t_end=args.t_end, status=traj.status)
    rows = []
    steps = np.diff(traj.t, append=traj.t[-1])
    for i, t in enumerate(traj.t):
        rows.append([float(t)] + [float(v) for v in traj.y[i]] + [float(steps[i])])
    cols = (["t"] + [f"y{j}" for j in range(4 * args.p)] + ["step"])
    text = write_csv(None, cols, rows, cfg) if args.format == "csv" else \
        write_json(None, cfg, rows)
    _emit(args, text, cols)
    if args.energy_out:
        series = pohozaev_series(params, traj, num=min(801, 5 * len(traj.t)))
        etext = write_csv(None, ["t", "H", "dH_formula", "dH_numeric"],
                          [[q.t, q.H, q.dH_formula, q.dH_numeric] for q in series],
                          cfg)
        with open(args.energy_out, "w") as fh:
            fh.write(etext)
    return 0


def cmd_pohozaev(args) -> int:
    ns = _parse_n_range(args.n)
    s = _parse_scalar(args.s)
    results = []
    for n in ns:
        lv = limiting_levels(Params(n, s), args.sigma)
        results.append({
            "n": n, "s": str(s),
            "l_star_autonomous": lv.l_star_autonomous,
            "l_star_lower_critical_printed": lv.l_star_aviles_printed,
            "l_star_lower_critical_derived": lv.l_star_aviles_derived,
            "constant_state_limit": lv.l_star_aviles_constant_state,
            "verdict": lv.aviles_verdict,
        })
    text = write_json(None, _config(args), results)
    _emit(args, text)
    return 0


def cmd_shoot(args) -> int:
    ns = _parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError("shoot takes a single dimension")
    n = ns[0]
    cc = critical_constants(n, args.c_mode)
    fracs = [float(Fraction(v)) for v in args.a_grid.split(",")]
    a_values = [f * cc.a0 for f in fracs]
    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(
                lambda a: orbit_table(n, [a], c_mode=args.c_mode)[0], a_values))
    else:
        results = orbit_table(n, a_values, c_mode=args.c_mode)
    rows = [[n, r.a, r.b, r.T, r.energy, r.residual, r.period_defect,
             r.energy_drift, r.min_v, int(r.converged), r.precision]
            for r in results]
    cols = ["n", "a", "b", "T", "energy", "residual", "period_defect",
            "energy_drift", "min_v", "converged", "precision"]
    cfg = _config(args, a0=cc.a0, c=cc.c, a_grid=args.a_grid)
    if args.orbit_dir:
        import pathlib
        outdir = pathlib.Path(args.orbit_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, r in enumerate(results):
            if r.orbit is None:
                continue
            ts = np.linspace(0.0, r.T, 801)
            vals = r.orbit(ts)
            orows = [[float(t)] + [float(v) for v in vals[j]]
                     for j, t in enumerate(ts)]
            write_csv(outdir / f"orbit_{i:02d}.csv",
                      ["t", "v", "v1", "v2", "v3"], orows,
                      {**cfg, "a": r.a, "b": r.b, "T": r.T})
    text = write_csv(None, cols, rows, cfg) if args.format == "csv" else \
        write_json(None, cfg, [dict(zip(cols, r)) for r in rows])
    _emit(args, text, cols)
    return 0 if all(r.converged for r in results) else 1


def cmd_fit(args) -> int:
    ns = _parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError("fit takes a single dimension")
    n = ns[0]
    if args.profile == "power":
        s = _parse_scalar(args.s) if args.s else Fraction(7)
        sp = SingularPower(n, float(s))
        rs = np.geomspace(args.r_lo, args.r_hi, args.num)
        rep = fit_power_law([(float(r), sp.radial(float(r))) for r in rs])
    elif args.profile == "aviles":
        ap_ = AvilesProfile(n)
        rs = np.geomspace(args.r_lo, min(args.r_hi, 0.1), args.num)
        rep = fit_log_corrected([(float(r), ap_(float(r))) for r in rs], n)
    elif args.profile == "bubble":
        b = Bubble(n)
        rs = np.geomspace(max(args.r_lo, 1e2), args.r_hi, args.num)
        rep = fit_power_law([(float(r), b.radial(float(r))) for r in rs])
    else:
        raise UsageError(f"unknown profile {args.profile!r}")
    results = {"profile": args.profile, "exponent": rep.exponent,
               "amplitude": rep.amplitude, "residual": rep.residual,
               "log_exponent": rep.log_exponent,
               "amplitude_targets": rep.amplitude_targets}
    cfg = _config(args, r_lo=args.r_lo, r_hi=args.r_hi, num=args.num,
                  profile=args.profile)
    text = write_json(None, cfg, results)
    _emit(args, text)
    if args.samples_out:
        if rep.log_exponent is not None and args.profile == "aviles":
            model = lambda r: rep.amplitude * r ** (4.0 - n) * \
                (-np.log(r)) ** rep.log_exponent
            rs_used = rs
        else:
            model = lambda r: rep.amplitude * r ** (-rep.exponent)
            rs_used = rs
        rows = []
        for r in rs_used:
            r = float(r)
            value = {"power": lambda: sp.radial(r), "aviles": lambda: ap_(r),
                     "bubble": lambda: b.radial(r)}[args.profile]()
            pred = model(r)
            rows.append([r, value, pred, abs(value - pred) / max(abs(pred), 1e-300)])
        write_csv(args.samples_out, ["r", "value", "model", "rel_deviation"],
                  rows, cfg)
    return 0


def cmd_verify(args) -> int:
    select = None
    if args.suite:
        if args.suite not in acceptance.SUITE_GROUPS:
            raise UsageError(f"unknown suite {args.suite!r}; "
                             f"choose from {sorted(acceptance.SUITE_GROUPS)}")
        select = acceptance.SUITE_GROUPS[args.suite]
    results = acceptance.run_all(select=select, echo=True)
    entries = build_ledger()
    ok_ledger, undocumented, silent = check_ledger(entries)
    print(f"ledger: {len(entries)} entries, "
          f"{sum(1 for e in entries if e.verdict == 'MISMATCH')} documented mismatches, "
          f"registry {'consistent' if ok_ledger else 'INCONSISTENT'}")
    if args.out:
        text = ledger_to_json(entries) if args.format == "json" else ledger_to_csv(entries)
        with open(args.out, "w") as fh:
            fh.write(text)
    all_ok = all(r.passed for r in results) and ok_ledger
    print("verify:", "OK" if all_ok else "FAILED")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fowler4",
        description="verification laboratory for the fourth-order cylindrical reduction")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="coefficient table from all routes")
    _common(p, need_s=True)
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("signs", help="sign chart of the coefficients over s")
    _common(p)
    p.add_argument("--s-grid", default="64", help="number of s samples")
    p.set_defaults(fn=cmd_signs)

    p = sub.add_parser("classify", help="asymptotic regime of (n, s)")
    _common(p, need_s=True)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("integrate", help="integrate the constant-coefficient system")
    _common(p, need_s=True)
    p.add_argument("--init", required=True, help="comma-separated initial state")
    p.add_argument("--t-end", type=float, default=40.0)
    p.add_argument("--energy-out", default=None,
                   help="also write the energy series CSV here")
    p.set_defaults(fn=cmd_integrate)

    p = sub.add_parser("pohozaev", help="limiting energy levels")
    _common(p, need_s=True)
    p.set_defaults(fn=cmd_pohozaev)

    p = sub.add_parser("shoot", help="periodic critical-case orbits")
    _common(p)
    p.add_argument("--a-grid", default="0.3,0.6,0.9",
                   help="comma-separated fractions of a0")
    p.add_argument("--orbit-dir", default=None,
                   help="also write one orbit CSV per grid entry here")
    p.set_defaults(fn=cmd_shoot)

    p = sub.add_parser("fit", help="fit a synthetic profile and report parameters")
    _common(p)
    p.add_argument("--profile", choices=("power", "aviles", "bubble"), default="power")
    p.add_argument("--r-lo", type=float, default=1e-3)
    p.add_argument("--r-hi", type=float, default=1e2)
    p.add_argument("--num", type=int, default=40)
    p.add_argument("--samples-out", default=None,
                   help="also write (r, value, model, rel_deviation) CSV here")
    p.set_defaults(fn=cmd_fit)

    p = sub.add_parser("verify", help="run the acceptance suite and the ledger gate")
    p.add_argument("--suite", default=None, help="restrict to one suite group")
    p.add_argument("--n", default=None, help="echoed only; the suite grids are pinned")
    p.add_argument("--s", default=None, help="echoed only; the suite grids are pinned")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="write the ledger here")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # unexpected
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
