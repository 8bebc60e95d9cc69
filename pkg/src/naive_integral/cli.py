"""Command-line front end: ``naive-integral <command> ...``.

Exit status: 0 success, 1 a check failed, 2 bad input or parameter out of
range, 3 a numerical method missed its accuracy target.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass

import mpmath as mp

from . import expansions as ex
from . import reference as ref
from .bignum import BigComplex, check_prec, default_prec
from .contour import REALLINE_TAU_MIN, VARIANTS, eval_components, eval_J0_realline
from .errors import AccuracyError, ConvergenceError, DomainError
from .saddles import TAU_MAX, saddle_series, solve_saddles, verify_localizations
from .theta import psi, tau_of_t, z0_expected_count, z0_leading, z0_sign_changes

EXIT_OK, EXIT_MISMATCH, EXIT_DOMAIN, EXIT_ACCURACY = 0, 1, 2, 3
SKIPPABLE = ("contour", "asymptotic", "realline", "saddles")


@dataclass(frozen=True)
class RunConfig:
    tau: mp.mpf
    t: mp.mpf | None
    precision: int
    order: int | None
    output: str
    path_variant: str
    skip: frozenset

    @property
    def label(self):
        return f"t = {mp.nstr(self.t, 12)}" if self.t is not None else f"tau = {mp.nstr(self.tau, 12)}"


def _config(args) -> RunConfig:
    prec = check_prec(args.prec if args.prec is not None else default_prec())
    t = getattr(args, "t", None)
    tau = getattr(args, "tau", None)
    if (t is None) == (tau is None):
        raise DomainError("give exactly one of --t and --tau")
    if t is not None:
        with mp.workdps(prec + 20):
            t = mp.mpf(t)
        tau = tau_of_t(t, prec)
    else:
        with mp.workdps(prec + 20):
            tau = mp.mpf(tau)
        if tau <= 0:
            raise DomainError("tau must be positive")
    output = "json" if args.json else "csv" if getattr(args, "csv", False) else "human"
    skip = frozenset(s.strip() for s in (getattr(args, "skip", None) or "").split(",") if s.strip())
    unknown = skip - set(SKIPPABLE)
    if unknown:
        raise DomainError(f"unknown --skip entries {sorted(unknown)}; choose from {SKIPPABLE}")
    return RunConfig(tau, t, prec, getattr(args, "order", None), output,
                     getattr(args, "path_variant", "quarter"), skip)


def _require_range(cfg):
    if cfg.tau > TAU_MAX:
        raise DomainError(f"tau = {mp.nstr(cfg.tau, 8)} is outside (0, 1/4]")


def _fmt(z, digits=25):
    z = z.value if isinstance(z, BigComplex) else mp.mpmathify(z)
    return mp.nstr(z, digits)


def _emit(obj, cfg, rows=None, header=None):
    if cfg.output == "json":
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif cfg.output == "csv" and rows is not None:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)
    return obj


# -- commands -------------------------------------------------------------------

def cmd_saddles(args):
    cfg = _config(args)
    s = solve_saddles(cfg.tau, cfg.precision)
    out = {"saddles": s.to_json()}
    loc = None
    if s.labeled:
        loc = verify_localizations(cfg.tau, cfg.precision, s)
        out["localization"] = loc.to_json()
    if cfg.output == "human":
        print(f"saddles at {cfg.label}")
        if s.labeled:
            for name in ("q1", "q2", "q3"):
                print(f"  {name} = {_fmt(getattr(s, name))}   |P| = {mp.nstr(s.residuals[name], 3)}")
            for c in loc.checks:
                print(f"  {c.name:18s} {'pass' if c.passed else 'FAIL'}  "
                      f"{mp.nstr(c.measured, 8)} vs {mp.nstr(c.bound, 8)}")
        else:
            print("  tau outside (0, 1/4]: roots are not labelled")
            for r in s.unlabeled:
                print(f"  {_fmt(r)}")
    else:
        _emit(out, cfg, [[n, *getattr(s, n).to_json()] for n in ("q1", "q2", "q3")] if s.labeled else
              [[f"root{k}", *r.to_json()] for k, r in enumerate(s.unlabeled)], ["name", "re", "im"])
    return EXIT_OK if loc is None or loc.passed else EXIT_MISMATCH


def cmd_integrate(args):
    cfg = _config(args)
    _require_range(cfg)
    start = time.perf_counter()
    c = eval_components(cfg.tau, cfg.precision, cfg.path_variant)
    elapsed = time.perf_counter() - start
    if cfg.output == "human":
        print(f"contour components at {cfg.label} ({cfg.path_variant} variant, {elapsed:.1f} s)")
        for k in ("J1", "J2", "J3", "J4", "J5"):
            p = c.parts[k]
            print(f"  {k} = {_fmt(p.value)}   err {mp.nstr(p.error_estimate, 3)}")
        print(f"  J0 = {_fmt(c.J0)}   err {mp.nstr(c.error_estimate, 3)}")
    else:
        rows = [[k, *c.parts[k].value.to_json(), mp.nstr(c.parts[k].error_estimate, 6),
                 c.parts[k].evaluations] for k in ("J1", "J2", "J3", "J4", "J5")]
        rows.append(["J0", *c.J0.to_json(), mp.nstr(c.error_estimate, 6), c.evaluations])
        _emit(c.to_json(), cfg, rows, ["component", "re", "im", "error_estimate", "evaluations"])
    return EXIT_OK


def _asymptotic(which, cfg, amplitude=False):
    order = cfg.order or 3
    if which == "j4":
        return ex.j4_asymptotic(cfg.tau, order, amplitude=amplitude, precision=cfg.precision)
    return ex.j2_asymptotic(cfg.tau, order, precision=cfg.precision)


def cmd_asymptotic(args):
    cfg = _config(args)
    _require_range(cfg)
    r = _asymptotic(args.which, cfg, args.amplitude)
    if cfg.output == "human":
        print(f"{args.which} saddle-point expansion at {cfg.label}, {len(r.terms)} terms")
        for e, c in r.terms:
            print(f"  tau^{str(e):>5s} * {_fmt(c, 20)}")
        print(f"  value     = {_fmt(r.value)}")
        print(f"  remainder ~ {mp.nstr(r.remainder_estimate, 3)}")
    else:
        rows = [[str(e), *c.to_json()] for e, c in r.terms]
        _emit(r.to_json(), cfg, rows, ["exponent", "re", "im"])
    return EXIT_OK


def _comparisons(cfg):
    """Rows ``(name, value, reference, |difference|, allowed)``; ``allowed=None`` means informational."""
    rows = []
    tau = cfg.tau
    c = None
    if "saddles" not in cfg.skip:
        loc = verify_localizations(tau, cfg.precision)
        for chk in loc.checks:
            rows.append((f"saddles:{chk.name}", chk.measured, chk.bound,
                         mp.mpf(0) if chk.passed else mp.mpf(1), mp.mpf(0)))
    published = None
    if cfg.t is not None and cfg.t == 1000:
        published = ref.T1000
    elif abs(tau - mp.mpf(1) / 100) < mp.mpf(10) ** (-cfg.precision):
        published = ref.TAU_0_01
    if "contour" not in cfg.skip:
        c = eval_components(tau, cfg.precision, cfg.path_variant)
        for k in ("J0", "J1", "J2", "J3", "J4", "J5"):
            v = c[k].value
            if published:
                r = ref.value(published[k])
                rows.append((f"contour:{k}", v, r, abs(v - r), abs(r) * mp.mpf(10) ** -15))
            else:
                rows.append((f"contour:{k}", v, None, None, None))
    if "asymptotic" not in cfg.skip:
        a4 = _asymptotic("j4", cfg)
        a2 = _asymptotic("j2", cfg)
        if published and cfg.t is None:
            for name, a in (("J4", a4), ("J2", a2)):
                r = ref.value(ref.ASYMPTOTIC_0_01[name])
                rows.append((f"asymptotic:{name} (published)", a.value.value, r,
                             abs(a.value.value - r), abs(r) * mp.mpf(10) ** -20))
        if c is not None:
            # the q2 expansion also accounts for the end pieces next to its segment
            near_q2 = c["J1"].value + c["J2"].value + c["J3"].value
            for name, a, r in (("J4", a4, c["J4"].value), ("J1+J2+J3", a2, near_q2)):
                allowed = 10 * a.remainder_estimate + abs(r) * mp.mpf(10) ** -(cfg.precision - 10)
                rows.append((f"asymptotic:{name} vs contour", a.value.value, r,
                             abs(a.value.value - r), allowed))
        else:
            rows.append(("asymptotic:J4", a4.value.value, None, None, None))
            rows.append(("asymptotic:J2", a2.value.value, None, None, None))
    if "realline" not in cfg.skip and tau >= REALLINE_TAU_MIN and c is not None:
        rl = eval_J0_realline(tau, cfg.precision)
        allowed = rl.error_estimate + c.error_estimate + abs(rl.value.value) * mp.mpf(10) ** -(cfg.precision - 5)
        rows.append(("realline:J0 vs contour", rl.value.value, c.J0.value,
                     abs(rl.value.value - c.J0.value), allowed))
    return rows


def _print_table(rows, cfg, title):
    if cfg.output == "human":
        print(title)
        for name, v, r, d, allowed in rows:
            status = "info" if allowed is None else ("pass" if d <= allowed else "FAIL")
            line = f"  {name:34s} {_fmt(v, 22):>48s}"
            if d is not None:
                line += f"  diff {mp.nstr(d, 3):>9s}  allowed {mp.nstr(allowed, 3):>9s}"
            print(f"{line}  {status}")
    else:
        header = ["check", "value", "reference", "difference", "allowed", "status"]
        out = []
        for name, v, r, d, allowed in rows:
            status = "info" if allowed is None else ("pass" if d <= allowed else "fail")
            out.append([name, _fmt(v, 30), "" if r is None else _fmt(r, 30),
                        "" if d is None else mp.nstr(d, 6),
                        "" if allowed is None else mp.nstr(allowed, 6), status])
        obj = [dict(zip(header, row)) for row in out]
        _emit(obj, cfg, out, header)


def _status(rows):
    ok = all(d <= allowed for _, _, _, d, allowed in rows if allowed is not None)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_compare(args):
    cfg = _config(args)
    _require_range(cfg)
    rows = _comparisons(cfg)
    _print_table(rows, cfg, f"discrepancies at {cfg.label}")
    return _status(rows)


def cmd_report(args):
    cfg = _config(args)
    _require_range(cfg)
    rows = _comparisons(cfg)
    _print_table(rows, cfg, f"report at {cfg.label}")
    code = _status(rows)
    if cfg.output == "human":
        print("all checks passed" if code == EXIT_OK else "some checks failed")
    return code


def cmd_psi(args):
    prec = check_prec(args.prec if args.prec is not None else default_prec())
    r = psi(mp.mpf(args.x), prec)
    cfg = RunConfig(mp.mpf(0), None, prec, None, "json" if args.json else "human", "quarter", frozenset())
    if cfg.output == "human":
        print(f"psi({args.x})")
        print(f"  theta series : {_fmt(r.value_theta.value.real, 40)}  ({r.terms_used[0]} terms)")
        print(f"  dual series  : {_fmt(r.value_dual.value.real, 40)}  ({r.terms_used[1]} terms)")
        print(f"  relative gap : {mp.nstr(r.agreement, 3)}")
    else:
        _emit(r.to_json(), cfg)
    return EXIT_OK


def cmd_z0(args):
    out_json = args.json
    if args.grid:
        a, b, n = float(args.grid[0]), float(args.grid[1]), int(args.grid[2])
        if n < 1:
            raise DomainError("grid needs at least one interval")
        pts = [a + (b - a) * k / n for k in range(n + 1)]
        vals = [z0_leading(x) for x in pts]
        if args.csv:
            w = csv.writer(sys.stdout)
            w.writerow(["t", "z0"])
            for x, v in zip(pts, vals):
                w.writerow([repr(x), mp.nstr(v, 17)])
            return EXIT_OK
        changes = z0_sign_changes(a, b, n)
        expected = z0_expected_count(a, b)
        obj = {"a": a, "b": b, "n": n, "sign_changes": changes, "phase_count": mp.nstr(expected, 10)}
        if out_json:
            json.dump(obj, sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            print(f"Z0 leading form on [{a}, {b}]: {changes} sign changes, "
                  f"phase count {mp.nstr(expected, 8)}")
        return EXIT_OK
    if args.t is None:
        raise DomainError("give --t or --grid")
    v = z0_leading(mp.mpf(args.t))
    if out_json:
        json.dump({"t": args.t, "z0": mp.nstr(v, 30)}, sys.stdout)
        sys.stdout.write("\n")
    else:
        print(f"Z0 leading form at t = {args.t}: {mp.nstr(v, 20)}")
    return EXIT_OK


SERIES_KINDS = ("q1", "q2", "q3", "A", "B", "E", "F")


def _generated_series(kind, saddle, n, order, prec):
    if kind in ("q1", "q2", "q3"):
        return saddle_series(kind, order, prec)
    if kind == "A":
        fn = ex.an_coefficients_q1 if saddle == "q1" else ex.an_coefficients_q2
        return fn(n if n is not None else 2, order, prec)
    if kind == "B":
        return ex.bn_coefficients(saddle, n if n is not None else 0, order, prec)
    if kind == "E":
        return ex.e_series(saddle, order, prec)
    return ex.f_series(saddle, order, prec)


def cmd_series(args):
    prec = check_prec(args.prec if args.prec is not None else default_prec())
    kind = args.which
    saddle = args.saddle
    if kind in ("A", "B", "E", "F") and saddle not in ex.SADDLES:
        raise DomainError("--saddle must be q1 or q2 for A, B, E and F")
    order = args.order or 12
    s = _generated_series(kind, saddle, args.n, order, prec)
    key = ("q", kind, 0) if kind in ("q1", "q2", "q3") else (kind, saddle, args.n or (2 if kind == "A" else 0))
    printed = ref.PRINTED_SERIES.get(key)
    mismatch = None
    if printed is not None and s.trunc_order >= printed[1]:
        fn, omit = printed
        with mp.workdps(prec):
            tau = mp.mpf(1) / 20
            mismatch = bool(abs(s.evaluate(tau, upto=omit) - fn(tau)) > mp.mpf(10) ** -6)
    if args.json:
        obj = s.to_json()
        if mismatch is not None:
            obj["printed_mismatch"] = bool(mismatch)
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        label = kind if kind in ("q1", "q2", "q3") else f"{kind}{'' if kind in 'EF' else (args.n or (2 if kind == 'A' else 0))} at {saddle}"
        print(f"{label}:")
        for e, c in s.terms():
            if abs(c) > mp.mpf(10) ** -(prec - 5):
                print(f"  tau^{str(e):>5s}  {mp.nstr(c, 20)}")
        print(f"  + O(tau^{s.trunc_order})")
        if mismatch is not None:
            print("  printed truncation:", "MISMATCH" if mismatch else "agrees")
    return EXIT_MISMATCH if mismatch else EXIT_OK


# -- parser ---------------------------------------------------------------------

def _common(p, order_help=None):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--t", type=str, help="height t; tau = sqrt(2 pi / t)")
    g.add_argument("--tau", type=str, help="tau directly")
    p.add_argument("--prec", type=int, default=None, help="working precision in digits (default 50 or $NAIVE_PREC)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    if order_help:
        p.add_argument("--order", type=int, default=None, help=order_help)


def build_parser():
    p = argparse.ArgumentParser(prog="naive-integral", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("saddles", help="locate and label the three saddles")
    _common(s)
    s.set_defaults(func=cmd_saddles)

    s = sub.add_parser("integrate", help="contour components J1..J5 and J0")
    _common(s)
    s.add_argument("--path-variant", choices=VARIANTS, default="quarter")
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("asymptotic", help="saddle-point expansion of J2 or J4")
    _common(s, "number of expansion terms (default 3)")
    s.add_argument("--which", choices=("j2", "j4"), required=True)
    s.add_argument("--amplitude", action="store_true", help="keep the z^(-5/2) amplitude term at q1")
    s.set_defaults(func=cmd_asymptotic)

    for name, fn, hlp in (("compare", cmd_compare, "contour vs asymptotic vs real line"),
                          ("report", cmd_report, "all checks with a pass/fail table")):
        s = sub.add_parser(name, help=hlp)
        _common(s, "number of expansion terms (default 3)")
        s.add_argument("--path-variant", choices=VARIANTS, default="quarter")
        s.add_argument("--skip", default="", help=f"comma-separated subset of {','.join(SKIPPABLE)}")
        s.set_defaults(func=fn)

    s = sub.add_parser("psi", help="both series for psi(x)")
    s.add_argument("--x", required=True)
    s.add_argument("--prec", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("z0", help="leading form of Z0")
    s.add_argument("--t", type=str)
    s.add_argument("--grid", nargs=3, metavar=("A", "B", "N"))
    s.add_argument("--json", action="store_true")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_z0)

    s = sub.add_parser("series", help="generated expansion next to the printed one")
    s.add_argument("which", choices=SERIES_KINDS)
    s.add_argument("--saddle", choices=ex.SADDLES, default="q1")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--order", type=int, default=None, help="truncation in half-steps (default 12)")
    s.add_argument("--prec", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_series)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # values are read and printed at the working precision, not mpmath's 15 digits
    dps = (getattr(args, "prec", None) or default_prec()) + 10
    try:
        with mp.workdps(dps):
            return args.func(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (AccuracyError, ConvergenceError) as e:
        print(f"accuracy failure: {e}", file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
