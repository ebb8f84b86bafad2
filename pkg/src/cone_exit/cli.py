"""Command-line front end: one subcommand per group of identities.

Exit codes: 0 pass, 1 statistical rejection, 2 usage, 3 quadrature failure,
4 simulation cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import laplace, levy, mc
from .errors import (DomainError, MaxStepsExceeded, NonDecayingIntegrand, OriginTooClose,
                     PolynomialCapError, ToleranceNotReached)
from .poly import eval_polynomial, real_roots
from .rng import DEFAULT_SEED

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_QUAD, EXIT_CAP = 0, 1, 2, 3, 4
Z_LIMIT = 4.0

# keys never echoed into the output so that it does not depend on them
_UNECHOED = {"out", "format", "workers", "func", "m_from_c"}


class Table:
    def __init__(self, columns: list[str]):
        self.columns = columns
        self.rows: list[dict] = []
        self.status = EXIT_OK

    def add(self, **row) -> None:
        self.rows.append({c: row.get(c) for c in self.columns})


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _residual_summary(table: Table) -> dict:
    summary = {}
    for key in ("residual", "z"):
        vals = [abs(r[key]) for r in table.rows if isinstance(r.get(key), (int, float))]
        if vals:
            summary[f"max_abs_{key}"] = max(vals)
    summary["status"] = table.status
    return summary


def render(table: Table, fmt: str, config: dict) -> str:
    if fmt == "json":
        doc = {"config": config, "rows": table.rows, "residual_summary": _residual_summary(table)}
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_fmt(r[c]) for c in table.columns])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def _resolve_m(args) -> float:
    if args.m is not None:
        return args.m
    return laplace.m_from_c(args.c)


def cmd_eval(args) -> Table:
    m = _resolve_m(args)
    t = Table(["x", "phi", "phi_tilde"])
    for x in args.x:
        t.add(x=x, phi=laplace.phi(m, x), phi_tilde=laplace.phi_tilde(m, x))
    return t


def cmd_factor(args) -> Table:
    m = args.m
    poly = laplace.pq_polynomial(m)
    scales = laplace.spectral_scales(m)
    k_law = laplace.factorize(m, "K")
    kt_law = laplace.factorize(m, "K_tilde")
    t = Table(["quantity", "index", "value", "closed_form", "residual"])
    for j, c in enumerate(poly.coeffs):
        t.add(quantity="coeff", index=j, value=c)
    for k, s in enumerate(scales, 1):
        t.add(quantity="scale", index=k, value=s)
    for k, (r, cf) in enumerate(zip(real_roots(poly), laplace.closed_form_roots(m)), 1):
        t.add(quantity="root", index=k, value=r, closed_form=cf, residual=r - cf)
    t.add(quantity="K_half_gaussian", index=0, value=k_law.has_half_gaussian)
    t.add(quantity="K_tilde_half_gaussian", index=0, value=kt_law.has_half_gaussian)
    for k, s in enumerate(kt_law.exp_scales, 1):
        t.add(quantity="K_tilde_scale", index=k, value=s)
    for x in args.x:
        prod = laplace.laplace_of_law(k_law, x)
        t.add(quantity="phi_product", index=x, value=prod, closed_form=laplace.phi(m, x),
              residual=prod / laplace.phi(m, x) - 1.0)
        # phi_m = 1 / (sqrt(1+x)^[m odd] * P_n or Q_n)
        dm = eval_polynomial(poly, x) * (math.sqrt(1.0 + x) if m % 2 else 1.0)
        t.add(quantity="phi_polynomial", index=x, value=1.0 / dm, closed_form=laplace.phi(m, x),
              residual=laplace.phi(m, x) * dm - 1.0)
    return t


def cmd_levy(args) -> Table:
    law = laplace.factorize(args.m, args.variant)
    t = Table(["z", "density", "z_times_density"])
    for z in args.z:
        d = levy.levy_density(law, z)
        t.add(z=z, density=d, z_times_density=z * d)
    return t


def cmd_thorin(args) -> Table:
    t = Table(["x", "value", "closed_form", "residual", "error_estimate", "evaluations"])
    for x in args.x:
        res = levy.thorin_exponent_result(x, args.tol)
        cf = levy.thorin_exponent_closed_form(x)
        t.add(x=x, value=res.value, closed_form=cf, residual=res.value - cf,
              error_estimate=res.error_estimate, evaluations=res.evaluations)
    return t


def cmd_asym(args) -> Table:
    t = Table(["x", "epsilon", "m", "check", "limit", "residual"])
    for x in args.x:
        lim = levy.asymptotic_limit(x, args.c)
        for eps in args.eps:
            chk = levy.asymptotic_check(x, args.c, eps)
            t.add(x=x, epsilon=eps, m=laplace.m_from_c(args.c * eps), check=chk, limit=lim,
                  residual=chk - lim)
    return t


def cmd_mc_verify(args) -> Table:
    m = args.m
    t = Table(["check", "x", "closed_form", "mean", "stderr", "z", "pass"])
    law = laplace.factorize(m, "K_tilde")
    for x in args.x:
        est = mc.estimate_law_laplace(law, x, args.n, args.seed)
        cf = laplace.phi_tilde(m, x)
        z = est.z_score(cf)
        t.add(check="K_tilde", x=x, closed_form=cf, mean=est.mean, stderr=est.stderr, z=z,
              **{"pass": abs(z) <= Z_LIMIT})
    if m in (1, 2):
        samples = mc.exact_exit_samples(m, args.n, args.seed)
        c = laplace.c_from_m(m)
        for x in args.x:
            est = mc.estimate_gauss_laplace(samples, c, x)
            cf = laplace.phi_tilde(m, x)
            z = est.z_score(cf)
            t.add(check="exact_exit", x=x, closed_form=cf, mean=est.mean, stderr=est.stderr, z=z,
                  **{"pass": abs(z) <= Z_LIMIT})
    if not all(r["pass"] for r in t.rows):
        t.status = EXIT_REJECT
    return t


def cmd_sim(args) -> Table:
    cfg = mc.PathConfig(c=args.c, step=args.step, max_steps=args.max_steps,
                        min_radius=args.min_radius)
    m = laplace.m_from_c(args.c)
    allowance = mc.discretization_allowance(args.step)
    methods = ["skew", "planar"] if args.method == "both" else [args.method]
    t = Table(["method", "x", "closed_form", "mean", "stderr", "z", "allowance", "pass"])
    for method in methods:
        samples = mc.simulate_exits(method, cfg, args.n, args.seed, workers=args.workers)
        for x in args.x:
            est = mc.estimate_gauss_laplace(samples, args.c, x)
            cf = laplace.phi_tilde(m, x)
            ok = est.covers(cf, Z_LIMIT, allowance)
            t.add(method=method, x=x, closed_form=cf, mean=est.mean, stderr=est.stderr,
                  z=est.z_score(cf), allowance=allowance, **{"pass": ok})
    if not all(r["pass"] for r in t.rows):
        t.status = EXIT_REJECT
    return t


# ---------------------------------------------------------------------------
# argument parsing


def _env_seed() -> int:
    raw = os.environ.get("CONE_EXIT_SEED")
    return int(raw, 0) if raw else DEFAULT_SEED


def _seed(s: str) -> int:
    v = int(s, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive_int(s: str) -> int:
    v = int(float(s)) if "e" in s.lower() else int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cone-exit",
        description="Closed forms, factorizations, Levy/Thorin measures and Monte Carlo "
                    "checks for the exit time of planar Brownian motion from a cone.")
    p.add_argument("--m-from-c", type=float, metavar="C",
                   help="print m = pi/(2C) for a half-angle C in radians and exit")
    sub = p.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", metavar="PATH", help="write here instead of stdout")

    sp = sub.add_parser("eval", help="phi_m and phi_tilde_m on an x grid")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=float)
    g.add_argument("--c", type=float, help="cone half-angle in radians")
    sp.add_argument("--x", type=float, nargs="+", required=True)
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("factor", help="P_n/Q_n, spectral scales, K and K~ structure")
    sp.add_argument("--m", type=_positive_int, required=True)
    sp.add_argument("--x", type=float, nargs="+", default=[1.0])
    common(sp)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("levy", help="Levy density of K or K~ on a z grid")
    sp.add_argument("--m", type=_positive_int, required=True)
    sp.add_argument("--variant", choices=["K", "K_tilde"], default="K")
    sp.add_argument("--z", type=float, nargs="+", required=True)
    common(sp)
    sp.set_defaults(func=cmd_levy)

    sp = sub.add_parser("thorin", help="arcsine Thorin exponent against 2 log G+(x)")
    sp.add_argument("--x", type=float, nargs="+", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp)
    sp.set_defaults(func=cmd_thorin)

    sp = sub.add_parser("asym", help="small-angle asymptotics across an epsilon ladder")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--x", type=float, nargs="+", required=True)
    sp.add_argument("--eps", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3])
    common(sp)
    sp.set_defaults(func=cmd_asym)

    sp = sub.add_parser("mc-verify", help="Monte Carlo check of the factorization (and exact laws)")
    sp.add_argument("--m", type=_positive_int, required=True)
    sp.add_argument("--x", type=float, nargs="+", required=True)
    sp.add_argument("--n", type=_positive_int, default=1_000_000)
    sp.add_argument("--seed", type=_seed, default=None)
    common(sp)
    sp.set_defaults(func=cmd_mc_verify)

    sp = sub.add_parser("sim", help="pathwise exit-time simulation against phi_tilde")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--x", type=float, nargs="+", required=True)
    sp.add_argument("--n", type=_positive_int, default=100_000)
    sp.add_argument("--step", type=float, default=1e-4)
    sp.add_argument("--method", choices=["skew", "planar", "both"], default="both")
    sp.add_argument("--max-steps", type=_positive_int, default=100_000_000)
    sp.add_argument("--min-radius", type=float, default=0.1)
    sp.add_argument("--seed", type=_seed, default=None)
    sp.add_argument("--workers", type=_positive_int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_sim)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.m_from_c is not None:
        try:
            print(format(laplace.m_from_c(args.m_from_c), ".17g"))
        except DomainError as exc:
            parser.error(str(exc))
        return EXIT_OK
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    if getattr(args, "seed", False) is None:
        args.seed = _env_seed()
    if getattr(args, "n", 1000) < 1000:
        parser.error("--n must be at least 1000")
    try:
        table = args.func(args)
    except (DomainError, PolynomialCapError) as exc:
        print(f"cone-exit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ToleranceNotReached, NonDecayingIntegrand) as exc:
        print(f"cone-exit: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUAD
    except (MaxStepsExceeded, OriginTooClose) as exc:
        print(f"cone-exit: simulation cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    config = {k: v for k, v in sorted(vars(args).items()) if k not in _UNECHOED}
    text = render(table, args.format, config)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return table.status


if __name__ == "__main__":
    sys.exit(main())
