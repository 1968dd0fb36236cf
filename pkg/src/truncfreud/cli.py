"""Command-line front end.

    truncfreud moments  --z 1 --nmax 10 --format csv
    truncfreud gamma    --z 1 --nmax 20 --route both
    truncfreud zeros    --z 1.5 --n 5
    truncfreud table    --which 1
    truncfreud dynamics --n 5 --k 5 --z0 0.2 --z1 1.5 --steps 2048 --format gnuplot
    truncfreud verify   --z 1 --nmax 15 --seed 7

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure (non-convergence or exhausted precision).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field

from . import __version__
from .errors import ConvergenceError, DomainError, FreudError, PrecisionLossError, SingularityError
from .specfun import PrecisionContext

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    z: tuple = ()
    nmax: int = 10
    precision_bits: int = 256
    tol_identity: str | None = None
    fmt: str = "json"
    out: str | None = None
    seed: int = 0
    n: int = 5
    k: int | None = None
    z0: str = "0.2"
    z1: str = "1.5"
    steps: int = 2048
    route: str = "moments"
    which: int = 1
    extra: dict = field(default_factory=dict)

    def context(self) -> PrecisionContext:
        return PrecisionContext(mantissa_bits=self.precision_bits, tol_identity=self.tol_identity)


# number formatting

_EXP = re.compile(r"e([+-]?)(\d+)$")


def fmt_num(v, digits: int) -> str:
    """Scientific notation with a two-digit signed exponent (``1.25e-07``)."""
    ctx = v.context if hasattr(v, "context") else None
    if ctx is None:
        s = f"{float(v):.{digits - 1}e}"
    elif v == 0:
        s = "0." + "0" * (digits - 1) + "e+00"
    else:
        s = ctx.nstr(v, digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    m = _EXP.search(s)
    if m is None:
        return s + "e+00"
    sign = m.group(1) or "+"
    return s[:m.start()] + f"e{sign}{int(m.group(2)):02d}"


def value_digits(ctx: PrecisionContext) -> int:
    """Significant digits worth printing: those covered by tol_identity, at most 30."""
    mp = ctx.mp
    return max(1, min(30, int(mp.floor(-mp.log10(ctx.identity_tol)))))


RESIDUAL_DIGITS = 3


# argument parsing

def _z_grid(spec: str) -> tuple:
    try:
        a, b, n = spec.split(":")
        n = int(n)
    except ValueError:
        raise ConfigError(f"--z-grid expects a:b:n, got {spec!r}") from None
    if n < 1:
        raise ConfigError("--z-grid needs n >= 1")
    if n == 1:
        return (a,)
    from fractions import Fraction
    fa, fb = Fraction(a), Fraction(b)
    pts = [fa + (fb - fa) * i / (n - 1) for i in range(n)]
    return tuple(_frac_str(p) for p in pts)


def _frac_str(f) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _positive_real(s: str) -> str:
    from fractions import Fraction
    try:
        v = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a real number: {s!r}") from None
    if v <= 0:
        raise ConfigError(f"z must be positive, got {s}")
    return s


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--z", action="append", help="truncation parameter (repeatable)")
    common.add_argument("--z-grid", help="evenly spaced z values a:b:n")
    common.add_argument("--nmax", type=int, default=None, help="largest index")
    common.add_argument("--prec", type=int, default=256, help="mantissa bits (>= 64)")
    common.add_argument("--format", choices=("json", "csv", "gnuplot"), default=None)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized grids")
    common.add_argument("--tol-identity", default=None, help="normalized identity tolerance")

    p = argparse.ArgumentParser(prog="truncfreud",
                                description="Orthogonal polynomials for exp(-x^4) on [-z, z].")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("moments", parents=[common], help="even moments u_2n(z)")
    g = sub.add_parser("gamma", parents=[common], help="recurrence coefficients")
    g.add_argument("--route", choices=("moments", "lf", "both"), default="moments")
    zp = sub.add_parser("zeros", parents=[common], help="zeros of P_n")
    zp.add_argument("--n", type=int, default=5)
    t = sub.add_parser("table", parents=[common], help="recompute a reference table")
    t.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    d = sub.add_parser("dynamics", parents=[common], help="trajectory of a zero in z")
    d.add_argument("--n", type=int, default=5)
    d.add_argument("--k", type=int, default=None, help="1-based zero index (default: largest)")
    d.add_argument("--z0", default="0.2")
    d.add_argument("--z1", default="1.5")
    d.add_argument("--steps", type=int, default=2048)
    v = sub.add_parser("verify", parents=[common], help="run the identity suite")
    v.add_argument("--samples", type=int, default=50)
    return p


_DEFAULT_NMAX = {"moments": 10, "gamma": 20, "zeros": 5, "table": 0, "dynamics": 0, "verify": 15}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.prec < 64:
        raise ConfigError(f"--prec must be at least 64, got {ns.prec}")
    zs = tuple(_positive_real(z) for z in (ns.z or ()))
    if ns.z_grid:
        zs = zs + tuple(_positive_real(z) for z in _z_grid(ns.z_grid))
    cmd = ns.command
    if not zs and cmd in ("moments", "gamma", "zeros"):
        raise ConfigError(f"{cmd} needs --z or --z-grid")
    if cmd == "verify" and not zs:
        zs = ("0.5", "1", "2")
    nmax = ns.nmax if ns.nmax is not None else _DEFAULT_NMAX[cmd]
    if nmax < 0:
        raise ConfigError("--nmax must be non-negative")
    if cmd == "gamma" and nmax < 3:
        raise ConfigError("gamma needs --nmax >= 3")
    if cmd == "verify" and nmax < 2:
        raise ConfigError("verify needs --nmax >= 2")
    tol = ns.tol_identity
    if tol is not None:
        try:
            if not float(tol) > 0:
                raise ValueError
        except ValueError:
            raise ConfigError(f"--tol-identity must be a positive number, got {tol!r}") from None
    fmt = ns.format or ("gnuplot" if cmd == "dynamics" else "json")
    kw = dict(command=cmd, z=zs, nmax=nmax, precision_bits=ns.prec, tol_identity=tol,
              fmt=fmt, out=ns.out, seed=ns.seed)
    if cmd in ("zeros", "dynamics"):
        if ns.n < 1:
            raise ConfigError("--n must be positive")
        kw["n"] = ns.n
    if cmd == "gamma":
        kw["route"] = ns.route
    if cmd == "table":
        kw["which"] = ns.which
    if cmd == "dynamics":
        k = ns.k if ns.k is not None else ns.n
        if not 1 <= k <= ns.n:
            raise ConfigError("--k must lie in 1..n")
        _positive_real(ns.z0)
        _positive_real(ns.z1)
        from fractions import Fraction
        if not Fraction(ns.z0) < Fraction(ns.z1):
            raise ConfigError("need z0 < z1")
        if ns.steps < 1:
            raise ConfigError("--steps must be positive")
        kw.update(k=k, z0=ns.z0, z1=ns.z1, steps=ns.steps)
    if cmd == "verify":
        if ns.samples < 1:
            raise ConfigError("--samples must be positive")
        kw["extra"] = {"samples": ns.samples}
    return RunConfig(**kw)


# commands: each returns (columns, rows, status)

def _zval(ctx, z: str):
    from fractions import Fraction
    return ctx.mpf(Fraction(z))


def cmd_moments(cfg: RunConfig):
    from .moments import check_moment_recurrence, moment_table

    ctx = cfg.context()
    d = value_digits(ctx)
    rows = []
    for z in cfg.z:
        table = moment_table(_zval(ctx, z), cfg.nmax + 3, ctx)
        res = check_moment_recurrence(table)
        for n in range(cfg.nmax + 1):
            rows.append({"z": z, "n": str(n), "u2n": fmt_num(table.u[n], d),
                         "residual": fmt_num(res[n].normalized, RESIDUAL_DIGITS)})
    return ["z", "n", "u2n", "residual"], rows, EXIT_OK


def cmd_gamma(cfg: RunConfig):
    from .recurrence import gamma_from_moments, gamma_laguerre_freud

    ctx = cfg.context()
    d = value_digits(ctx)
    cols = ["z", "n", "gamma", "g", "h"]
    if cfg.route == "both":
        cols += ["gamma_lf", "rel_delta"]
    rows = []
    for z in cfg.z:
        zv = _zval(ctx, z)
        ref = gamma_from_moments(zv, cfg.nmax + 1, ctx) if cfg.route in ("moments", "both") else None
        lf = gamma_laguerre_freud(zv, cfg.nmax + 1, ctx) if cfg.route in ("lf", "both") else None
        if lf is not None and lf.diagnostic:
            print(f"truncfreud: z={z}: Laguerre-Freud route stopped: {lf.diagnostic}", file=sys.stderr)
        main = ref if ref is not None else lf
        for n in range(cfg.nmax + 1):
            if n > main.N - 1:
                break
            row = {"z": z, "n": str(n), "gamma": fmt_num(main.gamma[n], d),
                   "g": fmt_num(main.g_at(n), d), "h": fmt_num(main.h[n], d)}
            if cfg.route == "both":
                if n <= lf.N:
                    row["gamma_lf"] = fmt_num(lf.gamma[n], d)
                    rel = abs(lf.gamma[n] - ref.gamma[n]) / ref.gamma[n] if n else ctx.mp.zero
                    row["rel_delta"] = fmt_num(rel, RESIDUAL_DIGITS)
                else:
                    row["gamma_lf"] = row["rel_delta"] = ""
            rows.append(row)
    return cols, rows, EXIT_OK


def cmd_zeros(cfg: RunConfig):
    from .recurrence import gamma_from_moments
    from .zeros import chebyshev_limit, zeros

    ctx = cfg.context()
    d = value_digits(ctx)
    rows = []
    for z in cfg.z:
        zv = _zval(ctx, z)
        zs = zeros(cfg.n, gamma_from_moments(zv, cfg.n + 2, ctx))
        lim = sorted(chebyshev_limit(cfg.n, k, zv, ctx) for k in range(1, cfg.n + 1))
        for k, x in enumerate(zs.x, start=1):
            rows.append({"z": z, "n": str(cfg.n), "k": str(k), "x": fmt_num(x, d),
                         "chebyshev": fmt_num(lim[k - 1], d)})
    return ["z", "n", "k", "x", "chebyshev"], rows, EXIT_OK


def cmd_table(cfg: RunConfig):
    from .tables import compare_charge_table, compare_zero_table

    ctx = cfg.context()
    r = RESIDUAL_DIGITS
    rows = []
    if cfg.which in (1, 2):
        for c in compare_zero_table(cfg.which, ctx):
            rows.append({"z": c.z if c.z is not None else "inf",
                         "x_second": fmt_num(c.computed[0], 10), "x_largest": fmt_num(c.computed[1], 10),
                         "published_second": fmt_num(c.published[0], 8),
                         "published_largest": fmt_num(c.published[1], 8),
                         "delta_second": fmt_num(c.delta[0], r), "delta_largest": fmt_num(c.delta[1], r),
                         "status": "ok" if c.passed else "FAIL"})
        cols = ["z", "x_second", "x_largest", "published_second", "published_largest",
                "delta_second", "delta_largest", "status"]
    else:
        for c in compare_charge_table(ctx):
            rows.append({"n": str(c.n), "eta": fmt_num(c.eta, 10), "zeta": fmt_num(c.zeta, 10),
                         "delta_eta": fmt_num(c.d_eta, r), "delta_zeta": fmt_num(c.d_zeta, r),
                         "status": c.status})
        cols = ["n", "eta", "zeta", "delta_eta", "delta_zeta", "status"]
    status = EXIT_OK if all(row["status"] != "FAIL" for row in rows) else EXIT_VERIFY
    return cols, rows, status


def cmd_dynamics(cfg: RunConfig):
    from .zeros import zero_dynamics_trace

    ctx = cfg.context()
    d = value_digits(ctx)
    tr = zero_dynamics_trace(cfg.n, cfg.k, _zval(ctx, cfg.z0), _zval(ctx, cfg.z1), cfg.steps, ctx)
    rows = [{"z": fmt_num(z, d), "x": fmt_num(x, d)} for z, x in zip(tr.z, tr.x)]
    return ["z", "x"], rows, EXIT_OK


def cmd_verify(cfg: RunConfig):
    from .verify import run_suite

    ctx = cfg.context()
    tol = cfg.tol_identity or "1e-20"
    results = run_suite(cfg.z, cfg.nmax, cfg.seed, ctx, cfg.extra.get("samples", 50), tol)
    rows = [{"z": fmt_num(r.z, 6), "identity": r.name, "samples": str(r.samples),
             "worst": fmt_num(r.worst, RESIDUAL_DIGITS), "tol": fmt_num(r.tol, RESIDUAL_DIGITS),
             "status": "pass" if r.passed else "FAIL"} for r in results]
    ok = all(r.passed for r in results)
    return ["z", "identity", "samples", "worst", "tol", "status"], rows, EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"moments": cmd_moments, "gamma": cmd_gamma, "zeros": cmd_zeros,
            "table": cmd_table, "dynamics": cmd_dynamics, "verify": cmd_verify}


# output

def render(cfg: RunConfig, cols: list, rows: list) -> str:
    if cfg.fmt == "json":
        meta = {"command": cfg.command, "z": list(cfg.z), "nmax": cfg.nmax,
                "precision_bits": cfg.precision_bits, "version": __version__}
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = ["# " + " ".join(cols)]
    lines += [" ".join(row.get(c, "") or "?" for c in cols) for row in rows]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        cfg = config_from_args(ns)
        cols, rows, status = COMMANDS[cfg.command](cfg)
    except ConfigError as e:
        print(f"truncfreud: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as e:
        print(f"truncfreud: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, PrecisionLossError, SingularityError, FreudError) as e:
        print(f"truncfreud: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    text = render(cfg, cols, rows)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
