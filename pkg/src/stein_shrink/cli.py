"""Command-line front end: grid sweeps, figure-regime reproduction, and the
verification suite.  All numeric CSV output uses 17 significant digits, LF
line endings, and atomic writes, so identical invocations are byte-identical.

Exit codes: 0 success, 1 computation/domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .conditional import conditional_delta_closed, conditional_losses
from .core import ProblemConfig
from .exact_risk import risk_delta_approx, risk_delta_exact
from .geometry import ngo_projection
from .monte_carlo import estimate_delta_mc, estimate_exceedance_prob, simulate_cloud
from .special import expected_chi_norm, expected_chi_norm_asymptotic
from .svgplot import render_scatter

__all__ = ["run", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    if v is None:
        return ""
    return format(float(v), ".17g")


def _write_atomic(path: str, data: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: str, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    _write_atomic(path, "\n".join(lines) + "\n")


def _parse_range(text: str):
    """`start:stop:count` (inclusive, count >= 2) or a single value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _UsageError(f"bad range {text!r}, expected start:stop:count")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError:
            raise _UsageError(f"bad range {text!r}") from None
        if count < 2:
            raise _UsageError(f"range count must be >= 2 in {text!r}")
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count - 1)] + [stop]
    try:
        return [float(text)]
    except ValueError:
        raise _UsageError(f"bad value {text!r}") from None


def _parse_list_or_range(text: str):
    if ":" in text:
        return _parse_range(text)
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise _UsageError(f"bad list {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="stein-shrink", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        return sub.add_parser(name, **kwargs)

    c = add("cloud", help="simulate reduced observations")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--theta", type=float, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", required=True)
    c.add_argument("--svg")

    r = add("risk-curve", help="risk-difference sweep, exact/approx/optional MC")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--theta", required=True)
    r.add_argument("--c", required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", required=True)
    r.add_argument("--mc-n", type=int, dest="mc_n")
    r.add_argument("--svg")

    k = add("conditional", help="two-point conditional loss breakdown")
    k.add_argument("--p", type=float, required=True)
    k.add_argument("--theta", type=float, required=True)
    k.add_argument("--c", type=float, required=True)
    k.add_argument("--out", required=True)

    g = add("geometry", help="projection construction report")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--theta", type=float, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--svg")

    s = add("special", help="exact and asymptotic chi-norm means")
    s.add_argument("--p", required=True)
    s.add_argument("--out", required=True)

    e = add("exceedance", help="empirical P(|X| >= |theta|)")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--theta", type=float, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)

    v = add("verify", help="run the acceptance suite")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--fast", action="store_true")
    return parser


def _cmd_cloud(args) -> int:
    sample = simulate_cloud(ProblemConfig(args.p, args.theta, args.seed), args.n)
    rows = [(i, pt.x1, pt.r) for i, pt in enumerate(sample.points)]
    _write_csv(args.out, ["idx", "x1", "r"], rows)
    if args.svg:
        svg = render_scatter(
            [pt.x1 for pt in sample.points],
            [pt.r for pt in sample.points],
            title=f"Reduced observations, p={args.p}, theta={args.theta:g}",
            xlabel="x1", ylabel="r",
        )
        _write_atomic(args.svg, svg)
    return 0


def _cmd_risk_curve(args) -> int:
    thetas = _parse_range(args.theta)
    cs = _parse_list_or_range(args.c)
    rows = []
    for t in thetas:
        for c in cs:
            exact = risk_delta_exact(args.p, t, c)
            approx = risk_delta_approx(args.p, t, c)
            if args.mc_n:
                est = estimate_delta_mc(
                    ProblemConfig(args.p, t, args.seed), c, args.mc_n
                )
                rows.append((args.p, t, c, exact, approx, est.mean, est.stderr))
            else:
                rows.append((args.p, t, c, exact, approx, None, None))
    header = ["p", "theta", "c", "delta_exact", "delta_approx",
              "delta_mc_mean", "delta_mc_stderr"]
    _write_csv(args.out, header, rows)
    if args.svg:
        svg = render_scatter(
            [row[1] for row in rows], [row[3] for row in rows],
            title=f"Exact risk difference, p={args.p}",
            xlabel="theta", ylabel="delta", mode="line",
        )
        _write_atomic(args.svg, svg)
    return 0


def _cmd_conditional(args) -> int:
    b = conditional_losses(args.p, args.theta, args.c)
    closed = conditional_delta_closed(args.p, args.theta, args.c)
    _write_csv(
        args.out,
        ["p", "theta", "c", "l_plus_1", "l_plus_2", "l_minus_1", "l_minus_2",
         "delta_direct", "delta_closed"],
        [(args.p, args.theta, args.c, b.l_plus_1, b.l_plus_2,
          b.l_minus_1, b.l_minus_2, b.delta, closed)],
    )
    return 0


def _cmd_geometry(args) -> int:
    rep = ngo_projection(args.p, args.theta)
    _write_csv(
        args.out,
        ["ax", "ay", "bx", "by", "cx", "cy",
         "len_ab", "len_ob", "len_bc", "shrink_factor"],
        [(rep.a[0], rep.a[1], rep.b[0], rep.b[1], rep.c_point[0], rep.c_point[1],
          rep.len_ab, rep.len_ob, rep.len_bc, rep.shrink_factor)],
    )
    if args.svg:
        xs = [0.0, rep.a[0], rep.b[0], rep.c_point[0]]
        ys = [0.0, rep.a[1], rep.b[1], rep.c_point[1]]
        svg = render_scatter(xs, ys, title="O, A, B and the projected point",
                             xlabel="x1", ylabel="r")
        _write_atomic(args.svg, svg)
    return 0


def _cmd_special(args) -> int:
    try:
        ps = [int(v) for v in args.p.split(",")]
    except ValueError:
        raise _UsageError(f"bad dimension list {args.p!r}") from None
    rows = [(p, expected_chi_norm(p), expected_chi_norm_asymptotic(p)) for p in ps]
    _write_csv(args.out, ["p", "e_r_exact", "e_r_asymptotic"], rows)
    return 0


def _cmd_exceedance(args) -> int:
    est = estimate_exceedance_prob(
        ProblemConfig(args.p, args.theta, args.seed), args.n
    )
    _write_csv(args.out, ["p", "theta", "prob", "stderr"],
               [(args.p, args.theta, est.mean, est.stderr)])
    return 0


def _cmd_verify(args) -> int:
    from . import acceptance

    seed = acceptance.DEFAULT_SEED if args.seed is None else args.seed
    results = acceptance.run_all(seed=seed, fast=args.fast)
    all_ok = True
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"{tag}  {res.name}: {res.detail}")
        all_ok = all_ok and res.passed
    return 0 if all_ok else 1


_COMMANDS = {
    "cloud": _cmd_cloud,
    "risk-curve": _cmd_risk_curve,
    "conditional": _cmd_conditional,
    "geometry": _cmd_geometry,
    "special": _cmd_special,
    "exceedance": _cmd_exceedance,
    "verify": _cmd_verify,
}


def run(argv) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
