"""Command-line entry point: ``faberlab <subcommand> [options]``.

Exit codes: 0 every check passed, 1 a mathematical check failed, 2 usage or
configuration error, 3 a precondition was not met (e.g. roots off the arc).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import __version__
from .errors import FaberlabError

SCHEMA = "faberlab/1"
JOBS_ENV = "FABERLAB_JOBS"
KS_THRESHOLD = 0.06
QUAD_RTOL = 1e-4

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any]
    fmt: str = "text"
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")


@dataclass
class ReportEnvelope:
    command: str
    config: dict[str, Any]
    items: list[dict[str, Any]] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def failed_items(self) -> list[dict[str, Any]]:
        return [it for it in self.items if it.get("passed") is False]

    def summary(self) -> dict[str, int]:
        checked = sum(1 for it in self.items if it.get("passed") is not None)
        failed = len(self.failed_items)
        return {"checked": checked, "passed": checked - failed, "failed": failed}

    def to_dict(self) -> dict[str, Any]:
        fails = self.failed_items
        d = {
            "schema": SCHEMA,
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "items": self.items,
            "summary": self.summary(),
            "first_failure": fails[0] if fails else None,
        }
        d.update(self.extra)
        return d


def _exact(x) -> str:
    """Exact integers and rationals travel as decimal strings."""
    return str(x)


# --------------------------------------------------------------------------
# work units (module level so worker processes can pickle them)

def _weights(l_min: int, l_max: int, kprimes: Sequence[int]) -> list[int]:
    return [12 * ell + kp for ell in range(l_min, l_max + 1) for kp in kprimes]


def _linearity_unit(args) -> list[dict]:
    from .modforms import weight_decompose
    from .powersums import LinearityConstants, linearity_constants, power_sums
    from .faber import faber_greedy

    k, m_only, n_cap, corrupt = args
    w = weight_decompose(k)
    out = []
    ms = [m_only] if m_only is not None else range(w.ell + 1)
    for m in ms:
        if not 0 <= m <= w.ell:
            continue
        n_max = w.ell - m if n_cap is None else min(n_cap, w.ell - m)
        if n_max < 1:
            continue
        p = power_sums(faber_greedy(k, m), n_max)
        for n in range(1, n_max + 1):
            c = linearity_constants(n)
            if corrupt == n:
                c = LinearityConstants(n, c.A + 1, c.B, c.C)
            pred = c.power_sum(k, m, w.kprime)
            out.append({
                "k": k, "m": m, "n": n, "p_n": _exact(p[n - 1]),
                "predicted": _exact(pred), "passed": p[n - 1] == pred,
            })
    return out


def _report_item(r) -> dict:
    return {
        "k": r.k, "m": r.m, "degree": r.degree, "neg": r.neg, "arc": r.arc,
        "large": r.large, "nonreal": r.nonreal, "at_zero": r.at_zero,
        "at_1728": r.at_1728, "all_on_arc": r.all_on_arc, "method": r.method,
    }


def _scan_unit(k: int) -> list[dict]:
    from .realroots import scan_arc

    return [_report_item(r) for r in scan_arc(k)]


def _min_m_unit(k: int) -> dict:
    from .realroots import min_m_off_arc

    res = min_m_off_arc(k)
    match = res.matches_conjecture
    return {
        "ell": res.ell, "k": k, "m_min": res.m_min, "conjectured": res.conjectured,
        "match": match, "monotone": res.monotone,
        "passed": res.monotone and match is not False,
    }


def _large_unit(k: int) -> list[dict]:
    from .realroots import scan_arc

    return [
        {"k": k, "m": r.m, "large": r.large, "at_1728": r.at_1728,
         "passed": r.at_or_above_1728 == 0}
        for r in scan_arc(k)
    ]


def _run_units(fn: Callable, units: Sequence, jobs: int) -> list:
    # executor.map keeps input order, so output never depends on --jobs
    if jobs == 1 or len(units) < 2:
        return [fn(u) for u in units]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, units, chunksize=1))


def _flatten(parts: Iterable[list[dict]]) -> list[dict]:
    return [it for part in parts for it in part]


# --------------------------------------------------------------------------
# subcommands

def cmd_faber(cfg: RunConfig) -> ReportEnvelope:
    from .faber import faber_greedy, miller_prefix_ok

    k, m = cfg.params["k"], cfg.params["m"]
    F = faber_greedy(k, m)
    env = ReportEnvelope(cfg.command, cfg.params)
    valid = miller_prefix_ok(F)
    env.items.append({
        "k": k, "m": m, "ell": F.ell, "kprime": F.kprime, "degree": F.degree,
        "coeffs": [_exact(c) for c in F.coeffs], "polynomial": str(F),
        "valid": valid, "passed": valid,
    })
    return env


def cmd_constants(cfg: RunConfig) -> ReportEnvelope:
    from .powersums import (
        C0_ORACLE_CAP,
        constant_c0_oracle,
        linearity_constants,
        threshold_shift,
    )

    n_max = cfg.params["n_max"]
    if n_max < 1:
        raise UsageError("--n-max must be >= 1")
    env = ReportEnvelope(cfg.command, cfg.params)
    for n in range(1, n_max + 1):
        c = linearity_constants(n)
        ratio = Fraction(12 * c.A, -c.B)
        item = {
            "n": n, "A": _exact(c.A), "B": _exact(c.B), "C6": _exact(c.C[6]),
            "ratio": _exact(ratio), "ratio_decimal": f"{float(ratio):.15f}",
        }
        ok = True
        if n <= C0_ORACLE_CAP:
            item["c0_oracle_ok"] = constant_c0_oracle(n) == -c.B
            ok &= item["c0_oracle_ok"]
        else:
            item["c0_oracle_ok"] = None
        if cfg.params.get("quad"):
            from .arcdist import quad_A, quad_B

            qa, qb = quad_A(n), quad_B(n)
            ra = abs(qa.value - c.A) / abs(c.A)
            rb = abs(qb.value - c.B) / abs(c.B)
            item.update({"quad_A_rel": f"{ra:.3e}", "quad_B_rel": f"{rb:.3e}"})
            ok &= ra < QUAD_RTOL and rb < QUAD_RTOL
        item["passed"] = bool(ok)
        env.items.append(item)
    shift = threshold_shift(6)
    # p_1 < 0 iff m > 30 ell / 31 + 5 k' / 62 + shift(k')
    env.extra["first_sum_shift"] = {
        "computed": _exact(shift),
        "matches_-72/31": shift == Fraction(-72, 31),
        "matches_-36/31": shift == Fraction(-36, 31),
    }
    return env


def _range_params(p: dict) -> tuple[list[int], str]:
    if p.get("k") is not None:
        from .modforms import weight_decompose

        weight_decompose(p["k"])
        return [p["k"]], "k"
    lo, hi = p["l_min"], p["l_max"]
    if lo < 0 or hi < lo:
        raise UsageError(f"empty or invalid ell range [{lo}, {hi}]")
    kps = [p["kprime"]] if p.get("kprime") is not None else [0, 4, 6, 8, 10, 14]
    ks = _weights(lo, hi, kps)
    if not ks:
        raise UsageError("no weights in range")
    return ks, "range"


def cmd_verify_linearity(cfg: RunConfig) -> ReportEnvelope:
    ks, _ = _range_params(cfg.params)
    p = cfg.params
    units = [(k, p.get("m"), p.get("n_max"), p.get("corrupt_constant")) for k in ks]
    env = ReportEnvelope(cfg.command, cfg.params)
    env.items = _flatten(_run_units(_linearity_unit, units, cfg.jobs))
    if not env.items:
        raise UsageError("range contains no (k, m, n) with n <= ell - m")
    return env


def cmd_scan_arc(cfg: RunConfig) -> ReportEnvelope:
    ks, _ = _range_params(cfg.params)
    env = ReportEnvelope(cfg.command, cfg.params)
    env.items = _flatten(_run_units(_scan_unit, ks, cfg.jobs))
    # a survey, not a claim: report on/off arc tallies without verdicts
    on = sum(it["all_on_arc"] for it in env.items)
    env.extra["tally"] = {"polynomials": len(env.items), "all_on_arc": on,
                          "off_arc": len(env.items) - on}
    return env


def cmd_conjectures(cfg: RunConfig) -> ReportEnvelope:
    p = cfg.params
    env = ReportEnvelope(cfg.command, cfg.params)
    if p["which"] == "min-m":
        lo, hi = p["l_min"], p["l_max"]
        if lo < 1 or hi < lo:
            raise UsageError(f"empty or invalid ell range [{lo}, {hi}]")
        env.items = _run_units(_min_m_unit, [12 * ell for ell in range(lo, hi + 1)], cfg.jobs)
    else:
        ks, _ = _range_params(p)
        env.items = _flatten(_run_units(_large_unit, ks, cfg.jobs))
    return env


def cmd_dist(cfg: RunConfig) -> ReportEnvelope:
    from .arcdist import (
        THETA_HI,
        THETA_LO,
        LimitLaw,
        arc_sample,
        ks_distance,
        raveh_zero_count,
    )
    from .errors import NotAllOnArc
    from .modforms import weight_decompose

    p = cfg.params
    k = p["k"]
    w = weight_decompose(k)
    m = p.get("m")
    if m is None:
        if p.get("c") is None:
            raise UsageError("dist needs --m or --c")
        m = round(p["c"] * w.ell)
    if not 0 <= m <= w.ell:
        raise UsageError(f"m={m} outside [0, {w.ell}]")
    if m == w.ell:
        raise UsageError("F_{k,ell} is constant: empty sample, nothing to compare")
    if p["bins"] < 1:
        raise UsageError("--bins must be >= 1")
    try:
        sample = arc_sample(k, m)
    except NotAllOnArc as exc:
        raise PreconditionError(str(exc)) from exc
    c = m / w.ell
    env = ReportEnvelope(cfg.command, p)
    env.extra["thetas"] = [f"{t:.12f}" for t in sample.thetas]
    in_regime = 9 * m < 2 * w.ell
    ks = None
    if c <= 3 / math.pi:
        ks = ks_distance(sample, LimitLaw(c))
    env.items.append({
        "kind": "ks", "k": k, "m": m, "c": f"{c:.12f}", "roots": len(sample),
        "ks": None if ks is None else f"{ks:.12f}", "threshold": p["ks_max"],
        "in_regime": in_regime,
        "passed": (ks is not None and ks <= p["ks_max"]) if in_regime else None,
    })
    edges = [THETA_LO + (THETA_HI - THETA_LO) * i / p["bins"] for i in range(p["bins"] + 1)]
    for i in range(p["bins"]):
        a, b = edges[i], edges[i + 1]
        last = i == p["bins"] - 1
        count = sum(1 for t in sample.thetas if a <= t < b or (last and t == b))
        item = {"kind": "bin", "bin": i, "lo": f"{a:.12f}", "hi": f"{b:.12f}", "count": count}
        if in_regime:
            pred = raveh_zero_count(k, m, a, b)
            item.update({"predicted": f"{pred.value:.6f}", "pred_lo": pred.lo,
                         "pred_hi": pred.hi, "passed": count in pred})
        env.items.append(item)
    return env


COMMANDS: dict[str, Callable[[RunConfig], ReportEnvelope]] = {
    "faber": cmd_faber,
    "constants": cmd_constants,
    "verify-linearity": cmd_verify_linearity,
    "scan-arc": cmd_scan_arc,
    "conjectures": cmd_conjectures,
    "dist": cmd_dist,
}


# --------------------------------------------------------------------------
# output

def _flat_rows(items: list[dict]) -> tuple[list[str], list[list[str]]]:
    cols: list[str] = []
    for it in items:
        for key in it:
            if key not in cols:
                cols.append(key)
    rows = []
    for it in items:
        row = []
        for key in cols:
            v = it.get(key, "")
            if isinstance(v, list):
                v = " ".join(str(x) for x in v)
            elif v is None:
                v = ""
            row.append(str(v).lower() if isinstance(v, bool) else str(v))
        rows.append(row)
    return cols, rows


def render(env: ReportEnvelope, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(env.to_dict(), indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        if env.command == "dist":
            w.writerow(["theta"])
            for t in env.extra["thetas"]:
                w.writerow([t])
        else:
            cols, rows = _flat_rows(env.items)
            w.writerow(cols)
            w.writerows(rows)
        return buf.getvalue()
    # text
    for it in env.items:
        buf.write("  ".join(f"{k}={_text(v)}" for k, v in it.items()) + "\n")
    for key, val in env.extra.items():
        if key != "thetas":
            buf.write(f"{key}: {val}\n")
    s = env.summary()
    buf.write(f"checked={s['checked']} passed={s['passed']} failed={s['failed']}\n")
    return buf.getvalue()


def _text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    return str(v)


# --------------------------------------------------------------------------
# argument parsing

def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=None,
                        help=f"worker processes (default ${JOBS_ENV} or 1)")

    rng = argparse.ArgumentParser(add_help=False)
    rng.add_argument("--k", type=int, help="single weight (overrides the ell range)")
    rng.add_argument("--l-min", type=int, default=0, dest="l_min")
    rng.add_argument("--l-max", type=int, default=20, dest="l_max")
    rng.add_argument("--kprime", type=int, choices=(0, 4, 6, 8, 10, 14))

    p = argparse.ArgumentParser(prog="faberlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"faberlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("faber", parents=[common], help="Faber polynomial F_{k,m}")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = sub.add_parser("constants", parents=[common], help="power-sum constants A_n, B_n, C_n")
    sp.add_argument("--n-max", type=int, default=10, dest="n_max")
    sp.add_argument("--quad", action="store_true", help="add quadrature cross-checks")

    sp = sub.add_parser("verify-linearity", parents=[common, rng],
                        help="check the linear power-sum law exactly")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n-max", type=int, dest="n_max")
    sp.add_argument("--corrupt-constant", type=int, dest="corrupt_constant",
                    help=argparse.SUPPRESS)

    sub.add_parser("scan-arc", parents=[common, rng], help="root location reports")

    sp = sub.add_parser("conjectures", parents=[common, rng], help="min-m / no-large-roots scans")
    sp.add_argument("--which", choices=("min-m", "no-large-roots"), required=True)

    sp = sub.add_parser("dist", parents=[common], help="root angles against the limit law")
    sp.add_argument("--k", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--m", type=int)
    g.add_argument("--c", type=float, help="pick m = round(c * ell)")
    sp.add_argument("--bins", type=int, default=8)
    sp.add_argument("--ks-max", type=float, default=KS_THRESHOLD, dest="ks_max")
    return p


_NON_CONFIG = ("command", "format", "out", "jobs")


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(ns).items() if k not in _NON_CONFIG}
    jobs = ns.jobs if ns.jobs is not None else _default_jobs()
    return RunConfig(ns.command, params, ns.format, ns.out, jobs)


def run(cfg: RunConfig) -> tuple[ReportEnvelope, int]:
    env = COMMANDS[cfg.command](cfg)
    return env, EXIT_FAIL if env.failed_items else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
        env, code = run(cfg)
    except SystemExit as exc:  # argparse
        return int(exc.code) if exc.code is not None else EXIT_OK
    except (UsageError, FaberlabError, ValueError) as exc:
        print(f"faberlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"faberlab: precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = render(env, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
