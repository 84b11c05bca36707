"""Command-line interface: ``trigft eval | table | verify``.

Settings resolve as command-line flag > JSON config file > built-in
default.  The config file comes from ``--config PATH`` or, failing that,
the TRIGFT_CONFIG environment variable.

Exit codes: 0 success, 1 verification failure, 2 infrastructure or usage
error (bad arguments, unreadable config, non-convergence).
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import os
import sys

import numpy as np

from . import quadrature as quad
from . import radial_ft as rft
from . import special_fn as sf
from . import suites
from . import trig_integrals as ti
from .errors import CalibrationError, ConvergenceError, DomainError
from .reporting import canonical_json, discrepancy, human_float, rows_to_csv

CONFIG_ENV = "TRIGFT_CONFIG"

DEFAULTS = {
    "seed": 0,
    "tol": None,
    "tolerances": {},
    "mc_samples": 1_000_000,
    "r_max": 40.0,
    "harmonic_tol": 1e-5,
    "jobs": 1,
    "grids": {
        "wallis": {"n": "0:20:21"},
        "trig": {"n": "0:8:9", "a": "2", "b": "1", "kind": "real_b"},
        "ft": {"dim": "1:5:5", "a": "1", "tnorm": "0,0.5,1,3"},
        "harmonic": {"f": "one,x1,x3,x1x2,zonal2", "t1": "0.3", "t2": "0", "t3": "0"},
    },
}


class UsageError(Exception):
    """Bad arguments or configuration (exit code 2)."""


# ---------------------------------------------------------------------------
# configuration


def load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    cfg = copy.deepcopy(DEFAULTS)
    if not path:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys {sorted(unknown)}; allowed: {sorted(DEFAULTS)}")
    bad_tol = set(data.get("tolerances", {})) - set(suites.TOLERANCES)
    if bad_tol:
        raise UsageError(f"unknown tolerance names {sorted(bad_tol)}")
    for key, value in data.items():
        if key == "grids":
            for target, grid in value.items():
                cfg["grids"].setdefault(target, {}).update(grid)
        else:
            cfg[key] = value
    return cfg


def resolve_config(args) -> dict:
    cfg = load_config(getattr(args, "config", None))
    for key in ("seed", "tol"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "jobs", None) is not None:
        cfg["jobs"] = args.jobs
    return cfg


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_grid(text: str, integer: bool = False) -> list:
    """Comma list of numbers and inclusive start:stop:count ranges."""
    out = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            raise UsageError(f"empty entry in grid {text!r}")
        try:
            if ":" in item:
                parts = item.split(":")
                if len(parts) != 3:
                    raise ValueError
                start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
                if count < 1:
                    raise ValueError
                out.extend(np.linspace(start, stop, count).tolist())
            else:
                out.append(float(item))
        except ValueError:
            raise UsageError(f"malformed grid entry {item!r} (use numbers or start:stop:count)") from None
    if integer:
        ints = []
        for v in out:
            if v != round(v):
                raise UsageError(f"grid {text!r} must contain integers, got {v}")
            ints.append(int(round(v)))
        return ints
    return out


def parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(c) for c in str(text).split(",")])
    except ValueError:
        raise UsageError(f"malformed vector {text!r}; expected comma-separated numbers") from None


def parse_order(text: str):
    try:
        v = complex(str(text).replace("i", "j"))
    except ValueError:
        raise UsageError(f"malformed order {text!r}") from None
    return v.real if v.imag == 0 else v


# ---------------------------------------------------------------------------
# evaluation records shared by eval and table


def _oracle_entry(value, reference):
    abs_d, rel_d = discrepancy(value, reference)
    return {"value": value, "abs_discrepancy": abs_d, "rel_discrepancy": rel_d}


def _converged_value(res, what):
    if not res.converged:
        raise ConvergenceError(f"{what} did not converge (error estimate {res.abs_error_estimate:.3g})")
    return res.value


def eval_wallis(n: int, oracles: list[str], cfg) -> dict:
    w = sf.wallis(n).value
    out = {"target": "wallis", "inputs": {"n": n}, "value": w, "closed_form": w, "oracles": {}}
    if "beta_form" in oracles:
        out["oracles"]["beta_form"] = _oracle_entry(sf.wallis_beta_form(n), w)
    if "quadrature" in oracles:
        res = quad.integrate_interval(lambda x: np.sin(x) ** n, 0.0, math.pi, cfg.get("tol"))
        out["oracles"]["quadrature"] = _oracle_entry(_converged_value(res, "quadrature").real, w)
    return out


def eval_trig(order, a: float, b: float, kind: str, oracles: list[str], cfg) -> dict:
    if isinstance(order, float) and order == round(order) and order >= 0:
        order = int(order)
    spec = ti.TrigSpec(order, a, b, kind)
    closed = complex(ti.closed_form(spec))
    inputs = {"order": _order_label(order), "a": a, "b": b, "kind": kind}
    out = {"target": "trig", "inputs": inputs, "value": closed.real, "closed_form": closed.real,
           "closed_form_imag": closed.imag, "oracles": {}}
    if "quadrature" in oracles:
        res = ti.trig_quadrature(spec, cfg.get("tol"))
        v = _converged_value(res, "quadrature")
        entry = _oracle_entry(v.real, closed.real)
        entry["imag"] = v.imag
        d = abs(v - closed)
        entry["abs_discrepancy"] = d
        entry["rel_discrepancy"] = d / abs(closed)
        out["oracles"]["quadrature"] = entry
    return out


def _order_label(order) -> str:
    if isinstance(order, complex):
        return f"{order.real:g}{order.imag:+g}i"
    return f"{order:g}"


def eval_ft(dim: int, a: float, t: np.ndarray, oracles: list[str], cfg) -> dict:
    params = rft.RadialExpParams(dim, a)
    if t.size != dim:
        raise UsageError(f"--t has {t.size} components but --dim is {dim}")
    tnorm = float(np.linalg.norm(t))
    closed = rft.ft_closed(params, tnorm)
    out = {"target": "ft", "inputs": {"dim": dim, "a": a, "t": t.tolist(), "tnorm": tnorm},
           "value": closed, "closed_form": closed, "oracles": {}}
    tol = cfg.get("tol")
    if "sphere_reduction" in oracles:
        v = _converged_value(rft.ft_sphere_reduction(params, tnorm, tol), "sphere reduction")
        out["oracles"]["sphere_reduction"] = _oracle_entry(v.real, closed)
    if "subordination" in oracles:
        v = _converged_value(rft.ft_subordination(params, tnorm, tol), "subordination")
        out["oracles"]["subordination"] = _oracle_entry(v.real, closed)
    if "monte_carlo" in oracles:
        res = rft.ft_monte_carlo(params, t, int(cfg["mc_samples"]), int(cfg["seed"]))
        entry = _oracle_entry(res.estimate.real, closed)
        entry.update(std_error=res.real_std_error, sine_part=res.estimate.imag, seed=res.seed,
                     n_samples=res.n_samples)
        out["oracles"]["monte_carlo"] = entry
    return out


def eval_harmonic(fname: str, t: np.ndarray, oracles: list[str], cfg) -> dict:
    from . import harmonic

    f = harmonic.boundary_function(fname)
    if t.size != 3:
        raise UsageError(f"--t must have 3 components, got {t.size}")
    htol = float(cfg["harmonic_tol"])
    value = harmonic.harmonic_superposition(f, t, htol, float(cfg["r_max"]))
    exact = f.extension(t) if f.extension is not None else None
    out = {"target": "harmonic", "inputs": {"f": fname, "t": t.tolist()}, "value": value,
           "closed_form": exact, "oracles": {}}
    if "poisson" in oracles:
        out["oracles"]["poisson"] = _oracle_entry(harmonic.poisson_value(f, t), value)
    if "exact_extension" in oracles and exact is not None:
        out["oracles"]["exact_extension"] = _oracle_entry(exact, value)
    return out


ORACLES = {
    "wallis": ("beta_form", "quadrature"),
    "trig": ("quadrature",),
    "ft": ("sphere_reduction", "subordination", "monte_carlo"),
    "harmonic": ("poisson", "exact_extension"),
}


def _select_oracles(target: str, text: str | None, default: tuple) -> list[str]:
    if text is None:
        return list(default)
    chosen = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in chosen if s not in ORACLES[target]]
    if bad:
        raise UsageError(f"unknown oracle(s) {bad} for {target}; choose from {list(ORACLES[target])}")
    return chosen


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args, cfg) -> int:
    oracles = ORACLES[args.target] if args.with_oracles else ()
    if args.target == "wallis":
        rec = eval_wallis(args.n, list(oracles), cfg)
    elif args.target == "trig":
        order = parse_order(args.mu) if args.mu is not None else args.n
        if order is None:
            raise UsageError("trig needs --n (integer order) or --mu (general order)")
        b = args.p if args.p is not None else args.b
        if b is None:
            raise UsageError("trig needs --b (or --p for the imaginary-parameter family)")
        kind = args.kind or (ti.IMAGINARY_P if args.p is not None else ti.REAL_B)
        rec = eval_trig(order, args.a, b, kind, list(oracles), cfg)
    elif args.target == "ft":
        if args.dim < 1:
            raise UsageError(f"dim must be a positive integer, got {args.dim}")
        if args.t is not None:
            t = parse_vector(args.t)
        elif args.tnorm is not None:
            t = np.zeros(args.dim)
            t[0] = args.tnorm
        else:
            t = np.zeros(args.dim)
        rec = eval_ft(args.dim, args.a, t, list(oracles), cfg)
    else:
        rec = eval_harmonic(args.f, parse_vector(args.t), list(oracles), cfg)
    if args.json:
        sys.stdout.write(canonical_json(rec))
    else:
        sys.stdout.write(_eval_text(rec))
    return 0


def _eval_text(rec) -> str:
    inputs = " ".join(f"{k}={_inline(v)}" for k, v in rec["inputs"].items())
    lines = [f"{rec['target']}  {inputs}"]
    label = "value" if rec["target"] == "harmonic" else "closed_form"
    lines.append(f"  {label:<18} {human_float(rec['value'])}")
    if rec["target"] == "harmonic" and rec["closed_form"] is not None:
        lines.append(f"  {'closed_form':<18} {human_float(rec['closed_form'])}")
    for name, entry in rec["oracles"].items():
        lines.append(
            f"  {name:<18} {human_float(entry['value'])}  abs={human_float(entry['abs_discrepancy'])}"
            f"  rel={human_float(entry['rel_discrepancy'])}"
            + (f"  std_error={human_float(entry['std_error'])}" if "std_error" in entry else "")
        )
    return "\n".join(lines) + "\n"


def _inline(v):
    if isinstance(v, list):
        return ",".join(human_float(x) for x in v)
    return human_float(v)


# ---------------------------------------------------------------------------
# table

# columns before the oracle block, per target; CSV headers are built from
# these plus the chosen oracles, then abs_discrepancy, rel_discrepancy
INPUT_COLUMNS = {
    "wallis": ["n", "closed_form"],
    "trig": ["kind", "order", "a", "b", "closed_form"],
    "ft": ["dim", "a", "tnorm", "closed_form"],
    "harmonic": ["f", "t1", "t2", "t3", "closed_form", "superposition"],
}
TABLE_DEFAULT_ORACLES = {
    "wallis": ("beta_form", "quadrature"),
    "trig": ("quadrature",),
    "ft": ("sphere_reduction", "subordination"),
    "harmonic": ("poisson",),
}


def table_columns(target: str, oracles: list[str]) -> list[str]:
    cols = list(INPUT_COLUMNS[target])
    for name in oracles:
        cols.append(name)
        if target == "ft" and name == "monte_carlo":
            cols.append("monte_carlo_std_error")
        if target == "trig" and name == "quadrature":
            cols.append("quadrature_imag")
    return cols + ["abs_discrepancy", "rel_discrepancy"]


def _row(rec, target, oracles) -> dict:
    row = {}
    if target == "wallis":
        row["n"] = rec["inputs"]["n"]
    elif target == "trig":
        row.update(kind=rec["inputs"]["kind"], order=rec["inputs"]["order"], a=rec["inputs"]["a"],
                   b=rec["inputs"]["b"])
    elif target == "ft":
        row.update(dim=rec["inputs"]["dim"], a=rec["inputs"]["a"], tnorm=rec["inputs"]["tnorm"])
    else:
        t = rec["inputs"]["t"]
        row.update(f=rec["inputs"]["f"], t1=t[0], t2=t[1], t3=t[2], superposition=rec["value"])
    row["closed_form"] = rec["closed_form"]
    # discrepancy columns stay empty when no deterministic oracle ran
    worst_abs = worst_rel = None
    for name in oracles:
        entry = rec["oracles"].get(name)
        if entry is None:
            row[name] = None
            continue
        row[name] = entry["value"]
        if "std_error" in entry:
            row["monte_carlo_std_error"] = entry["std_error"]
        else:  # statistical oracles are judged in sigmas, not in the max
            worst_abs = max(worst_abs or 0.0, entry["abs_discrepancy"])
            worst_rel = max(worst_rel or 0.0, entry["rel_discrepancy"])
        if "imag" in entry:
            row[name + "_imag"] = entry["imag"]
    row["abs_discrepancy"] = worst_abs
    row["rel_discrepancy"] = worst_rel
    return row


def _grid(args, cfg, target, name, integer=False):
    text = getattr(args, name, None)
    if text is None:
        text = cfg["grids"].get(target, {}).get(name)
    if text is None:
        raise UsageError(f"table {target} needs --{name}")
    return parse_grid(text, integer)


def _grid_text(args, cfg, target, name):
    text = getattr(args, name, None)
    if text is None:
        text = cfg["grids"].get(target, {}).get(name)
    if text is None:
        raise UsageError(f"table {target} needs --{name}")
    return [s.strip() for s in str(text).split(",") if s.strip()]


def cmd_table(args, cfg) -> int:
    target = args.target
    oracles = _select_oracles(target, args.oracles, TABLE_DEFAULT_ORACLES[target])
    records = []
    if target == "wallis":
        for n in _grid(args, cfg, target, "n", integer=True):
            records.append(eval_wallis(n, oracles, cfg))
    elif target == "trig":
        kinds = _grid_text(args, cfg, target, "kind")
        for k in kinds:
            if k not in ti.B_KINDS:
                raise UsageError(f"unknown kind {k!r}; choose from {list(ti.B_KINDS)}")
        if args.mu is not None:
            orders = [parse_order(s) for s in args.mu.split(",")]
        else:
            orders = _grid(args, cfg, target, "n", integer=True)
        a_grid = _grid(args, cfg, target, "a")
        b_grid = _grid(args, cfg, target, "b")
        for kind in kinds:
            for order in orders:
                for a in a_grid:
                    for b in b_grid:
                        records.append(eval_trig(order, a, b, kind, oracles, cfg))
    elif target == "ft":
        for dim in _grid(args, cfg, target, "dim", integer=True):
            for a in _grid(args, cfg, target, "a"):
                for tn in _grid(args, cfg, target, "tnorm"):
                    t = np.zeros(dim)
                    t[0] = tn
                    records.append(eval_ft(dim, a, t, oracles, cfg))
    else:
        for fname in _grid_text(args, cfg, target, "f"):
            for t1 in _grid(args, cfg, target, "t1"):
                for t2 in _grid(args, cfg, target, "t2"):
                    for t3 in _grid(args, cfg, target, "t3"):
                        records.append(eval_harmonic(fname, np.array([t1, t2, t3]), oracles, cfg))
    columns = table_columns(target, oracles)
    rows = [_row(r, target, oracles) for r in records]
    fmt = "json" if args.json else args.format
    if fmt == "json":
        text = canonical_json([{c: r.get(c) for c in columns} for r in rows])
    else:
        text = rows_to_csv(rows, columns)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args, cfg) -> int:
    report = suites.run_suite(args.suite, cfg, thorough=args.thorough, jobs=int(cfg.get("jobs", 1)))
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code()


# ---------------------------------------------------------------------------


def _global_flags(defaults_suppressed: bool) -> argparse.ArgumentParser:
    d = argparse.SUPPRESS if defaults_suppressed else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if defaults_suppressed else False,
                   help="machine-readable JSON output")
    p.add_argument("--config", metavar="PATH", default=d,
                   help=f"JSON config file (default: ${CONFIG_ENV} if set)")
    p.add_argument("--seed", type=int, default=d, help="base seed for randomized oracles")
    p.add_argument("--tol", type=float, default=d,
                   help="integration tolerance for eval/table; pass tolerance override for verify")
    return p


def build_parser() -> argparse.ArgumentParser:
    sub_flags = _global_flags(True)
    parser = argparse.ArgumentParser(
        prog="trigft",
        parents=[_global_flags(False)],
        description="Closed forms and independent numerical oracles for trigonometric and "
        "radial Fourier integrals and null-cone harmonic superposition.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    ev = commands.add_parser("eval", help="evaluate one point", parents=[sub_flags])
    ev_targets = ev.add_subparsers(dest="target", required=True)
    w = ev_targets.add_parser("wallis", parents=[sub_flags], help="int_0^pi sin^n")
    w.add_argument("--n", type=int, required=True)
    tr = ev_targets.add_parser("trig", parents=[sub_flags], help="trigonometric integral family")
    tr.add_argument("--n", type=int)
    tr.add_argument("--mu", help="general order, e.g. 1.5 or 1+0.5i")
    tr.add_argument("--a", type=float, required=True)
    tr.add_argument("--b", type=float)
    tr.add_argument("--p", type=float, help="imaginary parameter (implies --kind imaginary_p)")
    tr.add_argument("--kind", choices=ti.B_KINDS)
    ft = ev_targets.add_parser("ft", parents=[sub_flags], help="Fourier transform of exp(-2 pi a |x|)")
    ft.add_argument("--dim", type=int, required=True)
    ft.add_argument("--a", type=float, required=True)
    ft.add_argument("--t", help="frequency vector, comma-separated")
    ft.add_argument("--tnorm", type=float, help="frequency magnitude (t along e1)")
    hm = ev_targets.add_parser("harmonic", parents=[sub_flags], help="harmonic extension in the unit ball")
    hm.add_argument("--f", required=True, help="boundary function name")
    hm.add_argument("--t", required=True, help="interior point, comma-separated")
    for p in (w, tr, ft, hm):
        p.add_argument("--with-oracles", action="store_true", help="also run the independent oracles")

    tb = commands.add_parser("table", help="evaluate over a parameter grid", parents=[sub_flags])
    tb_targets = tb.add_subparsers(dest="target", required=True)
    grid_help = "comma list and/or start:stop:count ranges"
    tw = tb_targets.add_parser("wallis", parents=[sub_flags])
    tw.add_argument("--n", help=grid_help)
    tt = tb_targets.add_parser("trig", parents=[sub_flags])
    tt.add_argument("--n", help=grid_help)
    tt.add_argument("--mu", help="comma list of general orders")
    tt.add_argument("--a", help=grid_help)
    tt.add_argument("--b", help=grid_help + " (p for imaginary_p)")
    tt.add_argument("--kind", help="comma list of families")
    tf = tb_targets.add_parser("ft", parents=[sub_flags])
    tf.add_argument("--dim", help=grid_help)
    tf.add_argument("--a", help=grid_help)
    tf.add_argument("--tnorm", help=grid_help)
    th = tb_targets.add_parser("harmonic", parents=[sub_flags])
    th.add_argument("--f", help="comma list of boundary function names")
    for c in ("t1", "t2", "t3"):
        th.add_argument(f"--{c}", help=grid_help)
    for p in (tw, tt, tf, th):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--oracles", help="comma list of oracles to include")
        p.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    ve = commands.add_parser("verify", help="run a verification suite", parents=[sub_flags])
    ve.add_argument("suite", choices=suites.SUITES + ("all",))
    ve.add_argument("--thorough", action="store_true", help="expanded harmonic point set")
    ve.add_argument("--jobs", type=int, help="worker processes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "eval":
            return cmd_eval(args, cfg)
        if args.command == "table":
            return cmd_table(args, cfg)
        return cmd_verify(args, cfg)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, CalibrationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
