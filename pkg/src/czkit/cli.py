"""Command-line entry point (`cz`).

Subcommands: eval, check, norm, maximal, weights, apply, decompose,
verify, sweep.  Verify and sweep write JSON/CSV reports and render PNG
figures alongside them unless --no-figures is given; their exit code is 0
exactly when every contract in the selected report holds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import czrf, harness, maximal, orlicz, singular, weights, young
from .grid import GridFunction, read_grid_function, write_grid_function
from .harness import ExperimentConfig, run_theorem, sweep as run_sweep
from .orlicz import AUTO
from .young import Family, YoungSpec


def _spec_from_args(args) -> YoungSpec:
    fam = Family(args.family)
    param = 1.0
    for name in ("rho", "s", "r", "param"):
        v = getattr(args, name, None)
        if v is not None:
            param = float(v)
    return YoungSpec(fam, param)


def _parse_phi_token(token: str) -> YoungSpec:
    """Forms like 'rho=1.5' (log-bump family) or 'family=psi,s=2'."""
    fields = dict(kv.split("=", 1) for kv in token.split(","))
    fam = Family(fields.pop("family", "phi"))
    if fields:
        param = float(next(iter(fields.values())))
    else:
        param = 1.0
    return YoungSpec(fam, param)


def _cmd_eval(args) -> int:
    spec = _spec_from_args(args)
    print(repr(young.evaluate(spec, float(args.t))))
    return 0


def _cmd_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    n = args.samples
    ts = rng.uniform(0.0, 1.0, n) * 1e6
    if args.lemma == "lemma42":
        rhos = rng.uniform(0.0, 10.0, n)
        rhos[rhos == 0.0] = 1e-6
        check = young.check_lemma_42
    else:
        rhos = rng.uniform(1.0, 10.0, n)
        rhos[rhos == 1.0] = 1.0 + 1e-6
        check = young.check_lemma_43
    tol = 1e-12
    fails = 0
    for t, rho in zip(ts, rhos):
        lo, mid, hi = check(float(t), float(rho))
        slack = tol * max(1.0, abs(hi))
        if not (lo - slack <= mid <= hi + slack):
            fails += 1
    print(f"{args.lemma}: samples={n} pass={n - fails} fail={fails}")
    return 0 if fails == 0 else 1


def _interval_cells(f: GridFunction, token: str) -> tuple[int, int]:
    lo, hi = (float(x) for x in token.split(","))
    mids = f.grid.midpoints
    idx = np.nonzero((mids >= lo) & (mids < hi))[0]
    if idx.size == 0:
        raise SystemExit(f"interval {token} covers no grid cells")
    return int(idx[0]), int(idx[-1]) + 1


def _cmd_norm(args) -> int:
    f = read_grid_function(args.input)
    spec = _parse_phi_token(args.phi) if args.phi else _spec_from_args(args)
    q = _interval_cells(f, args.interval) if args.interval else None
    print(repr(orlicz.luxemburg_norm(f, q, spec, args.tol)))
    return 0


def _cmd_maximal(args) -> int:
    f = read_grid_function(args.input)
    mode = args.mode
    if args.op == "hl":
        out = maximal.hl_maximal(f, mode)
    elif args.op == "power":
        out = maximal.power_maximal(f, args.eps, mode)
    elif args.op == "lr":
        out = maximal.lr_maximal(f, args.r, mode)
    elif args.op == "sharp":
        if args.delta is not None:
            out = maximal.sharp_power(f, args.delta, mode)
        else:
            out = maximal.sharp_maximal(f, mode)
    elif args.op == "orlicz":
        spec = _parse_phi_token(args.phi) if args.phi else _spec_from_args(args)
        out = orlicz.orlicz_maximal(f, spec, mode)
    else:
        raise SystemExit(f"unknown op {args.op}")
    write_grid_function(out, args.out)
    return 0


def _cmd_weights(args) -> int:
    from .grid import UniformGrid1D

    grid = UniformGrid1D(args.a, args.b, args.levels)
    params = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.seed is not None:
        params["seed"] = args.seed
    if args.osc_bound is not None:
        params["osc_bound"] = args.osc_bound
    w = weights.make_weight(args.kind, grid, **params)
    ps = [float(p) for p in args.p.split(",")] if args.p else [2.0]
    fujii = w.fujii(args.fujii_mode)
    try:
        tau = weights.calibrated_tau()
    except FileNotFoundError:
        tau = None
    report = {
        "kind": args.kind,
        "params": params,
        "n": grid.n,
        "a1": w.a1(args.mode),
        "ap": {repr(p): w.ap(p, args.mode) for p in ps},
        "fujii": fujii,
        "fujii_mode": args.fujii_mode,
        "r_w": None if tau is None else 1.0 + 1.0 / (tau * fujii),
        "tau": tau,
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        print(text, end="")
    return 0


def _cmd_apply(args) -> int:
    f = read_grid_function(args.input)
    if args.op == "hilbert":
        out = singular.hilbert(f)
    elif args.op in ("commutator", "multilinear"):
        kinds = (args.symbol or "log").split(",")
        syms = [singular.make_symbol(kind, f.grid) for kind in kinds]
        if args.op == "commutator":
            if len(syms) != 1:
                raise SystemExit("commutator takes exactly one symbol")
            out = singular.commutator(syms[0], f)
        else:
            out = singular.multilinear_commutator(syms, f)
    else:
        raise SystemExit(f"unknown op {args.op}")
    write_grid_function(out, args.out)
    return 0


def _cmd_decompose(args) -> int:
    f = read_grid_function(args.input)
    try:
        dec = czrf.cz_decompose(f, args.height)
    except young.PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    prefix = args.out_prefix
    cubes = [
        {
            "gen": q.gen,
            "idx": q.idx,
            "lo": q.lo,
            "hi": q.hi,
            "abs_average": float(np.mean(np.abs(f.values[q.cell_slice]))),
        }
        for q in dec.cubes
    ]
    Path(f"{prefix}cubes.json").write_text(
        json.dumps({"lambda": args.height, "cubes": cubes}, sort_keys=True, indent=2) + "\n"
    )
    write_grid_function(dec.good, f"{prefix}good.csv")
    for j, hj in enumerate(dec.bad):
        write_grid_function(hj, f"{prefix}bad_{j}.csv")
    print(f"{len(dec.cubes)} intervals selected; wrote {prefix}cubes.json")
    return 0


def _cmd_verify(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    if args.theorem:
        cfg.theorem = args.theorem
    report = run_theorem(cfg)
    out = Path(args.out)
    report.write_json(out)
    report.write_csv(out.with_suffix(".csv"))
    if not args.no_figures:
        from .plotting import render_report_figures

        render_report_figures(report, out.parent, stem=out.stem)
    status = "PASS" if report.contracts_hold else "FAIL"
    for name, ok in sorted(report.contracts.items()):
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    print(f"{report.theorem}: {status} -> {out}")
    return 0 if report.contracts_hold else 1


def _cmd_sweep(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    result = run_sweep(cfg, args.axis)
    out = Path(args.out)
    harness.write_sweep_csv(result, out)
    harness.write_sweep_json(result, out.with_suffix(".json"))
    if not args.no_figures:
        from .plotting import render_sweep_figures

        render_sweep_figures(result, out.parent, stem=out.stem)
    print(f"{len(result['rows'])} rows -> {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cz", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a scalar family member")
    p.add_argument("--family", default="phi", choices=[f.value for f in Family])
    p.add_argument("--rho", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--param", type=float)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("check", help="randomized sandwich-lemma checks")
    p.add_argument("lemma", choices=["lemma42", "lemma43"])
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("norm", help="Luxemburg norm over an interval")
    p.add_argument("--phi", help="family token, e.g. rho=1 or family=psi,s=2")
    p.add_argument("--family", default="phi", choices=[f.value for f in Family])
    p.add_argument("--rho", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--param", type=float)
    p.add_argument("--input", required=True)
    p.add_argument("--interval", help="x-range lo,hi (defaults to the whole domain)")
    p.add_argument("--tol", type=float, default=orlicz.DEFAULT_NORM_TOL)
    p.set_defaults(fn=_cmd_norm)

    p = sub.add_parser("maximal", help="maximal operators to CSV")
    p.add_argument("--op", required=True, choices=["hl", "power", "sharp", "lr", "orlicz"])
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--delta", type=float)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--phi")
    p.add_argument("--family", default="phi", choices=[f.value for f in Family])
    p.add_argument("--rho", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--param", type=float)
    p.add_argument("--mode", default=AUTO)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_maximal)

    p = sub.add_parser("weights", help="weight constants report")
    p.add_argument("--kind", required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--osc-bound", dest="osc_bound", type=float)
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=9)
    p.add_argument("--p", help="comma list of exponents for the A_p map")
    p.add_argument("--mode", default=AUTO)
    p.add_argument("--fujii-mode", dest="fujii_mode", default="dyadic")
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_weights)

    p = sub.add_parser("apply", help="transform / commutator to CSV")
    p.add_argument("--op", required=True, choices=["hilbert", "commutator", "multilinear"])
    p.add_argument("--symbol", help="comma list of symbol kinds")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_apply)

    p = sub.add_parser("decompose", help="stopping-time decomposition at a height")
    p.add_argument("--lambda", dest="height", type=float, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out-prefix", dest="out_prefix", default="cz_")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("verify", help="run one inequality report")
    p.add_argument("--theorem", choices=sorted(harness.THEOREMS))
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    p.add_argument("--axis", required=True, choices=sorted(harness._AXES))
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(fn=_cmd_sweep)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
