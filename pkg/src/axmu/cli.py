"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import config as cfgmod
from .errors import ConfigError
from .experiments import PRESETS, SweepSpec, analyze, run_preset, simulate, sweep, to_csv, validate

log = logging.getLogger("axmu")


def _base_config(args) -> cfgmod.WlanConfig:
    base = cfgmod.load(args.config) if args.config else cfgmod.WlanConfig()
    return base.replace(**cfgmod.parse_overrides(args.set or []))


def _sim_kwargs(args) -> dict:
    return dict(seed=args.seed, reps=args.reps, sim_time_s=args.sim_time, jobs=args.jobs)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    config = _base_config(args)
    r = analyze(config)
    fp, d = r.fixed_point, r.durations
    lines = [
        f"S_d = {r.s_d:.4f} Mb/s",
        f"S_u = {r.s_u:.4f} Mb/s",
        f"E[D_d] = {r.e_d_d:.2f} us",
        f"E[D_u] = {r.e_d_u:.2f} us",
        f"tau_ap = {fp.tau_ap:.6g}  tau_sta = {fp.tau_sta:.6g}",
        f"pc_ap = {fp.pc_ap:.6g}  pc_sta = {fp.pc_sta:.6g}  ({fp.iterations} iterations)",
        f"csi_factor = {r.csi_factor:.6g}",
        f"V_u = {r.v_u}  N_a (su/mu_d/mu_u) = {d.na_su}/{d.na_mu_d}/{d.na_mu_u}",
        f"T_su = {float(d.t_su):g}  T_mu,d = {float(d.t_mu_d):g}  T_mu,u = {float(d.t_mu_u):g}  "
        f"T_c,su = {float(d.t_c_su):g}  T_c,mu = {float(d.t_c_mu):g} us",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_simulate(args) -> int:
    r = simulate(_base_config(args), **_sim_kwargs(args))
    lines = [
        f"S_d = {r.s_d_mean:.4f} +- {r.s_d_std:.4f} Mb/s",
        f"S_u = {r.s_u_mean:.4f} +- {r.s_u_std:.4f} Mb/s",
        "events: " + " ".join(f"{k}={v}" for k, v in r.event_counts.items()),
        "airtime (s): " + " ".join(f"{k}={v / 1e6:.4f}" for k, v in r.airtime_us.items()),
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    values = tuple(v for v in args.values.split(",") if v.strip())
    spec = SweepSpec(args.param, values, engines=args.engine)
    rows = sweep(spec, _base_config(args), **_sim_kwargs(args))
    _emit(to_csv(rows), args.out)
    return 0


def cmd_validate(args) -> int:
    report = validate(_base_config(args), args.tolerance, **_sim_kwargs(args))
    _emit("\n".join(report.lines()) + "\n", args.out)
    return 0 if report.passed else 1


def cmd_presets(args) -> int:
    if args.action == "list":
        for name, preset in PRESETS.items():
            print(f"{name:8s} {preset.description}")
        return 0
    if not args.preset:
        raise ConfigError("presets run needs a preset id")
    results = run_preset(args.preset, args.engine, base=_base_config(args), **_sim_kwargs(args))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for label, rows in results.items():
            (outdir / f"{args.preset}_{label}.csv").write_text(to_csv(rows))
    else:
        for label, rows in results.items():
            sys.stdout.write(f"# {args.preset} {label}\n{to_csv(rows)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--reps", type=int, default=20, help="simulation replications")
    common.add_argument("--sim-time", type=float, default=10.0, help="seconds per replication")
    common.add_argument("--jobs", type=int, default=1, help="parallel replications")
    common.add_argument("--out", help="output file (directory for presets run)")
    common.add_argument("--engine", choices=("analysis", "sim", "both"), default="analysis")
    common.add_argument("--tolerance", type=float, default=0.03)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="axmu", description="802.11ax MU saturation throughput")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common]).set_defaults(func=cmd_analyze)
    sub.add_parser("simulate", parents=[common]).set_defaults(func=cmd_simulate)
    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("--param", required=True)
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)
    sub.add_parser("validate", parents=[common]).set_defaults(func=cmd_validate)
    p = sub.add_parser("presets", parents=[common])
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("preset", nargs="?")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
