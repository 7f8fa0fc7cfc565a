"""Command-line front end.

Subcommands map one-to-one onto the sweep scenarios:

    bellherald sweep-tau      --nbar 100 --delta-over-omega0 0 --tau-start 0 \
                              --tau-stop 12 --steps 200 --out fig_strong.csv
    bellherald sweep-loss     --gamma-t-max 0.3 --steps 120 --out fig_loss.csv
    bellherald single-point   --value 5.75 --out point.csv
    bellherald fiber-transfer --modes-start 501 --modes-stop 2001 --steps 4

Every subcommand also accepts --config <json> whose values the flags override.
Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import sys

from .errors import ConfigError, NumericsError
from .sweeps import parse_config, run_sweep


def _add_common(p):
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--nbar", type=float, help="mean photon number (default 100)")
    p.add_argument(
        "--delta-over-omega0", type=float, help="detuning in units of the resonant Rabi frequency"
    )
    p.add_argument("--n-max", type=int, help="Fock cutoff (default: ten-sigma rule)")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--workers", type=int, help="process-pool size (default 1)")


def build_parser():
    ap = argparse.ArgumentParser(prog="bellherald", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep-tau", help="heralding scalars vs interaction time")
    _add_common(p)
    p.add_argument("--tau-start", type=float, help="sweep start, units ombar*tau/(2 pi)")
    p.add_argument("--tau-stop", type=float, help="sweep stop, units ombar*tau/(2 pi)")
    p.add_argument("--steps", type=int, help="grid points")
    p.add_argument("--weak", action="store_true", help="weak-coupling preset (delta = 5 ombar0)")

    p = sub.add_parser("sweep-loss", help="heralding scalars vs handover damping gamma*T")
    _add_common(p)
    p.add_argument("--gamma-t-max", type=float, help="sweep stop in gamma*T (default 0.3)")
    p.add_argument("--steps", type=int, help="grid points")
    p.add_argument(
        "--tau-factor", type=float, help="interaction time in units 2 pi / ombar0 (default 23/4)"
    )

    p = sub.add_parser("single-point", help="one sweep-tau row")
    _add_common(p)
    p.add_argument("--value", type=float, required=False, help="ombar*tau/(2 pi) of the point")

    p = sub.add_parser("fiber-transfer", help="transfer fidelity vs fiber mode count")
    _add_common(p)
    p.add_argument("--modes-start", type=float, help="smallest mode count")
    p.add_argument("--modes-stop", type=float, help="largest mode count")
    p.add_argument("--steps", type=int, help="grid points")
    p.add_argument("--gamma-dwell", type=float, help="Gamma * dwell time per stage (default 12)")
    return ap


def _overrides(args):
    ov = {}

    def put(key, val):
        if val is not None:
            ov[key] = val

    put("physics.nbar", args.nbar)
    put("physics.delta_over_omega0", args.delta_over_omega0)
    put("physics.n_max", args.n_max)
    put("output_path", args.out)
    put("workers", args.workers)

    if args.command == "sweep-tau":
        ov["scenario"] = "sweep_tau_weak" if args.weak else "sweep_tau"
        put("grid.start", args.tau_start)
        put("grid.stop", args.tau_stop)
        put("grid.steps", args.steps)
    elif args.command == "sweep-loss":
        ov["scenario"] = "sweep_loss"
        ov.setdefault("grid.start", 0.0)
        put("grid.stop", args.gamma_t_max)
        if args.gamma_t_max is None:
            ov["grid.stop"] = 0.3
        put("grid.steps", args.steps)
        if args.steps is None:
            ov["grid.steps"] = 120
        put("physics.tau_factor", args.tau_factor)
    elif args.command == "single-point":
        ov["scenario"] = "single_point"
        put("grid.start", args.value)
    elif args.command == "fiber-transfer":
        ov["scenario"] = "fiber_transfer"
        put("grid.start", args.modes_start)
        put("grid.stop", args.modes_stop)
        put("grid.steps", args.steps)
        if args.modes_start is None:
            ov.setdefault("grid.start", 501.0)
        if args.modes_stop is None:
            ov.setdefault("grid.stop", 2001.0)
        if args.steps is None:
            ov.setdefault("grid.steps", 4)
        put("fiber.gamma_dwell", args.gamma_dwell)
    return ov


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config, _overrides(args))
        rows = run_sweep(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(rows)} rows to {cfg.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
