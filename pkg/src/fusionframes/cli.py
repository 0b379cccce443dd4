"""Command line front end.

Subcommands: ``sample``, ``analyze``, ``bounds``, ``montecarlo``,
``welch``.  Exit code 0 means success, 1 a usage or validation error,
2 an I/O failure or aborted run.  Every failure prints a single
``error[Tag] message`` line on stderr so scripts can grep for tags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .angles import angle_report, welch_bound
from .bounds import BoundSet, evaluate_bounds
from .errors import (
    ConfigInvalidError,
    FrameToolError,
    TooFewSubspacesError,
    TrialFailureError,
)
from .frames import (
    frame_bounds,
    build_fusion_frame_from_gaussian,
    load_frame,
    save_frame,
)
from .montecarlo import (
    ExperimentConfig,
    aggregate_to_dict,
    run_experiment,
    write_trials_csv,
)
from .rng import derive_stream

_PAIR_TABLE_CAP = 64


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this front end promises 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error[Usage] {message}", file=sys.stderr)
        raise SystemExit(1)


def _jsonable(value):
    """Make a value strict-JSON safe: nan becomes null, inf a string."""
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(payload) -> None:
    print(json.dumps(_jsonable(payload), indent=2))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fusionframes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a random fusion frame, write it as JSON")
    p.add_argument("--dim", type=int, required=True, help="ambient dimension N")
    p.add_argument("--subspace-dim", type=int, required=True, help="dimension s of each subspace")
    p.add_argument("--count", type=int, required=True, help="number of subspaces K")
    p.add_argument("--seed", type=int, required=True, help="master seed")
    p.add_argument("--out", required=True, help="output frame file")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("analyze", help="frame bounds and pair angles of a stored frame")
    p.add_argument("frame", help="frame JSON file")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument(
        "--full-table",
        action="store_true",
        help=f"include the pair table even for more than {_PAIR_TABLE_CAP} subspaces",
    )
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bounds", help="evaluate every closed-form bound at one point")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--subspace-dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--rows", type=int, default=None, help="must equal count*subspace_dim")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("montecarlo", help="run a seeded experiment from a config file")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--out", required=True, help="per-trial CSV output")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("welch", help="print the pair-value floor for K s-planes in R^N")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--subspace-dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=_cmd_welch)

    return parser


def _cmd_sample(args) -> int:
    frame = build_fusion_frame_from_gaussian(
        derive_stream(args.seed, 0), args.dim, args.subspace_dim, args.count
    )
    save_frame(frame, args.out)
    print(
        f"wrote frame: dim={args.dim} subspace_dim={args.subspace_dim} "
        f"count={args.count} -> {args.out}"
    )
    return 0


def _cmd_analyze(args) -> int:
    frame = load_frame(args.frame)
    fb = frame_bounds(frame)
    payload = {
        "dim": frame.ambient_dim,
        "count": len(frame),
        "dims": list(frame.dims),
        "weights": list(map(float, frame.weights)),
        "frame_bounds": {
            "lower": fb.lower,
            "upper": fb.upper,
            "tight_constant": fb.tight_constant,
            "epsilon_tight": fb.epsilon_tight,
        },
    }
    try:
        rep = angle_report(frame)
    except TooFewSubspacesError:
        payload["angles"] = None
    else:
        include_table = len(frame) <= _PAIR_TABLE_CAP or args.full_table
        payload["angles"] = {
            "welch": rep.welch,
            "normalized_min": rep.normalized_min,
            "normalized_max": rep.normalized_max,
            "normalized_mean": rep.normalized_mean,
            "pair_table": rep.pair_values.tolist() if include_table else None,
            "pair_table_omitted": not include_table,
        }
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            json.dump(_jsonable(payload), handle, indent=2)
            handle.write("\n")
        print(f"wrote report: {args.report}")
    else:
        _emit(payload)
    return 0


def _bound_set_payload(bs: BoundSet) -> dict:
    return {
        "params": {
            "dim": bs.dim,
            "subspace_dim": bs.subspace_dim,
            "count": bs.count,
            "rows": bs.rows,
            "delta": bs.delta,
        },
        "bounds": {
            "chi2_upper": bs.chi2_upper,
            "chi2_lower": bs.chi2_lower,
            "column_norms": bs.column_norms,
            "net_points": bs.net_points,
            "riesz_subset": bs.riesz_subset,
            "riesz_partition": bs.riesz_partition,
            "gaussian_frame": bs.gaussian_frame,
            "tightness": {
                "total": bs.tightness.total,
                "frame_lower": bs.tightness.frame_lower,
                "frame_upper": bs.tightness.frame_upper,
                "epsilon_bound": bs.tightness.epsilon_bound,
            },
            "beta_lower": bs.beta_lower,
            "beta_upper": bs.beta_upper,
            "ratio_bound": bs.ratio_bound,
            "proj_mass": bs.proj_mass,
            "pair": {
                "r1": bs.pair.r1,
                "r2": bs.pair.r2,
                "total": bs.pair.total,
                "window": list(bs.pair.window),
            },
            "all_pairs": bs.all_pairs,
        },
        "vacuous": bs.vacuity(),
        "regime": None
        if bs.regime is None
        else {
            "rhs": bs.regime.rhs,
            "lhs_logcount": bs.regime.lhs_logcount,
            "lhs_aspect": bs.regime.lhs_aspect,
            "ok_logcount": bs.regime.ok_logcount,
            "ok_aspect": bs.regime.ok_aspect,
        },
    }


def _cmd_bounds(args) -> int:
    bs = evaluate_bounds(args.dim, args.subspace_dim, args.count, args.delta, m=args.rows)
    _emit(_bound_set_payload(bs))
    return 0


def _cmd_montecarlo(args) -> int:
    with open(args.config, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigInvalidError(f"config is not valid JSON ({exc})") from exc
    config = ExperimentConfig.from_dict(data)
    report = run_experiment(config, workers=args.workers)
    write_trials_csv(report.results, args.out)
    _emit(aggregate_to_dict(report))
    return 0


def _cmd_welch(args) -> int:
    print(f"{welch_bound(args.dim, args.count, args.subspace_dim):.12g}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TrialFailureError as exc:
        print(f"error[{exc.tag}] {exc}", file=sys.stderr)
        return 2
    except FrameToolError as exc:
        print(f"error[{exc.tag}] {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[IO] {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
