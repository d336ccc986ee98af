"""Command line front end.

    toric-nccr analyze --weights 1,1,-1,-1 [--finite 2:1,1,1,1] [--truncation D]
                       [--tasks checks,resolution,...] [--out report.json]
    toric-nccr analyze --config run.ini
    toric-nccr batch --input items.txt [--workers k] [--out summary.json]
    toric-nccr batch --random 50 --seed 0 --tasks tilting

Exit status: 0 all tasks pass, 2 validation failure, 3 truncation
instability or window exhaustion, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import sys

from .pipeline import (
    TASKS,
    PipelineConfig,
    dumps,
    parse_batch_file,
    parse_config_file,
    random_effective_weights,
    run_batch,
    run_pipeline,
)


def _tasks(s):
    return tuple(t.strip() for t in s.split(",") if t.strip())


def build_parser():
    p = argparse.ArgumentParser(prog="toric-nccr", description="NCCRs and tilting objects for torus quotient singularities")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the pipeline on one weight vector")
    a.add_argument("--weights", help="torus weights, comma separated")
    a.add_argument("--finite", help="finite group data m:c1,...,cn (blocks separated by ';')")
    a.add_argument("--truncation", type=int, help="degree truncation D (default 3n)")
    a.add_argument("--epsilon", choices=["left-open", "right-open"], default="left-open")
    a.add_argument("--tasks", type=_tasks, default=TASKS, help="comma separated subset of " + ",".join(TASKS))
    a.add_argument("--presentation-degree", type=int, help="degree bound for quiver relations")
    a.add_argument("--config", help="INI file with a [pipeline] section")
    a.add_argument("--out", help="write the JSON report here instead of stdout")
    a.add_argument("--no-timing", action="store_true", help="omit the timing field (byte-stable output)")

    b = sub.add_parser("batch", help="run many weight vectors")
    b.add_argument("--input", help="file with one '<weights> [key=value ...]' item per line")
    b.add_argument("--random", type=int, default=0, help="add this many random effective weight vectors")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--tasks", type=_tasks, default=None, help="default task list for items")
    b.add_argument("--truncation", type=int)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", help="write the JSON summary here instead of stdout")
    return p


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        if args.config:
            cfg = parse_config_file(args.config)
        elif args.weights:
            cfg = PipelineConfig(
                weights=args.weights,
                finite=args.finite,
                truncation=args.truncation,
                epsilon=args.epsilon,
                tasks=args.tasks,
                presentation_degree=args.presentation_degree,
            )
        else:
            print("analyze needs --weights or --config", file=sys.stderr)
            return 2
        cfg.timing = not args.no_timing
        report, code = run_pipeline(cfg)
        _emit(dumps(report), args.out)
        return code

    defaults = {}
    if args.tasks:
        defaults["tasks"] = ",".join(args.tasks)
    if args.truncation is not None:
        defaults["truncation"] = str(args.truncation)
    configs = parse_batch_file(args.input, defaults) if args.input else []
    for wts in random_effective_weights(args.random, seed=args.seed):
        configs.append(PipelineConfig(
            weights=wts,
            truncation=args.truncation,
            tasks=args.tasks or PipelineConfig.tasks,
        ))
    rows = run_batch(configs, args.workers)
    _emit(dumps({"items": rows}), args.out)
    return max((r["exit_status"] for r in rows), default=0)


if __name__ == "__main__":
    sys.exit(main())
