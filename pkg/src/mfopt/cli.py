"""Command line front end.

Subcommands:
  run     one engine on one environment, single repetition
  bench   full experiment plan (both engines, repeated seeded runs)
  report  re-aggregate persisted traces into summary tables
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

import numpy as np

from .engines import EngineConfig
from .harness import (
    ENGINES,
    ExperimentPlan,
    _run_one,
    emit_report,
    load_environment,
    reaggregate,
    repetition_seed,
    run_experiment,
)


def _add_engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=600_000,
                   help="objective evaluation budget per run")
    p.add_argument("--pop", type=int, default=200, help="population size")
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument("--w", type=float, default=0.5, help="dOX window fraction")
    p.add_argument("--pm", type=float, default=0.2, help="mutation probability")
    p.add_argument("--rmp", type=float, default=0.9, help="scalar RMP (MFEA)")
    p.add_argument("--rmp-init", type=float, default=0.95,
                   help="initial transfer-matrix value (dMFEA-II)")
    p.add_argument("--delta-inc", type=float, default=0.99)
    p.add_argument("--delta-dec", type=float, default=0.99)
    p.add_argument("--outdir", type=Path, default=Path("results"))


def _config(args) -> EngineConfig:
    return EngineConfig(
        population_size=args.pop, eval_budget=args.budget,
        rmp_scalar=args.rmp, rmp_init=args.rmp_init, p_m=args.pm, w=args.w,
        delta_inc=args.delta_inc, delta_dec=args.delta_dec, seed=args.seed,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mfopt",
        description="Permutation-based evolutionary multitasking benchmarks")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single run of one engine")
    p_run.add_argument("environment", help="built-in name (TE_4_1 .. TE_8) or config file")
    p_run.add_argument("--engine", choices=ENGINES, default="dMFEA-II")
    _add_engine_flags(p_run)

    p_bench = sub.add_parser("bench", help="full repeated-run experiment")
    p_bench.add_argument("environment")
    p_bench.add_argument("--engines", nargs="+", choices=ENGINES,
                         default=list(ENGINES))
    p_bench.add_argument("--reps", type=int, default=20)
    _add_engine_flags(p_bench)

    p_rep = sub.add_parser("report", help="re-aggregate persisted traces")
    p_rep.add_argument("environment")
    p_rep.add_argument("--outdir", type=Path, default=Path("results"))

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == "run":
        env = load_environment(args.environment)
        seed_seq = repetition_seed(args.seed, args.engine, 0)
        best, trace = _run_one(args.engine, env.tasks, _config(args), seed_seq)
        args.outdir.mkdir(parents=True, exist_ok=True)
        trace_path = args.outdir / f"{env.name}__{args.engine.replace('-', '_')}__single.jsonl"
        trace_path.write_text(trace.to_jsonl())
        for task, result in zip(env.tasks, best):
            print(f"{env.name} {args.engine} {task.name}: best cost {result.cost:g}")
        print(f"trace written to {trace_path}")
        return 0

    if args.command == "bench":
        env = load_environment(args.environment)
        plan = ExperimentPlan(
            environment=env, engines=tuple(args.engines),
            repetitions=args.reps, budget=args.budget, base_seed=args.seed,
            output_dir=args.outdir, config=_config(args),
        )
        rows = run_experiment(plan)
        paths = emit_report(rows, args.outdir)
        for r in rows:
            print(f"{r.environment} {r.engine:9s} {r.instance:10s} "
                  f"mean={r.mean:10.2f} std={r.std:8.2f} {r.wilcoxon}")
        print(f"summary written to {paths['summary']}")
        return 0

    rows = reaggregate(args.outdir, args.environment)
    paths = emit_report(rows, args.outdir)
    for r in rows:
        print(f"{r.environment} {r.engine:9s} {r.instance:10s} "
              f"mean={r.mean:10.2f} std={r.std:8.2f} {r.wilcoxon}")
    print(f"summary written to {paths['summary']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
