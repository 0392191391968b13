"""Experiment orchestration: benchmark environments, repeated seeded runs
of both engines, and summary-table report emission.

Built-in environments mirror the standard TSP/CVRP multitasking setups:
four 4-task environments plus TE_8 with all eight instances. Instance
files are bundled under ``mfopt/data``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import parsers
from .engines import EngineConfig, RunTrace, run_dmfea2, run_mfea
from .stats import Direction, SampleSet, ranksum_test, summarize

log = logging.getLogger(__name__)

ENGINES = ("MFEA", "dMFEA-II")

# (bundled file, problem kind) per environment; kinds inferred at load time.
BUILTIN_ENVIRONMENTS = {
    "TE_4_1": ["berlin52.tsp", "eil51.tsp", "st70.tsp", "eil76.tsp"],
    "TE_4_2": ["P-n50-k7.vrp", "P-n50-k8.vrp", "P-n55-k7.vrp", "P-n55-k8.vrp"],
    "TE_4_3": ["eil51.tsp", "berlin52.tsp", "P-n50-k7.vrp", "P-n50-k8.vrp"],
    "TE_4_4": ["st70.tsp", "eil76.tsp", "P-n55-k7.vrp", "P-n55-k8.vrp"],
    "TE_8": ["berlin52.tsp", "eil51.tsp", "st70.tsp", "eil76.tsp",
             "P-n50-k7.vrp", "P-n50-k8.vrp", "P-n55-k7.vrp", "P-n55-k8.vrp"],
}

# Published best-known values, reported alongside means for reference.
KNOWN_OPTIMA = {
    "berlin52": 7542, "eil51": 426, "st70": 675, "eil76": 538,
    "P-n50-k7": 554, "P-n50-k8": 629, "P-n55-k7": 568, "P-n55-k8": 598,
}


@dataclass
class Environment:
    name: str
    tasks: list  # TspInstance | CvrpInstance

    @property
    def d_max(self) -> int:
        return max(t.dimension for t in self.tasks)

    @property
    def task_names(self) -> list[str]:
        return [t.name for t in self.tasks]


@dataclass
class ExperimentPlan:
    environment: Environment
    engines: tuple[str, ...] = ENGINES
    repetitions: int = 20
    budget: int = 600_000
    base_seed: int = 0
    output_dir: Path = Path("results")
    config: EngineConfig = field(default_factory=EngineConfig)

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        if self.repetitions < 1:
            raise ValueError("need at least one repetition")
        for e in self.engines:
            if e not in ENGINES:
                raise ValueError(f"unknown engine {e!r}")


@dataclass
class ReportRow:
    environment: str
    engine: str
    instance: str
    mean: float
    std: float
    wilcoxon: str  # "significant" | "not_significant" | "n/a"
    optimum: float | None


def _data_text(filename: str) -> str:
    return resources.files("mfopt.data").joinpath(filename).read_text()


def load_environment(name_or_path: str) -> Environment:
    """Build an environment from a built-in name or a JSON config file.

    A config file lists instance paths:
    ``{"name": "...", "instances": ["a.tsp", "b.vrp", ...]}``.
    """
    if name_or_path in BUILTIN_ENVIRONMENTS:
        tasks = []
        for fn in BUILTIN_ENVIRONMENTS[name_or_path]:
            raw = parsers.RawProblemFile(
                path=fn,
                kind=(parsers.ProblemKind.TSPLIB_TSP if fn.endswith(".tsp")
                      else parsers.ProblemKind.AUGERAT_VRP),
                text=_data_text(fn),
            )
            tasks.append(parsers.parse_problem(raw))
        return Environment(name=name_or_path, tasks=tasks)

    path = Path(name_or_path)
    if not path.exists():
        raise ValueError(f"unknown environment {name_or_path!r} "
                         f"(not a built-in name or config file)")
    spec = json.loads(path.read_text())
    tasks = []
    for inst_path in spec["instances"]:
        inst_path = str((path.parent / inst_path).resolve()
                        if not Path(inst_path).is_absolute() else inst_path)
        tasks.append(parsers.parse_problem(parsers.load_problem(inst_path)))
    return Environment(name=spec.get("name", path.stem), tasks=tasks)


def repetition_seed(base_seed: int, engine: str, repetition: int) -> np.random.SeedSequence:
    """Deterministic per-repetition stream; both engines share the same
    entropy for a given repetition index, giving paired seeds."""
    return np.random.SeedSequence(entropy=base_seed, spawn_key=(repetition,))


def _run_one(engine: str, tasks, config: EngineConfig, seed_seq) -> tuple[list, RunTrace]:
    rng = np.random.default_rng(seed_seq)
    runner = run_dmfea2 if engine == "dMFEA-II" else run_mfea
    return runner(tasks, config, rng)


def _trace_filename(env: str, engine: str, rep: int) -> str:
    return f"{env}__{engine.replace('-', '_')}__rep{rep:03d}.jsonl"


def run_experiment(plan: ExperimentPlan) -> list[ReportRow]:
    """Run every engine x repetition of the plan, persist traces, and
    aggregate per-instance means, stds and Wilcoxon markers."""
    env = plan.environment
    plan.output_dir.mkdir(parents=True, exist_ok=True)
    config = EngineConfig(
        population_size=plan.config.population_size,
        eval_budget=plan.budget,
        rmp_scalar=plan.config.rmp_scalar,
        rmp_init=plan.config.rmp_init,
        p_m=plan.config.p_m,
        w=plan.config.w,
        delta_inc=plan.config.delta_inc,
        delta_dec=plan.config.delta_dec,
    )

    finals: dict[str, np.ndarray] = {}
    for engine in plan.engines:
        costs = np.empty((plan.repetitions, len(env.tasks)))
        for rep in range(plan.repetitions):
            seed_seq = repetition_seed(plan.base_seed, engine, rep)
            best, trace = _run_one(engine, env.tasks, config, seed_seq)
            costs[rep] = [b.cost for b in best]
            trace_path = plan.output_dir / _trace_filename(env.name, engine, rep)
            trace_path.write_text(trace.to_jsonl())
            log.info("%s %s rep %d: %s", env.name, engine, rep, costs[rep])
        finals[engine] = costs

    return aggregate_rows(env, plan.engines, finals)


def aggregate_rows(env: Environment, engines, finals: dict[str, np.ndarray]) -> list[ReportRow]:
    rows = []
    both = len(engines) == 2 and all(finals[e].shape[0] >= 2 for e in engines)
    for engine in engines:
        for k, task in enumerate(env.tasks):
            sample = SampleSet(finals[engine][:, k], label=engine)
            mean, std = summarize(sample)
            marker = "n/a"
            if both:
                a = SampleSet(finals["dMFEA-II"][:, k])
                b = SampleSet(finals["MFEA"][:, k])
                verdict = ranksum_test(a, b)
                marker = ("significant"
                          if verdict.significant and verdict.direction is Direction.A_BETTER
                          else "not_significant")
            rows.append(ReportRow(
                environment=env.name, engine=engine, instance=task.name,
                mean=mean, std=std, wilcoxon=marker,
                optimum=KNOWN_OPTIMA.get(task.name),
            ))
    return rows


def emit_report(rows: list[ReportRow], output_dir: Path) -> dict[str, Path]:
    """Write the delimiter-separated summary table and a structured JSON
    results file. Returns the paths written."""
    if not rows:
        raise ValueError("no rows to report")
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    csv_path = output_dir / "summary.csv"
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["environment", "engine", "instance", "mean", "std",
                     "wilcoxon", "optimum"])
    for r in rows:
        writer.writerow([r.environment, r.engine, r.instance,
                         f"{r.mean:.4f}", f"{r.std:.4f}", r.wilcoxon,
                         "" if r.optimum is None else r.optimum])
    csv_path.write_text(buf.getvalue())

    json_path = output_dir / "results.json"
    json_path.write_text(json.dumps([r.__dict__ for r in rows], indent=2,
                                    default=str) + "\n")
    return {"summary": csv_path, "results": json_path}


def reaggregate(output_dir: Path, environment: str) -> list[ReportRow]:
    """Rebuild report rows from persisted trace files."""
    output_dir = Path(output_dir)
    env = load_environment(environment)
    finals: dict[str, np.ndarray] = {}
    engines = []
    for engine in ENGINES:
        paths = sorted(output_dir.glob(
            f"{env.name}__{engine.replace('-', '_')}__rep*.jsonl"))
        if not paths:
            continue
        engines.append(engine)
        costs = np.array([RunTrace.from_jsonl(p.read_text()).final_best_costs()
                          for p in paths])
        finals[engine] = costs
    if not engines:
        raise ValueError(f"no traces for {environment} under {output_dir}")
    return aggregate_rows(env, tuple(engines), finals)
