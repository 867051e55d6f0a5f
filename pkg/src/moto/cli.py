"""Command-line entry point: plan, vote, eval and describe."""
from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from moto.config import RunConfig
from moto.errors import ConfigurationError, DomainError, IntegrityError, MotoError, ScenarioParseError
from moto.planner import aggregate, describe_scene, evaluate_run, generate_target_keypoint, plan_task
from moto.scene.scenario import dump_yaml, load_scenario

RUN_SCHEMA = "moto-run/1"
VOTE_SCHEMA = "moto-vote/1"
EVAL_SCHEMA = "moto-eval/1"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2

_CONFIG_ERRORS = (ScenarioParseError, IntegrityError, ConfigurationError, DomainError)


def exit_code(records) -> int:
    """0 when every subtask succeeded, 2 otherwise."""
    return EXIT_OK if records and all(r.success for r in records) else EXIT_PARTIAL


def trajectory_to_dict(traj) -> dict:
    out = {
        "status": traj.status,
        "states": [s.to_dict() for s in traj.states],
        "actions": [[float(x) for x in a] for a in traj.actions],
        "phases": list(traj.phases),
        "costs": [b.to_dict() for b in traj.breakdowns],
        "restarts": traj.restarts,
        "evals": traj.evals,
    }
    # plot-ready per-step annealing traces (best cost per iteration)
    out["best_cost_traces"] = [[float(c) for c in s.best_cost_trace] for s in traj.steps]
    return out


def run_report(sc, cfg: RunConfig, result, wall_time: float | None = None) -> dict:
    doc = {
        "schema": RUN_SCHEMA,
        "scenario": sc.id,
        "config_hash": cfg.config_hash(),
        "seed": cfg.anneal.seed,
        "config": cfg.to_dict(),
        "metrics": evaluate_run(result.records),
        "exit_code": exit_code(result.records),
        "handoffs": [r.to_dict() for r in result.records],
        "trajectories": [trajectory_to_dict(t) for t in result.trajectories],
    }
    if wall_time is not None:
        doc["wall_time"] = wall_time
    return doc


def _write(doc, out) -> None:
    text = dump_yaml(doc)
    if str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _fail(msg: str) -> int:
    print(f"moto: error: {msg}", file=sys.stderr)
    return EXIT_CONFIG


def cmd_plan(args) -> int:
    try:
        sc = load_scenario(args.scene)
        cfg = RunConfig.resolve(sc.config, args.set, args.seed)
    except _CONFIG_ERRORS as e:
        return _fail(str(e))
    t0 = time.perf_counter()
    try:
        result = plan_task(sc, cfg, jobs=args.jobs)
    except _CONFIG_ERRORS as e:
        return _fail(str(e))
    wall = time.perf_counter() - t0 if args.timing else None
    doc = run_report(sc, cfg, result, wall)
    _write(doc, args.out)
    for r in result.records:
        state = "ok" if r.success else "FAILED"
        print(f"subtask {r.subtask}: {state} ({r.status}) distance={r.distance:.4f} m steps={r.steps}", file=sys.stderr)
    return doc["exit_code"]


def cmd_vote(args) -> int:
    try:
        sc = load_scenario(args.scene)
        cfg = RunConfig.resolve(sc.config, args.set, args.seed)
        if not 0 <= args.subtask < len(sc.task.subtasks):
            raise ConfigurationError(f"scenario {sc.id!r} has no subtask {args.subtask} (has {len(sc.task.subtasks)})")
        vote = generate_target_keypoint(sc, args.subtask, cfg)
    except _CONFIG_ERRORS as e:
        return _fail(str(e))
    doc = {"schema": VOTE_SCHEMA, "scenario": sc.id, "config_hash": cfg.config_hash(), **vote.to_dict()}
    _write(doc, args.out)
    if vote.tk is None:
        print("moto: no voter consensus", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _eval_one(path: str, overrides, seed) -> dict:
    try:
        sc = load_scenario(path)
        cfg = RunConfig.resolve(sc.config, overrides, seed)
        result = plan_task(sc, cfg)
    except MotoError as e:
        return {"scenario": Path(path).stem, "file": Path(path).name, "error": str(e), "success": 0, "completed": 0,
                "subtasks": 0, "completion_rate": 0.0, "total_evals": 0}
    row = {"scenario": sc.id, "file": Path(path).name, **evaluate_run(result.records)}
    row["config_hash"] = cfg.config_hash()
    row["handoffs"] = [r.to_dict() for r in result.records]
    row["mean_joint_delta"] = mean_joint_delta(result.trajectories)
    return row


def mean_joint_delta(trajectories) -> float:
    """Mean over all steps of the summed per-arm joint-vector change."""
    deltas = [
        sum(float(np.linalg.norm(qb - qa)) for qa, qb in zip(a.arm_joints, b.arm_joints))
        for t in trajectories
        for a, b in zip(t.states, t.states[1:])
    ]
    return sum(deltas) / len(deltas) if deltas else 0.0


def cmd_eval(args) -> int:
    corpus = Path(args.corpus)
    files = sorted(str(p) for p in corpus.glob("*.yaml")) if corpus.is_dir() else []
    if not files:
        return _fail(f"no scenario files in {corpus}")
    try:
        RunConfig.resolve({}, args.set, args.seed)
    except ConfigurationError as e:
        return _fail(str(e))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_eval_one, files, [args.set] * len(files), [args.seed] * len(files)))
    else:
        rows = [_eval_one(f, args.set, args.seed) for f in files]
    rows.sort(key=lambda r: r["scenario"])
    summary = aggregate(rows)
    doc = {"schema": EVAL_SCHEMA, "corpus": corpus.name, "seed": args.seed, "overrides": list(args.set),
           "summary": summary, "scenarios": rows}
    _write(doc, args.out)
    print(
        f"scenarios={summary['scenarios']} success_rate={summary['success_rate']:.3f} "
        f"completion_rate={summary['completion_rate']:.3f} mean_distance={summary['mean_distance']:.4f}",
        file=sys.stderr,
    )
    return EXIT_OK if summary["success_rate"] == 1.0 else EXIT_PARTIAL


def cmd_describe(args) -> int:
    try:
        sc = load_scenario(args.scene)
    except _CONFIG_ERRORS as e:
        return _fail(str(e))
    sys.stdout.write(describe_scene(sc.graph, sc.task.instruction))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moto", description="Interaction-aware mobile manipulation planner.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, scene=True):
        if scene:
            p.add_argument("--scene", required=True, help="scenario YAML file")
        p.add_argument("--out", required=True, help="output YAML file ('-' for stdout)")
        p.add_argument("--seed", type=int, default=0, help="annealer seed (default 0)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="config override by dotted path, e.g. anneal.K=16")

    p = sub.add_parser("plan", help="plan every subtask of a scenario")
    common(p)
    p.add_argument("--jobs", type=int, default=1, help="threads for candidate evaluation")
    p.add_argument("--timing", action="store_true", help="include wall time (makes output non-reproducible)")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("vote", help="dump proposals, selection and votes for one subtask")
    common(p)
    p.add_argument("--subtask", type=int, required=True)
    p.set_defaults(func=cmd_vote)

    p = sub.add_parser("eval", help="run a directory of scenarios and tabulate metrics")
    common(p, scene=False)
    p.add_argument("--corpus", required=True, help="directory of scenario YAML files")
    p.add_argument("--jobs", type=int, default=1, help="scenario worker processes")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("describe", help="print the scene graph as planner prompt text")
    p.add_argument("--scene", required=True)
    p.set_defaults(func=cmd_describe)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        return _fail("--jobs must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
