"""Run metrics over handoff records."""
from __future__ import annotations

import math


def evaluate_run(records) -> dict:
    """Completion rate (successes / subtasks), all-succeeded flag and means.

    Means skip non-finite entries (e.g. subtasks that never got a TK).
    """
    if not records:
        raise ValueError("need at least one record")
    n = len(records)
    done = sum(1 for r in records if r.success)
    dists = [r.distance for r in records if math.isfinite(r.distance)]
    clears = [r.min_clearance for r in records if math.isfinite(r.min_clearance)]
    return {
        "subtasks": n,
        "completed": done,
        "completion_rate": done / n,
        "success": 1 if done == n else 0,
        "mean_distance": sum(dists) / len(dists) if dists else math.nan,
        "mean_min_clearance": sum(clears) / len(clears) if clears else math.nan,
        "total_evals": sum(r.evals for r in records),
    }


def aggregate(rows: list[dict]) -> dict:
    """Corpus-level table line from per-scenario metric rows."""
    n = len(rows)
    if n == 0:
        raise ValueError("no rows")
    subtasks = sum(r["subtasks"] for r in rows)

    def mean(key):
        vals = [r[key] for r in rows if isinstance(r.get(key), float) and math.isfinite(r[key])]
        return sum(vals) / len(vals) if vals else math.nan

    return {
        "scenarios": n,
        "success_rate": sum(r["success"] for r in rows) / n,
        "completion_rate": sum(r["completed"] for r in rows) / subtasks if subtasks else 0.0,
        "mean_distance": mean("mean_distance"),
        "mean_min_clearance": mean("mean_min_clearance"),
        "total_evals": sum(r["total_evals"] for r in rows),
    }
