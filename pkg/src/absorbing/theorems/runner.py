"""Run the theorem checks over a corpus and assemble the suite report."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from ..errors import AbsorbingError
from ..ring import DEFAULT_CAP
from ..spec import build_spec
from .checks import (
    CHECKS,
    COUNTEREXAMPLE,
    ERROR,
    MIN_PRIMES_ID,
    UNMEETABLE_CHECKS,
    VACUOUS,
    VERIFIED,
    check_min_primes_construction,
    run_check,
    select_checks,
)
from .context import RingContext
from .corpus import CorpusEntry

SLOW_MIN_PRIMES_CAP = 1024


@dataclass(frozen=True)
class SuiteConfig:
    cap: int = DEFAULT_CAP
    slow: bool = False
    check: str | None = None
    parallel: int = 1
    timing: bool = True
    # also run the constructed-ring family (n=2, plus n=3 in the slow tier)
    constructions: bool = True

    def __post_init__(self):
        if self.cap < 2:
            raise ValueError("cap must be at least 2")
        if self.parallel < 1:
            raise ValueError("parallelism must be at least 1")


def evaluate_entry(spec: str, check_ids: list[str], cap: int, timing: bool = True) -> dict:
    """Build one ring and run the selected checks on it. Never raises for bad specs."""
    start = time.perf_counter()
    try:
        ring = build_spec(spec, cap=cap)
    except AbsorbingError as exc:
        return {"spec": spec, "error": f"{type(exc).__name__}: {exc}", "results": []}
    ctx = RingContext(ring, cap)
    by_id = {c.id: c for c in CHECKS}
    results = [run_check(by_id[cid], ctx).to_json(timing) for cid in check_ids]
    out = {"spec": spec, "label": ring.label, "order": ring.order, "ideals": ctx.k, "results": results}
    if timing:
        out["millis"] = round((time.perf_counter() - start) * 1e3, 1)
    return out


def _evaluate_star(args):
    return evaluate_entry(*args)


def _min_primes_task(n: int, cap: int, timing: bool) -> dict:
    try:
        verdict = check_min_primes_construction(n, cap=cap)
    except AbsorbingError as exc:
        return {"spec": f"min-primes n={n}", "error": f"{type(exc).__name__}: {exc}", "results": []}
    return {"spec": verdict.ring, "label": verdict.ring, "results": [verdict.to_json(timing)]}


def run_suite(entries: list[CorpusEntry], config: SuiteConfig = SuiteConfig()) -> dict:
    """Evaluate every (ring, check) pair and return the JSON-ready suite report.

    Results are ordered by (ring label, check id) whatever the execution
    order, so reports from parallel and serial runs agree.
    """
    checks = select_checks(config.check)
    check_ids = [c.id for c in checks]
    active = [e for e in entries if config.slow or not e.slow]
    jobs = [(e.spec, check_ids, max(config.cap, 2), config.timing) for e in active] if check_ids else []

    if config.parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.parallel) as pool:
            evaluated = list(pool.map(_evaluate_star, jobs, chunksize=1))
    else:
        evaluated = [_evaluate_star(j) for j in jobs]

    want_min_primes = bool(entries) and config.constructions and (not config.check or config.check in MIN_PRIMES_ID)
    if want_min_primes:
        evaluated.append(_min_primes_task(2, config.cap, config.timing))
        if config.slow:
            evaluated.append(_min_primes_task(3, max(config.cap, SLOW_MIN_PRIMES_CAP), config.timing))

    results = [r for e in evaluated for r in e["results"]]
    results.sort(key=lambda r: (r["ring"], r["check_id"]))
    errors = [{"spec": e["spec"], "error": e["error"]} for e in evaluated if "error" in e]
    corpus = [
        {k: e[k] for k in ("spec", "label", "order", "ideals", "millis") if k in e}
        for e in evaluated
        if "error" not in e
    ]
    summary = {
        "verified": sum(r["outcome"] == VERIFIED for r in results),
        "vacuous": sum(r["outcome"] == VACUOUS for r in results),
        "counterexamples": sum(r["outcome"] == COUNTEREXAMPLE for r in results),
        "errors": sum(r["outcome"] == ERROR for r in results),
        "build_errors": len(errors),
    }
    all_ids = check_ids + ([MIN_PRIMES_ID] if want_min_primes else [])
    report = {
        "config": asdict(config),
        "corpus": corpus,
        "build_errors": errors,
        "results": results,
        "summary": summary,
        "vacuity": vacuity_report(results, all_ids),
    }
    if config.timing:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return report


def vacuity_report(results: list[dict], check_ids: list[str]) -> dict:
    per_check = {
        cid: {"verified": 0, "vacuous": 0, "counterexamples": 0, "errors": 0, "instances_checked": 0}
        for cid in check_ids
    }
    key = {VERIFIED: "verified", VACUOUS: "vacuous", COUNTEREXAMPLE: "counterexamples", ERROR: "errors"}
    for r in results:
        row = per_check[r["check_id"]]
        row[key[r["outcome"]]] += 1
        row["instances_checked"] += r["instances_checked"]
    never = [cid for cid, row in per_check.items() if row["verified"] == 0]
    provable = {cid: UNMEETABLE_CHECKS[cid] for cid in check_ids if cid in UNMEETABLE_CHECKS}
    partial = {
        c.id: dict(c.unmeetable) for c in CHECKS if c.id in check_ids and c.unmeetable and c.id not in provable
    }
    return {
        "per_check": per_check,
        "never_verified": never,
        "provably_vacuous": provable,
        "provably_vacuous_parts": partial,
        "unexplained_never_verified": [cid for cid in never if cid not in provable],
    }


def suite_exit_code(report: dict) -> int:
    s = report["summary"]
    if s["counterexamples"] or s["errors"]:
        return 1
    if s["build_errors"]:
        return 2
    return 0


def strip_timing(report: dict) -> dict:
    """Copy of a report without the wall-clock fields, for determinism comparisons."""
    out = {k: v for k, v in report.items() if k != "timestamp"}
    out["results"] = [{k: v for k, v in r.items() if k != "millis"} for r in report["results"]]
    out["corpus"] = [{k: v for k, v in c.items() if k != "millis"} for c in report["corpus"]]
    out["config"] = {k: v for k, v in report["config"].items() if k not in ("timing", "parallel")}
    return out
