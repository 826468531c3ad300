"""Identity-verification runners, configuration, and machine-readable reports.

A check either expands an expression DAG exactly to the zero polynomial or
evaluates it at pseudo-random points over a list of prime fields.  Modular
runs are reproducible from (seed, primes, trials) and fan out across worker
processes when jobs > 1; results are reduced deterministically, so reports do
not depend on scheduling.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .evalmod import DEFAULT_PRIMES, Expr, check_prime, sample_point
from .poly import BudgetExceeded, PolyError

REPORT_SCHEMA = "semiinv-report/1"


class VerifyUsageError(Exception):
    """Bad configuration or an aborted exact run; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    mode: str = "modular"  # "exact" | "modular"
    trials: int = 100
    primes: tuple = DEFAULT_PRIMES
    seed: int = 0
    jobs: int = 1
    budget: int | None = None
    allow_small_char: bool = False

    def validated(self) -> "RunConfig":
        if self.mode not in ("exact", "modular"):
            raise VerifyUsageError(f"unknown mode {self.mode!r}")
        if self.trials < 1:
            raise VerifyUsageError("trials must be >= 1")
        if self.jobs < 1:
            raise VerifyUsageError("jobs must be >= 1")
        try:
            for p in self.primes:
                check_prime(p, allow_small_char=self.allow_small_char)
        except PolyError as exc:
            raise VerifyUsageError(str(exc)) from None
        return self

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "trials": self.trials,
            "primes": list(self.primes),
            "seed": self.seed,
            "jobs": self.jobs,
            "budget": self.budget,
            "allow_small_char": self.allow_small_char,
        }


@dataclass
class CheckResult:
    name: str
    passed: bool
    mode: str
    elapsed_s: float = 0.0
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "mode": self.mode,
            "elapsed_s": round(self.elapsed_s, 3),
            "details": self.details,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def boolean_check(name: str, fn: Callable[[], bool], mode: str = "exact", **details) -> CheckResult:
    t0 = time.perf_counter()
    ok = bool(fn())
    return CheckResult(name, ok, mode, time.perf_counter() - t0, dict(details))


# -- modular identity runs ----------------------------------------------------

_BUILDERS: dict = {}


def register_expr_builder(key: str, fn: Callable[[], Expr]):
    """Register a zero-argument Expr builder so worker processes can
    reconstruct the expression by name."""
    _BUILDERS[key] = fn


@lru_cache(maxsize=None)
def _built_expr(key: str) -> Expr:
    return _BUILDERS[key]()


def _trial_chunk(args):
    key, prime, start, stop, seed = args
    expr = _built_expr(key)
    names = expr.leaf_vars().names
    failures = []
    for trial in range(start, stop):
        point = sample_point(names, seed, prime, trial)
        value = expr.eval_mod(point, prime, {})
        if value:
            failures.append((trial, value, point))
    return prime, start, failures


def run_identity_modular(
    name: str,
    expr: Expr | None,
    cfg: RunConfig,
    builder_key: str | None = None,
) -> CheckResult:
    """Evaluate the expression at cfg.trials points per prime; PASS iff every
    evaluation is zero.  Reports the Schwartz-Zippel failure bound per prime."""
    t0 = time.perf_counter()
    if builder_key is not None and (expr is None or cfg.jobs > 1):
        # build through the registry so forked workers inherit the cache
        expr = _built_expr(builder_key)
    names = expr.leaf_vars().names
    degree = expr.degree_bound()
    bounds = {}
    for p in cfg.primes:
        check_prime(p, allow_small_char=cfg.allow_small_char)
        bounds[str(p)] = (
            None if degree == 0 else round(cfg.trials * math.log10(degree / p), 2)
        )
    failures = []

    if cfg.jobs > 1 and builder_key is not None:
        chunk = max(1, -(-cfg.trials // cfg.jobs))
        tasks = [
            (builder_key, p, s, min(s + chunk, cfg.trials), cfg.seed)
            for p in cfg.primes
            for s in range(0, cfg.trials, chunk)
        ]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            raw = list(pool.map(_trial_chunk, tasks))
        raw.sort(key=lambda r: (r[0], r[1]))
        for prime, _, chunk_failures in raw:
            failures.extend((prime, t, v, pt) for t, v, pt in chunk_failures)
    else:
        for prime in cfg.primes:
            for trial in range(cfg.trials):
                point = sample_point(names, cfg.seed, prime, trial)
                value = expr.eval_mod(point, prime, {})
                if value:
                    failures.append((prime, trial, value, point))

    failures.sort(key=lambda f: (f[0], f[1]))
    counterexample = None
    if failures:
        prime, trial, value, point = failures[0]
        counterexample = {
            "prime": prime,
            "trial": trial,
            "value": value,
            "point": point,
        }
    details = {
        "degree_bound": degree,
        "trials": cfg.trials,
        "primes": list(cfg.primes),
        "seed": cfg.seed,
        "log10_failure_bound_per_prime": bounds,
        "evaluations": cfg.trials * len(cfg.primes),
        "nonzero_evaluations": len(failures),
    }
    return CheckResult(
        name,
        not failures,
        "modular",
        time.perf_counter() - t0,
        details,
        counterexample,
    )


def run_identity_exact(name: str, expr: Expr, cfg: RunConfig) -> CheckResult:
    """Fully expand the expression; PASS iff the result is the zero polynomial."""
    t0 = time.perf_counter()
    expanded = expr.expand(cfg.budget)
    details = {"expanded_terms": len(expanded), "budget": cfg.budget}
    return CheckResult(
        name, expanded.is_zero(), "exact", time.perf_counter() - t0, details
    )


def run_identity(
    name: str,
    expr: Expr | None,
    cfg: RunConfig,
    builder_key: str | None = None,
) -> CheckResult:
    if cfg.mode == "exact":
        if expr is None:
            expr = _built_expr(builder_key)
        try:
            return run_identity_exact(name, expr, cfg)
        except BudgetExceeded as exc:
            raise VerifyUsageError(
                f"{name}: exact expansion exceeded the term budget "
                f"({cfg.budget}); rerun with a larger --budget or --mode modular"
            ) from exc
    return run_identity_modular(name, expr, cfg, builder_key)


def run_identity_exact_else_modular(
    name: str,
    expr: Expr,
    cfg: RunConfig,
    attempt_budget: int,
) -> CheckResult:
    """Try the exact expansion under a budget; on overflow fall back to the
    modular protocol and record the fallback."""
    try:
        result = run_identity_exact(name, expr, RunConfig(
            mode="exact",
            trials=cfg.trials,
            primes=cfg.primes,
            seed=cfg.seed,
            budget=attempt_budget,
            allow_small_char=cfg.allow_small_char,
        ))
        return result
    except BudgetExceeded:
        result = run_identity_modular(name, expr, cfg)
        result.notes.append(
            f"exact expansion exceeded the {attempt_budget}-term budget; fell back to modular"
        )
        return result


# -- reports -------------------------------------------------------------------


def build_report(suite: str, results: Sequence[CheckResult], cfg: RunConfig) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "suite": suite,
        "config": cfg.to_json(),
        "checks": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }


def render_text(report: dict) -> str:
    lines = []
    for chk in report["checks"]:
        status = "PASS" if chk["passed"] else "FAIL"
        extra = ""
        det = chk.get("details", {})
        if chk["mode"] == "modular":
            extra = (
                f"  points={det.get('trials')}x{len(det.get('primes', []))}"
                f" degree<={det.get('degree_bound')}"
            )
        lines.append(
            f"[{status}] {chk['name']}  ({chk['mode']}, {chk['elapsed_s']:.2f}s){extra}"
        )
        if not chk["passed"] and chk.get("counterexample"):
            ce = chk["counterexample"]
            lines.append(
                f"    counterexample: prime={ce['prime']} trial={ce['trial']} value={ce['value']}"
            )
            lines.append(f"    point: {ce['point']}")
        for note in chk.get("notes", []):
            lines.append(f"    note: {note}")
    verdict = "ALL CHECKS PASSED" if report["passed"] else "FAILURES DETECTED"
    lines.append(f"{verdict} ({report['suite']})")
    return "\n".join(lines)
