"""Random-restart hill climbing on the norm-to-testing-bound ratio.

The objective is the ratio reported by :func:`hankelrkt.rkt.verify_rkt`; it is
invariant under scaling and coefficient rotation, so accepted symbols are
renormalized to A = 1 to keep magnitudes in range.  Results are empirical
lower bounds for the extremal ratio, nothing sharper is claimed.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .hankel import HankelSymbol
from .rkt import RATIO_LOWER_TOL, RATIO_SLACK, RKT_BOUND, LambdaGrid, RktReport, random_symbol, verify_rkt

__all__ = ["SearchConfig", "StepRecord", "SearchTrace", "perturb", "search"]

REJECTIONS_BEFORE_SHRINK = 10


@dataclass(frozen=True)
class SearchConfig:
    m: int
    d: int = 1
    restarts: int = 5
    steps: int = 200
    init_scale: float = 0.3
    shrink: float = 0.7
    seed: int = 0
    grid: LambdaGrid = field(default_factory=LambdaGrid)

    def __post_init__(self):
        if self.m < 1 or self.d < 1:
            raise ValueError("m and d must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.init_scale <= 0:
            raise ValueError("init_scale must be positive")
        if not 0.0 < self.shrink < 1.0:
            raise ValueError("shrink must be in (0, 1)")

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "d": self.d,
            "restarts": self.restarts,
            "steps": self.steps,
            "init_scale": self.init_scale,
            "shrink": self.shrink,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class StepRecord:
    restart: int
    step: int
    ratio: float
    accepted: bool


@dataclass
class SearchTrace:
    config: SearchConfig
    steps: list
    best_symbol: HankelSymbol
    best_ratio: float
    best_report: RktReport
    bound_violations: list

    @property
    def bound_violated(self) -> bool:
        return bool(self.bound_violations)

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_json_dict(),
            "steps": [
                {"restart": r.restart, "step": r.step, "ratio": r.ratio, "accepted": r.accepted}
                for r in self.steps
            ],
            "best_ratio": self.best_ratio,
            "best_symbol": self.best_symbol.to_json_dict(),
            "best_report": self.best_report.to_json_dict(),
            "bound_violated": self.bound_violated,
            "bound_violations": list(self.bound_violations),
        }


def perturb(s: HankelSymbol, scale: float, seed) -> HankelSymbol:
    """Add scale * (standard complex Gaussian) to every coefficient vector."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    rng = np.random.default_rng(seed)
    noise = (rng.standard_normal((s.m, s.dim)) + 1j * rng.standard_normal((s.m, s.dim))) / math.sqrt(2.0)
    return HankelSymbol(s.gamma + scale * noise, dim=s.dim)


def _ratio_in_band(ratio: float) -> bool:
    return (1.0 - RATIO_LOWER_TOL) <= ratio <= (RKT_BOUND + RATIO_SLACK)


def _run_restart(cfg: SearchConfig, restart: int):
    ss = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(restart,))
    seeds = ss.generate_state(cfg.steps + 1, dtype=np.uint64)
    records = []
    violations = []

    current = random_symbol(int(seeds[0]), cfg.m, cfg.d)
    report = verify_rkt(current, cfg.grid)
    current = current.scaled(1.0 / report.A)
    best_ratio = report.ratio
    best_symbol = current
    best_report = report
    records.append(StepRecord(restart=restart, step=0, ratio=report.ratio, accepted=True))
    if not _ratio_in_band(report.ratio):
        violations.append({"restart": restart, "step": 0, "ratio": report.ratio})

    scale = cfg.init_scale
    rejections = 0
    for step in range(1, cfg.steps + 1):
        proposal = perturb(current, scale, int(seeds[step]))
        if proposal.is_zero:
            records.append(StepRecord(restart=restart, step=step, ratio=best_ratio, accepted=False))
            rejections += 1
        else:
            rep = verify_rkt(proposal, cfg.grid)
            accepted = rep.ratio > best_ratio
            records.append(StepRecord(restart=restart, step=step, ratio=rep.ratio, accepted=accepted))
            if not _ratio_in_band(rep.ratio):
                violations.append({"restart": restart, "step": step, "ratio": rep.ratio})
            if accepted:
                current = proposal.scaled(1.0 / rep.A)
                best_ratio = rep.ratio
                best_symbol = current
                best_report = rep
                rejections = 0
            else:
                rejections += 1
        if rejections >= REJECTIONS_BEFORE_SHRINK:
            scale *= cfg.shrink
            rejections = 0
    return records, best_ratio, best_symbol, best_report, violations


def _max_workers() -> int:
    raw = os.environ.get("RKT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def search(cfg: SearchConfig) -> SearchTrace:
    """Hill-climb the ratio from ``cfg.restarts`` random starts.

    Deterministic in ``cfg.seed``: every restart owns its own RNG stream and
    the merge prefers the lowest restart index on ties.  ``RKT_THREADS`` caps
    how many restarts run concurrently.
    """
    workers = min(_max_workers(), cfg.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda r: _run_restart(cfg, r), range(cfg.restarts)))
    else:
        results = [_run_restart(cfg, r) for r in range(cfg.restarts)]

    records = []
    violations = []
    best = None
    for res in results:
        recs, ratio, symbol, report, viol = res
        records.extend(recs)
        violations.extend(viol)
        if best is None or ratio > best[0]:
            best = (ratio, symbol, report)
    return SearchTrace(
        config=cfg,
        steps=records,
        best_symbol=best[1],
        best_ratio=best[0],
        best_report=best[2],
        bound_violations=violations,
    )
