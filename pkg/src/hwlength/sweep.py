"""Prime sweeps: one LengthReport per prime in [lo, hi), computed in parallel.

Results are emitted in ascending prime order whatever order the workers
finish in, so the persisted output does not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidInput, ResourceError
from .groebner import DEFAULT_STEP_CAP
from .lengths import REPORT_FIELDS, LengthReport, length_at_prime, validate_input
from .mpoly import DEFAULT_MEMORY_BUDGET, MultiPolyZ, parse_poly

log = logging.getLogger(__name__)

_INT_FIELDS = {"prime", "h", "stable_rank", "quasilength", "d_module_length",
               "unit_f_length", "char0_ng_length"}


def primes():
    """Unbounded incremental sieve of Eratosthenes."""
    composites: Dict[int, int] = {}
    yield 2
    n = 3
    while True:
        step = composites.pop(n, None)
        if step is None:
            yield n
            composites[n * n] = 2 * n
        else:
            m = n + step
            while m in composites:
                m += step
            composites[m] = step
        n += 2


def primes_in_range(lo: int, hi: int) -> Iterator[int]:
    for p in primes():
        if p >= hi:
            return
        if p >= lo:
            yield p


@dataclass
class SweepConfig:
    poly: str
    variables: Sequence[str]
    lo: int
    hi: int
    jobs: int = 1
    out: Optional[str] = None
    fmt: str = "jsonl"
    include_bad: bool = False
    budget: int = DEFAULT_MEMORY_BUDGET
    step_cap: int = DEFAULT_STEP_CAP

    def validate(self) -> MultiPolyZ:
        if not 2 < self.lo <= self.hi:
            raise InvalidInput(f"prime range must satisfy 2 < lo <= hi, got [{self.lo}, {self.hi})")
        if self.jobs < 1:
            raise InvalidInput("worker count must be at least 1")
        if self.fmt not in ("jsonl", "csv"):
            raise InvalidInput(f"unknown output format {self.fmt!r}")
        g = parse_poly(self.poly, self.variables)
        validate_input(g)
        return g


@dataclass
class SweepSummary:
    lo: int
    hi: int
    ordinary: int = 0
    nilpotent: int = 0
    intermediate: int = 0
    bad: int = 0
    wall_time_ms: float = 0.0

    @property
    def good(self) -> int:
        return self.ordinary + self.nilpotent + self.intermediate

    @property
    def ordinary_density(self) -> Optional[float]:
        return self.ordinary / self.good if self.good else None

    def add(self, r: LengthReport) -> None:
        if not r.valid:
            self.bad += 1
        elif r.classification == "Ordinary":
            self.ordinary += 1
        elif r.classification == "Nilpotent":
            self.nilpotent += 1
        else:
            self.intermediate += 1

    def counts(self) -> Tuple[int, int, int, int]:
        return self.ordinary, self.nilpotent, self.intermediate, self.bad

    def to_dict(self) -> dict:
        return {
            "range": [self.lo, self.hi],
            "primes": self.good + self.bad,
            "ordinary": self.ordinary,
            "nilpotent": self.nilpotent,
            "intermediate": self.intermediate,
            "bad": self.bad,
            "ordinary_density": self.ordinary_density,
            "wall_time_ms": self.wall_time_ms,
            "note": "assuming good reduction at every Valid prime",
        }


def summarize(reports: Iterable[LengthReport], lo: int, hi: int) -> SweepSummary:
    s = SweepSummary(lo, hi)
    for r in reports:
        s.add(r)
    return s


def _task(args) -> dict:
    nvars, terms, p, budget, step_cap = args
    g = MultiPolyZ(nvars, terms)
    try:
        return length_at_prime(g, p, budget=budget, step_cap=step_cap).to_dict()
    except ResourceError as exc:
        log.warning("p=%d aborted: %s", p, exc)
        return LengthReport(p, "Bad", "ResourceCap").to_dict()


def iter_reports(cfg: SweepConfig) -> Iterator[LengthReport]:
    """Reports for every prime in range, ascending, using ``cfg.jobs`` processes."""
    g = cfg.validate()
    tasks = ((g.nvars, dict(g.terms), p, cfg.budget, cfg.step_cap)
             for p in primes_in_range(cfg.lo, cfg.hi))
    if cfg.jobs == 1:
        for t in tasks:
            yield LengthReport.from_dict(_task(t))
        return
    window = 4 * cfg.jobs
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        pending = {}
        nxt_submit = nxt_emit = 0
        done: Dict[int, dict] = {}
        exhausted = False
        while True:
            while not exhausted and len(pending) + len(done) < window:
                t = next(tasks, None)
                if t is None:
                    exhausted = True
                    break
                pending[nxt_submit] = pool.submit(_task, t)
                nxt_submit += 1
            if nxt_emit == nxt_submit and exhausted:
                return
            # block on the oldest outstanding task; later ones wait in the buffer
            if nxt_emit in pending:
                done[nxt_emit] = pending.pop(nxt_emit).result()
            for k in [k for k, f in pending.items() if f.done()]:
                done[k] = pending.pop(k).result()
            while nxt_emit in done:
                yield LengthReport.from_dict(done.pop(nxt_emit))
                nxt_emit += 1


def run_sweep(cfg: SweepConfig) -> Tuple[List[LengthReport], SweepSummary]:
    start = time.perf_counter()
    reports = list(iter_reports(cfg))
    summary = summarize(reports, cfg.lo, cfg.hi)
    if cfg.out:
        kept = reports if cfg.include_bad else [r for r in reports if r.valid]
        persist(kept, cfg.fmt, cfg.out)
    summary.wall_time_ms = round((time.perf_counter() - start) * 1000.0, 3)
    return reports, summary


# ---------------------------------------------------------------------------
# persistence


def _csv_cell(v) -> str:
    return "" if v is None else str(v)


def format_reports(reports: Iterable[LengthReport], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(r.to_dict()) + "\n" for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_FIELDS)
        for r in reports:
            d = r.to_dict()
            w.writerow([_csv_cell(d[k]) for k in REPORT_FIELDS])
        return buf.getvalue()
    raise InvalidInput(f"unknown output format {fmt!r}")


def persist(reports: Iterable[LengthReport], fmt: str, path: str) -> None:
    text = format_reports(reports, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parse_reports(text: str, fmt: str) -> List[LengthReport]:
    if fmt == "jsonl":
        return [LengthReport.from_dict(json.loads(ln)) for ln in text.splitlines() if ln.strip()]
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        out = []
        for row in rows:
            d = {}
            for k in REPORT_FIELDS:
                v = row[k]
                if v == "":
                    d[k] = None
                elif k in _INT_FIELDS:
                    d[k] = int(v)
                elif k == "wall_time_ms":
                    d[k] = float(v)
                else:
                    d[k] = v
            out.append(LengthReport.from_dict(d))
        return out
    raise InvalidInput(f"unknown output format {fmt!r}")


def read_reports(path: str, fmt: str) -> List[LengthReport]:
    with open(path, encoding="utf-8") as fh:
        return parse_reports(fh.read(), fmt)
