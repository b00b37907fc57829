"""Experiment harness: collection timing, CSP blow-up and LBA campaigns.

Reports are flat rows ``(group, hirsch, metric, value, unit, seed, trials)``.
Rows whose unit is a time unit are wall-clock measurements; everything else
is a pure function of the config and seed.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import platform as _platform
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .attacks.lba import LbaConfig, lba
from .core.presentation import collect, conjugate, random_element, random_normal_form, random_word
from .oracles import SearchBudget, csp_enumerate
from .platform import resolve
from .protocols.aag import AagParams, aag_run
from .rng import Rng

log = logging.getLogger(__name__)

SCHEMA = "pcw-report v1"
COLUMNS = ("group", "hirsch", "metric", "value", "unit", "seed", "trials")
TIME_UNITS = {"s", "ms", "us"}


@dataclass
class ExperimentConfig:
    groups: tuple = ("heisenberg",)
    trials: int = 100
    word_len: tuple = (1, 64)
    seed: int = 0
    # csp
    conj_len: int = 6
    pairs: int = 2
    a_len: int = 8
    max_nodes: int = 100_000
    max_radius: int = 10
    # lba
    aag: AagParams = AagParams(5, 5, 2, 4, 4)
    memory: int = 2
    max_iterations: int = 10_000
    time_limit: float | None = 30.0  # seconds per trial, cooperative

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if isinstance(self.groups, str):
            self.groups = (self.groups,)
        self.groups = tuple(self.groups)
        self.word_len = tuple(self.word_len)


@dataclass(frozen=True)
class Row:
    group: str
    hirsch: int
    metric: str
    value: float
    unit: str
    seed: int
    trials: int

    @property
    def timing(self) -> bool:
        return self.unit in TIME_UNITS


@dataclass
class ExperimentReport:
    rows: list = field(default_factory=list)
    seed: int = 0
    environment: dict = field(default_factory=dict)

    def extend(self, rows):
        self.rows.extend(rows)
        return self

    def get(self, group: str, metric: str):
        for r in self.rows:
            if r.group == group and r.metric == metric:
                return r.value
        raise KeyError((group, metric))


def environment() -> dict:
    return {"python": sys.version.split()[0], "implementation": _platform.python_implementation()}


def _groups(cfg):
    for spec in cfg.groups:
        pg = resolve(spec, check=False) if isinstance(spec, str) else spec
        yield pg


def bench_collection(cfg: ExperimentConfig) -> list[Row]:
    rows = []
    for pg in _groups(cfg):
        p = pg.presentation
        rng = Rng(cfg.seed).spawn(f"collect:{pg.name}")
        words = [random_word(p, *cfg.word_len, rng) for _ in range(cfg.trials)]
        times = []
        for w in words:
            t0 = time.perf_counter()
            collect(p, w)
            times.append((time.perf_counter() - t0) * 1e3)
        h = pg.hirsch
        rows += [
            Row(pg.name, h, "collect_mean", statistics.fmean(times), "ms", cfg.seed, cfg.trials),
            Row(pg.name, h, "collect_median", statistics.median(times), "ms", cfg.seed, cfg.trials),
            Row(pg.name, h, "word_len_mean", statistics.fmean(len(w) for w in words), "letters", cfg.seed, cfg.trials),
        ]
        log.info("collection %s: mean %.3f ms", pg.name, rows[-3].value)
    return rows


def plant_csp(pg, cfg: ExperimentConfig, rng):
    """Planted instance: conjugator of normal-form length ``conj_len`` and
    ``pairs`` reduced public words of ``a_len`` letters."""
    p = pg.presentation
    c = random_normal_form(p, cfg.conj_len, rng)
    pairs = []
    for _ in range(cfg.pairs):
        a = random_element(p, cfg.a_len, cfg.a_len, rng, reduced=True)[1]
        pairs.append((a, conjugate(a, c)))
    return c, pairs


def bench_csp(cfg: ExperimentConfig) -> list[Row]:
    rows = []
    budget = SearchBudget(cfg.max_nodes, cfg.max_radius)
    for pg in _groups(cfg):
        rng = Rng(cfg.seed).spawn(f"csp:{pg.name}")
        solved = nodes = 0
        times = []
        for _ in range(cfg.trials):
            _, pairs = plant_csp(pg, cfg, rng)
            t0 = time.perf_counter()
            res = csp_enumerate(pg, pairs, budget)
            times.append(time.perf_counter() - t0)
            solved += res.found
            nodes += res.nodes_explored
            log.info("csp %s: %s radius %d nodes %d", pg.name, res.outcome, res.radius, res.nodes_explored)
        h, n = pg.hirsch, cfg.trials
        rows += [
            Row(pg.name, h, "csp_solved", solved, "count", cfg.seed, n),
            Row(pg.name, h, "csp_exhausted", n - solved, "count", cfg.seed, n),
            Row(pg.name, h, "csp_exhaust_rate", (n - solved) / n, "fraction", cfg.seed, n),
            Row(pg.name, h, "csp_nodes_mean", nodes / n, "nodes", cfg.seed, n),
            Row(pg.name, h, "csp_time_mean", statistics.fmean(times), "s", cfg.seed, n),
        ]
    return rows


def lba_campaign(cfg: ExperimentConfig) -> list[Row]:
    """AAG sessions seeded ``seed .. seed+trials-1`` per group, each attacked by LBA."""
    rows = []
    lcfg = LbaConfig(cfg.memory, cfg.max_iterations, cfg.time_limit)
    for pg in _groups(cfg):
        wins = unsound = 0
        for s in range(cfg.seed, cfg.seed + cfg.trials):
            t = aag_run(pg, cfg.aag, Rng(s))
            res = lba(t, lcfg)
            if res.success:
                # lba itself re-verifies against the public tuple; also check the key
                if res.verified and res.key == t.key_alice:
                    wins += 1
                else:
                    unsound += 1
        h, n = pg.hirsch, cfg.trials
        rows += [
            Row(pg.name, h, "lba_successes", wins, "count", cfg.seed, n),
            Row(pg.name, h, "lba_success_rate", wins / n, "fraction", cfg.seed, n),
            Row(pg.name, h, "lba_unsound", unsound, "count", cfg.seed, n),
        ]
        log.info("lba %s: %d/%d", pg.name, wins, n)
    return rows


def _value(v):
    return int(v) if float(v).is_integer() else float(v)


def report_dict(report: ExperimentReport, zero_timing: bool = False) -> dict:
    rows = []
    for r in report.rows:
        d = asdict(r)
        d["value"] = 0 if (zero_timing and r.timing) else _value(r.value)
        rows.append(d)
    return {"schema": SCHEMA, "seed": report.seed, "environment": report.environment, "rows": rows}


def to_csv(report: ExperimentReport, zero_timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for d in report_dict(report, zero_timing)["rows"]:
        w.writerow([d[c] for c in COLUMNS])
    return buf.getvalue()


def to_json(report: ExperimentReport, zero_timing: bool = False) -> str:
    return json.dumps(report_dict(report, zero_timing), indent=2) + "\n"


def load_report(text: str) -> ExperimentReport:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    rows = [Row(**{c: d[c] for c in COLUMNS}) for d in data["rows"]]
    return ExperimentReport(rows, data.get("seed", 0), data.get("environment", {}))


def emit_report(report: ExperimentReport, fmt: str = "csv", out=None, zero_timing: bool = False) -> str:
    """Render ``report`` as csv or json; write to ``out`` when given."""
    if fmt == "csv":
        text = to_csv(report, zero_timing)
    elif fmt == "json":
        text = to_json(report, zero_timing)
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    if out is not None:
        Path(out).write_text(text)
    return text
