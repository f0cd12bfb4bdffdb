"""Sample accumulation, empirical CDFs and CSV emission."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .scheduler import DropResult

log = logging.getLogger("relaysim")

SINR_DB_DIRECT = "sinr_db_direct"
SINR_DB_INDIRECT = "sinr_db_indirect"
SE_INDIRECT = "se_indirect"
SECTOR_THROUGHPUT = "sector_throughput"
INDIRECT_FRACTION = "indirect_fraction"


class MetricStore:
    """Per-metric sample accumulator; merging is associative and
    order-independent for the emitted CDFs (samples are sorted on output)."""

    def __init__(self):
        self._samples: dict[str, list[np.ndarray]] = defaultdict(list)

    def add(self, metric: str, values):
        arr = np.atleast_1d(np.asarray(values, dtype=float))
        if arr.size:
            self._samples[metric].append(arr)

    def merge(self, other: "MetricStore"):
        for k, chunks in other._samples.items():
            self._samples[k].extend(chunks)

    def metrics(self) -> list[str]:
        return sorted(self._samples.keys())

    def samples(self, metric: str) -> np.ndarray:
        chunks = self._samples.get(metric, [])
        if not chunks:
            return np.zeros(0)
        return np.concatenate(chunks)

    def count(self, metric: str) -> int:
        return int(self.samples(metric).size)

    def add_drop(self, res: DropResult):
        """Fold one drop's per-UE / per-sector samples into the store."""
        ind = res.is_indirect
        sched = res.ue_sched_count > 0
        with np.errstate(divide="ignore"):
            sinr_db = 10.0 * np.log10(np.maximum(res.ue_sinr_mean_lin, 1e-30))
        self.add(SINR_DB_DIRECT, sinr_db[~ind & sched])
        self.add(SINR_DB_INDIRECT, sinr_db[ind & sched])
        self.add(SE_INDIRECT, res.ue_rate_mean[ind & sched])
        self.add(SECTOR_THROUGHPUT, res.sector_throughput)
        self.add(INDIRECT_FRACTION, [res.indirect_fraction])


@dataclass
class CdfSeries:
    name: str
    values: np.ndarray
    probs: np.ndarray

    @classmethod
    def from_samples(cls, name: str, samples) -> "CdfSeries":
        v = np.sort(np.asarray(samples, dtype=float))
        n = len(v)
        p = np.arange(1, n + 1) / n if n else np.zeros(0)
        return cls(name, v, p)

    @property
    def count(self) -> int:
        return len(self.values)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def emit_cdfs(stores: dict[str, MetricStore], out_dir) -> list[Path]:
    """Write one value,cum_prob CSV per (case, metric) plus summary.csv.

    Empty metrics are skipped with a log note. Returns the written paths.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    summary_rows = []
    for case in sorted(stores.keys()):
        store = stores[case]
        for metric in store.metrics():
            samples = store.samples(metric)
            if samples.size == 0:
                log.info("no samples for %s/%s, file omitted", case, metric)
                continue
            series = CdfSeries.from_samples(metric, samples)
            path = out / f"{case}__{metric}.csv"
            lines = ["value,cum_prob"]
            lines += [f"{_fmt(v)},{_fmt(p)}" for v, p in zip(series.values, series.probs)]
            path.write_text("\n".join(lines) + "\n")
            written.append(path)
            summary_rows.append((
                case, metric, series.count,
                float(np.mean(samples)),
                float(np.percentile(samples, 5)),
                float(np.median(samples)),
                float(np.percentile(samples, 95)),
            ))
    if summary_rows:
        path = out / "summary.csv"
        lines = ["case,metric,count,mean,p5,median,p95"]
        for case, metric, n, mean, p5, med, p95 in summary_rows:
            lines.append(f"{case},{metric},{n},{_fmt(mean)},{_fmt(p5)},{_fmt(med)},{_fmt(p95)}")
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written
