"""Per-proof compression rows, their CSV form and corpus summaries.

The compression ratio counts resolutions only: factoring could be left
implicit in the calculus, so it is not charged.  Node counts are reported next
to it for transparency.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from statistics import fmean
from typing import Iterable, Optional

HEADER = ["proof", "algo", "res_before", "res_after", "nodes_before", "nodes_after", "ratio", "ms"]


@dataclass(frozen=True)
class CompressionReport:
    proof: str
    algo: str
    res_before: int
    res_after: int
    nodes_before: int
    nodes_after: int
    ms: float = 0.0

    @property
    def ratio(self) -> float:
        if self.res_before == 0:
            return 0.0
        return (self.res_before - self.res_after) / self.res_before

    @property
    def removed(self) -> int:
        return self.res_before - self.res_after

    def csv_row(self) -> list:
        return [
            self.proof,
            self.algo,
            str(self.res_before),
            str(self.res_after),
            str(self.nodes_before),
            str(self.nodes_after),
            f"{self.ratio:.6f}",
            f"{self.ms:.3f}",
        ]


@dataclass(frozen=True)
class Summary:
    proofs: int
    mean_ratio_all: float
    mean_ratio_compressed: float  # 0.0 when nothing was compressed
    fraction_compressed: float
    resolutions_removed: int

    def lines(self) -> list:
        return [
            ("proofs", str(self.proofs)),
            ("mean_ratio_all", f"{self.mean_ratio_all:.6f}"),
            ("mean_ratio_compressed", f"{self.mean_ratio_compressed:.6f}"),
            ("fraction_compressed", f"{self.fraction_compressed:.6f}"),
            ("resolutions_removed", str(self.resolutions_removed)),
        ]


def summarize(rows: Iterable[CompressionReport]) -> Summary:
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to summarize")
    ratios = [r.ratio for r in rows]
    compressed = [x for x in ratios if x > 0]
    return Summary(
        proofs=len(rows),
        mean_ratio_all=fmean(ratios),
        mean_ratio_compressed=fmean(compressed) if compressed else 0.0,
        fraction_compressed=len(compressed) / len(rows),
        resolutions_removed=sum(r.removed for r in rows),
    )


def to_csv(rows: Iterable[CompressionReport], summary: bool = True) -> str:
    """CSV text; summary lines follow the rows as ``# key,value`` comments."""
    rows = list(rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow(r.csv_row())
    if summary and rows:
        for k, v in summarize(rows).lines():
            buf.write(f"# {k},{v}\n")
    return buf.getvalue()


def from_csv(text: str) -> list:
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    reader = csv.reader(lines)
    head = next(reader, None)
    if head != HEADER:
        raise ValueError(f"unexpected CSV header {head!r}")
    out = []
    for rec in reader:
        out.append(
            CompressionReport(
                proof=rec[0],
                algo=rec[1],
                res_before=int(rec[2]),
                res_after=int(rec[3]),
                nodes_before=int(rec[4]),
                nodes_after=int(rec[5]),
                ms=float(rec[7]),
            )
        )
    return out


def format_summary(s: Summary, title: Optional[str] = None) -> str:
    out = [title] if title else []
    out += [f"{k:>22}: {v}" for k, v in s.lines()]
    return "\n".join(out)
