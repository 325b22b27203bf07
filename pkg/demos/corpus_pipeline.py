"""Generate a small random corpus and compress it with every setting.

Uses the command line entry point, the way one would from a shell:

    proofcomp gen --seed 0 --count 40 --out corpus
    proofcomp compress --algo best --out out --stats best.csv corpus/*.fop
    proofcomp stats best.csv

    python demos/corpus_pipeline.py [count] [jobs]
"""

import sys
import tempfile
from pathlib import Path

from proofcomp.cli import main
from proofcomp.gfolu import ALGORITHMS
from proofcomp.report import format_summary, from_csv, summarize

count = sys.argv[1] if len(sys.argv) > 1 else "40"
jobs = sys.argv[2] if len(sys.argv) > 2 else "4"

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    main(["gen", "-q", "--seed", "0", "--count", count, "--out", str(tmp / "corpus")])
    files = sorted(map(str, (tmp / "corpus").glob("*.fop")))
    for algo in ALGORITHMS:
        stats = tmp / f"{algo}.csv"
        rc = main(["compress", "-q", "--jobs", jobs, "--algo", algo, "--out", str(tmp / algo), "--stats", str(stats), *files])
        rows = from_csv(stats.read_text())
        ms = sum(r.ms for r in rows)
        print(format_summary(summarize(rows), title=f"{algo}  (exit {rc}, {ms / 1000:.1f} s total)"))
        print()
