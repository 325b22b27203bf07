"""Command-line driver.

Exit codes: 0 on success, 1 if any file failed, 2 on usage errors (argparse).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path
from typing import Optional

from .forpi import STRICT, SUBSUMING
from .gfolu import ALGORITHMS, compose, run_algorithm
from .proof import metrics
from .proofio import ParseError, ValidationError, read_proof, to_dot, write_proof
from .randgen import GenConfig, gen_proof
from .report import CompressionReport, format_summary, from_csv, summarize, to_csv
from .verify import check_compression, verify


def _out_path(src: Path, algo: str, out_dir: Optional[str]) -> Path:
    stem = src.name[: -len(".fop")] if src.name.endswith(".fop") else src.name
    name = f"{stem}.{algo}.fop"
    return Path(out_dir) / name if out_dir else src.with_name(name)


def compress_file(path: str, algo: str, out_dir: Optional[str], containment: str, fix_factoring: bool):
    """Compress one file.  Returns ``(report or None, error message or None)``."""
    src = Path(path)
    t0 = time.perf_counter()
    try:
        p = read_proof(src)
    except (OSError, ParseError, ValidationError) as e:
        return None, f"{path}: {e}"
    q = run_algorithm(p, algo, containment, fix_factoring)
    ms = (time.perf_counter() - t0) * 1000.0
    check = check_compression(p, q)
    if not check.valid:
        return None, f"{path}: output rejected by the checker\n{check.describe()}"
    before, after = metrics(p), metrics(q)
    if algo == "best":
        want = min(
            metrics(compose(p, o, containment, fix_factoring)).resolution_count
            for o in ("forpi-gfolu", "gfolu-forpi")
        )
        if after.resolution_count != want:
            return None, f"{path}: best kept {after.resolution_count} resolutions, expected {want}"
    try:
        write_proof(q, _out_path(src, algo, out_dir))
    except OSError as e:
        return None, f"{path}: {e}"
    row = CompressionReport(
        proof=src.name,
        algo=algo,
        res_before=before.resolution_count,
        res_after=after.resolution_count,
        nodes_before=before.node_count,
        nodes_after=after.node_count,
        ms=ms,
    )
    return row, None


def cmd_compress(args) -> int:
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    fix_factoring = args.fix_factoring == "on"
    job = (args.algo, args.out, args.forpi_containment, fix_factoring)
    if args.jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(compress_file, args.files, *[[x] * len(args.files) for x in job]))
    else:
        results = [compress_file(f, *job) for f in args.files]
    rows, failed = [], 0
    for row, err in results:
        if err:
            failed += 1
            print(err, file=sys.stderr)
        else:
            rows.append(row)
            if not args.quiet:
                print(
                    f"{row.proof}: {row.res_before} -> {row.res_after} resolutions "
                    f"(ratio {row.ratio:.3f}, {row.ms:.1f} ms)"
                )
    if args.stats and rows:
        Path(args.stats).write_text(to_csv(rows), encoding="utf-8")
    if rows and len(rows) > 1 and not args.quiet:
        print(format_summary(summarize(rows), title=f"summary ({args.algo})"))
    return 1 if failed else 0


def cmd_gen(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    overrides = {
        f.name: getattr(args, f.name)
        for f in fields(GenConfig)
        if f.name != "seed" and getattr(args, f.name, None) is not None
    }
    for seed in range(args.seed, args.seed + args.count):
        try:
            cfg = GenConfig(seed=seed, **overrides)
        except ValueError as e:
            print(f"gen: {e}", file=sys.stderr)
            return 2
        p = gen_proof(cfg)
        path = Path(args.out) / f"{args.prefix}{seed}.fop"
        write_proof(p, path)
        if not args.quiet:
            m = metrics(p)
            print(f"{path}: {m.resolution_count} resolutions, {m.node_count} nodes, height {m.height}")
    return 0


def cmd_verify(args) -> int:
    try:
        p = read_proof(args.file)
        orig = read_proof(args.against) if args.against else None
    except (OSError, ParseError, ValidationError) as e:
        print(f"verify: {e}", file=sys.stderr)
        return 1
    report = check_compression(orig, p) if orig is not None else verify(p)
    print(f"{args.file}: {'valid' if report.valid else 'INVALID'}")
    if not report.valid or args.against:
        print(report.describe())
    return 0 if report.valid else 1


def cmd_dot(args) -> int:
    try:
        p = read_proof(args.file)
    except (OSError, ParseError, ValidationError) as e:
        print(f"dot: {e}", file=sys.stderr)
        return 1
    text = to_dot(p, edge_labels=args.edge_labels)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_stats(args) -> int:
    rows = []
    try:
        for f in args.files:
            rows += from_csv(Path(f).read_text(encoding="utf-8"))
    except (OSError, ValueError, IndexError) as e:
        print(f"stats: {e}", file=sys.stderr)
        return 1
    if not rows:
        print("stats: no rows", file=sys.stderr)
        return 1
    by_algo: dict = {}
    for r in rows:
        by_algo.setdefault(r.algo, []).append(r)
    for algo, rs in by_algo.items():
        print(format_summary(summarize(rs), title=algo))
    return 0


def _probability(s: str) -> float:
    v = float(s)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{s} is not in [0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="proofcomp", description="Compression of first-order resolution proofs.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="compress proof files")
    c.add_argument("files", nargs="+")
    c.add_argument("--algo", choices=ALGORITHMS, default="best")
    c.add_argument("--out", help="directory for the compressed proofs (default: next to the input)")
    c.add_argument("--stats", help="write per-proof rows and a summary to this CSV file")
    c.add_argument("--forpi-containment", choices=(SUBSUMING, STRICT), default=SUBSUMING)
    c.add_argument("--fix-factoring", choices=("on", "off"), default="on")
    c.add_argument("--jobs", type=int, default=1, help="worker processes")
    c.add_argument("-q", "--quiet", action="store_true")
    c.set_defaults(run=cmd_compress)

    g = sub.add_parser("gen", help="generate random refutations")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--out", default=".")
    g.add_argument("--prefix", default="rand")
    g.add_argument("--min-height", dest="min_height", type=int)
    g.add_argument("--max-arity", dest="max_arity", type=int)
    g.add_argument("--timeout-ms", dest="timeout_ms", type=int)
    for f in fields(GenConfig):
        if f.name.startswith("p_"):
            g.add_argument("--" + f.name.replace("_", "-"), dest=f.name, type=_probability)
    g.add_argument("-q", "--quiet", action="store_true")
    g.set_defaults(run=cmd_gen)

    v = sub.add_parser("verify", help="check a proof, optionally as a compression of another")
    v.add_argument("file")
    v.add_argument("--against", help="original proof")
    v.set_defaults(run=cmd_verify)

    d = sub.add_parser("dot", help="Graphviz rendering of a proof")
    d.add_argument("file")
    d.add_argument("--edge-labels", action="store_true")
    d.add_argument("-o", "--output")
    d.set_defaults(run=cmd_dot)

    s = sub.add_parser("stats", help="summaries of CSV files written by compress --stats")
    s.add_argument("files", nargs="+")
    s.set_defaults(run=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        build_parser().error("--jobs must be at least 1")
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())
