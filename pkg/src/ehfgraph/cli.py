"""Command line: ``ehfgraph analyze | verify | enumerate``.

Exit status: 0 all pass, 1 violations, 2 only resource skips, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import GraphError
from .graph import encode_graph6, read_graph6_lines
from .harness.corpus import MAX_ENUMERATION_N, CorpusSpec, enumerate_labeled
from .harness.lemma_sampler import LemmaSource
from .harness.report import reports_to_csv
from .harness.verify import THEOREMS, Config, analyze, run_verifier

EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ehfgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_an = sub.add_parser("analyze", help="structural invariants of each graph in a graph6 file")
    p_an.add_argument("g6file")
    p_an.add_argument("--json", dest="json_out")
    p_an.add_argument("--budget", type=int)
    p_an.add_argument("--config")

    p_ver = sub.add_parser("verify", help="check a theorem over a corpus")
    p_ver.add_argument("theorem", choices=sorted(THEOREMS))
    p_ver.add_argument("--s", type=int)
    p_ver.add_argument("--t", type=int)
    p_ver.add_argument("--k", type=int)
    p_ver.add_argument("--p", type=int)
    src = p_ver.add_mutually_exclusive_group()
    src.add_argument("--corpus", help="graph6 file, one graph per line")
    src.add_argument("--random", type=int, metavar="COUNT", help="seeded random sample of COUNT graphs")
    p_ver.add_argument("--max-n", type=int, help="builtin enumeration bound, or sample size bound")
    p_ver.add_argument("--min-n", type=int, default=None)
    p_ver.add_argument("--samples", type=int, default=10_000, help="L22 instance count")
    p_ver.add_argument("--connected", action="store_true", help="keep connected graphs only")
    p_ver.add_argument("--ehf", action="store_true", help="keep even-hole-free graphs only")
    p_ver.add_argument("--chi-range", type=_range, metavar="LO:HI")
    p_ver.add_argument("--omega-range", type=_range, metavar="LO:HI")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.add_argument("--budget", type=int, help="step budget for hole and minor searches")
    p_ver.add_argument("--config", help="JSON file with budget/limit overrides")
    p_ver.add_argument("--json", dest="json_out")
    p_ver.add_argument("--csv", dest="csv_out")

    p_en = sub.add_parser("enumerate", help="write all labeled graphs as graph6")
    p_en.add_argument("--max-n", type=int, required=True)
    p_en.add_argument("--min-n", type=int, default=1)
    p_en.add_argument("-o", "--output", required=True)
    return parser


def _config(args) -> Config:
    cfg = Config.from_file(args.config) if args.config else Config()
    return cfg.with_budget(args.budget)


def _source(args):
    if args.theorem == "L22":
        return LemmaSource(count=args.samples, seed=args.seed, max_n=args.max_n or 10, min_n=args.min_n or 4)
    filters = dict(
        connected_only=args.connected,
        ehf_only=args.ehf,
        chi_range=args.chi_range,
        omega_range=args.omega_range,
    )
    if args.corpus:
        return CorpusSpec(source="graph6", path=args.corpus, **filters)
    if args.random is not None:
        if args.max_n is None:
            raise GraphError("--random needs --max-n")
        return CorpusSpec(source="random", count=args.random, seed=args.seed,
                          max_n=args.max_n, min_n=args.min_n or 1, **filters)
    if args.max_n is None:
        raise GraphError("choose a corpus: --max-n N, --corpus FILE or --random COUNT")
    return CorpusSpec(source="builtin", max_n=args.max_n, min_n=args.min_n or 1, **filters)


def _cmd_verify(args) -> int:
    report = run_verifier(
        args.theorem,
        _source(args),
        {"s": args.s, "t": args.t, "k": args.k, "p": args.p},
        config=_config(args),
        seed=args.seed,
        jobs=args.jobs,
    )
    if args.json_out:
        Path(args.json_out).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.csv_out:
        Path(args.csv_out).write_text(reports_to_csv([report]), encoding="utf-8")
    print(report.summary_line())
    for v in report.violations[:10]:
        print(f"  violation #{v['index']} {v['graph6']}: {v['detail']}")
    return report.exit_code


def _cmd_analyze(args) -> int:
    cfg = _config(args)
    with open(args.g6file, encoding="ascii") as fh:
        records = [analyze(g, cfg) for g in read_graph6_lines(fh)]
    text = "\n".join(json.dumps(r, sort_keys=True) for r in records)
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(records, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    else:
        print(text)
    skipped = any(isinstance(v, dict) and "skipped" in v for r in records for v in r.values())
    return 2 if skipped else 0


def _cmd_enumerate(args) -> int:
    if args.max_n > MAX_ENUMERATION_N:
        raise GraphError(f"--max-n is limited to {MAX_ENUMERATION_N}")
    count = 0
    with open(args.output, "w", encoding="ascii") as fh:
        for g in enumerate_labeled(args.max_n, args.min_n):
            fh.write(encode_graph6(g))
            fh.write("\n")
            count += 1
    print(f"wrote {count} graphs to {args.output}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"verify": _cmd_verify, "analyze": _cmd_analyze, "enumerate": _cmd_enumerate}[args.command]
    try:
        return handler(args)
    except (GraphError, OSError, json.JSONDecodeError) as exc:
        print(f"ehfgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
