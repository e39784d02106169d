"""Versioned JSON reports and CSV summaries for verifier runs."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional

SCHEMA_VERSION = 1

CSV_FIELDS = [
    "theorem",
    "params",
    "corpus",
    "raw_size",
    "corpus_size",
    "passes",
    "nontrivial",
    "violations",
    "skipped",
    "seed",
    "wall_time_s",
]


@dataclass
class TheoremReport:
    theorem: str
    params: dict
    corpus: dict
    raw_size: int
    filtered_out: dict[str, int]
    passes: int
    nontrivial: int
    violations: list[dict]
    skipped: list[dict]
    seed: Optional[int]
    config: dict
    timing: dict = field(default_factory=dict)

    @property
    def corpus_size(self) -> int:
        return self.raw_size - sum(self.filtered_out.values())

    @property
    def instances_checked(self) -> int:
        return self.passes + len(self.violations) + len(self.skipped)

    @property
    def exit_code(self) -> int:
        if self.violations:
            return 1
        if self.skipped:
            return 2
        return 0

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "theorem": self.theorem,
            "params": self.params,
            "corpus": {
                **self.corpus,
                "raw_size": self.raw_size,
                "filtered_out": dict(sorted(self.filtered_out.items())),
                "size": self.corpus_size,
            },
            "instances_checked": self.instances_checked,
            "passes": self.passes,
            "nontrivial": self.nontrivial,
            "vacuous": self.passes - self.nontrivial,
            "violations": self.violations,
            "skipped": self.skipped,
            "seed": self.seed,
            "config": self.config,
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, ensure_ascii=False)

    def csv_row(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "params": ";".join(f"{k}={v}" for k, v in sorted(self.params.items())),
            "corpus": self.corpus.get("source"),
            "raw_size": self.raw_size,
            "corpus_size": self.corpus_size,
            "passes": self.passes,
            "nontrivial": self.nontrivial,
            "violations": len(self.violations),
            "skipped": len(self.skipped),
            "seed": self.seed,
            "wall_time_s": self.timing.get("wall_time_s"),
        }

    def summary_line(self) -> str:
        status = {0: "PASS", 1: "FAIL", 2: "INCOMPLETE"}[self.exit_code]
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return (
            f"{status} {self.theorem}({params}): corpus {self.corpus_size} "
            f"[{self.nontrivial} nontrivial], {len(self.violations)} violations, "
            f"{len(self.skipped)} skipped"
        )


def reports_to_csv(reports: list[TheoremReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def canonical_json(report: TheoremReport) -> str:
    """Report text with the timing field removed, for byte comparisons."""
    return report.to_json(include_timing=False)
