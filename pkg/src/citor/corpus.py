"""Bundled corpus: ring/module fixtures plus expected-output cases.

A case file lists operations (endpoint calls) together with expected JSON
fragments.  A fragment matches a report when every field it mentions is
present with an equal value; lists must match exactly.  Each expectation
carries a `source` annotation: "literature" for values quoted from the
underlying mathematics, "derived" for values computed independently and
frozen, "trivial" for self-consistency checks.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

SOURCES = ("literature", "derived", "trivial")


@dataclass
class CorpusCase:
    id: str
    ring: str  # path of the ring fixture, relative to the data root
    tags: list[str]
    operations: list[dict]
    path: Path = None

    @classmethod
    def from_file(cls, path: Path) -> "CorpusCase":
        data = json.loads(path.read_text())
        for key in ("id", "ring", "tags", "operations"):
            if key not in data:
                raise ValueError(f"corpus case {path.name}: missing field {key!r}")
        for op in data["operations"]:
            if op.get("source") not in SOURCES:
                raise ValueError(
                    f"corpus case {data['id']}: operation missing a valid 'source'"
                )
        return cls(data["id"], data["ring"], data["tags"], data["operations"], path)


@dataclass
class OpResult:
    op: dict
    status: int
    report: dict | None
    ok: bool
    diff: list[str] = field(default_factory=list)


@dataclass
class CaseResult:
    case: CorpusCase
    ops: list[OpResult]

    @property
    def passed(self) -> bool:
        return all(o.ok for o in self.ops)

    @property
    def red_alarm(self) -> bool:
        return any(_is_red(o.report) for o in self.ops if o.report)


def data_root() -> Path:
    return Path(__file__).resolve().parent / "corpus_data"


def load_json(rel: str) -> dict:
    return json.loads((data_root() / rel).read_text())


def list_cases() -> list[CorpusCase]:
    root = data_root() / "cases"
    return sorted(
        (CorpusCase.from_file(p) for p in root.glob("*.json")), key=lambda c: c.id
    )


def ring_fixtures() -> list[str]:
    root = data_root() / "rings"
    return sorted(p.relative_to(data_root()).as_posix() for p in root.glob("*.json"))


def module_fixtures(ring_name: str) -> list[str]:
    """Module fixture paths bundled for the given ring fixture stem."""
    root = data_root() / "modules" / ring_name
    return sorted(p.relative_to(data_root()).as_posix() for p in root.glob("*.json"))


def fragment_matches(expected, actual, trail="") -> list[str]:
    """Recursive containment check; returns a list of mismatch descriptions."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{trail or '.'}: expected object, got {type(actual).__name__}"]
        out = []
        for k, v in expected.items():
            if k not in actual:
                out.append(f"{trail}.{k}: missing")
            else:
                out.extend(fragment_matches(v, actual[k], f"{trail}.{k}"))
        return out
    if isinstance(expected, list):
        if expected != actual:
            return [f"{trail or '.'}: expected {expected!r}, got {actual!r}"]
        return []
    if expected != actual:
        return [f"{trail or '.'}: expected {expected!r}, got {actual!r}"]
    return []


def _is_red(report: dict) -> bool:
    hyps = report.get("hypotheses")
    concl = report.get("conclusion")
    if not isinstance(hyps, list) or not isinstance(concl, dict):
        return False
    return bool(hyps) and all(h.get("status") == "holds" for h in hyps) and concl.get(
        "status"
    ) == "refuted"


def build_payload(case: CorpusCase, op: dict) -> dict:
    ring = load_json(case.ring)
    payload = {"ring": ring}
    if "M" in op:
        payload["M"] = load_json(op["M"])
    if "N" in op:
        payload["N"] = load_json(op["N"])
    for key in ("bound", "e", "n", "c", "i", "theorem"):
        if key in op:
            payload[key] = op[key]
    return payload


def run_case(case: CorpusCase, post: Callable[[str, dict], tuple[int, dict]]) -> CaseResult:
    results = []
    for op in case.operations:
        payload = build_payload(case, op)
        status, report = post("/" + op["op"], payload)
        if status != 200:
            results.append(OpResult(op, status, report, False, [f"http {status}: {report}"]))
            continue
        diff = fragment_matches(op.get("expect", {}), report)
        results.append(OpResult(op, status, report, not diff, diff))
    return CaseResult(case, results)


def run_corpus(
    post, tags: list[str] | None = None, jobs: int = 4
) -> list[CaseResult]:
    cases = list_cases()
    if tags:
        cases = [c for c in cases if any(t in c.tags for t in tags)]
    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        results = list(pool.map(lambda c: run_case(c, post), cases))
    return sorted(results, key=lambda r: r.case.id)
