"""Check results and machine-readable reports for the verification suites."""

from __future__ import annotations

import json
from typing import Iterable


class CheckResult:
    """Outcome of one named identity check.

    status is "pass" or "fail"; detail carries a human-readable
    explanation on failure (empty on success).  anchor names the
    identity the check verifies and stays stable across releases so
    external tooling can key on it.
    """

    __slots__ = ("suite", "check_id", "anchor", "status", "detail")

    def __init__(self, suite: str, check_id: str, anchor: str, status: str, detail: str = ""):
        assert status in ("pass", "fail")
        self.suite = suite
        self.check_id = check_id
        self.anchor = anchor
        self.status = status
        self.detail = detail

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "detail": self.detail,
        }

    def __repr__(self) -> str:
        return "<%s %s/%s%s>" % (
            self.status.upper(),
            self.suite,
            self.check_id,
            ": " + self.detail if self.detail else "",
        )


class Report:
    """Ordered collection of check results with JSON rendering."""

    def __init__(self, results: Iterable[CheckResult] | None = None):
        self.results: list[CheckResult] = list(results) if results else []

    def add(self, result: CheckResult):
        self.results.append(result)

    def extend(self, results: Iterable[CheckResult]):
        self.results.extend(results)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def counts(self) -> tuple[int, int]:
        bad = len(self.failures())
        return len(self.results) - bad, bad

    def to_json(self) -> str:
        """Deterministic JSON: results sorted by (suite, check_id)."""
        rows = sorted(self.results, key=lambda r: (r.suite, r.check_id))
        doc = {
            "ok": self.ok,
            "passed": self.counts()[0],
            "failed": self.counts()[1],
            "results": [r.as_dict() for r in rows],
        }
        return json.dumps(doc, indent=2, sort_keys=False)

    def to_text(self) -> str:
        rows = sorted(self.results, key=lambda r: (r.suite, r.check_id))
        lines = []
        for r in rows:
            mark = "ok  " if r.ok else "FAIL"
            line = "%s %s/%s" % (mark, r.suite, r.check_id)
            if r.detail:
                line += "  (%s)" % r.detail
            lines.append(line)
        passed, failed = self.counts()
        lines.append("%d passed, %d failed" % (passed, failed))
        return "\n".join(lines)
