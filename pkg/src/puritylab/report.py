"""Check reports and canonical JSON serialization.

Canonical documents are fully deterministic: sorted keys, compact
separators, ASCII only, no floats and no wall-clock data.  Timing lives next
to the results in memory and on the console but never inside the canonical
payload, so reports are byte-identical across runs and thread counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"


@dataclass
class CheckReport:
    verdict: str
    method: str
    witness: dict | None = None
    bounds: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "witness": self.witness,
            "bounds": self.bounds,
        }


def _assert_canonical(obj, path="$"):
    """Reject floats and non-JSON types before they reach a report."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return
    if isinstance(obj, float):
        raise TypeError(f"float at {path} would break canonical reports")
    if isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _assert_canonical(v, f"{path}[{i}]")
        return
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"non-string key at {path}: {k!r}")
            _assert_canonical(v, f"{path}.{k}")
        return
    raise TypeError(f"non-canonical value at {path}: {type(obj).__name__}")


def canonical_json(payload: dict) -> str:
    _assert_canonical(payload)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def emit_report(payload: dict, path: str) -> None:
    """Write a canonical JSON document; byte-identical for identical payloads."""
    text = canonical_json(payload)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)


def merge_verdicts(verdicts) -> str:
    """Suite-level aggregation: any fail wins, then any undecided."""
    verdicts = list(verdicts)
    if any(v == FAIL for v in verdicts):
        return FAIL
    if any(v == UNDECIDED for v in verdicts):
        return UNDECIDED
    return PASS
