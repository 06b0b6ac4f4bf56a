"""Machine-readable run reports: JSON (schema 1) and CSV rendering.

Exact quantities are rendered as integer/rational strings, never as
floats; wall-clock timings are informational and excluded from the
determinism contract.  Verdicts are "pass", "fail", or "skipped(<reason>)".
"""

from __future__ import annotations

import hashlib
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .setcore import KSet, SetFamily

SCHEMA_VERSION = 1


def exact_str(value) -> str:
    """Render an exact quantity (int, Fraction, KSet, family) as a string."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, KSet):
        return "{" + ",".join(map(str, value.elements())) + "}"
    if isinstance(value, SetFamily):
        return f"family(n={value.n},k={value.k},size={len(value)})"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(exact_str(v) for v in value) + ")"
    return str(value)


def file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class CheckRecord:
    name: str
    verdict: str  # pass | fail | skipped(<reason>)
    witness: str | None = None
    values: dict[str, str] = field(default_factory=dict)
    time_s: float = 0.0

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict, "time_s": round(self.time_s, 6)}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.values:
            out["values"] = self.values
        return out


@dataclass
class Report:
    """One CLI run: command echo, input manifest, per-check verdicts."""

    command: list[str]
    inputs: list[dict] = field(default_factory=list)
    checks: list[CheckRecord] = field(default_factory=list)
    corpus: list[dict] = field(default_factory=list)
    started: float = field(default_factory=time.time)

    def add_input_file(self, path: str) -> None:
        self.inputs.append({"kind": "file", "path": str(path), "sha256": file_sha256(path)})

    def add_input_seed(self, seed: int, params: dict | None = None) -> None:
        entry: dict = {"kind": "seed", "seed": seed}
        if params:
            entry["params"] = {k: exact_str(v) for k, v in params.items()}
        self.inputs.append(entry)

    def check(
        self,
        name: str,
        ok: bool | None,
        witness=None,
        values: dict | None = None,
        time_s: float = 0.0,
        skip_reason: str | None = None,
    ) -> CheckRecord:
        if skip_reason is not None:
            verdict = f"skipped({skip_reason})"
        else:
            verdict = "pass" if ok else "fail"
        rec = CheckRecord(
            name=name,
            verdict=verdict,
            witness=None if witness is None else exact_str(witness),
            values={k: exact_str(v) for k, v in (values or {}).items()},
            time_s=time_s,
        )
        self.checks.append(rec)
        return rec

    @property
    def counts(self) -> dict[str, int]:
        c = {"pass": 0, "fail": 0, "skipped": 0}
        for rec in self.checks:
            key = rec.verdict if rec.verdict in c else "skipped"
            c[key] += 1
        return c

    @property
    def any_fail(self) -> bool:
        return self.counts["fail"] > 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "checks": [rec.to_json() for rec in self.checks],
            "corpus": self.corpus,
            "summary": self.counts,
            "wall_time_s": round(time.time() - self.started, 6),
        }

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"

    def render_csv(self) -> str:
        import csv

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["name", "verdict", "witness", "values", "time_s"])
        for rec in self.checks:
            packed = ";".join(f"{k}={v}" for k, v in rec.values.items())
            writer.writerow([rec.name, rec.verdict, rec.witness or "", packed, f"{rec.time_s:.6f}"])
        return buf.getvalue()


class Budget:
    """Wall-clock budget; sweeps consult it between instances and skip the rest."""

    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self.start = time.monotonic()

    def exhausted(self) -> bool:
        return self.seconds is not None and time.monotonic() - self.start > self.seconds
