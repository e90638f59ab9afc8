"""Campaign configuration and the integrity-checked report container.

Reports are canonical JSON artifacts: a run is reproducible from the
embedded config, the checksum covers everything except wall time, and
loading rejects unknown fields so schema drift is caught instead of
silently ignored.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ReportError
from .exponents import ExtExponent

SCHEMA_VERSION = "1"

SUITE_IDS = (
    "ftvn",
    "holder",
    "gen-holder",
    "lyapunov-norms",
    "quadrep-norms",
    "positive-norms",
    "theorem1",
    "theorem2",
    "corollary4",
    "three-lines",
    "cp-table",
    "clarkson",
)

DEFAULT_GRID = (1.0, 4.0 / 3.0, 2.0, 3.0, 4.0, math.inf)

_CONFIG_KEYS = (
    "suite", "algebra", "trials", "seed", "grid",
    "restarts", "max_iters", "tol", "starts", "n",
)


def exponent_to_json(value: float):
    return "inf" if math.isinf(value) else value


def exponent_from_json(value) -> float:
    return ExtExponent.coerce(value).value


@dataclass(frozen=True)
class CampaignConfig:
    """Everything needed to reproduce one suite run."""

    suite: str
    algebra: str = "sym:3"
    trials: int = 100
    seed: int = 0
    grid: tuple = DEFAULT_GRID
    restarts: int = 32  # estimator restarts
    max_iters: int = 200
    tol: float = 1e-10
    starts: int = 200  # coordinate-ascent multistarts (cp-table)
    n: int = 2  # vector dimension (cp-table, clarkson aggregation)

    def __post_init__(self):
        if self.suite not in SUITE_IDS:
            raise ReportError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITE_IDS)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        grid = tuple(ExtExponent.coerce(p).value for p in self.grid)
        if not grid:
            raise ValueError("grid must be nonempty")
        object.__setattr__(self, "grid", grid)

    @property
    def exponents(self) -> tuple:
        return tuple(ExtExponent(p) for p in self.grid)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "algebra": self.algebra,
            "trials": self.trials,
            "seed": self.seed,
            "grid": [exponent_to_json(p) for p in self.grid],
            "restarts": self.restarts,
            "max_iters": self.max_iters,
            "tol": self.tol,
            "starts": self.starts,
            "n": self.n,
        }

    @classmethod
    def from_json(cls, d: dict) -> "CampaignConfig":
        unknown = set(d) - set(_CONFIG_KEYS)
        if unknown:
            raise ReportError(f"unknown config fields: {sorted(unknown)}")
        missing = set(_CONFIG_KEYS) - set(d)
        if missing:
            raise ReportError(f"missing config fields: {sorted(missing)}")
        d = dict(d)
        d["grid"] = tuple(exponent_from_json(p) for p in d["grid"])
        return cls(**d)


_REPORT_KEYS = ("schema", "suite", "config", "passed", "margins", "witnesses", "wall_time", "checksum")


def _canonical(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False).encode()


@dataclass(frozen=True)
class SuiteReport:
    """Result of one suite run. margins holds the suite's worst-case
    numbers; witnesses holds replayable counterexample payloads (always
    nonempty when passed is False)."""

    suite: str
    config: dict
    passed: bool
    margins: dict
    witnesses: list
    wall_time: float
    schema: str = SCHEMA_VERSION
    checksum: str = field(default="")

    def __post_init__(self):
        if not self.checksum:
            object.__setattr__(self, "checksum", self.compute_checksum())

    def payload(self) -> dict:
        """The checksummed content: everything except wall_time and the
        checksum itself."""
        return {
            "schema": self.schema,
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "margins": self.margins,
            "witnesses": self.witnesses,
        }

    def compute_checksum(self) -> str:
        return hashlib.sha256(_canonical(self.payload())).hexdigest()

    def to_json(self) -> dict:
        d = self.payload()
        d["wall_time"] = self.wall_time
        d["checksum"] = self.checksum
        return d

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True, allow_nan=False) + "\n")

    @classmethod
    def from_json(cls, d: dict) -> "SuiteReport":
        unknown = set(d) - set(_REPORT_KEYS)
        if unknown:
            raise ReportError(f"unknown report fields: {sorted(unknown)}")
        missing = set(_REPORT_KEYS) - set(d)
        if missing:
            raise ReportError(f"missing report fields: {sorted(missing)}")
        if d["schema"] != SCHEMA_VERSION:
            raise ReportError(f"schema mismatch: report has {d['schema']!r}, expected {SCHEMA_VERSION!r}")
        rep = cls(
            suite=d["suite"],
            config=d["config"],
            passed=d["passed"],
            margins=d["margins"],
            witnesses=d["witnesses"],
            wall_time=d["wall_time"],
            schema=d["schema"],
            checksum=d["checksum"],
        )
        if rep.compute_checksum() != d["checksum"]:
            raise ReportError("checksum mismatch: report content was altered")
        return rep


def load_report(path) -> SuiteReport:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ReportError(f"cannot read report file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ReportError(f"not a report file: {exc}") from None
    if not isinstance(raw, dict):
        raise ReportError("not a report file: top level must be an object")
    return SuiteReport.from_json(raw)


def margins_match(a: dict, b: dict, tol: float = 1e-12) -> tuple[bool, float]:
    """Compare two margin dicts key by key. Returns (match, worst
    absolute difference relative to max(1, magnitude))."""
    if set(a) != set(b):
        return False, math.inf
    worst = 0.0
    for k, va in a.items():
        vb = b[k]
        if isinstance(va, (int, float)) and isinstance(vb, (int, float)):
            scale = max(1.0, abs(va), abs(vb))
            worst = max(worst, abs(va - vb) / scale)
        elif va != vb:
            return False, math.inf
    return worst <= tol, worst
