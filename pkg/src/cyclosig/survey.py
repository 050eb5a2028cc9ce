"""Conductor surveys: per-conductor records, an on-disk cache and CSV output."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable

from . import __version__
from .composite import theorem_bound
from .residues import factorize, make_conductor
from .signature import verify_lower_bound

CSV_COLUMNS = (
    "m",
    "kind",
    "phi_half",
    "rank",
    "deficiency",
    "log_bound",
    "theorem_bound",
    "elapsed_ms",
    "status",
)
FILTERS = ("prime-powers", "odd-prime-powers", "two-powers")
DEFAULT_MAX_PHI_HALF = 16384
CACHE_ENV = "CYCLOSIG_CACHE"


@dataclass(frozen=True)
class SurveyRecord:
    m: int
    kind: str
    phi_half: int
    rank: int | None
    deficiency: int | None
    log_bound: int
    theorem_bound: int
    elapsed_ms: int
    toolkit_version: str = __version__
    status: str = "ok"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> SurveyRecord:
        data = json.loads(text)
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def report_key(self) -> tuple:
        """Everything except timing, for comparing cached and fresh results."""
        return (self.m, self.kind, self.phi_half, self.rank, self.deficiency,
                self.log_bound, self.theorem_bound, self.toolkit_version, self.status)

    def csv_row(self) -> list:
        return [
            self.m,
            self.kind,
            self.phi_half,
            "" if self.rank is None else self.rank,
            "" if self.deficiency is None else self.deficiency,
            self.log_bound,
            self.theorem_bound,
            self.elapsed_ms,
            self.status,
        ]


def parse_range(spec: str) -> tuple[int, int]:
    """Parse ``"lo..hi"`` (inclusive)."""
    try:
        lo, hi = (int(x) for x in spec.split(".."))
    except ValueError:
        raise ValueError(f"range must look like 3..10000, got {spec!r}") from None
    if lo > hi:
        raise ValueError(f"empty range {spec!r}")
    return lo, hi


def select_conductors(lo: int, hi: int, filter: str) -> list[int]:
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {', '.join(FILTERS)}")
    out = []
    for m in range(max(lo, 3), hi + 1):
        if m % 4 == 2:
            continue
        f = factorize(m)
        if len(f) != 1:
            continue
        p = f[0][0]
        if filter == "odd-prime-powers" and p == 2:
            continue
        if filter == "two-powers" and p != 2:
            continue
        out.append(m)
    return out


class RankCache:
    """JSON files keyed by ``(m, toolkit_version)``; writes are atomic."""

    def __init__(self, directory: str | os.PathLike, version: str = __version__):
        self.directory = Path(directory)
        self.version = version

    def path(self, m: int) -> Path:
        return self.directory / f"m{m}-v{self.version}.json"

    def get(self, m: int) -> SurveyRecord | None:
        try:
            text = self.path(m).read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        record = SurveyRecord.from_json(text)
        if record.toolkit_version != self.version or record.m != m:
            return None
        return record

    def put(self, record: SurveyRecord) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(record.to_json())
            os.replace(tmp, self.path(record.m))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise


def compute_record(m: int, max_phi_half: int = DEFAULT_MAX_PHI_HALF,
                   allow_large: bool = False) -> SurveyRecord:
    c = make_conductor(m)
    log_bound = m.bit_length() - 3
    tb = theorem_bound(c).theorem_bound
    if not allow_large and c.phi_half > max_phi_half:
        return SurveyRecord(m, c.kind, c.phi_half, None, None, log_bound, tb, 0,
                            status=f"skipped: phi_half {c.phi_half} > {max_phi_half}")
    start = time.perf_counter()
    report = verify_lower_bound(c)
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return SurveyRecord(m, c.kind, c.phi_half, report.rank, report.circular_deficiency,
                        report.log_bound, tb, elapsed)


def _survey_one(args) -> SurveyRecord:
    m, max_phi_half, allow_large = args
    try:
        return compute_record(m, max_phi_half, allow_large)
    except Exception as exc:  # recorded per row, the survey continues
        return SurveyRecord(m, "unknown", 0, None, None, 0, 0, 0,
                            status=f"error: {type(exc).__name__}: {exc}")


def run_survey(conductors: Iterable[int], jobs: int = 1, cache: RankCache | None = None,
               max_phi_half: int = DEFAULT_MAX_PHI_HALF,
               allow_large: bool = False) -> list[SurveyRecord]:
    """Records for every conductor, sorted by ``m``; cached rows are reused."""
    records: dict[int, SurveyRecord] = {}
    todo = []
    for m in sorted(set(conductors)):
        hit = cache.get(m) if cache is not None else None
        if hit is not None:
            records[m] = hit
        else:
            todo.append((m, max_phi_half, allow_large))
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_survey_one, todo, chunksize=1))
    else:
        fresh = [_survey_one(t) for t in todo]
    for rec in fresh:
        records[rec.m] = rec
        if cache is not None and rec.status == "ok":
            cache.put(rec)
    return [records[m] for m in sorted(records)]


def records_to_csv(records: Iterable[SurveyRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
