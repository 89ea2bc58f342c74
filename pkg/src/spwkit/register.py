"""Vulnerability register schema, CSV loading/saving and lookups.

Register files are UTF-8 CSV (RFC 4180 quoting) with this exact header::

    id,title,subsystem,stride,attack_techniques,cvss_vector,cvss_score,
    mission_functions,description,preconditions,impact,mitigations

Lines starting with ``#`` before the header are comments. Multi-valued
cells (stride, attack_techniques, mission_functions) join tokens with
``;``. A row may carry a vector, a declared score, or both; when both are
present the vector is scored and must agree with the declared score.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import cvss
from .errors import (
    BadFieldError,
    BadStrideTokenError,
    BadTechniqueIdError,
    DuplicateIdError,
    MissingColumnError,
    RegisterError,
    ScoreOutOfRangeError,
    VectorScoreMismatchError,
)
from .taxonomy import MissionFunction, Stride, Subsystem

SCHEMA_VERSION = "1"

COLUMNS = (
    "id", "title", "subsystem", "stride", "attack_techniques", "cvss_vector",
    "cvss_score", "mission_functions", "description", "preconditions",
    "impact", "mitigations",
)

BUNDLED_REGISTER = "register_42.csv"

_ID_RE = re.compile(r"^[A-Za-z][0-9]+$")
_TECHNIQUE_RE = re.compile(r"^T[0-9]{4}(\.[0-9]{3})?$")
_SCORE_RE = re.compile(r"^[0-9]+\.[0-9]$")


@dataclass(frozen=True)
class VulnerabilityEntry:
    """One register row."""

    id: str
    title: str
    subsystem: Subsystem
    stride: frozenset[Stride]
    attack_techniques: tuple[str, ...]
    cvss_vector: cvss.CvssVector | None
    cvss_score: float
    mission_functions: frozenset[MissionFunction]
    description: str = ""
    preconditions: str = ""
    impact: str = ""
    mitigations: str = ""

    @property
    def severity(self) -> cvss.Severity:
        return cvss.severity_for(self.cvss_score)


@dataclass
class Register:
    """An ordered, validated collection of entries.

    Immutable by convention after load; safe to share across tasks.
    ``source_path`` is provenance only and excluded from equality.
    """

    entries: list[VulnerabilityEntry]
    source_path: str = field(default="", compare=False)
    schema_version: str = SCHEMA_VERSION

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, entry_id: str) -> VulnerabilityEntry | None:
        return self._by_id().get(entry_id)

    def _by_id(self) -> dict[str, VulnerabilityEntry]:
        return {e.id: e for e in self.entries}

    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def subsystem_counts(self) -> dict[Subsystem, int]:
        counts: dict[Subsystem, int] = {}
        for e in self.entries:
            counts[e.subsystem] = counts.get(e.subsystem, 0) + 1
        return counts


def _split_multi(cell: str) -> list[str]:
    return [tok.strip() for tok in cell.split(";") if tok.strip()]


def _parse_row(row: dict[str, str], line_no: int) -> VulnerabilityEntry:
    row_id = row["id"].strip()
    if not _ID_RE.match(row_id):
        raise BadFieldError(
            f"row {line_no}: id '{row_id}' must be a letter followed by digits",
            row_id=row_id, column="id")

    title = row["title"].strip()
    if not title:
        raise BadFieldError(f"row {row_id}: title must not be empty",
                            row_id=row_id, column="title")

    try:
        subsystem = Subsystem.from_token(row["subsystem"])
    except ValueError:
        raise BadFieldError(
            f"row {row_id}: unknown subsystem '{row['subsystem']}'",
            row_id=row_id, column="subsystem") from None

    stride_tokens = _split_multi(row["stride"])
    if not stride_tokens:
        raise BadStrideTokenError(f"row {row_id}: stride set must not be empty",
                                  row_id=row_id, column="stride")
    try:
        stride = frozenset(Stride.from_token(t) for t in stride_tokens)
    except ValueError:
        raise BadStrideTokenError(
            f"row {row_id}: stride tokens must be among S/T/R/I/D/E, got '{row['stride']}'",
            row_id=row_id, column="stride") from None

    techniques = tuple(_split_multi(row["attack_techniques"]))
    for tid in techniques:
        if not _TECHNIQUE_RE.match(tid):
            raise BadTechniqueIdError(
                f"row {row_id}: bad technique id '{tid}' (expected T#### or T####.###)",
                row_id=row_id, column="attack_techniques")

    score_text = row["cvss_score"].strip()
    if not _SCORE_RE.match(score_text):
        raise ScoreOutOfRangeError(
            f"row {row_id}: cvss_score '{score_text}' must have exactly one decimal",
            row_id=row_id, column="cvss_score")
    score = float(score_text)
    if not 0.0 <= score <= 10.0:
        raise ScoreOutOfRangeError(
            f"row {row_id}: cvss_score {score} outside 0.0-10.0",
            row_id=row_id, column="cvss_score")

    vector_text = row["cvss_vector"].strip()
    vector = None
    if vector_text:
        try:
            vector = cvss.parse_vector(vector_text)
        except cvss.VectorError as exc:
            raise BadFieldError(f"row {row_id}: bad cvss_vector: {exc}",
                                row_id=row_id, column="cvss_vector") from exc
        computed = cvss.base_score(vector).score
        if computed != score:
            raise VectorScoreMismatchError(
                f"row {row_id}: vector scores {computed}, declared {score}",
                row_id=row_id, column="cvss_score")

    mission_tokens = _split_multi(row["mission_functions"])
    if not mission_tokens:
        raise BadFieldError(
            f"row {row_id}: mission_functions must not be empty",
            row_id=row_id, column="mission_functions")
    try:
        missions = frozenset(MissionFunction.from_token(t) for t in mission_tokens)
    except ValueError:
        raise BadFieldError(
            f"row {row_id}: unknown mission function in '{row['mission_functions']}'",
            row_id=row_id, column="mission_functions") from None

    return VulnerabilityEntry(
        id=row_id, title=title, subsystem=subsystem, stride=stride,
        attack_techniques=techniques, cvss_vector=vector, cvss_score=score,
        mission_functions=missions, description=row["description"],
        preconditions=row["preconditions"], impact=row["impact"],
        mitigations=row["mitigations"])


def loads(text: str, source: str = "<string>") -> Register:
    """Parse register CSV content; every well-formed row is kept."""
    lines = text.splitlines()
    start = 0
    while start < len(lines) and lines[start].startswith("#"):
        start += 1
    reader = csv.reader(io.StringIO("\n".join(lines[start:])))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingColumnError("register file has no header row") from None
    if tuple(h.strip() for h in header) != COLUMNS:
        missing = [c for c in COLUMNS if c not in header]
        unexpected = [c for c in header if c not in COLUMNS]
        detail = []
        if missing:
            detail.append(f"missing {missing}")
        if unexpected:
            detail.append(f"unexpected {unexpected}")
        raise MissingColumnError(
            "header does not match register schema: " + ("; ".join(detail) or "wrong column order"),
            column=missing[0] if missing else None)

    entries: list[VulnerabilityEntry] = []
    seen_ids: set[str] = set()
    for line_no, cells in enumerate(reader, start=2):
        if not cells:
            continue
        if len(cells) != len(COLUMNS):
            raise MissingColumnError(
                f"row {line_no}: expected {len(COLUMNS)} fields, got {len(cells)}")
        entry = _parse_row(dict(zip(COLUMNS, cells)), line_no)
        if entry.id in seen_ids:
            raise DuplicateIdError(f"duplicate id '{entry.id}'",
                                   row_id=entry.id, column="id")
        seen_ids.add(entry.id)
        entries.append(entry)
    return Register(entries=entries, source_path=source)


def load_register(path: str | Path) -> Register:
    """Load and validate a register file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RegisterError(f"cannot read register file {path}: {exc}") from exc
    return loads(text, source=str(path))


def load_bundled_register() -> Register:
    """Load the register shipped with the package."""
    text = (resources.files("spwkit") / "data" / BUNDLED_REGISTER).read_text(encoding="utf-8")
    return loads(text, source=f"bundled:{BUNDLED_REGISTER}")


def bundled_register_path() -> Path:
    """Filesystem path of the bundled register (regular installs)."""
    return Path(str(resources.files("spwkit") / "data" / BUNDLED_REGISTER))


def _entry_row(e: VulnerabilityEntry) -> list[str]:
    return [
        e.id, e.title, e.subsystem.value,
        ";".join(sorted(s.value for s in e.stride)),
        ";".join(e.attack_techniques),
        e.cvss_vector.to_string() if e.cvss_vector else "",
        f"{e.cvss_score:.1f}",
        ";".join(sorted(m.value for m in e.mission_functions)),
        e.description, e.preconditions, e.impact, e.mitigations,
    ]


def serialize(register: Register) -> str:
    """Render a register back to CSV; loads(serialize(r)) == r."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for e in register.entries:
        writer.writerow(_entry_row(e))
    return buf.getvalue()


def save_register(register: Register, path: str | Path) -> None:
    Path(path).write_text(serialize(register), encoding="utf-8")


def filter_by_subsystem(register: Register, subsystem: Subsystem) -> list[VulnerabilityEntry]:
    """Entries for one subsystem, in register order."""
    return [e for e in register.entries if e.subsystem == subsystem]
