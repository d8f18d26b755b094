"""Line-delimited JSON catalog of constructed functions and their profiles."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__

log = logging.getLogger(__name__)

DEFAULT_CATALOG = "apnforge-catalog.jsonl"
ENV_CATALOG = "APNFORGE_CATALOG"


def catalog_path(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(ENV_CATALOG, DEFAULT_CATALOG))


@dataclass
class CatalogRecord:
    id: str
    params: dict
    field: dict
    profile: dict | None = None
    ddt: dict | None = None
    table: str | None = None
    created: str = dc_field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    tool_version: str = __version__

    def to_json(self) -> dict:
        return {"id": self.id, "params": self.params, "field": self.field, "profile": self.profile,
                "ddt": self.ddt, "table": self.table, "created": self.created,
                "tool_version": self.tool_version}

    @classmethod
    def from_json(cls, d: dict) -> "CatalogRecord":
        if not isinstance(d, dict) or not isinstance(d.get("id"), str):
            raise ValueError("record without a string id")
        return cls(d["id"], d.get("params") or {}, d.get("field") or {}, d.get("profile"),
                   d.get("ddt"), d.get("table"), d.get("created", ""), d.get("tool_version", ""))


def append(path, record: CatalogRecord) -> None:
    line = json.dumps(record.to_json(), sort_keys=True) + "\n"
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    # one write call per record keeps lines whole under O_APPEND
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_APPEND, 0o644)
    try:
        os.write(fd, line.encode())
    finally:
        os.close(fd)


def read(path) -> tuple[list[CatalogRecord], int]:
    """Records in file order plus the number of corrupt lines skipped."""
    path = Path(path)
    if not path.exists():
        return [], 0
    records, bad = [], 0
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                records.append(CatalogRecord.from_json(json.loads(line)))
            except (ValueError, TypeError) as exc:
                bad += 1
                log.warning("%s:%d: skipping corrupt line (%s)", path, lineno, exc)
    return records, bad


def dedup(path) -> tuple[int, int, int]:
    """Keep the first record per id; returns (kept, removed, corrupt)."""
    path = Path(path)
    records, bad = read(path)
    seen: set[str] = set()
    keep = []
    for r in records:
        if r.id not in seen:
            seen.add(r.id)
            keep.append(r)
    if path.exists():
        tmp = path.with_name(path.name + ".tmp")
        with tmp.open("w") as fh:
            for r in keep:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
        tmp.replace(path)
    return len(keep), len(records) - len(keep), bad


CSV_FIELDS = ["id", "family", "m", "k", "alpha", "delta", "nf", "spectrum", "three_to_one", "nb_size",
              "table", "created", "tool_version"]


def to_csv(records: list[CatalogRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        prof = r.profile or {}
        w.writerow({
            "id": r.id, "family": r.params.get("family"), "m": r.params.get("m"),
            "k": r.params.get("k"), "alpha": r.params.get("alpha"),
            "delta": prof.get("delta", (r.ddt or {}).get("delta")),
            "nf": " ".join(str(v) for v in prof.get("nf", [])),
            "spectrum": prof.get("spectrum"), "three_to_one": prof.get("three_to_one"),
            "nb_size": prof.get("nb_size"), "table": r.table, "created": r.created,
            "tool_version": r.tool_version,
        })
    return buf.getvalue()
