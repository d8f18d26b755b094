"""Recompute N_F for one representative per family at n = 12 and diff it
against the shipped expected rows."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .analysis import InvariantProfile, invariant_profile
from .families import (KNOWN_FAMILIES, FamilyParams, f1, f2, family_field, family_id,
                       known_instance)
from .field import get_field
from .poly import find_good_alphas
from .vbf import TruthTable, evaluate

NEW_FAMILIES = ("f1", "f2")
ALL_FAMILIES = KNOWN_FAMILIES + NEW_FAMILIES


def load_expected(path=None) -> dict:
    if path is None:
        text = resources.files("apnforge").joinpath("data/table3.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def expected_rows(expected: dict, fid: str) -> list[list[int]]:
    return [row["nf"] for row in expected["rows"] if fid in row["families"]]


def representative(fid: str, m: int = 6) -> tuple[FamilyParams, TruthTable, dict]:
    """Parameters, table and field description of the instance reported for ``fid``."""
    fid = family_id(fid)
    if fid in NEW_FAMILIES:
        fld = get_field(m)
        alpha = find_good_alphas(fld, 1)[0]
        pair = f1(m, 1, alpha) if fid == "f1" else f2(m, alpha)
        return FamilyParams(fid, m, 1, alpha), evaluate(pair), fld.to_json()
    params, tt = known_instance(fid, m)
    return params, tt, family_field(fid, m).to_json()


@dataclass
class Row:
    family: str
    params: dict | None
    profile: InvariantProfile | None
    allowed: list[list[int]]
    error: str | None = None

    @property
    def nf(self) -> list[int] | None:
        return None if self.profile is None else self.profile.nf

    @property
    def match(self) -> bool:
        return self.error is None and self.nf in self.allowed


def compute_rows(families=ALL_FAMILIES, expected: dict | None = None, threads: int = 1,
                 m: int = 6) -> list[Row]:
    expected = load_expected() if expected is None else expected
    rows = []
    for fid in families:
        fid = family_id(fid)
        allowed = expected_rows(expected, fid)
        try:
            params, tt, _ = representative(fid, m)
            prof = invariant_profile(tt, threads=threads)
            rows.append(Row(fid, params.to_json(), prof, allowed))
        except Exception as exc:  # reported per row
            rows.append(Row(fid, None, None, allowed, f"{type(exc).__name__}: {exc}"))
    return rows


def _label(fid: str) -> str:
    return {"f1": "F1", "f2": "F2", "1": "1 (Gold)"}.get(fid, fid)


def _nf_text(nf) -> str:
    return "-" if nf is None else "[" + ", ".join(str(v) for v in nf) + "]"


def render(rows: list[Row], fmt: str = "md") -> str:
    if fmt == "json":
        return json.dumps([{"family": r.family, "params": r.params, "nf": r.nf, "match": r.match,
                            "expected": r.allowed, "error": r.error,
                            "profile": None if r.profile is None else r.profile.to_json()}
                           for r in rows], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "nf", "match", "expected", "error"])
        for r in rows:
            w.writerow([r.family, " ".join(map(str, r.nf or [])), r.match,
                        " | ".join(" ".join(map(str, e)) for e in r.allowed), r.error or ""])
        return buf.getvalue()
    lines = ["| family | N_F | expected | status |", "|---|---|---|---|"]
    for r in rows:
        status = "ok" if r.match else ("error: " + r.error if r.error else "MISMATCH")
        exp = "<br>".join(_nf_text(e) for e in r.allowed) or "-"
        lines.append(f"| {_label(r.family)} | {_nf_text(r.nf)} | {exp} | {status} |")
    return "\n".join(lines) + "\n"


def pairwise_distinct(rows: list[Row], targets=NEW_FAMILIES) -> bool:
    """Every target row's N_F differs from every other row's."""
    by_family = {r.family: r.nf for r in rows}
    for t in targets:
        if by_family.get(t) is None:
            return False
        if any(nf == by_family[t] for fid, nf in by_family.items() if fid != t):
            return False
    return True
