import json

import pytest

from apnforge import catalog
from apnforge.cli import main
from apnforge.table3 import load_expected
from apnforge.vbf import TruthTable, load_table, save_table

from conftest import f1_table, f2_table


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cat(tmp_path, monkeypatch):
    path = tmp_path / "cat.jsonl"
    monkeypatch.setenv("APNFORGE_CATALOG", str(path))
    return path


def test_construct_f1_auto(capsys, tmp_path, cat):
    out_file = tmp_path / "f1.tt"
    code, out, _ = run(capsys, "construct", "f1", "--m", 6, "--k", 1, "--alpha", "auto", "--out", out_file)
    assert code == 0
    rec = json.loads(out)
    assert rec["ddt"]["apn"] and rec["profile"]["nf"] == [1365, 100100, 140664]
    assert rec["params"]["alpha"] == "0x6"
    assert rec["field"] == {"m": 6, "reduction": "0x43"}
    assert rec["id"] == load_table(out_file).digest() == f1_table(6).digest()
    records, bad = catalog.read(cat)
    assert bad == 0 and [r.id for r in records] == [rec["id"]]


def test_construct_rejects_invalid_alpha(capsys, tmp_path, cat):
    code, _, err = run(capsys, "construct", "f2", "--m", 4, "--alpha", 0, "--out", tmp_path / "x.tt")
    assert code == 2 and "alpha" in err
    assert not cat.exists()


def test_construct_gold(capsys, tmp_path, cat):
    code, out, _ = run(capsys, "construct", "gold", "--n", 12, "--i", 1, "--no-profile",
                       "--out", tmp_path / "g.tt")
    rec = json.loads(out)
    assert code == 0 and rec["ddt"]["apn"] and rec["profile"] is None
    assert rec["params"]["extra"] == {"i": 1}
    code, _, err = run(capsys, "construct", "gold", "--n", 12, "--i", 2, "--no-profile",
                       "--out", tmp_path / "g2.tt")
    assert code == 2 and "gcd" in err


def test_verify(capsys, tmp_path):
    p = save_table(f1_table(6), tmp_path / "f1.tt")
    code, out, _ = run(capsys, "verify", p)
    assert code == 0 and json.loads(out)["delta"] == 2
    q = save_table(TruthTable.identity(8), tmp_path / "id.tt")
    code, out, _ = run(capsys, "verify", q)
    assert code == 1 and json.loads(out)["delta"] == 256
    q.write_bytes(q.read_bytes()[:100])
    code, _, err = run(capsys, "verify", q)
    assert code == 2 and "parse error" in err


def test_invariants(capsys, tmp_path):
    p = save_table(f2_table(6), tmp_path / "f2.tt")
    code, out, _ = run(capsys, "invariants", p)
    assert code == 0
    full = json.loads(out)
    assert full == {"delta": 2, "nf": [1365, 100100, 144198, 192], "spectrum": "gold-like",
                    "three_to_one": False, "nb_size": 1365}
    code, out, _ = run(capsys, "invariants", p, "--max-dim", 2)
    assert json.loads(out)["nf"] == full["nf"][:2]
    q = save_table(TruthTable.identity(8), tmp_path / "id.tt")
    assert run(capsys, "invariants", q)[0] == 1


def test_table3_subset_and_formats(capsys):
    code, out, _ = run(capsys, "table3", "--families", "f1,f2,gold")
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("| ") and "N_F" not in line]
    assert len(rows) == 3 and all(line.endswith("| ok |") for line in rows)
    code, out, _ = run(capsys, "table3", "--families", "f1,gold", "--format", "json")
    one = json.loads(out)
    code, out, _ = run(capsys, "table3", "--families", "f1,gold", "--format", "json", "--threads", 2)
    assert json.loads(out) == one
    code, out, _ = run(capsys, "table3", "--families", "12", "--format", "csv")
    assert out.splitlines()[1].startswith("12,1365 100100 144759 126,True")


def test_table3_corrupted_fixture_fails(capsys, tmp_path):
    data = load_expected()
    for row in data["rows"]:
        if "f1" in row["families"]:
            row["nf"] = [1365, 100100, 140665]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, err = run(capsys, "table3", "--families", "f1", "--expected", bad)
    assert code == 1 and "MISMATCH" in out and "f1" in err


def test_catalog_list_dedup_export(capsys, tmp_path, cat):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and out == ""
    for _ in range(2):
        assert run(capsys, "construct", "f1", "--m", 4, "--alpha", 1, "--out", tmp_path / "a.tt")[0] == 0
    assert run(capsys, "construct", "f2", "--m", 5, "--alpha", "auto", "--out", tmp_path / "b.tt")[0] == 0
    code, out, _ = run(capsys, "catalog", "list")
    assert len(out.splitlines()) == 3
    code, out, _ = run(capsys, "catalog", "dedup")
    assert json.loads(out) == {"kept": 2, "removed": 1, "corrupt_skipped": 0}
    csv_path = tmp_path / "cat.csv"
    code, _, _ = run(capsys, "catalog", "export", "--out", csv_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("id,family") and len(lines) == 3
    with cat.open("a") as fh:
        fh.write("{broken\n")
    code, out, err = run(capsys, "catalog", "list", "--catalog", cat)
    assert code == 0 and len(out.splitlines()) == 2 and "1 corrupt" in err


def test_catalog_append_keeps_whole_lines(tmp_path):
    path = tmp_path / "c.jsonl"
    rec = catalog.CatalogRecord("abc", {"family": "f1"}, {"m": 4})
    for _ in range(50):
        catalog.append(path, rec)
    records, bad = catalog.read(path)
    assert len(records) == 50 and bad == 0
    assert records[0].tool_version


def test_round_trip_hash(capsys, tmp_path, cat):
    out_file = tmp_path / "r.tt"
    code, out, _ = run(capsys, "construct", "12", "--m", 6, "--no-profile", "--out", out_file)
    assert code == 0
    rec = json.loads(out)
    code, out, _ = run(capsys, "verify", out_file)
    assert code == 0 and json.loads(out)["hash"] == rec["id"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct"])
    assert exc.value.code == 2
    capsys.readouterr()
