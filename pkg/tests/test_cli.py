"""CLI surface: commands, formats, exit codes, atlas persistence."""

import csv
import io
import json
import subprocess
import sys

import sgp.chars
import sgp.gelfand
from sgp.chars import TableValidation
from sgp.cli import main
from sgp.errors import InternalConsistencyError


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# -- table ------------------------------------------------------------------------


def test_table_text_dihedral_5(capsys):
    rc, out, _ = run(capsys, "table", "dihedral", "5")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "Character table of D10"
    assert lines[1].split() == ["1", "a", "a^2", "b"]
    assert len(lines) == 6  # title + header + 4 rows


def test_table_cyclic_1(capsys):
    rc, out, _ = run(capsys, "table", "cyclic", "1")
    assert rc == 0
    assert "μ_0" in out
    body = [ln for ln in out.splitlines() if ln.startswith("μ_0")]
    assert body and body[0].split() == ["μ_0", "1"]


def test_table_dicyclic_3_json_row_names(capsys):
    rc, out, _ = run(capsys, "table", "dicyclic", "3", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert [r["name"] for r in doc["rows"]] == ["θ_1", "θ_2", "θ_3", "θ_4", "π_1", "γ_1"]


def test_table_csv_round_trips(capsys):
    rc, out, _ = run(capsys, "table", "dihedral", "6", "--format", "csv")
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["name", "1", "a", "a^2", "a^3", "b", "ba"]
    assert len(rows) == 1 + 6
    assert rows[1][0] == "χ_1" and rows[1][1:] == ["1"] * 6


def test_table_range(capsys):
    rc, out, _ = run(capsys, "table", "cyclic", "2..4")
    assert rc == 0
    assert out.count("Character table of") == 3


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "d10.txt"
    rc, out, _ = run(capsys, "table", "dihedral", "5", "--out", str(target))
    assert rc == 0
    assert out == ""
    assert "Character table of D10" in target.read_text()


def test_table_validation_failure_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(sgp.chars, "validate_table",
                        lambda t: TableValidation(False, ("forced failure",)))
    rc, _, err = run(capsys, "table", "dihedral", "5")
    assert rc == 3
    assert "forced failure" in err


# -- classify -----------------------------------------------------------------------


def test_classify_dihedral_5(capsys):
    rc, out, _ = run(capsys, "classify", "dihedral", "5")
    assert rc == 0
    records = [ln for ln in out.splitlines() if ln.startswith("  ")]
    assert len(records) == 8
    trivial = next(ln for ln in records if "trivial" in ln)
    assert "strong_gelfand=no" in trivial and "witness" in trivial


def test_classify_dicyclic_1_all_strong(capsys):
    rc, out, _ = run(capsys, "classify", "dicyclic", "1")
    assert rc == 0
    records = [ln for ln in out.splitlines() if ln.startswith("  ")]
    assert records and all("strong_gelfand=yes" in ln for ln in records)


def test_classify_dihedral_2_all_strong(capsys):
    rc, out, _ = run(capsys, "classify", "dihedral", "2")
    assert rc == 0
    records = [ln for ln in out.splitlines() if ln.startswith("  ")]
    assert records and all("strong_gelfand=yes" in ln for ln in records)


def test_classify_json_and_csv_have_same_records(capsys):
    rc, out_json, _ = run(capsys, "classify", "dicyclic", "3", "--format", "json")
    assert rc == 0
    doc = json.loads(out_json)
    rc, out_csv, _ = run(capsys, "classify", "dicyclic", "3", "--format", "csv")
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    assert len(rows) == len(doc["subgroups"]) == 8
    assert {r["desc"] for r in rows} == {s["desc"] for s in doc["subgroups"]}


def test_classify_respects_max_order_flag(capsys):
    rc, _, err = run(capsys, "classify", "dihedral", "10", "--max-order", "16")
    assert rc == 1
    assert "exceeds" in err


def test_classify_respects_env_bound(capsys, monkeypatch):
    monkeypatch.setenv("SGP_MAX_ORDER", "16")
    rc, _, err = run(capsys, "classify", "dihedral", "10")
    assert rc == 1
    assert "exceeds" in err
    monkeypatch.setenv("SGP_MAX_ORDER", "64")
    rc, _, _ = run(capsys, "classify", "dihedral", "10")
    assert rc == 0


# -- audit ---------------------------------------------------------------------------


def test_audit_range_text(capsys):
    rc, out, _ = run(capsys, "audit", "dihedral", "3..7")
    assert rc == 0
    lines = out.strip().splitlines()
    summary = [ln for ln in lines if ln.startswith("dihedral n=")]
    assert len(summary) == 5
    assert "dihedral n=4 (D8): subgroups=10 agree=9 disagree=1" in out


def test_audit_fail_on_discrepancy_clean(capsys):
    rc, _, _ = run(capsys, "audit", "dicyclic", "3..3", "--fail-on-discrepancy")
    assert rc == 0


def test_audit_cyclic_family_is_clean(capsys):
    rc, out, _ = run(capsys, "audit", "cyclic", "2..8", "--fail-on-discrepancy")
    assert rc == 0
    assert "disagree=0" in out


def test_audit_fail_on_discrepancy_dirty(capsys):
    rc, _, err = run(capsys, "audit", "dihedral", "4..4", "--fail-on-discrepancy")
    assert rc == 1
    assert "discrepanc" in err


def test_audit_json_is_array_per_n(capsys):
    rc, out, _ = run(capsys, "audit", "dicyclic", "2..3", "--format", "json")
    assert rc == 0
    docs = json.loads(out)
    assert [d["n"] for d in docs] == [2, 3]
    assert docs[0]["summary"]["disagree"] == 1
    assert docs[1]["summary"]["disagree"] == 0


def test_audit_csv(capsys):
    rc, out, _ = run(capsys, "audit", "dihedral", "4..4", "--format", "csv")
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    bad = [r for r in rows if r["agree"] == "False"]
    assert len(bad) == 1 and bad[0]["desc"] == "C2"


# -- atlas ----------------------------------------------------------------------------


def test_atlas_writes_files_and_manifest(tmp_path, capsys):
    out_dir = tmp_path / "atlas"
    rc, out, _ = run(capsys, "atlas", "dihedral", "3..10", "--out", str(out_dir))
    assert rc == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == sorted([f"dihedral_{n}.json" for n in range(3, 11)] + ["manifest.json"])
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert json.loads(out) == manifest
    import hashlib
    for entry in manifest:
        digest = hashlib.sha256((out_dir / entry["file"]).read_bytes()).hexdigest()
        assert digest == entry["sha256"]


def test_atlas_rerun_is_byte_identical(tmp_path, capsys):
    out_dir = tmp_path / "atlas"
    run(capsys, "atlas", "dicyclic", "2..4", "--out", str(out_dir))
    before = {p.name: p.read_bytes() for p in out_dir.iterdir()}
    run(capsys, "atlas", "dicyclic", "2..4", "--out", str(out_dir))
    after = {p.name: p.read_bytes() for p in out_dir.iterdir()}
    assert before == after


def test_atlas_documents_flag_center_not_strong(tmp_path, capsys):
    out_dir = tmp_path / "atlas"
    rc, _, _ = run(capsys, "atlas", "dicyclic", "2..6", "--out", str(out_dir))
    assert rc == 0
    for n in range(2, 7):
        doc = json.loads((out_dir / f"dicyclic_{n}.json").read_text())
        assert doc["schema_version"] == 1
        assert doc["table"]["group"] == f"Dic{4 * n}"
        center = [s for s in doc["subgroups"] if s["desc"] == "C2" and s["order"] == 2]
        assert center and not center[0]["strong_gelfand"]
        assert center[0]["witness"]["mult"] >= 2


def test_atlas_round_trips_through_json(tmp_path, capsys):
    out_dir = tmp_path / "atlas"
    run(capsys, "atlas", "dihedral", "5..5", "--out", str(out_dir))
    path = out_dir / "dihedral_5.json"
    doc = json.loads(path.read_text())
    assert json.dumps(doc, ensure_ascii=False, indent=2) + "\n" == path.read_text()


def test_atlas_requires_out(capsys):
    rc, _, err = run(capsys, "atlas", "dihedral", "3..4")
    assert rc == 1
    assert "--out" in err


# -- usage and exit codes ------------------------------------------------------------------


def test_unknown_family_is_usage_error(capsys):
    rc, _, err = run(capsys, "table", "symmetric", "4")
    assert rc == 1
    assert err


def test_bad_ranges_are_usage_errors(capsys):
    assert run(capsys, "audit", "dihedral", "7..3")[0] == 1
    assert run(capsys, "table", "dihedral", "0")[0] == 1
    assert run(capsys, "table", "dihedral", "x")[0] == 1
    assert run(capsys, "table", "dihedral", "1..2..3")[0] == 1


def test_unknown_command_is_usage_error(capsys):
    rc, _, _ = run(capsys, "frobnicate", "dihedral", "3")
    assert rc == 1


def test_internal_consistency_maps_to_exit_2(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise InternalConsistencyError("forced dual-path mismatch")

    monkeypatch.setattr(sgp.gelfand, "classify_subgroups", boom)
    rc, _, err = run(capsys, "classify", "dihedral", "5")
    assert rc == 2
    assert "forced dual-path mismatch" in err


def test_console_entry_point_via_module():
    proc = subprocess.run(
        [sys.executable, "-m", "sgp", "table", "dihedral", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "Character table of D6" in proc.stdout
    proc = subprocess.run(
        [sys.executable, "-m", "sgp", "audit", "dihedral", "4..4",
         "--fail-on-discrepancy"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
