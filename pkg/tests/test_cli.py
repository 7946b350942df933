import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from cospec.cli import EXIT_COMPUTATION, EXIT_INPUT, EXIT_OK, main

DATA = Path(__file__).resolve().parents[1] / "data"
TSTAR = (DATA / "basepair.txt").read_text().splitlines()[2]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_tables(capsys):
    code, out, _ = run(capsys, "count", "--n", "15")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["schema"] == "cospec.count/1" and d["values"][-1] == 699534
    code, out, _ = run(capsys, "count", "--n", "15", "--avoid", "2", "--format", "csv")
    assert out.splitlines()[0].startswith("# schema:") and out.splitlines()[-1] == "15,28966"
    _, out, _ = run(capsys, "count", "--cographs", "--n", "15")
    assert json.loads(out)["values"][-1] == 1399068


def test_count_rejects_bad_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--n", "0"])
    assert exc.value.code == EXIT_INPUT
    code, _, err = run(capsys, "count", "--n", "5", "--avoid", "1")
    assert code == EXIT_INPUT and "input error" in err


def test_asym(capsys):
    code, out, err = run(capsys, "asym", "--m", "9")
    d = json.loads(out)
    assert code == EXIT_OK and d["half_threshold"] == 34141
    assert d["rho"].startswith("0.28083836870633481") and d["ratio_base"].startswith("0.99997969749589")
    assert "[cospec]" in err and "[cospec]" not in out
    _, out, _ = run(capsys, "asym", "--m", "15")
    assert json.loads(out)["ratio_base"].startswith("0.999999990042203")
    _, out, _ = run(capsys, "asym")
    d = json.loads(out)
    assert d["m"] is None and d["C"].startswith("0.206381444600789")


def test_discover_replays_cache(capsys, tmp_path):
    cache = tmp_path / "bp.txt"
    shutil.copy(DATA / "basepair.txt", cache)
    code, out, _ = run(capsys, "discover", "--cache", str(cache))
    d = json.loads(out)
    assert code == EXIT_OK and d["cached"] and d["tstar"] == TSTAR
    code2, out2, _ = run(capsys, "discover", "--cache", str(cache))
    assert out2 == out


def test_discover_truncated_corpus(capsys, tmp_path):
    corpus = tmp_path / "short.g6"
    corpus.write_text("H?ACJ`x\nH?ACJrE\n")
    code, _, err = run(capsys, "discover", "--corpus", str(corpus), "--cache", str(tmp_path / "bp.txt"))
    assert code == EXIT_INPUT and "expected 274668" in err
    code, _, _ = run(capsys, "discover", "--corpus", str(tmp_path / "missing.g6"),
                     "--cache", str(tmp_path / "bp.txt"))
    assert code == EXIT_INPUT


def test_discover_full_corpus(capsys, tmp_path):
    cache, report = tmp_path / "bp.txt", tmp_path / "report.json"
    code, out, _ = run(capsys, "discover", "--corpus", str(DATA / "graphs9.g6.gz"), "--cache", str(cache),
                       "--report", str(report))
    d = json.loads(out)
    assert code == EXIT_OK and not d["cached"] and len(d["non_dgs_cographs"]) == 2
    assert cache.read_text() == (DATA / "basepair.txt").read_text()
    assert json.loads(report.read_text())["schema"] == "cospec.collisions/1"


def test_mate(capsys):
    code, out, _ = run(capsys, "mate", TSTAR, "--cache", str(DATA / "basepair.txt"))
    d = json.loads(out)
    r = (DATA / "basepair.txt").read_text().splitlines()[1]
    assert code == EXIT_OK and d["mate"] == r
    assert d["verification"] == {"generalized_cospectral": True, "isomorphic": False, "mate_has_induced_p4": True}
    code, out, _ = run(capsys, "mate", f"J(. {TSTAR})",
                       "--cache", str(DATA / "basepair.txt"))
    assert code == EXIT_OK and json.loads(out)["verification"]["generalized_cospectral"]


def test_mate_errors(capsys):
    code, _, err = run(capsys, "mate", "U(. .)", "--cache", str(DATA / "basepair.txt"))
    assert code == EXIT_COMPUTATION and "PatternAbsent" in err
    code, _, _ = run(capsys, "mate", "U(. ", "--cache", str(DATA / "basepair.txt"))
    assert code == EXIT_INPUT


def test_survey_families(capsys):
    code, out, _ = run(capsys, "survey", "--family", "threshold", "--n", "8", "--kind", "adjacency")
    d = json.loads(out)
    assert code == EXIT_OK and d["with_mate"] == 0 and d["total"] == 128
    _, out, _ = run(capsys, "survey", "--family", "threshold", "--n", "6", "--kind", "q", "--format", "csv")
    row = out.splitlines()[-1].split(",")
    assert row[:2] == ["6", "32"] and int(row[2]) * 8 >= 32
    code, _, _ = run(capsys, "survey", "--family", "threshold", "--n", "13")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "survey", "--family", "cographs", "--n", "17")
    assert code == EXIT_INPUT


def test_survey_cographs_15(capsys):
    code, out, err = run(capsys, "survey", "--family", "cographs", "--n", "15")
    d = json.loads(out)
    assert code == EXIT_OK and d["essential_pairs"] == 2 and d["with_mate_in_family"] == 8
    assert d["total"] == 1399068 and "surveying" in err


def test_survey_corpus(capsys, tmp_path):
    corpus = tmp_path / "q.g6"
    corpus.write_text("Cs\nCw\nCh\n")  # K13, K3+K1, and a path
    code, out, _ = run(capsys, "survey", "--family", "corpus", "--corpus", str(corpus), "--kind", "q")
    d = json.loads(out)
    assert code == EXIT_OK and d["corpus_size"] == 3
    assert [sorted(c["members"]) for c in d["classes"]] == [["Cs", "Cw"]]


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--criteria", "1,3,6")
    lines = out.splitlines()
    assert code == EXIT_OK and sum(line.startswith("PASS") for line in lines) == 3
    assert lines[-1] == "3/3 criteria passed"
    code, _, _ = run(capsys, "verify", "--criteria", "13")
    assert code == EXIT_INPUT


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cospec.cli", "count", "--n", "4", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[-1] == "4,5"
    proc = subprocess.run([sys.executable, "-m", "cospec.cli", "bogus"], capture_output=True, text=True)
    assert proc.returncode == EXIT_INPUT
