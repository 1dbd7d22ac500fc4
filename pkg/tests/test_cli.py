import csv
import io
import json

import pytest

from configprob.cli import main
from configprob.degrees import read_degrees, sample_degree_sequence, parse_distribution


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate(capsys, write):
    code, out, err = run(capsys, "generate", "--degrees", write("d", "1\n1\n"), "--seed", "0")
    assert code == 0
    assert [l for l in out.splitlines() if not l.startswith("#")] == ["0 1"]
    assert "self_loops=0" in err
    code, out, err = run(capsys, "generate", "--degrees", write("s", "2\n"))
    assert [l for l in out.splitlines() if not l.startswith("#")] == ["0 0"]
    assert "self_loops=1" in err


def test_generate_to_file_and_directed(capsys, write, tmp_path):
    dst = tmp_path / "edges.txt"
    code, out, _ = run(capsys, "generate", "--degrees", write("d", "0 1\n1 0\n"), "--directed",
                       "--out", str(dst))
    assert code == 0
    assert "n=2 L=1 directed=true" in out
    assert dst.read_text().splitlines()[-1] == "0 1"


def test_generate_from_distribution(capsys):
    code, out, err = run(capsys, "generate", "--distribution", "constant:2", "--n", "5", "--seed", "3")
    assert code == 0 and "L=5" in err


def test_odd_stub_total_rejected(capsys, write):
    code, _, err = run(capsys, "generate", "--degrees", write("odd", "1\n1\n1\n"))
    assert code == 1
    assert "OddStubTotal" in err


def test_missing_file_and_bad_usage(capsys, tmp_path):
    code, _, err = run(capsys, "prob", "--degrees", str(tmp_path / "nope"), "--pair", "0", "1")
    assert code == 1 and "cannot read" in err
    with pytest.raises(SystemExit) as exc:
        main(["prob", "--pair", "0"])
    assert exc.value.code == 1
    code, _, err = run(capsys, "prob", "--pair", "0", "1")
    assert code == 1 and "--degrees" in err


def test_prob_rows(capsys, write):
    path = write("d", "2\n2\n1\n1\n")
    code, out, _ = run(capsys, "prob", "--degrees", path, "--pair", "0", "1", "--format", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["p_full_exact"] == "2/3"
    assert row["p_first_order"] == "4/5"
    assert row["p_paper_literal"] == "8/15"
    assert float(row["p_full_float"]) == 2 / 3
    code, out, _ = run(capsys, "prob", "--degrees", write("e", "1\n1\n"), "--pair", "0", "1")
    assert out.splitlines()[1].split()[:5] == ["0", "1", "1/1", "1/1", "1.0"]


def test_prob_modes(capsys, write):
    path = write("d", "2\n2\n1\n1\n")
    for flags, expected in ([["--sparse"], "4/5"], [["--mode", "paper-literal"], "8/15"],
                            [["--mode", "first-order"], "4/5"], [[], "2/3"]):
        _, out, _ = run(capsys, "prob", "--degrees", path, "--pair", "0", "1", *flags)
        assert out.splitlines()[1].split()[2] == expected


def test_prob_same_vertex(capsys, write):
    code, _, err = run(capsys, "prob", "--degrees", write("d", "2\n2\n"), "--pair", "0", "0")
    assert code == 1
    assert "selfloop" in err


def test_all_pairs_guard(capsys, write):
    path = write("d", "1\n" * 6)
    code, out, _ = run(capsys, "prob", "--degrees", path, "--all-pairs")
    assert code == 0 and len(out.splitlines()) == 1 + 15
    code, _, err = run(capsys, "prob", "--degrees", path, "--all-pairs", "--max-n", "5")
    assert code == 1 and "--max-n" in err


def test_selfloop_and_dprob(capsys, write):
    _, out, _ = run(capsys, "selfloop", "--degrees", write("d", "2\n1\n1\n"), "--vertex", "0")
    assert out.splitlines()[1].split()[:3] == ["0", "1/3", "1/3"]
    _, out, _ = run(capsys, "dprob", "--degrees", write("dd", "1 1\n1 1\n"), "--directed",
                    "--pair", "0", "1", "--format", "json")
    doc = json.loads(out)
    assert doc["results"][0]["p_full_exact"] == "1/2"


def test_ensemble_size(capsys, write):
    _, out, _ = run(capsys, "ensemble-size", "--degrees", write("d", "2\n2\n1\n1\n"))
    assert out.splitlines()[1].split()[-1] == "180"
    _, out, _ = run(capsys, "ensemble-size", "--degrees", write("dd", "1 1\n1 1\n"), "--directed")
    assert out.splitlines()[1].split()[-1] == "4"


def test_estimate(capsys, write):
    path = write("d", "2\n2\n1\n1\n")
    code, out, _ = run(capsys, "estimate", "--degrees", path, "--pair", "0", "1", "--vertex", "0",
                       "--trials", "1000", "--seed", "4", "--format", "json")
    assert code == 0
    rows = json.loads(out)["results"]
    assert [r["event"] for r in rows] == ["pair(0,1)", "self(0)"]
    assert all(r["trials"] == 1000 for r in rows)
    code, _, err = run(capsys, "estimate", "--degrees", path)
    assert code == 1


def test_verify_small(capsys, write):
    code, out, _ = run(capsys, "verify", "--degrees", write("d", "3\n3\n"), "--pair", "0", "1",
                       "--trials", "1000")
    assert code == 0
    fields = out.splitlines()[1].split()
    assert fields[1] == "1/1" and fields[3] == "1/1" and fields[-1] == "PASS"


def test_verify_json_schema(capsys, write):
    code, out, _ = run(capsys, "verify", "--degrees", write("d", "2\n2\n1\n1\n"), "--all-pairs",
                       "--trials", "20000", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"inputs", "results", "versions"}
    assert doc["inputs"]["command"] == "verify"
    first = doc["results"][0]
    assert first["event"] == "pair(0,1)"
    assert first["oracle"] == first["analytic"] == "2/3"
    assert first["literal_differs"] is True and first["paper_literal"] == "8/15"
    assert all(r["status"] == "PASS" for r in doc["results"])


def test_verify_skips_oracle_above_cap(capsys, write):
    code, out, _ = run(capsys, "verify", "--degrees", write("big", "4\n" * 10), "--pair", "0", "1",
                       "--trials", "5000")
    assert code == 0
    assert "skipped (cap)" in out and "notice:" in out


def test_verify_directed_and_failure_exit(capsys, write):
    path = write("dd", "1 1\n1 1\n")
    code, out, _ = run(capsys, "verify", "--degrees", path, "--directed", "--trials", "2000")
    assert code == 0 and out.count("PASS") == 4 + 1
    # a zero tolerance turns any sampling deviation into a FAIL
    code, out, _ = run(capsys, "verify", "--degrees", write("d", "2\n2\n1\n1\n"), "--pair", "0", "1",
                       "--trials", "1000", "--tolerance", "0")
    assert code == 2 and "FAIL" in out


def test_sample_degrees_round_trip(capsys, tmp_path):
    dst = tmp_path / "deg.txt"
    code, _, _ = run(capsys, "sample-degrees", "--distribution", "power_law:2.5,1,100", "--n", "300",
                     "--seed", "9", "--out", str(dst))
    assert code == 0
    expected = sample_degree_sequence(parse_distribution("power_law:2.5,1,100"), 300, 9)
    assert read_degrees(dst) == expected
    code, _, err = run(capsys, "sample-degrees", "--distribution", "poisson:0", "--n", "3")
    assert code == 1 and "InvalidSpec" in err


def test_output_determinism(capsys, write):
    path = write("d", "3\n2\n2\n1\n")
    outputs = set()
    for _ in range(2):
        for fmt in ("text", "csv", "json"):
            _, out, _ = run(capsys, "verify", "--degrees", path, "--trials", "3000", "--format", fmt,
                            "--workers", "3")
            outputs.add((fmt, out))
    assert len(outputs) == 3
