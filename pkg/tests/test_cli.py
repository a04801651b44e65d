import json

import pytest

from orientlab import Digraph, random_digraph, read_digraph, write_digraph
from orientlab.certificates import CertificateFile, replay
from orientlab.cli import main


def complete(n):
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def verify(capsys, cert, graph):
    return run(capsys, "cert", "verify", cert, "--input", graph)


def test_gen_blowup_and_shift(tmp_path, capsys):
    out = tmp_path / "b.txt"
    code, text, _ = run(capsys, "gen", "blowup", "--k", 4, "--blob", 3, "--out", out)
    assert code == 0 and read_digraph(out).n == 15
    code, _, _ = verify(capsys, f"{out}.audit.cert.json", out)
    assert code == 0
    out = tmp_path / "s.txt"
    run(capsys, "gen", "shift", "--m", 5, "--r", 3, "--out", out)
    assert read_digraph(out).n == 10


def test_gen_balanced_writes_layout(tmp_path, capsys):
    out = tmp_path / "bal.txt"
    code, text, _ = run(capsys, "gen", "augmented", "--m", 3, "--k", 3, "--balance", "--out", out)
    assert code == 0 and "2384 vertices" in text
    layout = json.loads((tmp_path / "bal.txt.layout.json").read_text())
    assert layout["generations"]["P"] == 7


def test_gen_rejects_oversized(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "gshift", "--m", 4, "--k", 3, "--out", tmp_path / "g.txt")
    assert code == 3 and "cap" in err


def test_check_absent_and_present(tmp_path, capsys):
    g = tmp_path / "b42.txt"
    run(capsys, "gen", "blowup", "--k", 4, "--blob", 2, "--out", g)
    code, text, _ = run(capsys, "check", g, "--pattern", "++++")
    assert code == 0 and "NotFound(exhaustive=True)" in text
    assert verify(capsys, f"{g}.check.cert.json", g)[0] == 0

    c5 = tmp_path / "c5.txt"
    write_digraph(Digraph(5, [(i, (i + 1) % 5) for i in range(5)]), c5)
    code, text, _ = run(capsys, "check", c5, "--pattern", "+++++")
    assert code == 0 and "Found" in text
    assert verify(capsys, f"{c5}.check.cert.json", c5)[0] == 0


def test_check_family_on_augmented(tmp_path, capsys):
    g = tmp_path / "a.txt"
    run(capsys, "gen", "augmented", "--m", 3, "--k", 3, "--out", g)
    code, text, _ = run(capsys, "check", g, "--family", 3)
    assert code == 0 and "3/3 NotFound" in text
    code, text, _ = verify(capsys, f"{g}.check.cert.json", g)
    assert code == 0 and text.count("ok") == 3


def test_check_inconclusive_exit_code(tmp_path, capsys):
    g = tmp_path / "b.txt"
    run(capsys, "gen", "blowup", "--k", 4, "--blob", 3, "--out", g)
    code, text, _ = run(capsys, "check", g, "--pattern", "++++", "--budget", 3)
    assert code == 2 and "Inconclusive" in text


def test_chi(tmp_path, capsys):
    g = tmp_path / "k4.txt"
    write_digraph(complete(4), g)
    code, text, _ = run(capsys, "chi", g, "--exact")
    assert code == 0 and "chi = 4" in text
    s = tmp_path / "s52.txt"
    run(capsys, "gen", "shift", "--m", 5, "--r", 2, "--out", s)
    code, text, _ = run(capsys, "chi", s, "--exact")
    assert "chi = 3" in text
    assert verify(capsys, f"{s}.chi.cert.json", s)[0] == 0
    r = tmp_path / "r200.txt"
    write_digraph(random_digraph(200, 0.1, seed=1), r)
    code, text, _ = run(capsys, "chi", r, "--bounds")
    assert code == 0 and "<= chi <=" in text


def test_extract(tmp_path, capsys):
    g = tmp_path / "k10.txt"
    write_digraph(complete(10), g)
    code, text, _ = run(capsys, "extract", g, "++--", "--epsilon", "0.4")
    assert code == 0 and text.startswith("Found")
    assert verify(capsys, f"{g}.extract.cert.json", g)[0] == 0
    assert verify(capsys, f"{g}.trace.json", g)[0] == 0

    r = tmp_path / "r40.txt"
    write_digraph(random_digraph(40, 0.6, seed=2), r)
    code, text, _ = run(capsys, "extract", r, "+-+-", "--epsilon", "0.3")
    assert code == 0 and "sequence" in text and "set sizes" in text

    code, _, err = run(capsys, "extract", g, "++++")
    assert code == 3 and "PatternNotGuaranteed" in err


def test_extract_failure_writes_trace(tmp_path, capsys):
    g = tmp_path / "c4.txt"
    write_digraph(Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), g)
    code, _, err = run(capsys, "extract", g, "+-+-", "--epsilon", "1/4")
    assert code == 2 and "ExtractionFailed" in err
    trace = json.loads((tmp_path / "c4.txt.trace.json").read_text())
    assert trace["certificates"][0]["payload"]["embedding"] is None


def test_classify(capsys):
    assert run(capsys, "classify", "++--")[1] == "canonical ++--\nclass AlwaysAppears\nblocks [2,2]\n"
    assert "SingleFlip" in run(capsys, "classify", "+++-")[1]
    text = run(capsys, "classify", "+-")[1]
    assert "canonical ++" in text and "DirectedCycle" in text
    assert run(capsys, "classify", "+x")[0] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("suite", "cloning", "--trials", 50, "--seed", 7),
        ("suite", "gallai-roy", "--n", 20, "--trials", 20),
        ("suite", "blowup", "--kmax", 5),
    ],
)
def test_suites(capsys, argv):
    code, text, _ = run(capsys, *argv)
    assert code == 0 and ": pass" in text


def test_bad_inputs(tmp_path, capsys):
    assert run(capsys, "check", tmp_path / "missing.txt", "--pattern", "+++")[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 0\n")
    assert run(capsys, "chi", bad)[0] == 3
    assert run(capsys, "no-such-verb")[0] == 3


def test_tampered_certificate_fails(tmp_path, capsys):
    g = tmp_path / "k5.txt"
    write_digraph(complete(5), g)
    run(capsys, "chi", g)
    cert_path = tmp_path / "k5.txt.chi.cert.json"
    cert = CertificateFile.read(cert_path)
    cert.entries[0]["payload"]["coloring"]["0"] = 1
    cert.write(cert_path)
    assert verify(capsys, cert_path, g)[0] == 1
    # digest mismatch against another input
    other = tmp_path / "k4.txt"
    write_digraph(complete(4), other)
    assert replay(CertificateFile.read(cert_path), other.read_bytes())[0][1] == "input digest mismatch"


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "orientlab", "classify", "+-+-"], capture_output=True, text=True)
    assert res.returncode == 0 and "AlwaysAppears" in res.stdout
