import pytest

from k3picard import catalog
from k3picard.cli import main
from k3picard.geommodels import load_record


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_deg6_random_writes_record(capsys, tmp_path):
    path = tmp_path / "pair.txt"
    rc, _, _ = run(capsys, "deg6", "random", "--prime", "7", "--seed", "3", "--out", str(path))
    assert rc == 0
    rec = load_record(path.read_text())
    assert rec.kind == "degree6-pair" and set(rec.polys) == {"f2", "f3"}
    rc, again, _ = run(capsys, "deg6", "random", "--prime", "7", "--seed", "3")
    assert again == path.read_text()


def test_deg8_disc_of_example_net(capsys):
    rc, out, _ = run(capsys, "deg8", "disc", "--example", "deg8-f47")
    assert rc == 0
    g6 = load_record(out).polys["g6"]
    assert g6.scale(pow(17, -1, 47)) == catalog.deg8_sextic()


def test_tritangent_scan_reports_example_line(capsys):
    rc, out, _ = run(capsys, "tritangent", "scan", "--example", "deg8-sextic-f47", "--max-ext", "1")
    assert rc == 0
    assert "1 1 32 17" in out.splitlines()


def test_rank_bound_on_printed_polynomial(capsys):
    rc, out, _ = run(capsys, "rank", "bound", "--prime", "47", "--example", "deg8-q")
    assert rc == 0
    assert "validation: ok" in out and "Phi_1^2" in out and ": 2" in out


def test_rank_bound_from_weil_file(capsys, tmp_path):
    f = tmp_path / "weil.txt"
    f.write_text(" ".join(str(c) for c in catalog.deg6_weil()))
    rc, out, _ = run(capsys, "rank", "bound", "--prime", "47", "--weil-file", str(f))
    assert rc == 0 and "eps: 1" in out


def test_zeta_count_and_cache(capsys, tmp_path):
    rc, out, _ = run(capsys, "zeta", "count", "--example", "deg6-sextic-f47", "--n", "1")
    assert rc == 0
    p, n, N = map(int, out.split())
    assert (p, n) == (47, 1)
    cache = tmp_path / "counts.txt"
    rc, out2, _ = run(capsys, "zeta", "count", "--example", "deg6-sextic-f47", "--n", "1", "--counts-cache", str(cache))
    assert out2.split() == ["47", "1", str(N)]
    assert cache.read_text().split() == ["47", "1", str(N)]


def test_crt_lift(capsys):
    rc, out, _ = run(capsys, "crt-lift", "--p", "5", "--q", "7", "--x", "2,0", "--y", "3,1")
    assert rc == 0 and out.split() == ["17", "15"]
    rc, _, err = run(capsys, "crt-lift", "--p", "5", "--q", "5", "--x", "2", "--y", "3")
    assert rc == 1 and "EqualPrimes" in err


def test_lift_round_trip(capsys, tmp_path):
    path = tmp_path / "pair.txt"
    run(capsys, "deg6", "random", "--prime", "5", "--seed", "1", "--out", str(path))
    rc, out, _ = run(capsys, "lift", "--prime", "5", "--model", str(path), "--spread", "2")
    assert rc == 0
    rec = load_record(out)
    assert rec.kind == "degree6-pair"


def test_lines_scan_and_free(capsys):
    rc, out, _ = run(capsys, "lines", "scan", "--example", "deg6-f47", "--max-ext", "1")
    assert rc == 0
    assert "1 0 0 0 1 0 | 0 0 0 0 1" in out.splitlines()
    rc, out, _ = run(capsys, "lines", "free", "--example", "deg6-q", "--method", "reduction")
    assert rc == 0 and out.startswith("free: True")


def test_certify_and_verify(capsys, tmp_path):
    cert = tmp_path / "deg6.cert"
    rc, _, _ = run(capsys, "deg6", "certify", "--prime", "47", "--example", "deg6-q", "--paper-weil", "--out", str(cert))
    assert rc == 0
    rc, out, _ = run(capsys, "verify", str(cert))
    assert rc == 0 and out == "valid\n"
    bad = tmp_path / "bad.cert"
    bad.write_text(cert.read_text().replace("rank = 1", "rank = 2"))
    rc, _, err = run(capsys, "verify", str(bad))
    assert rc == 1 and "ParseError" in err


def test_missing_model_is_an_error(capsys):
    rc, _, err = run(capsys, "tritangent", "scan")
    assert rc == 1 and "--model" in err


def test_unknown_subcommand_exits():
    with pytest.raises(SystemExit):
        main(["nonsense"])
