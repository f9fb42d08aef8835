import csv
import math

import numpy as np
import pytest

from bvfourier.cli import EXIT_CHECK_FAILED, EXIT_DATA, EXIT_OK, main


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(c) for c in row] for row in rows[1:]])


def test_transform_box_zero_frequency_row(tmp_path):
    out = tmp_path / "t.csv"
    rc = main(
        [
            "transform", "--family", "box", "--width", "2", "--cutoff", "50",
            "--a", "-50", "--b", "50", "--n", "16001", "--m", "101", "--out", str(out),
        ]
    )
    assert rc == EXIT_OK
    header, data = read_csv(out)
    assert header == ["t", "re", "im"]
    row0 = data[np.abs(data[:, 0]).argmin()]
    assert row0[0] == 0.0
    assert row0[1] == pytest.approx(2.0, abs=2.0 * (100.0 / 16000.0))  # O(h) indicator bias
    assert row0[2] == 0.0


def test_hilbert_poisson_matches_conjugate(tmp_path):
    out = tmp_path / "h.csv"
    rc = main(
        [
            "hilbert", "--family", "poisson_kernel", "--scale", "1",
            "--a", "-50", "--b", "50", "--n", "8193", "--out", str(out),
        ]
    )
    assert rc == EXIT_OK
    header, data = read_csv(out)
    assert header == ["x", "value"]
    x, v = data[:, 0], data[:, 1]
    inner = np.abs(x) <= 40.0
    expected = x / (math.pi * (1.0 + x * x))
    assert np.max(np.abs(v - expected)[inner]) <= 1e-3


def test_hilbert_periodic_method(tmp_path):
    out = tmp_path / "p.csv"
    rc = main(
        ["hilbert", "--family", "triangle_wave_periodic", "--method", "periodic",
         "--n", "1025", "--out", str(out)]
    )
    assert rc == EXIT_OK
    _, data = read_csv(out)
    assert data.shape[0] == 1025


def test_radial_columns(tmp_path):
    out = tmp_path / "r.csv"
    rc = main(
        [
            "radial", "--family", "box", "--width", "2", "--dim", "3",
            "--b", "2", "--n", "2049", "--radii", "0.5,1,2,5", "--out", str(out),
        ]
    )
    assert rc == EXIT_OK
    header, data = read_csv(out)
    assert header == ["r", "leray", "ibp", "oracle"]
    r = data[:, 0]
    expected = 4.0 * math.pi * (np.sin(r) - r * np.cos(r)) / r**3
    assert np.max(np.abs(data[:, 1] - expected) / np.abs(expected)) <= 1e-3
    assert np.all(np.isfinite(data))


def test_radial_from_csv(tmp_path):
    prof = tmp_path / "prof.csv"
    s = np.linspace(0.0, 2.0, 1025)
    vals = np.where(np.abs(s - 1.0) <= 0.5, 0.5 * (1.0 + np.cos(np.pi * (s - 1.0) / 0.5)), 0.0)
    prof.write_text("s,f0\n" + "\n".join(f"{float(a)!r},{float(b)!r}" for a, b in zip(s, vals)) + "\n")
    out = tmp_path / "r.csv"
    rc = main(["radial", "--csv", str(prof), "--dim", "2", "--radii", "1,2", "--out", str(out)])
    assert rc == EXIT_OK


def test_verify_clean_suite_exit_zero(tmp_path):
    out = tmp_path / "report.txt"
    rc = main(["verify", "--suite", "periodic", "--profile", "fast", "--out", str(out)])
    assert rc == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines, "empty report"
    for line in lines:
        name, status, measured, bound, grid_n = line.split(" ")
        assert status == "PASS"
        assert float(measured) <= float(bound)
    twin = out.with_suffix(".csv")
    with open(twin, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["name", "status", "measured", "bound", "grid_n", "notes"]
    assert len(rows) - 1 == len(lines)


def test_verify_exit_code_reflects_report(tmp_path):
    # the hardy suite carries the recorded unit-constant violations, so a
    # failing line and exit status must agree
    out = tmp_path / "report.txt"
    rc = main(["verify", "--suite", "hardy", "--profile", "fast", "--out", str(out)])
    statuses = [line.split(" ")[1] for line in out.read_text().strip().splitlines()]
    assert rc == (EXIT_CHECK_FAILED if "FAIL" in statuses else EXIT_OK)
    assert "FAIL" in statuses  # no silent passes


def test_verify_reports_are_deterministic(tmp_path):
    out1, out2 = tmp_path / "r1.txt", tmp_path / "r2.txt"
    assert main(["verify", "--suite", "lemma-dc", "--profile", "fast", "--out", str(out1)]) == main(
        ["verify", "--suite", "lemma-dc", "--profile", "fast", "--out", str(out2)]
    )
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.with_suffix(".csv").read_bytes() == out2.with_suffix(".csv").read_bytes()


def test_identical_config_gives_byte_identical_files(tmp_path):
    args = ["transform", "--family", "gaussian", "--n", "2049", "--cutoff", "10", "--m", "201"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == EXIT_OK
    assert main(args + ["--out", str(out2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()


def test_thread_cap_preserves_report_order(tmp_path, monkeypatch):
    out1, out2 = tmp_path / "serial.txt", tmp_path / "threaded.txt"
    main(["verify", "--suite", "all", "--profile", "fast", "--out", str(out1)])
    monkeypatch.setenv("BVF_THREADS", "3")
    main(["verify", "--suite", "all", "--profile", "fast", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_data_error_exit_code(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,value\n0,1\n0.5,nonsense\n")
    rc = main(["hilbert", "--csv", str(bad), "--out", str(tmp_path / "h.csv")])
    assert rc == EXIT_DATA


def test_hilbert_rejects_double_input(tmp_path):
    rc = main(
        ["hilbert", "--family", "gaussian", "--csv", "whatever.csv", "--out", str(tmp_path / "x.csv")]
    )
    assert rc == EXIT_DATA


def test_hilbert_from_csv_round_trip(tmp_path):
    src = tmp_path / "g.csv"
    x = np.linspace(-20.0, 20.0, 2049)
    vals = np.exp(-x * x / 2.0)
    src.write_text("x,value\n" + "\n".join(f"{float(a)!r},{float(b)!r}" for a, b in zip(x, vals)) + "\n")
    out = tmp_path / "h.csv"
    rc = main(["hilbert", "--csv", str(src), "--method", "multiplier", "--out", str(out)])
    assert rc == EXIT_OK
    _, data = read_csv(out)
    from scipy.special import dawsn

    expected = 2.0 / math.sqrt(math.pi) * dawsn(data[:, 0] / math.sqrt(2.0))
    assert np.max(np.abs(data[:, 1] - expected)) <= 1e-4
