import csv
import io
import subprocess
import sys

import pytest

from mbf.cli import format_q_ave, main, parse_ident_record


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_generate_m2():
    code, text = run("generate", "--n", "2")
    assert code == 0
    assert text.split() == ["0000", "0001", "0011", "0101", "0111", "1111"]


def test_generate_hex_and_limit():
    code, text = run("generate", "--n", "3", "--format", "hex", "--limit", "3")
    assert code == 0 and text.split() == ["x00", "x01", "x03"]


def test_generate_resume():
    code, text = run("generate", "--n", "2", "--from", "0011")
    assert code == 0 and text.split() == ["0101", "0111", "1111"]


def test_generate_errors():
    assert run("generate", "--n", "7")[0] == 4
    assert run("generate", "--n", "2", "--from", "0100")[0] == 3
    assert run("generate", "--n", "2", "--from", "01x0")[0] == 2
    assert run("generate", "--n", "2", "--from", "00110011")[0] == 2


def test_count():
    assert run("count", "--n", "4") == (0, "M_4 = 168\n")
    code, _ = run("count", "--n", "7")
    assert code == 4


def test_count_error_names_known_value(capsys):
    main(["count", "--n", "8"], out=io.StringIO())
    assert "56130437228687557907788" in capsys.readouterr().err


def test_identify_fun_record_roundtrip():
    code, text = run("identify", "--n", "3", "--fun", "00110111")
    assert code == 0
    n, mint, maxf, q = parse_ident_record(text)
    assert (n, mint, maxf) == (3, [2, 5], [1, 4])
    assert q <= 3 * 4


def test_identify_hex_input():
    assert run("identify", "--n", "3", "--fun", "x37")[1] == run("identify", "--n", "3", "--fun", "00110111")[1]


def test_identify_mint_mode():
    code, text = run("identify", "--n", "3", "--minT", "2,5")
    assert code == 0 and text.startswith("n=3 minT=[2,5] maxF=[1,4] q=")
    code, text = run("identify", "--n", "32", "--minT", str(0b11 << 30))
    assert code == 0 and parse_ident_record(text)[1] == [0b11 << 30]
    code, text = run("identify", "--n", "3", "--minT", "")
    assert code == 0 and text.startswith("n=3 minT=[] maxF=[7]")


def test_identify_errors():
    assert run("identify", "--n", "3", "--fun", "01000000")[0] == 3
    assert run("identify", "--n", "3", "--fun", "0011")[0] == 2
    assert run("identify", "--n", "3", "--minT", "1,3")[0] == 3
    assert run("identify", "--n", "3", "--minT", "9")[0] == 3
    assert run("identify", "--n", "3", "--minT", "a,b")[0] == 2
    assert run("identify", "--n", "33", "--minT", "1")[0] == 4


def test_parse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["identify", "--n", "3"], out=io.StringIO())
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--n", "-1"], out=io.StringIO())
    assert exc.value.code == 2


def test_verify_writes_csvs(tmp_path):
    code, text = run("verify", "--n", "3", "--out", str(tmp_path))
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "n,total,q_max,q_ave,peak_tpi_max,peak_tpc_max"
    assert lines[1].startswith("3,20,6,4.70,")
    assert lines[-1] == "bound check: ok"
    with open(tmp_path / "summary_n3.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[1][:4] == ["3", "20", "6", "4.70"]
    with open(tmp_path / "q_hist_n3.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["q", "count"] and sum(int(c) for _, c in rows[1:]) == 20
    with open(tmp_path / "ratio_hist_n3.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["ratio_percent_bin", "count_excluding_constant_0"]
    assert sum(int(c) for _, c in rows[1:]) == 19
    assert not list(tmp_path.glob("*.tmp"))


def test_verify_n0_reports_bound_violation():
    code, text = run("verify", "--n", "0")
    assert code == 6
    assert "bound violation: f=1 q=1 n*m=0" in text


def test_verify_scale_guard():
    assert run("verify", "--n", "7")[0] == 4


def test_matrix():
    assert run("matrix", "--n", "1") == (0, "1 1\n0 1\n")
    code, text = run("matrix", "--n", "2", "--transpose")
    assert [line.replace(" ", "") for line in text.splitlines()] == ["1000", "1100", "1010", "1111"]
    assert run("matrix", "--n", "7")[0] == 4


def test_q_ave_truncates():
    assert format_q_ave(5, 3) == "1.66"
    assert format_q_ave(16, 6) == "2.66"
    assert format_q_ave(0, 0) == "0.00"


def test_parse_ident_record_rejects_garbage():
    with pytest.raises(ValueError):
        parse_ident_record("n=3 minT=2,5")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mbf", "count", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "M_3 = 20\n"
