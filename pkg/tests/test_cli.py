import json

import pytest

from naive_integral.cli import EXIT_DOMAIN, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_saddles_json(capsys):
    code, out = run(capsys, "saddles", "--tau", "0.1", "--prec", "40", "--json")
    assert code == EXIT_OK
    obj = json.loads(out.out)
    assert "q1" in json.dumps(obj)


def test_report_out_of_range(capsys):
    code, out = run(capsys, "report", "--tau", "0.3")
    assert code == EXIT_DOMAIN
    assert "error" in out.err


def test_exactly_one_of_t_tau(capsys):
    code, _ = run(capsys, "saddles", "--prec", "40")
    assert code == EXIT_DOMAIN
    with pytest.raises(SystemExit):
        main(["saddles", "--t", "1000", "--tau", "0.1"])


def test_low_precision_rejected(capsys):
    code, _ = run(capsys, "saddles", "--tau", "0.1", "--prec", "10")
    assert code == EXIT_DOMAIN


def test_asymptotic_json_round_trip(capsys):
    code, out = run(capsys, "asymptotic", "--which", "j4", "--tau", "0.01", "--prec", "40", "--json")
    assert code == EXIT_OK
    obj = json.loads(out.out)
    assert obj["value"][0].startswith("-4126.85494274602639")


def test_psi_command(capsys):
    code, out = run(capsys, "psi", "--x", "0.5", "--json")
    assert code == EXIT_OK
    obj = json.loads(out.out)
    assert obj["theta"][0][:30] == obj["dual"][0][:30]


def test_z0_grid_csv(capsys):
    code, out = run(capsys, "z0", "--grid", "1000", "1001", "4", "--csv")
    assert code == EXIT_OK
    lines = out.out.strip().splitlines()
    assert len(lines) == 6  # header and five grid points


@pytest.mark.parametrize("argv", [
    ("series", "q2", "--order", "12"),
    ("series", "A", "--saddle", "q1", "--n", "2", "--order", "24"),
    ("series", "E", "--saddle", "q2"),
])
def test_series_agrees_with_printed(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_OK
    assert "MISMATCH" not in out.out


def test_series_requires_saddle_kind(capsys):
    code, _ = run(capsys, "series", "F", "--saddle", "q1", "--order", "8")
    assert code == EXIT_OK


def test_report_t1000(capsys):
    code, out = run(capsys, "report", "--t", "1000", "--skip", "realline")
    assert code == EXIT_OK, out.out
    assert "FAIL" not in out.out


def test_report_tau001_uses_published_table(capsys):
    code, out = run(capsys, "report", "--tau", "0.01", "--skip", "realline")
    assert code == EXIT_OK, out.out
    row = next(line for line in out.out.splitlines() if "contour:J2" in line)
    assert "diff" in row and row.rstrip().endswith("pass")
    assert "asymptotic:J2 (published)" in out.out
