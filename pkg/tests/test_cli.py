import csv
import io
import json
import math

import pytest

from kslimit import oracle
from kslimit.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(body))


def test_eval_median():
    code, out = run("eval", "0.82757", "--format", "csv")
    assert code == 0
    assert abs(float(rows(out)[0]["sf"]) - 0.5) < 5e-5


def test_eval_zero():
    r = rows(run("eval", "0", "--format", "csv")[1])[0]
    assert (float(r["sf"]), float(r["cdf"]), float(r["pdf"])) == (1, 0, 0)


def test_eval_baseline_anomaly():
    r = rows(run("eval", "--engine", "baseline", "0.01", "--format", "csv")[1])[0]
    assert float(r["sf"]) > 1


def test_eval_order_and_grid():
    out = run("eval", "2", "1", "--grid", "0.5", "0.25", "1", "--format", "csv")[1]
    assert [float(r["x"]) for r in rows(out)] == [2, 1, 0.5, 0.75, 1.0]


def test_eval_bad_token(capsys):
    with pytest.raises(SystemExit) as e:
        main(["eval", "abc"])
    assert e.value.code == 1 and "abc" in capsys.readouterr().err


def test_eval_nonfinite():
    assert run("eval", "inf")[0] == 2


def test_invert():
    out = json.loads(run("invert", "--sf", "0.5", "--cdf", "1e-300", "--sf", "0",
                         "--format", "json")[1])
    assert abs(out[0]["x"] - 0.82757355518990769) < 1e-12
    assert 0.04 < out[1]["x"] < 0.1
    assert out[2]["x"] == math.inf


def test_invert_out_of_range():
    assert run("invert", "--sf", "1.5")[0] == 2


def test_invert_text_inf():
    assert "inf" in run("invert", "--sf", "0")[1]


def test_round_trip():
    xs = ["0.05", "0.3", "0.82", "0.9", "1.7", "3", "5"]
    ev = rows(run("eval", *xs, "--format", "csv")[1])
    for x, r in zip(xs, ev):
        if float(r["sf"]) <= 0.5:
            inv = rows(run("invert", "--sf", r["sf"], "--format", "csv")[1])[0]
        else:
            inv = rows(run("invert", "--cdf", r["cdf"], "--format", "csv")[1])[0]
        assert abs(float(inv["x"]) - float(x)) <= 1e-10 * float(x)


def test_kstest(tmp_path):
    f = tmp_path / "pit.txt"
    f.write_text("# four points\n0.25\n0.5\n\n0.75\n1.0\n")
    r = rows(run("kstest", "--data", str(f), "--format", "csv")[1])[0]
    assert float(r["d_plus"]) == 0 and float(r["d_minus"]) == 0.25 and float(r["d"]) == 0.25


def test_kstest_repeated(tmp_path):
    from kslimit.dist import kolmogorov_sf
    f = tmp_path / "pit.txt"
    f.write_text("0.999\n" * 10)
    r = rows(run("kstest", "--data", str(f), "--format", "csv")[1])[0]
    # D_n^- is attained at the first order statistic: 0.999 - 0/10
    assert float(r["d_minus"]) == 0.999 and float(r["d"]) == 0.999
    assert float(r["p_two_sided_asymptotic"]) == pytest.approx(
        kolmogorov_sf(math.sqrt(10) * 0.999), rel=1e-15)


def test_kstest_grid_large_n(tmp_path):
    f = tmp_path / "pit.txt"
    f.write_text("\n".join(str(i / 400) for i in range(1, 401)))
    r = rows(run("kstest", "--data", str(f), "--format", "csv")[1])[0]
    assert float(r["d"]) == pytest.approx(1 / 400)
    assert float(r["p_two_sided_asymptotic"]) > 0.999999


def test_kstest_malformed(tmp_path, capsys):
    f = tmp_path / "pit.txt"
    f.write_text("0.1\n0.2\nfoo\n")
    assert run("kstest", "--data", str(f))[0] != 0
    assert "line 3" in capsys.readouterr().err


def test_table():
    out = rows(run("table", "--alpha", "0.5", "0.05", "--n", "1", "100", "--format", "csv")[1])
    assert list(out[0]) == ["n", "alpha=0.5", "alpha=0.05"]
    assert abs(float(out[0]["alpha=0.5"]) - 0.82757) < 1e-5
    ref = oracle.oracle_quantile_sf(0.05, 60) / 10
    assert abs(float(out[1]["alpha=0.05"]) - float(ref)) < 1e-10


def test_table_tiny_alpha():
    a = repr(2 * math.exp(-32))
    out = rows(run("table", "--alpha", a, "--n", "4", "--format", "csv")[1])
    assert abs(float(list(out[0].values())[1]) - 2.0) < 0.02


def test_smirnov():
    r = rows(run("smirnov", "--n", "2", "0.5", "--format", "csv")[1])[0]
    assert float(r["sf_exact"]) == 0.25


def test_bench_csv_rows():
    code, out = run("bench", "--suite", "all", "--no-audit", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert lines[0] == "engine,metric,mean,std,max,failure_rate,tol_rate"


def test_bench_sf_text():
    out = run("bench", "--suite", "isf", "--no-audit")[1]
    assert "Improved" in out and "Baseline" in out


def test_csv_deterministic():
    a = run("eval", "--grid", "0", "0.01", "2", "--format", "csv")[1]
    b = run("eval", "--grid", "0", "0.01", "2", "--format", "csv")[1]
    assert a == b and "\r" not in a


def test_precision():
    out = rows(run("eval", "1", "--precision", "5", "--format", "csv")[1])[0]
    assert out["sf"] == "0.27"


def test_oracle_eval():
    out = rows(run("oracle-eval", "1", "--digits", "60", "--format", "csv")[1])[0]
    assert out["sf"].startswith("0.26999967167735452")


def test_engine_restricted():
    with pytest.raises(SystemExit) as e:
        main(["table", "--engine", "baseline"])
    assert e.value.code == 1
