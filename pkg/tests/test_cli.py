import io
import json
import subprocess
import sys
from fractions import Fraction as F

import numpy as np
import pytest

from dfcalc import GridFn, read_csv
from dfcalc.cli import main
from dfcalc.powers import rising
from dfcalc.scalars import rgamma


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_apply_nabla_sum_of_one(capsys):
    code, out, _ = run(capsys, "apply", "--family", "sum", "--calculus", "nabla", "--side", "left",
                       "--order", "1", "--base", "0", "--builtin", "one", "--length", "6")
    assert code == 0
    f = read_csv(io.StringIO(out))
    assert list(f.values) == [0, 1, 2, 3, 4, 5]


def test_apply_caputo_of_one_is_zero(capsys):
    code, out, _ = run(capsys, "apply", "--family", "caputo", "--calculus", "nabla", "--side", "left",
                       "--order", "1/2", "--base", "0", "--builtin", "one")
    assert code == 0 and not read_csv(io.StringIO(out)).values.any()


def test_apply_riemann_of_one_closed_form(capsys):
    code, out, _ = run(capsys, "apply", "--family", "riemann", "--calculus", "nabla", "--side", "left",
                       "--order", "1/2", "--base", "0", "--builtin", "one", "--length", "12")
    assert code == 0
    for t, v in read_csv(io.StringIO(out)).items():
        assert v == pytest.approx(rising(t, F(-1, 2)) * rgamma(F(1, 2)), rel=1e-12)


def test_apply_monomial_power_rule(capsys):
    code, out, _ = run(capsys, "apply", "--family", "sum", "--calculus", "nabla", "--side", "left",
                       "--order", "1/2", "--base", "0", "--builtin", "monomial:0", "--length", "5")
    assert code == 0 and read_csv(io.StringIO(out))(2) == pytest.approx(1.5)


def test_csv_round_trip_byte_exact(tmp_path, capsys):
    first = tmp_path / "a.csv"
    code, _, _ = run(capsys, "apply", "--family", "caputo", "--calculus", "delta", "--side", "left",
                     "--order", "0.3", "--base", "1/3", "--builtin", "square", "--length", "20",
                     "--output", str(first))
    assert code == 0
    text = first.read_text()
    start = text.splitlines()[1].split(",")[0]
    second = tmp_path / "b.csv"
    code, _, _ = run(capsys, "apply", "--family", "sum", "--calculus", "delta", "--side", "left",
                     "--order", "0", "--base", start, "--input", str(first), "--output", str(second))
    assert code == 0
    assert second.read_bytes() == first.read_bytes()


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "--suite", "left-dual-i", "--order", "1/2", "--length", "16")
    rows = out.strip().splitlines()
    assert code == 0 and rows[0] == "suite,params,seed,residual,pass"
    assert len(rows) == 2 and rows[1].startswith("left-dual-i,") and rows[1].endswith(",pass")
    code, _, _ = run(capsys, "check", "--suite", "q-delta-caputo", "--tol", "0")
    assert code == 1
    code, _, err = run(capsys, "check", "--suite", "bogus")
    assert code == 2 and "bogus" in err


def test_check_all_passes(capsys):
    code, out, _ = run(capsys, "check", "--suite", "all")
    assert code == 0 and ",FAIL" not in out


def test_check_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.csv"
        run(capsys, "check", "--suite", "lng", "--order", "1/2,4/3", "--length", "8", "--seed", "7",
            "--output", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    path = tmp_path / "other.csv"
    run(capsys, "check", "--suite", "lng", "--order", "1/2,4/3", "--length", "8", "--seed", "8",
        "--output", str(path))
    assert path.read_bytes() != outs[0]


def test_ml_examples(capsys):
    code, out, _ = run(capsys, "ml", "--family", "nabla", "--alpha", "1", "--beta", "1",
                       "--lambda", "0.5", "--z", "2")
    assert code == 0 and float(out.splitlines()[1].split(",")[0]) == pytest.approx(4.0)
    code, out, _ = run(capsys, "ml", "--family", "nabla", "--alpha", "1/2", "--lambda", "0", "--z", "3")
    assert out.splitlines()[1] == "1.0,0"
    code, out, _ = run(capsys, "ml", "--family", "delta", "--alpha", "1", "--lambda", "1", "--z", "3")
    value, k = out.splitlines()[1].split(",")
    assert float(value) == pytest.approx(8.0) and k == "4"


def test_ml_exit_codes(capsys):
    assert run(capsys, "ml", "--family", "nabla", "--alpha", "1", "--lambda", "1", "--z", "3")[0] == 2
    assert run(capsys, "ml", "--family", "nabla", "--alpha", "1/4", "--lambda", "0.9", "--z", "30",
               "--kmax", "10")[0] == 3


def test_solve_examples(capsys):
    code, out, err = run(capsys, "solve", "--calculus", "nabla", "--alpha", "1", "--lambda", "0.5",
                         "--a0", "1", "--N", "2", "--forcing", "zero")
    assert code == 0 and read_csv(io.StringIO(out)).values[-1] == 4.0 and "residual=" in err
    code, out, _ = run(capsys, "solve", "--calculus", "delta", "--alpha", "1/2", "--lambda", "0",
                       "--a0", "3", "--N", "5", "--forcing", "zero", "--method", "picard")
    assert np.all(read_csv(io.StringIO(out)).values == 3.0)


def test_solve_methods_agree(capsys):
    cols = []
    for method in ("ml", "march"):
        _, out, _ = run(capsys, "solve", "--calculus", "nabla", "--alpha", "1/2", "--lambda", "0.3",
                        "--N", "12", "--forcing", "one", "--method", method)
        cols.append(read_csv(io.StringIO(out)).values)
    assert np.max(np.abs(cols[0] - cols[1])) < 1e-8


def test_solve_problem_file(tmp_path, capsys):
    forcing = GridFn(0, np.linspace(-1, 1, 8))
    (tmp_path / "f.csv").write_text(forcing.to_csv())
    spec = {"calculus": "delta", "alpha": "1/4", "lambda": -0.25, "a0": 2, "N": 8, "forcing": "f.csv"}
    (tmp_path / "p.json").write_text(json.dumps(spec))
    code, out, _ = run(capsys, "solve", "--problem", str(tmp_path / "p.json"), "--method", "ml")
    assert code == 0
    y = read_csv(io.StringIO(out))
    assert y.start == F(-3, 4) and y.values[0] == 2.0
    (tmp_path / "bad.json").write_text(json.dumps({**spec, "gamma": 1}))
    assert run(capsys, "solve", "--problem", str(tmp_path / "bad.json"))[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["apply", "--family", "sum"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["ml", "--family", "nabla", "--alpha", "x/y", "--lambda", "0", "--z", "1"])
    assert info.value.code == 2
    code, _, err = run(capsys, "apply", "--family", "caputo", "--calculus", "nabla", "--side", "left",
                       "--order", "3/2", "--base", "0", "--input", "/nonexistent.csv")
    assert code == 2
    code, _, err = run(capsys, "solve", "--calculus", "nabla", "--alpha", "2", "--lambda", "0.1",
                       "--N", "3")
    assert code == 2 and "alpha" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dfcalc", "ml", "--family", "nabla", "--alpha", "1",
                          "--lambda", "0.5", "--z", "2"], capture_output=True, text=True, check=True)
    assert out.stdout.splitlines()[0] == "value,K"
