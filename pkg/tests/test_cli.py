import json
import subprocess
import sys

import pytest

from paucity import cli, sysfile
from paucity.normalize import NonlinearSystem, SymmetricSystem


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, system in {
        "product": SymmetricSystem(2, [[0, 1]]),
        "s23": SymmetricSystem(3, [[0, 1, 0], [0, 0, 1]]),
        "s12": SymmetricSystem(2, [[1, 0], [0, 1]]),
        "nonlinear": NonlinearSystem(3, (2, 3), (1, 1), (((1, (2,)),), ())),
    }.items():
        path = tmp_path / f"{name}.json"
        sysfile.save(system, path)
        out[name] = str(path)
    zero = tmp_path / "zero.json"
    zero.write_text('{"kind": "linear", "k": 2, "rows": [[0, 0]]}')
    out["zero"] = str(zero)
    return out


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_normalize_summary(capsys, files):
    assert run(capsys, "normalize", "--system", files["s23"]) == (0, "k=3 degrees=[2,3] R=[1] w=1 A=1\n", "")


def test_normalize_degenerate_exits_3(capsys, files):
    code, _, err = run(capsys, "normalize", "--system", files["zero"])
    assert code == 3
    assert "degenerate" in err


def test_normalize_corollary_weight(capsys, tmp_path):
    path = tmp_path / "c.json"
    assert run(capsys, "gen", "corollary", "--k", "4", "--r", "2", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "normalize", "--system", str(path))
    assert code == 0 and " w=3 " in out


def test_census_both_csv(capsys, files):
    code, out, _ = run(capsys, "census", "--system", files["product"], "--x", "6", "--method", "both", "--format", "csv")
    assert code == 0
    assert out == "X,N,T,Tstar,Tdagger\n6,86,66,0,20\n"


def test_census_trivial_system(capsys, files):
    code, out, _ = run(capsys, "census", "--system", files["s12"], "--x", "10", "--format", "csv")
    assert out.splitlines()[1] == "10,190,190,0,0"


def test_census_methods_agree(capsys, files):
    outs = set()
    for method in ("brute", "divisor", "both"):
        code, out, _ = run(capsys, "census", "--system", files["s23"], "--x-list", "4,8,12", "--method", method, "--format", "csv")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_census_nonlinear(capsys, files):
    code, out, _ = run(capsys, "census", "--system", files["nonlinear"], "--x-list", "3,6", "--method", "both", "--format", "jsonl")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[1] == {"X": 6, "N": 996, "T": 996, "Tstar": 0, "Tdagger": 0}


def test_census_table_format(capsys, files):
    code, out, _ = run(capsys, "census", "--system", files["product"], "--x-list", "4,8")
    lines = out.splitlines()
    assert lines[0].split() == ["X", "N", "T", "Tstar", "Tdagger"]
    assert lines[2].split() == ["8", "160", "120", "0", "40"]


def test_census_budget_exits_4(capsys, files):
    code, _, err = run(capsys, "census", "--system", files["product"], "--x-list", "8,16", "--budget", "10")
    assert code == 4
    assert "budget" in err


def test_budget_from_environment(capsys, files, monkeypatch):
    monkeypatch.setenv("PAUCITY_BUDGET", "10")
    assert run(capsys, "census", "--system", files["product"], "--x", "8")[0] == 4
    assert run(capsys, "census", "--system", files["product"], "--x", "8", "--budget", "100000")[0] == 0


def test_capacity_exits_4(capsys, tmp_path):
    path = tmp_path / "big.json"
    sysfile.save(SymmetricSystem(16, [[0] * 15 + [1]]), path)
    assert run(capsys, "census", "--system", str(path), "--x", "1000000")[0] == 4


def test_mismatch_exits_5(capsys, files, monkeypatch):
    real = cli.divisor_census

    def broken(system, X, cfg):
        rep = real(system, X, cfg)
        rep.solutions = rep.solutions[1:]
        return rep

    monkeypatch.setattr(cli, "divisor_census", broken)
    code, _, err = run(capsys, "census", "--system", files["product"], "--x", "6", "--method", "both")
    assert code == 5
    assert "disagree" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["census", "--x", "3"],
        ["census", "--system", "missing.json", "--x", "3"],
        ["census", "--system", "{product}", "--x-list", "8,4"],
        ["census", "--system", "{product}"],
        ["gen", "theta", "--minpoly", "2,0,1", "--k", "3"],
        ["gen", "corollary", "--k", "3"],
        ["gen", "product-solution"],
    ],
)
def test_input_errors_exit_2(capsys, files, argv):
    argv = [a.format(**files) for a in argv]
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(files):
    with pytest.raises(SystemExit) as exc:
        cli.main(["census", "--system", files["product"], "--x", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--seed", "-1"])
    assert exc.value.code == 2


def test_gen_theta_matches_display(capsys):
    code, out, _ = run(capsys, "gen", "theta", "--minpoly", "1,0,1", "--k", "4")
    assert code == 0
    assert sorted(sysfile.loads(out).rows) == sorted([(0, -1, 0, 1), (-1, 0, 1, 0)])


def test_gen_corollary_with_zero_coeffs(capsys):
    code, out, _ = run(capsys, "gen", "corollary", "--k", "5", "--r", "3", "--coeffs", "0")
    assert code == 0
    assert sysfile.loads(out) == SymmetricSystem(5, [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])


def test_gen_corollary_with_matrix(capsys):
    code, out, _ = run(capsys, "gen", "corollary", "--k", "4", "--r", "2", "--coeffs", "1,2;3,4")
    assert sysfile.loads(out).rows == ((1, 2, 1, 0), (3, 4, 0, 1))


def test_gen_product_solution(capsys):
    assert run(capsys, "gen", "product-solution", "--matrix", "1,2;3,4") == (0, "x=(2,12) y=(3,8)\n", "")


def test_fit_from_csv(capsys, files, tmp_path):
    csv_path = tmp_path / "p.csv"
    run(capsys, "census", "--system", files["product"], "--x-list", "8,16,32,64", "--format", "csv", "--out", str(csv_path))
    code, out, _ = run(capsys, "fit", "--system", files["product"], "--csv", str(csv_path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "column=Tdagger points=4 dropped=0"
    assert lines[1].startswith("slope=2.680")
    assert lines[1].endswith("bound=2 limit=2.75 PASS")


def test_fit_synthetic_square(capsys, files, tmp_path):
    csv_path = tmp_path / "sq.csv"
    csv_path.write_text("X,N,T,Tstar,Tdagger\n2,4,4,0,0\n4,16,16,0,0\n8,64,64,0,0\n")
    code, out, _ = run(capsys, "fit", "--system", files["product"], "--csv", str(csv_path), "--column", "N")
    assert "slope=2.000000" in out


def test_fit_reports_dropped_zero_rows(capsys, files):
    code, out, _ = run(capsys, "fit", "--system", files["s23"], "--x-list", "8,12,16")
    assert code == 0
    assert "dropped=1" in out and "dropped X=8" in out


def test_fit_nonlinear_bound(capsys, files, tmp_path):
    csv_path = tmp_path / "nl.csv"
    csv_path.write_text("X,N,T,Tstar,Tdagger\n2,4,4,0,0\n4,16,16,0,0\n")
    code, out, _ = run(capsys, "fit", "--system", files["nonlinear"], "--csv", str(csv_path), "--column", "N")
    assert "bound=3 " in out


def test_fit_warns_above_limit(capsys, files, tmp_path):
    csv_path = tmp_path / "steep.csv"
    csv_path.write_text("X,N,T,Tstar,Tdagger\n2,0,0,0,8\n4,0,0,0,64\n")
    code, out, _ = run(capsys, "fit", "--system", files["product"], "--csv", str(csv_path))
    assert code == 0 and out.rstrip().endswith("WARN")


@pytest.mark.parametrize("text", ["", "X,N,T,Tstar,Tdagger\n", "X,N,T,Tstar,Tdagger\n8,1,1,0,0\n"])
def test_fit_without_data_exits_2(capsys, files, tmp_path, text):
    csv_path = tmp_path / "e.csv"
    csv_path.write_text(text)
    assert run(capsys, "fit", "--system", files["product"], "--csv", str(csv_path))[0] == 2


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.splitlines()[0] == "seed=0"
    assert all(line.startswith("PASS") for line in out.splitlines()[1:])


def test_verify_mutation_fails(capsys):
    code, out, _ = run(capsys, "verify", "--mutate-psi")
    assert code == 5
    assert any(line.startswith("FAIL psi.master_identity") for line in out.splitlines())


def test_verify_mutation_flag_is_hidden():
    assert "mutate" not in cli.build_parser().format_help()
    sub = cli.build_parser()._subparsers._group_actions[0].choices["verify"]
    assert "mutate" not in sub.format_help()


def test_identical_configs_give_identical_output(capsys, files):
    argv = ["census", "--system", files["s23"], "--x-list", "6,12", "--method", "both", "--format", "csv"]
    assert run(capsys, *argv) == run(capsys, *argv)
    assert run(capsys, "verify", "--seed", "3") == run(capsys, "verify", "--seed", "3")


def test_module_entry_point(files):
    out = subprocess.run(
        [sys.executable, "-m", "paucity", "normalize", "--system", files["product"]],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert out.stdout == "k=2 degrees=[2] R=[1] w=1 A=1\n"
