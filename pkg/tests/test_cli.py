import json
import subprocess
import sys
import warnings

import pytest

from ebxii.cli import FitReport, main, parse_params
from ebxii.data import dataset


@pytest.fixture
def strengths_file(tmp_path):
    p = tmp_path / "strengths.txt"
    p.write_text("\n".join(repr(v) for v in dataset("strengths51").values) + "\n")
    return p


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_quantile_example(capsys):
    code, out, _ = run(["quantile", "--g", "g0", "--params", "a=3,b=0.8,c=1,d=1.5", "--v", "0.90,0.95,0.99"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "v,quantile"
    q = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert q == pytest.approx([-0.30, 0.46, 3.53], abs=0.005)


def test_quantile_bad_probability_exits_one(capsys):
    code, _, err = run(["quantile", "--g", "g0", "--params", "a=3,b=0.8,c=1,d=1.5", "--v", "1.5"], capsys)
    assert code == 1
    assert "probabilities" in err


def test_params_validation(capsys):
    code, _, err = run(["quantile", "--g", "g1", "--params", "a=3,b=0.8,c=1,d=1.5", "--v", "0.5"], capsys)
    assert code == 1 and "missing parameters" in err
    code, _, err = run(["quantile", "--g", "g0", "--params", "a=3,b=0.8,c=1,d=1.5,p=1", "--v", "0.5"], capsys)
    assert code == 1 and "unknown parameters" in err
    code, _, err = run(["quantile", "--g", "g0", "--params", "a=x", "--v", "0.5"], capsys)
    assert code == 1 and "bad number" in err
    assert parse_params("a=1, b=2") == {"a": 1.0, "b": 2.0}


def test_relaxed_allows_d_zero(capsys):
    args = ["curve", "--g", "g1", "--params", "a=1,b=1,c=1,d=0,eps=1,p=1", "--what", "cdf",
            "--from", "2", "--to", "5", "--n", "4"]
    code, _, err = run(args, capsys)
    assert code == 1
    code, out, _ = run(args + ["--relaxed"], capsys)
    assert code == 0
    vals = [float(ln.split(",")[1]) for ln in out.strip().splitlines()[1:]]
    assert vals == sorted(vals)


def test_curve(capsys, tmp_path):
    out_path = tmp_path / "c.csv"
    code, _, _ = run(
        ["curve", "--g", "g2", "--params", "a=3,b=0.8,c=1,d=1.5,eps=1,p=1", "--what", "hazard",
         "--from", "0.1", "--to", "5", "--n", "11", "--out", out_path],
        capsys,
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x,value"
    assert len(lines) == 12
    assert lines[1].startswith("0.1,")
    code, _, err = run(["curve", "--g", "g0", "--params", "a=1,b=1,c=1,d=0", "--what", "pdf",
                        "--from", "0", "--to", "1", "--n", "1"], capsys)
    assert code == 1


def test_sample_is_deterministic(capsys, monkeypatch):
    args = ["sample", "--g", "g0", "--params", "a=3,b=0.8,c=1,d=1.5", "--n", "5", "--seed", "7"]
    _, first, _ = run(args, capsys)
    _, second, _ = run(args, capsys)
    assert first == second
    assert len(first.strip().splitlines()) == 5
    monkeypatch.setenv("EBXII_SEED", "7")
    _, env, _ = run(args[:-2], capsys)
    assert env == first
    monkeypatch.setenv("EBXII_SEED", "seven")
    code, _, err = run(args[:-2], capsys)
    assert code == 1 and "EBXII_SEED" in err


def test_sample_defective_needs_flag(capsys):
    args = ["sample", "--g", "g3", "--params", "a=3,b=0.8,c=1,d=1,eps=1", "--n", "5", "--seed", "1"]
    code, _, err = run(args, capsys)
    assert code == 1 and "allow_defective" in err
    code, out, _ = run(args + ["--allow-defective"], capsys)
    assert code == 0


def test_fit_strengths_g0(capsys, strengths_file, tmp_path):
    out_path = tmp_path / "g0.json"
    code, _, _ = run(["fit", "--g", "g0", "--data", strengths_file, "--fix", "d=1", "--out", out_path], capsys)
    assert code == 0
    rep = FitReport.from_json(out_path.read_text())
    assert rep.neg_loglik == pytest.approx(12.70, abs=0.05)
    assert rep.aic == pytest.approx(31.41, abs=0.1)
    assert rep.w == 3 and rep.n == 51 and rep.converged
    assert rep.free_names == ("a", "b", "c")
    assert rep.tau == 0.05
    for (lo, hi), est in zip(rep.ci, rep.estimates):
        assert lo < est < hi
    assert "d=1 (fixed)" in rep.tiemap


def test_fit_with_ties_and_defective_flag(capsys, strengths_file):
    args = ["fit", "--g", "g3", "--data", strengths_file, "--fix", "d=1", "--fix", "eps=1", "--tie", "b=a"]
    code, _, err = run(args, capsys)
    assert code == 1 and "deficit" in err
    code, out, _ = run(args + ["--allow-defective", "--label", "EBXIID (g3)"], capsys)
    assert code == 0
    rep = FitReport.from_json(out)
    assert rep.label == "EBXIID (g3)"
    assert rep.neg_loglik == pytest.approx(12.95, abs=0.05)
    assert rep.w == 2


def test_report_json_round_trip(capsys, strengths_file):
    _, out, _ = run(["fit", "--g", "g0", "--data", strengths_file, "--fix", "d=1"], capsys)
    rep = FitReport.from_json(out)
    assert FitReport.from_json(rep.to_json()) == rep
    # floats survive exactly
    raw = json.loads(out)
    assert raw["neg_loglik"] == rep.neg_loglik


def test_fit_reflect(capsys, tmp_path):
    p = tmp_path / "h.txt"
    p.write_text("\n".join(str(4.0 + 0.01 * k) for k in range(1, 80)) + "\n")
    code, out, _ = run(["fit", "--g", "g0", "--data", p, "--reflect", "6", "--fix", "d=0"], capsys)
    assert code in (0, 2)
    assert "reflected as 6 - x" in FitReport.from_json(out).data


def test_fit_input_errors(capsys, tmp_path, strengths_file):
    code, _, err = run(["fit", "--g", "g0", "--data", tmp_path / "missing.txt"], capsys)
    assert code == 1 and "missing.txt" in err
    code, _, err = run(["fit", "--g", "g0", "--data", strengths_file, "--tie", "d=d"], capsys)
    assert code == 1
    code, _, err = run(["fit", "--g", "g0", "--data", strengths_file, "--fix", "q=1"], capsys)
    assert code == 1 and "unknown parameter" in err


def test_fit_not_converged_exit_code(capsys, strengths_file, monkeypatch):
    import ebxii.cli as cli
    from ebxii.mle import fit as real_fit

    def one_step(*args, **kwargs):
        return real_fit(*args, maxiter=1, **kwargs)

    monkeypatch.setattr(cli, "fit", one_step)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code, out, err = run(["fit", "--g", "g0", "--data", strengths_file, "--fix", "d=1"], capsys)
    assert code == 2
    assert "did not converge" in err
    assert FitReport.from_json(out).converged is False


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fit", "--g", "g9", "--data", "x"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["quantile", "--bogus"])
    assert exc.value.code == 1


def test_compare_published_and_fitted(capsys, strengths_file, tmp_path):
    code, out, _ = run(["compare", "--published", "roller_reflected", "--by", "bic"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].endswith("best_bic")
    assert lines[1].split(",")[1] == "EBXIID (g1)" and lines[1].endswith("*")
    assert sum(ln.endswith("*") for ln in lines[1:]) == 1
    rep_path = tmp_path / "g0.json"
    run(["fit", "--g", "g0", "--data", strengths_file, "--fix", "d=1", "--label", "mine", "--out", rep_path], capsys)
    code, out, _ = run(["compare", "--reports", rep_path, "--published", "strengths", "--by", "aic"], capsys)
    assert code == 0
    assert any(ln.split(",")[1] == "mine" and ",fitted," in ln for ln in out.splitlines())
    code, _, err = run(["compare"], capsys)
    assert code == 1


def test_simulate(capsys, tmp_path):
    cfg = tmp_path / "s.ini"
    cfg.write_text("[one]\nvariant = g1\na = 3\nb = 0.8\nc = 1\nd = 1.5\neps = 1\np = 1\n"
                   "free = b, c\nsizes = 300\nreplications = 2\nseed = 4\n")
    js = tmp_path / "r.json"
    code, out, _ = run(["simulate", "--scenario", cfg, "--json", js], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("scenario,variant,n,param")
    assert len(out.strip().splitlines()) == 3
    assert json.loads(js.read_text())[0]["scenario"] == "one"
    _, again, _ = run(["simulate", "--scenario", cfg], capsys)
    assert again == out
    empty = tmp_path / "e.ini"
    empty.write_text("")
    code, _, err = run(["simulate", "--scenario", empty], capsys)
    assert code == 1


def test_console_script_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "ebxii.cli", "quantile", "--g", "g0", "--params", "a=3,b=0.8,c=1,d=1.5",
         "--v", "0.5"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout.startswith("v,quantile")
