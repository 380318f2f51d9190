import json

import pytest

from pdckit.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_example(capsys):
    code, out, _ = run(capsys, "count", "--x", "20", "--set", "2,6")
    assert code == 0
    assert out.strip() == "2"


def test_champions_example(capsys):
    code, out, _ = run(capsys, "champions", "--x", "50", "--k", "1",
                       "--mode", "exhaustive")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,k,mode,max_count,winners,gcd,runner_ups"
    assert lines[1].startswith("50,1,exhaustive,9,6,6,")


def test_singular_example(capsys):
    code, out, _ = run(capsys, "singular", "--set", "0,2", "--tol", "1e-6")
    assert code == 0
    assert "S = 1.320323641" in out
    assert "tail bound" in out


def test_scientific_notation_x(capsys):
    code, out, _ = run(capsys, "count", "--x", "1e2", "--set", "2")
    assert code == 0
    assert out.strip() == "8"


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--x", "20"])  # --set missing
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["champions", "--k", "1"])  # no --x or --x-grid
    assert exc.value.code == 2


def test_computation_error_is_structured(capsys):
    code, out, err = run(capsys, "singular", "--set", "2,4")
    assert code == 1
    assert out == ""
    payload = json.loads(err)
    assert payload["error"] == "ValueError"


def test_gaps_json_embeds_config(capsys, tmp_path):
    out_path = tmp_path / "gaps.json"
    code, _, _ = run(capsys, "gaps", "--x", "50", "--format", "json",
                     "--out", str(out_path))
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["counts"] == {"1": 1, "2": 6, "4": 5, "6": 2}
    assert payload["champions"] == [2]
    cfg = RunConfig.from_dict(payload["config"])
    assert cfg.command == "gaps"
    assert cfg.x == 50
    assert cfg.to_dict() == payload["config"]


def test_histogram_csv(capsys):
    code, out, _ = run(capsys, "histogram", "--x", "30", "--d-max", "4")
    assert code == 0
    assert out.strip().splitlines() == ["d,count", "1,1", "2,4", "3,1", "4,4"]


def test_cache_warm_cold_identical(capsys, tmp_path):
    cache = tmp_path / "cache"
    args = ("champions", "--x", "300", "--k", "2",
            "--cache-dir", str(cache))
    code, cold, _ = run(capsys, *args)
    assert code == 0
    assert (cache / "sieve_300.pdcs").exists()
    code, warm, _ = run(capsys, *args)
    assert code == 0
    assert warm == cold


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PDC_CACHE_DIR", str(tmp_path / "envcache"))
    code, _, _ = run(capsys, "sieve", "--x", "1000")
    assert code == 0
    assert (tmp_path / "envcache" / "sieve_1000.pdcs").exists()


def test_sieve_reports_pi(capsys, tmp_path):
    code, out, _ = run(capsys, "sieve", "--x", "10000")
    assert code == 0
    assert "pi(10000) = 1229" in out


def test_predict_csv(capsys):
    code, out, _ = run(capsys, "predict", "--x", "10000", "--set", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,predicted,exact,ratio"
    assert lines[1].startswith("10000,")
    assert ",205," in lines[1]


def test_predict_json_and_plot(capsys, tmp_path):
    out_path = tmp_path / "p.json"
    code, _, _ = run(capsys, "predict", "--x-grid", "1000,10000", "--set", "2",
                     "--out", str(out_path), "--plot")
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert [r["x"] for r in payload["results"]] == [1000, 10000]
    assert payload["config"]["command"] == "predict"
    png = tmp_path / "p.png"
    assert png.exists() and png.stat().st_size > 1000


def test_champions_plot(capsys, tmp_path):
    out_path = tmp_path / "c.csv"
    code, _, _ = run(capsys, "champions", "--x-grid", "100,1000", "--k", "1",
                     "--out", str(out_path), "--plot")
    assert code == 0
    assert out_path.exists()
    assert (tmp_path / "c.png").exists()


def test_plot_requires_out():
    with pytest.raises(SystemExit) as exc:
        main(["gaps", "--x", "50", "--plot"])
    assert exc.value.code == 2


def test_moments_text(capsys):
    code, out, _ = run(capsys, "moments", "--x", "10000", "--q", "30", "--k", "2")
    assert code == 0
    assert "coprime moment sum = 187904" in out
    assert "power identity holds = True" in out


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--x", "50", "--k", "1")
    assert code == 0
    assert "-> OK" in out

    out_path = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "--x-grid", "100,1000", "--k", "1",
                     "--out", str(out_path))
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert all(r["ok"] for r in payload["reports"])
    assert payload["config"]["slack"] == 1.0


def test_config_round_trip():
    cfg = RunConfig(command="champions", x_grid=(10, 20), k=2, set=(2, 6),
                    tolerance=1e-6, threads=4, plot=True)
    assert RunConfig.from_dict(cfg.to_dict()) == cfg
    as_dict = cfg.to_dict()
    assert as_dict["x_grid"] == [10, 20]
    assert as_dict["set"] == [2, 6]


def test_threads_flag_identical_output(capsys):
    code1, out1, _ = run(capsys, "champions", "--x", "2000", "--k", "2",
                         "--mode", "pruned", "--threads", "1")
    code8, out8, _ = run(capsys, "champions", "--x", "2000", "--k", "2",
                         "--mode", "pruned", "--threads", "8")
    assert code1 == code8 == 0
    assert out1 == out8
