import json

from spatialvote.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


SIM_ARGS = [
    "simulate",
    "--state",
    "balanced",
    "--flavor",
    "bimodal",
    "--candidates",
    "3",
    "--model",
    "theoretical-ideal",
    "--elections",
    "6",
    "--voters",
    "101",
    "--seed",
    "3",
]


class TestExample:
    def test_winners(self, capsys):
        code, out, _ = run_cli(capsys, "example")
        assert code == 0
        assert "plurality: A" in out
        assert "irv: B" in out
        assert "minimax: C" in out
        assert "bucklin: C" in out
        assert "borda: C" in out
        assert "condorcet: C" in out

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "example", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["winners"] == {
            "plurality": "A",
            "irv": "B",
            "minimax": "C",
            "bucklin": "C",
            "borda": "C",
        }
        assert doc["audit"]["borda"]["points"] == [450, 430, 510]


class TestSimulate:
    def test_writes_outputs(self, tmp_path, capsys):
        code, out, _ = run_cli(capsys, *SIM_ARGS, "--out", str(tmp_path))
        assert code == 0
        rec = tmp_path / "balanced_bimodal_3cands_theoretical-ideal_3.records.csv"
        summ = tmp_path / "balanced_bimodal_3cands_theoretical-ideal_3.summary.json"
        assert rec.exists() and summ.exists()
        assert str(rec) in out and str(summ) in out
        rows = [ln for ln in rec.read_text().splitlines() if ln and not ln.startswith("#")]
        assert len(rows) == 1 + 6  # header + elections
        doc = json.loads(summ.read_text())
        assert doc["election_count"] == 6

    def test_repeat_invocations_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli(capsys, *SIM_ARGS, "--out", str(a))
        run_cli(capsys, *SIM_ARGS, "--out", str(b))
        for name in (
            "balanced_bimodal_3cands_theoretical-ideal_3.records.csv",
            "balanced_bimodal_3cands_theoretical-ideal_3.summary.json",
        ):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_unknown_model_is_data_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys,
            "simulate",
            "--state",
            "balanced",
            "--flavor",
            "bimodal",
            "--candidates",
            "3",
            "--model",
            "optimism",
            "--out",
            str(tmp_path),
        )
        assert code == 2
        for name in (
            "theoretical-ideal",
            "ideological-truncation",
            "random-truncation",
            "abstention",
            "noise",
            "most-realistic",
        ):
            assert name in err

    def test_unknown_state_is_data_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys,
            "simulate",
            "--state",
            "atlantis",
            "--flavor",
            "bimodal",
            "--candidates",
            "3",
            "--model",
            "noise",
            "--out",
            str(tmp_path),
        )
        assert code == 2
        assert "atlantis" in err

    def test_workers_flag_does_not_change_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli(capsys, *SIM_ARGS, "--out", str(a))
        run_cli(capsys, *SIM_ARGS, "--workers", "2", "--out", str(b))
        for name in (
            "balanced_bimodal_3cands_theoretical-ideal_3.records.csv",
            "balanced_bimodal_3cands_theoretical-ideal_3.summary.json",
        ):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_mode_flags_echo_into_config(self, tmp_path, capsys):
        import json as _json

        code, _, _ = run_cli(
            capsys,
            *SIM_ARGS,
            "--resample-electorate",
            "--perception-basis",
            "true",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        summ = tmp_path / "balanced_bimodal_3cands_theoretical-ideal_3.summary.json"
        cfg = _json.loads(summ.read_text())["config"]
        assert cfg["resample_electorate"] is True
        assert cfg["behavior"]["perception_basis"] == "true"

    def test_missing_flags_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "simulate")
        assert code == 1
        assert "--state" in err

    def test_bad_flag_value_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "simulate", "--candidates", "9")
        assert code == 1


class TestConfigFile:
    def test_flags_override_config(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text(
            "state = balanced\nflavor = bimodal\ncandidates = 3\n"
            "model = theoretical-ideal\nelections = 9\nvoters = 101\nseed = 3\n"
            f"out = {tmp_path}\n"
        )
        code, _, _ = run_cli(capsys, "simulate", "--config", str(config), "--elections", "4")
        assert code == 0
        rec = tmp_path / "balanced_bimodal_3cands_theoretical-ideal_3.records.csv"
        rows = [ln for ln in rec.read_text().splitlines() if ln and not ln.startswith("#")]
        assert len(rows) == 1 + 4

    def test_unknown_key_rejected(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("workerz = 3\n")
        code, _, err = run_cli(capsys, "simulate", "--config", str(config))
        assert code == 2
        assert "workerz" in err

    def test_behavior_override_keys(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text(
            "state = balanced\nflavor = bimodal\ncandidates = 3\n"
            "model = random-truncation\nlength-probs = 1:0.9\n"
            "elections = 3\nvoters = 101\nseed = 1\n"
            f"out = {tmp_path}\n"
        )
        code, _, _ = run_cli(capsys, "simulate", "--config", str(config))
        assert code == 0
        summ = tmp_path / "balanced_bimodal_3cands_random-truncation_1.summary.json"
        doc = json.loads(summ.read_text())
        assert doc["config"]["behavior"]["length_probs"] == [[1, 0.9]]

    def test_summary_json_reproduces_run(self, tmp_path, capsys):
        first = tmp_path / "first"
        run_cli(capsys, *SIM_ARGS, "--out", str(first))
        summ = first / "balanced_bimodal_3cands_theoretical-ideal_3.summary.json"
        second = tmp_path / "second"
        code, _, _ = run_cli(
            capsys, "simulate", "--config", str(summ), "--out", str(second)
        )
        assert code == 0
        assert (second / summ.name).read_bytes() == summ.read_bytes()


class TestSummarize:
    def test_reproduces_summary_bytes(self, tmp_path, capsys):
        run_cli(capsys, *SIM_ARGS, "--out", str(tmp_path))
        rec = tmp_path / "balanced_bimodal_3cands_theoretical-ideal_3.records.csv"
        summ = tmp_path / "balanced_bimodal_3cands_theoretical-ideal_3.summary.json"
        code, out, _ = run_cli(capsys, "summarize", "--records", str(rec))
        assert code == 0
        assert out == summ.read_text()

    def test_tables_written(self, tmp_path, capsys):
        run_cli(capsys, *SIM_ARGS, "--out", str(tmp_path))
        run_cli(capsys, *SIM_ARGS[:8], "most-realistic", *SIM_ARGS[9:], "--out", str(tmp_path))
        summaries = sorted(str(p) for p in tmp_path.glob("*.summary.json"))
        code, out, _ = run_cli(
            capsys,
            "summarize",
            "--summaries",
            *summaries,
            "--tables",
            str(tmp_path / "tables"),
        )
        assert code == 0
        for suffix in ("distances.csv", "rates.csv", "comparison.csv"):
            path = tmp_path / f"tables.{suffix}"
            assert path.exists() and path.read_text().strip()

    def test_needs_arguments(self, capsys):
        code, _, err = run_cli(capsys, "summarize")
        assert code == 1


class TestMoments:
    def test_lists_fixture_rows(self, capsys):
        code, out, _ = run_cli(capsys, "moments")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "state,flavor,mean,variance,median"
        assert any(ln.startswith("balanced,bimodal,") for ln in lines)
        uniform = next(ln for ln in lines if ln.startswith("uniform,"))
        _, _, mean, variance, median = uniform.split(",")
        assert abs(float(mean)) < 1e-6
        assert abs(float(variance) - 1 / 12) < 1e-6  # six printed decimals


class TestTuneNoise:
    def test_zero_width_row(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "tune-noise",
            "--grid",
            "0,0.1",
            "--elections",
            "2",
            "--voters",
            "301",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "half_width,changed_fraction,mean_kendall_tau"
        zero = lines[1].split(",")
        assert float(zero[1]) == 0.0 and float(zero[2]) == 0.0
        wide = lines[2].split(",")
        assert float(wide[1]) > 0.0

    def test_out_of_range_grid(self, capsys):
        code, _, err = run_cli(
            capsys, "tune-noise", "--grid", "0.9", "--elections", "1", "--voters", "101"
        )
        assert code == 2
