import json

from pairgen import __version__
from pairgen.cli import EXIT_LIMIT, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


class TestExitCodes:
    def test_cover_ok(self, capsys):
        assert main(["cover", "--n", "6", "--i", "2"]) == EXIT_OK
        assert "covered: True" in capsys.readouterr().out

    def test_cover_reports_uncovered_types(self, capsys):
        assert main(["cover", "--n", "6", "--i", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "covered: False" in out and "uncovered cycle types" in out

    def test_odd_degree_is_usage_error(self, capsys):
        assert main(["cover", "--n", "7", "--i", "1"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_construct_round_limit(self, capsys):
        rc = main(["construct", "--n", "6", "--i", "1", "--max-rounds", "20"])
        assert rc == EXIT_LIMIT
        doc = json.loads(capsys.readouterr().out)
        assert doc["result"]["failed"] is True
        assert doc["result"]["rounds"] == 20
        assert doc["result"]["residual_bad_pairs"] > 0

    def test_verify_good_and_tampered(self, tmp_path, capsys):
        path = tmp_path / "lll.json"
        rc = main([
            "lll", "--n", "8", "--i", "1", "--format", "json",
            "--output", str(path),
        ])
        assert rc == EXIT_OK
        assert main(["verify", str(path)]) == EXIT_OK
        assert "verified" in capsys.readouterr().out

        doc = json.loads(path.read_text())
        doc["result"]["total_log2"] = -1.0
        path.write_text(json.dumps(doc))
        assert main(["verify", str(path)]) == EXIT_VERIFY
        assert "violation:" in capsys.readouterr().out

    def test_verify_unreadable(self, tmp_path, capsys):
        assert main(["verify", str(tmp_path / "absent.json")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err


class TestJsonDocuments:
    def test_config_echo(self, capsys):
        assert main(["exact", "--n", "4", "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["version"] == __version__
        assert doc["config"]["n"] == 4 and doc["config"]["what"] == "all"
        assert doc["result"]["sigma"]["value"] == 4
        assert doc["result"]["counts"]["p"] == "13/24"

    def test_exact_witness(self, capsys):
        assert main([
            "exact", "--n", "4", "--what", "omega", "--witness",
            "--format", "json",
        ]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["result"]["omega"]["witness"]) == 4

    def test_sigma_upper(self, capsys):
        assert main(["sigma-upper", "--n", "8", "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["result"]["sigma_upper"] == 71

    def test_lll_sweep_text_table(self, capsys):
        assert main([
            "lll", "--i", "1", "--n-min", "6", "--n-max", "12",
        ]) == EXIT_OK
        out = capsys.readouterr().out.splitlines()
        assert out[0].split()[:2] == ["n", "total_log2"]
        assert len(out) == 5  # header + n in {6, 8, 10, 12}

    def test_probgen(self, capsys):
        assert main([
            "probgen", "--n", "5", "--trials", "1000", "--seed", "3",
            "--format", "json",
        ]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        r = doc["result"]
        assert r["trials"] == 1000 and r["seed"] == 3
        assert 0 <= r["p"]["ci99"][0] <= r["p"]["estimate"] <= r["p"]["ci99"][1] <= 1


class TestSeedEnv:
    def test_env_seed_used_as_default(self, monkeypatch, capsys):
        monkeypatch.setenv("PAIRGEN_SEED", "42")
        assert main([
            "probgen", "--n", "4", "--trials", "1000", "--format", "json",
        ]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["result"]["seed"] == 42

    def test_flag_overrides_env(self, monkeypatch, capsys):
        monkeypatch.setenv("PAIRGEN_SEED", "42")
        assert main([
            "probgen", "--n", "4", "--trials", "1000", "--seed", "7",
            "--format", "json",
        ]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["result"]["seed"] == 7
