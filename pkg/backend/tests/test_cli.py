import json

from click.testing import CliRunner

from app.main import cli

runner = CliRunner()

EXAMPLE1 = ["--rp", "76", "--rt", "101.3", "--delta", "227", "--c", "4"]


def test_classify_json():
    """Test classifying an instance given by flags"""
    result = runner.invoke(cli, ["classify", *EXAMPLE1])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["class"] == "boundary"
    assert data["lemma"] == "L7"
    assert data["a"] == 3
    assert data["instance"]["r_t"] == "1013/10"


def test_classify_text_with_witness():
    """Test the one-line text form"""
    result = runner.invoke(cli, ["classify", "--preset", "teeth", "--format", "text"])
    assert result.exit_code == 0
    assert result.output == "under_constrained (L3) a=2 witness=(-)*\n"


def test_classify_preset_override():
    """Test that explicit flags override preset values"""
    result = runner.invoke(cli, ["classify", "--preset", "example1", "--delta", "500", "--format", "text"])
    assert result.exit_code == 0
    assert result.output.startswith("over_constrained (L4)")


def test_zones_json():
    """Test zones and the feasible set for the first reference instance"""
    result = runner.invoke(cli, ["zones", "--preset", "example1"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["verdict"] == "feasible"
    assert data["case_label"] == "L10"
    assert data["feasible_text"] == "[76, 76.9] ∪ [77, 80.6] ∪ [81, 95.4] ∪ [97, 101.3]"
    assert [z["j"] for z in data["zones"]] == [0, 1, 2]
    assert data["zones"][1]["text"] == "(80.6, 81)"
    assert data["zones"][1]["lo_closed"] is False
    assert data["zones"][1]["hi_closed"] is False


def test_zones_tau():
    """Test the relaxed feasible set for a pursuer that gives up"""
    result = runner.invoke(cli, ["zones", "--preset", "example1", "--tau", "2", "--format", "text"])
    assert result.exit_code == 0
    assert "feasible with tau=2: [76, 76.9] ∪ [77, 80.6] ∪ [81, 101.3]" in result.output


def test_zones_preset_note():
    """Test that the ratio-test preset carries its note"""
    result = runner.invoke(cli, ["zones", "--preset", "example2", "--format", "text"])
    assert result.exit_code == 0
    assert "note: " in result.output
    assert "[97, 100.6]" in result.output


def test_zones_note_without_preset():
    """Test that the ratio-test instance carries its note when given by flags"""
    args = ["zones", "--rp", "76", "--rt", "101.3", "--delta", "223", "--c", "4"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    assert "note: the interval list" in result.output
    result = runner.invoke(cli, [*args, "--format", "text"])
    assert "note: the interval list" in result.output


def test_zones_cap_exit_code():
    """Test exit code 3 when back-propagation runs out of periods"""
    args = [
        "--log-level", "ERROR", "zones",
        "--rp", "23.375", "--rt", "46.31", "--delta", "11", "--c", "3", "--format", "text",
    ]
    result = runner.invoke(cli, [*args, "--max-periods", "1"])
    assert result.exit_code == 3
    assert result.output.startswith("undetermined")
    assert runner.invoke(cli, args).exit_code == 0


def test_zones_infeasible_exit_code():
    """Test exit code 2 when no initial size is feasible"""
    result = runner.invoke(cli, ["zones", "--preset", "doomed", "--format", "text"])
    assert result.exit_code == 2
    assert result.output.startswith("infeasible (L9)")


def test_zones_not_boundary():
    """Test that zones refuses a non-boundary instance"""
    result = runner.invoke(cli, ["zones", "--preset", "teeth"])
    assert result.exit_code == 1
    assert "not a boundary problem" in result.output


def test_strategy():
    """Test strategy words for boundary and under-constrained instances"""
    result = runner.invoke(cli, ["strategy", "--preset", "example1", "--eta0", "97"])
    assert result.exit_code == 0
    assert result.output == "---|(+---)*\n"
    result = runner.invoke(cli, ["strategy", "--preset", "feedback", "--eta0", "2"])
    assert result.output == "feedback:2\n"


def test_strategy_errors():
    """Test infeasible starts and instances without a strategy"""
    result = runner.invoke(cli, ["strategy", "--preset", "example1", "--eta0", "76.95"])
    assert result.exit_code == 2
    assert "initial I-state infeasible" in result.output
    result = runner.invoke(cli, ["strategy", "--preset", "gap", "--eta0", "1.3"])
    assert result.exit_code == 2


def test_simulate_csv():
    """Test the exact size trace"""
    result = runner.invoke(cli, [
        "simulate", "--preset", "example1", "--strategy", "(+---)*", "--eta0", "76", "--horizon", "4",
    ])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "k,prior_size,action,posterior_size,ppc_ok,ttc_ok",
        "1,303,+,101,true,true",
        "2,328,-,82,true,true",
        "3,309,-,77.25,true,true",
        "4,304.25,-,76.0625,true,true",
    ]


def test_simulate_violation():
    """Test that a violating strategy exits with code 2"""
    result = runner.invoke(cli, ["simulate", "--preset", "example1", "--strategy", "(-)*", "--eta0", "76"])
    assert result.exit_code == 2
    assert "1,303,-,75.75,false,true" in result.output
    assert "privacy bound violated at step 1" in result.output


def test_simulate_bad_strategy():
    """Test strategy text validation"""
    result = runner.invoke(cli, ["simulate", "--preset", "example1", "--strategy", "+-", "--eta0", "76"])
    assert result.exit_code == 1


def test_oracle():
    """Test the fixpoint and the survival count"""
    result = runner.invoke(cli, ["oracle", "--preset", "example1", "--eta0", "80.7"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["converged"] is True
    assert data["survival"] == 2
    assert data["safe_text"] == "[76, 76.9] ∪ [77, 80.6] ∪ [81, 95.4] ∪ [97, 101.3]"


def test_oracle_not_converged():
    """Test exit code 3 when the cap is hit"""
    result = runner.invoke(cli, ["oracle", "--preset", "example1", "--cap", "1", "--format", "text"])
    assert result.exit_code == 3
    assert "not converged" in result.output


def test_oracle_long_depth():
    """Test a survival search thousands of steps deep"""
    result = runner.invoke(cli, ["oracle", "--preset", "example1", "--eta0", "76", "--depth", "5000"])
    assert result.exit_code == 0
    assert json.loads(result.output)["survival"] == 5000


def test_rtstar():
    """Test the tightest tracking bound in both formats"""
    result = runner.invoke(cli, ["rtstar", "--rp", "3", "--delta", "2", "--c", "5"])
    assert result.exit_code == 0
    assert result.output == "6\n"
    result = runner.invoke(cli, ["rtstar", "--rp", "1", "--delta", "10", "--c", "3", "--format", "json"])
    assert json.loads(result.output)["rt_star"] == "10/3"


def test_sense():
    """Test the posterior I-state after one observation"""
    result = runner.invoke(cli, ["sense", "--prior", "[0,10]", "--set-points", "5", "--pos", "7"])
    assert result.exit_code == 0
    assert result.output == "(5, 10]\n"
    result = runner.invoke(cli, ["sense", "--prior", "[0,10]", "--set-points", "5", "--pos", "11"])
    assert result.exit_code == 1
    assert "inconsistent observation" in result.output


def test_map_writes_files(tmp_path):
    """Test CSV and SVG artifacts from one run"""
    target = tmp_path / "maps" / "grid.svg"
    result = runner.invoke(cli, ["map", "--c", "2", "--resolution", "20", "-o", str(target)])
    assert result.exit_code == 0
    csv_text = (tmp_path / "maps" / "grid.csv").read_text(encoding="utf-8")
    assert csv_text.splitlines()[0] == "r_p,r_t,class,lemma"
    assert len(csv_text.splitlines()) == 401
    svg_text = target.read_text(encoding="utf-8")
    assert svg_text.startswith("<svg")
    assert "#f4a6c6" in svg_text


def test_power_text():
    """Test the tracking power one-liner"""
    result = runner.invoke(cli, ["power", "--c", "3", "--resolution", "50", "--format", "text"])
    assert result.exit_code == 0
    assert result.output.startswith("p(3) = ")


def test_output_file(tmp_path):
    """Test that -o redirects text output to a file"""
    target = tmp_path / "classify.json"
    result = runner.invoke(cli, ["classify", *EXAMPLE1, "-o", str(target)])
    assert result.exit_code == 0
    assert result.output == ""
    assert json.loads(target.read_text(encoding="utf-8"))["class"] == "boundary"


def test_usage_errors_exit_1():
    """Test bad numbers, missing parameters and missing options"""
    result = runner.invoke(cli, ["classify", "--rp", "abc", "--rt", "2", "--delta", "1", "--c", "1"])
    assert result.exit_code == 1
    result = runner.invoke(cli, ["classify", "--rp", "1"])
    assert result.exit_code == 1
    assert "missing --rt, --delta, --c" in result.output
    result = runner.invoke(cli, ["strategy", "--preset", "example1"])
    assert result.exit_code == 1
    result = runner.invoke(cli, ["map", "--c", "2", "--window", "0,1,2"])
    assert result.exit_code == 1


def test_strategy_round_trip():
    """Test that a synthesized word simulates without violation"""
    for eta0 in ("76", "80", "97", "101.3"):
        word = runner.invoke(cli, ["strategy", "--preset", "example1", "--eta0", eta0]).output.strip()
        result = runner.invoke(cli, [
            "simulate", "--preset", "example1", "--strategy", word, "--eta0", eta0, "--horizon", "200",
        ])
        assert result.exit_code == 0
        assert "false" not in result.output


def test_runs_are_deterministic():
    """Test byte-identical output for repeated runs"""
    args = ["zones", "--preset", "example2"]
    assert runner.invoke(cli, args).output == runner.invoke(cli, args).output
    args = ["--log-level", "ERROR", "verify", "--samples", "2", "--seed", "7", "--format", "text"]
    first = runner.invoke(cli, args)
    assert first.output == runner.invoke(cli, args).output
    assert first.output.startswith("PASS")
