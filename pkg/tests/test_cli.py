import io
import json

import pytest

from main import main
from engine.hierarchy import flatten, predictive
from src.cli.models.model_file import ModelFile


@pytest.fixture
def run(capsys, fixture_path):
    """Ejecutar la CLI y devolver (código, stdout, stderr)"""
    def invoke(*argv):
        resolved = [fixture_path(a) if a.endswith(".json") and "/" not in a else a for a in argv]
        code = main(resolved)
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


@pytest.fixture
def run_json(run):
    def invoke(*argv):
        code, out, _ = run(*argv, "--json")
        return code, json.loads(out)
    return invoke


def test_validate_coin(run_json):
    code, report = run_json("validate", "coin.json")
    assert code == 0
    assert report["exit_status"] == 0
    assert report["results"]["predictive"] == pytest.approx([0.65, 0.35], abs=1e-12)
    assert report["results"]["coherence"] is None


def test_validate_reports_coherence_gap(run_json):
    code, report = run_json("validate", "coin_incoherent.json")
    assert code == 0
    coherence = report["results"]["coherence"]
    assert coherence["gap"] == pytest.approx(0.15, abs=1e-12)
    assert coherence["witness"]["expected_profit"] == coherence["gap"]
    assert report["warnings"]


def test_validate_not_normalized(run_json):
    code, report = run_json("validate", "bad_sum.json")
    assert code == 3
    assert report["error"]["type"] == "NotNormalized"
    assert report["error"]["location"] == "candidates.heavy"
    assert "results" not in report


def test_validate_dimension_mismatch(run_json):
    code, report = run_json("validate", "bad_dimension.json")
    assert code == 3
    assert report["error"]["type"] == "DimensionMismatch"


def test_malformed_model_file(run):
    code, out, err = run("validate", "malformed.json")
    assert code == 2
    assert out == ""
    assert "ModelParseError" in err


def test_usage_error_exits_with_parse_code(run):
    code, _, _ = run("jeffrey", "jeffrey.json", "--to", "0.7")
    assert code == 2


def test_decide_fair_die_first_order(run_json):
    code, report = run_json("decide", "die_fair_only.json", "--mode", "first")
    assert code == 0
    column = report["results"]["columns"]["first"]
    assert column["chosen"] == "abstain"
    assert column["values"] == pytest.approx([-2 / 3, 0.0], abs=1e-12)


def test_decide_all_modes_agree(run_json):
    code, report = run_json("decide", "coin.json", "--mode", "all")
    assert code == 0
    columns = report["results"]["columns"]
    assert set(columns) == {"first", "second", "joint"}
    assert len({tuple(c["tied"]) for c in columns.values()}) == 1
    assert report["results"]["agreement"]["tied_sets_agree"]


def test_decide_without_utilities(run_json):
    code, report = run_json("decide", "jeffrey.json")
    assert code == 3
    assert report["error"]["type"] == "MissingSection"


def test_decide_disagreement_fails_without_partial_report(run_json, tmp_path):
    settings = tmp_path / "strict.json"
    settings.write_text(json.dumps({"equivalence_tolerance": -1.0}), encoding="utf-8")
    code, report = run_json("decide", "coin.json", "--settings", str(settings))
    assert code == 5
    assert report["error"]["type"] == "EquivalenceFailure"
    assert "results" not in report


def test_flatten_coin(run_json):
    code, report = run_json("flatten", "coin.json")
    assert code == 0
    results = report["results"]
    assert results["grid"] == pytest.approx([[0.25, 0.25], [0.4, 0.1]], abs=1e-12)
    assert results["marginal_model"] == pytest.approx([0.5, 0.5], abs=1e-12)
    assert results["marginal_world"] == pytest.approx([0.65, 0.35], abs=1e-12)
    assert results["witness"]["grid"] == pytest.approx([[0.30, 0.20], [0.35, 0.15]], abs=1e-12)
    assert not results["witness"]["product_form"]


def test_flatten_single_candidate_has_no_witness(run_json):
    code, report = run_json("flatten", "jeffrey.json")
    assert code == 0
    assert report["results"]["witness"] is None
    assert report["results"]["witness_reason"]


def test_machine_output_round_trips_exactly(run_json, fixture_path):
    _, report = run_json("flatten", "die.json")
    model = ModelFile.load(fixture_path("die.json"))
    assert report["results"]["grid"] == flatten(model.second_order).as_lists()
    _, report = run_json("validate", "die.json")
    assert report["results"]["predictive"] == predictive(model.second_order).as_list()


def test_jeffrey_worked_example(run_json):
    code, report = run_json("jeffrey", "jeffrey.json", "--event", "a", "--to", "0.7")
    assert code == 0
    results = report["results"]
    assert results["source"] == "predictive"
    assert results["rigidity"] is True
    assert results["initial_probability"] == pytest.approx(0.3, abs=1e-12)
    assert results["event_probabilities"]["b"]["final"] == pytest.approx(0.48, abs=1e-12)


def test_jeffrey_to_current_value(run_json):
    _, report = run_json("jeffrey", "jeffrey.json", "--event", "a", "--to", "0.3")
    assert report["results"]["final"] == pytest.approx(report["results"]["initial"], abs=1e-12)


def test_jeffrey_to_certainty(run_json):
    code, report = run_json("jeffrey", "jeffrey.json", "--event", "a", "--to", "1.0")
    assert code == 4
    assert report["error"]["type"] == "InvalidShiftTarget"


def test_jeffrey_unknown_event(run_json):
    code, report = run_json("jeffrey", "jeffrey.json", "--event", "c", "--to", "0.5")
    assert code == 3
    assert report["error"]["type"] == "UnknownName"


def test_check_c3_three_worlds(run_json):
    code, report = run_json("check-c3", "c3.json", "--a", "a", "--b", "b", "--x", "0.5")
    assert code == 0
    results = report["results"]
    assert results["matching_candidates"] == ["P1"]
    assert results["deviation"] == pytest.approx(abs(0.4 - 6 / 13), abs=1e-12)


def test_check_c3_shared_value(run_json):
    _, report = run_json("check-c3", "c3_shared.json", "--a", "a", "--b", "b", "--x", "0.5")
    assert report["results"]["deviation"] == 0.0


def test_check_c3_no_matching_candidate(run_json):
    code, report = run_json("check-c3", "c3.json", "--a", "a", "--b", "b", "--x", "0.99")
    assert code == 4
    assert report["error"]["type"] == "EmptyConditioningEvent"


def test_sequence_die(run_json):
    code, report = run_json("sequence", "die.json", "--observe", "two", "--bet", "two")
    assert code == 0
    results = report["results"]
    assert results["toss_index"] == 2
    assert results["posterior"] == pytest.approx([0.25, 0.75], abs=1e-12)
    assert results["predictive"][1] == pytest.approx(5 / 12, abs=1e-12)
    assert results["bet"]["chosen"] == "abstain"
    assert len(results["trajectory"]) == 1


def test_sequence_uses_model_observations(run_json):
    _, report = run_json("sequence", "die.json")
    assert report["results"]["observations"] == ["two"]


def test_sequence_single_hypothesis_without_observations(run_json):
    code, report = run_json("sequence", "jeffrey.json", "--observe", "")
    assert code == 0
    assert report["results"]["posterior"] == [1.0]
    assert report["results"]["trajectory"] == []


def test_sequence_impossible_observation(run_json):
    code, report = run_json("sequence", "die_no_six.json", "--observe", "one,six")
    assert code == 4
    assert report["error"]["type"] == "ImpossibleObservation"


def test_model_from_standard_input(run_json, monkeypatch, fixture_path):
    with open(fixture_path("coin.json"), encoding="utf-8") as f:
        monkeypatch.setattr("sys.stdin", io.StringIO(f.read()))
    code, report = run_json("validate", "-")
    assert code == 0
    assert report["arguments"]["model"] == "-"


def test_selftest_small_run(run_json):
    code, report = run_json("selftest", "--seed", "5", "--instances", "20")
    assert code == 0
    assert report["results"]["passed"]
    assert report["results"]["seed"] == 5


def test_selftest_failure_exits_with_equivalence_code(run_json, tmp_path):
    settings = tmp_path / "strict.json"
    settings.write_text(json.dumps({"equivalence_tolerance": -1.0}), encoding="utf-8")
    code, report = run_json("selftest", "--instances", "5", "--settings", str(settings))
    assert code == 5
    assert not report["results"]["passed"]
    assert report["error"]["type"] == "EquivalenceFailure"


@pytest.mark.parametrize("argv", [
    ("validate", "coin_incoherent.json"),
    ("decide", "coin.json", "--mode", "all"),
    ("flatten", "die.json"),
    ("jeffrey", "jeffrey.json", "--event", "a", "--to", "0.7"),
    ("check-c3", "c3.json", "--a", "a", "--b", "b", "--x", "0.5"),
    ("sequence", "die.json", "--bet", "two"),
    ("selftest", "--instances", "10"),
])
def test_reports_are_byte_stable(run, argv):
    first = run(*argv, "--json")
    second = run(*argv, "--json")
    assert first[0] == 0
    assert first[1] == second[1]


def test_human_reports(run):
    code, out, _ = run("sequence", "die.json", "--observe", "two", "--bet", "two")
    assert code == 0
    assert "Predictive for toss 2:" in out
    assert "Chosen: abstain" in out
    assert "0.416667" in out

    code, out, _ = run("flatten", "coin.json")
    assert "Product form: no" in out
    assert "0.300000" in out

    code, out, _ = run("decide", "die_fair_only.json", "--mode", "first")
    assert "-0.666667" in out
    assert "chosen: abstain" in out


def test_human_error_goes_to_standard_error(run):
    code, out, err = run("jeffrey", "jeffrey.json", "--event", "a", "--to", "1.0")
    assert code == 4
    assert out == ""
    assert "error: InvalidShiftTarget" in err


@pytest.mark.parametrize("golden, argv", [
    ("validate", ("validate", "coin.json")),
    ("decide", ("decide", "coin.json", "--mode", "all")),
    ("flatten", ("flatten", "coin.json")),
    ("jeffrey", ("jeffrey", "coin.json", "--event", "heads", "--to", "0.75")),
    ("check-c3", ("check-c3", "three_worlds.json", "--a", "a", "--b", "b", "--x", "0.5")),
    ("sequence", ("sequence", "two_headed.json", "--observe", "tails", "--bet", "heads")),
])
def test_reports_match_goldens(golden, argv, capsys, monkeypatch, fixture_path):
    monkeypatch.chdir(fixture_path("goldens"))
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    with open(f"{golden}.out.json", encoding="utf-8") as f:
        expected = f.read()
    assert code == 0
    assert out == expected


def test_validate_reports_per_candidate_margins(run_json):
    _, report = run_json("validate", "coin.json")
    candidates = report["results"]["candidates"]
    assert candidates["fair"]["minimum_weight"] == 0.5
    assert candidates["biased"]["minimum_weight"] == pytest.approx(0.2, abs=1e-12)
    assert all(c["normalization_error"] <= 1e-9 for c in candidates.values())


def test_validate_coherence_world_is_the_first_of_equal_gaps(run_json):
    _, report = run_json("validate", "coin_incoherent.json")
    witness = report["results"]["coherence"]["witness"]
    assert report["results"]["coherence"]["world"] == "heads"
    assert witness["bettor_action"] == "buy"
