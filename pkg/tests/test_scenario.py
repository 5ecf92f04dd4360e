import numpy as np
import pytest

from retail_cournot import Mode, ScenarioError, ValidationError, loads_scenario, reference_config, parse_scenario
from retail_cournot.scenario import dumps_scenario

REFERENCE = "{markets: [{a: 200}, {a: 150}, {a: 100}], firms: [{c: 20}, {c: 40}], d: 0.2}"


def test_reference_document():
    scenario = loads_scenario(REFERENCE)
    assert scenario.config == reference_config(0.2)
    assert scenario.report.soft_flags == ()


def test_block_style_with_simulation(tmp_path):
    path = tmp_path / "s.yaml"
    path.write_text(
        "markets:\n  - a: 200\n  - a: 1.5e2\nfirms:\n  - c: 20\n  - c: 40\nd: -1e-2\n"
        "simulation:\n  T: 30\n  mode: clipped\n  initial: [[1, 2], [3, 4]]\n  transient: 5\n  samples: 7\n"
    )
    scenario = parse_scenario(path)
    assert scenario.config.market_intercepts == (200.0, 150.0)
    assert scenario.config.scale == -0.01
    opts = scenario.options
    assert (opts.steps, opts.mode, opts.transient, opts.samples) == (30, Mode.CLIPPED, 5, 7)
    np.testing.assert_array_equal(opts.initial, [[1, 2], [3, 4]])


def test_json_document():
    text = '{"markets": [{"a": 100}], "firms": [{"c": 10}, {"c": 10}], "d": 0}'
    assert loads_scenario(text).config.n_firms == 2


def test_missing_d_names_key():
    with pytest.raises(ScenarioError, match="missing key 'd'"):
        loads_scenario("{markets: [{a: 200}], firms: [{c: 20}]}")


def test_unknown_key_rejected_with_position():
    with pytest.raises(ScenarioError) as info:
        loads_scenario("markets: [{a: 200}]\nfirms: [{c: 20}]\nd: 0\nbeta: 3\n")
    assert info.value.line == 4 and info.value.column == 1
    assert "beta" in str(info.value)


def test_unknown_market_field():
    with pytest.raises(ScenarioError, match="unknown key 'b'"):
        loads_scenario("{markets: [{a: 200, b: 1}], firms: [{c: 20}], d: 0}")


@pytest.mark.parametrize("value", ["'0.2'", "abc", "true", "0x10", "[1]"])
def test_non_numbers_rejected(value):
    with pytest.raises(ScenarioError, match="must be a number"):
        loads_scenario(f"{{markets: [{{a: 200}}], firms: [{{c: 20}}], d: {value}}}")


def test_syntax_error_has_position():
    with pytest.raises(ScenarioError) as info:
        loads_scenario("markets: [{a: 200}\nfirms: x\n")
    assert info.value.line is not None


def test_hard_violation_aborts():
    with pytest.raises(ValidationError, match="second-order condition d>-1 violated"):
        loads_scenario("{markets: [{a: 200}], firms: [{c: 20}], d: -1.5}")


def test_initial_shape_checked():
    with pytest.raises(ScenarioError, match="2x1 grid"):
        loads_scenario("{markets: [{a: 200}], firms: [{c: 20}, {c: 30}], d: 0, simulation: {initial: [[1, 2]]}}")


def test_bad_mode():
    with pytest.raises(ScenarioError, match="raw"):
        loads_scenario("{markets: [{a: 200}], firms: [{c: 20}], d: 0, simulation: {mode: fast}}")


def test_empty_document():
    with pytest.raises(ScenarioError):
        loads_scenario("")


def test_round_trip():
    config = reference_config(-0.125)
    assert loads_scenario(dumps_scenario(config)).config == config
