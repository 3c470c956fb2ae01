"""Scenario YAML parsing, serialization round-trip and trace CSV ingestion."""

import os

import pytest

from radarvitals.errors import SceneError, ScenarioError
from radarvitals.scenario import (load_trace_csv, parse_scenario,
                                  serialize_scenario)
from radarvitals.scene import Static, Tones, Trace

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), os.pardir,
                            "src", "radarvitals", "scenarios")


MINIMAL = """
objects:
- kind: human
  x_m: 0.5
  d_m: 2.0
  vibration: {type: tones, tones: [[0.001, 0.3], [0.0002, 1.25]]}
"""


def write(tmp_path, text, name="case.scn"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_bundled_scenarios_parse():
    t1 = parse_scenario(os.path.join(SCENARIO_DIR, "table1.scn"))
    assert t1.scene().bins.tolist() == [35, 47, 54, 61, 68, 72, 82]
    assert t1.scene().human_bins.tolist() == [47, 61, 82]
    assert t1.solver.lam == 30.0 and t1.solver.L_lip == 4.5e6
    assert t1.localizer == "jsr"

    cohort = parse_scenario(os.path.join(SCENARIO_DIR, "cohort.scn"))
    assert len(cohort.cohort) == 10
    assert cohort.localizer == "oracle"
    assert cohort.config.T_win == 15.0


def test_defaults_fill_missing_sections(tmp_path):
    scn = parse_scenario(write(tmp_path, MINIMAL))
    assert scn.config.N == 200 and scn.config.G == 150
    assert scn.config.T_win == 30.0
    assert scn.snr_db == 0.0 and scn.seed == 0
    assert scn.methods == ("vsdr", "fft_zp", "fft_nozp", "phase_reg")
    assert scn.bands == ((0.1, 0.4), (0.78, 1.67))
    assert scn.solver.I_max == 1000 and scn.solver.tau == 0.5


def test_round_trip_preserves_scenario(tmp_path):
    first = parse_scenario(os.path.join(SCENARIO_DIR, "table1.scn"))
    text = serialize_scenario(first)
    second = parse_scenario(write(tmp_path, text, "roundtrip.scn"))
    assert second.config == first.config
    assert second.objects == first.objects
    assert second.solver == first.solver
    assert (second.snr_db, second.seed, second.methods, second.bands) \
        == (first.snr_db, first.seed, first.methods, first.bands)


@pytest.mark.parametrize("text,match", [
    ("radar: {bogus: 1}\n" + MINIMAL, "unknown radar keys"),
    ("objects:\n- {kind: ghost, x_m: 1, d_m: 2, vibration: {type: static}}", "kind"),
    ("objects:\n- {kind: human, x_m: 1, vibration: {type: static}}", "missing required"),
    ("objects:\n- {kind: human, x_m: abc, d_m: 2, vibration: {type: static}}",
     "expected a number"),
    (MINIMAL + "monitoring: {methods: [telepathy]}", "unknown method"),
    (MINIMAL + "monitoring: {localizer: psychic}", "localizer"),
    (MINIMAL + "monitoring: {I_max: 3.5}", "expected an integer"),
    ("objects:\n- {kind: human, x_m: 1, d_m: 2, vibration: {type: warble}}",
     "unknown vibration"),
    ("objects:\n- {kind: human, x_m: 1, d_m: 2, vibration: {type: tones, tones: []}}",
     "non-empty"),
    ("objects:\n- {kind: human, x_m: 1, d_m: 2, vibration: {type: trace}}", "csv"),
    ("- just\n- a\n- list", "mapping"),
    ("radar: {N: 200,,}\n", "malformed YAML"),
])
def test_malformed_scenarios_raise_with_location(tmp_path, text, match):
    with pytest.raises(ScenarioError, match=match):
        parse_scenario(write(tmp_path, text))


def test_scene_level_errors_surface_eagerly(tmp_path):
    colliding = """
objects:
- {kind: human, x_m: 1, d_m: 2.0, vibration: {type: static}}
- {kind: human, x_m: 1, d_m: 2.01, vibration: {type: static}}
"""
    with pytest.raises(SceneError, match="collision"):
        parse_scenario(write(tmp_path, colliding))


def test_missing_file_raises_scenario_error():
    with pytest.raises(ScenarioError, match="cannot read"):
        parse_scenario("/nonexistent/path.scn")


def test_trace_csv_with_header_and_without(tmp_path):
    p = tmp_path / "vib.csv"
    p.write_text("sample_rate_hz,100.0\n0.001\n0.002\n-0.0005\n")
    tr = load_trace_csv(str(p))
    assert tr.sample_rate_hz == 100.0
    assert tr.samples == (0.001, 0.002, -0.0005)
    assert tr.source == str(p)

    q = tmp_path / "raw.csv"
    q.write_text("0.1\n0.2\n")
    tr = load_trace_csv(str(q), default_rate_hz=50.0)
    assert tr.sample_rate_hz == 50.0
    with pytest.raises(ScenarioError, match="sample rate"):
        load_trace_csv(str(q))
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ScenarioError, match="no samples"):
        load_trace_csv(str(empty), default_rate_hz=100.0)


def test_trace_vibration_loads_relative_csv(tmp_path):
    csv_path = tmp_path / "chest.csv"
    csv_path.write_text("\n".join(str(0.001 * i) for i in range(10)) + "\n")
    text = """
objects:
- kind: human
  x_m: 0.5
  d_m: 2.0
  vibration: {type: trace, csv: chest.csv}
"""
    scn = parse_scenario(write(tmp_path, text))
    vib = scn.objects[0][3]
    assert isinstance(vib, Trace)
    assert len(vib.samples) == 10
    assert vib.sample_rate_hz == 100.0   # defaults to f_s


def test_serialize_rejects_unsourced_trace(tmp_path):
    scn = parse_scenario(write(tmp_path, MINIMAL))
    scn.objects[0] = ("human", 0.5, 2.0,
                      Trace(samples=(1.0, 2.0), sample_rate_hz=100.0))
    with pytest.raises(ScenarioError, match="source"):
        serialize_scenario(scn)


def test_vibration_variants_round_trip(tmp_path):
    text = """
objects:
- {kind: static_clutter, x_m: 1.0, d_m: 2.3, vibration: {type: static}}
- kind: human
  x_m: 0.5
  d_m: 2.0
  vibration: {type: tones, tones: [[0.001, 0.3]], rr_hz: 0.3, hr_hz: 1.2}
"""
    scn = parse_scenario(write(tmp_path, text))
    assert isinstance(scn.objects[0][3], Static)
    tones = scn.objects[1][3]
    assert isinstance(tones, Tones)
    assert tones.designated_rates() == (0.3, 1.2)
    again = parse_scenario(write(tmp_path, serialize_scenario(scn), "again.scn"))
    assert again.objects == scn.objects
