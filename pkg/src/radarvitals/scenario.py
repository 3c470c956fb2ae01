"""Scenario file parsing/serialization and vibration trace ingestion.

A scenario is one YAML document with three sections: ``radar`` (the FMCW
parameters), ``objects`` (the reflectors in the FOV) and ``monitoring``
(window/interval timing, noise, solver and estimator settings).
"""

import csv
import io
import os
from dataclasses import dataclass, field

import yaml

from .config import RadarConfig, build_range_grid
from .errors import ConfigurationError, ScenarioError, SceneError
from .harness import DEFAULT_BAND_H, DEFAULT_BAND_R, METHODS, SolverSettings
from .scene import OBJECT_KINDS, Scene, Static, Tones, Trace, snap_scene

RADAR_KEYS = ("lambda_max", "T_c", "f_adc", "S", "T_s", "N", "G")


@dataclass
class Scenario:
    """Parsed and validated scenario: radar config, objects, monitoring params."""

    config: RadarConfig
    objects: list                       # (kind, x_m, d_requested, vibration) tuples
    duration_s: float = 120.0
    snr_db: float = 0.0
    seed: int = 0
    methods: tuple = METHODS
    bands: tuple = (DEFAULT_BAND_R, DEFAULT_BAND_H)
    solver: SolverSettings = field(default_factory=SolverSettings)
    localizer: str = "jsr"
    cohort: list = field(default_factory=list)
    cohort_target: int = 0

    def scene(self) -> Scene:
        return snap_scene(self.objects, build_range_grid(self.config), f_s=self.config.f_s)


def _as_float(node, where):
    try:
        return float(node)
    except (TypeError, ValueError):
        raise ScenarioError(f"{where}: expected a number, got {node!r}") from None


def _as_int(node, where):
    f = _as_float(node, where)
    if f != int(f):
        raise ScenarioError(f"{where}: expected an integer, got {node!r}")
    return int(f)


def load_trace_csv(path: str, default_rate_hz: float | None = None) -> Trace:
    """Read a one-column displacement CSV; an optional first row
    ``sample_rate_hz,<value>`` overrides the default sample rate."""
    rate = default_rate_hz
    samples = []
    try:
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row or not row[0].strip():
                    continue
                if i == 0 and row[0].strip() == "sample_rate_hz":
                    rate = _as_float(row[1], f"{path}: sample_rate_hz")
                    continue
                samples.append(_as_float(row[0], f"{path}: line {i + 1}"))
    except OSError as exc:
        raise ScenarioError(f"cannot read trace file {path}: {exc}") from exc
    if rate is None:
        raise ScenarioError(f"{path}: no sample rate in header and no default given")
    if not samples:
        raise ScenarioError(f"{path}: trace file holds no samples")
    return Trace(samples=tuple(samples), sample_rate_hz=rate, source=path)


def _parse_vibration(node, base_dir: str, f_s: float, where: str):
    if not isinstance(node, dict) or "type" not in node:
        raise ScenarioError(f"{where}: vibration must be a mapping with a 'type' key")
    vtype = node["type"]
    if vtype == "static":
        return Static()
    if vtype == "tones":
        tones = node.get("tones")
        if not isinstance(tones, list) or not tones:
            raise ScenarioError(f"{where}: tones vibration needs a non-empty 'tones' list")
        pairs = []
        for j, pair in enumerate(tones):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ScenarioError(f"{where}: tone {j} must be [amplitude_m, frequency_hz]")
            pairs.append((_as_float(pair[0], f"{where}: tone {j} amplitude"),
                          _as_float(pair[1], f"{where}: tone {j} frequency")))
        rr = node.get("rr_hz")
        hr = node.get("hr_hz")
        return Tones(
            tones=tuple(pairs),
            rr_hz=None if rr is None else _as_float(rr, f"{where}: rr_hz"),
            hr_hz=None if hr is None else _as_float(hr, f"{where}: hr_hz"),
        )
    if vtype == "trace":
        if "csv" not in node:
            raise ScenarioError(f"{where}: trace vibration needs a 'csv' path")
        path = node["csv"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return load_trace_csv(path, default_rate_hz=f_s)
    raise ScenarioError(f"{where}: unknown vibration type {vtype!r}")


def _vibration_node(vib) -> dict:
    if isinstance(vib, Static):
        return {"type": "static"}
    if isinstance(vib, Tones):
        node = {"type": "tones", "tones": [[a, g] for a, g in vib.tones]}
        if vib.rr_hz is not None:
            node["rr_hz"] = vib.rr_hz
        if vib.hr_hz is not None:
            node["hr_hz"] = vib.hr_hz
        return node
    if isinstance(vib, Trace):
        if vib.source is None:
            raise ScenarioError("cannot serialize an in-memory trace without a source path")
        return {"type": "trace", "csv": vib.source}
    raise ScenarioError(f"cannot serialize vibration {type(vib).__name__}")


def parse_scenario(path: str) -> Scenario:
    """Parse, validate and default-fill a scenario file."""
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ScenarioError(f"{path}: malformed YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: scenario must be a YAML mapping")
    return _scenario_from_doc(doc, base_dir=os.path.dirname(os.path.abspath(path)),
                              where=path)


def _scenario_from_doc(doc: dict, base_dir: str, where: str) -> Scenario:
    radar = doc.get("radar", {}) or {}
    unknown = set(radar) - set(RADAR_KEYS)
    if unknown:
        raise ScenarioError(f"{where}: unknown radar keys {sorted(unknown)}")
    mon = doc.get("monitoring", {}) or {}

    kwargs = {}
    for key in ("lambda_max", "T_c", "f_adc", "S", "T_s"):
        if key in radar:
            kwargs[key] = _as_float(radar[key], f"{where}: radar.{key}")
    for key in ("N", "G"):
        if key in radar:
            kwargs[key] = _as_int(radar[key], f"{where}: radar.{key}")
    for src, dst in (("T_win", "T_win"), ("T_int", "T_int")):
        if src in mon:
            kwargs[dst] = _as_float(mon[src], f"{where}: monitoring.{src}")
    try:
        config = RadarConfig(**kwargs)
    except ConfigurationError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc

    objects = []
    for i, node in enumerate(doc.get("objects", []) or []):
        loc = f"{where}: objects[{i}]"
        if not isinstance(node, dict):
            raise ScenarioError(f"{loc}: object must be a mapping")
        kind = node.get("kind")
        if kind not in OBJECT_KINDS:
            raise ScenarioError(f"{loc}: kind must be one of {OBJECT_KINDS}, got {kind!r}")
        for req in ("x_m", "d_m", "vibration"):
            if req not in node:
                raise ScenarioError(f"{loc}: missing required key {req!r}")
        objects.append((
            kind,
            _as_float(node["x_m"], f"{loc}.x_m"),
            _as_float(node["d_m"], f"{loc}.d_m"),
            _parse_vibration(node["vibration"], base_dir, config.f_s, loc),
        ))

    bands = (
        tuple(_as_float(v, f"{where}: monitoring.B_R") for v in mon.get("B_R", DEFAULT_BAND_R)),
        tuple(_as_float(v, f"{where}: monitoring.B_H") for v in mon.get("B_H", DEFAULT_BAND_H)),
    )
    solver = SolverSettings(
        lam=_as_float(mon.get("lambda", 30.0), f"{where}: monitoring.lambda"),
        L_lip=_as_float(mon.get("L_lip", 4.5e6), f"{where}: monitoring.L_lip"),
        I_max=_as_int(mon.get("I_max", 1000), f"{where}: monitoring.I_max"),
        tau=_as_float(mon.get("tau", 0.5), f"{where}: monitoring.tau"),
    )
    methods = tuple(mon.get("methods", list(METHODS)))
    for m in methods:
        if m not in METHODS:
            raise ScenarioError(f"{where}: unknown method {m!r}; choose from {METHODS}")
    localizer = mon.get("localizer", "jsr")
    if localizer not in ("jsr", "oracle"):
        raise ScenarioError(f"{where}: monitoring.localizer must be 'jsr' or 'oracle'")
    cohort = [
        _parse_vibration(node, base_dir, config.f_s, f"{where}: monitoring.cohort[{i}]")
        for i, node in enumerate(mon.get("cohort", []) or [])
    ]

    scenario = Scenario(
        config=config,
        objects=objects,
        duration_s=_as_float(mon.get("duration", 120.0), f"{where}: monitoring.duration"),
        snr_db=_as_float(mon.get("snr_db", 0.0), f"{where}: monitoring.snr_db"),
        seed=_as_int(mon.get("seed", 0), f"{where}: monitoring.seed"),
        methods=methods,
        bands=bands,
        solver=solver,
        localizer=localizer,
        cohort=cohort,
        cohort_target=_as_int(mon.get("cohort_target", 0), f"{where}: monitoring.cohort_target"),
    )
    scenario.scene()  # validate snapping (collisions, range bounds) eagerly
    return scenario


def serialize_scenario(scenario: Scenario) -> str:
    """Render a scenario back to YAML; parse(serialize(s)) reproduces s."""
    c = scenario.config
    doc = {
        "radar": {
            "lambda_max": c.lambda_max, "T_c": c.T_c, "f_adc": c.f_adc,
            "S": c.S, "T_s": c.T_s, "N": c.N, "G": c.G,
        },
        "objects": [
            {"kind": kind, "x_m": x_m, "d_m": d_req, "vibration": _vibration_node(vib)}
            for kind, x_m, d_req, vib in scenario.objects
        ],
        "monitoring": {
            "T_win": c.T_win, "T_int": c.T_int,
            "duration": scenario.duration_s, "snr_db": scenario.snr_db,
            "seed": scenario.seed, "methods": list(scenario.methods),
            "B_R": list(scenario.bands[0]), "B_H": list(scenario.bands[1]),
            "lambda": scenario.solver.lam, "L_lip": scenario.solver.L_lip,
            "I_max": scenario.solver.I_max, "tau": scenario.solver.tau,
            "localizer": scenario.localizer,
            "cohort": [_vibration_node(v) for v in scenario.cohort],
            "cohort_target": scenario.cohort_target,
        },
    }
    out = io.StringIO()
    yaml.safe_dump(doc, out, sort_keys=False)
    return out.getvalue()
