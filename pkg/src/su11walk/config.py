"""Configuration objects for the command-line tools.

All configs are plain JSON documents; parsing reports the offending field
and serialization round-trips losslessly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .frames import Frame, HWFrame, IdealFrame, SU11Frame
from .oracle import DESK_SCALE, CrossCheckCase
from .walk import PHASE_MODES, PHYSICAL

OUTPUT_KINDS = ("probabilities", "sigma", "entropy", "gram-row", "overlap-curve")
CHART_KINDS = ("line", "bar")


class ConfigError(ValueError):
    """A configuration field is missing, malformed, or out of range."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


def parse_frame_spec(spec: str) -> Frame:
    """Parse a frame spec string: 'ideal', 'hw:<mag>', or 'su11:<k>,<r>'."""
    if not isinstance(spec, str):
        raise ConfigError("frame", f"expected a spec string, got {spec!r}")
    text = spec.strip()
    if text == "ideal":
        return IdealFrame()
    head, sep, args = text.partition(":")
    try:
        if head == "hw" and sep:
            return HWFrame(alpha_mag=float(args))
        if head == "su11" and sep:
            k_text, comma, r_text = args.partition(",")
            if not comma:
                raise ValueError("missing r")
            return SU11Frame(k=float(k_text), r=float(r_text))
    except (ValueError, TypeError) as exc:
        raise ConfigError("frame", f"bad frame spec {spec!r}: {exc}") from exc
    raise ConfigError("frame", f"unknown frame spec {spec!r}; use ideal, hw:<mag>, or su11:<k>,<r>")


def _parse_amplitude(value, field_name: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if isinstance(re, (int, float)) and isinstance(im, (int, float)):
            return complex(re, im)
    raise ConfigError(field_name, f"amplitude must be a number or [re, im] pair, got {value!r}")


def _parse_coin_init(value, field_name: str = "coin_init") -> tuple[complex, complex]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(field_name, f"expected two amplitudes, got {value!r}")
    a = _parse_amplitude(value[0], field_name)
    b = _parse_amplitude(value[1], field_name)
    s = abs(a) ** 2 + abs(b) ** 2
    if abs(s - 1.0) > 1e-12:
        raise ConfigError(field_name, f"coin state must be normalized, |a|^2+|b|^2 = {s!r}")
    return (a, b)


def _require_keys(data: dict, known: set[str], required: set[str], where: str) -> None:
    if not isinstance(data, dict):
        raise ConfigError(where, f"expected a JSON object, got {type(data).__name__}")
    for key in data:
        if key not in known:
            raise ConfigError(key, f"unknown key in {where}")
    for key in required:
        if key not in data:
            raise ConfigError(key, f"missing required key in {where}")


def _get_int(data: dict, key: str, minimum: int, maximum: int | None = None) -> int:
    value = data[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(key, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(key, f"must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ConfigError(key, f"must be <= {maximum}, got {value}")
    return value


def _get_name(data: dict) -> str:
    name = data["name"]
    if not isinstance(name, str) or not name or any(c in name for c in "/\\ \t\n"):
        raise ConfigError("name", f"expected a file-name-safe string, got {name!r}")
    return name


@dataclass(frozen=True)
class ExperimentConfig:
    """One walk experiment: frames to compare, lattice, steps, outputs."""

    name: str
    frames: tuple[Frame, ...]
    n_sites: int
    steps: int
    start: int = 0
    coin_amps: tuple[complex, complex] = (1.0 + 0.0j, 0.0j)
    phase_mode: str = PHYSICAL
    outputs: tuple[str, ...] = ("probabilities",)

    @staticmethod
    def from_dict(data: dict) -> "ExperimentConfig":
        known = {"name", "frames", "frame", "sites", "steps", "start_site", "coin_init",
                 "phase_mode", "outputs"}
        _require_keys(data, known, {"name", "sites", "steps"}, "experiment config")
        if ("frames" in data) == ("frame" in data):
            raise ConfigError("frames", "give exactly one of 'frame' or 'frames'")
        specs = data["frames"] if "frames" in data else [data["frame"]]
        if not isinstance(specs, list) or not specs:
            raise ConfigError("frames", f"expected a non-empty list, got {specs!r}")
        frames = tuple(parse_frame_spec(s) for s in specs)
        labels = [f.label for f in frames]
        if len(set(labels)) != len(labels):
            raise ConfigError("frames", f"duplicate frame specs: {labels}")
        n_sites = _get_int(data, "sites", 2)
        steps = _get_int(data, "steps", 0)
        start = 0
        if "start_site" in data:
            start = data["start_site"]
            if not isinstance(start, int) or isinstance(start, bool):
                raise ConfigError("start_site", f"expected an integer, got {start!r}")
            if not -(n_sites // 2) <= start <= (n_sites - 1) // 2:
                raise ConfigError("start_site", f"{start} outside [-L/2, L/2) for L = {n_sites}")
        coin_amps = (1.0 + 0.0j, 0.0j)
        if "coin_init" in data:
            coin_amps = _parse_coin_init(data["coin_init"])
        phase_mode = data.get("phase_mode", PHYSICAL)
        if phase_mode not in PHASE_MODES:
            raise ConfigError("phase_mode", f"must be one of {PHASE_MODES}, got {phase_mode!r}")
        outputs = data.get("outputs", ["probabilities"])
        if not isinstance(outputs, list) or not outputs:
            raise ConfigError("outputs", f"expected a non-empty list, got {outputs!r}")
        for kind in outputs:
            if kind not in OUTPUT_KINDS:
                raise ConfigError("outputs", f"unknown output {kind!r}; choose from {OUTPUT_KINDS}")
        return ExperimentConfig(
            name=_get_name(data),
            frames=frames,
            n_sites=n_sites,
            steps=steps,
            start=start,
            coin_amps=coin_amps,
            phase_mode=phase_mode,
            outputs=tuple(outputs),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "frames": [f.label for f in self.frames],
            "sites": self.n_sites,
            "steps": self.steps,
            "start_site": self.start,
            "coin_init": [[z.real, z.imag] for z in self.coin_amps],
            "phase_mode": self.phase_mode,
            "outputs": list(self.outputs),
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def with_phase_mode(self, phase_mode: str) -> "ExperimentConfig":
        if phase_mode not in PHASE_MODES:
            raise ConfigError("phase_mode", f"must be one of {PHASE_MODES}, got {phase_mode!r}")
        return replace(self, phase_mode=phase_mode)


@dataclass(frozen=True)
class OverlapConfig:
    """Overlap-magnitude table over a grid of k, r, and phase differences."""

    name: str
    k_values: tuple[float, ...]
    r_values: tuple[float, ...]
    theta_points: int = 361

    @staticmethod
    def from_dict(data: dict) -> "OverlapConfig":
        known = {"name", "k_values", "r_values", "theta_points"}
        _require_keys(data, known, {"name", "k_values", "r_values"}, "overlap config")
        for key in ("k_values", "r_values"):
            values = data[key]
            if not isinstance(values, list) or not values:
                raise ConfigError(key, f"expected a non-empty list, got {values!r}")
            for v in values:
                if not isinstance(v, (int, float)) or not math.isfinite(v):
                    raise ConfigError(key, f"expected finite numbers, got {v!r}")
        if any(k <= 0 for k in data["k_values"]):
            raise ConfigError("k_values", "Bargmann indices must be positive")
        if any(r < 0 for r in data["r_values"]):
            raise ConfigError("r_values", "radial parameters must be non-negative")
        theta_points = 361
        if "theta_points" in data:
            theta_points = _get_int(data, "theta_points", 2, 100_001)
        return OverlapConfig(
            name=_get_name(data),
            k_values=tuple(float(k) for k in data["k_values"]),
            r_values=tuple(float(r) for r in data["r_values"]),
            theta_points=theta_points,
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "k_values": list(self.k_values),
            "r_values": list(self.r_values),
            "theta_points": self.theta_points,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class CrossCheckSuite:
    """A list of engine-vs-oracle comparison cases."""

    name: str
    cases: tuple[CrossCheckCase, ...]

    @staticmethod
    def from_dict(data: dict) -> "CrossCheckSuite":
        _require_keys(data, {"name", "cases"}, {"name", "cases"}, "cross-check suite")
        raw_cases = data["cases"]
        if not isinstance(raw_cases, list) or not raw_cases:
            raise ConfigError("cases", f"expected a non-empty list, got {raw_cases!r}")
        cases = []
        for i, entry in enumerate(raw_cases):
            where = f"cases[{i}]"
            known = {"k", "r", "sites", "steps", "phase_mode", "coin_init", "start_site"}
            _require_keys(entry, known, {"k", "r"}, where)
            for key in ("k", "r"):
                if not isinstance(entry[key], (int, float)) or not math.isfinite(entry[key]):
                    raise ConfigError(f"{where}.{key}", f"expected a finite number, got {entry[key]!r}")
            if entry["k"] <= 0:
                raise ConfigError(f"{where}.k", "must be positive")
            if not 0 <= entry["r"] <= DESK_SCALE["r"]:
                raise ConfigError(f"{where}.r", f"cross-check is desk-scale only: 0 <= r <= {DESK_SCALE['r']}")
            n_sites = _get_int(entry, "sites", 2, DESK_SCALE["n_sites"]) if "sites" in entry else 16
            steps = _get_int(entry, "steps", 0, DESK_SCALE["steps"]) if "steps" in entry else 10
            phase_mode = entry.get("phase_mode", PHYSICAL)
            if phase_mode not in PHASE_MODES:
                raise ConfigError(f"{where}.phase_mode", f"must be one of {PHASE_MODES}")
            coin_amps = (1.0 + 0.0j, 0.0j)
            if "coin_init" in entry:
                coin_amps = _parse_coin_init(entry["coin_init"], f"{where}.coin_init")
            start = 0
            if "start_site" in entry:
                start = entry["start_site"]
                if not isinstance(start, int) or isinstance(start, bool):
                    raise ConfigError(f"{where}.start_site", f"expected an integer, got {start!r}")
                if not -(n_sites // 2) <= start <= (n_sites - 1) // 2:
                    raise ConfigError(f"{where}.start_site", f"{start} outside the site range")
            cases.append(
                CrossCheckCase(
                    k=float(entry["k"]),
                    r=float(entry["r"]),
                    n_sites=n_sites,
                    steps=steps,
                    phase_mode=phase_mode,
                    coin_amps=coin_amps,
                    start=start,
                )
            )
        return CrossCheckSuite(name=_get_name(data), cases=tuple(cases))


@dataclass(frozen=True)
class ChartSpec:
    """What to draw from a result table and where to put it."""

    table: str
    kind: str
    x: str
    series: tuple[str, ...]
    out_name: str
    title: str = ""
    x_label: str = ""
    y_label: str = ""

    @staticmethod
    def from_dict(data: dict) -> "ChartSpec":
        known = {"table", "kind", "x", "series", "out_name", "title", "x_label", "y_label"}
        _require_keys(data, known, {"table", "kind", "x", "series", "out_name"}, "chart spec")
        if data["kind"] not in CHART_KINDS:
            raise ConfigError("kind", f"must be one of {CHART_KINDS}, got {data['kind']!r}")
        series = data["series"]
        if not isinstance(series, list) or not series or not all(isinstance(s, str) for s in series):
            raise ConfigError("series", f"expected a non-empty list of column names, got {series!r}")
        for key in ("table", "x", "out_name"):
            if not isinstance(data[key], str) or not data[key]:
                raise ConfigError(key, f"expected a non-empty string, got {data[key]!r}")
        for key in ("title", "x_label", "y_label"):
            if key in data and not isinstance(data[key], str):
                raise ConfigError(key, f"expected a string, got {data[key]!r}")
        return ChartSpec(
            table=data["table"],
            kind=data["kind"],
            x=data["x"],
            series=tuple(series),
            out_name=data["out_name"],
            title=data.get("title", ""),
            x_label=data.get("x_label", ""),
            y_label=data.get("y_label", ""),
        )


def load_json(path) -> dict:
    """Read a JSON object from a file, mapping parse failures to ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config", f"expected a JSON object at the top level of {path}")
    return data
