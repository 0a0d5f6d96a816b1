"""JSON run configuration for the command-line front end.

A config is a single JSON document; unknown keys are rejected so typos
fail loudly instead of silently using defaults.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from .charges import Geometry, InvalidGeometryError
from .contour import Window
from .tolerances import Tolerances


class ConfigError(ValueError):
    pass


_OVERLAYS = ("level_set", "rays_top", "rays_vertical", "endpoints", "solution")


@dataclass(frozen=True)
class SweepSpec:
    p_range: tuple[float, float]
    q_range: tuple[float, float]
    p_count: int
    q_count: int


@dataclass(frozen=True)
class FigureSpec:
    window: Window
    samples: int = 256
    overlays: tuple[str, ...] = _OVERLAYS


@dataclass(frozen=True)
class RunConfig:
    geometry: Geometry
    tolerances: Tolerances
    sweep: SweepSpec | None = None
    figure: FigureSpec | None = None


def _require_keys(doc: dict, allowed: set, where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


def _number(doc: dict, key: str, where: str) -> float:
    if key not in doc:
        raise ConfigError(f"missing required key {key!r} in {where}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {v!r}")
    return float(v)


def parse_config(doc) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    _require_keys(doc, {"n", "a", "p", "q", "tolerances", "sweep", "figure"},
                  "config")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigError(f"n must be an integer, got {n!r}")
    try:
        geometry = Geometry(n=n, a=_number(doc, "a", "config"),
                            p=_number(doc, "p", "config"),
                            q=_number(doc, "q", "config"))
    except InvalidGeometryError as exc:
        raise ConfigError(str(exc)) from exc

    tol = Tolerances()
    if "tolerances" in doc:
        tdoc = doc["tolerances"]
        if not isinstance(tdoc, dict):
            raise ConfigError("tolerances must be an object")
        fields = {f.name for f in dataclasses.fields(Tolerances)}
        _require_keys(tdoc, fields, "tolerances")
        tol = dataclasses.replace(tol, **tdoc)

    sweep = None
    if "sweep" in doc:
        sdoc = doc["sweep"]
        if not isinstance(sdoc, dict):
            raise ConfigError("sweep must be an object")
        _require_keys(sdoc, {"p_range", "q_range", "p_count", "q_count"}, "sweep")
        try:
            sweep = SweepSpec(
                p_range=(float(sdoc["p_range"][0]), float(sdoc["p_range"][1])),
                q_range=(float(sdoc["q_range"][0]), float(sdoc["q_range"][1])),
                p_count=int(sdoc["p_count"]),
                q_count=int(sdoc["q_count"]),
            )
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed sweep spec: {exc}") from exc
        if sweep.p_count < 1 or sweep.q_count < 1:
            raise ConfigError("sweep grid counts must be >= 1")

    figure = None
    if "figure" in doc:
        fdoc = doc["figure"]
        if not isinstance(fdoc, dict):
            raise ConfigError("figure must be an object")
        _require_keys(fdoc, {"window", "samples", "overlays"}, "figure")
        try:
            w = fdoc["window"]
            window = Window(float(w[0]), float(w[1]), float(w[2]), float(w[3]))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed figure window: {exc}") from exc
        if not (window.xmin < window.xmax and window.ymin < window.ymax):
            raise ConfigError("figure window must be non-empty")
        samples = fdoc.get("samples", 256)
        if isinstance(samples, bool) or not isinstance(samples, int) or samples < 64:
            raise ConfigError("figure samples must be an integer >= 64")
        overlays = tuple(fdoc.get("overlays", _OVERLAYS))
        bad = set(overlays) - set(_OVERLAYS)
        if bad:
            raise ConfigError(f"unknown overlay(s): {sorted(bad)}")
        figure = FigureSpec(window=window, samples=samples, overlays=overlays)

    return RunConfig(geometry=geometry, tolerances=tol, sweep=sweep, figure=figure)


def load_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return parse_config(doc)
