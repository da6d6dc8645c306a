"""JSON scenario files.

A scenario document looks like::

    {
      "version": "1",
      "name": "fig_double_triangle",
      "scenario": "smooth_smooth",
      "gamma": [a, b, c, d, e, f],
      "c": [a, b, c, d, e, f],
      "start": [x, y, z],
      "config": {"max_steps": 10000},
      "render": {"viewbox": [xmin, ymin, width, height]}
    }

Conics are coefficient sextuples of ``a x^2 + b xy + c y^2 + d x + e y + f``
(homogenized with z).  Line pairs are given as ``"gamma_lines": [[u, v, w],
[u, v, w]]`` and dual degenerate conics as ``"cstar": [[x, y, z], [x, y,
z]]``.  Which keys are required depends on ``scenario``:

==========================  ==================  ============
scenario                    inscribed-in        circumscribed
==========================  ==================  ============
``smooth_smooth``           ``gamma``           ``c``
``singular_inscribed``      ``gamma``           ``cstar``
``singular_circumscribed``  ``gamma_lines``     ``c``
``both_singular``           ``gamma_lines``     ``cstar``
==========================  ==================  ============

``start``, ``parity``, ``name``, ``config`` and ``render`` are optional.
Unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

import numpy as np

from .chain import (
    BothSingular,
    ChainConfig,
    PonceletScenario,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
)
from .errors import ParseError, PonceletError, ValidationError
from .projective import Conic, ConicKind, ProjLine, ProjPoint, SingularConic, SingularDualConic, conic_from_coeffs

SCHEMA_VERSION = "1"

FIGURES = (
    "fig_cusp",
    "fig_cusp2",
    "fig_double_triangle",
    "fig_triple",
    "fig_C_singular",
    "fig_asymp",
    "fig_asym",
    "fig_Gama_singular",
    "fig_harmonic",
    "fig_equal",
    "fig_not_center",
)

_KEYS = {
    "smooth_smooth": ("gamma", "c"),
    "singular_inscribed": ("gamma", "cstar"),
    "singular_circumscribed": ("gamma_lines", "c"),
    "both_singular": ("gamma_lines", "cstar"),
}
_OPTIONAL = {"version", "name", "scenario", "start", "parity", "config", "render"}
_CONFIG_KEYS = ("max_steps", "closure_tol", "convergence_window", "seed")


@dataclass(frozen=True)
class ScenarioDocument:
    scenario: PonceletScenario
    config: ChainConfig
    name: Optional[str] = None
    start: Optional[ProjPoint] = None
    parity: Optional[int] = None
    viewbox: Optional[tuple[float, float, float, float]] = None
    config_overrides: dict = field(default_factory=dict, compare=False)


def _numbers(value: Any, n: int, where: str) -> list[float]:
    if not isinstance(value, list) or len(value) != n:
        raise ValidationError(where, f"expected a list of {n} numbers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ValidationError(f"{where}[{i}]", "expected a finite number")
        out.append(float(x))
    return out


def _regular_conic(value: Any, where: str) -> Conic:
    try:
        conic = conic_from_coeffs(*_numbers(value, 6, where))
    except ValidationError:
        raise
    except PonceletError as exc:
        raise ValidationError(where, str(exc)) from None
    if conic.kind is ConicKind.POINT_OR_EMPTY:
        raise ValidationError(where, "conic has no real locus")
    if not conic.is_regular:
        raise ValidationError(where, f"conic is degenerate ({conic.kind.value})")
    w = np.linalg.eigvalsh(conic.m)
    if w.min() > 0 or w.max() < 0:
        raise ValidationError(where, "conic has no real points")
    return conic


def _pair(value: Any, where: str, make):
    if not isinstance(value, list) or len(value) != 2:
        raise ValidationError(where, "expected a list of two triples")
    items = []
    for i, v in enumerate(value):
        nums = _numbers(v, 3, f"{where}[{i}]")
        if not any(nums):
            raise ValidationError(f"{where}[{i}]", "zero triple")
        items.append(make(nums))
    return items


def _build(kind: str, doc: dict) -> PonceletScenario:
    first, second = _KEYS[kind]
    for key in (first, second):
        if key not in doc:
            raise ValidationError(key, "required field missing")
    try:
        if first == "gamma":
            gamma = _regular_conic(doc["gamma"], "gamma")
        else:
            gamma = SingularConic(*_pair(doc["gamma_lines"], "gamma_lines", ProjLine))
    except ValidationError:
        raise
    except PonceletError as exc:
        raise ValidationError(first, str(exc)) from None
    try:
        if second == "c":
            other = _regular_conic(doc["c"], "c")
        else:
            other = SingularDualConic(*_pair(doc["cstar"], "cstar", ProjPoint))
    except ValidationError:
        raise
    except PonceletError as exc:
        raise ValidationError(second, str(exc)) from None
    return {
        "smooth_smooth": SmoothSmooth,
        "singular_inscribed": SingularInscribed,
        "singular_circumscribed": SingularCircumscribed,
        "both_singular": BothSingular,
    }[kind](gamma, other)


def parse_scenario(text: bytes | str) -> ScenarioDocument:
    """Parse and validate a scenario document.

    Raises:
        ParseError: the text is not a JSON object.
        ValidationError: a field is missing, unknown or invalid; the
            message starts with the field path.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    if not text.strip():
        raise ParseError("empty document")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")

    version = doc.get("version")
    if version is None:
        raise ValidationError("version", "required field missing")
    if version != SCHEMA_VERSION:
        raise ValidationError("version", f"unsupported version {version!r}")
    kind = doc.get("scenario")
    if kind not in _KEYS:
        raise ValidationError("scenario", f"expected one of {', '.join(_KEYS)}")
    allowed = _OPTIONAL | set(_KEYS[kind])
    for key in sorted(doc):
        if key not in allowed:
            raise ValidationError(key, "unknown field")

    scenario = _build(kind, doc)

    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError("name", "expected a string")
    start = None
    if "start" in doc:
        coords = _numbers(doc["start"], 3, "start")
        if not any(coords):
            raise ValidationError("start", "zero triple")
        start = ProjPoint(coords)
    parity = doc.get("parity")
    if parity is not None and parity not in (0, 1):
        raise ValidationError("parity", "expected 0 or 1")

    overrides = doc.get("config", {})
    if not isinstance(overrides, dict):
        raise ValidationError("config", "expected an object")
    for key in sorted(overrides):
        if key not in _CONFIG_KEYS:
            raise ValidationError(f"config.{key}", "unknown field")
        val = overrides[key]
        want_int = key != "closure_tol"
        if isinstance(val, bool) or not isinstance(val, int if want_int else (int, float)):
            raise ValidationError(f"config.{key}", "expected an integer" if want_int else "expected a number")
    try:
        config = ChainConfig(**overrides)
    except ValueError as exc:
        raise ValidationError("config", str(exc)) from None

    viewbox = None
    render = doc.get("render", {})
    if not isinstance(render, dict):
        raise ValidationError("render", "expected an object")
    for key in sorted(render):
        if key != "viewbox":
            raise ValidationError(f"render.{key}", "unknown field")
    if "viewbox" in render:
        viewbox = tuple(_numbers(render["viewbox"], 4, "render.viewbox"))
        if not (viewbox[2] > 0 and viewbox[3] > 0):
            raise ValidationError("render.viewbox", "width and height must be positive")

    return ScenarioDocument(scenario, config, name, start, parity, viewbox, dict(overrides))


def _floats(xs) -> list[float]:
    return [float(x) + 0.0 for x in xs]


def scenario_to_dict(doc: ScenarioDocument) -> dict:
    s = doc.scenario
    out: dict[str, Any] = {"version": SCHEMA_VERSION}
    if doc.name is not None:
        out["name"] = doc.name
    out["scenario"] = s.kind
    if isinstance(s, (SmoothSmooth, SingularInscribed)):
        out["gamma"] = _floats(s.gamma.coeffs())
    else:
        out["gamma_lines"] = [_floats(g.coeffs) for g in s.gamma_lines.lines()]
    if isinstance(s, (SmoothSmooth, SingularCircumscribed)):
        out["c"] = _floats(s.c.coeffs())
    else:
        out["cstar"] = [_floats(p.coords) for p in s.cstar.points()]
    if doc.start is not None:
        out["start"] = _floats(doc.start.coords)
    if doc.parity is not None:
        out["parity"] = doc.parity
    if doc.config_overrides:
        out["config"] = {k: doc.config_overrides[k] for k in _CONFIG_KEYS if k in doc.config_overrides}
    if doc.viewbox is not None:
        out["render"] = {"viewbox": _floats(doc.viewbox)}
    return out


def serialize_scenario(doc: ScenarioDocument) -> str:
    """Canonical JSON text (full float precision, fixed key order)."""
    return json.dumps(scenario_to_dict(doc), indent=2) + "\n"


def load_scenario(path) -> ScenarioDocument:
    with open(path, "rb") as fh:
        return parse_scenario(fh.read())


def bundled_scenario(name: str) -> ScenarioDocument:
    """One of the scenario files shipped with the package, e.g. ``"fig_cusp"``."""
    if name not in FIGURES:
        raise KeyError(f"no bundled scenario named {name!r}")
    text = resources.files("poncelet").joinpath("scenarios", f"{name}.json").read_bytes()
    return parse_scenario(text)


def bundled_scenario_path(name: str):
    return resources.files("poncelet").joinpath("scenarios", f"{name}.json")
