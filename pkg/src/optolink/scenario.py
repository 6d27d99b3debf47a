"""Scenario documents: JSON schema, loading and conversion to :class:`SimConfig`.

A scenario looks like::

    {
      "schema_version": 1,
      "photonic": {"laser_wall_power_per_channel": 10.73},
      "topology": {"builder": {"cores": 4, "bitwidth": 128, "waveguide_um": 1000}},
      "workload": {"n": 4096, "coefficient_bitwidth": 64, "num_transforms": 8},
      "simulation": {"overlap": true, "memory_bandwidth": 3e12},
      "sweep": {"axis": "bitwidth", "values": [32, 64, 128]},
      "output": {"format": "csv"}
    }

Every section is optional and unknown keys are rejected.  ``topology`` takes
either ``builder`` arguments or an ``inline`` topology document.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path

import jsonschema

from .errors import ScenarioError
from .link import PhotonicParams
from .sim import LINK_KINDS, SWEEP_AXES, TWIDDLE_MODES, SimConfig, Workload, WorkloadOverride
from .topology import ROLES, OptoLinkTopology

SCHEMA_VERSION = 1

_number = {"type": "number"}
_pos_int = {"type": "integer", "minimum": 1}
_nonneg = {"type": "number", "minimum": 0}

_photonic_props = {f.name: _number for f in dataclasses.fields(PhotonicParams)}

_channel = {
    "type": "object",
    "additionalProperties": False,
    "required": ["wavelength_id", "role", "source", "sink"],
    "properties": {
        "wavelength_id": {"type": "integer"},
        "role": {"enum": list(ROLES)},
        "source": {"type": "string"},
        "sink": {"type": "string"},
    },
}

_inline_topology = {
    "type": "object",
    "additionalProperties": False,
    "required": ["num_cores", "bitwidth", "waveguides"],
    "properties": {
        "num_cores": _pos_int,
        "bitwidth": _pos_int,
        "waveguides": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "channels"],
                "properties": {
                    "id": {"type": "integer"},
                    "length_um": _nonneg,
                    "channels": {"type": "array", "items": _channel},
                },
            },
        },
    },
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "description": {"type": "string"},
        "photonic": {"type": "object", "additionalProperties": False, "properties": _photonic_props},
        "topology": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "builder": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"cores": _pos_int, "bitwidth": _pos_int, "waveguide_um": _nonneg},
                },
                "inline": _inline_topology,
            },
            "not": {"required": ["builder", "inline"]},
        },
        "workload": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n": _pos_int,
                "coefficient_bitwidth": _pos_int,
                "num_transforms": _pos_int,
                "cores": _pos_int,
                "butterflies_per_cycle": _pos_int,
                "clock_hz": {"type": "number", "exclusiveMinimum": 0},
                "twiddle_mode": {"enum": list(TWIDDLE_MODES)},
                "buffering_depth": _pos_int,
                "spill_latency": {"type": "integer", "minimum": 0},
                "override": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "bytes_in": _nonneg,
                        "bytes_twiddle": _nonneg,
                        "bytes_out": _nonneg,
                        "compute_ops": _nonneg,
                        "ops_rate": {"type": "number", "exclusiveMinimum": 0},
                    },
                },
            },
        },
        "simulation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "overlap": {"type": "boolean"},
                "memory_bandwidth": {"type": "number", "exclusiveMinimum": 0},
                "link": {"enum": list(LINK_KINDS)},
                "link_channels": _pos_int,
            },
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["axis", "values"],
            "properties": {
                "axis": {"enum": list(SWEEP_AXES)},
                "values": {"type": "array", "items": _pos_int},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"format": {"enum": ["csv", "json", "both"]}},
        },
    },
}


def validate_scenario(doc: object) -> None:
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        msgs = [f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}" for e in errors]
        raise ScenarioError("; ".join(msgs))


def load_scenario(path: str | Path) -> dict:
    """Read and validate a scenario file; malformed JSON raises ScenarioError."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from exc
    validate_scenario(doc)
    return doc


def scenario_to_config(doc: dict) -> SimConfig:
    validate_scenario(doc)
    params = PhotonicParams.from_dict(doc.get("photonic"))
    topo = doc.get("topology", {})
    builder = topo.get("builder", {})
    inline = OptoLinkTopology.from_dict(topo["inline"]) if "inline" in topo else None

    wl_doc = dict(doc.get("workload", {}))
    override = wl_doc.pop("override", None)
    workload = Workload(**wl_doc, override=WorkloadOverride(**override) if override is not None else None)

    sim_doc = doc.get("simulation", {})
    kwargs = dict(
        workload=workload,
        params=params,
        overlap=sim_doc.get("overlap", True),
        memory_bandwidth=sim_doc.get("memory_bandwidth"),
        link=sim_doc.get("link", "optical"),
        link_channels=sim_doc.get("link_channels"),
        topology=inline,
    )
    if inline is not None:
        kwargs.update(cores=inline.num_cores, bitwidth=inline.bitwidth)
    else:
        for key, name in (("cores", "cores"), ("bitwidth", "bitwidth"), ("waveguide_um", "waveguide_um")):
            if key in builder:
                kwargs[name] = builder[key]
    return SimConfig(**kwargs)
