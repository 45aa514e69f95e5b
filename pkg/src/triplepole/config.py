"""Versioned JSON run configuration: schema, loading, and object building.

A configuration file describes at most one of each section; which sections a
subcommand needs is checked at dispatch time so one file can drive several
commands.  Schema violations raise ConfigError; values that pass the schema
but violate library preconditions surface as the library's own errors.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .errors import ConfigError
from .gauss import GaussianModulus, HeckeGaussianModel
from .models import (
    AbelianModel,
    CuspidalLabelK,
    CyclicData,
    GenericAtom,
    GenericRelationModel,
)
from .sweep import SweepBudget, SweepFamily, shipped_catalogue

CONFIG_VERSION = 1
REPORT_VERSION = 1

_abelian_model = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "factors", "sigma", "p"],
    "properties": {
        "kind": {"const": "abelian"},
        "factors": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "integer", "minimum": 2},
        },
        "sigma": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
        },
        "p": {"type": "integer", "minimum": 2},
        "allow_trivial_sigma": {"type": "boolean"},
    },
}

_generic_model = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "p", "atoms", "relations", "chi_invariant"],
    "properties": {
        "kind": {"const": "generic"},
        "p": {"type": "integer", "minimum": 2},
        "atoms": {
            "type": "array",
            "minItems": 2,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "degree"],
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "degree": {"type": "integer", "minimum": 1},
                    "noninvariant": {"type": "boolean"},
                },
            },
        },
        "relations": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer"},
            },
        },
        "chi_invariant": {"type": "boolean"},
        "theta1_id": {"type": "string"},
        "theta2_id": {"type": "string"},
        "validate": {"type": "boolean"},
    },
}

_gaussian_model = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "modulus"],
    "properties": {
        "kind": {"const": "gaussian"},
        "modulus": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {"type": "integer"},
        },
    },
}

_coords = {"type": "array", "items": {"type": "integer"}}

_abelian_label = {
    "oneOf": [
        _coords,
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["coords"],
            "properties": {
                "coords": _coords,
                "behavior": {"enum": ["induced", "stays"]},
            },
        },
    ]
}

_generic_label = {
    "type": "object",
    "additionalProperties": False,
    "properties": {"shift": {"type": "integer"}},
}

_gaussian_label = {
    "oneOf": [
        {"type": "integer", "minimum": 0},
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["index"],
            "properties": {
                "index": {"type": "integer", "minimum": 0},
                "behavior": {"enum": ["induced", "stays"]},
            },
        },
    ]
}

_any_label = {"oneOf": [_abelian_label, _generic_label, _gaussian_label]}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["version"],
    "properties": {
        "version": {"const": CONFIG_VERSION},
        "model": {
            "oneOf": [_abelian_model, _generic_model, _gaussian_model]
        },
        "labels": {
            "type": "object",
            "additionalProperties": False,
            "required": ["theta1", "theta2", "chi"],
            "properties": {
                "theta1": _any_label,
                "theta2": _any_label,
                "chi": _any_label,
            },
        },
        "family": {
            "type": "object",
            "additionalProperties": False,
            "required": ["models"],
            "properties": {
                "models": {"type": "array", "minItems": 1, "items": _abelian_model}
            },
        },
        "catalogue": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "p_values": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "integer", "minimum": 2},
                },
                "max_group_order": {"type": "integer", "minimum": 2},
            },
        },
        "budget": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "strategy": {"enum": ["exhaustive", "sample"]},
                "limit": {"type": ["integer", "null"], "minimum": 0},
                "samples": {"type": "integer", "minimum": 0},
                "seed": {"type": "integer", "minimum": 0},
            },
        },
        "witness": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "target_ell": {"type": ["integer", "null"], "minimum": 0},
                "require_noninvariant_chi": {"type": "boolean"},
            },
        },
        "estimate": {
            "type": "object",
            "additionalProperties": False,
            "required": ["X"],
            "properties": {
                "X": {"type": "integer", "minimum": 1},
                "tau": {
                    "type": "number",
                    "exclusiveMinimum": 0,
                    "exclusiveMaximum": 1,
                },
            },
        },
    },
}


def load_config(path: str | Path) -> dict:
    """Read and schema-validate a JSON configuration file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    validate_config(raw)
    return raw


def validate_config(raw: dict) -> None:
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(piece) for piece in exc.absolute_path) or "<root>"
        raise ConfigError(f"config schema violation at {path}: {exc.message}") from exc


def require_section(config: dict, section: str, command: str) -> dict:
    if section not in config:
        raise ConfigError(
            f"command {command!r} needs a {section!r} section in the config"
        )
    return config[section]


def build_model(spec: dict):
    """Instantiate the label model a config section describes."""
    kind = spec["kind"]
    if kind == "abelian":
        return AbelianModel(
            factors=tuple(spec["factors"]),
            sigma=tuple(tuple(row) for row in spec["sigma"]),
            cyclic=CyclicData(spec["p"]),
            allow_trivial_sigma=spec.get("allow_trivial_sigma", False),
        )
    if kind == "generic":
        atoms = tuple(
            GenericAtom(
                atom_id=a["id"],
                degree=a["degree"],
                noninvariant=a.get("noninvariant", True),
            )
            for a in spec["atoms"]
        )
        return GenericRelationModel(
            cyclic=CyclicData(spec["p"]),
            atoms=atoms,
            relations=frozenset(tuple(cell) for cell in spec["relations"]),
            chi_invariant=spec["chi_invariant"],
            theta1_id=spec.get("theta1_id", "theta1"),
            theta2_id=spec.get("theta2_id", "theta2"),
            validate=spec.get("validate", True),
        )
    if kind == "gaussian":
        return HeckeGaussianModel(GaussianModulus(tuple(spec["modulus"])))
    raise ConfigError(f"unknown model kind {kind!r}")


def _abelian_label_of(model: AbelianModel, value) -> tuple[CuspidalLabelK, str]:
    if isinstance(value, dict):
        return model.label(tuple(value["coords"])), value.get("behavior", "induced")
    return model.label(tuple(value)), "induced"


def _gaussian_label_of(model: HeckeGaussianModel, value) -> tuple[CuspidalLabelK, str]:
    if isinstance(value, dict):
        index, behavior = value["index"], value.get("behavior", "induced")
    else:
        index, behavior = value, "induced"
    characters = model.characters
    if index >= len(characters):
        raise ConfigError(
            f"character index {index} out of range; the modulus has "
            f"{len(characters)} ideal characters"
        )
    return model.character_label(index), behavior


def build_labels(model, spec: dict) -> dict:
    """Build the three labels of a triple from a labels section.

    Returns {"theta1": (label, behavior), "theta2": ..., "chi": label};
    `behavior` distinguishes data that base-change to the Galois orbit
    ("induced") from data that stay cuspidal ("stays").
    """
    out = {}
    for role in ("theta1", "theta2"):
        value = spec[role]
        if isinstance(model, AbelianModel):
            out[role] = _abelian_label_of(model, value)
        elif isinstance(model, GenericRelationModel):
            shift = value.get("shift", 0) if isinstance(value, dict) else 0
            label = (
                model.theta1_label(shift) if role == "theta1" else model.theta2_label(shift)
            )
            out[role] = (label, "induced")
        elif isinstance(model, HeckeGaussianModel):
            out[role] = _gaussian_label_of(model, value)
        else:
            raise ConfigError("unsupported model for label building")
    chi_value = spec["chi"]
    if isinstance(model, AbelianModel):
        out["chi"] = _abelian_label_of(model, chi_value)[0]
    elif isinstance(model, GenericRelationModel):
        shift = chi_value.get("shift", 0) if isinstance(chi_value, dict) else 0
        out["chi"] = model.chi_label(shift)
    else:
        out["chi"] = _gaussian_label_of(model, chi_value)[0]
    return out


def build_family(config: dict, command: str) -> SweepFamily:
    """A sweep family from either an explicit model list or catalogue
    parameters; exactly one of the two sections must be present."""
    has_family = "family" in config
    has_catalogue = "catalogue" in config
    if has_family == has_catalogue:
        raise ConfigError(
            f"command {command!r} needs exactly one of 'family' or 'catalogue'"
        )
    if has_family:
        models = tuple(build_model(m) for m in config["family"]["models"])
        return SweepFamily(models=models)
    cat = config["catalogue"]
    return shipped_catalogue(
        p_values=tuple(cat.get("p_values", (2, 3, 5))),
        max_group_order=cat.get("max_group_order", 64),
    )


def build_budget(config: dict, seed_override: int | None = None) -> SweepBudget:
    spec = dict(config.get("budget", {}))
    if seed_override is not None:
        spec["seed"] = seed_override
    return SweepBudget(
        strategy=spec.get("strategy", "exhaustive"),
        limit=spec.get("limit"),
        samples=spec.get("samples", 10000),
        seed=spec.get("seed", 0),
    )
