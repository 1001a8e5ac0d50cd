"""Voluptuous schemas for runtime options and versioned JSON documents."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import voluptuous as vol
from sympy import isprime

from .const import (
    CONF_JOBS,
    CONF_PRIME,
    CONF_PRIMES,
    CONF_SEED,
    CONF_TRIALS,
    DEFAULT_JOBS,
    DEFAULT_PRIME,
    DEFAULT_PRIMES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    ENV_PRIME,
    ENV_SEED,
    ORACLE_MAX_PRIME,
    SCHEMA_VERSION,
)
from .exceptions import SchemaError


def prime(value: Any) -> int:
    """Validate a prime modulus small enough for int64 elimination."""
    number = vol.Coerce(int)(value)
    if not isprime(number):
        raise vol.Invalid(f"{number} is not prime")
    if number >= ORACLE_MAX_PRIME:
        raise vol.Invalid(f"{number} is too large, use a prime below 2^31")
    return int(number)


OPTIONS_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.All(
            vol.Coerce(int), vol.Range(min=0, max=2**64 - 1)
        ),
        vol.Optional(CONF_PRIME, default=DEFAULT_PRIME): prime,
        vol.Optional(CONF_PRIMES, default=list(DEFAULT_PRIMES)): vol.All(
            [prime], vol.Length(min=1)
        ),
        vol.Optional(CONF_TRIALS, default=DEFAULT_TRIALS): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): vol.All(vol.Coerce(int), vol.Range(min=1)),
    }
)


def load_options(
    environ: Mapping[str, str], overrides: Mapping[str, Any] | None = None
) -> dict[str, Any]:
    """Merge environment overrides and explicit flags, then validate.

    Flags set to None are treated as absent; flags win over the environment.
    """
    raw: dict[str, Any] = {}
    if ENV_SEED in environ:
        raw[CONF_SEED] = environ[ENV_SEED]
    if ENV_PRIME in environ:
        raw[CONF_PRIME] = environ[ENV_PRIME]
    raw.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        options: dict[str, Any] = OPTIONS_SCHEMA(raw)
    except vol.Invalid as err:
        raise SchemaError(f"Invalid options: {err}") from err
    return options


CLASS_SCHEMA = vol.Schema({vol.Required("degree"): int, vol.Required("mults"): [int]})
OPTIONAL_CLASS = vol.Any(None, CLASS_SCHEMA)

REPORT_SCHEMA = vol.Schema(
    {
        vol.Required("class"): CLASS_SCHEMA,
        vol.Required("k"): int,
        vol.Required("ambient_dim"): int,
        vol.Required("expected"): int,
        vol.Required("actual"): int,
        vol.Required("defective"): bool,
        vol.Required("mode"): vol.In(["symbolic", "oracle"]),
    }
)

RANK_SCHEMA = vol.Schema(
    {
        vol.Required("prime"): int,
        vol.Required("rank"): int,
        vol.Required("adim"): int,
        vol.Required("per_trial"): [int],
    }
)


def _document(command: str, fields: dict[Any, Any]) -> vol.Schema:
    return vol.Schema(
        {
            vol.Required("schema_version"): SCHEMA_VERSION,
            vol.Required("command"): command,
            **fields,
        }
    )


DOCUMENT_SCHEMAS: dict[str, vol.Schema] = {
    "vdim": _document(
        "vdim",
        {
            vol.Required("system"): str,
            vol.Required("class"): CLASS_SCHEMA,
            vol.Required("vdim"): int,
            vol.Required("edim"): int,
        },
    ),
    "adim": _document(
        "adim",
        {
            vol.Required("system"): str,
            vol.Required("class"): CLASS_SCHEMA,
            vol.Required("vdim"): int,
            vol.Required("adim"): int,
            vol.Required("seed"): int,
            vol.Required("trials"): int,
            vol.Required("agree"): bool,
            vol.Required("results"): [RANK_SCHEMA],
        },
    ),
    "special": _document(
        "special",
        {
            vol.Required("system"): str,
            vol.Required("vdim"): int,
            vol.Required("edim"): int,
            vol.Required("adim"): int,
            vol.Required("special"): bool,
            vol.Required("certainty"): str,
            vol.Required("witness"): OPTIONAL_CLASS,
            vol.Required("fixed"): [
                {vol.Required("class"): CLASS_SCHEMA, vol.Required("multiplicity"): int}
            ],
            vol.Required("free"): OPTIONAL_CLASS,
            vol.Required("free_multiple"): int,
            vol.Required("pencil"): OPTIONAL_CLASS,
            vol.Required("double_point_pencil"): vol.Any(
                None, {vol.Required("slot"): int, vol.Required("class"): CLASS_SCHEMA}
            ),
            vol.Required("oracle_adim"): vol.Any(None, int),
        },
    ),
    "reduce": _document(
        "reduce",
        {
            vol.Required("input"): CLASS_SCHEMA,
            vol.Required("class"): CLASS_SCHEMA,
            vol.Required("terminal"): vol.In(
                ["standard", "negative_degree", "negative_multiplicity"]
            ),
            vol.Required("slot"): vol.Any(None, int),
            vol.Required("value"): vol.Any(None, int),
            vol.Required("degrees"): [int],
            vol.Required("trace"): [str],
        },
    ),
    "neg-curves": _document(
        "neg-curves",
        {
            vol.Required("slots"): int,
            vol.Required("max_degree"): int,
            vol.Required("against"): OPTIONAL_CLASS,
            vol.Required("count"): int,
            vol.Required("classes"): [CLASS_SCHEMA],
        },
    ),
    "secant": _document("secant", {vol.Required("report"): REPORT_SCHEMA}),
    "scan": _document(
        "scan",
        {
            vol.Required("d_max"): int,
            vol.Required("k_max"): int,
            vol.Required("mode"): vol.In(["symbolic", "oracle"]),
            vol.Required("candidates"): int,
            vol.Required("reports"): [REPORT_SCHEMA],
        },
    ),
    "classify": _document(
        "classify",
        {
            vol.Required("surface"): str,
            vol.Required("chi"): int,
            vol.Required("multiple"): int,
            vol.Required("h_squared"): int,
            vol.Required("doubles"): int,
            vol.Required("vdim"): int,
            vol.Required("edim"): int,
            vol.Required("adim"): int,
            vol.Required("special"): bool,
            vol.Required("certainty"): str,
            vol.Required("reason"): vol.Any(None, str),
        },
    ),
}


def validate_document(document: dict[str, Any]) -> dict[str, Any]:
    """Validate an output document against the schema of its command."""
    schema = DOCUMENT_SCHEMAS.get(document.get("command", ""))
    if schema is None:
        raise SchemaError(f"No schema for command {document.get('command')!r}")
    try:
        validated: dict[str, Any] = schema(document)
    except vol.Invalid as err:
        raise SchemaError(f"Document for {document['command']} is invalid: {err}") from err
    return validated
