from __future__ import annotations

__all__ = ["ENV_PREFIX", "EngineConfig", "get_env", "load_config"]

import json
import os
import pathlib
import typing

import pydantic

from .errors import InputError

ENV_PREFIX = "HOLOKNOT_"


def get_env(name: str, default: None | str = None) -> str:
    """Get a value from an environment variable.

    Parameters
    ----------
    name
        The name of the environment variable.
    default
        The default value; if None then raise ValueError if absent.
    """
    if default is not None and not isinstance(default, str):
        raise ValueError(f"default={default!r} must be a str or None")
    value = os.environ.get(name, default)
    if value is None:
        raise ValueError(f"You must specify environment variable {name}")
    return value


class EngineConfig(pydantic.BaseModel):
    """Numeric settings shared by the algebra and curve engines.

    Notes
    -----
    Every field can be overridden by an environment variable named
    ``HOLOKNOT_<FIELD NAME IN UPPER CASE>``, e.g. ``HOLOKNOT_GRID_SIZE``.
    """

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    grid_size: int = pydantic.Field(
        default=4096, ge=64, title="Samples per period for grid scans."
    )
    root_tolerance: float = pydantic.Field(
        default=1e-10, gt=0, title="Root refinement tolerance."
    )
    match_tolerance: float = pydantic.Field(
        default=1e-8, gt=0, title="Double-point matching tolerance."
    )
    dedupe_radius: float = pydantic.Field(
        default=1e-6,
        gt=0,
        title="Parameter radius within which double points are merged.",
    )
    axis_tolerance: float = pydantic.Field(
        default=1e-6,
        gt=0,
        title="Minimum |f'| at a double point (condition 2).",
    )
    transversality_tolerance: float = pydantic.Field(
        default=1e-6,
        gt=0,
        title="Minimum slope difference of front branches at a crossing.",
    )
    tangency_tolerance: float = pydantic.Field(
        default=1e-9, gt=0, title="Relative contact-form residual bound."
    )
    newton_max_iterations: int = pydantic.Field(
        default=50, ge=1, title="Newton iterations per candidate crossing."
    )
    strand_cap: int = pydantic.Field(
        default=6, ge=1, title="Maximum strands for summit-set closure."
    )
    max_positive_words: int = pydantic.Field(
        default=1_000_000,
        ge=1,
        title="Visited-word cap of the positive rewriting closure.",
    )
    log_level: str = pydantic.Field(default="INFO", title="Log level.")

    @pydantic.field_validator("log_level")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level {value!r}")
        return value


def _environment_overrides() -> dict[str, str]:
    overrides = dict()
    for name in EngineConfig.model_fields:
        env_name = ENV_PREFIX + name.upper()
        value = get_env(env_name, "")
        if value:
            overrides[name] = value
    return overrides


def load_config(
    path: None | str | pathlib.Path = None,
    **overrides: typing.Any,
) -> EngineConfig:
    """Build the engine configuration.

    Sources in increasing precedence: defaults, ``HOLOKNOT_*`` environment
    variables, the JSON document at ``path``, keyword overrides.
    Overrides whose value is None are ignored.

    Parameters
    ----------
    path
        Optional path of a JSON object with `EngineConfig` fields.
    overrides
        Explicit field values, e.g. from command-line flags.

    Raises
    ------
    InputError
        If the document cannot be read or a value is invalid.
    """
    values: dict[str, typing.Any] = _environment_overrides()
    if path is not None:
        try:
            document = json.loads(pathlib.Path(path).read_text())
        except OSError as e:
            raise InputError(f"Cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise InputError(
                f"Config {path} line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
        if not isinstance(document, dict):
            raise InputError(f"Config {path} must hold a JSON object")
        values.update(document)
    values.update(
        {name: value for name, value in overrides.items() if value is not None}
    )
    try:
        return EngineConfig.model_validate(values)
    except pydantic.ValidationError as e:
        raise InputError(f"Invalid configuration: {e}") from e
