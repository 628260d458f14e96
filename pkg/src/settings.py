# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Runtime configuration, read from QARITH_* environment variables."""

import os
from functools import lru_cache
from typing import Optional

from pydantic import BaseSettings, ValidationError, root_validator, validator

from constants import (
    EXHAUSTIVE_INPUT_BITS,
    STATEVECTOR_WIDTH_CAP,
    TRUTH_TABLE_WIDTH_CAP,
    InvalidSettingsError,
)

_DEFAULT_TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "templates")


class QarithSettings(BaseSettings):
    """Simulator caps and rendering options.

    QARITH_WIDTH_CAP, when set, overrides both simulator caps.
    """

    statevector_cap: int = STATEVECTOR_WIDTH_CAP
    truth_table_cap: int = TRUTH_TABLE_WIDTH_CAP
    width_cap: Optional[int]
    exhaustive_bits: int = EXHAUSTIVE_INPUT_BITS
    templates_dir: str = _DEFAULT_TEMPLATES_DIR
    workers: int = 1

    class Config:
        env_prefix = "QARITH_"

    @validator("statevector_cap", "truth_table_cap", "width_cap", "exhaustive_bits", "workers")
    @classmethod
    def must_be_positive(cls, value):
        """Reject non-positive caps."""
        if value is not None and value <= 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @root_validator()
    @classmethod
    def apply_width_cap(cls, field_values):
        """Let the single width cap override both simulator caps."""
        if (cap := field_values.get("width_cap")) is not None:
            field_values["statevector_cap"] = cap
            field_values["truth_table_cap"] = cap
        return field_values


@lru_cache(maxsize=1)
def get_settings() -> QarithSettings:
    """Return the process-wide settings, read once from the environment.

    Raises:
        InvalidSettingsError: a QARITH_* variable fails validation.
    """
    try:
        return QarithSettings()
    except ValidationError as e:
        problems = "; ".join(
            f"QARITH_{str(error['loc'][0]).upper()}: {error['msg']}" for error in e.errors()
        )
        raise InvalidSettingsError(f"invalid settings: {problems}")
