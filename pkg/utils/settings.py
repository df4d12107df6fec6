# weakind/settings.py

import os
from typing import Mapping, Optional

from fastapi import HTTPException
from pydantic import ValidationError

from models.run_config import RunConfig

ENV_PREFIX = "WEAKIND_"
ENV_FIELDS = ("seed", "probe_bound", "workers", "format", "budget")


def env_overrides(environ: Optional[Mapping[str, str]] = None) -> dict:
    """RunConfig fields set through WEAKIND_* variables."""
    environ = os.environ if environ is None else environ
    found = {}
    for name in ENV_FIELDS:
        value = environ.get(ENV_PREFIX + name.upper())
        if value is not None and value.strip():
            found[name] = value.strip()
    return found


def load_run_config(environ: Optional[Mapping[str, str]] = None, **flags) -> RunConfig:
    """Flags beat environment variables, which beat the defaults."""
    values = env_overrides(environ)
    values.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(**values)


def get_run_config():
    try:
        config = load_run_config()
    except ValidationError as exc:
        raise HTTPException(status_code=422, detail=f"invalid WEAKIND_* configuration: {exc.errors()}")
    yield config
