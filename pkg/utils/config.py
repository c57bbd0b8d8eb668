import os
import logging

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

CONFIG_ENV = "PRIMDIGRAPH_CONFIG"
DEFAULT_CONFIG = "config.yaml"


class OracleSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_order: int = Field(120, ge=1, le=120)
    seed: int = 0
    directed_trials: int = Field(1000, ge=0)
    factorization_trials: int = Field(200, ge=0)
    factorization_max_order: int = Field(60, ge=1)


class Settings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    closure_cap: int = Field(1_000_000, ge=1)
    arc_guard: int = Field(100_000, ge=1)
    primitivity_guard: int = Field(200, ge=2)
    log_dir: str = "logs"
    oracle: OracleSettings = Field(default_factory=OracleSettings)


def load_settings(path=None):
    load_dotenv()
    path = path or os.environ.get(CONFIG_ENV) or DEFAULT_CONFIG
    if not os.path.exists(path):
        logger.debug(f"Config: {path} not found, using defaults")
        return Settings()
    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    return Settings.model_validate(raw)
