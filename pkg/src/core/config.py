"""Core configuration: environment settings, run settings and logging"""

import logging
import os
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, field_validator

from src.core.learning_config import LEARNERS, TEACHERS, LearningConfig

load_dotenv()


class AppConfig(BaseModel):
    """Process-wide settings from the environment / .env"""
    log_level: str = "INFO"
    output_dir: str = "./outputs"
    solver_config: Optional[str] = None
    timestamp_format: str = "%Y%m%d_%H%M%S"

    def __init__(self, **kwargs):
        super().__init__(
            log_level=kwargs.get("log_level", os.getenv("LOG_LEVEL", "INFO")),
            output_dir=kwargs.get("output_dir", os.getenv("OUTPUT_DIR", "./outputs")),
            solver_config=kwargs.get("solver_config", os.getenv("STRCHC_SOLVER_CONFIG")),
        )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str):
        if v.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level {v!r}")
        return v.upper()

    def get_timestamped_filename(self, base_name: str, extension: str = "csv") -> str:
        timestamp = datetime.now().strftime(self.timestamp_format)
        return f"{base_name}_{timestamp}.{extension}"

    def get_output_path(self, filename: str) -> Path:
        """Path inside the output directory, which is created on demand"""
        Path(self.output_dir).mkdir(parents=True, exist_ok=True)
        return Path(self.output_dir) / filename


class RunConfig(BaseModel):
    """Settings of one CEGIS run"""
    learner: str = "sat"
    teacher: str = "hybrid"
    solver_config: Optional[str] = None
    timeout: float = 60.0
    max_states: int = 16
    length_slack: int = 2
    dump_dir: Optional[str] = None
    iteration_cap: int = 500
    incremental: bool = True
    single_session: bool = False
    symmetry_breaking: bool = False
    sat_backend: str = "g4"
    depth_cap: int = 64
    node_cap: int = 1000000
    unsafe_search_interval: int = 8
    unsafe_search_window: int = 10
    subset_cap: int = 65536
    simplify_regex: bool = True
    max_workers: int = 1
    transcript: Optional[str] = None

    @field_validator("learner")
    @classmethod
    def validate_learner(cls, v: str):
        if v not in LEARNERS:
            raise ValueError(f"learner must be one of {LEARNERS}")
        return v

    @field_validator("teacher")
    @classmethod
    def validate_teacher(cls, v: str):
        if v not in TEACHERS:
            raise ValueError(f"teacher must be one of {TEACHERS}")
        return v

    @field_validator("timeout")
    @classmethod
    def validate_timeout(cls, v: float):
        if v <= 0:
            raise ValueError("timeout must be positive")
        return v

    @field_validator("max_states", "depth_cap", "node_cap", "subset_cap", "max_workers",
                     "unsafe_search_interval")
    @classmethod
    def validate_positive(cls, v: int, info):
        if v < 1:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("iteration_cap", "length_slack", "unsafe_search_window")
    @classmethod
    def validate_non_negative(cls, v: int, info):
        if v < 0:
            raise ValueError(f"{info.field_name} must not be negative")
        return v

    @classmethod
    def from_sources(cls, settings: Optional[LearningConfig] = None,
                     overrides: Optional[Dict[str, Any]] = None) -> "RunConfig":
        """YAML defaults, then the environment, then explicit overrides (None means unset)"""
        values: Dict[str, Any] = {}
        if settings is not None:
            values.update(
                learner=settings.learner, teacher=settings.teacher,
                solver_config=settings.solver_config, timeout=settings.timeout_seconds,
                max_states=settings.max_states, length_slack=settings.length_slack,
                dump_dir=settings.dump_dir, iteration_cap=settings.iteration_cap,
                incremental=settings.incremental, single_session=settings.single_session,
                symmetry_breaking=settings.symmetry_breaking, sat_backend=settings.sat_backend,
                depth_cap=settings.depth_cap, node_cap=settings.node_cap,
                unsafe_search_interval=settings.unsafe_search_interval,
                unsafe_search_window=settings.unsafe_search_window,
                subset_cap=settings.subset_cap, simplify_regex=settings.simplify_regex,
                max_workers=settings.max_workers, transcript=settings.transcript,
            )
        if values.get("solver_config") is None and APP_CONFIG.solver_config:
            values["solver_config"] = APP_CONFIG.solver_config
        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value
        return cls(**{k: v for k, v in values.items() if v is not None})


APP_CONFIG = AppConfig()


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> logging.Logger:
    """Stream handler plus an optional file handler"""
    handlers = [logging.StreamHandler()]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, (level or APP_CONFIG.log_level).upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )
    return logging.getLogger("strchc")
