"""
Manifest Models
"""
from datetime import datetime
from typing import Any

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """Provenance of one CLI run"""
    command: str
    config: dict[str, Any] = Field(default_factory=dict, description="Full resolved configuration")
    seed: int
    version: str
    started_at: datetime
    inputs: dict[str, str] = Field(default_factory=dict, description="path -> sha256")
    outputs: dict[str, str] = Field(default_factory=dict, description="path -> sha256")
    timings: dict[str, float] = Field(default_factory=dict, description="label -> seconds")
