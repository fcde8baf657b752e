from __future__ import annotations

from pydantic import BaseModel, ConfigDict


class FileModel(BaseModel):
    """Base for the on-disk formats: unknown keys are rejected, camelCase aliases accepted."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)
