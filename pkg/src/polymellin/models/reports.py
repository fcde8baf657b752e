from __future__ import annotations

import hashlib
from datetime import datetime
from pathlib import Path
from typing import Any, Literal

from pydantic import Field

from polymellin.errors import PolyMellinError
from polymellin.models.common import FileModel

ReportStatus = Literal["ok", "error"]


class ErrorInfo(FileModel):
    module: str
    kind: str
    message: str

    @classmethod
    def from_exception(cls, exc: PolyMellinError) -> ErrorInfo:
        return cls(module=exc.module, kind=exc.kind, message=str(exc))


class Provenance(FileModel):
    input_sha256: str | None = Field(default=None, alias="inputSha256")
    quadrature: dict[str, Any] | None = None
    settings: dict[str, Any] = Field(default_factory=dict)


class ReportDocument(FileModel):
    """Machine-readable result of one command; ``generated_at`` is the only nondeterministic field."""

    command: str
    tool_version: str = Field(alias="toolVersion")
    status: ReportStatus = "ok"
    provenance: Provenance = Field(default_factory=Provenance)
    result: dict[str, Any] = Field(default_factory=dict)
    error: ErrorInfo | None = None
    generated_at: datetime | None = Field(default=None, alias="generatedAt")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True, exclude_none=True)

    def write(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")
        return path

    @classmethod
    def read(cls, path: Path) -> ReportDocument:
        return cls.model_validate_json(path.read_text(encoding="utf-8"))


def sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()
