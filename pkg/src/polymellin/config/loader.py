from __future__ import annotations

import json
import tomllib
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import tomli_w
import yaml
from pydantic import ValidationError

from polymellin.config.models import ResolvedConfig, ToolConfig
from polymellin.errors import ConfigError


def _decode_raw(raw: str, *, suffix: str) -> dict[str, Any]:
    if suffix in {".yaml", ".yml"}:
        parsed = yaml.safe_load(raw) or {}
    elif suffix == ".json":
        parsed = json.loads(raw)
    elif suffix == ".toml":
        parsed = tomllib.loads(raw)
    else:
        raise ConfigError(f"unsupported config extension '{suffix}' (expected .yaml/.yml/.json/.toml)")

    if not isinstance(parsed, dict):
        raise ConfigError("config must decode to an object/map")
    return parsed


def parse_config_file(path: Path) -> dict[str, Any]:
    return _decode_raw(path.read_text(encoding="utf-8"), suffix=path.suffix.lower())


def load_config(config: ToolConfig | Mapping[str, Any] | str | Path | None = None) -> ResolvedConfig:
    """Resolve tool configuration from a model, a mapping, a file path, or defaults."""

    if config is None:
        return ResolvedConfig(source="defaults", data=ToolConfig())
    if isinstance(config, ToolConfig):
        return ResolvedConfig(source="runtime-model", data=config)
    if isinstance(config, Mapping):
        try:
            return ResolvedConfig(source="runtime-dict", data=ToolConfig.model_validate(dict(config)))
        except ValidationError as exc:
            raise ConfigError(f"invalid config structure: {exc}") from exc

    path = Path(config).expanduser().resolve()
    if not path.exists():
        raise ConfigError(f"config file '{path}' does not exist")
    try:
        payload = parse_config_file(path)
    except (OSError, ValueError, tomllib.TOMLDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"failed to parse config file '{path}': {exc}") from exc
    try:
        data = ToolConfig.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(f"invalid config structure for '{path}': {exc}") from exc
    return ResolvedConfig(source="file", path=path, data=data)


def render_config(config: ToolConfig, *, suffix: str) -> str:
    payload = config.model_dump(mode="json", exclude_none=True)
    if suffix in {".yaml", ".yml"}:
        return yaml.safe_dump(payload, sort_keys=False)
    if suffix == ".json":
        return json.dumps(payload, indent=2) + "\n"
    if suffix == ".toml":
        return tomli_w.dumps(payload)
    raise ConfigError(f"unsupported config extension: {suffix}")


def save_config(config: ToolConfig, path: Path) -> Path:
    target = path.expanduser()
    rendered = render_config(config, suffix=target.suffix.lower())
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(rendered, encoding="utf-8")
    return target.resolve()
