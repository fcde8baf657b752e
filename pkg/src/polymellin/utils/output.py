from __future__ import annotations

import json
from enum import StrEnum
from typing import Any

import yaml
from rich.console import Console
from rich.table import Table

from polymellin.utils.serialization import to_plain_data


class OutputFormat(StrEnum):
    JSON = "json"
    YAML = "yaml"
    TABLE = "table"


def render(value: Any, *, output: OutputFormat = OutputFormat.JSON) -> str:
    plain = to_plain_data(value)
    if output == OutputFormat.YAML:
        return yaml.safe_dump(plain, sort_keys=False, allow_unicode=True)
    return json.dumps(plain, indent=2, ensure_ascii=False)


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


def emit(value: Any, *, output: OutputFormat = OutputFormat.JSON, console: Console | None = None) -> None:
    """Render CLI output as json, yaml, or a rich table of the top-level keys."""

    if output != OutputFormat.TABLE:
        print(render(value, output=output))
        return

    plain = to_plain_data(value)
    console = console or Console()
    if isinstance(plain, list) and plain and all(isinstance(item, dict) for item in plain):
        keys: list[str] = []
        for row in plain:
            for key in row:
                if str(key) not in keys:
                    keys.append(str(key))
        table = Table(show_header=True, header_style="bold")
        for key in keys:
            table.add_column(key)
        for row in plain:
            table.add_row(*[_cell(row.get(key, "")) for key in keys])
        console.print(table)
        return

    if isinstance(plain, dict):
        table = Table(show_header=True, header_style="bold")
        table.add_column("key")
        table.add_column("value")
        for key, val in plain.items():
            table.add_row(str(key), _cell(val))
        console.print(table)
        return

    console.print(str(plain))
