"""Rendering of command results as JSON, TSV or a rich table."""

import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, TextIO

from rich.console import Console
from rich.table import Table
from rich.text import Text


@dataclass
class CommandOutput:
    """Payload for JSON plus the flat rows used by the TSV and table views."""

    title: str
    payload: Dict[str, Any]
    columns: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return str(value)


def render_json(output: CommandOutput) -> str:
    return json.dumps(output.payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_tsv(output: CommandOutput) -> str:
    lines = ["\t".join(output.columns)]
    lines.extend("\t".join(_cell(v) for v in row) for row in output.rows)
    return "\n".join(lines) + "\n"


def render_pretty(output: CommandOutput, color: bool = True, stream: Optional[TextIO] = None) -> None:
    console = Console(file=stream or sys.stdout, no_color=not color, highlight=False, soft_wrap=True)
    table = Table(title=output.title, show_lines=False)
    for column in output.columns:
        table.add_column(column)
    for row in output.rows:
        table.add_row(*(Text(_cell(v)) for v in row))
    console.print(table)


def emit(output: CommandOutput, output_format: str, color: bool = True, stream: Optional[TextIO] = None) -> None:
    stream = stream or sys.stdout
    if output_format == "json":
        stream.write(render_json(output))
    elif output_format == "tsv":
        stream.write(render_tsv(output))
    else:
        render_pretty(output, color=color, stream=stream)
