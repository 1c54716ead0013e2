"""
Rendering task results as aligned text tables (pandas) or as sorted JSON.

Both renderings are pure functions of the results, so identical documents give
identical bytes.
"""

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

PASS = "pass"
MISMATCH = "mismatch"
INVALID = "invalid"

EXIT_CODES = {PASS: 0, MISMATCH: 1, INVALID: 2}

Cell = Tuple[int, int]


@dataclass
class TaskResult:
    """
    The outcome of one task.

    `values` holds scalar facts, `series` degree-indexed dims and `grids` (p, q)
    tables; `unreliable` lists grid cells to be flagged.
    """
    index: int
    kind: str
    inputs: Dict[str, Any]
    status: str = PASS
    cites: Optional[str] = None
    values: Dict[str, Any] = dc_field(default_factory=dict)
    series: Dict[str, List[int]] = dc_field(default_factory=dict)
    grids: Dict[str, Dict[Cell, int]] = dc_field(default_factory=dict)
    unreliable: List[Cell] = dc_field(default_factory=list)
    messages: List[str] = dc_field(default_factory=list)


def exit_code(results: List[TaskResult]) -> int:
    """2 if any task had invalid input, else 1 if any mismatched, else 0."""
    return max((EXIT_CODES[r.status] for r in results), default=0)


def _cell_key(cell: Cell) -> str:
    return f"({cell[0]},{cell[1]})"


def series_frame(series: Dict[str, List[int]]) -> pd.DataFrame:
    width = max((len(v) for v in series.values()), default=0)
    rows = {name: [str(x) for x in v] + [""] * (width - len(v)) for name, v in series.items()}
    return pd.DataFrame.from_dict(rows, orient="index", columns=[f"q={q}" for q in range(width)])


def grid_frame(grid: Dict[Cell, int], unreliable: List[Cell] = ()) -> pd.DataFrame:
    """Rows q from the top down, columns p; flagged cells carry a trailing '*'."""
    if not grid:
        return pd.DataFrame()
    ps = range(max(p for p, _ in grid) + 1)
    qs = range(max(q for _, q in grid) + 1)
    flagged = set(unreliable)
    data = []
    for q in reversed(qs):
        row = []
        for p in ps:
            value = grid.get((p, q))
            text = "" if value is None else str(value)
            row.append(f"{text}*" if text and (p, q) in flagged else text)
        data.append(row)
    return pd.DataFrame(data, index=[f"q={q}" for q in reversed(qs)], columns=[f"p={p}" for p in ps])


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "n/a"
    return str(value)


def render_text(document: str, results: List[TaskResult]) -> str:
    lines = [f"document: {document}"]
    for r in results:
        title = f"task {r.index}: {r.kind}"
        if r.cites:
            title += f" [{r.cites}]"
        lines.append("")
        lines.append(title)
        if r.inputs:
            lines.append("  inputs: " + ", ".join(f"{k}={v}" for k, v in sorted(r.inputs.items())))
        lines.append(f"  status: {r.status}")
        for key in sorted(r.values):
            lines.append(f"  {key}: {_format_value(r.values[key])}")
        if r.series:
            lines.append(_indent(series_frame(r.series).to_string()))
        for name in sorted(r.grids):
            lines.append(f"  {name}:")
            lines.append(_indent(grid_frame(r.grids[name], r.unreliable).to_string(), 4))
        if r.unreliable:
            lines.append("  * beyond the truncation window, excluded from the verdict")
        for msg in r.messages:
            lines.append(f"  - {msg}")
    lines.append("")
    lines.append(f"exit code: {exit_code(results)}")
    return "\n".join(lines) + "\n"


def _indent(block: str, width: int = 2) -> str:
    pad = " " * width
    return "\n".join(pad + line for line in block.splitlines())


def to_dict(document: str, results: List[TaskResult]) -> Dict[str, Any]:
    tasks = []
    for r in results:
        tasks.append({
            "index": r.index,
            "kind": r.kind,
            "cites": r.cites,
            "inputs": r.inputs,
            "status": r.status,
            "values": r.values,
            "series": r.series,
            "grids": {name: {_cell_key(c): v for c, v in grid.items()} for name, grid in r.grids.items()},
            "unreliable": [_cell_key(c) for c in r.unreliable],
            "messages": r.messages,
        })
    return {"document": document, "tasks": tasks, "exit_code": exit_code(results)}


def render_json(document: str, results: List[TaskResult]) -> str:
    return json.dumps(to_dict(document, results), sort_keys=True, indent=2) + "\n"


def render(document: str, results: List[TaskResult], fmt: str) -> str:
    """
    Raises:
        ValueError: For a format other than text or json.
    """
    if fmt == "text":
        return render_text(document, results)
    if fmt == "json":
        return render_json(document, results)
    raise ValueError(f"Unknown output format {fmt!r}")
