"""
Result files.

JSON payloads are {"schema_version", "provenance", "result"}; CSV files carry
the same provenance as leading "# key: value" comment lines. Nothing depends
on wall-clock time, so equal configs give equal files.
"""

import csv
import io
import json
import math
import platform
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import scipy
import yaml

from src import __version__
from src.utils.errors import InvalidArgumentError

SCHEMA_VERSION = 1


def to_jsonable(value: Any) -> Any:
    """Plain Python types for numpy scalars, complex numbers, tuples and enums."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    if hasattr(value, "value") and hasattr(value, "name"):
        return value.value
    return value


def provenance(command: str, config: Dict[str, Any], tolerances: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "command": command,
        "config": to_jsonable(config),
        "tolerances": to_jsonable(tolerances),
        "versions": {
            "resonance_lab": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    }


def render_json(result: Any, prov: Dict[str, Any], schema_version: int = SCHEMA_VERSION) -> str:
    payload = {"schema_version": schema_version, "provenance": prov, "result": to_jsonable(result)}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _flatten(row: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


def render_csv(rows: Iterable[Dict[str, Any]], prov: Dict[str, Any], schema_version: int = SCHEMA_VERSION) -> str:
    """Provenance comment lines, then a header and one line per row."""
    rows = [_flatten(to_jsonable(r)) for r in rows]
    buf = io.StringIO()
    buf.write(f"# schema_version: {schema_version}\n")
    for key in sorted(prov):
        buf.write(f"# {key}: {json.dumps(prov[key], sort_keys=True)}\n")
    columns: List[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
    return buf.getvalue()


def write_result(
    result: Any,
    prov: Dict[str, Any],
    fmt: str = "json",
    path: Optional[str] = None,
    schema_version: int = SCHEMA_VERSION,
) -> str:
    """
    Render a result and write it to ``path`` or stdout.

    Args:
        result: dict (one row) or list of dicts
        prov: Provenance block
        fmt: "json" or "csv"
        path: Output file; stdout when None
        schema_version: Schema version stamped on the payload

    Returns:
        The rendered text
    """
    if fmt == "json":
        text = render_json(result, prov, schema_version)
    elif fmt == "csv":
        rows = result if isinstance(result, list) else [result]
        text = render_csv(rows, prov, schema_version)
    else:
        raise InvalidArgumentError(f"unknown output format {fmt!r}; use csv or json")

    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)
    return text


def load_experiment_config(path: str) -> Dict[str, Any]:
    """
    Read an experiment config from YAML, JSON, or a previous result file.

    JSON and CSV results are recognized by their provenance block, and the
    config echoed there is returned.
    """
    p = Path(path)
    if not p.exists():
        raise InvalidArgumentError(f"config file not found: {path}")
    text = p.read_text()

    if p.suffix == ".csv":
        for line in text.splitlines():
            if line.startswith("# config: "):
                return json.loads(line[len("# config: ") :])
        raise InvalidArgumentError(f"{path} has no '# config:' provenance line")

    data = json.loads(text) if p.suffix == ".json" else yaml.safe_load(text)
    if not isinstance(data, dict):
        raise InvalidArgumentError(f"{path} does not hold a mapping")
    if "provenance" in data:
        return data["provenance"].get("config", {})
    return data
